#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ddclab/constructions.hpp"
#include "ddclab/envelope.hpp"
#include "json.hpp"

namespace ddc {

using Json = nlohmann::ordered_json;

/// Flags attached to a named map that models a polarized endomorphism.
struct PolarizedSpec {
  long a = 2;
  bool frobenius = false;
  bool weilRH = false;
  bool semisimple = false;
};

/// Exact model file: a space, named maps, optional listed iterates, a numerical
/// structure and polarized flags for some maps.
struct ModelFile {
  SpacePtr<Rational> space;
  std::map<std::string, GradedMap<Rational>> maps;
  std::set<std::string> over_fq;
  std::vector<GradedMap<Rational>> iterates;
  std::optional<NumericalStructure<Rational>> numerical;
  std::map<std::string, PolarizedSpec> polarized;
  std::string provenance;

  const NumericalStructure<Rational>& numerics() const;
  /// The map named `name`, or the only non-polarized map when name is empty.
  const GradedMap<Rational>& map(const std::string& name) const;
  std::string default_map_name() const;
  PolarizedModel<Rational> polarized_model(const std::string& name) const;
  /// Power mode for a named map, list mode when iterates are present and no name is given.
  IterateSystem<Rational> system(const std::string& name) const;
};

/// Sequence pair for the envelope and prop1 commands.
struct SequenceFile {
  std::vector<Rational> a;
  std::vector<Rational> b;
  Placement placement = Placement::Doubled;
};

/// Throws ParseError with a line number and a field path.
ModelFile parse_model(const std::string& text);
SequenceFile parse_sequences(const std::string& text);

Json model_to_json(const ModelFile& m);
Json sequences_to_json(const SequenceFile& s);
ModelFile model_from_bundle(const QBundle& b);
QBundle bundle_from_model(const ModelFile& m);

std::string read_text_file(const std::string& path);

Json rational_json(const Rational& v);
Json matrix_json(const QMatrix& m);
Json double_json(double v);

}  // namespace ddc
