#include "ddclab/model_io.hpp"

#include <fstream>
#include <sstream>

namespace ddc {

namespace {

// Walks a parsed document and reports errors with a JSON pointer and the line
// of the innermost named field in the source text.
class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& msg) const {
    std::string pointer;
    for (const auto& p : path) pointer += "/" + p;
    throw Error(ErrorCode::ParseError,
                "line " + std::to_string(line_of(path)) + ", field " + (pointer.empty() ? "/" : pointer) + ": " + msg);
  }

  Rational rational(const Json& v, const std::vector<std::string>& path) const {
    if (v.is_string()) {
      try {
        return parse_rational(v.get<std::string>());
      } catch (const Error& e) {
        fail(path, "bad rational \"" + v.get<std::string>() + "\"");
      }
    }
    if (v.is_number_integer()) return Rational(Integer(v.dump()));
    if (v.is_number_float()) fail(path, "floats are not allowed in exact files; write \"p/q\"");
    fail(path, "expected a rational string \"p/q\"");
  }

  long integer(const Json& v, const std::vector<std::string>& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<long>();
  }

  std::size_t count(const Json& v, const std::vector<std::string>& path) const {
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return v.get<std::size_t>();
  }

  bool boolean(const Json& v, const std::vector<std::string>& path) const {
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
  }

  const Json& array(const Json& v, const std::vector<std::string>& path) const {
    if (!v.is_array()) fail(path, "expected an array");
    return v;
  }

  std::vector<Rational> vector(const Json& v, const std::vector<std::string>& path) const {
    std::vector<Rational> out;
    array(v, path);
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], extend(path, i)));
    return out;
  }

  /// Matrix given as rows; rows is checked against expected_rows when known.
  QMatrix matrix(const Json& v, const std::vector<std::string>& path, std::optional<std::size_t> expected_rows,
                 std::size_t expected_cols) const {
    array(v, path);
    if (expected_rows && v.size() != *expected_rows)
      fail(path, "expected " + std::to_string(*expected_rows) + " rows, got " + std::to_string(v.size()));
    QMatrix m(v.size(), expected_cols);
    for (std::size_t i = 0; i < v.size(); ++i) {
      auto rp = extend(path, i);
      array(v[i], rp);
      if (v[i].size() != expected_cols)
        fail(rp, "expected " + std::to_string(expected_cols) + " columns, got " + std::to_string(v[i].size()));
      for (std::size_t j = 0; j < expected_cols; ++j) m(i, j) = rational(v[i][j], extend(rp, j));
    }
    return m;
  }

  static std::vector<std::string> extend(std::vector<std::string> path, const std::string& key) {
    path.push_back(key);
    return path;
  }
  static std::vector<std::string> extend(std::vector<std::string> path, std::size_t index) {
    path.push_back(std::to_string(index));
    return path;
  }

 private:
  std::size_t line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0, found = std::string::npos;
    for (const auto& key : path) {
      if (!key.empty() && std::isdigit(static_cast<unsigned char>(key[0]))) continue;
      auto at = text_.find("\"" + key + "\"", pos);
      if (at == std::string::npos) break;
      found = pos = at;
    }
    if (found == std::string::npos) return 1;
    return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + static_cast<std::ptrdiff_t>(found), '\n'));
  }

  const std::string& text_;
};

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", field /: malformed JSON");
  }
}

std::vector<QMatrix> graded_blocks(const Reader& r, const Json& v, const std::vector<std::string>& path,
                                   const std::vector<std::size_t>& dims) {
  r.array(v, path);
  if (v.size() != dims.size())
    r.fail(path, "expected " + std::to_string(dims.size()) + " blocks, got " + std::to_string(v.size()));
  std::vector<QMatrix> blocks;
  for (std::size_t k = 0; k < dims.size(); ++k)
    blocks.push_back(r.matrix(v[k], Reader::extend(path, k), dims[k], dims[k]));
  return blocks;
}

Json blocks_json(const GradedMap<Rational>& m) {
  Json out = Json::array();
  for (const auto& b : m.blocks()) out.push_back(matrix_json(b));
  return out;
}

}  // namespace

Json rational_json(const Rational& v) { return format_rational(v); }

Json matrix_json(const QMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json double_json(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const NumericalStructure<Rational>& ModelFile::numerics() const {
  if (!numerical) throw Error(ErrorCode::InvalidArgument, "model has no numerical structure");
  return *numerical;
}

std::string ModelFile::default_map_name() const {
  std::vector<std::string> plain;
  for (const auto& [name, m] : maps)
    if (!polarized.count(name)) plain.push_back(name);
  if (plain.size() == 1) return plain.front();
  if (maps.count("f")) return "f";
  if (maps.size() == 1) return maps.begin()->first;
  throw Error(ErrorCode::InvalidArgument, "several maps in the model; choose one with --map");
}

const GradedMap<Rational>& ModelFile::map(const std::string& name) const {
  const std::string key = name.empty() ? default_map_name() : name;
  auto it = maps.find(key);
  if (it == maps.end()) throw Error(ErrorCode::InvalidArgument, "no map named \"" + key + "\"");
  return it->second;
}

PolarizedModel<Rational> ModelFile::polarized_model(const std::string& name) const {
  auto it = polarized.find(name);
  if (it == polarized.end()) throw Error(ErrorCode::InvalidArgument, "map \"" + name + "\" has no polarized flags");
  const auto& s = it->second;
  if (s.frobenius) return make_frobenius(s.a, map(name), s.semisimple);
  return make_polarized(s.a, map(name), s.weilRH, s.semisimple);
}

IterateSystem<Rational> ModelFile::system(const std::string& name) const {
  if (name.empty() && !iterates.empty()) return IterateSystem<Rational>::list(iterates, numerical);
  return IterateSystem<Rational>::power(map(name), numerical);
}

ModelFile parse_model(const std::string& text) {
  const Json doc = parse_document(text);
  const Reader r(text);
  if (!doc.is_object()) r.fail({}, "expected an object");
  for (const auto& [key, value] : doc.items()) {
    static const std::set<std::string> known{"format", "n", "dims", "pairings", "ample", "maps", "over_fq",
                                             "iterates", "numerical", "polarized", "provenance"};
    if (!known.count(key)) r.fail({key}, "unknown field");
  }
  if (!doc.contains("n")) r.fail({"n"}, "missing");
  if (!doc.contains("dims")) r.fail({"dims"}, "missing");
  const std::size_t n = r.count(doc["n"], {"n"});
  std::vector<std::size_t> dims;
  r.array(doc["dims"], {"dims"});
  for (std::size_t k = 0; k < doc["dims"].size(); ++k) dims.push_back(r.count(doc["dims"][k], {"dims", std::to_string(k)}));
  if (dims.size() != 2 * n + 1) r.fail({"dims"}, "expected 2n+1 = " + std::to_string(2 * n + 1) + " entries");

  std::optional<std::vector<QMatrix>> pairings, ample;
  if (doc.contains("pairings")) {
    const auto& p = r.array(doc["pairings"], {"pairings"});
    if (p.size() != dims.size()) r.fail({"pairings"}, "expected one pairing per degree");
    pairings.emplace();
    for (std::size_t k = 0; k < dims.size(); ++k)
      pairings->push_back(r.matrix(p[k], {"pairings", std::to_string(k)}, dims[k], dims[2 * n - k]));
  }
  if (doc.contains("ample")) {
    const auto& a = r.array(doc["ample"], {"ample"});
    ample.emplace();
    if (!a.empty() && a.size() != n + 1) r.fail({"ample"}, "expected h^0..h^n or an empty list");
    for (std::size_t j = 0; j < a.size(); ++j) {
      auto v = r.vector(a[j], {"ample", std::to_string(j)});
      if (v.size() != dims[std::min(2 * j, dims.size() - 1)])
        r.fail({"ample", std::to_string(j)}, "expected d_" + std::to_string(2 * j) + " entries");
      ample->push_back(QMatrix::column(v));
    }
  }

  ModelFile m;
  try {
    m.space = share(make_space<Rational>(n, dims, pairings, ample));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    r.fail({pairings ? "pairings" : "dims"}, e.what());
  }

  if (doc.contains("maps")) {
    if (!doc["maps"].is_object()) r.fail({"maps"}, "expected an object of named maps");
    for (const auto& [name, blocks] : doc["maps"].items())
      m.maps.emplace(name, GradedMap<Rational>(m.space, graded_blocks(r, blocks, {"maps", name}, dims)));
  }
  if (doc.contains("over_fq")) {
    const auto& o = r.array(doc["over_fq"], {"over_fq"});
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (!o[i].is_string() || !m.maps.count(o[i].get<std::string>()))
        r.fail({"over_fq", std::to_string(i)}, "expected the name of a map");
      m.over_fq.insert(o[i].get<std::string>());
    }
  }
  if (doc.contains("iterates")) {
    const auto& it = r.array(doc["iterates"], {"iterates"});
    for (std::size_t t = 0; t < it.size(); ++t)
      m.iterates.emplace_back(m.space, graded_blocks(r, it[t], {"iterates", std::to_string(t)}, dims));
  }
  if (doc.contains("numerical")) {
    const auto& ns = doc["numerical"];
    if (!ns.is_object()) r.fail({"numerical"}, "expected an object");
    if (!ns.contains("quotients")) r.fail({"numerical", "quotients"}, "missing");
    const auto& qs = r.array(ns["quotients"], {"numerical", "quotients"});
    if (qs.size() != n + 1) r.fail({"numerical", "quotients"}, "expected q_0..q_n");
    std::optional<std::vector<std::size_t>> ndims;
    if (ns.contains("ndims")) {
      const auto& nd = r.array(ns["ndims"], {"numerical", "ndims"});
      if (nd.size() != n + 1) r.fail({"numerical", "ndims"}, "expected n+1 entries");
      ndims.emplace();
      for (std::size_t j = 0; j <= n; ++j) ndims->push_back(r.count(nd[j], {"numerical", "ndims", std::to_string(j)}));
    }
    std::vector<QMatrix> quotients;
    for (std::size_t j = 0; j <= n; ++j) {
      std::vector<std::string> path{"numerical", "quotients", std::to_string(j)};
      std::optional<std::size_t> rows;
      if (ndims) rows = (*ndims)[j];
      quotients.push_back(r.matrix(qs[j], path, rows, dims[2 * j]));
    }
    bool conjD = ns.contains("conjectureD") ? r.boolean(ns["conjectureD"], {"numerical", "conjectureD"}) : true;
    try {
      m.numerical.emplace(m.space, std::move(quotients), conjD);
    } catch (const Error& e) {
      r.fail({"numerical", "quotients"}, e.what());
    }
  } else {
    m.numerical = NumericalStructure<Rational>::identity(m.space);
  }
  if (doc.contains("polarized")) {
    if (!doc["polarized"].is_object()) r.fail({"polarized"}, "expected an object keyed by map name");
    for (const auto& [name, spec] : doc["polarized"].items()) {
      std::vector<std::string> path{"polarized", name};
      if (!m.maps.count(name)) r.fail(path, "no map with this name");
      if (!spec.is_object()) r.fail(path, "expected an object");
      PolarizedSpec s;
      if (!spec.contains("a")) r.fail(Reader::extend(path, "a"), "missing");
      s.a = r.integer(spec["a"], Reader::extend(path, "a"));
      if (spec.contains("frobenius")) s.frobenius = r.boolean(spec["frobenius"], Reader::extend(path, "frobenius"));
      if (spec.contains("weilRH")) s.weilRH = r.boolean(spec["weilRH"], Reader::extend(path, "weilRH"));
      if (spec.contains("semisimple")) s.semisimple = r.boolean(spec["semisimple"], Reader::extend(path, "semisimple"));
      if (s.frobenius) s.weilRH = true;
      m.polarized.emplace(name, s);
      try {
        (void)m.polarized_model(name);
      } catch (const Error& e) {
        r.fail(path, e.what());
      }
    }
  }
  if (doc.contains("provenance")) {
    if (!doc["provenance"].is_string()) r.fail({"provenance"}, "expected a string");
    m.provenance = doc["provenance"].get<std::string>();
  }
  return m;
}

SequenceFile parse_sequences(const std::string& text) {
  const Json doc = parse_document(text);
  const Reader r(text);
  if (!doc.is_object()) r.fail({}, "expected an object");
  for (const auto& [key, value] : doc.items())
    if (key != "a" && key != "b" && key != "placement" && key != "format") r.fail({key}, "unknown field");
  SequenceFile s;
  if (!doc.contains("a")) r.fail({"a"}, "missing");
  s.a = r.vector(doc["a"], {"a"});
  if (doc.contains("b")) s.b = r.vector(doc["b"], {"b"});
  if (doc.contains("placement")) {
    const auto& p = doc["placement"];
    if (p == "doubled")
      s.placement = Placement::Doubled;
    else if (p == "literal")
      s.placement = Placement::Literal;
    else
      r.fail({"placement"}, "expected \"doubled\" or \"literal\"");
  }
  return s;
}

Json model_to_json(const ModelFile& m) {
  const auto& sp = *m.space;
  Json j;
  j["format"] = "ddclab-model";
  j["n"] = sp.n();
  j["dims"] = sp.dims();
  Json pairings = Json::array();
  for (std::size_t k = 0; k <= sp.top(); ++k) pairings.push_back(matrix_json(sp.pairing(k)));
  j["pairings"] = std::move(pairings);
  Json ample = Json::array();
  if (sp.has_ample())
    for (std::size_t a = 0; a <= sp.n(); ++a) {
      Json col = Json::array();
      const QMatrix h = sp.ample_power(a);
      for (std::size_t i = 0; i < h.rows(); ++i) col.push_back(format_rational(h(i, 0)));
      ample.push_back(std::move(col));
    }
  j["ample"] = std::move(ample);
  Json maps = Json::object();
  for (const auto& [name, f] : m.maps) maps[name] = blocks_json(f);
  j["maps"] = std::move(maps);
  j["over_fq"] = Json(std::vector<std::string>(m.over_fq.begin(), m.over_fq.end()));
  if (!m.iterates.empty()) {
    Json it = Json::array();
    for (const auto& f : m.iterates) it.push_back(blocks_json(f));
    j["iterates"] = std::move(it);
  }
  if (m.numerical) {
    Json ns;
    ns["ndims"] = m.numerical->ndims();
    Json qs = Json::array();
    for (const auto& q : m.numerical->quotients()) qs.push_back(matrix_json(q));
    ns["quotients"] = std::move(qs);
    ns["conjectureD"] = m.numerical->conjectureD();
    j["numerical"] = std::move(ns);
  }
  Json pol = Json::object();
  for (const auto& [name, s] : m.polarized)
    pol[name] = Json{{"a", s.a}, {"frobenius", s.frobenius}, {"weilRH", s.weilRH}, {"semisimple", s.semisimple}};
  j["polarized"] = std::move(pol);
  j["provenance"] = m.provenance;
  return j;
}

Json sequences_to_json(const SequenceFile& s) {
  Json j;
  j["format"] = "ddclab-sequences";
  Json a = Json::array(), b = Json::array();
  for (const auto& v : s.a) a.push_back(format_rational(v));
  for (const auto& v : s.b) b.push_back(format_rational(v));
  j["a"] = std::move(a);
  j["b"] = std::move(b);
  j["placement"] = s.placement == Placement::Doubled ? "doubled" : "literal";
  return j;
}

ModelFile model_from_bundle(const QBundle& b) {
  ModelFile m;
  m.space = b.space;
  m.maps = b.endos;
  m.over_fq = b.over_fq;
  m.numerical = b.numerical;
  m.provenance = b.provenance;
  if (b.frobenius) {
    const std::string name = b.frobenius->frobenius ? "Fr" : "F";
    m.maps.insert_or_assign(name, b.frobenius->map);
    m.polarized[name] = PolarizedSpec{b.frobenius->a, b.frobenius->frobenius, b.frobenius->weilRH,
                                      b.frobenius->semisimple};
  }
  return m;
}

QBundle bundle_from_model(const ModelFile& m) {
  QBundle b{m.space, m.numerics(), std::nullopt, {}, m.over_fq, m.provenance};
  for (const auto& [name, f] : m.maps) {
    auto it = m.polarized.find(name);
    if (it != m.polarized.end() && !b.frobenius && it->second.weilRH)
      b.frobenius = m.polarized_model(name);
    else
      b.endos.emplace(name, f);
  }
  return b;
}

}  // namespace ddc
