#include <gtest/gtest.h>

#include "ddclab/model_io.hpp"
#include "ddclab/verify.hpp"

using namespace ddc;

namespace {

const std::string kData = DDCLAB_TEST_DATA;

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    return e.what();
  }
  ADD_FAILURE() << "no ParseError";
  return {};
}

}  // namespace

TEST(ModelIo, RoundTripOfFixtures) {
  for (const char* name : {"elliptic2.json", "counter_d.json", "jordan_pair.json"}) {
    const std::string text = read_text_file(kData + "/" + name);
    const ModelFile m = parse_model(text);
    const Json once = model_to_json(m);
    const ModelFile again = parse_model(once.dump(2));
    EXPECT_EQ(model_to_json(again), once) << name;
    EXPECT_EQ(*again.space, *m.space);
    EXPECT_EQ(again.maps.size(), m.maps.size());
  }
}

TEST(ModelIo, RoundTripOfConstructedBundles) {
  auto x = projective_model(2, 2);
  for (const auto& b : {blowup_model(x, projective_model(0, 2), 2), hilb2_model(projective_model(1, 3)),
                        random_semisimple_model(2, {1, 2, 3, 2, 1}, 9, 5)}) {
    const ModelFile m = model_from_bundle(b);
    const ModelFile back = parse_model(model_to_json(m).dump());
    const QBundle rb = bundle_from_model(back);
    EXPECT_EQ(*rb.space, *b.space);
    ASSERT_TRUE(rb.frobenius);
    EXPECT_EQ(rb.frobenius->map, b.frobenius->map);
    EXPECT_EQ(rb.numerical.quotients(), b.numerical.quotients());
  }
}

TEST(ModelIo, FieldNormalization) {
  const std::string text = R"({"n": 0, "dims": [1], "maps": {"f": [[["6/4"]]]}})";
  const ModelFile m = parse_model(text);
  EXPECT_EQ(m.maps.at("f").block(0)(0, 0), Rational(3, 2));
  EXPECT_EQ(model_to_json(m)["maps"]["f"][0][0][0], "3/2");
}

TEST(ModelIo, DiagnosticsCarryLineAndField) {
  const std::string floats = "{\n  \"n\": 0,\n  \"dims\": [1],\n  \"maps\": {\"f\": [[[1.5]]]}\n}";
  auto msg = error_of([&] { parse_model(floats); });
  EXPECT_NE(msg.find("line 4"), std::string::npos) << msg;
  EXPECT_NE(msg.find("/maps/f/0/0/0"), std::string::npos) << msg;

  auto unknown = error_of([] { parse_model("{\"n\": 0, \"dims\": [1], \"colour\": 1}"); });
  EXPECT_NE(unknown.find("/colour"), std::string::npos);

  auto shape = error_of([] { parse_model("{\n\"n\": 1,\n\"dims\": [1, 2, 1],\n\"maps\": {\"f\": [[[\"1\"]], [[\"1\"]], [[\"1\"]]]}\n}"); });
  EXPECT_NE(shape.find("line 4"), std::string::npos) << shape;

  auto syntax = error_of([] { parse_model("{\n\"n\": 1,\n\"dims\": [1, 2, 1\n"); });
  EXPECT_NE(syntax.find("malformed"), std::string::npos);

  auto badrat = error_of([] { parse_sequences("{\"a\": [\"1/0\"]}"); });
  EXPECT_NE(badrat.find("/a/0"), std::string::npos);
}

TEST(ModelIo, CoreInvariantsAreValidated) {
  auto msg = error_of([] { parse_model("{\"n\": 1, \"dims\": [1, 2, 2]}"); });
  EXPECT_NE(msg.find("/dims"), std::string::npos) << msg;
  EXPECT_NE(msg.find("DimensionAsymmetry"), std::string::npos) << msg;
}

TEST(ModelIo, Sequences) {
  auto s = parse_sequences(read_text_file(kData + "/seq.json"));
  EXPECT_EQ(s.a.size(), 3u);
  EXPECT_EQ(s.b.size(), 5u);
  EXPECT_EQ(s.placement, Placement::Doubled);
  auto back = parse_sequences(sequences_to_json(s).dump());
  EXPECT_EQ(back.a, s.a);
  EXPECT_EQ(back.b, s.b);
}

TEST(ModelIo, DefaultMapAndPolarizedModels) {
  const ModelFile m = parse_model(read_text_file(kData + "/elliptic2.json"));
  EXPECT_EQ(m.default_map_name(), "endo");
  auto fr = m.polarized_model("Fr");
  EXPECT_TRUE(fr.frobenius);
  EXPECT_EQ(fr.a, 5);
  EXPECT_THROW(m.map("missing"), Error);
}
