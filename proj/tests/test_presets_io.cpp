#include <doctest.h>

#include <fstream>
#include <sstream>

#include "gvna/algebra_io.hpp"
#include "gvna/errors.hpp"
#include "gvna/presets.hpp"
#include "support.hpp"

using namespace gvna;
using namespace gvna::testing;

namespace {

const Tolerances kTol;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("preset examples") {
  const auto sp1 = build_preset("sp:1");
  CHECK(is_central(sp1));
  CHECK(is_balanced(sp1));
  CHECK(format_summands(factor_decomposition(sp1.alg())) == "[(1,1), (1,1)]");

  const auto mf = build_preset("mf:2,1");
  const auto t = factor_decomposition(mf.alg());
  CHECK(t.is_factor);
  CHECK(t.type_label == "I_3");
  CHECK(mf.alg().dim() == 9);
  CHECK_FALSE(is_balanced(mf));

  const auto cl2 = build_preset("clifford:2");
  CHECK(format_summands(factor_decomposition(cl2.alg())) == "[(2,2)]");
  CHECK(factor_decomposition(cl2.alg()).is_factor);
}

TEST_CASE("preset profiles over the parameter matrix") {
  std::vector<std::string> specs;
  for (std::size_t p = 1; p <= 3; ++p) {
    for (std::size_t q = 1; q <= 3; ++q) specs.push_back("mf:" + std::to_string(p) + "," + std::to_string(q));
  }
  for (std::size_t n = 1; n <= 3; ++n) specs.push_back("sp:" + std::to_string(n));
  for (const auto& spec : specs) {
    CAPTURE(spec);
    const auto g = build_preset(spec);
    CHECK(grading_residual(g) <= kTol.eq);
    const auto t = factor_decomposition(g.alg());
    CHECK(is_central(g));
    const auto parsed = parse_preset(spec);
    if (parsed.kind == PresetSpec::Kind::mf) {
      CHECK(t.is_factor);
      CHECK(t.summands.front().block_size == parsed.p + parsed.q);
      CHECK(is_balanced(g) == (parsed.p == parsed.q));
    } else {
      CHECK_FALSE(t.is_factor);
      CHECK(t.summands.size() == 2);
      for (const auto& s : t.summands) CHECK(s.block_size == parsed.n);
      CHECK(is_balanced(g));
    }
  }
  const char* clifford[] = {"I_1 ⊕ I_1", "I_2", "I_2 ⊕ I_2", "I_4", "I_4 ⊕ I_4"};
  for (std::size_t k = 1; k <= 5; ++k) {
    CAPTURE(k);
    const auto t = factor_decomposition(clifford_preset(k).alg());
    CHECK(t.type_label == clifford[k - 1]);
    CHECK(t.is_factor == (k % 2 == 0));
  }
}

TEST_CASE("diag and trivial presets") {
  const auto d = build_preset("diag:4:2,1,3,4");
  CHECK(d.alg().dim() == 4);
  CHECK_FALSE(is_central(d));
  CHECK(d.split().odd.dim() == 1);
  const auto t = build_preset("trivial:sp:2");
  CHECK(t.split().odd.dim() == 0);
  CHECK((t.gamma() - identity(4)).norm() == 0.0);
  CHECK(t.name() == "trivial:sp:2");
}

TEST_CASE("preset syntax errors") {
  for (const char* bad : {"", "sp", "sp:", "sp:0", "sp:x", "mf:1", "mf:0,1", "mf:1,2,3", "clifford:0", "diag:3:1,2",
                          "diag:3:2,3,1", "diag:2:0,1", "diag:2", "trivial:", "nope:1", "sp:-1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_preset(bad), InputError);
  }
  CHECK(parse_preset("diag:3:1,3,2").to_string() == "diag:3:1,3,2");
  CHECK(parse_preset("trivial:mf:2,1").to_string() == "trivial:mf:2,1");
}

TEST_CASE("conjugated presets keep their profile") {
  Rng rng(51);
  for (const char* spec : {"sp:2", "mf:2,1", "clifford:3"}) {
    CAPTURE(spec);
    const auto g = build_preset(spec);
    const auto c = conjugated(g, random_unitary(g.hilbert_dim(), rng));
    CHECK(grading_residual(c) <= kTol.eq);
    CHECK(same_type(factor_decomposition(g.alg()), factor_decomposition(c.alg())));
    CHECK(is_balanced(g) == is_balanced(c));
  }
  const CMatrix u = random_unitary(5, rng);
  CHECK((u.adjoint() * u - identity(5)).norm() < 1e-12);
}

TEST_CASE("serialization round trip") {
  for (const char* spec : {"sp:1", "sp:2", "mf:2,1", "clifford:3", "diag:4:2,1,3,4", "trivial:mf:1,1"}) {
    CAPTURE(spec);
    const auto g = build_preset(spec);
    const std::string text = serialize_algebra(g);
    const auto back = parse_algebra(text);
    CHECK(subspace_equal(back.alg().space(), g.alg().space(), kTol.eq));
    CHECK(back.gamma() == g.gamma());
    CHECK(back.name() == g.name());
    CHECK(serialize_algebra(back) == text);
  }
  CHECK(serialize_algebra(build_preset("sp:1")) == serialize_algebra(build_preset("sp:1")));
}

TEST_CASE("serialization of an algebra without generators") {
  const auto g = trivially_graded(generate(std::vector<CMatrix>{}, 2), "scalars");
  const std::string text = serialize_algebra(g);
  CHECK(text.find("\"generators\": []") != std::string::npos);
  const auto back = parse_algebra(text);
  CHECK(back.alg().dim() == 1);
  CHECK(contains(back.alg().space(), identity(2), kTol.eq));
}

TEST_CASE("golden serialization of clifford:2") {
  const std::string golden = read_file(std::string(GVNA_GOLDEN_DIR) + "/clifford2.json");
  REQUIRE_FALSE(golden.empty());
  CHECK(serialize_algebra(clifford_preset(2)) == golden);
}

TEST_CASE("format_double") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-2.5) == "-2.5");
}

TEST_CASE("parse diagnostics") {
  const std::string m2 = R"("generators": [[[[0,0],[1,0]],[[0,0],[0,0]]], [[[0,0],[0,0]],[[1,0],[0,0]]]])";
  const auto doc = [&](const std::string& grading) {
    return "{\"name\": \"m2\", \"hilbert_dim\": 2, " + m2 + ", \"grading\": " + grading + "}";
  };
  CHECK_NOTHROW(parse_algebra(doc("[[[1,0],[0,0]],[[0,0],[-1,0]]]")));
  CHECK_THROWS_WITH_AS(parse_algebra(doc("[[[2,0],[0,0]],[[0,0],[2,0]]]")), "grading not involutive", InputError);
  CHECK_THROWS_WITH_AS(parse_algebra(doc("[[[0,0],[1,0]],[[0,0],[0,0]]]")), "grading not self-adjoint", InputError);

  const std::string diag = "{\"name\": \"d\", \"hilbert_dim\": 2, \"generators\": [[[[1,0],[0,0]],[[0,0],[0,0]]]], "
                           "\"grading\": [[[0.6,0],[0.8,0]],[[0.8,0],[-0.6,0]]]}";
  CHECK_THROWS_WITH_AS(parse_algebra(diag), "grading does not normalize algebra", InputError);

  for (const char* bad : {"not json", "[]", "{\"name\": \"x\"}",
                          "{\"name\": 1, \"hilbert_dim\": 2, \"generators\": [], \"grading\": []}",
                          "{\"name\": \"x\", \"hilbert_dim\": 0, \"generators\": [], \"grading\": []}",
                          "{\"name\": \"x\", \"hilbert_dim\": 1, \"generators\": {}, \"grading\": [[[1,0]]]}",
                          "{\"name\": \"x\", \"hilbert_dim\": 1, \"generators\": [], \"grading\": [[1]]}",
                          "{\"name\": \"x\", \"hilbert_dim\": 2, \"generators\": [], \"grading\": [[[1,0]]]}"}) {
    CAPTURE(bad);
    try {
      parse_algebra(bad);
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).rfind("malformed document: ", 0) == 0);
    }
  }
}

TEST_CASE("load_algebra_file") {
  CHECK(load_algebra_file(std::string(GVNA_GOLDEN_DIR) + "/clifford2.json").alg().dim() == 4);
  CHECK_THROWS_AS(load_algebra_file("/nonexistent/algebra.json"), InputError);
}
