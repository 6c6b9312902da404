#include <doctest.h>

#include <complex>
#include <functional>

#include "gm/io.hpp"
#include "gm/render.hpp"

using namespace gm;
using io::json;

namespace {

using cplx = std::complex<double>;

json uhp(const Moebiusd& a, const Moebiusd& b) {
  auto m = [](const Moebiusd& x) {
    return json::array({json::array({x.matrix()(0, 0), x.matrix()(0, 1)}),
                        json::array({x.matrix()(1, 0), x.matrix()(1, 1)})});
  };
  return {{"model", "uhp"}, {"A", m(a)}, {"B", m(b)}};
}

// conjugate by the Cayley map z ↦ (z − i)/(z + i), written out by hand
json disc_matrix(const Moebiusd& x) {
  const cplx i(0, 1);
  const cplx a = x.matrix()(0, 0), b = x.matrix()(0, 1), c = x.matrix()(1, 0), d = x.matrix()(1, 1);
  // K = [[1, -i], [1, i]], K⁻¹ = [[i, i], [-1, 1]] / (2i)
  const cplx k[2][2] = {{1.0, -i}, {1.0, i}}, ki[2][2] = {{i / (2.0 * i), i / (2.0 * i)}, {-1.0 / (2.0 * i), 1.0 / (2.0 * i)}};
  const cplx m[2][2] = {{a, b}, {c, d}};
  cplx km[2][2], out[2][2];
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) km[r][s] = k[r][0] * m[0][s] + k[r][1] * m[1][s];
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < 2; ++s) out[r][s] = km[r][0] * ki[0][s] + km[r][1] * ki[1][s];
  json j = json::array();
  for (int r = 0; r < 2; ++r) {
    j.push_back(json::array({json::array({out[r][0].real(), out[r][0].imag()}),
                             json::array({out[r][1].real(), out[r][1].imag()})}));
  }
  return j;
}

const Moebiusd kSanovA(1, 2, 0, 1), kSanovB(1, 0, 2, 1);

}  // namespace

TEST_CASE("input parsing") {
  const io::RunConfig cfg;
  SUBCASE("half-plane input") {
    const auto in = io::parse_input(uhp(kSanovA, kSanovB), cfg);
    CHECK(projective_distance(in.a, kSanovA) < 1e-15);
    CHECK(projective_distance(in.b, kSanovB) < 1e-15);
    CHECK(in.normalized["model"] == "uhp");
  }
  SUBCASE("disc input lands on the same pair") {
    const json doc = {{"model", "disc"}, {"A", disc_matrix(kSanovA)}, {"B", disc_matrix(kSanovB)}};
    const auto in = io::parse_input(doc, cfg);
    CHECK(projective_distance(in.a, kSanovA) < 1e-12);
    CHECK(projective_distance(in.b, kSanovB) < 1e-12);
    CHECK(in.normalized["model"] == "uhp");
  }
  SUBCASE("the configured model applies when the input names none") {
    io::RunConfig disc = cfg;
    disc.model = io::Model::Disc;
    const json doc = {{"A", disc_matrix(kSanovA)}, {"B", disc_matrix(kSanovB)}};
    CHECK(projective_distance(io::parse_input(doc, disc).a, kSanovA) < 1e-12);
  }
  SUBCASE("a disc matrix outside the real group is refused") {
    json doc = {{"model", "disc"}, {"A", disc_matrix(kSanovA)}, {"B", disc_matrix(kSanovB)}};
    doc["A"][0][1] = json::array({0.5, 0.25});
    CHECK_THROWS_AS(io::parse_input(doc, cfg), std::exception);
  }
  SUBCASE("malformed shapes") {
    for (const char* text : {R"({"A": [[1,2],[0,1]]})", R"({"A": [[1,2],[0,1]], "B": [[1,0],[2]]})",
                             R"({"A": [[1,2],[0,1]], "B": [[1,0],[2,"x"]]})", R"({"model": "klein", "A": [[1,2],[0,1]], "B": [[1,0],[2,1]]})",
                             R"([1, 2])"}) {
      CAPTURE(text);
      CHECK_THROWS_AS(io::parse_input(json::parse(text), cfg), io::InputError);
    }
  }
  SUBCASE("determinant far from one") {
    CHECK_THROWS_AS(io::parse_input(uhp(Moebiusd(2, 0, 0, 1), kSanovB), cfg), DeterminantError);
  }
}

TEST_CASE("verdict documents") {
  io::RunConfig cfg;
  const auto doc = io::run_document(uhp(kSanovA, kSanovB), cfg);
  CHECK(doc["verdict"] == "discrete");
  CHECK(doc["f_sequence"] == json::array({1}));
  CHECK(doc["config"]["tolerance"] == 1e-9);
  CHECK(doc["stopping_generators"].contains("coherent"));
  CHECK_FALSE(doc.contains("steps"));
  CHECK_FALSE(doc.contains("shortest_lengths"));

  cfg.trace = true;
  const auto traced = io::run_document(uhp(kSanovA, kSanovB), cfg);
  REQUIRE(traced.contains("steps"));
  CHECK(traced["steps"].back()["terminal"] == true);

  // a discrete free pair carries its shortest curves
  const auto c = oracle::hyperbolic_with_ends(BoundaryPointd::from_real(1), BoundaryPointd::from_real(-1), 4.0);
  const auto d = oracle::hyperbolic_with_ends(BoundaryPointd::from_real(5), BoundaryPointd::from_real(2), 1.1);
  const auto free = io::run_document(uhp(c, d), io::RunConfig{});
  CHECK(free.at("verdict") == "discrete-free");
  REQUIRE(free.contains("shortest_lengths"));
  CHECK(free.at("shortest_lengths").size() == free.at("shortest_words").size());
  CHECK(free.at("cusps") == 0);

  // rerunning the echoed input reproduces the document
  CHECK(io::run_document(doc["input"], io::RunConfig{}) == doc);
}

TEST_CASE("error kinds and exit codes") {
  struct Case {
    std::function<void()> raise;
    std::string kind;
    int code;
  };
  const Case cases[] = {
      {[] { [[maybe_unused]] const auto j = json::parse("{"); }, "malformed-json", 2},
      {[] { throw io::InputError("x"); }, "bad-input", 2},
      {[] { throw DeterminantError("x"); }, "determinant", 3},
      {[] { throw ElementaryError("x"); }, "elementary", 3},
      {[] { throw DomainError("x"); }, "domain", 3},
      {[] { throw MaxStepsError("x"); }, "max-steps", 4},
      {[] { throw std::runtime_error("x"); }, "internal", 5},
  };
  for (const auto& c : cases) {
    try {
      c.raise();
      FAIL("nothing thrown");
    } catch (const std::exception& e) {
      CHECK(io::error_kind(e) == c.kind);
      CHECK(io::exit_code(e) == c.code);
    }
  }
  const auto e = io::error_document("bad-input", "oops");
  CHECK(e == json{{"error", {{"kind", "bad-input"}, {"message", "oops"}}}});
}

TEST_CASE("demo input is the Sanov pair") {
  const auto in = io::parse_input(io::demo_input(), io::RunConfig{});
  CHECK(projective_distance(in.a, kSanovA) < 1e-15);
  CHECK(projective_distance(in.b, kSanovB) < 1e-15);
}

TEST_CASE("boundary arcs") {
  SUBCASE("circles meet the unit circle at right angles") {
    for (int k = 1; k < 60; ++k) {
      const double s = 0.1 * k, t = s + 0.05 + 0.04 * k;
      const auto g = render::arc_geometry(std::polar(1.0, s), std::polar(1.0, t));
      REQUIRE_FALSE(g.chord);
      // orthogonal circles: |c|² = 1 + r²
      CHECK(std::abs(std::norm(g.center) - 1 - g.radius * g.radius) < 1e-9);
      CHECK(std::abs(std::abs(std::polar(1.0, s) - g.center) - g.radius) < 1e-9);
    }
  }
  SUBCASE("antipodal ends give a chord") {
    CHECK(render::arc_geometry({1, 0}, {-1, 0}).chord);
  }
}

TEST_CASE("pictures") {
  const Config cfg;
  const auto c = oracle::hyperbolic_with_ends(BoundaryPointd::from_real(1), BoundaryPointd::from_real(-1), 4.0);
  const auto d = oracle::hyperbolic_with_ends(BoundaryPointd::from_real(5), BoundaryPointd::from_real(2), 1.1);
  const auto first = render::render_pair(c, d, cfg), second = render::render_pair(c, d, cfg);
  CHECK(first.svg == second.svg);
  CHECK(first.n >= 1);
  CHECK(first.svg.find("<svg") != std::string::npos);
  CHECK(first.svg.find("mirror-d") != std::string::npos);

  render::Options few;
  few.max_family = 1;
  const auto capped = render::render_pair(c, d, cfg, few);
  CHECK(capped.svg.size() <= first.svg.size());

  CHECK_THROWS_AS(render::render_pair(kSanovA, kSanovB, cfg), std::invalid_argument);
}
