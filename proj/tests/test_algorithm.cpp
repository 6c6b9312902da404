#include <doctest.h>

#include <random>

#include "gm/algorithm.hpp"

using namespace gm;

namespace {

constexpr double kTol = 1e-9;
const Config kCfg{};

Moebiusd hyperbolic(double attracting, double repelling, double length) {
  return oracle::hyperbolic_with_ends(BoundaryPointd::from_real(attracting), BoundaryPointd::from_real(repelling),
                                      length);
}

OrderedPair<double> pair_of(const Moebiusd& c, const Moebiusd& d) {
  OrderedPair<double> p;
  p.c = c;
  p.d = d;
  return p;
}

oracle::Instance<double> instance(oracle::InstanceKind kind, std::uint64_t seed) {
  oracle::InstanceSpec spec;
  spec.kind = kind;
  spec.seed = seed;
  return oracle::random_instance<double>(spec, kTol);
}

const Moebiusd kSanovA(1, 2, 0, 1), kSanovB(1, 0, 2, 1);

}  // namespace

TEST_CASE("pair classes") {
  const auto c = hyperbolic(1, -1, 2), d = hyperbolic(5, 3, 1);
  CHECK(pair_class(c, d, kTol) == PairClass::HHDisjoint);
  CHECK(pair_class(c, hyperbolic(3, -3, 1), kTol) == PairClass::HHDisjoint);
  CHECK(pair_class(c, hyperbolic(3, 0, 1), kTol) == PairClass::HHIntersecting);
  CHECK(pair_class(c, Moebiusd(1, 1, 0, 1), kTol) == PairClass::HP);
  CHECK(pair_class(kSanovA, kSanovB, kTol) == PairClass::PP);
  CHECK(pair_class(c, Moebiusd(0, 1, -1, 0), kTol) == PairClass::HasElliptic);
}

TEST_CASE("coherent orientation") {
  const auto inst = instance(oracle::InstanceKind::HHDisjoint, 1);
  const auto p = coherently_orient(inst.a, inst.b, kCfg);
  CHECK(p.coherent);
  CHECK(is_coherent(p.c, p.d, kTol));
  CHECK(p.c.trace() >= p.d.trace());

  SUBCASE("a coherent pair comes back unchanged") {
    const auto q = coherently_orient(p.c, p.d, kCfg);
    CHECK(projective_distance(q.c, p.c) < 1e-15);
    CHECK(projective_distance(q.d, p.d) < 1e-15);
    CHECK(q.word_c == Word::a());
    CHECK(q.word_d == Word::b());
  }
  SUBCASE("swapped input is swapped back") {
    const auto q = coherently_orient(p.d, p.c, kCfg);
    CHECK(projective_distance(q.c, p.c) < 1e-15);
    CHECK(q.word_c == Word::b());
    CHECK(q.word_d == Word::a());
  }
}

TEST_CASE("exactly one of the eight presentations is coherent") {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto inst = instance(oracle::InstanceKind::HHDisjoint, seed);
    const auto base = pair_of(inst.a, inst.b);
    int count = 0;
    for (int i = 0; i < 8; ++i) {
      const auto v = detail::variant(base, i, kCfg.max_word_length);
      count += is_coherent(v.c, v.d, kTol);
    }
    // equal traces would allow a second, swapped presentation
    if (std::abs(inst.a.trace() - inst.b.trace()) > 1e-6) CHECK(count == 1);
  }
}

TEST_CASE("hyperbolic step count") {
  SUBCASE("equal lengths") {
    auto p = orient(pair_of(hyperbolic(1, -1, 1.3), hyperbolic(8, 5, 1.3)), kCfg);
    CHECK(step_count_hh(p.c, p.d, kCfg).n == 1);
  }
  SUBCASE("half lengths ln 20 and ln 2") {
    const double gap = std::exp(0.01);
    auto p = orient(pair_of(hyperbolic(1, -1, 2 * std::log(20.0)), hyperbolic(gap, -gap, 2 * std::log(2.0))), kCfg);
    const auto s = step_count_hh(p.c, p.d, kCfg);
    CHECK(s.formula == 4);
    CHECK(s.n == 4);
    CHECK(s.n == oracle::linear_step_count(p.c, p.d, kTol));
  }
  SUBCASE("integer ratio goes to the oracle") {
    const double gap = std::exp(0.02);
    auto p = orient(pair_of(hyperbolic(1, -1, 3 * 0.7), hyperbolic(gap, -gap, 0.7)), kCfg);
    const auto s = step_count_hh(p.c, p.d, kCfg);
    CHECK(s.boundary);
    CHECK((s.n == 2 || s.n == 3));
    CHECK(s.n == std::min(3L, oracle::linear_step_count(p.c, p.d, kTol)));
  }
}

TEST_CASE("parabolic step count") {
  // z ↦ z + τ against (a z + b)/(b z + a): the commutator trace is 2 + τ²b²
  for (double tau : {0.5, 1.0, 3.0}) {
    for (double b : {0.3, 1.0, 2.0}) {
      const double a = std::sqrt(1 + b * b);
      const Moebiusd p(1, tau, 0, 1), h(a, b, b, a);
      CHECK(commutator(p, h).trace() == doctest::Approx(2 + tau * tau * b * b).epsilon(1e-12));
      // and one linear step lowers trace(h) by |τ b|
      CHECK(h.trace() - (h * p.inverse()).trace() == doctest::Approx(std::abs(tau * b)).epsilon(1e-12));
    }
  }
  // trace(C) = 6 against a parabolic
  const double b = std::sqrt(8.0);
  const Moebiusd c(3, b, b, 3), d(1, 0.25, 0, 1);
  auto p = orient(pair_of(c, d), kCfg);
  REQUIRE(p.c.trace() == doctest::Approx(6.0));
  const auto s = step_count_hp(p.c, p.d, kCfg);
  CHECK(s.n == oracle::linear_step_count(p.c, p.d, kTol));
  CHECK(s.n == static_cast<long>(std::floor(4 / std::sqrt(std::abs(commutator(p.c, p.d).trace() - 2)))));
  CHECK_THROWS_AS(step_count_hp(kSanovA, kSanovB, kCfg), DomainError);
}

TEST_CASE("parabolic pairs take one step") {
  CHECK(step_count_pp(kSanovA, kSanovB, kCfg).n == 1);
  CHECK(step_count_pp(Moebiusd(1, 1, 0, 1), Moebiusd(1, 0, 1, 1), kCfg).n == 1);
}

TEST_CASE("Fibonacci step") {
  const auto inst = instance(oracle::InstanceKind::HHDisjoint, 9);
  const auto p = pair_of(inst.a, inst.b);
  const auto q = fibonacci_step(p, 1, kCfg);
  CHECK(projective_distance(q.c, inst.b.inverse()) < 1e-12);
  CHECK(projective_distance(q.d, inst.a.inverse() * inst.b) < 1e-12);
  CHECK(q.word_c.str() == "B");
  CHECK(q.word_d.str() == "Ab");

  // words along real runs: forward to the stopping pair and back to the input.
  // The matrices carry the rounding of every step, up to 1e-6 relative on
  // these inputs; a wrong word is off by order one.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto in = instance(oracle::InstanceKind::DiscreteFree, seed);
    const auto r = run(in.a, in.b, kCfg).stopping_pair;
    REQUIRE(r.words_tracked);
    CHECK(relative_projective_distance(r.word_c.evaluate(in.a, in.b), r.c) < 1e-5);
    CHECK(relative_projective_distance(r.word_d.evaluate(in.a, in.b), r.d) < 1e-5);
    CHECK(relative_projective_distance(r.rebuild_a.evaluate(r.c, r.d), in.a) < 1e-5);
    CHECK(relative_projective_distance(r.rebuild_b.evaluate(r.c, r.d), in.b) < 1e-5);
  }
  CHECK_THROWS_AS(fibonacci_step(p, 0, kCfg), DomainError);
}

TEST_CASE("stopping tests") {
  CHECK(stopping_test(pair_of(kSanovA, kSanovB), kCfg) == Outcome::Discrete);
  // D chosen so that C D⁻¹ is a quarter turn, trace 0
  const auto h = hyperbolic(1, -1, 2.0);
  const Moebiusd quarter(0, -1, 1, 0);
  const Moebiusd dd = quarter.inverse() * h;
  REQUIRE((h * dd.inverse()).trace() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(stopping_test(pair_of(h, dd), kCfg) == Outcome::NotFreeOrNotDiscrete);

  const Moebiusd t(1, 1, 0, 1), s(1, 0, 1, 1);
  CHECK(jorgensen_value(t, s) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(stopping_test(pair_of(t, s), kCfg) != Outcome::NotDiscrete);

  // the inequality fails for D while it holds for C
  auto q = pair_of(instance(oracle::InstanceKind::HHDisjoint, 1009756).a,
                   instance(oracle::InstanceKind::HHDisjoint, 1009756).b);
  q = orient(q, kCfg);
  const double jc = std::abs(q.c.trace() * q.c.trace() - 4) + std::abs(commutator(q.c, q.d).trace() - 2);
  REQUIRE(jc > 1);
  CHECK(jorgensen_value(q.c, q.d) < 0.1);
  CHECK(stopping_test(q, kCfg) == Outcome::NotDiscrete);
}

TEST_CASE("run on the Sanov pair") {
  const auto v = run(kSanovA, kSanovB, kCfg);
  CHECK(v.outcome == Outcome::Discrete);
  CHECK(v.f_sequence == std::vector<long>{1});
  CHECK(oracle::ping_pong_check(kSanovA, kSanovB, oracle::PingPongSets<double>::unit_split()));
}

TEST_CASE("hyperbolic-parabolic inputs stop within two divisions") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = instance(oracle::InstanceKind::HP, seed);
    const auto v = run(inst.a, inst.b, kCfg);
    CHECK(v.f_sequence.size() <= 2);
    if (v.f_sequence.size() == 2) CHECK(v.f_sequence[1] == 1);
  }
}

TEST_CASE("conjugation leaves the run unchanged") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = instance(oracle::InstanceKind::DiscreteFree, seed);
    const auto v = run(inst.a, inst.b, kCfg);
    REQUIRE(v.outcome == Outcome::DiscreteFree);
    const double s = std::exp(u(rng));
    const Moebiusd k = Moebiusd(1, 0, u(rng), 1) * Moebiusd(1, u(rng), 0, 1) * Moebiusd(s, 0, 0, 1 / s);
    const auto w = run(Moebiusd(k * inst.a * k.inverse()), Moebiusd(k * inst.b * k.inverse()), kCfg);
    CHECK(w.outcome == v.outcome);
    CHECK(w.f_sequence == v.f_sequence);
  }
}

TEST_CASE("intersecting axes") {
  const Moebiusd a(2, 0, 0, 0.5);
  SUBCASE("orthogonal axes, parabolic commutator") {
    const auto b = hyperbolic(1, -1, 2 * std::log(3.0));
    CHECK(commutator(a, b).trace() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(run(a, b, kCfg).outcome == Outcome::DiscreteFree);
  }
  SUBCASE("hyperbolic commutator") {
    const auto b = hyperbolic(1, -1, 2 * std::log(4.0));
    CHECK(std::abs(commutator(a, b).trace()) > 2);
    const auto v = run(a, b, kCfg);
    REQUIRE(v.outcome == Outcome::DiscreteFree);
    REQUIRE(v.shortest);
    const auto words = oracle::enumerate_words(a, b, 8, kTol);
    for (const auto& e : words) {
      if (e.length) CHECK(*e.length >= v.shortest->lengths.front() - 1e-9);
    }
  }
  SUBCASE("elliptic commutator") {
    const auto b = hyperbolic(3, -1, 2 * std::log(3.0));
    CHECK(std::abs(commutator(a, b).trace()) < 2);
    CHECK(run(a, b, kCfg).outcome == Outcome::OutOfScopeElliptic);
  }
  SUBCASE("same axis") {
    CHECK_THROWS_AS(run(a, Moebiusd(3, 0, 0, 1.0 / 3), kCfg), ElementaryError);
  }
}

TEST_CASE("shortest geodesics") {
  SUBCASE("equal lengths give equal first entries") {
    const auto c = hyperbolic(1, -1, 1.7), d = hyperbolic(-5, -3, 1.7);
    const auto s = shortest_geodesics(pair_of(c, d), kTol);
    REQUIRE(s.lengths.size() >= 2);
    CHECK(s.lengths[0] == doctest::Approx(s.lengths[1]).epsilon(1e-12));
  }
  SUBCASE("the Sanov pair is a thrice-punctured sphere") {
    // trace(A·B⁻¹) = -2, so all three members are parabolic
    const auto s = shortest_geodesics(pair_of(kSanovA, kSanovB), kTol);
    CHECK(s.cusps == 3);
    CHECK(s.lengths.empty());
  }
  SUBCASE("two parabolics and one geodesic") {
    const auto s = shortest_geodesics(pair_of(kSanovA, Moebiusd(1, 0, 3, 1)), kTol);
    CHECK(s.cusps == 2);
    REQUIRE(s.lengths.size() == 1);
    // trace(A·B⁻¹) = -4
    CHECK(s.lengths[0] == doctest::Approx(2 * std::acosh(2.0)).epsilon(1e-12));
  }
  SUBCASE("nothing shorter up to length 8") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto inst = instance(oracle::InstanceKind::DiscreteFree, seed);
      const auto v = run(inst.a, inst.b, kCfg);
      REQUIRE(v.shortest);
      // the enumeration runs in extended precision, as the reported lengths do
      const Moebius<long double> a(inst.a.matrix().cast<long double>()), b(inst.b.matrix().cast<long double>());
      for (const auto& e : oracle::enumerate_words(a, b, 8, 1e-9L)) {
        if (e.length) CHECK(static_cast<double>(*e.length) >= v.shortest->lengths.front() - 1e-9);
      }
    }
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(run(Moebiusd::identity(), kSanovB, kCfg), ElementaryError);
  CHECK_THROWS_AS(run(Moebiusd(2, 0, 0, 1), kSanovB, kCfg), DeterminantError);
  CHECK_THROWS_AS(run(Moebiusd(1, 1, 0, 1), Moebiusd(1, 5, 0, 1), kCfg), ElementaryError);
  CHECK(run(Moebiusd(0, 1, -1, 0), kSanovB, kCfg).outcome == Outcome::OutOfScopeElliptic);
  Config tight;
  tight.max_steps = 1;
  const auto inst = instance(oracle::InstanceKind::DiscreteFree, 0);
  CHECK_THROWS_AS(run(inst.a, inst.b, tight), MaxStepsError);
}
