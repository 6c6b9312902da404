#pragma once

// Brute-force cross-checks that do not use the closed-form step counts:
// geometric and trace-walking linear-step counts, word enumeration, seeded
// instance generation and a ping-pong certificate.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gm/geometry.hpp"
#include "gm/word.hpp"

namespace gm::oracle {

/// Number of q ≥ 1 such that L_{D^1}, ..., L_{D^q} all separate L from L_C,
/// where L is the common perpendicular of the axes and C = H_L ∘ H_{L_C}.
/// Expects a coherently oriented hyperbolic pair with disjoint axes. The
/// walk stops at the first member that fails to separate, including a
/// member that crosses L_C.
template <typename Scalar>
long geometric_step_count(const Moebius<Scalar>& c, const Moebius<Scalar>& d, Scalar tol) {
  const auto ax_c = axis(c, tol), ax_d = axis(d, tol);
  if (intersection_kind(ax_c, ax_d, tol) != IntersectionKind::Disjoint) {
    throw GeometryError("geometric step count needs disjoint axes", intersection_kind(ax_c, ax_d, tol));
  }
  const auto l = common_perpendicular(ax_c, ax_d, tol);
  const auto l_c = reflection_factor(c, l, tol);
  const auto back = half_step(d).inverse();
  auto g = perpendicular_family(d, l, 1, tol).front();
  for (long count = 0; count < (1L << 24);) {
    bool sep = false;
    try {
      sep = separates(g, l, l_c, tol);
    } catch (const GeometryError&) {
    }
    if (!sep) return count;
    ++count;
    try {
      g = g.transformed(back);
    } catch (const DomainError&) {
      return count;  // ends merged in floating point; nothing further can separate
    }
  }
  throw DomainError("geometric step count did not terminate");
}

/// Hyperbolic-parabolic count: walk C, C·D⁻¹, C·D⁻², ... while the trace
/// keeps decreasing and stays at or above 2.
template <typename Scalar>
long trace_walk_step_count(const Moebius<Scalar>& c, const Moebius<Scalar>& d, Scalar tol) {
  const auto di = d.inverse();
  Moebius<Scalar> x = c;
  long count = 0;
  while (count < (1L << 24)) {
    const auto next = x * di;
    if (!(next.trace() < x.trace()) || next.trace() < Scalar(2) - tol) return count;
    x = next;
    ++count;
  }
  throw DomainError("trace walk did not terminate");
}

/// Linear-step count of a coherent pair: geometric for two hyperbolics,
/// trace walking when D is parabolic.
template <typename Scalar>
long linear_step_count(const Moebius<Scalar>& c, const Moebius<Scalar>& d, Scalar tol) {
  if (is_elementary(c, d, tol)) throw DomainError("elementary pair");
  const auto kc = classify(c, tol), kd = classify(d, tol);
  if (kc == IsometryClass::Hyperbolic && kd == IsometryClass::Hyperbolic) return geometric_step_count(c, d, tol);
  if (kc == IsometryClass::Hyperbolic && kd == IsometryClass::Parabolic) return trace_walk_step_count(c, d, tol);
  throw DomainError("linear step count needs a hyperbolic-hyperbolic or hyperbolic-parabolic pair");
}

template <typename Scalar>
struct WordEntry {
  Word word;
  IsometryClass kind;
  std::optional<Scalar> length;  // hyperbolic only
};

namespace detail {

inline char inverse_letter(char c) {
  switch (c) {
    case 'a': return 'A';
    case 'A': return 'a';
    case 'b': return 'B';
    default: return 'b';
  }
}

// Least rotation of s or of its inverse.
inline std::string canonical_class(const std::string& s) {
  std::string inv(s.rbegin(), s.rend());
  for (char& c : inv) c = inverse_letter(c);
  std::string best = s;
  for (const std::string* t : {&s, static_cast<const std::string*>(&inv)}) {
    for (std::size_t r = 0; r < t->size(); ++r) {
      std::string rot = t->substr(r) + t->substr(0, r);
      if (rot < best) best = rot;
    }
  }
  return best;
}

}  // namespace detail

/// One cyclically reduced representative per class under rotation and
/// inversion, for every length 1..max_len, sorted by length then letters.
template <typename Scalar>
std::vector<WordEntry<Scalar>> enumerate_words(const Moebius<Scalar>& a, const Moebius<Scalar>& b, int max_len,
                                               Scalar tol) {
  if (max_len < 1 || max_len > 12) throw DomainError("word enumeration supports 1 <= max_len <= 12");
  const std::string letters = "ABab";
  std::set<std::string> classes;
  std::string cur;
  auto dfs = [&](auto&& self) -> void {
    if (!cur.empty() && (cur.size() < 2 || cur.front() != detail::inverse_letter(cur.back()))) {
      classes.insert(detail::canonical_class(cur));
    }
    if (static_cast<int>(cur.size()) == max_len) return;
    for (char c : letters) {
      if (!cur.empty() && cur.back() == detail::inverse_letter(c)) continue;
      cur.push_back(c);
      self(self);
      cur.pop_back();
    }
  };
  dfs(dfs);

  std::vector<std::string> sorted(classes.begin(), classes.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const std::string& x, const std::string& y) { return x.size() < y.size(); });
  std::vector<WordEntry<Scalar>> out;
  out.reserve(sorted.size());
  for (const auto& s : sorted) {
    const Word w = Word::parse(s);
    const auto x = w.evaluate(a, b);
    WordEntry<Scalar> e{w, classify(x, tol), std::nullopt};
    if (e.kind == IsometryClass::Hyperbolic) e.length = translation_length(x, tol).translation_length;
    out.push_back(std::move(e));
  }
  return out;
}

enum class InstanceKind { HHDisjoint, HHIntersecting, HP, PP, DiscreteFree };

inline const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::HHDisjoint: return "hh";
    case InstanceKind::HHIntersecting: return "hh-intersecting";
    case InstanceKind::HP: return "hp";
    case InstanceKind::PP: return "pp";
    case InstanceKind::DiscreteFree: return "discrete-free";
  }
  return "?";
}

struct InstanceSpec {
  std::uint64_t seed = 0;
  InstanceKind kind = InstanceKind::HHDisjoint;
  double min_length = 0.1, max_length = 6.0;      // translation lengths of hyperbolic generators
  double min_separation = 0.01, max_separation = 3.0;  // distance between disjoint axes
  double min_shift = 0.3, max_shift = 3.0;        // |τ| of parabolic generators in normal form
  double conjugation_spread = 1.0;                // log-scale of the random conjugator
  int scramble_depth = 3;                          // discrete-free only
  int max_scramble_power = 2;
};

template <typename Scalar>
struct Instance {
  Moebius<Scalar> a, b;
  int rejections = 0;
  std::vector<std::string> rejection_log;
};

/// Hyperbolic element with the given ends and translation length.
template <typename Scalar>
Moebius<Scalar> hyperbolic_with_ends(const BoundaryPoint<Scalar>& attracting, const BoundaryPoint<Scalar>& repelling,
                                     Scalar length) {
  Matrix2<Scalar> m;
  m.col(0) = attracting.homogeneous();
  m.col(1) = repelling.homogeneous();
  const Vector2<Scalar> k(exp(length / 2), exp(-length / 2));
  Matrix2<Scalar> x = m * k.asDiagonal() * m.inverse();
  if (x.trace() < Scalar(0)) x = -x;
  return Moebius<Scalar>(x);
}

/// Parabolic element fixing p, conjugate to z ↦ z + τ.
template <typename Scalar>
Moebius<Scalar> parabolic_at(const BoundaryPoint<Scalar>& p, Scalar tau) {
  Matrix2<Scalar> m;
  // columns: p and a vector completing it to a determinant-one basis
  m.col(0) = p.homogeneous();
  m.col(1) = Vector2<Scalar>(-p.homogeneous()(1), p.homogeneous()(0));
  Matrix2<Scalar> t;
  t << 1, tau, 0, 1;
  Matrix2<Scalar> x = m * t * m.inverse();
  return Moebius<Scalar>(x);
}

namespace detail {

template <typename Scalar>
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  Scalar uniform(Scalar lo, Scalar hi) { return lo + (hi - lo) * unit(); }
  bool coin() { return unit() < Scalar(0.5); }
  int integer(int lo, int hi) { return lo + static_cast<int>(unit() * (hi - lo + 1)) % (hi - lo + 1); }

  /// Well-conditioned random element: rotation · diag · rotation.
  Moebius<Scalar> conjugator(Scalar spread) {
    auto rot = [](Scalar t) {
      Matrix2<Scalar> r;
      r << cos(t), -sin(t), sin(t), cos(t);
      return r;
    };
    const Scalar pi = gm::pi<Scalar>();
    const Scalar s = uniform(-spread, spread);
    const Vector2<Scalar> d(exp(s), exp(-s));
    return Moebius<Scalar>(Matrix2<Scalar>(rot(uniform(0, pi)) * d.asDiagonal() * rot(uniform(0, pi))));
  }

 private:
  // 53 random bits, independent of the standard library's distributions
  Scalar unit() { return Scalar(rng_() >> 11) * Scalar(0x1.0p-53); }
  std::mt19937_64 rng_;
};

template <typename Scalar>
Moebius<Scalar> positive(const Moebius<Scalar>& x) {
  return x.trace() < Scalar(0) ? x.negated() : x;
}

}  // namespace detail

/// Seed-deterministic generator pair of the requested kind.
template <typename Scalar>
Instance<Scalar> random_instance(const InstanceSpec& spec, Scalar tol = Scalar(1e-9)) {
  using Point = BoundaryPoint<Scalar>;
  if (!(spec.min_length > 0 && spec.min_length <= spec.max_length) ||
      !(spec.min_separation > 0 && spec.min_separation <= spec.max_separation) ||
      !(spec.min_shift > 0 && spec.min_shift <= spec.max_shift) || spec.scramble_depth < 0 ||
      spec.max_scramble_power < 1 || spec.conjugation_spread < 0) {
    throw DomainError("unsatisfiable instance spec");
  }
  detail::Sampler<Scalar> rng(spec.seed);
  Instance<Scalar> out;
  const Scalar pi = gm::pi<Scalar>();

  auto oriented = [&](Scalar e, Scalar length) {
    // axis with ends ±e, random direction
    const Point p = Point::from_real(e), q = Point::from_real(-e);
    return rng.coin() ? hyperbolic_with_ends(p, q, length) : hyperbolic_with_ends(q, p, length);
  };
  auto length = [&] { return rng.uniform(Scalar(spec.min_length), Scalar(spec.max_length)); };
  auto shift = [&] {
    const Scalar t = rng.uniform(Scalar(spec.min_shift), Scalar(spec.max_shift));
    return rng.coin() ? t : -t;
  };

  for (int attempt = 0; attempt < 1000; ++attempt) {
    Moebius<Scalar> a, b;
    switch (spec.kind) {
      case InstanceKind::HHDisjoint: {
        const Scalar d = rng.uniform(Scalar(spec.min_separation), Scalar(spec.max_separation));
        a = oriented(Scalar(1), length());
        b = oriented(exp(d), length());
        break;
      }
      case InstanceKind::HHIntersecting: {
        a = oriented(Scalar(1), length());
        const Point inside = Point::from_real(rng.uniform(Scalar(-0.9), Scalar(0.9)));
        const Scalar r = rng.uniform(Scalar(0.05), Scalar(0.9));
        const Point outside = Point::from_real((rng.coin() ? 1 : -1) / r);
        b = rng.coin() ? hyperbolic_with_ends(inside, outside, length())
                       : hyperbolic_with_ends(outside, inside, length());
        break;
      }
      case InstanceKind::HP: {
        a = oriented(Scalar(1), length());
        // fixed point inside or outside [-1, 1], away from the axis ends
        Scalar p = rng.uniform(Scalar(-0.9), Scalar(0.9));
        if (rng.coin()) p = p >= 0 ? Scalar(1.1) + 3 * p : Scalar(-1.1) + 3 * p;
        b = parabolic_at(Point::from_real(p), shift());
        break;
      }
      case InstanceKind::PP: {
        a = parabolic_at(Point::infinity(), shift());
        b = parabolic_at(Point::from_real(rng.uniform(Scalar(-2), Scalar(2))), shift());
        break;
      }
      case InstanceKind::DiscreteFree: {
        // three disjoint mirrors around the boundary bound a common region;
        // A = H_L H_{L_A}, B = H_L H_{L_B} then generate a free discrete group
        // wide mirrors with narrow gaps keep the cuffs short
        Scalar w[6], total = 0;
        for (int i = 0; i < 6; ++i) {
          w[i] = i % 2 == 0 ? rng.uniform(Scalar(1), Scalar(2)) : rng.uniform(Scalar(0.05), Scalar(0.6));
          total += w[i];
        }
        Scalar acc = rng.uniform(0, 2 * pi), th[6];
        for (int i = 0; i < 6; ++i) {
          th[i] = acc;
          acc += 2 * pi * w[i] / total;
        }
        auto mirror = [&](int i) {
          return Reflection<Scalar>(Geodesic<Scalar>(Point::from_disc_angle(th[i]), Point::from_disc_angle(th[i + 1])));
        };
        const auto l = mirror(0), la = mirror(2), lb = mirror(4);
        Moebius<Scalar> c = detail::positive(l.then_after(la)), dd = detail::positive(l.then_after(lb));
        for (int k = 0; k < spec.scramble_depth; ++k) {
          // undo a Fibonacci step: (C', D') = (D⁻¹, C⁻¹Dⁿ) ← (C, D)
          const long n = rng.integer(1, spec.max_scramble_power);
          const Moebius<Scalar> nc = c.pow(-n) * dd.inverse(), nd = c.inverse();
          c = detail::positive(nc);
          dd = detail::positive(nd);
        }
        a = c;
        b = dd;
        break;
      }
    }
    const auto g = rng.conjugator(Scalar(spec.conjugation_spread));
    a = Moebius<Scalar>::generator((g * a * g.inverse()).matrix(), Scalar(1e-6));
    b = Moebius<Scalar>::generator((g * b * g.inverse()).matrix(), Scalar(1e-6));
    if (rng.coin()) std::swap(a, b);

    std::string why;
    try {
      if (classify(a, tol) == IsometryClass::Identity || classify(b, tol) == IsometryClass::Identity) {
        why = "identity generator";
      } else if (is_elementary(a, b, Scalar(1e-6))) {
        why = "elementary within 1e-6";
      }
    } catch (const DomainError& e) {
      why = e.what();
    }
    if (why.empty()) {
      out.a = a;
      out.b = b;
      return out;
    }
    ++out.rejections;
    out.rejection_log.push_back(why);
  }
  throw DomainError("instance spec could not be satisfied in 1000 draws");
}

/// Closed boundary arc from `start` counterclockwise (in the disc picture)
/// to `end`; on the real line this is increasing order through ∞.
template <typename Scalar>
struct Arc {
  BoundaryPoint<Scalar> start, end;
};

/// Schottky-type sets: X maps the complement of the arc of X⁻¹ into the arc
/// of X, for X ∈ {a, A, b, B}.
template <typename Scalar>
struct PingPongSets {
  Arc<Scalar> a, a_inv, b, b_inv;

  /// |x| ≥ 1 for the first generator, |x| ≤ 1 for the second.
  static PingPongSets unit_split() {
    using P = BoundaryPoint<Scalar>;
    return {{P::from_real(1), P::infinity()},
            {P::infinity(), P::from_real(-1)},
            {P::from_real(0), P::from_real(1)},
            {P::from_real(-1), P::from_real(0)}};
  }
};

namespace detail {

template <typename Scalar>
Scalar ccw_offset(const BoundaryPoint<Scalar>& from, const BoundaryPoint<Scalar>& to) {
  const Scalar two_pi = 2 * pi<Scalar>();
  Scalar d = fmod(to.disc_angle() - from.disc_angle(), two_pi);
  if (d < Scalar(0)) d += two_pi;
  return d;
}

// [s, e] ⊂ [p, q], all ccw arcs, closed with slack tol.
template <typename Scalar>
bool arc_inside(const Arc<Scalar>& inner, const Arc<Scalar>& outer, Scalar tol) {
  const Scalar two_pi = 2 * pi<Scalar>();
  const Scalar len = ccw_offset(outer.start, outer.end);
  Scalar s = ccw_offset(outer.start, inner.start), e = ccw_offset(outer.start, inner.end);
  if (s > two_pi - tol) s -= two_pi;
  if (e > two_pi - tol) e -= two_pi;
  if (e < s) return false;
  return s >= -tol && e <= len + tol;
}

// Interiors disjoint.
template <typename Scalar>
bool arcs_disjoint(const Arc<Scalar>& x, const Arc<Scalar>& y, Scalar tol) {
  const Scalar lx = ccw_offset(x.start, x.end);
  for (const auto& p : {y.start, y.end}) {
    const Scalar o = ccw_offset(x.start, p);
    if (o > tol && o < lx - tol) return false;
  }
  // y could swallow x entirely
  const Scalar ly = ccw_offset(y.start, y.end), o = ccw_offset(y.start, x.start);
  return !(o > tol && o < ly - tol);
}

}  // namespace detail

/// True iff the sets certify ⟨A, B⟩ free and discrete by ping-pong.
/// false means no certificate, not a disproof.
template <typename Scalar>
bool ping_pong_check(const Moebius<Scalar>& a, const Moebius<Scalar>& b, const PingPongSets<Scalar>& sets,
                     Scalar tol = Scalar(1e-9)) {
  if (is_identity(a, tol) || is_identity(b, tol)) return false;
  const Arc<Scalar>* arcs[] = {&sets.a, &sets.a_inv, &sets.b, &sets.b_inv};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (!detail::arcs_disjoint(*arcs[i], *arcs[j], tol)) return false;
    }
  }
  auto maps_into = [tol](const Moebius<Scalar>& x, const Arc<Scalar>& source, const Arc<Scalar>& target) {
    // complement of source, ccw from its end to its start
    const Arc<Scalar> image{x.apply(source.end), x.apply(source.start)};
    return detail::arc_inside(image, target, tol);
  };
  return maps_into(a, sets.a_inv, sets.a) && maps_into(a.inverse(), sets.a, sets.a_inv) &&
         maps_into(b, sets.b_inv, sets.b) && maps_into(b.inverse(), sets.b, sets.b_inv);
}

}  // namespace gm::oracle
