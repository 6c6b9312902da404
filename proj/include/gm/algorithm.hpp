#pragma once

// The discreteness algorithm for two-generator real Moebius groups.
//
// A pair (C, D) is repeatedly replaced by (D⁻¹, C⁻¹Dⁿ) where n is obtained
// by Euclidean division of translation lengths (or the parabolic analogue),
// until a trace test decides the group. The linear steps C → C·D⁻¹ that
// the division stands for are never materialized.

#include <cmath>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "gm/geometry.hpp"
#include "gm/oracle.hpp"
#include "gm/word.hpp"

namespace gm {

enum class PairClass { HHDisjoint, HHIntersecting, HP, PP, HasElliptic };

inline const char* to_string(PairClass c) {
  switch (c) {
    case PairClass::HHDisjoint: return "hh-disjoint";
    case PairClass::HHIntersecting: return "hh-intersecting";
    case PairClass::HP: return "hp";
    case PairClass::PP: return "pp";
    case PairClass::HasElliptic: return "has-elliptic";
  }
  return "?";
}

enum class Outcome { DiscreteFree, Discrete, NotDiscrete, NotFreeOrNotDiscrete, OutOfScopeElliptic };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::DiscreteFree: return "discrete-free";
    case Outcome::Discrete: return "discrete";
    case Outcome::NotDiscrete: return "not-discrete";
    case Outcome::NotFreeOrNotDiscrete: return "not-free-or-not-discrete";
    case Outcome::OutOfScopeElliptic: return "out-of-scope-elliptic";
  }
  return "?";
}

struct Config {
  double tolerance = 1e-9;
  double ratio_tolerance = 1e-7;
  double det_tolerance = 1e-9;
  long max_steps = 10000;
  // words longer than this stop being tracked; matrices are unaffected
  std::size_t max_word_length = std::size_t(1) << 16;
};

/// The algorithm state: the current generators and how they are written in
/// the input pair (a, b). `rebuild_a`/`rebuild_b` go the other way: the
/// input generators as words in the current pair (a ↦ C, b ↦ D).
template <typename Scalar>
struct OrderedPair {
  Moebius<Scalar> c, d;
  Word word_c = Word::a(), word_d = Word::b();
  Word rebuild_a = Word::a(), rebuild_b = Word::b();
  bool coherent = false;
  bool words_tracked = true;
};

template <typename Scalar>
struct StepTrace {
  PairClass pair_class = PairClass::HHDisjoint;
  Scalar trace_c = 0, trace_d = 0;
  std::optional<Scalar> length_c, length_d;
  long n = 0;
  long formula_n = 0;  // the closed form before boundary resolution or truncation
  Scalar trace_cd_inv = 0;
  Scalar commutator_trace = 0;
  Scalar jorgensen = 0;
  bool boundary = false;   // length ratio within ratio_tolerance of an integer
  bool truncated = false;  // closed form exceeded the trace-validated count
  bool terminal = false;   // the stopping pair's entry
};

template <typename Scalar>
struct ShortestCurves {
  std::vector<Scalar> lengths;  // ascending, hyperbolic members only
  std::vector<Word> words;      // in the input generators, same order
  int cusps = 0;
};

template <typename Scalar>
struct Verdict {
  Outcome outcome = Outcome::OutOfScopeElliptic;
  std::vector<long> f_sequence;
  OrderedPair<Scalar> stopping_pair;
  std::optional<ShortestCurves<Scalar>> shortest;
  std::vector<StepTrace<Scalar>> steps;
  std::string reason;
};

using Verdictd = Verdict<double>;

/// |trace²X − 4| + |trace[C,D] − 2| for the worse of X = C, X = D. A
/// discrete non-elementary group keeps both at 1 or more.
template <typename Scalar>
Scalar jorgensen_value(const Moebius<Scalar>& c, const Moebius<Scalar>& d) {
  const Scalar k = abs(commutator(c, d).trace() - Scalar(2));
  const Scalar tc = c.trace(), td = d.trace();
  return k + std::min(abs(tc * tc - Scalar(4)), abs(td * td - Scalar(4)));
}

template <typename Scalar>
PairClass pair_class(const Moebius<Scalar>& c, const Moebius<Scalar>& d, Scalar tol) {
  const auto kc = classify(c, tol), kd = classify(d, tol);
  auto is = [](IsometryClass k, IsometryClass w) { return k == w; };
  if (is(kc, IsometryClass::Elliptic) || is(kd, IsometryClass::Elliptic)) return PairClass::HasElliptic;
  if (is(kc, IsometryClass::Identity) || is(kd, IsometryClass::Identity)) {
    throw ElementaryError("identity generator");
  }
  const int hyperbolic = is(kc, IsometryClass::Hyperbolic) + is(kd, IsometryClass::Hyperbolic);
  if (hyperbolic == 0) return PairClass::PP;
  if (hyperbolic == 1) return PairClass::HP;
  const auto kind = intersection_kind(axis(c, tol), axis(d, tol), tol);
  return kind == IntersectionKind::Interior ? PairClass::HHIntersecting : PairClass::HHDisjoint;
}

/// Both attracting fixed points left of the common perpendicular oriented
/// from Ax_C to Ax_D, and trace(C) ≥ trace(D).
template <typename Scalar>
bool is_coherent(const Moebius<Scalar>& c, const Moebius<Scalar>& d, Scalar tol) {
  if (c.trace() < d.trace() - tol) return false;
  try {
    const auto ax_c = axis(c, tol), ax_d = axis(d, tol);
    const auto l = common_perpendicular(ax_c, ax_d, tol);
    return attracting_side(l, c, tol) == Side::Left && attracting_side(l, d, tol) == Side::Left;
  } catch (const DomainError&) {
    return false;
  }
}

namespace detail {

template <typename Scalar>
void set_words(OrderedPair<Scalar>& p, Word wc, Word wd, Word ra, Word rb, std::size_t cap) {
  if (!p.words_tracked) return;
  if (wc.length() > cap || wd.length() > cap || ra.length() > cap || rb.length() > cap) {
    p.words_tracked = false;
    p.word_c = p.word_d = p.rebuild_a = p.rebuild_b = Word();
    return;
  }
  p.word_c = std::move(wc);
  p.word_d = std::move(wd);
  p.rebuild_a = std::move(ra);
  p.rebuild_b = std::move(rb);
}

// The pair (X, Y) with X = C^{sc} or D^{sd} etc.: variant i of the eight,
// bit 0 swaps, bit 1 inverts the first, bit 2 inverts the second.
template <typename Scalar>
OrderedPair<Scalar> variant(const OrderedPair<Scalar>& p, int i, std::size_t cap) {
  OrderedPair<Scalar> q = p;
  const bool swap = i & 1, inv1 = i & 2, inv2 = i & 4;
  Moebius<Scalar> x = swap ? p.d : p.c, y = swap ? p.c : p.d;
  Word wx = swap ? p.word_d : p.word_c, wy = swap ? p.word_c : p.word_d;
  // letters of the new pair: a ↦ X, b ↦ Y; old C, D in those letters
  Word old_c = swap ? Word::b() : Word::a(), old_d = swap ? Word::a() : Word::b();
  if (inv1) {
    x = x.inverse();
    wx = wx.inverse();
  }
  if (inv2) {
    y = y.inverse();
    wy = wy.inverse();
  }
  // old C is a power of the new first or second letter
  auto fix = [&](Word w) {
    const bool first = w == Word::a();
    return (first ? inv1 : inv2) ? w.inverse() : w;
  };
  old_c = fix(old_c);
  old_d = fix(old_d);
  q.c = x;
  q.d = y;
  set_words(q, wx, wy, p.rebuild_a.substitute(old_c, old_d), p.rebuild_b.substitute(old_c, old_d), cap);
  return q;
}

}  // namespace detail

/// The coherently oriented variant of (A, B) among the eight swap/inverse
/// presentations. Words record the transformation.
template <typename Scalar>
OrderedPair<Scalar> coherently_orient(const OrderedPair<Scalar>& p, const Config& cfg) {
  const Scalar tol(cfg.tolerance);
  if (is_elementary(p.c, p.d, tol)) throw ElementaryError("elementary pair: generators share a fixed point");
  if (classify(p.c, tol) != IsometryClass::Hyperbolic || classify(p.d, tol) != IsometryClass::Hyperbolic) {
    throw DomainError("coherent orientation needs two hyperbolics; use the parabolic rules");
  }
  const auto kind = intersection_kind(axis(p.c, tol), axis(p.d, tol), tol);
  if (kind != IntersectionKind::Disjoint) {
    throw GeometryError("axes are not disjoint; use the intersecting-axes branch", kind);
  }
  for (int i = 0; i < 8; ++i) {
    auto q = detail::variant(p, i, cfg.max_word_length);
    if (is_coherent(q.c, q.d, tol)) {
      q.coherent = true;
      return q;
    }
  }
  throw GeometryError("no coherent presentation found", IntersectionKind::SharedEnd);
}

template <typename Scalar>
OrderedPair<Scalar> coherently_orient(const Moebius<Scalar>& a, const Moebius<Scalar>& b, const Config& cfg) {
  OrderedPair<Scalar> p;
  p.c = a;
  p.d = b;
  return coherently_orient(p, cfg);
}

/// Orientation by traces alone: larger trace (or the hyperbolic member)
/// first, then D's sign chosen so that trace(C·D⁻¹) ≤ trace(C·D).
template <typename Scalar>
OrderedPair<Scalar> orient_by_traces(const OrderedPair<Scalar>& p, const Config& cfg) {
  const Scalar tol(cfg.tolerance);
  const bool hc = classify(p.c, tol) == IsometryClass::Hyperbolic;
  const bool hd = classify(p.d, tol) == IsometryClass::Hyperbolic;
  const bool swap = (hd && !hc) || (hc == hd && abs(p.d.trace()) > abs(p.c.trace()) + tol);
  OrderedPair<Scalar> q = detail::variant(p, swap ? 1 : 0, cfg.max_word_length);
  if ((q.c * q.d.inverse()).trace() > (q.c * q.d).trace()) q = detail::variant(q, 4, cfg.max_word_length);
  q.coherent = false;
  return q;
}

/// Orientation used between steps: geometric coherence for two hyperbolics
/// with disjoint axes when the predicates can decide, trace rules otherwise.
template <typename Scalar>
OrderedPair<Scalar> orient(const OrderedPair<Scalar>& p, const Config& cfg) {
  const Scalar tol(cfg.tolerance);
  try {
    if (pair_class(p.c, p.d, tol) == PairClass::HHDisjoint) return coherently_orient(p, cfg);
  } catch (const GeometryError&) {
  }
  return orient_by_traces(p, cfg);
}

struct StepCount {
  long n = 0;
  long formula = 0;
  bool boundary = false;
  bool truncated = false;
  long elliptic_power = 0;  // j with C·D⁻ʲ elliptic, j ≤ formula; 0 if none
};

/// Euclidean division of translation lengths, n = ⌊T_C / T_D⌋. Near an
/// integer ratio the geometric separation count decides. The result is
/// then capped so that trace(C·D⁻ʲ) ≥ 2 for every j ≤ n: past the first
/// non-hyperbolic C·D⁻ʲ the linear steps would have stopped.
template <typename Scalar>
StepCount step_count_hh(const Moebius<Scalar>& c, const Moebius<Scalar>& d, const Config& cfg) {
  const Scalar tol(cfg.tolerance);
  if (classify(d, tol) != IsometryClass::Hyperbolic || classify(c, tol) != IsometryClass::Hyperbolic) {
    throw DomainError("hyperbolic step count needs two hyperbolics");
  }
  const Scalar tc = translation_length(c, tol).translation_length;
  const Scalar td = translation_length(d, tol).translation_length;
  if (!(td > Scalar(0))) throw DomainError("zero translation length");
  const Scalar ratio = tc / td;
  StepCount s;
  s.formula = std::max(1L, static_cast<long>(floor(ratio)));
  s.n = s.formula;
  if (abs(ratio - round(ratio)) < Scalar(cfg.ratio_tolerance)) {
    s.boundary = true;
    try {
      s.n = std::max(1L, oracle::geometric_step_count(c, d, tol));
    } catch (const DomainError&) {
    }
  }
  const auto di = d.inverse();
  Moebius<Scalar> x = c;
  for (long j = 1; j <= s.n; ++j) {
    x = x * di;
    if (x.trace() < Scalar(2) - tol) {
      if (abs(x.trace()) < Scalar(2) - tol) s.elliptic_power = j;
      const long cap = std::max(1L, j - 1);
      s.truncated = cap < s.n;
      s.n = cap;
      break;
    }
  }
  return s;
}

/// ⌊(trace(C) − 2) / √|trace([C,D]) − 2|⌋ for C hyperbolic, D parabolic.
template <typename Scalar>
StepCount step_count_hp(const Moebius<Scalar>& c, const Moebius<Scalar>& d, const Config& cfg) {
  const Scalar tol(cfg.tolerance);
  if (classify(c, tol) != IsometryClass::Hyperbolic || classify(d, tol) != IsometryClass::Parabolic) {
    throw DomainError("parabolic step count needs C hyperbolic and D parabolic");
  }
  const Scalar k = commutator(c, d).trace() - Scalar(2);
  if (abs(k) <= tol) throw ElementaryError("commutator trace is 2: degenerate or elementary pair");
  const Scalar ratio = (c.trace() - Scalar(2)) / sqrt(abs(k));
  StepCount s;
  s.formula = static_cast<long>(floor(ratio));
  s.n = s.formula;
  if (abs(ratio - round(ratio)) < Scalar(cfg.ratio_tolerance)) {
    s.boundary = true;
    s.n = oracle::trace_walk_step_count(c, d, tol);
  }
  if (s.n < 1) throw DomainError("step count 0: the stopping test must decide this pair");
  return s;
}

/// Two parabolics: always a single step.
template <typename Scalar>
StepCount step_count_pp(const Moebius<Scalar>&, const Moebius<Scalar>&, const Config&) {
  return {1, 1, false, false};
}

/// (C, D) → (D⁻¹, C⁻¹·Dⁿ), words composed accordingly.
template <typename Scalar>
OrderedPair<Scalar> fibonacci_step(const OrderedPair<Scalar>& p, long n, const Config& cfg) {
  if (n < 1) throw DomainError("Fibonacci step needs n >= 1");
  OrderedPair<Scalar> q = p;
  q.c = p.d.inverse();
  q.d = p.c.inverse() * p.d.pow(n);
  q.coherent = false;
  // old D = C'⁻¹, old C = Dⁿ·D'⁻¹ = C'⁻ⁿ·D'⁻¹
  const Word old_d = Word::parse("A");
  const Word old_c = Word::parse("A").pow(n) * Word::parse("B");
  detail::set_words(q, p.word_d.inverse(), p.word_c.inverse() * p.word_d.pow(n),
                    p.rebuild_a.substitute(old_c, old_d), p.rebuild_b.substitute(old_c, old_d),
                    cfg.max_word_length);
  return q;
}

/// nullopt means continue.
template <typename Scalar>
std::optional<Outcome> stopping_test(const OrderedPair<Scalar>& p, const Config& cfg) {
  const Scalar tol(cfg.tolerance);
  const auto cls = pair_class(p.c, p.d, tol);
  if (cls == PairClass::HasElliptic) return Outcome::NotFreeOrNotDiscrete;
  const Scalar x = (p.c * p.d.inverse()).trace();
  if (cls == PairClass::PP) {
    // the product decides: elliptic means not free, otherwise discrete
    return abs(x) < Scalar(2) - tol ? Outcome::NotFreeOrNotDiscrete : Outcome::Discrete;
  }
  if (x <= Scalar(-2) + tol) return Outcome::DiscreteFree;
  if (abs(x) < Scalar(2) - tol) return Outcome::NotFreeOrNotDiscrete;
  if (jorgensen_value(p.c, p.d) < Scalar(1) - tol) return Outcome::NotDiscrete;
  return std::nullopt;
}

/// Sorted translation lengths of C, D and the shorter of C·D, C·D⁻¹.
/// With the input generators at hand the three members are re-evaluated
/// from their words in extended precision: the accumulated matrices carry
/// the rounding of every step, the words carry none.
template <typename Scalar>
ShortestCurves<Scalar> shortest_geodesics(const OrderedPair<Scalar>& p, Scalar tol,
                                          const Moebius<Scalar>* a = nullptr, const Moebius<Scalar>* b = nullptr) {
  const auto cd = p.c * p.d, cdi = p.c * p.d.inverse();
  const bool use_inv = abs(cdi.trace()) <= abs(cd.trace());
  const Moebius<Scalar> third = use_inv ? cdi : cd;
  const Word third_word = use_inv ? p.word_c * p.word_d.inverse() : p.word_c * p.word_d;
  std::vector<std::pair<Scalar, Word>> found;
  ShortestCurves<Scalar> out;
  const std::pair<const Moebius<Scalar>*, Word> members[] = {{&p.c, p.word_c}, {&p.d, p.word_d}, {&third, third_word}};
  using Wide = std::conditional_t<std::is_floating_point_v<Scalar>, long double, Scalar>;
  const bool wide = a && b && p.words_tracked;
  Moebius<Wide> wa, wb;
  if (wide) {
    wa = Moebius<Wide>(a->matrix().template cast<Wide>());
    wb = Moebius<Wide>(b->matrix().template cast<Wide>());
  }
  for (const auto& [x, w] : members) {
    switch (classify(*x, tol)) {
      case IsometryClass::Hyperbolic: {
        const Scalar len = wide ? static_cast<Scalar>(translation_length(w.evaluate(wa, wb), Wide(tol)).translation_length)
                                : translation_length(*x, tol).translation_length;
        found.emplace_back(len, w);
        break;
      }
      case IsometryClass::Parabolic: ++out.cusps; break;
      default: break;
    }
  }
  std::stable_sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [len, w] : found) {
    out.lengths.push_back(len);
    out.words.push_back(std::move(w));
  }
  return out;
}

namespace detail {

inline int path_rank(PairClass c) {
  switch (c) {
    case PairClass::HHDisjoint: return 0;
    case PairClass::HP: return 1;
    case PairClass::PP: return 2;
    default: return 3;
  }
}

template <typename Scalar>
StepTrace<Scalar> telemetry(const OrderedPair<Scalar>& p, PairClass cls, Scalar tol) {
  StepTrace<Scalar> t;
  t.pair_class = cls;
  t.trace_c = p.c.trace();
  t.trace_d = p.d.trace();
  if (classify(p.c, tol) == IsometryClass::Hyperbolic) t.length_c = translation_length(p.c, tol).translation_length;
  if (classify(p.d, tol) == IsometryClass::Hyperbolic) t.length_d = translation_length(p.d, tol).translation_length;
  t.trace_cd_inv = (p.c * p.d.inverse()).trace();
  t.commutator_trace = commutator(p.c, p.d).trace();
  t.jorgensen = jorgensen_value(p.c, p.d);
  return t;
}

template <typename Scalar>
void finish(Verdict<Scalar>& v, Outcome o, const OrderedPair<Scalar>& p, Scalar tol, const Moebius<Scalar>& a,
            const Moebius<Scalar>& b) {
  v.outcome = o;
  v.stopping_pair = p;
  if (o == Outcome::DiscreteFree) v.shortest = shortest_geodesics(p, tol, &a, &b);
}

template <typename Scalar>
void check_inputs(const Moebius<Scalar>& a, const Moebius<Scalar>& b, const Config& cfg) {
  const Scalar tol(cfg.tolerance);
  if (!(cfg.tolerance > 0) || !(cfg.ratio_tolerance > 0) || cfg.max_steps < 1) {
    throw std::invalid_argument("tolerances must be positive and max_steps at least 1");
  }
  for (const auto* x : {&a, &b}) {
    if (abs(x->determinant() - Scalar(1)) >
        Scalar(cfg.det_tolerance) * Moebius<Scalar>::determinant_scale(x->matrix())) {
      throw DeterminantError("generator determinant differs from 1 beyond tolerance");
    }
    if (classify(*x, tol) == IsometryClass::Identity) throw ElementaryError("identity generator");
  }
}

}  // namespace detail

/// Intersecting axes. An elliptic commutator is out of scope; otherwise the
/// same replacement runs, with n capped by the strictly decreasing part of
/// trace(C·D⁻ʲ), until no linear step lowers trace(C).
template <typename Scalar>
Verdict<Scalar> intersecting_axes_branch(const Moebius<Scalar>& a, const Moebius<Scalar>& b, const Config& cfg) {
  const Scalar tol(cfg.tolerance);
  detail::check_inputs(a, b, cfg);
  if (is_elementary(a, b, tol)) throw ElementaryError("elementary pair: generators share a fixed point");
  Verdict<Scalar> v;
  OrderedPair<Scalar> p;
  p.c = a;
  p.d = b;
  const Scalar k = commutator(a, b).trace();
  if (abs(k) < Scalar(2) - tol) {
    v.outcome = Outcome::OutOfScopeElliptic;
    v.stopping_pair = p;
    v.reason = "intersecting axes with elliptic commutator";
    return v;
  }
  p = orient_by_traces(p, cfg);
  for (long step = 0; step < cfg.max_steps; ++step) {
    const auto cls = pair_class(p.c, p.d, tol);
    auto t = detail::telemetry(p, cls, tol);
    if (cls != PairClass::HHIntersecting) {
      // cannot happen in a discrete free group; report rather than continue
      t.terminal = true;
      v.steps.push_back(t);
      detail::finish(v, Outcome::NotFreeOrNotDiscrete, p, tol, a, b);
      v.reason = std::string("intersecting-axes run reached a ") + to_string(cls) + " pair";
      return v;
    }
    const Scalar tc = *t.length_c, td = *t.length_d;
    const long formula = std::max(1L, static_cast<long>(floor(tc / td)));
    t.formula_n = formula;
    if (t.trace_cd_inv >= p.c.trace() - tol) {
      t.n = formula;
      t.terminal = true;
      v.steps.push_back(t);
      v.f_sequence.push_back(formula);
      detail::finish(v, Outcome::DiscreteFree, p, tol, a, b);
      return v;
    }
    long n = 1;
    Moebius<Scalar> x = p.c * p.d.inverse();
    const auto di = p.d.inverse();
    while (n < formula) {
      const auto next = x * di;
      if (!(next.trace() < x.trace())) break;
      x = next;
      ++n;
    }
    t.n = n;
    t.truncated = n < formula;
    v.steps.push_back(t);
    v.f_sequence.push_back(n);
    p = orient_by_traces(fibonacci_step(p, n, cfg), cfg);
  }
  throw MaxStepsError("max_steps reached in the intersecting-axes branch");
}

/// The full algorithm on an input pair.
template <typename Scalar>
Verdict<Scalar> run(const Moebius<Scalar>& a, const Moebius<Scalar>& b, const Config& cfg = {}) {
  const Scalar tol(cfg.tolerance);
  detail::check_inputs(a, b, cfg);
  OrderedPair<Scalar> p;
  p.c = a;
  p.d = b;
  if (classify(a, tol) == IsometryClass::Elliptic || classify(b, tol) == IsometryClass::Elliptic) {
    Verdict<Scalar> v;
    v.outcome = Outcome::OutOfScopeElliptic;
    v.stopping_pair = p;
    v.reason = "elliptic generator";
    return v;
  }
  if (is_elementary(a, b, tol)) throw ElementaryError("elementary pair: generators share a fixed point");
  if (pair_class(a, b, tol) == PairClass::HHIntersecting) return intersecting_axes_branch(a, b, cfg);

  Verdict<Scalar> v;
  p = orient(p, cfg);
  int rank = -1;
  for (long step = 0; step < cfg.max_steps; ++step) {
    const auto cls = pair_class(p.c, p.d, tol);
    auto t = detail::telemetry(p, cls, tol);
    const int r = detail::path_rank(cls);
    if (r < rank) throw DomainError(std::string("pair class moved backwards to ") + to_string(cls));
    rank = r;

    if (const auto stop = stopping_test(p, cfg)) {
      t.terminal = true;
      if (cls == PairClass::HHDisjoint) {
        t.formula_n = std::max(1L, static_cast<long>(floor(*t.length_c / *t.length_d)));
        t.n = t.formula_n;
      } else if (cls != PairClass::HasElliptic && cls != PairClass::HHIntersecting) {
        t.formula_n = t.n = 1;
      }
      if (t.n > 0) v.f_sequence.push_back(t.n);
      v.steps.push_back(t);
      detail::finish(v, *stop, p, tol, a, b);
      return v;
    }

    StepCount s;
    switch (cls) {
      case PairClass::HHDisjoint: s = step_count_hh(p.c, p.d, cfg); break;
      case PairClass::HP: s = step_count_hp(p.c, p.d, cfg); break;
      case PairClass::PP: s = step_count_pp(p.c, p.d, cfg); break;
      default: throw DomainError(std::string("unexpected pair class ") + to_string(cls));
    }
    t.n = s.n;
    t.formula_n = s.formula;
    t.boundary = s.boundary;
    t.truncated = s.truncated;
    if (s.elliptic_power > 0) {
      // C·D⁻ʲ is elliptic: its two mirrors cross, and the group is not discrete and free
      t.n = s.formula;
      t.terminal = true;
      v.steps.push_back(t);
      v.f_sequence.push_back(s.formula);
      detail::finish(v, Outcome::NotFreeOrNotDiscrete, p, tol, a, b);
      v.reason = "C·D^-" + std::to_string(s.elliptic_power) + " is elliptic";
      return v;
    }
    v.steps.push_back(t);
    v.f_sequence.push_back(s.n);
    p = orient(fibonacci_step(p, s.n, cfg), cfg);
  }
  throw MaxStepsError("max_steps reached without a verdict");
}

}  // namespace gm
