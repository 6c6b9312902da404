#pragma once

// Geodesics, reflections and the side/separation predicates.
//
// Geodesics are stored by their boundary ends (half-plane homogeneous
// coordinates). Metric questions go through the hyperboloid picture: a
// geodesic has a unit spacelike normal n in R^{2,1} with the Lorentz form
// <u, v> = u0 v0 + u1 v1 - u2 v2, built from the disc images of its ends.
// A boundary or interior point w lies to the left of the oriented geodesic
// iff <n, w> > 0, which matches counterclockwise orientation of the circle.

#include <cmath>
#include <complex>
#include <vector>

#include "gm/moebius.hpp"

namespace gm {

template <typename Scalar>
Scalar lorentz_dot(const Vector3<Scalar>& u, const Vector3<Scalar>& v) {
  return u(0) * v(0) + u(1) * v(1) - u(2) * v(2);
}

/// w with <w, u> = <w, v> = 0.
template <typename Scalar>
Vector3<Scalar> lorentz_cross(const Vector3<Scalar>& u, const Vector3<Scalar>& v) {
  Vector3<Scalar> w = u.cross(v);
  w(2) = -w(2);
  return w;
}

/// Hyperboloid point (sheet with positive last coordinate) of a disc point.
template <typename Scalar>
Vector3<Scalar> hyperboloid_from_disc(const std::complex<Scalar>& w) {
  const Scalar r2 = std::norm(w);
  const Scalar s = Scalar(1) - r2;
  return {2 * w.real() / s, 2 * w.imag() / s, (Scalar(1) + r2) / s};
}

template <typename Scalar>
std::complex<Scalar> disc_from_hyperboloid(const Vector3<Scalar>& p) {
  return {p(0) / (Scalar(1) + p(2)), p(1) / (Scalar(1) + p(2))};
}

template <typename Scalar>
std::complex<Scalar> disc_from_upper_half_plane(const std::complex<Scalar>& z) {
  const std::complex<Scalar> i(0, 1);
  return (z - i) / (z + i);
}

template <typename Scalar>
std::complex<Scalar> upper_half_plane_from_disc(const std::complex<Scalar>& w) {
  const std::complex<Scalar> i(0, 1);
  return i * (Scalar(1) + w) / (Scalar(1) - w);
}

enum class Side { Left, Right };
enum class IntersectionKind { Disjoint, Interior, SharedEnd };

inline const char* to_string(IntersectionKind k) {
  switch (k) {
    case IntersectionKind::Disjoint: return "disjoint";
    case IntersectionKind::Interior: return "interior";
    case IntersectionKind::SharedEnd: return "shared-end";
  }
  return "?";
}

/// A configuration predicate could not be evaluated; carries how the two
/// geodesics involved meet so the caller can branch.
class GeometryError : public DomainError {
 public:
  GeometryError(const std::string& what, IntersectionKind kind) : DomainError(what), kind_(kind) {}
  IntersectionKind kind() const { return kind_; }

 private:
  IntersectionKind kind_;
};

template <typename Scalar>
class Geodesic {
 public:
  using Point = BoundaryPoint<Scalar>;

  /// Oriented from `start` to `end`.
  Geodesic(const Point& start, const Point& end) : start_(start), end_(end) {
    if (!(start.distance(end) > Scalar(0))) throw DomainError("geodesic with coincident ends");
    normal_ = lorentz_cross(start.null_vector(), end.null_vector());
    normal_ /= sqrt(lorentz_dot(normal_, normal_));
  }

  const Point& start() const { return start_; }
  const Point& end() const { return end_; }

  /// Unit spacelike normal; positive on the left.
  const Vector3<Scalar>& normal() const { return normal_; }

  Geodesic reversed() const { return Geodesic(end_, start_); }

  /// Image under a Moebius map, orientation carried along.
  Geodesic transformed(const Moebius<Scalar>& x) const { return Geodesic(x.apply(start_), x.apply(end_)); }

  /// Signed side value of a boundary point (positive = left).
  Scalar side_value(const Point& p) const { return lorentz_dot(normal_, p.null_vector()); }

  /// Signed side value of an interior point given on the hyperboloid.
  Scalar side_value(const Vector3<Scalar>& p) const { return lorentz_dot(normal_, p); }

  bool has_end_near(const Point& p, Scalar tol) const {
    return start_.distance(p) <= tol || end_.distance(p) <= tol;
  }

 private:
  Point start_, end_;
  Vector3<Scalar> normal_;
};

using Geodesicd = Geodesic<double>;

/// Axis of a hyperbolic element, oriented from the repelling to the
/// attracting fixed point.
template <typename Scalar>
Geodesic<Scalar> axis(const Moebius<Scalar>& x, Scalar tol) {
  if (classify(x, tol) != IsometryClass::Hyperbolic) {
    throw DomainError(std::string("axis requested of a ") + to_string(classify(x, tol)) + " element");
  }
  const auto fp = fixed_points(x, tol);
  return Geodesic<Scalar>(fp.repelling, fp.attracting);
}

template <typename Scalar>
IntersectionKind intersection_kind(const Geodesic<Scalar>& g1, const Geodesic<Scalar>& g2, Scalar tol) {
  if (g1.has_end_near(g2.start(), tol) || g1.has_end_near(g2.end(), tol)) return IntersectionKind::SharedEnd;
  const Scalar s = g1.side_value(g2.start());
  const Scalar e = g1.side_value(g2.end());
  return (s > Scalar(0)) != (e > Scalar(0)) ? IntersectionKind::Interior : IntersectionKind::Disjoint;
}

/// Feet of the common perpendicular of two disjoint geodesics, as
/// hyperboloid points: first on g1, second on g2.
template <typename Scalar>
std::pair<Vector3<Scalar>, Vector3<Scalar>> perpendicular_feet(const Geodesic<Scalar>& g1,
                                                               const Geodesic<Scalar>& g2, Scalar tol) {
  const auto kind = intersection_kind(g1, g2, tol);
  if (kind != IntersectionKind::Disjoint) {
    throw GeometryError(std::string("common perpendicular needs disjoint geodesics, got ") + to_string(kind), kind);
  }
  Vector3<Scalar> m = lorentz_cross(g1.normal(), g2.normal());
  auto foot = [&m](const Vector3<Scalar>& n) {
    Vector3<Scalar> p = lorentz_cross(n, m);
    p /= sqrt(-lorentz_dot(p, p));
    if (p(2) < Scalar(0)) p = -p;
    return p;
  };
  return {foot(g1.normal()), foot(g2.normal())};
}

/// The common perpendicular of two disjoint geodesics, oriented from g1
/// toward g2.
template <typename Scalar>
Geodesic<Scalar> common_perpendicular(const Geodesic<Scalar>& g1, const Geodesic<Scalar>& g2, Scalar tol) {
  const auto [p1, p2] = perpendicular_feet(g1, g2, tol);
  // unit tangent at p1 pointing at p2; p1 ± u are the ends
  Vector3<Scalar> u = p2 + lorentz_dot(p1, p2) * p1;
  u /= sqrt(lorentz_dot(u, u));
  using Point = BoundaryPoint<Scalar>;
  return Geodesic<Scalar>(Point::from_null_vector(p1 - u), Point::from_null_vector(p1 + u));
}

/// Hyperbolic distance between two disjoint geodesics.
template <typename Scalar>
Scalar geodesic_distance(const Geodesic<Scalar>& g1, const Geodesic<Scalar>& g2, Scalar tol) {
  const auto [p1, p2] = perpendicular_feet(g1, g2, tol);
  return acosh(std::max(Scalar(1), -lorentz_dot(p1, p2)));
}

/// True iff g1 and g2 lie in different components of the complement of m.
template <typename Scalar>
bool separates(const Geodesic<Scalar>& m, const Geodesic<Scalar>& g1, const Geodesic<Scalar>& g2, Scalar tol) {
  for (const auto* g : {&g1, &g2}) {
    const auto kind = intersection_kind(m, *g, tol);
    if (kind != IntersectionKind::Disjoint) {
      throw GeometryError(std::string("separation test needs disjoint geodesics, got ") + to_string(kind), kind);
    }
  }
  return (m.side_value(g1.start()) > Scalar(0)) != (m.side_value(g2.start()) > Scalar(0));
}

/// Side of the oriented geodesic holding the attracting fixed point of X.
template <typename Scalar>
Side attracting_side(const Geodesic<Scalar>& l, const Moebius<Scalar>& x, Scalar tol) {
  if (classify(x, tol) != IsometryClass::Hyperbolic) throw DomainError("attracting side needs a hyperbolic element");
  const auto p = fixed_points(x, tol).attracting;
  if (l.has_end_near(p, tol)) {
    throw GeometryError("attracting fixed point is an end of the geodesic", IntersectionKind::SharedEnd);
  }
  return l.side_value(p) > Scalar(0) ? Side::Left : Side::Right;
}

/// Reflection in a geodesic, the anti-Moebius map z ↦ (a z̄ + b)/(c z̄ + d)
/// with a real matrix of determinant -1.
template <typename Scalar>
class Reflection {
 public:
  using Matrix = Matrix2<Scalar>;

  explicit Reflection(const Geodesic<Scalar>& mirror) : mirror_(mirror) {
    Matrix p;
    p.col(0) = mirror.start().homogeneous();
    p.col(1) = mirror.end().homogeneous();
    m_ = p * Vector2<Scalar>(1, -1).asDiagonal() * p.inverse();
  }

  const Geodesic<Scalar>& mirror() const { return mirror_; }
  const Matrix& matrix() const { return m_; }

  std::complex<Scalar> apply(const std::complex<Scalar>& z) const {
    const auto zc = std::conj(z);
    return (m_(0, 0) * zc + m_(0, 1)) / (m_(1, 0) * zc + m_(1, 1));
  }

  /// (this ∘ other) is orientation preserving.
  Moebius<Scalar> then_after(const Reflection& other) const { return Moebius<Scalar>(Matrix(m_ * other.m_)); }

 private:
  Geodesic<Scalar> mirror_;
  Matrix m_;
};

/// Lift of the square root of a hyperbolic or parabolic element: the
/// element with the same axis (or fixed point) and half the translation.
template <typename Scalar>
Moebius<Scalar> half_step(const Moebius<Scalar>& x) {
  const Moebius<Scalar> y = x.trace() < Scalar(0) ? x.negated() : x;
  const Scalar s = sqrt(y.trace() + Scalar(2));
  return Moebius<Scalar>(Matrix2<Scalar>((y.matrix() + Matrix2<Scalar>::Identity()) / s));
}

/// Largest deviation, in disc coordinates, between two maps evaluated on a
/// fixed set of sample points of the half-plane.
template <typename Scalar, typename F, typename G>
Scalar sample_deviation(F&& f, G&& g) {
  using C = std::complex<Scalar>;
  const C samples[] = {C(0, 1), C(1, 2), C(-0.5, 0.3)};
  Scalar worst = 0;
  for (const auto& z : samples) {
    worst = std::max(worst, abs(disc_from_upper_half_plane(C(f(z))) - disc_from_upper_half_plane(C(g(z)))));
  }
  return worst;
}

namespace detail {

template <typename Scalar>
void check_factor_precondition(const Moebius<Scalar>& x, const Geodesic<Scalar>& l, Scalar tol) {
  const auto cls = classify(x, tol);
  if (cls == IsometryClass::Hyperbolic) {
    const auto ax = axis(x, tol);
    const Scalar dot = lorentz_dot(ax.normal(), l.normal());
    if (abs(dot) > tol * ax.normal().norm() * l.normal().norm()) {
      throw GeometryError("mirror is not perpendicular to the axis", IntersectionKind::Interior);
    }
  } else if (cls == IsometryClass::Parabolic) {
    if (!l.has_end_near(fixed_points(x, tol).attracting, sqrt(tol))) {
      throw GeometryError("mirror does not pass through the parabolic fixed point", IntersectionKind::Disjoint);
    }
  } else {
    throw DomainError("reflection factor needs a hyperbolic or parabolic element");
  }
}

}  // namespace detail

/// L_X with X = H_L ∘ H_{L_X}. For hyperbolic X the returned geodesic is
/// perpendicular to the axis at distance T_X/2 from L, toward the repelling
/// end.
template <typename Scalar>
Geodesic<Scalar> reflection_factor(const Moebius<Scalar>& x, const Geodesic<Scalar>& l, Scalar tol) {
  detail::check_factor_precondition(x, l, tol);
  return l.transformed(half_step(x).inverse());
}

/// [L_{X^1}, ..., L_{X^q_max}], successive mirrors a half translation apart.
template <typename Scalar>
std::vector<Geodesic<Scalar>> perpendicular_family(const Moebius<Scalar>& x, const Geodesic<Scalar>& l, int q_max,
                                                   Scalar tol) {
  if (q_max < 1) throw DomainError("perpendicular family needs q_max >= 1");
  detail::check_factor_precondition(x, l, tol);
  const auto back = half_step(x).inverse();
  std::vector<Geodesic<Scalar>> out;
  out.reserve(static_cast<std::size_t>(q_max));
  Geodesic<Scalar> g = l;
  for (int q = 1; q <= q_max; ++q) {
    g = g.transformed(back);
    out.push_back(g);
  }
  return out;
}

}  // namespace gm
