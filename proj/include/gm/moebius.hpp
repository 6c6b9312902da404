#pragma once

// Real Moebius transformations as isometries of the hyperbolic plane.
//
// An element is stored as one definite lift to SL(2,R). The half-plane
// model is the computational model; the disc model is reachable through
// to_disc_model() and BoundaryPoint::disc_point().

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "gm/errors.hpp"
#include "gm/scalar.hpp"

namespace gm {

enum class IsometryClass { Hyperbolic, Parabolic, Elliptic, Identity };

inline const char* to_string(IsometryClass c) {
  switch (c) {
    case IsometryClass::Hyperbolic: return "hyperbolic";
    case IsometryClass::Parabolic: return "parabolic";
    case IsometryClass::Elliptic: return "elliptic";
    case IsometryClass::Identity: return "identity";
  }
  return "?";
}

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

/// A point of R ∪ {∞}, the boundary of the upper half-plane, held in
/// homogeneous coordinates (x : y) with x/y the real coordinate. The
/// representative is unit length with y > 0, or y == 0 and x > 0 at ∞.
template <typename Scalar>
class BoundaryPoint {
 public:
  BoundaryPoint() : h_(Scalar(1), Scalar(0)) {}

  static BoundaryPoint from_homogeneous(const Vector2<Scalar>& v) {
    BoundaryPoint p;
    p.h_ = v;
    p.canonicalize();
    return p;
  }
  static BoundaryPoint from_real(Scalar x) { return from_homogeneous({x, Scalar(1)}); }
  static BoundaryPoint infinity() { return from_homogeneous({Scalar(1), Scalar(0)}); }

  /// Boundary point whose disc image is e^{iθ}.
  static BoundaryPoint from_disc_angle(Scalar theta) {
    // z = -cot(θ/2)
    return from_homogeneous({-cos(theta / 2), sin(theta / 2)});
  }

  /// From a nonzero null vector of R^{2,1} in the hyperboloid picture.
  static BoundaryPoint from_null_vector(const Vector3<Scalar>& n) {
    const Scalar a = n(0) / n(2), b = n(1) / n(2);
    // (1 + a, -b) and (-b, 1 - a) are both proportional to (x, y).
    Vector2<Scalar> u(Scalar(1) + a, -b), v(-b, Scalar(1) - a);
    return from_homogeneous(u.squaredNorm() >= v.squaredNorm() ? u : v);
  }

  const Vector2<Scalar>& homogeneous() const { return h_; }

  bool is_infinity(Scalar tol = Scalar(0)) const { return abs(h_(1)) <= tol; }

  /// Real coordinate; ±inf at the point at infinity.
  Scalar real() const {
    if (h_(1) == Scalar(0)) return std::numeric_limits<Scalar>::infinity();
    return h_(0) / h_(1);
  }

  /// Image on the unit circle under z ↦ (z - i)/(z + i).
  std::complex<Scalar> disc_point() const {
    const Scalar x = h_(0), y = h_(1);
    return {x * x - y * y, Scalar(-2) * x * y};
  }

  /// Argument of disc_point() in [0, 2π).
  Scalar disc_angle() const {
    Scalar t = std::arg(disc_point());
    if (t < Scalar(0)) t += 2 * pi<Scalar>();
    return t;
  }

  /// Null vector (cos θ, sin θ, 1) of the disc image.
  Vector3<Scalar> null_vector() const {
    const auto w = disc_point();
    return {w.real(), w.imag(), Scalar(1)};
  }

  /// Chordal distance between disc images; the boundary metric.
  Scalar distance(const BoundaryPoint& o) const { return abs(disc_point() - o.disc_point()); }

 private:
  void canonicalize() {
    const Scalar n = h_.norm();
    if (!(n > Scalar(0))) throw DomainError("boundary point with zero homogeneous coordinates");
    h_ /= n;
    if (h_(1) < Scalar(0) || (h_(1) == Scalar(0) && h_(0) < Scalar(0))) h_ = -h_;
  }

  Vector2<Scalar> h_;
};

/// A determinant-one real 2×2 matrix, a chosen lift of a Moebius map.
template <typename Scalar>
class Moebius {
 public:
  using Matrix = Matrix2<Scalar>;

  Moebius() : m_(Matrix::Identity()) {}
  explicit Moebius(const Matrix& m) : m_(m) {}
  Moebius(Scalar a, Scalar b, Scalar c, Scalar d) { m_ << a, b, c, d; }

  static Moebius identity() { return Moebius(); }

  /// Ingestion of a user generator: checks |det - 1| ≤ det_tol, divides by
  /// √det, and flips the lift so that trace ≥ 0. The tolerance is relative
  /// to |ad| + |bc| once that exceeds 1, the size of the rounding error in
  /// the determinant itself.
  static Moebius generator(const Matrix& m, Scalar det_tol) {
    const Scalar det = m.determinant();
    if (!isfinite(det) || abs(det - Scalar(1)) > det_tol * determinant_scale(m)) {
      throw DeterminantError("determinant " + std::to_string(static_cast<double>(det)) +
                             " differs from 1 beyond tolerance");
    }
    Matrix n = m / sqrt(det);
    if (n.trace() < Scalar(0)) n = -n;
    return Moebius(n);
  }

  static Scalar determinant_scale(const Matrix& m) {
    return std::max(Scalar(1), abs(m(0, 0) * m(1, 1)) + abs(m(0, 1) * m(1, 0)));
  }

  const Matrix& matrix() const { return m_; }
  Scalar a() const { return m_(0, 0); }
  Scalar b() const { return m_(0, 1); }
  Scalar c() const { return m_(1, 0); }
  Scalar d() const { return m_(1, 1); }

  Scalar trace() const { return m_.trace(); }
  Scalar determinant() const { return m_.determinant(); }

  Moebius inverse() const { return Moebius(d(), -b(), -c(), a()); }
  Moebius negated() const { return Moebius(Matrix(-m_)); }

  /// Integer power of this lift; negative exponents use the inverse.
  Moebius pow(long n) const {
    Matrix base = n < 0 ? inverse().m_ : m_;
    unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    Matrix r = Matrix::Identity();
    while (e != 0) {
      if (e & 1UL) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return Moebius(r);
  }

  friend Moebius operator*(const Moebius& x, const Moebius& y) { return Moebius(Matrix(x.m_ * y.m_)); }

  std::complex<Scalar> apply(const std::complex<Scalar>& z) const {
    return (a() * z + b()) / (c() * z + d());
  }
  BoundaryPoint<Scalar> apply(const BoundaryPoint<Scalar>& p) const {
    return BoundaryPoint<Scalar>::from_homogeneous(m_ * p.homogeneous());
  }

 private:
  Matrix m_;
};

using Moebiusd = Moebius<double>;
using BoundaryPointd = BoundaryPoint<double>;

template <typename Scalar>
Moebius<Scalar> compose(const Moebius<Scalar>& x, const Moebius<Scalar>& y) {
  return x * y;
}

template <typename Scalar>
Moebius<Scalar> inverse(const Moebius<Scalar>& x) {
  return x.inverse();
}

/// X·Y·X⁻¹·Y⁻¹ on the stored lifts.
template <typename Scalar>
Moebius<Scalar> commutator(const Moebius<Scalar>& x, const Moebius<Scalar>& y) {
  return x * y * x.inverse() * y.inverse();
}

template <typename Scalar>
bool is_identity(const Moebius<Scalar>& x, Scalar tol) {
  return abs(x.b()) <= tol && abs(x.c()) <= tol && abs(x.a() - x.d()) <= tol &&
         abs(abs(x.trace()) - Scalar(2)) <= tol;
}

template <typename Scalar>
IsometryClass classify(const Moebius<Scalar>& x, Scalar tol) {
  const Scalar t = abs(x.trace());
  if (t > Scalar(2) + tol) return IsometryClass::Hyperbolic;
  if (t < Scalar(2) - tol) return IsometryClass::Elliptic;
  return is_identity(x, tol) ? IsometryClass::Identity : IsometryClass::Parabolic;
}

/// Translation length from a trace magnitude |t| ≥ 2. Uses the sinh form,
/// which keeps relative accuracy for traces close to 2.
template <typename Scalar>
Scalar length_from_trace(Scalar abs_trace) {
  const Scalar s = (abs_trace - Scalar(2)) * (abs_trace + Scalar(2));
  return Scalar(2) * asinh(sqrt(std::max(s, Scalar(0))) / Scalar(2));
}

template <typename Scalar>
struct LengthData {
  Scalar multiplier;          // K > 1
  Scalar translation_length;  // T = log K
};

template <typename Scalar>
LengthData<Scalar> translation_length(const Moebius<Scalar>& x, Scalar tol) {
  if (classify(x, tol) != IsometryClass::Hyperbolic) {
    throw DomainError(std::string("translation length requested of a ") + to_string(classify(x, tol)) +
                      " element; only hyperbolic elements have a multiplier");
  }
  const Scalar t = length_from_trace(abs(x.trace()));
  return {exp(t), t};
}

/// Fixed-point data. Hyperbolic: attracting and repelling boundary points.
/// Parabolic: the single boundary point in `attracting`. Elliptic: the
/// interior point in the upper half-plane.
template <typename Scalar>
struct FixedPoints {
  IsometryClass kind = IsometryClass::Identity;
  BoundaryPoint<Scalar> attracting;
  BoundaryPoint<Scalar> repelling;
  std::complex<Scalar> interior{};
};

namespace detail {

// Null vector of (X - λI), choosing the better conditioned of the two rows.
template <typename Scalar>
Vector2<Scalar> eigenvector(const Moebius<Scalar>& x, Scalar lambda) {
  Vector2<Scalar> u(x.b(), lambda - x.a());
  Vector2<Scalar> v(lambda - x.d(), x.c());
  return u.squaredNorm() >= v.squaredNorm() ? u : v;
}

}  // namespace detail

template <typename Scalar>
FixedPoints<Scalar> fixed_points(const Moebius<Scalar>& x, Scalar tol) {
  FixedPoints<Scalar> fp;
  fp.kind = classify(x, tol);
  const Scalar t = x.trace();
  switch (fp.kind) {
    case IsometryClass::Identity:
      throw DomainError("the identity fixes every point");
    case IsometryClass::Hyperbolic: {
      const Scalar root = sqrt((t - Scalar(2)) * (t + Scalar(2)));
      const Scalar big = (t + copysign(root, t)) / Scalar(2);  // |big| > 1
      fp.attracting = BoundaryPoint<Scalar>::from_homogeneous(detail::eigenvector(x, big));
      fp.repelling = BoundaryPoint<Scalar>::from_homogeneous(detail::eigenvector(x, Scalar(1) / big));
      break;
    }
    case IsometryClass::Parabolic:
      fp.attracting = BoundaryPoint<Scalar>::from_homogeneous(detail::eigenvector(x, t / Scalar(2)));
      fp.repelling = fp.attracting;
      break;
    case IsometryClass::Elliptic: {
      // root of c z² + (d - a) z - b = 0 in the upper half-plane
      const Scalar s = sqrt(Scalar(4) - t * t);
      if (abs(x.c()) <= tol) throw DomainError("elliptic element with c = 0");
      std::complex<Scalar> z((x.a() - x.d()) / (2 * x.c()), s / (2 * x.c()));
      if (z.imag() < Scalar(0)) z = std::conj(z);
      fp.interior = z;
      break;
    }
  }
  return fp;
}

/// Disc-model form of an element: complex entries, acts on the unit disc.
template <typename Scalar>
class DiscMoebius {
 public:
  using Complex = std::complex<Scalar>;
  using Matrix = Eigen::Matrix<Complex, 2, 2>;

  explicit DiscMoebius(const Matrix& m) : m_(m) {}
  const Matrix& matrix() const { return m_; }
  Complex trace() const { return m_.trace(); }
  Complex apply(const Complex& w) const { return (m_(0, 0) * w + m_(0, 1)) / (m_(1, 0) * w + m_(1, 1)); }

 private:
  Matrix m_;
};

/// Conjugation by (1, -i; 1, i)/√(2i), the lift of z ↦ (z - i)/(z + i).
template <typename Scalar>
DiscMoebius<Scalar> to_disc_model(const Moebius<Scalar>& x) {
  using C = std::complex<Scalar>;
  const C i(0, 1);
  const C k = Scalar(1) / sqrt(C(0, 2));
  typename DiscMoebius<Scalar>::Matrix p, pinv, m;
  p << k, -i * k, k, i * k;
  // det p = 1, so the inverse is the adjugate
  pinv << p(1, 1), -p(0, 1), -p(1, 0), p(0, 0);
  m << C(x.a()), C(x.b()), C(x.c()), C(x.d());
  return DiscMoebius<Scalar>(p * m * pinv);
}

/// Inverse of to_disc_model; imaginary residue is dropped.
template <typename Scalar>
Moebius<Scalar> from_disc_model(const DiscMoebius<Scalar>& x) {
  using C = std::complex<Scalar>;
  const C i(0, 1);
  const C k = Scalar(1) / sqrt(C(0, 2));
  typename DiscMoebius<Scalar>::Matrix p, pinv;
  p << k, -i * k, k, i * k;
  pinv << p(1, 1), -p(0, 1), -p(1, 0), p(0, 0);
  const auto m = (pinv * x.matrix() * p).eval();
  return Moebius<Scalar>(m(0, 0).real(), m(0, 1).real(), m(1, 0).real(), m(1, 1).real());
}

/// True iff A and B share a fixed point within tol (boundary metric for
/// boundary points, Euclidean distance for interior ones).
template <typename Scalar>
bool is_elementary(const Moebius<Scalar>& a, const Moebius<Scalar>& b, Scalar tol) {
  const auto fa = fixed_points(a, tol);
  const auto fb = fixed_points(b, tol);
  const bool ea = fa.kind == IsometryClass::Elliptic, eb = fb.kind == IsometryClass::Elliptic;
  if (ea || eb) return ea && eb && abs(fa.interior - fb.interior) <= tol;
  auto near = [tol](const BoundaryPoint<Scalar>& p, const BoundaryPoint<Scalar>& q) { return p.distance(q) <= tol; };
  return near(fa.attracting, fb.attracting) || near(fa.attracting, fb.repelling) ||
         near(fa.repelling, fb.attracting) || near(fa.repelling, fb.repelling);
}

/// Largest entry-wise deviation between two lifts, modulo the lift sign.
template <typename Scalar>
Scalar projective_distance(const Moebius<Scalar>& x, const Moebius<Scalar>& y) {
  const Scalar plus = (x.matrix() - y.matrix()).cwiseAbs().maxCoeff();
  const Scalar minus = (x.matrix() + y.matrix()).cwiseAbs().maxCoeff();
  return std::min(plus, minus);
}

}  // namespace gm
