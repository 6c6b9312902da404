#include "gm/render.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace gm::render {

namespace {

using Complex = std::complex<double>;

// Ends closer than this to antipodal are drawn as chords.
constexpr double kChordEps = 1e-9;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", x);
  std::string s(buf);
  if (s.find_first_not_of("-0.") == std::string::npos) s = "0.000000000";
  return s;
}

// SVG has y pointing down; flip once here so the picture reads like the disc.
std::string xy(Complex w) { return num(w.real()) + " " + num(-w.imag()); }

class Canvas {
 public:
  explicit Canvas(const Options& opt) : opt_(opt) {}

  void geodesic(const Geodesicd& g, const char* cls) {
    const Complex e1 = g.start().disc_point(), e2 = g.end().disc_point();
    const ArcGeometry arc = arc_geometry(e1, e2);
    if (arc.chord) {
      ++chords_;
      body_ << "  <path class=\"" << cls << " chord\" d=\"M " << xy(e1) << " L " << xy(e2) << "\"/>\n";
      return;
    }
    // the minor arc of the orthogonal circle; the sweep follows the turn
    // from e1 to e2 about the center, taken in flipped coordinates
    const Complex p1 = std::conj(e1 - arc.center), p2 = std::conj(e2 - arc.center);
    const double cross = p1.real() * p2.imag() - p1.imag() * p2.real();
    body_ << "  <path class=\"" << cls << "\" d=\"M " << xy(e1) << " A " << num(arc.radius) << " "
          << num(arc.radius) << " 0 0 " << (cross > 0 ? 1 : 0) << " " << xy(e2) << "\"/>\n";
  }

  void dot(Complex w, const char* cls) {
    body_ << "  <circle class=\"" << cls << "\" cx=\"" << num(w.real()) << "\" cy=\"" << num(-w.imag())
          << "\" r=\"0.012\"/>\n";
  }

  int chords() const { return chords_; }

  std::string finish() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(opt_.size_px)
        << "\" height=\"" << num(opt_.size_px) << "\" viewBox=\"-1.1 -1.1 2.2 2.2\">\n"
        << "  <style>path{fill:none;stroke-width:0.006}"
           ".axis-c{stroke:#b2182b}.axis-d{stroke:#2166ac}.perp{stroke:#1b7837}"
           ".mirror-c{stroke:#e08214}.mirror-d{stroke:#8073ac}.foot{fill:#000}.cusp{fill:#2166ac}"
           ".boundary{fill:none;stroke:#000;stroke-width:0.004}</style>\n"
        << "  <circle class=\"boundary\" cx=\"0.000000000\" cy=\"0.000000000\" r=\"1.000000000\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
  }

 private:
  Options opt_;
  std::ostringstream body_;
  int chords_ = 0;
};

// Crossing point of two geodesics that meet inside the disc.
Complex crossing(const Geodesicd& g, const Geodesicd& h) {
  Vector3<double> m = lorentz_cross(g.normal(), h.normal());
  m /= std::sqrt(-lorentz_dot(m, m));
  if (m(2) < 0) m = -m;
  return disc_from_hyperboloid(m);
}

}  // namespace

ArcGeometry arc_geometry(Complex e1, Complex e2) {
  ArcGeometry arc;
  const double cos_phi = (e1 * std::conj(e2)).real();
  if (1 + cos_phi < kChordEps) {
    arc.chord = true;
    return arc;
  }
  arc.center = (e1 + e2) / (1 + cos_phi);
  // tan(φ/2) written without the angle
  arc.radius = std::abs(e1 - e2) / (1 + cos_phi) * std::sqrt((1 + cos_phi) / 2);
  return arc;
}

Picture render_pair(const Moebiusd& a, const Moebiusd& b, const Config& cfg, const Options& opt) {
  const double tol = cfg.tolerance;
  detail::check_inputs(a, b, cfg);
  if (is_elementary(a, b, tol)) throw ElementaryError("elementary pair: generators share a fixed point");
  OrderedPair<double> p;
  p.c = a;
  p.d = b;
  const PairClass cls = pair_class(a, b, tol);
  if (cls != PairClass::HHDisjoint && cls != PairClass::HP) {
    throw std::invalid_argument(std::string("render needs a hyperbolic pair with disjoint axes or a "
                                            "hyperbolic-parabolic pair, got ") +
                                to_string(cls));
  }
  p = orient(p, cfg);

  Canvas canvas(opt);
  Picture pic;
  const Geodesicd ax_c = axis(p.c, tol);
  canvas.geodesic(ax_c, "axis-c");

  std::optional<Geodesicd> ax_d;
  Geodesicd l = ax_c;  // reassigned below
  if (cls == PairClass::HHDisjoint) {
    ax_d = axis(p.d, tol);
    canvas.geodesic(*ax_d, "axis-d");
    l = common_perpendicular(ax_c, *ax_d, tol);
    try {
      pic.n = step_count_hh(p.c, p.d, cfg).n;
    } catch (const DomainError&) {
      pic.n = 0;
    }
  } else {
    // L through the cusp, perpendicular to Ax_C: the cusp and its mirror image
    const auto cusp = fixed_points(p.d, tol).attracting;
    const auto image = BoundaryPointd::from_homogeneous(Reflection<double>(ax_c).matrix() * cusp.homogeneous());
    l = Geodesicd(cusp, image);
    canvas.dot(cusp.disc_point(), "cusp");
    try {
      pic.n = step_count_hp(p.c, p.d, cfg).n;
    } catch (const std::exception&) {
      pic.n = 0;
    }
  }

  canvas.geodesic(l, "perp");
  const Geodesicd l_c = reflection_factor(p.c, l, tol);
  canvas.geodesic(l_c, "mirror-c");
  canvas.dot(crossing(l, ax_c), "foot");
  canvas.dot(crossing(l_c, ax_c), "foot");
  if (ax_d) canvas.dot(crossing(l, *ax_d), "foot");

  const int shown = static_cast<int>(std::min<long>(pic.n, opt.max_family));
  if (shown > 0) {
    for (const auto& g : perpendicular_family(p.d, l, shown, tol)) {
      canvas.geodesic(g, "mirror-d");
      if (ax_d) canvas.dot(crossing(g, *ax_d), "foot");
    }
  }
  pic.chords = canvas.chords();
  pic.svg = canvas.finish();
  return pic;
}

}  // namespace gm::render
