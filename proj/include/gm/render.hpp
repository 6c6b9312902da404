#pragma once

// Schematic SVG of a generator pair in the disc model.

#include <complex>
#include <string>

#include "gm/algorithm.hpp"

namespace gm::render {

/// Circle through two boundary points meeting the unit circle at right
/// angles. `chord` is set when the ends are nearly antipodal; the geodesic
/// is then drawn as a segment and center/radius are meaningless.
struct ArcGeometry {
  std::complex<double> center;
  double radius = 0;
  bool chord = false;
};

ArcGeometry arc_geometry(std::complex<double> e1, std::complex<double> e2);

struct Options {
  int max_family = 64;  // cap on drawn L_{D^q}
  double size_px = 600;
};

struct Picture {
  std::string svg;
  long n = 0;       // step count the family was drawn up to
  int chords = 0;   // geodesics drawn as straight chords
};

/// Unit circle, axes of C and D (or the cusp of a parabolic D), the common
/// perpendicular L, L_C, and L_{D^q} for q = 1..n, with perpendicular feet.
/// Throws std::invalid_argument unless the pair is HH with disjoint axes or
/// HP.
Picture render_pair(const Moebiusd& a, const Moebiusd& b, const Config& cfg, const Options& opt = {});

}  // namespace gm::render
