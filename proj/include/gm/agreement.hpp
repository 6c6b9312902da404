#pragma once

// Closed-form step counts against the oracle counts on seeded instances.

#include <sstream>
#include <string>
#include <vector>

#include "gm/algorithm.hpp"

namespace gm {

struct Agreement {
  long samples = 0;
  long agree = 0;
  long boundary = 0;  // ratio near an integer; the oracle decided n
  long draws = 0;     // instances generated, including skipped ones
  std::vector<std::string> discrepancies;
};

/// Draws instances of `kind` (HHDisjoint or HP) until `samples` of them
/// reach a division step, i.e. the stopping test does not settle the
/// oriented pair at once, and compares the two counts on each.
inline Agreement compare_step_counts(oracle::InstanceKind kind, long samples, std::uint64_t seed, const Config& cfg) {
  if (kind != oracle::InstanceKind::HHDisjoint && kind != oracle::InstanceKind::HP) {
    throw std::invalid_argument("step counts are compared on hyperbolic or hyperbolic-parabolic pairs only");
  }
  const double tol = cfg.tolerance;
  Agreement out;
  for (std::uint64_t i = 0; out.samples < samples; ++i) {
    if (out.draws > 1000 * (samples + 10)) throw DomainError("too few instances reach a division step");
    ++out.draws;
    oracle::InstanceSpec spec;
    spec.kind = kind;
    spec.seed = seed * 1000003 + i;
    const auto inst = oracle::random_instance<double>(spec, tol);
    OrderedPair<double> p;
    p.c = inst.a;
    p.d = inst.b;
    p = orient(p, cfg);
    const bool hh = kind == oracle::InstanceKind::HHDisjoint;
    if (pair_class(p.c, p.d, tol) != (hh ? PairClass::HHDisjoint : PairClass::HP)) continue;
    if (stopping_test(p, cfg)) continue;
    ++out.samples;
    std::ostringstream what;
    what << "seed " << spec.seed << ": ";
    try {
      const StepCount s = hh ? step_count_hh(p.c, p.d, cfg) : step_count_hp(p.c, p.d, cfg);
      const long o = oracle::linear_step_count(p.c, p.d, tol);
      out.boundary += s.boundary;
      if (s.n == o) {
        ++out.agree;
        continue;
      }
      what << "formula " << s.n << " (closed form " << s.formula << "), oracle " << o;
    } catch (const std::exception& e) {
      what << e.what();
    }
    out.discrepancies.push_back(what.str());
  }
  return out;
}

}  // namespace gm
