#include "gm/io.hpp"

#include <cmath>

namespace gm::io {

namespace {

using Complex = std::complex<double>;

Complex read_entry(const json& e, Model model) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (model == Model::Disc && e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  throw InputError(model == Model::Disc ? "matrix entry must be a number or [re, im]"
                                        : "matrix entry must be a number");
}

Eigen::Matrix2cd read_matrix(const json& doc, const char* name, Model model) {
  if (!doc.contains(name)) throw InputError(std::string("missing generator ") + name);
  const json& m = doc.at(name);
  if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() ||
      m[1].size() != 2) {
    throw InputError(std::string("generator ") + name + " must be a 2x2 array of rows");
  }
  Eigen::Matrix2cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out(i, j) = read_entry(m[i][j], model);
      if (!std::isfinite(out(i, j).real()) || !std::isfinite(out(i, j).imag())) {
        throw InputError(std::string("non-finite entry in generator ") + name);
      }
    }
  }
  return out;
}

Matrix2<double> to_half_plane(const Eigen::Matrix2cd& m, Model model, const char* name) {
  if (model == Model::Uhp) return m.real();
  const DiscMoebius<double> x(m);
  const Moebiusd h = from_disc_model(x);
  const Eigen::Matrix2cd back = to_disc_model(h).matrix();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((back - m).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw InputError(std::string("generator ") + name + " is not a real Moebius map in disc form");
  }
  return h.matrix();
}

json matrix_json(const Matrix2<double>& m) { return json::array({{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}); }

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

json element_json(const Moebiusd& x, const Word& w, bool tracked, double tol) {
  json j;
  j["matrix"] = matrix_json(x.matrix());
  j["trace"] = x.trace();
  j["class"] = to_string(classify(x, tol));
  j["word"] = tracked ? json(w.str()) : json(nullptr);
  return j;
}

json step_json(const StepTrace<double>& t) {
  json j;
  j["pair_class"] = to_string(t.pair_class);
  j["trace_c"] = t.trace_c;
  j["trace_d"] = t.trace_d;
  j["length_c"] = optional_number(t.length_c);
  j["length_d"] = optional_number(t.length_d);
  j["n"] = t.n;
  j["formula_n"] = t.formula_n;
  j["trace_cd_inv"] = t.trace_cd_inv;
  j["commutator_trace"] = t.commutator_trace;
  j["jorgensen"] = t.jorgensen;
  j["boundary"] = t.boundary;
  j["truncated"] = t.truncated;
  j["terminal"] = t.terminal;
  return j;
}

}  // namespace

ParsedInput parse_input(const json& doc, const RunConfig& cfg) {
  if (!doc.is_object()) throw InputError("input must be a JSON object");
  Model model = cfg.model;
  if (doc.contains("model")) {
    const json& m = doc.at("model");
    if (m == "uhp") {
      model = Model::Uhp;
    } else if (m == "disc") {
      model = Model::Disc;
    } else {
      throw InputError("model must be \"uhp\" or \"disc\"");
    }
  }
  const Matrix2<double> a = to_half_plane(read_matrix(doc, "A", model), model, "A");
  const Matrix2<double> b = to_half_plane(read_matrix(doc, "B", model), model, "B");
  ParsedInput out;
  out.a = Moebiusd::generator(a, cfg.core.det_tolerance);
  out.b = Moebiusd::generator(b, cfg.core.det_tolerance);
  out.normalized = {{"model", "uhp"}, {"A", matrix_json(a)}, {"B", matrix_json(b)}};
  return out;
}

json verdict_document(const Verdictd& v, const json& normalized_input, const RunConfig& cfg) {
  const double tol = cfg.core.tolerance;
  json doc;
  doc["input"] = normalized_input;
  doc["config"] = {{"tolerance", cfg.core.tolerance},
                   {"ratio_tolerance", cfg.core.ratio_tolerance},
                   {"max_steps", cfg.core.max_steps}};
  doc["verdict"] = to_string(v.outcome);
  if (!v.reason.empty()) doc["reason"] = v.reason;
  doc["f_sequence"] = v.f_sequence;
  const auto& p = v.stopping_pair;
  doc["stopping_generators"] = {{"C", element_json(p.c, p.word_c, p.words_tracked, tol)},
                                {"D", element_json(p.d, p.word_d, p.words_tracked, tol)},
                                {"coherent", p.coherent}};
  if (v.shortest) {
    doc["shortest_lengths"] = v.shortest->lengths;
    json words = json::array();
    for (const auto& w : v.shortest->words) words.push_back(p.words_tracked ? json(w.str()) : json(nullptr));
    doc["shortest_words"] = words;
    doc["cusps"] = v.shortest->cusps;
  }
  if (cfg.trace) {
    json steps = json::array();
    for (const auto& t : v.steps) steps.push_back(step_json(t));
    doc["steps"] = steps;
  }
  return doc;
}

json run_document(const json& doc, const RunConfig& cfg) {
  const ParsedInput in = parse_input(doc, cfg);
  return verdict_document(run(in.a, in.b, cfg.core), in.normalized, cfg);
}

json error_document(const std::string& kind, const std::string& message) {
  return {{"error", {{"kind", kind}, {"message", message}}}};
}

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const json::exception*>(&e)) return "malformed-json";
  if (dynamic_cast<const InputError*>(&e)) return "bad-input";
  if (dynamic_cast<const DeterminantError*>(&e)) return "determinant";
  if (dynamic_cast<const ElementaryError*>(&e)) return "elementary";
  if (dynamic_cast<const MaxStepsError*>(&e)) return "max-steps";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  if (dynamic_cast<const std::invalid_argument*>(&e)) return "bad-input";
  return "internal";
}

int exit_code(const std::exception& e) {
  const std::string k = error_kind(e);
  if (k == "malformed-json" || k == "bad-input") return 2;
  if (k == "determinant" || k == "elementary" || k == "domain") return 3;
  if (k == "max-steps") return 4;
  return 5;
}

json demo_input() {
  return {{"model", "uhp"}, {"A", {{1.0, 2.0}, {0.0, 1.0}}}, {"B", {{1.0, 0.0}, {2.0, 1.0}}}};
}

}  // namespace gm::io
