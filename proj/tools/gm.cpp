// gm: command-line front end.
//
//   gm run [INPUT] [--seed-demo] [--svg PATH]
//   gm batch [INPUT.jsonl] [--parallelism N]
//   gm render INPUT --output PATH
//   gm oracle compare --samples N --seed S --class hh|hp
//   gm oracle words --max-len N [INPUT]
//
// INPUT is a file path, an inline JSON object, or "-" / absent for stdin.

#include <atomic>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "gm/agreement.hpp"
#include "gm/io.hpp"
#include "gm/render.hpp"

namespace {

using gm::io::json;

struct Shared {
  double tolerance = 1e-9;
  double ratio_tolerance = 1e-7;
  long max_steps = 10000;
  std::string model = "uhp";
  bool trace = false;

  gm::io::RunConfig config() const {
    gm::io::RunConfig cfg;
    cfg.core.tolerance = tolerance;
    cfg.core.ratio_tolerance = ratio_tolerance;
    cfg.core.max_steps = max_steps;
    cfg.model = model == "disc" ? gm::io::Model::Disc : gm::io::Model::Uhp;
    cfg.trace = trace;
    return cfg;
  }
};

void add_shared(CLI::App* sub, Shared& s) {
  sub->add_option("--tolerance", s.tolerance, "predicate tolerance")
      ->envname("GM_TOLERANCE")
      ->check(CLI::PositiveNumber);
  sub->add_option("--ratio-tolerance", s.ratio_tolerance, "integer-boundary width for length ratios")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-steps", s.max_steps, "step budget")->check(CLI::Range(1L, 1L << 40));
  sub->add_option("--model", s.model, "model of the input matrices")->check(CLI::IsMember({"uhp", "disc"}));
  sub->add_flag("--trace", s.trace, "include per-step telemetry");
}

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

std::string read_text(const std::string& source) {
  if (source.empty() || source == "-") return slurp(std::cin);
  const auto first = source.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && source[first] == '{') return source;
  std::ifstream f(source);
  if (!f) throw gm::io::InputError("cannot read " + source);
  return slurp(f);
}

json read_input(const std::string& source) { return json::parse(read_text(source)); }

int fail(const std::exception& e) {
  std::cout << gm::io::error_document(gm::io::error_kind(e), e.what()).dump() << "\n";
  std::cerr << "gm: " << gm::io::error_kind(e) << ": " << e.what() << "\n";
  return gm::io::exit_code(e);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw gm::io::InputError("cannot write " + path);
  f << text;
}

int cmd_run(const Shared& s, const std::string& input, bool demo, const std::string& svg) {
  try {
    const auto cfg = s.config();
    const json doc = demo ? gm::io::demo_input() : read_input(input);
    std::cout << gm::io::run_document(doc, cfg).dump(2) << "\n";
    if (!svg.empty()) {
      const auto in = gm::io::parse_input(doc, cfg);
      try {
        write_file(svg, gm::render::render_pair(in.a, in.b, cfg.core).svg);
      } catch (const std::invalid_argument& e) {
        // the verdict stands; only the picture is unavailable
        std::cerr << "gm: svg skipped: " << e.what() << "\n";
      }
    }
    return 0;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

std::string batch_line(const std::string& line, const gm::io::RunConfig& cfg) {
  try {
    return gm::io::run_document(json::parse(line), cfg).dump();
  } catch (const std::exception& e) {
    return gm::io::error_document(gm::io::error_kind(e), e.what()).dump();
  }
}

int cmd_batch(const Shared& s, const std::string& input, unsigned parallelism) {
  std::vector<std::string> lines;
  try {
    std::istringstream in(read_text(input));
    for (std::string line; std::getline(in, line);) lines.push_back(line);
  } catch (const std::exception& e) {
    return fail(e);
  }
  const auto cfg = s.config();
  std::vector<std::string> out(lines.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < lines.size();) out[i] = batch_line(lines[i], cfg);
  };
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < std::max(1u, parallelism); ++t) pool.emplace_back(worker);
  pool.clear();
  for (const auto& o : out) std::cout << o << "\n";
  return 0;
}

int cmd_render(const Shared& s, const std::string& input, const std::string& output) {
  try {
    const auto cfg = s.config();
    const auto in = gm::io::parse_input(read_input(input), cfg);
    const auto pic = gm::render::render_pair(in.a, in.b, cfg.core);
    write_file(output, pic.svg);
    std::cerr << "gm: wrote " << output << " (n = " << pic.n << ", " << pic.chords << " chords)\n";
    return 0;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

int cmd_compare(const Shared& s, long samples, std::uint64_t seed, const std::string& cls) {
  try {
    const auto kind = cls == "hp" ? gm::oracle::InstanceKind::HP : gm::oracle::InstanceKind::HHDisjoint;
    const auto r = gm::compare_step_counts(kind, samples, seed, s.config().core);
    for (const auto& d : r.discrepancies) std::cerr << "discrepancy: " << d << "\n";
    std::cout << r.agree << "/" << r.samples << " agree (" << r.boundary << " boundary-flagged)\n";
    return r.agree == r.samples ? 0 : 1;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

int cmd_words(const Shared& s, const std::string& input, int max_len) {
  try {
    const auto cfg = s.config();
    const auto in = gm::io::parse_input(input.empty() ? gm::io::demo_input() : read_input(input), cfg);
    json out = json::array();
    for (const auto& e : gm::oracle::enumerate_words(in.a, in.b, max_len, cfg.core.tolerance)) {
      out.push_back({{"word", e.word.str()},
                     {"class", gm::to_string(e.kind)},
                     {"length", e.length ? json(*e.length) : json(nullptr)}});
    }
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const std::exception& e) {
    return fail(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discreteness of two-generator real Moebius groups"};
  app.require_subcommand(1);
  Shared shared;

  std::string input, svg, output;
  bool demo = false;
  auto* run = app.add_subcommand("run", "decide one pair");
  run->add_option("input", input, "file, inline JSON or - for stdin");
  run->add_flag("--seed-demo", demo, "run the bundled example instead of INPUT");
  run->add_option("--svg", svg, "also render the pair to this SVG file");
  add_shared(run, shared);

  unsigned parallelism = std::max(1u, std::thread::hardware_concurrency());
  auto* batch = app.add_subcommand("batch", "one verdict per JSONL line, order preserved");
  batch->add_option("input", input, "JSONL file or - for stdin");
  batch->add_option("--parallelism,-j", parallelism, "worker threads")->check(CLI::Range(1u, 1024u));
  add_shared(batch, shared);

  auto* render = app.add_subcommand("render", "SVG of the disc-model configuration");
  render->add_option("input", input, "file or inline JSON")->required();
  render->add_option("--output,-o", output, "SVG path")->required();
  add_shared(render, shared);

  auto* oracle = app.add_subcommand("oracle", "independent checks");
  oracle->require_subcommand(1);
  long samples = 0;
  std::uint64_t seed = 0;
  std::string cls = "hh";
  auto* compare = oracle->add_subcommand("compare", "closed-form step counts against the oracle");
  compare->add_option("--samples", samples)->required()->check(CLI::Range(1L, 100000000L));
  compare->add_option("--seed", seed);
  compare->add_option("--class", cls)->check(CLI::IsMember({"hh", "hp"}));
  add_shared(compare, shared);
  int max_len = 8;
  auto* words = oracle->add_subcommand("words", "shortest conjugacy classes up to a word length");
  words->add_option("input", input, "file or inline JSON; the bundled example if absent");
  words->add_option("--max-len", max_len)->check(CLI::Range(1, 12));
  add_shared(words, shared);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (*run) return cmd_run(shared, input, demo, svg);
  if (*batch) return cmd_batch(shared, input, parallelism);
  if (*render) return cmd_render(shared, input, output);
  if (*compare) return cmd_compare(shared, samples, seed, cls);
  return cmd_words(shared, input, max_len);
}
