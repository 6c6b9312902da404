#pragma once

// JSON documents for the command-line tool.

#include <string>

#include <nlohmann/json.hpp>

#include "gm/algorithm.hpp"

namespace gm::io {

using nlohmann::json;

enum class Model { Uhp, Disc };

struct RunConfig {
  Config core;
  Model model = Model::Uhp;  // used when the input does not name one
  bool trace = false;
};

/// Input that failed to parse or violates the input contract.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ParsedInput {
  Moebiusd a, b;      // normalized generators
  json normalized;  // half-plane form of the raw input, re-runnable as is
};

/// Reads {"model": "uhp"|"disc", "A": [[a,b],[c,d]], "B": ...}. Disc entries
/// may be numbers or [re, im] pairs.
ParsedInput parse_input(const json& doc, const RunConfig& cfg);

json verdict_document(const Verdictd& v, const json& normalized_input, const RunConfig& cfg);

/// Full pipeline for one input document; throws on any error.
json run_document(const json& doc, const RunConfig& cfg);

/// Error record used in batch output; `kind` is a stable machine token.
json error_document(const std::string& kind, const std::string& message);

/// Stable token for an exception raised while running.
std::string error_kind(const std::exception& e);

/// Exit code for the same.
int exit_code(const std::exception& e);

/// Bundled example: the pair generated by (1,2;0,1) and (1,0;2,1).
json demo_input();

}  // namespace gm::io
