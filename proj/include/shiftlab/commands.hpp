#pragma once

#include "shiftlab/fixtures.hpp"
#include "shiftlab/system_file.hpp"

#include <json.hpp>

#include <cstdint>
#include <exception>
#include <optional>
#include <string>

namespace shiftlab {

struct CommandOptions {
  std::string method = "closed";  // measure: closed, limit, periodic, shift
  double tol = 1e-9;
  long max_window = 1024;
  int n = 10;           // census
  int n_max = 10;       // verify
  int window_max = 12;  // verify
  int terms = 400;      // classify
  int max_size = 512;   // classify, perron and entropy on countable systems
  long length = 100000;  // sample
  std::uint64_t seed = 1;
  std::string word;
};

struct CommandOutcome {
  int exit_code = 0;
  nlohmann::json document;
};

// Runs one subcommand against a file path or "builtin:<name>". Errors propagate
// as exceptions; exit_code_for maps them.
CommandOutcome run_command(const std::string& command, const std::string& source, const CommandOptions& opt);
CommandOutcome run_command(const std::string& command, const ResolvedSystem& sys, const CommandOptions& opt,
                           const std::vector<Fact>& facts = {});

// 2 parse, 3 validation, 4 non-convergence, 5 oracle mismatch, 1 other.
int exit_code_for(const std::exception& e);

// Sorted keys, two-space indent, trailing newline.
std::string render(const nlohmann::json& doc);

}  // namespace shiftlab
