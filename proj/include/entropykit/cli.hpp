#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entropykit/document.hpp"

namespace entropykit::cli {

using entropykit::to_string;

enum class Outcome { Pass, Fail, Inconclusive };
const char* to_string(Outcome o);

enum class Format { Text, Structured };

/// "%.12g"
std::string format_double(double x);

/// One report entry: ordered key/value lines.
class Block {
 public:
  Block& add(std::string key, std::string value);
  Block& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }
  Block& add(std::string key, double value) { return add(std::move(key), format_double(value)); }
  Block& add(std::string key, long value) { return add(std::move(key), std::to_string(value)); }
  Block& add(std::string key, int value) { return add(std::move(key), std::to_string(value)); }
  Block& add(std::string key, bool value) { return add(std::move(key), std::string(value ? "true" : "false")); }

  const std::vector<std::pair<std::string, std::string>>& fields() const noexcept { return fields_; }
  std::optional<std::string> get(std::string_view key) const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

class Report {
 public:
  void add(Block block);
  /// Adds the block with an `outcome` line; the outcome counts toward the exit code.
  void add(Block block, Outcome outcome);
  /// Appends another report's blocks; its outcomes count only when `tally` is set.
  void append(const Report& other, bool tally);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const std::vector<Outcome>& outcomes() const noexcept { return outcomes_; }
  /// Fail beats Inconclusive beats Pass; Pass when there are no verdicts.
  Outcome overall() const;
  /// 0 all PASS, 1 some FAIL, 3 only PASS and INCONCLUSIVE.
  int exit_code() const;

  /// Structured: `key: value` lines, blocks separated by blank lines. Text: indented, aligned keys.
  void write(std::ostream& out, Format format) const;

 private:
  std::vector<Block> blocks_;
  std::vector<Outcome> outcomes_;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::vector<Rational>> lambda_grid;
  std::optional<int> eps_steps;
  Format format = Format::Text;
  std::optional<std::string> out;
};

/// Every check subcommand, in help order.
const std::vector<std::string>& check_names();

/// Runs one check on a loaded document. Throws DocumentError / Error on malformed input.
Report run_check(const std::string& check, const Document& doc, const RunConfig& config);

/// Corpus mode: each document lists its checks and expected outcomes under config.checks.
/// Inputs may be files or directories (every *.yaml inside, sorted). Exit code 1 on any mismatch.
Report run_corpus(const RunConfig& config);

/// Command-line entry point. Returns the process exit code (2 on usage or input errors).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entropykit::cli
