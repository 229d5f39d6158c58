#include <algorithm>
#include <cstdio>
#include <ostream>

#include "entropykit/cli.hpp"

namespace entropykit::cli {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

Block& Block::add(std::string key, std::string value) {
  std::replace(value.begin(), value.end(), '\n', ' ');
  fields_.emplace_back(std::move(key), std::move(value));
  return *this;
}

std::optional<std::string> Block::get(std::string_view key) const {
  for (const auto& [k, v] : fields_)
    if (k == key) return v;
  return std::nullopt;
}

void Report::add(Block block) { blocks_.push_back(std::move(block)); }

void Report::add(Block block, Outcome outcome) {
  block.add("outcome", to_string(outcome));
  blocks_.push_back(std::move(block));
  outcomes_.push_back(outcome);
}

void Report::append(const Report& other, bool tally) {
  blocks_.insert(blocks_.end(), other.blocks_.begin(), other.blocks_.end());
  if (tally) outcomes_.insert(outcomes_.end(), other.outcomes_.begin(), other.outcomes_.end());
}

Outcome Report::overall() const {
  Outcome o = Outcome::Pass;
  for (Outcome x : outcomes_) {
    if (x == Outcome::Fail) return Outcome::Fail;
    if (x == Outcome::Inconclusive) o = Outcome::Inconclusive;
  }
  return o;
}

int Report::exit_code() const {
  switch (overall()) {
    case Outcome::Pass: return 0;
    case Outcome::Fail: return 1;
    case Outcome::Inconclusive: return 3;
  }
  return 1;
}

void Report::write(std::ostream& out, Format format) const {
  bool first = true;
  for (const auto& b : blocks_) {
    if (!first) out << '\n';
    first = false;
    if (format == Format::Structured) {
      for (const auto& [k, v] : b.fields()) out << k << ": " << v << '\n';
      continue;
    }
    std::size_t width = 0;
    for (const auto& [k, v] : b.fields()) width = std::max(width, k.size());
    auto check = b.get("check");
    auto doc = b.get("document");
    if (check) out << *check << (doc ? "  " + *doc : "") << '\n';
    for (const auto& [k, v] : b.fields()) {
      if (k == "check" || k == "document") continue;
      out << "  " << k << std::string(width - k.size() + 2, ' ') << v << '\n';
    }
  }
  std::size_t pass = 0, fail = 0, inconclusive = 0;
  for (Outcome o : outcomes_) (o == Outcome::Pass ? pass : o == Outcome::Fail ? fail : inconclusive) += 1;
  if (!blocks_.empty()) out << '\n';
  if (format == Format::Structured)
    out << "summary: " << pass << " PASS, " << fail << " FAIL, " << inconclusive << " INCONCLUSIVE\n"
        << "exit: " << exit_code() << '\n';
  else
    out << "summary  " << pass << " PASS, " << fail << " FAIL, " << inconclusive << " INCONCLUSIVE\n";
}

}  // namespace entropykit::cli
