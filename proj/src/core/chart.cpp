#include "entropykit/chart.hpp"

#include <algorithm>
#include <cctype>

#include "entropykit/error.hpp"

namespace entropykit {

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  auto head = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(head) || head == '_')) return false;
  return std::all_of(name.begin() + 1, name.end(), [](char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || u == '_';
  });
}

bool is_reserved_word(std::string_view name) { return name == "ln" || name == "exp"; }

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!is_identifier(names_[i]) || is_reserved_word(names_[i]))
      throw InvalidArgumentError("invalid coordinate name '" + names_[i] + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[j] == names_[i]) throw InvalidArgumentError("duplicate coordinate '" + names_[i] + "'");
  }
}

std::optional<int> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::string to_string(const Chart& chart) {
  std::string out = "[";
  for (int i = 0; i < chart.dimension(); ++i) {
    if (i) out += ", ";
    out += chart.name(i);
  }
  return out + "]";
}

}  // namespace entropykit
