#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entropykit {

bool is_identifier(std::string_view name);
bool is_reserved_word(std::string_view name);

/// Ordered list of distinct coordinate names. The order is the basis order for forms.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<std::string> names);

  const std::vector<std::string>& names() const noexcept { return names_; }
  int dimension() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  std::optional<int> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  std::vector<std::string> names_;
};

std::string to_string(const Chart& chart);

}  // namespace entropykit
