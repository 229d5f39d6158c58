#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace entropykit::kernels {

/// Dense n x n boolean relation, one bit per pair, rows padded to whole words.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<std::size_t>(n) * words_, 0) {}

  int size() const noexcept { return n_; }
  int words() const noexcept { return words_; }

  bool get(int i, int j) const { return (row(i)[j >> 6] >> (j & 63)) & 1U; }
  void set(int i, int j, bool v = true) {
    std::uint64_t& w = row(i)[j >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (j & 63);
    w = v ? (w | bit) : (w & ~bit);
  }

  std::uint64_t* row(int i) { return bits_.data() + static_cast<std::size_t>(i) * words_; }
  const std::uint64_t* row(int i) const { return bits_.data() + static_cast<std::size_t>(i) * words_; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

enum class Mode { Serial, Parallel };

/// Mode used by the library when the caller does not choose one.
Mode default_mode();
void set_default_mode(Mode mode);

/// m(i,j) = pred(i,j) for all pairs. Exceptions thrown by pred are rethrown after the scan.
void fill(BitMatrix& m, const std::function<bool(int, int)>& pred, Mode mode = default_mode());

void make_reflexive(BitMatrix& m);

/// Warshall closure in place.
void transitive_closure(BitMatrix& m, Mode mode = default_mode());

/// Lexicographically first (i,j,k) with m(i,j), m(j,k) and not m(i,k).
std::optional<std::array<int, 3>> transitivity_violation(const BitMatrix& m, Mode mode = default_mode());

/// Lexicographically first (i,j) where the relations differ.
std::optional<std::pair<int, int>> first_disagreement(const BitMatrix& a, const BitMatrix& b,
                                                      Mode mode = default_mode());

/// First (i,j) with a(i,j) but not b(f[i], f[j]).
std::optional<std::pair<int, int>> monotone_scan(const BitMatrix& a, const BitMatrix& b, const std::vector<int>& f,
                                                 Mode mode = default_mode());

struct AdjunctionViolation {
  int a = 0;
  int b = 0;
  /// True when F(a) <= b holds but a <= G(b) does not.
  bool forward = true;
};

/// First (a,b) in row-major order where F(a) <= b and a <= G(b) disagree.
std::optional<AdjunctionViolation> adjunction_scan(const BitMatrix& source, const BitMatrix& target,
                                                   const std::vector<int>& f, const std::vector<int>& g,
                                                   Mode mode = default_mode());

/// Values of `fn` at every index, computed independently per index.
std::vector<double> evaluate_samples(int count, const std::function<double(int)>& fn, Mode mode = default_mode());

}  // namespace entropykit::kernels
