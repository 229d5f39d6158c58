#include "entropykit/kernels.hpp"

#include <atomic>
#include <climits>
#include <exception>
#include <mutex>

namespace entropykit::kernels {

namespace {

std::atomic<Mode> g_mode{Mode::Parallel};

/// Collects the first exception thrown inside a parallel region.
class ErrorSlot {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mu_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

using Linear = long long;
constexpr Linear kNone = LLONG_MAX;

}  // namespace

Mode default_mode() { return g_mode.load(); }
void set_default_mode(Mode mode) { g_mode.store(mode); }

void fill(BitMatrix& m, const std::function<bool(int, int)>& pred, Mode mode) {
  const int n = m.size();
  ErrorSlot errors;
  // Rows are written by one thread each, so whole-word updates never race.
#pragma omp parallel for schedule(dynamic) if (mode == Mode::Parallel)
  for (int i = 0; i < n; ++i)
    errors.run([&] {
      for (int j = 0; j < n; ++j) m.set(i, j, pred(i, j));
    });
  errors.rethrow();
}

void make_reflexive(BitMatrix& m) {
  for (int i = 0; i < m.size(); ++i) m.set(i, i);
}

void transitive_closure(BitMatrix& m, Mode mode) {
  const int n = m.size();
  const int w = m.words();
  for (int k = 0; k < n; ++k) {
    const std::vector<std::uint64_t> rk(m.row(k), m.row(k) + w);
#pragma omp parallel for schedule(static) if (mode == Mode::Parallel)
    for (int i = 0; i < n; ++i) {
      if (!m.get(i, k)) continue;
      std::uint64_t* ri = m.row(i);
      for (int x = 0; x < w; ++x) ri[x] |= rk[static_cast<std::size_t>(x)];
    }
  }
}

std::optional<std::array<int, 3>> transitivity_violation(const BitMatrix& m, Mode mode) {
  const Linear n = m.size();
  Linear best = kNone;
#pragma omp parallel for schedule(dynamic) reduction(min : best) if (mode == Mode::Parallel)
  for (int i = 0; i < m.size(); ++i) {
    for (int j = 0; j < m.size() && best == kNone; ++j) {
      if (!m.get(i, j)) continue;
      for (int k = 0; k < m.size(); ++k)
        if (m.get(j, k) && !m.get(i, k)) {
          best = std::min(best, (i * n + j) * n + k);
          break;
        }
    }
  }
  if (best == kNone) return std::nullopt;
  return std::array<int, 3>{static_cast<int>(best / (n * n)), static_cast<int>(best / n % n),
                            static_cast<int>(best % n)};
}

std::optional<std::pair<int, int>> first_disagreement(const BitMatrix& a, const BitMatrix& b, Mode mode) {
  const Linear n = a.size();
  Linear best = kNone;
#pragma omp parallel for schedule(static) reduction(min : best) if (mode == Mode::Parallel)
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (a.get(i, j) != b.get(i, j)) {
        best = std::min(best, i * n + j);
        break;
      }
  if (best == kNone) return std::nullopt;
  return std::pair{static_cast<int>(best / n), static_cast<int>(best % n)};
}

std::optional<std::pair<int, int>> monotone_scan(const BitMatrix& a, const BitMatrix& b, const std::vector<int>& f,
                                                 Mode mode) {
  const Linear n = a.size();
  Linear best = kNone;
#pragma omp parallel for schedule(static) reduction(min : best) if (mode == Mode::Parallel)
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (a.get(i, j) && !b.get(f[static_cast<std::size_t>(i)], f[static_cast<std::size_t>(j)])) {
        best = std::min(best, i * n + j);
        break;
      }
  if (best == kNone) return std::nullopt;
  return std::pair{static_cast<int>(best / n), static_cast<int>(best % n)};
}

std::optional<AdjunctionViolation> adjunction_scan(const BitMatrix& source, const BitMatrix& target,
                                                   const std::vector<int>& f, const std::vector<int>& g, Mode mode) {
  const Linear nb = target.size();
  Linear best = kNone;
#pragma omp parallel for schedule(static) reduction(min : best) if (mode == Mode::Parallel)
  for (int a = 0; a < source.size(); ++a)
    for (int b = 0; b < target.size(); ++b)
      if (target.get(f[static_cast<std::size_t>(a)], b) != source.get(a, g[static_cast<std::size_t>(b)])) {
        best = std::min(best, a * nb + b);
        break;
      }
  if (best == kNone) return std::nullopt;
  AdjunctionViolation v;
  v.a = static_cast<int>(best / nb);
  v.b = static_cast<int>(best % nb);
  v.forward = target.get(f[static_cast<std::size_t>(v.a)], v.b);
  return v;
}

std::vector<double> evaluate_samples(int count, const std::function<double(int)>& fn, Mode mode) {
  std::vector<double> out(static_cast<std::size_t>(count));
  ErrorSlot errors;
#pragma omp parallel for schedule(static) if (mode == Mode::Parallel)
  for (int i = 0; i < count; ++i) errors.run([&] { out[static_cast<std::size_t>(i)] = fn(i); });
  errors.rethrow();
  return out;
}

}  // namespace entropykit::kernels
