#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <type_traits>
#include <vector>

#include "treepot/potential.hpp"
#include "treepot/rng.hpp"

namespace treepot {

/// Mean of independent per-path samples with its standard error.
struct Estimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::size_t n_paths = 0;
  std::uint64_t seed = 0;
};

/// Sums in path order, so the result does not depend on how the samples were
/// produced.
inline Estimate estimate_mean(std::span<const double> samples, std::uint64_t seed) {
  Estimate e;
  e.n_paths = samples.size();
  e.seed = seed;
  if (samples.empty()) return e;
  double sum = 0.0;
  for (double s : samples) sum += s;
  e.estimate = sum / static_cast<double>(samples.size());
  if (samples.size() > 1) {
    double ss = 0.0;
    for (double s : samples) ss += (s - e.estimate) * (s - e.estimate);
    const double var = ss / static_cast<double>(samples.size() - 1);
    e.std_error = std::sqrt(var / static_cast<double>(samples.size()));
  }
  return e;
}

/// |estimate - target| <= slack + k * stderr.
inline bool within_sigmas(const Estimate& e, double target, double k = 3.0, double slack = 0.0) {
  return std::abs(e.estimate - target) <= slack + k * e.std_error;
}

/// Runs fn(stream, i) for i in [0, n) with stream i of `plan`, and returns
/// the results in index order. The parallel and serial paths produce
/// identical vectors.
template <class Fn>
auto map_streams(const RngPlan& plan, std::size_t n, Execution exec, Fn&& fn) {
  using Result = std::invoke_result_t<Fn&, RngStream&, std::size_t>;
  static_assert(!std::is_same_v<Result, bool>, "std::vector<bool> is not safe for concurrent writes");
  std::vector<Result> out(n);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) {
      RngStream rng = plan.stream(i);
      out[i] = fn(rng, i);
    }
    return out;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      RngStream rng = plan.stream(i);
      out[i] = fn(rng, i);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace treepot
