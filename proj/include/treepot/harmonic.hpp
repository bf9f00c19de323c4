#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "treepot/martin.hpp"
#include "treepot/subtree.hpp"
#include "treepot/walk.hpp"

namespace treepot {

using VertexFunction = std::function<double(const VertexId&)>;

/// A harmonic function in one of two evaluable forms: a finite Martin
/// combination c + sum_i w_i K_{theta_i}, or the solution of a Dirichlet
/// problem on a ball (defined only inside that ball).
class HarmonicFunction {
 public:
  enum class Kind { martin, ball_dirichlet };

  struct Term {
    double weight = 1.0;
    MartinKernel kernel;
  };

  static HarmonicFunction constant(double value);
  /// Evaluation is limited to the depth where every kernel's edge brackets
  /// are narrower than `width_tol`.
  static HarmonicFunction martin(std::vector<Term> terms, double constant = 0.0, double width_tol = 1e-9);
  static HarmonicFunction ball_dirichlet(std::shared_ptr<const TreeModel> tree, std::size_t radius,
                                         const VertexFunction& boundary);

  double operator()(const VertexId& x) const;

  Kind kind() const noexcept { return kind_; }
  /// Deepest depth at which the function can be evaluated.
  std::size_t domain_depth() const noexcept { return domain_depth_; }
  double constant_term() const noexcept { return constant_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  /// Bound on |Delta u| inside the domain implied by the kernel bracket
  /// widths; zero for Dirichlet solutions up to rounding.
  double harmonicity_bound(const VertexId& x) const;

 private:
  Kind kind_ = Kind::martin;
  double constant_ = 0.0;
  std::vector<Term> terms_;
  std::size_t domain_depth_ = std::numeric_limits<std::size_t>::max();
  std::shared_ptr<const TreeModel> tree_;
  std::shared_ptr<const SubtreeIndex> ball_;
  std::vector<double> ball_values_;
};

/// Delta f(x) = sum_y p(x, y) f(y) - f(x).
double laplacian(const TreeModel& t, const VertexFunction& f, const VertexId& x);
/// Delta(f^2)(x), the energy density; nonnegative for harmonic f.
double laplacian_of_square(const TreeModel& t, const VertexFunction& f, const VertexId& x);

/// Partial sums S_k = sum_{j <= k} Delta(u^2)(gamma(j)), k = 0..depth.
std::vector<double> radial_energy(const TreeModel& t, const VertexFunction& u, const BoundaryRay& theta,
                                  std::size_t depth);
/// Partial sums over tube vertices with |y| <= k, k = 0..depth.
std::vector<double> nt_energy(const TreeModel& t, const VertexFunction& u, const BoundaryRay& theta, std::size_t c,
                              std::size_t depth);
/// S_n = sum_{k < n} Delta(u^2)(X_k), n = 0..N.
std::vector<double> stochastic_energy(const TreeModel& t, const VertexFunction& u, const WalkPath& path);
/// M_n = u^2(X_n) - S_n.
std::vector<double> martingale_track(const TreeModel& t, const VertexFunction& u, const WalkPath& path);
/// Running max of |u| over tube vertices with |y| <= k, k = 0..depth.
std::vector<double> nt_sup_profile(const TreeModel& t, const VertexFunction& u, const BoundaryRay& theta,
                                   std::size_t c, std::size_t depth);
double nt_sup(const TreeModel& t, const VertexFunction& u, const BoundaryRay& theta, std::size_t c,
              std::size_t depth);

/// Energy partial sums of one function along one ray (and optionally one path).
struct EnergyReport {
  std::size_t c = 0;
  std::size_t depth = 0;
  std::size_t horizon = 0;
  std::vector<double> radial;
  std::vector<double> nt;
  std::vector<double> sup;
  std::vector<double> stochastic;
  std::vector<double> martingale;
  bool radial_monotone = true;
  bool nt_monotone = true;
  bool stochastic_monotone = true;
};

EnergyReport energy_report(const TreeModel& t, const VertexFunction& u, const BoundaryRay& theta, std::size_t c,
                           std::size_t depth, const WalkPath* path = nullptr);

/// CSV columns depth_or_step, radial_sum, nt_sum_c, sup_c, martingale_value;
/// cells past the end of a series are left empty.
std::string energy_report_csv(const EnergyReport& report);

}  // namespace treepot
