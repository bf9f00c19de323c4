#include <doctest.h>

#include <cmath>
#include <memory>
#include <sstream>

#include "treepot/diagnostics.hpp"
#include "treepot/errors.hpp"
#include "treepot/harmonic.hpp"

using namespace treepot;

namespace {

struct Regular {
  std::shared_ptr<const TreeModel> tree = std::make_shared<const TreeModel>(TreeSpec{});
  std::shared_ptr<const PotentialTable> table = std::make_shared<const PotentialTable>(solve_potential(tree, 120));
};

const Regular& regular() {
  static const Regular r;
  return r;
}

// Closed-form Martin kernel of the all-zeros ray on the 3-regular tree.
double k_zero(const VertexId& y) {
  std::size_t m = 0;
  while (m < y.depth() && y[m] == 0) ++m;
  return std::ldexp(1.0, static_cast<int>(2 * m) - static_cast<int>(y.depth()));
}

}  // namespace

TEST_SUITE("harmonic") {
  TEST_CASE("laplacian examples") {
    const TreeModel& t = *regular().tree;
    const VertexFunction one = [](const VertexId&) { return 1.0; };
    const VertexFunction height = [](const VertexId& y) { return static_cast<double>(y.depth()); };
    CHECK(laplacian(t, one, VertexId{0, 2}) == 0.0);
    CHECK(laplacian(t, height, VertexId::root()) == doctest::Approx(1.0));
    CHECK(laplacian(t, height, VertexId{1, 1}) == doctest::Approx(1.0 / 3.0));
    CHECK(laplacian(t, k_zero, VertexId{0, 1, 0}) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(laplacian_of_square(t, k_zero, VertexId::root()) == doctest::Approx(0.5));
  }

  TEST_CASE("energy density equals the squared increments for harmonic u") {
    const TreeModel& t = *regular().tree;
    for (const auto& x : ball_enumerate(t, 4)) {
      double direct = 0.0;
      for (const auto& y : t.neighbors(x)) direct += t.p(x, y) * (k_zero(y) - k_zero(x)) * (k_zero(y) - k_zero(x));
      CHECK(laplacian_of_square(t, k_zero, x) == doctest::Approx(direct).epsilon(1e-13));
      CHECK(laplacian_of_square(t, k_zero, x) >= 0.0);
    }
  }

  TEST_CASE("evaluating harmonic functions") {
    const Regular& r = regular();
    const auto c = HarmonicFunction::constant(3.0);
    CHECK(c(VertexId{0, 1, 1, 1}) == 3.0);
    CHECK(c.harmonicity_bound(VertexId{2}) == 0.0);

    const auto u = HarmonicFunction::martin({{1.0, MartinKernel(r.table, BoundaryRay())}});
    CHECK(u.kind() == HarmonicFunction::Kind::martin);
    CHECK(u.domain_depth() == r.table->certified_depth(1e-9));
    CHECK(u(VertexId::root()) == doctest::Approx(1.0));
    CHECK(u(VertexId{0, 0, 0}) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK_THROWS_AS(u(VertexId(std::vector<std::uint32_t>(u.domain_depth() + 1, 0))), RangeError);

    const auto mix = HarmonicFunction::martin(
        {{0.5, MartinKernel(r.table, BoundaryRay())}, {0.25, MartinKernel(r.table, BoundaryRay({1}))}}, 2.0);
    CHECK(mix(VertexId::root()) == doctest::Approx(2.75));
    CHECK(mix(VertexId{1}) == doctest::Approx(2.0 + 0.25 + 0.5).epsilon(1e-12));
    for (const auto& x : ball_enumerate(*r.tree, 5)) {
      CHECK(std::abs(laplacian(*r.tree, std::cref(mix), x)) <= mix.harmonicity_bound(x) + 1e-14);
    }
  }

  TEST_CASE("Dirichlet solutions are harmonic inside and undefined outside") {
    TreeSpec s;
    s.kind = TreeKind::seeded_random;
    s.kernel = KernelRule::seeded_random;
    s.d_max = 4;
    s.epsilon = 0.15;
    s.eta = 0.1;
    s.seed = 3;
    const auto t = std::make_shared<const TreeModel>(s);
    const auto u = HarmonicFunction::ball_dirichlet(
        t, 6, [](const VertexId& y) { return y[0] == 0 ? 1.0 : -1.0; });
    CHECK(u.domain_depth() == 6);
    for (const auto& x : ball_enumerate(*t, 5)) {
      CHECK(std::abs(laplacian(*t, std::cref(u), x)) < 1e-12);
      CHECK(std::abs(u(x)) <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(u(VertexId{0, 0, 0, 0, 0, 0, 0}), RangeError);
  }

  TEST_CASE("radial, non-tangential and stochastic energies") {
    const TreeModel& t = *regular().tree;
    const BoundaryRay ray;
    const auto radial = radial_energy(t, k_zero, ray, 6);
    REQUIRE(radial.size() == 7);
    double sum = 0.0;
    for (std::size_t j = 0; j <= 6; ++j) {
      sum += std::ldexp(1.0, 2 * static_cast<int>(j)) / 2.0;
      CHECK(radial[j] == doctest::Approx(sum).epsilon(1e-13));
    }
    CHECK(nt_energy(t, k_zero, ray, 0, 6) == radial);

    // Tube sums over an exhaustive scan of the ball.
    const auto nt = nt_energy(t, k_zero, ray, 2, 5);
    std::vector<double> brute(6, 0.0);
    for (const auto& y : ball_enumerate(t, 5)) {
      if (ray_distance(ray, y) > 2) continue;
      for (std::size_t k = y.depth(); k <= 5; ++k) brute[k] += laplacian_of_square(t, k_zero, y);
    }
    for (std::size_t k = 0; k <= 5; ++k) CHECK(nt[k] == doctest::Approx(brute[k]).epsilon(1e-12));

    const auto sup = nt_sup_profile(t, k_zero, ray, 1, 5);
    for (std::size_t k = 0; k <= 5; ++k) CHECK(sup[k] == doctest::Approx(std::ldexp(1.0, static_cast<int>(k))));
    CHECK(nt_sup(t, k_zero, ray, 1, 5) == sup.back());

    WalkPath path;
    path.vertices = {VertexId::root(), VertexId{0}, VertexId{0, 1}, VertexId{0}};
    const auto s = stochastic_energy(t, k_zero, path);
    REQUIRE(s.size() == 4);
    CHECK(s[0] == 0.0);
    CHECK(s[1] == doctest::Approx(0.5));
    CHECK(s[2] == doctest::Approx(0.5 + 2.0));
    const auto m = martingale_track(t, k_zero, path);
    CHECK(m[0] == doctest::Approx(1.0));
    for (std::size_t n = 0; n < 4; ++n) {
      CHECK(m[n] == doctest::Approx(k_zero(path.vertices[n]) * k_zero(path.vertices[n]) - s[n]));
    }
  }

  TEST_CASE("energy report and its CSV") {
    const TreeModel& t = *regular().tree;
    WalkPath path;
    path.vertices = {VertexId::root(), VertexId{1}};
    const EnergyReport r = energy_report(t, k_zero, BoundaryRay(), 1, 3, &path);
    CHECK(r.radial.size() == 4);
    CHECK(r.stochastic.size() == 2);
    CHECK(r.radial_monotone);
    CHECK(r.nt_monotone);
    const std::string csv = energy_report_csv(r);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "depth_or_step,radial_sum,nt_sum_c,sup_c,martingale_value");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 4);
  }

  TEST_CASE("classifying two-scale summaries") {
    const Thresholds th;
    CHECK(classify(ScaleSummary{}, th).converging == Flag::indeterminate);

    ScaleSummary calm{true, 1e-4, 1.0, 1.01, 2.0, 2.0};
    const PropertyFlags a = classify(calm, th);
    CHECK(a.converging == Flag::positive);
    CHECK(a.bounded == Flag::positive);
    CHECK(a.energy_finite == Flag::positive);

    ScaleSummary wild{true, 5.0, 4.0, 64.0, 10.0, 900.0};
    const PropertyFlags b = classify(wild, th);
    CHECK(b.converging == Flag::negative);
    CHECK(b.bounded == Flag::negative);
    CHECK(b.energy_finite == Flag::negative);
    CHECK(to_string(Flag::indeterminate) == "indeterminate");
  }

  TEST_CASE("two-scale summaries of constants and Martin kernels") {
    const Regular& r = regular();
    const BoundaryRay ray;
    const auto c = HarmonicFunction::constant(1.0);
    const auto k = HarmonicFunction::martin({{1.0, MartinKernel(r.table, ray)}});
    for (std::size_t width : {0u, 1u}) {
      const PropertyFlags fc = classify(tube_summary(*r.tree, c, ray, width, 8), Thresholds{});
      CHECK(fc.converging == Flag::positive);
      CHECK(fc.bounded == Flag::positive);
      CHECK(fc.energy_finite == Flag::positive);
      const PropertyFlags fk = classify(tube_summary(*r.tree, k, ray, width, 8), Thresholds{});
      CHECK(fk.converging == Flag::negative);
      CHECK(fk.bounded == Flag::negative);
      CHECK(fk.energy_finite == Flag::negative);
    }
    CHECK_FALSE(tube_summary(*r.tree, k, ray, 0, k.domain_depth()).determinate);

    WalkPath shallow;
    shallow.vertices = {VertexId::root(), VertexId{0}};
    CHECK_FALSE(path_summary(*r.tree, k, shallow, 4).determinate);

    RayFlags flags;
    CHECK_FALSE(flags.determinate());
    flags.radial = flags.nt = flags.stochastic = PropertyFlags{Flag::negative, Flag::negative, Flag::negative};
    CHECK(flags.agree());
    flags.nt.bounded = Flag::positive;
    CHECK(flags.determinate());
    CHECK_FALSE(flags.agree());
  }
}
