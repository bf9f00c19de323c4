#include <doctest.h>

#include <cmath>
#include <memory>

#include "treepot/errors.hpp"
#include "treepot/martin.hpp"
#include "treepot/montecarlo.hpp"
#include "treepot/potential.hpp"
#include "treepot/walk.hpp"

using namespace treepot;

namespace {

std::shared_ptr<const TreeModel> homogeneous(std::uint32_t d) {
  TreeSpec s;
  s.degree = d;
  s.epsilon = 1.0 / 3.0;
  s.eta = 1.0 / 6.0;
  if (d != 3) {
    s.epsilon = 0.1;
    s.eta = 0.1;
  }
  return std::make_shared<const TreeModel>(s);
}

std::shared_ptr<const TreeModel> seeded(std::uint64_t seed) {
  TreeSpec s;
  s.kind = TreeKind::seeded_random;
  s.kernel = KernelRule::seeded_random;
  s.d_min = 3;
  s.d_max = 4;
  s.epsilon = 0.15;
  s.eta = 0.1;
  s.seed = seed;
  return std::make_shared<const TreeModel>(s);
}

// Minimal root of f = p + (d - 1) p f^2 by monotone iteration from 0.
double scalar_fixed_point(std::uint32_t d) {
  const double p = 1.0 / d;
  double f = 0.0;
  for (int i = 0; i < 20000; ++i) f = p + (d - 1) * p * f * f;
  return f;
}

SolverOptions with(Execution e, Layout l = Layout::automatic) {
  SolverOptions o;
  o.execution = e;
  o.layout = l;
  return o;
}

}  // namespace

TEST_SUITE("potential") {
  TEST_CASE("homogeneous edges match the scalar fixed point") {
    for (std::uint32_t d : {3u, 4u, 6u}) {
      const auto t = homogeneous(d);
      const PotentialTable table = solve_potential(t, 60);
      const double f = scalar_fixed_point(d);
      CHECK(f == doctest::Approx(1.0 / (d - 1)).epsilon(1e-6));
      for (const auto& v : ball_enumerate(*t, 4)) {
        if (v.is_root()) continue;
        CHECK(table.up(v).contains(f, 1e-12));
        CHECK(table.down(v).contains(f, 1e-12));
        CHECK(table.up(v).width() < 1e-12);
      }
    }
  }

  TEST_CASE("brackets are ordered and bounded by rho") {
    const auto t = seeded(4);
    const PotentialTable table = solve_potential(t, 7);
    table.for_each_edge(7, [&](const VertexId&, const VertexId&, Bracket f) {
      CHECK(f.low >= 0.0);
      CHECK(f.low <= f.high);
      CHECK(f.high <= t->rho() + 1e-15);
    });
  }

  TEST_CASE("every sweep nests inside the previous brackets") {
    const auto t = seeded(9);
    auto index = std::make_shared<const SubtreeIndex>(SubtreeIndex::ball(*t, 6, 1u << 20));
    EdgeSolver solver(t, index, [](const VertexId&) { return true; }, false);
    PotentialTable prev = solver.snapshot();
    for (int s = 0; s < 20; ++s) {
      solver.sweep(Execution::serial);
      PotentialTable next = solver.snapshot();
      for (std::uint32_t i = 1; i < index->size(); ++i) {
        const PotentialTable::Cursor c{i, index->node(i).depth};
        CHECK(next.up(c).inside(prev.up(c)));
        CHECK(next.down(c).inside(prev.down(c)));
      }
      prev = next;
    }
  }

  TEST_CASE("radial and subtree layouts agree bitwise") {
    const auto t = homogeneous(3);
    const PotentialTable radial = solve_potential(t, 9, with(Execution::serial, Layout::radial));
    const PotentialTable subtree = solve_potential(t, 9, with(Execution::serial, Layout::subtree));
    CHECK(radial.layout() == Layout::radial);
    CHECK(subtree.layout() == Layout::subtree);
    std::vector<Bracket> a, b;
    radial.for_each_edge(9, [&](const VertexId&, const VertexId&, Bracket f) { a.push_back(f); });
    subtree.for_each_edge(9, [&](const VertexId&, const VertexId&, Bracket f) { b.push_back(f); });
    REQUIRE(a.size() == b.size());
    CHECK(a == b);
    CHECK(radial.stats().sweeps == subtree.stats().sweeps);
  }

  TEST_CASE("parallel sweeps reproduce the serial reference") {
    const auto t = seeded(17);
    const PotentialTable serial = solve_potential(t, 8, with(Execution::serial));
    const PotentialTable parallel = solve_potential(t, 8, with(Execution::parallel));
    std::vector<Bracket> a, b;
    serial.for_each_edge(8, [&](const VertexId&, const VertexId&, Bracket f) { a.push_back(f); });
    parallel.for_each_edge(8, [&](const VertexId&, const VertexId&, Bracket f) { b.push_back(f); });
    CHECK(a == b);
  }

  TEST_CASE("widths decay geometrically away from the sphere") {
    const auto t = homogeneous(3);
    const PotentialTable table = solve_potential(t, 30);
    const double rho = t->rho();
    for (std::size_t k = 1; k <= 30; ++k) {
      CHECK(table.width_at_depth(k) <= 2.0 * std::pow(rho, 30.0 - k) + 1e-15);
    }
    CHECK(table.certified_depth(1e-9) >= 1);
    CHECK(table.certified_depth(1e-6) < 30);
  }

  TEST_CASE("hitting probabilities") {
    const auto t = homogeneous(3);
    const PotentialTable table = solve_potential(t, 60);
    const VertexId x{0, 1, 1};
    CHECK(hitting(table, x, x) == Bracket::exact(1.0));
    const VertexId y{1, 0};
    CHECK(hitting(table, x, y).contains(std::pow(0.5, 5), 1e-15));
    const VertexId z{0};
    const Bracket direct = hitting(table, x, y);
    const Bracket split = hitting(table, x, z) * hitting(table, z, y);
    CHECK(direct.low == doctest::Approx(split.low).epsilon(1e-15));
    CHECK(direct.high == doctest::Approx(split.high).epsilon(1e-15));
    CHECK_THROWS_AS(hitting(table, x, VertexId(std::vector<std::uint32_t>(61, 0))), RangeError);
  }

  TEST_CASE("Monte Carlo hitting frequencies fall inside the brackets") {
    const auto t = seeded(23);
    const PotentialTable table = solve_potential(t, 9);
    const VertexId from{0};
    const VertexId to = VertexId::root();
    const Bracket f = hitting(table, from, to);
    const RngPlan plan{2024};
    const auto hits = map_streams(plan, 20000, Execution::parallel, [&](RngStream& rng, std::size_t) {
      VertexId x = from;
      double hit = 0.0;
      run_plain(*t, x, 400, rng, [&](std::size_t, const VertexId& v) {
        if (v == to) {
          hit = 1.0;
          return Control::absorb;
        }
        return Control::proceed;
      });
      return hit;
    });
    const Estimate e = estimate_mean(hits, plan.seed);
    CHECK(e.estimate >= f.low - 3 * e.std_error);
    CHECK(e.estimate <= f.high + 3 * e.std_error);
  }

  TEST_CASE("green function values and bounds") {
    const auto t = homogeneous(3);
    const PotentialTable table = solve_potential(t, 60);
    const VertexId y{2, 1, 0};
    CHECK(return_probability(table, y).contains(0.5, 1e-12));
    CHECK(green_diagonal(table, y).contains(2.0, 1e-12));
    CHECK(green(table, y, y.parent()).contains(1.0, 1e-12));

    const auto s = seeded(5);
    const PotentialTable st = solve_potential(s, 8);
    const double eps = s->spec().epsilon;
    double worst_u = 0.0;
    for (const auto& v : ball_enumerate(*s, 4)) worst_u = std::max(worst_u, return_probability(st, v).high);
    for (const auto& v : ball_enumerate(*s, 4)) {
      const Bracket g = green_diagonal(st, v);
      CHECK(g.low >= 1.0);
      CHECK(g.low >= 3 * eps * eps);
      CHECK(g.high <= 1.0 / (1.0 - worst_u) + 1e-12);
    }
  }

  TEST_CASE("tube-restricted green function") {
    const auto t = homogeneous(3);
    const BoundaryRay ray;
    const PotentialTable full = solve_potential(t, 10);
    SUBCASE("a tube covering the ball changes nothing") {
      const PotentialTable tube = green_tube(t, ray, 10, 10);
      for (const auto& y : ball_enumerate(*t, 6)) {
        const Bracket a = green(tube, VertexId::root(), y);
        const Bracket b = green(full, VertexId::root(), y);
        CHECK(std::abs(a.mid() - b.mid()) <= a.width() + b.width() + 1e-15);
      }
    }
    SUBCASE("restriction lowers the green function") {
      const PotentialTable deep = solve_potential(t, 80);
      const PotentialTable tube = green_tube(t, ray, 1, 80);
      for (const auto& y : tube_enumerate(*t, ray, 1, 10)) {
        CHECK(green(tube, VertexId::root(), y).high <= green(deep, VertexId::root(), y).high + 1e-15);
      }
      CHECK(tube.killing());
    }
  }

  TEST_CASE("Martin kernel closed form") {
    const auto t = homogeneous(3);
    auto table = std::make_shared<const PotentialTable>(solve_potential(t, 80));
    const BoundaryRay ray;
    const MartinKernel k(table, ray);
    CHECK(k.value(VertexId::root()) == Bracket::exact(1.0));
    for (std::size_t n = 0; n <= 10; ++n) CHECK(k(ray.vertex(n)) == doctest::Approx(std::ldexp(1.0, n)).epsilon(1e-12));
    // Off the ray: pi(y) = gamma(m), d(y, pi(y)) = j gives 2^(m - j).
    CHECK(k(VertexId{0, 0, 1}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(k(VertexId{0, 0, 1, 1, 0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(k(VertexId{2, 1}) == doctest::Approx(0.25).epsilon(1e-12));

    const auto tube = std::make_shared<const PotentialTable>(green_tube(t, ray, 1, 20));
    CHECK_THROWS(MartinKernel(tube, ray));
  }

  TEST_CASE("conditioned kernel") {
    const auto t = homogeneous(3);
    auto table = std::make_shared<const PotentialTable>(solve_potential(t, 80));
    const MartinKernel k(table, BoundaryRay());
    const auto law = conditioned_kernel(k, VertexId::root());
    REQUIRE(law.probs.size() == 3);
    CHECK(law.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(law.probs[1] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(law.probs[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    const auto s = seeded(41);
    auto st = std::make_shared<const PotentialTable>(solve_potential(s, 9));
    const BoundaryRay ray({1, 0, 1});
    CHECK_THROWS_AS(MartinKernel(st, BoundaryRay({1, 0, 7})), AddressError);
    const MartinKernel ks(st, ray);
    for (const auto& x : ball_enumerate(*s, 3)) {
      const auto l = conditioned_kernel(ks, x);
      double sum = 0.0;
      for (double p : l.probs) {
        CHECK(p >= 0.0);
        sum += p;
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(std::abs(l.defect) <= l.defect_bound + 1e-15);
      // The local edge formula gives the same law.
      const bool on_ray = ray.meet_depth(x) == x.depth();
      const auto row = conditioned_row(ks, x, *st->locate(x), on_ray);
      REQUIRE(row.has_value());
      for (std::size_t j = 0; j < l.probs.size(); ++j) CHECK(std::abs(row->row.p[j] - l.probs[j]) <= 2 * l.defect_bound + 1e-12);
    }
    // Drift toward theta on the ray.
    for (std::size_t n = 0; n < 3; ++n) {
      const VertexId x = ray.vertex(n);
      const VertexId next = ray.vertex(n + 1);
      const auto l = conditioned_kernel(ks, x);
      for (std::size_t j = 0; j < l.neighbors.size(); ++j) {
        if (l.neighbors[j] == next) CHECK(l.probs[j] > s->p(x, next));
      }
    }
  }

  TEST_CASE("tube lower bound product") {
    const auto t = homogeneous(3);
    auto table = std::make_shared<const PotentialTable>(solve_potential(t, 80));
    const MartinKernel k(table, BoundaryRay());
    const auto r = lower_bound_product(k, VertexId{0, 0, 1}, 1);
    CHECK(r.identity_holds);
    CHECK(r.tube_distance == 1);
    CHECK(r.direct.contains(0.5, 1e-12));
    CHECK(r.bound == doctest::Approx(1.0 / 27.0));
    CHECK(r.bound_holds);
    const auto on_ray = lower_bound_product(k, VertexId{0, 0, 0}, 0);
    CHECK(on_ray.via_projection.low == doctest::Approx(green_diagonal(*table, VertexId{0, 0, 0}).low));
    CHECK(on_ray.direct.contains(2.0, 1e-12));
  }
}
