#include <doctest.h>

#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "treepot/errors.hpp"
#include "treepot/montecarlo.hpp"
#include "treepot/walk.hpp"

using namespace treepot;

namespace {

TreeSpec seeded(std::uint64_t seed) {
  TreeSpec s;
  s.kind = TreeKind::seeded_random;
  s.kernel = KernelRule::seeded_random;
  s.d_min = 3;
  s.d_max = 4;
  s.epsilon = 0.15;
  s.eta = 0.1;
  s.seed = seed;
  return s;
}

double z_score(double freq, double p, std::size_t n) {
  return std::abs(freq - p) / std::sqrt(p * (1 - p) / static_cast<double>(n));
}

}  // namespace

TEST_SUITE("walk") {
  TEST_CASE("zero steps returns the start") {
    const TreeModel t(TreeSpec{});
    RngStream rng(1);
    const WalkPath path = simulate(t, VertexId{1, 1}, 0, rng);
    REQUIRE(path.vertices.size() == 1);
    CHECK(path.vertices[0] == VertexId{1, 1});
    CHECK(path.steps() == 0);
    CHECK(path.reason == Termination::horizon);
    CHECK_THROWS_AS(simulate(t, VertexId{3}, 5, rng), AddressError);
  }

  TEST_CASE("paths move along edges and replay from the same stream") {
    const TreeModel t(seeded(2));
    const RngPlan plan{77};
    RngStream a = plan.stream(5);
    RngStream b = plan.stream(5);
    const WalkPath p = simulate(t, VertexId::root(), 300, a);
    const WalkPath q = simulate(t, VertexId::root(), 300, b);
    CHECK(p.vertices == q.vertices);
    REQUIRE(p.vertices.size() == 301);
    for (std::size_t k = 0; k < 300; ++k) CHECK(is_neighbor(p.vertices[k], p.vertices[k + 1]));
  }

  TEST_CASE("one-step law from the root") {
    const TreeModel t(TreeSpec{});
    const std::size_t n = 30000;
    const auto first = map_streams(RngPlan{3}, n, Execution::parallel, [&](RngStream& rng, std::size_t) {
      return static_cast<int>(simulate(t, VertexId::root(), 1, rng).vertices[1].last());
    });
    std::array<std::size_t, 3> counts{};
    for (int c : first) ++counts[c];
    for (auto c : counts) CHECK(z_score(static_cast<double>(c) / n, 1.0 / 3.0, n) < 4.0);
  }

  TEST_CASE("the walk drifts away from the root") {
    const TreeModel t(seeded(4));
    const double eta = t.spec().eta;
    const std::size_t horizon = 400;
    const auto depth = map_streams(RngPlan{5}, 400, Execution::parallel, [&](RngStream& rng, std::size_t) {
      return static_cast<double>(simulate(t, VertexId::root(), horizon, rng).vertices.back().depth());
    });
    const Estimate e = estimate_mean(depth, 5);
    CHECK(e.estimate / horizon >= 2 * eta - 3 * e.std_error / horizon);
  }

  TEST_CASE("conditioned one-step law toward the ray") {
    const auto t = std::make_shared<const TreeModel>(TreeSpec{});
    auto table = std::make_shared<const PotentialTable>(solve_potential(t, 80));
    const MartinKernel k(table, BoundaryRay());
    const std::size_t n = 30000;
    const auto first = map_streams(RngPlan{8}, n, Execution::parallel, [&](RngStream& rng, std::size_t) {
      return static_cast<int>(simulate_conditioned(k, VertexId::root(), 1, rng).vertices[1].last());
    });
    std::array<std::size_t, 3> counts{};
    for (int c : first) ++counts[c];
    CHECK(z_score(static_cast<double>(counts[0]) / n, 2.0 / 3.0, n) < 4.0);
    CHECK(z_score(static_cast<double>(counts[1]) / n, 1.0 / 6.0, n) < 4.0);
  }

  TEST_CASE("conditioned paths stay near the ray") {
    // Off the ray the conditioned distance to it steps down w.p. 2/3 and up
    // w.p. 1/3; from the ray it steps off w.p. 1/6. Its stationary law puts
    // mass 1/96 beyond distance 5, and a start on the ray only lowers that.
    const auto t = std::make_shared<const TreeModel>(TreeSpec{});
    auto table = std::make_shared<const PotentialTable>(solve_potential(t, 120));
    const BoundaryRay ray({2, 1, 0, 1});
    const MartinKernel k(table, ray);
    const std::size_t n = 10000;
    const auto close = map_streams(RngPlan{9}, n, Execution::parallel, [&](RngStream& rng, std::size_t) {
      const WalkPath path = simulate_conditioned(k, VertexId::root(), 60, rng);
      return path.reason == Termination::horizon && ray_distance(ray, path.vertices.back()) <= 5 ? 1.0 : 0.0;
    });
    const Estimate e = estimate_mean(close, 9);
    CHECK(e.estimate >= 95.0 / 96.0 - 3 * e.std_error);
  }

  TEST_CASE("conditioned walks flag truncation at the certified depth") {
    const auto t = std::make_shared<const TreeModel>(TreeSpec{});
    auto table = std::make_shared<const PotentialTable>(solve_potential(t, 60));
    const MartinKernel k(table, BoundaryRay());
    RngStream rng(4);
    const WalkPath path = simulate_conditioned(k, VertexId::root(), 1000, rng);
    CHECK(path.reason == Termination::truncated);
    CHECK(table->certified_depth(1e-9) > 20);
    CHECK(path.vertices.back().depth() <= table->certified_depth(1e-9));
  }

  TEST_CASE("exit times") {
    WalkPath path;
    path.vertices = {VertexId::root(), VertexId{0}, VertexId{0, 1}, VertexId{0}};
    const auto shallow = [](const VertexId& v) { return v.depth() <= 1; };
    CHECK(exit_time(path, shallow) == std::optional<std::size_t>(2));
    CHECK(exit_time(path, [](const VertexId&) { return true; }) == std::nullopt);
    CHECK(exit_time(path, [](const VertexId& v) { return !v.is_root(); }) == std::optional<std::size_t>(0));
  }

  TEST_CASE("exact sphere exit law") {
    const TreeModel t(TreeSpec{});
    const auto one = sphere_exit_distribution(t, VertexId::root(), 1);
    REQUIRE(one.size() == 3);
    for (const auto& [v, p] : one) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

    const TreeModel s(seeded(6));
    const auto law = sphere_exit_distribution(s, VertexId{0}, 4);
    double total = 0.0;
    for (const auto& [v, p] : law) {
      CHECK(v.depth() == 4);
      CHECK(p >= 0.0);
      total += p;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS(sphere_exit_distribution(s, VertexId{0, 0, 0, 0}, 4));
  }

  TEST_CASE("sphere exit law matches simulation") {
    const TreeModel t(seeded(10));
    const std::size_t radius = 2;
    const auto law = sphere_exit_distribution(t, VertexId::root(), radius);
    const std::size_t n = 40000;
    const auto hit = map_streams(RngPlan{12}, n, Execution::parallel, [&](RngStream& rng, std::size_t) {
      return sample_boundary(t, VertexId::root(), radius, rng).prefix();
    });
    std::map<std::vector<std::uint32_t>, std::size_t> counts;
    for (const auto& w : hit) ++counts[w];
    for (const auto& [v, p] : law) {
      const std::vector<std::uint32_t> w(v.word().begin(), v.word().end());
      CHECK(z_score(static_cast<double>(counts[w]) / n, p, n) < 4.5);
    }
  }

  TEST_CASE("boundary sampling") {
    const TreeModel t(TreeSpec{});
    const std::size_t n = 30000;
    const auto first = map_streams(RngPlan{14}, n, Execution::parallel, [&](RngStream& rng, std::size_t) {
      return static_cast<int>(sample_boundary(t, VertexId::root(), 8, rng).index(0));
    });
    std::array<std::size_t, 3> counts{};
    for (int c : first) ++counts[c];
    for (auto c : counts) CHECK(z_score(static_cast<double>(c) / n, 1.0 / 3.0, n) < 4.0);

    RngStream rng(1);
    const BoundaryRay ray = sample_boundary(t, VertexId{1}, 8, rng);
    CHECK(ray.recorded_depth() == 8);
    RngStream short_rng(1);
    CHECK_THROWS_AS(sample_boundary(t, VertexId::root(), 50, short_rng, 10), HorizonError);
  }

  TEST_CASE("stream mapping is order independent and propagates failures") {
    const RngPlan plan{123};
    const auto fn = [](RngStream& rng, std::size_t i) { return rng.uniform() + static_cast<double>(i); };
    const auto serial = map_streams(plan, 5000, Execution::serial, fn);
    const auto parallel = map_streams(plan, 5000, Execution::parallel, fn);
    CHECK(serial == parallel);
    CHECK(plan.fork(1).seed != plan.fork(2).seed);
    CHECK(plan.stream_seed(0) != plan.fork(0).stream_seed(0));
    const auto boom = [](RngStream&, std::size_t i) -> double {
      if (i == 777) throw std::runtime_error("boom");
      return 0.0;
    };
    CHECK_THROWS_WITH(map_streams(plan, 2000, Execution::parallel, boom), "boom");
    CHECK_THROWS_WITH(map_streams(plan, 2000, Execution::serial, boom), "boom");
  }
}
