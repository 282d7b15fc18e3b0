#include <doctest.h>

#include <array>
#include <cmath>
#include <numeric>
#include <random>

#include "gyration/errors.hpp"
#include "gyration/point_cloud.hpp"
#include "gyration/symmetry.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace gyration;
using test_support::to_graph;
using test_support::to_points;
using test_support::to_problem;

namespace {

Points line(std::vector<double> xs) { return Points(1, std::move(xs)); }

StructureEmbedding edge_at(double a, double b) { return {build_graph(2, {{1, 2}}), line({a, b})}; }

GroupedDisplacements edge_disp(int n, std::vector<double> w) {
  return {subdivide(build_graph(2, {{1, 2}}), n), line(std::move(w))};
}

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

oracle::Cloud random_group(std::mt19937_64& rng, int n, std::size_t d) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  oracle::Cloud g(static_cast<std::size_t>(n), oracle::Vec(d));
  for (auto& v : g) {
    for (double& c : v) c = u(rng);
  }
  return g;
}

// Group average re-derived through the +-1/0 indicator u(j,k,l,sigma):
// (1/(2(n-1)^2)) sum_{l,m} <w_l, w_m> sum_{j,k} P(u_l u_m = 1), the probability
// taken by enumerating S_n.
double alternate_form_average(const oracle::Cloud& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<long double> prob(static_cast<std::size_t>(n * n), 0);  // indexed l*n+m
  long double count = 0;
  do {
    std::vector<int> inv(static_cast<std::size_t>(n) + 1);
    for (int p = 1; p <= n; ++p) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(p - 1)])] = p;
    auto u = [&](int j, int k, int l) {
      const int s = inv[static_cast<std::size_t>(l)];
      if (j > k && k < s && s <= j) return 1;
      if (k > j && j < s && s <= k) return -1;
      return 0;
    };
    for (int j = 1; j < n; ++j) {
      for (int k = 1; k < n; ++k) {
        for (int l = 1; l <= n; ++l) {
          for (int m = 1; m <= n; ++m) prob[static_cast<std::size_t>((l - 1) * n + (m - 1))] += u(j, k, l) * u(j, k, m);
        }
      }
    }
    count += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  long double total = 0;
  for (int l = 0; l < n; ++l) {
    for (int m = 0; m < n; ++m) {
      long double dot = 0;
      for (std::size_t c = 0; c < w[0].size(); ++c) dot += static_cast<long double>(w[static_cast<std::size_t>(l)][c]) * w[static_cast<std::size_t>(m)][c];
      total += dot * prob[static_cast<std::size_t>(l * n + m)] / count;
    }
  }
  return static_cast<double>(total / (2.0L * (n - 1) * (n - 1)));
}

}  // namespace

TEST_CASE("per-group fixtures") {
  CHECK(lemma5_group_average(line({1.0, 3.0})) == 0.0);
  CHECK(lemma5_group_average(line({-2.0, 7.0})) == 0.0);
  CHECK(lemma5_group_average(line({1.0, 1.0, 1.0})) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(lemma5_group_average(line({0.0, 0.0, 3.0})) == doctest::Approx(0.75).epsilon(1e-15));

  CHECK(center_cloud_rg(line({2.0, 2.0, 2.0, 2.0})) == 0.0);
  CHECK(center_cloud_rg(line({1.0, 3.0})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(center_cloud_rg(line({0.0, 0.0, 3.0})) == doctest::Approx(1.5).epsilon(1e-15));

  CHECK(parent_cloud_rg(line({1.0, 3.0})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(parent_cloud_rg(line({0.0, 0.0, 3.0})) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK(parent_cloud_rg(Points(2, std::vector<double>(8, 0.0))) == 0.0);

  // Oracle cross-checks of the same fixtures.
  const auto e1 = oracle::enumerate_group({0.0}, {{0.0}, {0.0}, {3.0}});
  CHECK(e1.mean_rg == doctest::Approx(0.75));
  CHECK(e1.centers_rg == doctest::Approx(1.5));
  CHECK(e1.pooled_rg == doctest::Approx(2.25));
  CHECK(oracle::enumerate_group({0.0}, {{1.0}, {1.0}, {1.0}}).mean_rg == doctest::Approx(0.25));

  for (auto f : {lemma5_group_average, center_cloud_rg, parent_cloud_rg}) {
    CHECK_THROWS_AS(f(line({1.0})), DomainError);
  }
}

TEST_CASE("pair average of group centers") {
  const std::vector<double> zero{0.0}, two{2.0}, five{5.0};
  CHECK(prop6_pair_average(line({1.0, 1.0}), line({-3.0, -3.0}), zero, five) == doctest::Approx(25.0));
  CHECK(prop6_pair_average(line({1.0, 3.0}), line({2.0, 2.0}), zero, zero) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(prop6_pair_average(line({0.0, 0.0, 3.0}), line({0.0, 0.0, 3.0}), zero, two) == doctest::Approx(7.0).epsilon(1e-15));
  // Oracle: the midpoint of a group with tail t is t + w'/2.
  CHECK(oracle::pair_average({-2.0}, {{1.0}, {3.0}}, {-2.0}, {{2.0}, {2.0}}) == doctest::Approx(1.0));
  CHECK(oracle::pair_average({-1.5}, {{0.0}, {0.0}, {3.0}}, {0.5}, {{0.0}, {0.0}, {3.0}}) == doctest::Approx(7.0));
  CHECK_THROWS_AS(prop6_pair_average(line({1.0, 3.0}), line({1.0, 2.0, 3.0}), zero, zero), DomainError);
}

TEST_CASE("per-group closed forms match brute-force enumeration") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n = 2; n <= 5; ++n) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (int trial = 0; trial < 50; ++trial) {
        const auto w = random_group(rng, n, d);
        const auto wj = random_group(rng, n, d);
        oracle::Vec t(d), tj(d);
        for (std::size_t c = 0; c < d; ++c) {
          t[c] = u(rng);
          tj[c] = u(rng);
        }
        const auto e = oracle::enumerate_group(t, w);
        const auto pw = to_points(w);
        const double l5 = lemma5_group_average(pw);
        const double cm = center_cloud_rg(pw);
        const double pp = parent_cloud_rg(pw);
        CHECK(rel_err(l5, e.mean_rg) <= 1e-11);
        CHECK(rel_err(cm, e.centers_rg) <= 1e-11);
        CHECK(rel_err(pp, e.pooled_rg) <= 1e-11);
        CHECK(rel_err(pp, l5 + cm) <= 1e-12);

        // Midpoints t + w'/2.
        oracle::Vec mi(d), mj(d);
        for (std::size_t c = 0; c < d; ++c) {
          long double si = 0, sj = 0;
          for (int k = 0; k < n; ++k) {
            si += w[static_cast<std::size_t>(k)][c];
            sj += wj[static_cast<std::size_t>(k)][c];
          }
          mi[c] = static_cast<double>(t[c] + si / 2);
          mj[c] = static_cast<double>(tj[c] + sj / 2);
        }
        const double pa = prop6_pair_average(pw, to_points(wj), mi, mj);
        CHECK(rel_err(pa, oracle::pair_average(t, w, tj, wj)) <= 1e-11);

        if (n <= 4) CHECK(rel_err(l5, alternate_form_average(w)) <= 1e-11);
      }
    }
  }
}

TEST_CASE("hockey-stick sums") {
  CHECK(hockey_stick_sums(2).first == Rational(0));
  CHECK(hockey_stick_sums(2).second == Rational(0));
  CHECK(hockey_stick_sums(3).first == Rational(2, 3));
  CHECK(hockey_stick_sums(3).second == Rational(0));
  CHECK(hockey_stick_sums(5).first == Rational(4));
  CHECK(hockey_stick_sums(5).second == Rational(1));
  for (int n = 2; n <= 64; ++n) {
    CAPTURE(n);
    CHECK(hockey_stick_sums(n).first == hockey_stick_closed_form(n).first);
    CHECK(hockey_stick_sums(n).second == hockey_stick_closed_form(n).second);
  }
  // n = 1: empty loops, the second closed form does not vanish.
  CHECK(hockey_stick_sums(1).first == Rational(0));
  CHECK(hockey_stick_sums(1).second == Rational(0));
  CHECK(hockey_stick_closed_form(1).second == Rational(1, 3));
  CHECK_THROWS_AS(hockey_stick_sums(0), DomainError);
}

TEST_CASE("midpoints and cloud centers") {
  CHECK(midpoint_of_edge(edge_at(0.0, 4.0), 1)[0] == 2.0);
  const StructureEmbedding loop(build_graph(1, {{1, 1}}), Points(2, {1.5, -2.0}));
  CHECK(midpoint_of_edge(loop, 1) == Point{1.5, -2.0});
  CHECK(cloud_center_consistency(edge_at(0.0, 4.0), edge_disp(2, {1.0, 3.0})) <= 1e-15);

  const GroupedDisplacements loop_w(subdivide(build_graph(1, {{1, 1}}), 4), Points(2, {1, 0, 0, 1, -1, 0, 0, -1}));
  CHECK(cloud_center_consistency(loop, loop_w) <= 1e-15);

  std::mt19937_64 rng(31);
  for (const auto& [name, g] : oracle::graph_zoo()) {
    CAPTURE(name);
    for (int n = 2; n <= 5; ++n) {
      for (int trial = 0; trial < 10; ++trial) {
        const auto inst = oracle::random_instance(g, n, 3, rng);
        const auto p = to_problem(g, n, inst);
        CHECK(cloud_center_consistency(p.x_prime, p.w) <= 1e-12 * 4);
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
          const auto e = oracle::enumerate_group(inst.x_prime[static_cast<std::size_t>(g.edges[i].first - 1)], inst.w[i]);
          const auto m = midpoint_of_edge(p.x_prime, static_cast<int>(i) + 1);
          for (std::size_t c = 0; c < 3; ++c) {
            CHECK(std::fabs(e.centers_mean[c] - m[c]) <= 1e-12 * 4);
            CHECK(std::fabs(e.pooled_mean[c] - m[c]) <= 1e-12 * 4);
          }
        }
      }
    }
  }
  CHECK_THROWS_AS(cloud_center_consistency(edge_at(0.0, 4.0), edge_disp(5, {1, 1, 1, 0, 1}), 100.0), ResourceError);
}

TEST_CASE("four-term decomposition of a subdivided embedding") {
  const auto sub = subdivide(build_graph(2, {{1, 2}}), 2);
  const auto r = prop1_decompose(FullEmbedding(sub, line({0.0, 4.0, 1.0})));
  CHECK(r.total == doctest::Approx(26.0 / 9.0).epsilon(1e-14));
  CHECK(oracle::pairwise_rg({{0.0}, {1.0}, {4.0}}) == doctest::Approx(26.0 / 9.0));
  CHECK(r.within_groups + r.structure_term + r.pairwise_centers + r.center_vs_structure == doctest::Approx(r.total));

  const auto tri = subdivide(build_graph(3, {{1, 2}, {2, 3}, {3, 1}}), 4);
  const auto zero = prop1_decompose(FullEmbedding(tri, Points(3, std::vector<double>(36, 1.25))));
  CHECK(zero.within_groups == 0.0);
  CHECK(zero.structure_term == 0.0);
  CHECK(zero.pairwise_centers == 0.0);
  CHECK(zero.center_vs_structure == 0.0);
  CHECK(zero.total == 0.0);

  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  auto graphs = oracle::graph_zoo();
  graphs.push_back({"mixed", {3, {{1, 2}, {2, 2}, {2, 3}, {3, 1}, {3, 1}}}});
  for (const auto& [name, g] : graphs) {
    CAPTURE(name);
    for (int n = 2; n <= 6; ++n) {
      const auto s = subdivide(to_graph(g), n);
      for (int trial = 0; trial < 6; ++trial) {
        oracle::Cloud pts(static_cast<std::size_t>(s.vertex_count()), oracle::Vec(2));
        for (auto& p : pts) {
          for (double& c : p) c = u(rng);
        }
        const auto d = prop1_decompose(FullEmbedding(s, to_points(pts)));
        const double direct = oracle::pairwise_rg(pts);
        CHECK(rel_err(d.total, direct) <= 1e-11);
        CHECK(rel_err(d.within_groups + d.structure_term + d.pairwise_centers + d.center_vs_structure, direct) <= 1e-11);
      }
    }
  }
}

TEST_CASE("symmetrized Rg worked values") {
  const auto a = theorem1_closed_form(edge_at(0.0, 2.0), edge_disp(2, {1.0, 1.0}));
  CHECK(a.value == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(a.terms->sum() == doctest::Approx(a.value).epsilon(1e-15));
  const auto b = theorem1_closed_form(edge_at(0.0, 4.0), edge_disp(2, {1.0, 3.0}));
  CHECK(b.value == doctest::Approx(26.0 / 9.0).epsilon(1e-15));
  CHECK(b.terms->edge_norm_sq == 10.0);
  CHECK(b.terms->structure_norm_sq == 16.0);
  CHECK(oracle::symmetrized_rg({2, {{1, 2}}}, 2, {{0.0}, {4.0}}, {{{1.0}, {3.0}}}) == doctest::Approx(26.0 / 9.0));
  CHECK(oracle::symmetrized_rg({2, {{1, 2}}}, 2, {{0.0}, {2.0}}, {{{1.0}, {1.0}}}) == doctest::Approx(2.0 / 3.0));

  const auto zero = theorem1_closed_form(StructureEmbedding(build_graph(2, {{1, 2}, {1, 2}}), Points(2, 2)),
                                         GroupedDisplacements(subdivide(build_graph(2, {{1, 2}, {1, 2}}), 3), Points(2, 6)));
  CHECK(zero.value == 0.0);

  const auto ea = theorem1_exact_average(edge_at(0.0, 2.0), edge_disp(2, {1.0, 1.0}));
  CHECK(ea.value == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(ea.samples == 2);
  const auto eb = theorem1_exact_average(edge_at(0.0, 4.0), edge_disp(2, {1.0, 3.0}));
  CHECK(eb.value == doctest::Approx(26.0 / 9.0).epsilon(1e-15));
  REQUIRE(eb.closed_form.has_value());
  CHECK(*eb.closed_form == doctest::Approx(26.0 / 9.0).epsilon(1e-15));

  const auto mb = theorem1_mc_average(edge_at(0.0, 4.0), edge_disp(2, {1.0, 3.0}), 100, 7);
  CHECK(mb.value == doctest::Approx(26.0 / 9.0).epsilon(1e-14));
  CHECK(mb.standard_error <= 1e-14);
  CHECK(mb.samples == 100);

  // All-equal groups: every sigma gives the same embedding.
  const auto ms = theorem1_mc_average(edge_at(0.0, 6.0), edge_disp(3, {2.0, 2.0, 2.0}), 50, 1);
  CHECK(ms.standard_error == 0.0);
  const auto cs = theorem1_closed_form(edge_at(0.0, 6.0), edge_disp(3, {2.0, 2.0, 2.0}));
  CHECK(ms.value == doctest::Approx(cs.value).epsilon(1e-14));
  CHECK(ms.value == doctest::Approx(oracle::pairwise_rg({{0.0}, {2.0}, {4.0}, {6.0}})).epsilon(1e-14));
  const auto es = theorem1_exact_average(edge_at(0.0, 6.0), edge_disp(3, {2.0, 2.0, 2.0}));
  CHECK(es.value == doctest::Approx(ms.value).epsilon(1e-14));
}

TEST_CASE("symmetrization error paths") {
  CHECK_THROWS_AS(theorem1_closed_form(edge_at(0.0, 4.0), edge_disp(2, {1.0, 2.0})), ConsistencyError);
  const StructureEmbedding iso(build_graph(3, {{1, 2}}), line({0.0, 2.0, 9.0}));
  const GroupedDisplacements iso_w(subdivide(build_graph(3, {{1, 2}}), 2), line({1.0, 1.0}));
  CHECK_THROWS_AS(theorem1_closed_form(iso, iso_w), DomainError);
  // Exact still works but carries no closed form.
  const auto e = theorem1_exact_average(iso, iso_w);
  CHECK_FALSE(e.closed_form.has_value());

  try {
    theorem1_exact_average(edge_at(0.0, 4.0), edge_disp(5, {1, 1, 1, 0, 1}), 100.0);
    FAIL("expected ResourceError");
  } catch (const ResourceError& err) {
    CHECK(err.cardinality == 120.0);
  }
  CHECK_THROWS_AS(theorem1_mc_average(edge_at(0.0, 4.0), edge_disp(2, {1.0, 3.0}), 1, 7), DomainError);
}

TEST_CASE("closed form equals brute-force symmetrization over the graph zoo") {
  std::mt19937_64 rng(8080);
  for (const auto& [name, g] : oracle::graph_zoo()) {
    CAPTURE(name);
    for (int n = 2; n <= 4; ++n) {
      if (std::pow(std::tgamma(n + 1), g.edges.size()) > 14000) continue;
      for (std::size_t d = 1; d <= 3; ++d) {
        for (int trial = 0; trial < 3; ++trial) {
          const auto inst = oracle::random_instance(g, n, d, rng);
          const auto p = to_problem(g, n, inst);
          const double closed = theorem1_closed_form(p.x_prime, p.w).value;
          const double oracle_value = oracle::symmetrized_rg(g, n, inst.x_prime, inst.w);
          CHECK(rel_err(closed, oracle_value) <= 1e-10);
          const auto exact = theorem1_exact_average(p.x_prime, p.w);
          CHECK(rel_err(exact.value, oracle_value) <= 1e-10);
          CHECK(exact.samples == static_cast<std::uint64_t>(std::llround(std::pow(std::tgamma(n + 1), g.edges.size()))));
        }
      }
    }
  }
}

TEST_CASE("single-edge specialization") {
  std::mt19937_64 rng(64);
  const oracle::Graph g{2, {{1, 2}}};
  for (int n = 2; n <= 8; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto inst = oracle::random_instance(g, n, 3, rng);
      const auto p = to_problem(g, n, inst);
      long double ww = 0, wp = oracle::dist2(inst.x_prime[0], inst.x_prime[1]);
      for (const auto& v : inst.w[0]) ww += oracle::dist2(v, oracle::Vec(3, 0.0));
      const double reduced = static_cast<double>((n + 2.0L) / (12.0L * (n + 1)) * (ww + wp));
      CHECK(rel_err(theorem1_closed_form(p.x_prime, p.w).value, reduced) <= 1e-12);
    }
  }
}

TEST_CASE("closed form is invariant under rigid motions") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& [name, g] : oracle::graph_zoo()) {
    CAPTURE(name);
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 2 + trial % 5;
      const auto inst = oracle::random_instance(g, n, 3, rng);
      // Random rotation via Gram-Schmidt on a random matrix.
      std::array<std::array<double, 3>, 3> q{};
      for (auto& row : q) {
        for (double& c : row) c = u(rng);
      }
      for (int r = 0; r < 3; ++r) {
        for (int s = 0; s < r; ++s) {
          double dot = 0;
          for (int c = 0; c < 3; ++c) dot += q[r][c] * q[s][c];
          for (int c = 0; c < 3; ++c) q[r][c] -= dot * q[s][c];
        }
        double norm = 0;
        for (int c = 0; c < 3; ++c) norm += q[r][c] * q[r][c];
        for (int c = 0; c < 3; ++c) q[r][c] /= std::sqrt(norm);
      }
      const oracle::Vec shift{u(rng) * 10, u(rng) * 10, u(rng) * 10};
      auto rotate = [&](const oracle::Vec& v) {
        oracle::Vec out(3, 0.0);
        for (int r = 0; r < 3; ++r) {
          for (int c = 0; c < 3; ++c) out[r] += q[r][c] * v[c];
        }
        return out;
      };
      oracle::Instance moved;
      for (const auto& x : inst.x_prime) moved.x_prime.push_back(oracle::add(rotate(x), shift));
      for (const auto& grp : inst.w) {
        oracle::Cloud wg;
        for (const auto& v : grp) wg.push_back(rotate(v));
        moved.w.push_back(wg);
      }
      // Rotated groups close up only to rounding, well inside the consistency tolerance.
      const auto a = to_problem(g, n, inst);
      const auto b = to_problem(g, n, moved);
      CHECK(rel_err(theorem1_closed_form(b.x_prime, b.w).value, theorem1_closed_form(a.x_prime, a.w).value) <= 1e-11);
    }
  }
}

TEST_CASE("exact and Monte Carlo kernels are deterministic across execution modes") {
  std::mt19937_64 rng(6);
  const oracle::Graph g{3, {{1, 2}, {2, 3}, {3, 1}}};
  const auto inst = oracle::random_instance(g, 4, 3, rng);
  const auto p = to_problem(g, 4, inst);
  const auto s = theorem1_exact_average(p.x_prime, p.w, kDefaultEnumerationCap, Execution::serial);
  const auto q = theorem1_exact_average(p.x_prime, p.w, kDefaultEnumerationCap, Execution::parallel);
  CHECK(s.value == q.value);
  const auto ms = theorem1_mc_average(p.x_prime, p.w, 5000, 11, Execution::serial);
  const auto mp = theorem1_mc_average(p.x_prime, p.w, 5000, 11, Execution::parallel);
  CHECK(ms.value == mp.value);
  CHECK(ms.standard_error == mp.standard_error);
  CHECK(std::fabs(ms.value - s.value) <= 4 * ms.standard_error);
  const auto other = theorem1_mc_average(p.x_prime, p.w, 5000, 12);
  CHECK(other.value != ms.value);
}
