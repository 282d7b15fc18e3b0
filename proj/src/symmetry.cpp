#include "gyration/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "gyration/errors.hpp"
#include "gyration/point_cloud.hpp"
#include "gyration/summation.hpp"

namespace gyration {

namespace {

double unit_rg(const Points& p) { return unit_radius_of_gyration(p.coords(), p.dim()); }

Point mean_of(const Points& p) { return center_of_mass(WeightedPointCloud(p)); }

Point sum_of(const Points& p) {
  Point s(p.dim(), 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    for (std::size_t c = 0; c < s.size(); ++c) s[c] += p[k][c];
  }
  return s;
}

int require_group(const Points& group) {
  if (group.size() < 2) {
    throw DomainError("a displacement group needs n >= 2 vectors, got " + std::to_string(group.size()));
  }
  return static_cast<int>(group.size());
}

double center_cloud_coefficient(double n) { return n * n * (n + 1.0) / (12.0 * (n - 1.0) * (n - 1.0)); }

void require_no_isolated_vertex(const DirectedMultigraph& g) {
  for (int v = 1; v <= g.vertex_count(); ++v) {
    if (g.degree(v) == 0) throw DomainError("structure vertex " + std::to_string(v) + " is isolated");
  }
}

bool has_isolated_vertex(const DirectedMultigraph& g) {
  return std::ranges::any_of(g.degrees(), [](int d) { return d == 0; });
}

}  // namespace

DecompositionReport prop1_decompose(const FullEmbedding& x) {
  const SubdivisionGraph& sub = x.subdivision();
  const double n = sub.subdivisions();
  const double v = sub.vertex_count();
  const double vp = sub.structure_vertex_count();
  const int ep = sub.structure_edge_count();

  const Points junctions = x.structure_embedding().positions();
  const Point mu_structure = mean_of(junctions);
  std::vector<Point> centers;
  double within = 0.0;
  for (int i = 1; i <= ep; ++i) {
    const Points xi = x.group(i);
    within += unit_rg(xi);
    centers.push_back(mean_of(xi));
  }
  double pairwise = 0.0;
  double versus = 0.0;
  for (int i = 0; i < ep; ++i) {
    for (int j = 0; j < ep; ++j) pairwise += squared_distance(centers[i], centers[j]);
    versus += squared_distance(centers[i], mu_structure);
  }

  DecompositionReport r;
  r.within_groups = (n - 1.0) / v * within;
  r.structure_term = vp / v * unit_rg(junctions);
  r.pairwise_centers = (n - 1.0) * (n - 1.0) / (2.0 * v * v) * pairwise;
  r.center_vs_structure = (n - 1.0) * vp / (v * v) * versus;
  r.total = r.within_groups + r.structure_term + r.pairwise_centers + r.center_vs_structure;
  return r;
}

double lemma5_group_average(const Points& group) {
  const double n = require_group(group);
  const double rg = unit_rg(group);
  const double closure = squared_norm(sum_of(group));
  return n * (n + 1.0) * (n - 2.0) / (12.0 * (n - 1.0) * (n - 1.0)) * rg + (n - 2.0) / (12.0 * n) * closure;
}

double center_cloud_rg(const Points& group) {
  const double n = require_group(group);
  return center_cloud_coefficient(n) * unit_rg(group);
}

double parent_cloud_rg(const Points& group) {
  const double n = require_group(group);
  const double rg = unit_rg(group);
  const double closure = squared_norm(sum_of(group));
  return n * (n + 1.0) / (6.0 * (n - 1.0)) * rg + (n - 2.0) / (12.0 * n) * closure;
}

Point midpoint_of_edge(const StructureEmbedding& x_prime, int i) {
  const Edge& e = x_prime.graph().edge(i);
  const auto h = x_prime.position(e.head);
  const auto t = x_prime.position(e.tail);
  Point m(x_prime.dim());
  for (std::size_t c = 0; c < m.size(); ++c) m[c] = 0.5 * (h[c] + t[c]);
  return m;
}

double cloud_center_consistency(const StructureEmbedding& x_prime, const GroupedDisplacements& w, double cap) {
  require_consistent(x_prime, w);
  const int n = w.group_size();
  const double orders = group_cardinality(1, n);
  if (orders > cap) {
    throw ResourceError("enumerating S_n needs n! = " + std::to_string(orders) + " orderings, above the cap",
                        orders);
  }
  const std::size_t dim = w.dim();
  double worst = 0.0;
  for (int i = 1; i <= w.group_count(); ++i) {
    const auto tail = x_prime.position(x_prime.graph().edge(i).tail);
    std::vector<CompensatedSum> center_sum(dim), pooled_sum(dim);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) order[static_cast<std::size_t>(k)] = k + 1;
    std::uint64_t count = 0;
    Point running(dim), center(dim);
    do {
      std::ranges::copy(tail, running.begin());
      std::fill(center.begin(), center.end(), 0.0);
      for (int j = 1; j < n; ++j) {
        const auto step = w.vector(i, order[static_cast<std::size_t>(j - 1)]);
        for (std::size_t c = 0; c < dim; ++c) {
          running[c] += step[c];
          center[c] += running[c];
          pooled_sum[c].add(running[c]);
        }
      }
      for (std::size_t c = 0; c < dim; ++c) center_sum[c].add(center[c] / (n - 1));
      ++count;
    } while (std::next_permutation(order.begin(), order.end()));

    const Point m = midpoint_of_edge(x_prime, i);
    Point mu_m(dim), mu_p(dim);
    for (std::size_t c = 0; c < dim; ++c) {
      mu_m[c] = center_sum[c].value() / static_cast<double>(count);
      mu_p[c] = pooled_sum[c].value() / (static_cast<double>(count) * (n - 1));
    }
    worst = std::max({worst, std::sqrt(squared_distance(mu_m, m)), std::sqrt(squared_distance(mu_p, m))});
  }
  return worst;
}

double prop6_pair_average(const Points& w_i, const Points& w_j, std::span<const double> m_i,
                          std::span<const double> m_j) {
  const double n = require_group(w_i);
  if (w_j.size() != w_i.size()) throw DomainError("both groups must have the same size n");
  if (m_i.size() != w_i.dim() || m_j.size() != w_i.dim() || w_j.dim() != w_i.dim()) {
    throw DomainError("dimension mismatch between groups and midpoints");
  }
  return squared_distance(m_i, m_j) + center_cloud_coefficient(n) * (unit_rg(w_i) + unit_rg(w_j));
}

namespace {

ClosedFormTerms closed_form_terms(const StructureEmbedding& x_prime, const GroupedDisplacements& w) {
  const SubdivisionGraph& sub = w.subdivision();
  const double n = sub.subdivisions();
  const double v = sub.vertex_count();
  const auto& g = x_prime.graph();

  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(g.vertex_count()));
  for (int d : g.degrees()) weights.push_back(d + 2.0 / (n - 1.0));

  ClosedFormTerms t;
  t.reweighted_rg = radius_of_gyration(WeightedPointCloud(x_prime.positions(), std::move(weights)));
  t.edge_norm_sq = squared_norm(w.vectors().coords());
  t.structure_norm_sq = squared_norm(structure_displacements(x_prime).coords());
  t.edge_term = (n + 1.0) * (2.0 * v - n) / (12.0 * v * v) * t.edge_norm_sq;
  t.structure_term = -(n + 1.0) * (2.0 * v - 1.0) / (12.0 * v * v) * t.structure_norm_sq;
  return t;
}

void attach_closed_form(SymmetrizationReport& r, const StructureEmbedding& x_prime, const GroupedDisplacements& w) {
  if (has_isolated_vertex(x_prime.graph())) return;
  r.terms = closed_form_terms(x_prime, w);
  r.closed_form = r.terms->sum();
}

}  // namespace

SymmetrizationReport theorem1_closed_form(const StructureEmbedding& x_prime, const GroupedDisplacements& w) {
  require_consistent(x_prime, w);
  require_no_isolated_vertex(x_prime.graph());
  SymmetrizationReport r;
  r.method = SymmetrizationMethod::closed;
  attach_closed_form(r, x_prime, w);
  r.value = *r.closed_form;
  return r;
}

SymmetrizationReport theorem1_exact_average(const StructureEmbedding& x_prime, const GroupedDisplacements& w,
                                            double cap, Execution execution) {
  require_consistent(x_prime, w);
  const double cardinality = group_cardinality(w.group_count(), w.group_size());
  if (cardinality > cap) {
    std::string msg = "exact average needs (n!)^e' = ";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", cardinality);
    msg += buf;
    std::snprintf(buf, sizeof buf, "%.17g", cap);
    msg += std::string(" embeddings, above the cap of ") + buf;
    throw ResourceError(msg, cardinality);
  }
  SymmetrizationReport r;
  r.method = SymmetrizationMethod::exact;
  r.value = exact_permutation_average(PermutationProblem::from(x_prime, w), execution);
  r.samples = static_cast<std::uint64_t>(cardinality);
  attach_closed_form(r, x_prime, w);
  return r;
}

SymmetrizationReport theorem1_mc_average(const StructureEmbedding& x_prime, const GroupedDisplacements& w,
                                         std::uint64_t samples, std::uint64_t seed, Execution execution) {
  if (samples < 2) throw DomainError("Monte Carlo needs at least 2 samples");
  require_consistent(x_prime, w);
  const std::vector<double> values =
      sampled_permutation_rg(PermutationProblem::from(x_prime, w), samples, seed, execution);
  RunningStats stats;
  for (double x : values) stats.add(x);

  SymmetrizationReport r;
  r.method = SymmetrizationMethod::monte_carlo;
  r.value = stats.mean();
  r.samples = samples;
  r.standard_error = stats.standard_error();
  attach_closed_form(r, x_prime, w);
  return r;
}

HockeyStickSums hockey_stick_sums(int n) {
  if (n < 1) throw DomainError("hockey-stick sums need n >= 1");
  Rational first(0), second(0);
  for (long long k = 1; k < n; ++k) {
    for (long long j = 1; j < n; ++j) {
      const long long gap = j > k ? j - k : k - j;
      first += Rational(gap, n);
      second += Rational((gap - 1) * gap, static_cast<long long>(n - 1) * n);
    }
  }
  return {first, second};
}

HockeyStickSums hockey_stick_closed_form(int n) {
  if (n < 1) throw DomainError("hockey-stick sums need n >= 1");
  const long long m = n;
  return {Rational((m - 1) * (m - 2), 3), Rational((m - 2) * (m - 3), 6)};
}

}  // namespace gyration
