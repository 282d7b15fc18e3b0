#include "gyration/point_cloud.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gyration/errors.hpp"

namespace gyration {

namespace {

double weight_sum(std::span<const double> w) {
  double s = 0.0;
  for (double x : w) s += x;
  return s;
}

Point weighted_mean(const Points& x, std::span<const double> w, double total) {
  Point mu(x.dim(), 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (w[k] == 0.0) continue;
    const auto p = x[k];
    for (std::size_t c = 0; c < mu.size(); ++c) mu[c] += w[k] * p[c];
  }
  for (double& c : mu) c /= total;
  return mu;
}

double rg_about_mean(const Points& x, std::span<const double> w, double total) {
  const Point mu = weighted_mean(x, w, total);
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (w[k] == 0.0) continue;
    s += w[k] * squared_distance(x[k], mu);
  }
  return s / total;
}

double rg_pairwise(const Points& x, std::span<const double> w, double total) {
  double s = 0.0;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < x.size(); ++b) s += w[a] * w[b] * squared_distance(x[a], x[b]);
  }
  return s / (2.0 * total * total);
}

// Second-moment form evaluated about the first point; Rg^2 is translation
// invariant and the shift keeps the subtraction well conditioned.
double rg_second_moment(const Points& x, std::span<const double> w, double total) {
  const std::size_t dim = x.dim();
  const auto origin = x[0];
  double second = 0.0;
  Point first(dim, 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (w[k] == 0.0) continue;
    const auto p = x[k];
    for (std::size_t c = 0; c < dim; ++c) {
      const double t = p[c] - origin[c];
      first[c] += w[k] * t;
      second += w[k] * t * t;
    }
  }
  double mean_sq = 0.0;
  for (double c : first) mean_sq += (c / total) * (c / total);
  const double rg = second / total - mean_sq;
  if (rg < 0.0) return rg_about_mean(x, w, total);
  return rg;
}

double weighted_rg(const Points& x, std::span<const double> w, double total, RgMethod method) {
  switch (method) {
    case RgMethod::pairwise:
      return rg_pairwise(x, w, total);
    case RgMethod::about_mean:
      return rg_about_mean(x, w, total);
    case RgMethod::second_moment:
      return rg_second_moment(x, w, total);
  }
  return rg_second_moment(x, w, total);
}

}  // namespace

WeightedPointCloud::WeightedPointCloud(Points positions, std::vector<double> weights)
    : positions_(std::move(positions)), weights_(std::move(weights)), total_weight_(0.0) {
  if (positions_.empty()) throw DomainError("point cloud must contain at least one point");
  if (weights_.size() != positions_.size()) {
    throw DomainError("point cloud has " + std::to_string(positions_.size()) + " positions but " +
                      std::to_string(weights_.size()) + " weights");
  }
  for (std::size_t k = 0; k < weights_.size(); ++k) {
    if (!(weights_[k] > 0.0) || !std::isfinite(weights_[k])) {
      throw DomainError("weight " + std::to_string(k + 1) + " is not a positive finite number");
    }
  }
  total_weight_ = weight_sum(weights_);
}

WeightedPointCloud::WeightedPointCloud(Points positions) : positions_(std::move(positions)), total_weight_(0.0) {
  if (positions_.empty()) throw DomainError("point cloud must contain at least one point");
  weights_.assign(positions_.size(), 1.0);
  total_weight_ = static_cast<double>(positions_.size());
}

Point center_of_mass(const WeightedPointCloud& cloud) {
  return weighted_mean(cloud.positions(), cloud.weights(), cloud.total_weight());
}

double radius_of_gyration(const WeightedPointCloud& cloud, RgMethod method) {
  return weighted_rg(cloud.positions(), cloud.weights(), cloud.total_weight(), method);
}

double unit_radius_of_gyration(std::span<const double> coords, std::size_t dim) {
  const std::size_t count = coords.size() / dim;
  // Small fixed buffer covers every dimension used in practice.
  double first_stack[8] = {};
  std::vector<double> first_heap;
  double* first = first_stack;
  if (dim > 8) {
    first_heap.assign(dim, 0.0);
    first = first_heap.data();
  }
  double second = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double t = coords[k * dim + c] - coords[c];
      first[c] += t;
      second += t * t;
    }
  }
  const double total = static_cast<double>(count);
  double mean_sq = 0.0;
  for (std::size_t c = 0; c < dim; ++c) mean_sq += (first[c] / total) * (first[c] / total);
  const double rg = second / total - mean_sq;
  if (rg >= 0.0) return rg;

  double about = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t c = 0; c < dim; ++c) {
      const double t = coords[k * dim + c] - (coords[c] + first[c] / total);
      about += t * t;
    }
  }
  return about / total;
}

RgDecomposition split_rg(const WeightedPointCloud& cloud, const std::vector<std::vector<double>>& weight_parts) {
  if (weight_parts.empty()) throw DomainError("split_rg needs at least one weight part");
  const std::size_t n = cloud.size();
  std::vector<double> sum(n, 0.0);
  for (std::size_t p = 0; p < weight_parts.size(); ++p) {
    const auto& part = weight_parts[p];
    if (part.size() != n) {
      throw DomainError("weight part " + std::to_string(p + 1) + " has " + std::to_string(part.size()) +
                        " entries, cloud has " + std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (part[k] < 0.0) throw DomainError("weight part " + std::to_string(p + 1) + " has a negative entry");
      sum[k] += part[k];
    }
    if (!(weight_sum(part) > 0.0)) {
      throw DomainError("weight part " + std::to_string(p + 1) + " has zero total weight");
    }
  }
  double worst = 0.0;
  int worst_index = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = cloud.weights()[k];
    const double r = std::fabs(sum[k] - w) / std::max(1.0, std::fabs(w));
    if (r > worst) {
      worst = r;
      worst_index = static_cast<int>(k) + 1;
    }
  }
  if (worst > 1e-12) {
    throw ConsistencyError("weight parts do not sum to the cloud weights (point " + std::to_string(worst_index) +
                               ", relative residual " + std::to_string(worst) + ")",
                           worst, worst_index);
  }

  const double total = cloud.total_weight();
  RgDecomposition out;
  std::vector<Point> centers;
  std::vector<double> part_totals;
  for (const auto& part : weight_parts) {
    const double t = weight_sum(part);
    part_totals.push_back(t);
    centers.push_back(weighted_mean(cloud.positions(), part, t));
    out.within_terms.push_back({t / total, weighted_rg(cloud.positions(), part, t, RgMethod::about_mean)});
  }
  double between = 0.0;
  for (std::size_t a = 0; a < centers.size(); ++a) {
    for (std::size_t b = 0; b < centers.size(); ++b) {
      between += part_totals[a] * part_totals[b] * squared_distance(centers[a], centers[b]);
    }
  }
  out.between_term = between / (2.0 * total * total);
  out.total = out.between_term;
  for (const auto& w : out.within_terms) out.total += w.weight_fraction * w.rg2;
  return out;
}

double degree_weighted_rg(const DirectedMultigraph& g, const Points& x_prime) {
  if (x_prime.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw DomainError("expected " + std::to_string(g.vertex_count()) + " structure positions, got " +
                      std::to_string(x_prime.size()));
  }
  std::vector<double> weights(g.degrees().begin(), g.degrees().end());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] == 0.0) throw DomainError("vertex " + std::to_string(k + 1) + " is isolated (degree 0)");
  }
  return radius_of_gyration(WeightedPointCloud(x_prime, std::move(weights)));
}

WeightedPointCloud midpoint_cloud(const DirectedMultigraph& g, const Points& x_prime) {
  if (x_prime.size() != static_cast<std::size_t>(g.vertex_count())) {
    throw DomainError("expected " + std::to_string(g.vertex_count()) + " structure positions, got " +
                      std::to_string(x_prime.size()));
  }
  if (g.edge_count() == 0) throw DomainError("midpoint cloud of a graph without edges is empty");
  Points mids(x_prime.dim(), static_cast<std::size_t>(g.edge_count()));
  for (int i = 1; i <= g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    const auto h = x_prime[static_cast<std::size_t>(e.head - 1)];
    const auto t = x_prime[static_cast<std::size_t>(e.tail - 1)];
    auto m = mids[static_cast<std::size_t>(i - 1)];
    for (std::size_t c = 0; c < m.size(); ++c) m[c] = 0.5 * (h[c] + t[c]);
  }
  return WeightedPointCloud(std::move(mids));
}

}  // namespace gyration
