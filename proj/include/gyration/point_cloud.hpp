#pragma once

#include <span>
#include <vector>

#include "gyration/graph.hpp"
#include "gyration/points.hpp"

namespace gyration {

/// Indexed positions in R^d with strictly positive weights.
class WeightedPointCloud {
 public:
  /// Throws DomainError for an empty cloud, a size mismatch, or a weight <= 0.
  WeightedPointCloud(Points positions, std::vector<double> weights);
  /// Unit weights.
  explicit WeightedPointCloud(Points positions);

  std::size_t dim() const noexcept { return positions_.dim(); }
  std::size_t size() const noexcept { return positions_.size(); }
  const Points& positions() const noexcept { return positions_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double total_weight() const noexcept { return total_weight_; }

 private:
  Points positions_;
  std::vector<double> weights_;
  double total_weight_;
};

enum class RgMethod {
  pairwise,       // half the weighted mean squared pairwise distance, O(N^2)
  about_mean,     // weighted mean squared distance to the center of mass
  second_moment,  // weighted second moment minus |mu|^2, single pass
};

Point center_of_mass(const WeightedPointCloud& cloud);
double radius_of_gyration(const WeightedPointCloud& cloud, RgMethod method = RgMethod::second_moment);

/// Unit-weight Rg^2 of a packed block of points, second-moment form. Used by
/// the enumeration kernels, which cannot afford to build a cloud per sample.
double unit_radius_of_gyration(std::span<const double> coords, std::size_t dim);

struct RgDecomposition {
  struct Within {
    double weight_fraction;  // |Omega_i| / |Omega|
    double rg2;              // Rg^2(X, Omega_i)
  };
  std::vector<Within> within_terms;
  double between_term = 0.0;
  double total = 0.0;
};

/// Splits Rg^2 of the cloud over weight functions that sum to its weights.
/// Entries of an individual part may be zero; each part's total must be positive.
/// Throws ConsistencyError when the parts do not add up (1e-12 relative per entry).
RgDecomposition split_rg(const WeightedPointCloud& cloud, const std::vector<std::vector<double>>& weight_parts);

/// Rg^2 of (X', deg). Throws DomainError on a size mismatch or an isolated vertex.
double degree_weighted_rg(const DirectedMultigraph& g, const Points& x_prime);

/// Edge midpoints of the structure embedding, unit weights.
WeightedPointCloud midpoint_cloud(const DirectedMultigraph& g, const Points& x_prime);

}  // namespace gyration
