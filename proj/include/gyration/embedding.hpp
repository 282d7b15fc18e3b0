#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "gyration/graph.hpp"
#include "gyration/permutation.hpp"
#include "gyration/points.hpp"

namespace gyration {

/// Positions x'_1..x'_v' of the structure graph G'.
class StructureEmbedding {
 public:
  /// Throws DomainError when the position count differs from v'.
  StructureEmbedding(DirectedMultigraph graph, Points positions);

  const DirectedMultigraph& graph() const noexcept { return graph_; }
  const Points& positions() const noexcept { return positions_; }
  std::size_t dim() const noexcept { return positions_.dim(); }
  std::span<const double> position(int j) const { return positions_[static_cast<std::size_t>(j - 1)]; }

  friend bool operator==(const StructureEmbedding&, const StructureEmbedding&) = default;

 private:
  DirectedMultigraph graph_;
  Points positions_;
};

/// Displacement vectors w_{i,j}, e' groups of n, stored in flat derived-edge order.
class GroupedDisplacements {
 public:
  /// Throws DomainError when the vector count differs from n * e'.
  GroupedDisplacements(SubdivisionGraph subdivision, Points vectors);

  const SubdivisionGraph& subdivision() const noexcept { return subdivision_; }
  int group_count() const noexcept { return subdivision_.structure_edge_count(); }
  int group_size() const noexcept { return subdivision_.subdivisions(); }
  std::size_t dim() const noexcept { return vectors_.dim(); }
  const Points& vectors() const noexcept { return vectors_; }

  std::span<const double> vector(int i, int j) const { return vectors_[subdivision_.flat(DerivedEdge{i, j})]; }
  /// Group i as its own point cloud W_i.
  Points group(int i) const;
  /// w'_i = sum_j w_{i,j}, summed in ascending j.
  Point group_sum(int i) const;

  friend bool operator==(const GroupedDisplacements&, const GroupedDisplacements&) = default;

 private:
  SubdivisionGraph subdivision_;
  Points vectors_;
};

/// Positions of every vertex of G in flat order (junctions first), so the
/// junction block is the compatible structure embedding.
class FullEmbedding {
 public:
  /// Throws DomainError when the position count differs from v.
  FullEmbedding(SubdivisionGraph subdivision, Points positions);

  const SubdivisionGraph& subdivision() const noexcept { return subdivision_; }
  const Points& positions() const noexcept { return positions_; }
  std::size_t dim() const noexcept { return positions_.dim(); }
  std::span<const double> position(DerivedVertex v) const { return positions_[subdivision_.flat(v)]; }

  StructureEmbedding structure_embedding() const;
  /// X_i: the n - 1 interior vertices of group i.
  Points group(int i) const;

  friend bool operator==(const FullEmbedding&, const FullEmbedding&) = default;

 private:
  SubdivisionGraph subdivision_;
  Points positions_;
};

GroupedDisplacements displacements(const FullEmbedding& x);
/// w'_i = x'_head(i) - x'_tail(i).
Points structure_displacements(const StructureEmbedding& x_prime);

struct ConsistencyReport {
  double worst_residual = 0.0;  // relative, see check_consistency
  int worst_group = 0;          // 1-based; 0 when there are no groups
};

/// Per group: |sum_j w_{i,j} - w'_i| / max(1, |w'_i|, sum_j |w_{i,j}|).
ConsistencyReport check_consistency(const StructureEmbedding& x_prime, const GroupedDisplacements& w);

/// Throws ConsistencyError (or DomainError on shape mismatch) unless every
/// group residual is within `tolerance`.
void require_consistent(const StructureEmbedding& x_prime, const GroupedDisplacements& w,
                        double tolerance = 1e-9);

/// X^sigma: junctions at X', interior x_{i,j} = x'_tail(i) + sum_{k<=j} w_{sigma(i,k)},
/// accumulated in ascending k.
FullEmbedding apply_permutation(const StructureEmbedding& x_prime, const GroupedDisplacements& w,
                                const GroupPermutation& sigma);

/// Same embedding through the indicator form x'_tail(i) + sum_k c(i,j,k,sigma) w_{i,k}.
/// Terms are added in ascending sigma_i^{-1}(k), which reproduces
/// apply_permutation bit for bit.
FullEmbedding apply_permutation_by_indicator(const StructureEmbedding& x_prime, const GroupedDisplacements& w,
                                             const GroupPermutation& sigma);

/// Unchecked kernel behind apply_permutation: writes all v positions into `out`
/// (size v * d). `tails` holds 0-based structure tail indices.
void write_permuted_positions(std::span<const double> x_prime, std::span<const int> tails,
                              std::span<const double> w, const GroupPermutation& sigma, std::size_t dim,
                              std::span<double> out);

/// Default ceiling on (n!)^e' for exhaustive enumeration.
inline constexpr double kDefaultEnumerationCap = 2'000'000.0;

/// Visits every element of S once, in enumeration order (mixed radix over parts,
/// part 1 most significant, each part in lexicographic one-line order).
/// Throws ResourceError carrying (n!)^e' when that exceeds `cap`.
std::uint64_t enumerate_group(const SubdivisionGraph& subdivision,
                              const std::function<void(const GroupPermutation&)>& visitor,
                              double cap = kDefaultEnumerationCap);

/// Uniform element of S.
GroupPermutation random_group_element(const SubdivisionGraph& subdivision, Rng& rng);

}  // namespace gyration
