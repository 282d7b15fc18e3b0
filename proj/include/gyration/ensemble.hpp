#pragma once

#include <cstdint>
#include <vector>

#include "gyration/embedding.hpp"
#include "gyration/kernels.hpp"
#include "gyration/random.hpp"

namespace gyration {

/// Gaussian phantom-network sampler for a fixed subdivision graph.
///
/// Raw displacements are i.i.d. centered Gaussians, one vector per derived
/// edge. They are projected onto the consistent assignments by solving
///   min_X  sum_edges |(x_head - x_tail) - w_raw|^2
/// with the minimum-norm (mean zero per connected component) solution. The
/// raw law and the consistent subspace are both S-invariant, so the sampled
/// embeddings are exchangeable within each edge group.
class PhantomSampler {
 public:
  /// Factorizes the graph Laplacian once. Throws NumericError if that fails.
  explicit PhantomSampler(SubdivisionGraph subdivision);

  const SubdivisionGraph& subdivision() const noexcept { return subdivision_; }

  /// Least-squares embedding for per-derived-edge vectors in flat edge order.
  FullEmbedding project(const Points& raw_displacements) const;

  /// One sample; step_variance is the per-coordinate variance of each raw vector.
  FullEmbedding sample(std::size_t dim, double step_variance, Rng& rng) const;

 private:
  SubdivisionGraph subdivision_;
  std::vector<double> projector_;  // v x e, row-major: positions = projector * raw
};

/// One draw from stream_rng(seed, 0).
FullEmbedding sample_phantom(const SubdivisionGraph& subdivision, std::size_t dim, std::uint64_t seed,
                             double step_variance);

struct EnsembleSample {
  double rg2_direct = 0.0;  // Rg^2(X)
  double rg2_closed = 0.0;  // closed-form S-average of the same sample's (X', W)
};

struct EnsembleStats {
  std::uint64_t samples = 0;
  double mean_direct = 0.0;
  double mean_closed = 0.0;
  double stderr_direct = 0.0;
  double stderr_diff = 0.0;  // standard error of rg2_direct - rg2_closed
  std::uint64_t seed = 0;
};

/// Sample s uses stream_rng(seed, s). Throws DomainError when samples < 10,
/// dim < 1 or step_variance < 0.
std::vector<EnsembleSample> sample_ensemble(const SubdivisionGraph& subdivision, std::size_t dim,
                                            std::uint64_t samples, std::uint64_t seed, double step_variance,
                                            Execution execution = Execution::parallel);

/// Accumulates in sample-index order.
EnsembleStats summarize_ensemble(const std::vector<EnsembleSample>& samples, std::uint64_t seed);

EnsembleStats estimate_expectation(const SubdivisionGraph& subdivision, std::size_t dim, std::uint64_t samples,
                                   std::uint64_t seed, double step_variance,
                                   Execution execution = Execution::parallel);

}  // namespace gyration
