#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gyration/embedding.hpp"

namespace gyration {

/// Serial is the reference path; parallel splits the same work over OpenMP
/// threads. Both produce bit-identical results for every kernel below.
enum class Execution { serial, parallel };

/// (X', W) flattened for the inner loops.
struct PermutationProblem {
  std::size_t dim = 0;
  int group_count = 0;
  int n = 0;
  std::size_t vertex_count = 0;
  std::vector<double> x_prime;  // v' * dim
  std::vector<int> tails;       // 0-based structure tails, one per group
  std::vector<double> w;        // e' * n * dim, flat derived-edge order

  static PermutationProblem from(const StructureEmbedding& x_prime, const GroupedDisplacements& w);
};

/// Ranks handled per work item of the exact enumeration. The reduction tree
/// is: compensated sum within a chunk in rank order, then compensated sum of
/// chunk totals in chunk order. It does not depend on the thread count.
inline constexpr std::uint64_t kEnumerationChunk = 4096;

/// (1/#S) sum_sigma Rg^2(X^sigma). The caller is responsible for the cap check.
double exact_permutation_average(const PermutationProblem& problem, Execution execution = Execution::parallel);

/// Rg^2(X^sigma_s) for s = 0..samples-1, sigma_s drawn uniformly from
/// stream_rng(seed, s).
std::vector<double> sampled_permutation_rg(const PermutationProblem& problem, std::uint64_t samples,
                                           std::uint64_t seed, Execution execution = Execution::parallel);

}  // namespace gyration
