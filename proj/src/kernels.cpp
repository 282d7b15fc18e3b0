#include "gyration/kernels.hpp"

#include <algorithm>

#include "gyration/point_cloud.hpp"
#include "gyration/summation.hpp"

namespace gyration {

PermutationProblem PermutationProblem::from(const StructureEmbedding& x_prime, const GroupedDisplacements& w) {
  PermutationProblem p;
  p.dim = x_prime.dim();
  p.group_count = w.group_count();
  p.n = w.group_size();
  p.vertex_count = static_cast<std::size_t>(w.subdivision().vertex_count());
  p.x_prime.assign(x_prime.positions().coords().begin(), x_prime.positions().coords().end());
  for (const Edge& e : x_prime.graph().edges()) p.tails.push_back(e.tail - 1);
  p.w.assign(w.vectors().coords().begin(), w.vectors().coords().end());
  return p;
}

namespace {

std::uint64_t cardinality_u64(int group_count, int n) {
  std::uint64_t factorial = 1;
  for (int k = 2; k <= n; ++k) factorial *= static_cast<std::uint64_t>(k);
  std::uint64_t total = 1;
  for (int i = 0; i < group_count; ++i) total *= factorial;
  return total;
}

CompensatedSum chunk_sum(const PermutationProblem& p, std::uint64_t first, std::uint64_t last,
                         std::vector<double>& buffer) {
  GroupPermutation sigma = group_element_at(p.group_count, p.n, first);
  CompensatedSum sum;
  for (std::uint64_t rank = first; rank < last; ++rank) {
    write_permuted_positions(p.x_prime, p.tails, p.w, sigma, p.dim, buffer);
    sum.add(unit_radius_of_gyration(buffer, p.dim));
    sigma.advance();
  }
  return sum;
}

double sample_rg(const PermutationProblem& p, GroupPermutation& sigma, std::uint64_t seed, std::uint64_t s,
                 std::vector<double>& buffer) {
  Rng rng = stream_rng(seed, s);
  sigma.shuffle(rng);
  write_permuted_positions(p.x_prime, p.tails, p.w, sigma, p.dim, buffer);
  return unit_radius_of_gyration(buffer, p.dim);
}

}  // namespace

double exact_permutation_average(const PermutationProblem& p, Execution execution) {
  const std::uint64_t total = cardinality_u64(p.group_count, p.n);
  const std::uint64_t chunks = (total + kEnumerationChunk - 1) / kEnumerationChunk;
  std::vector<CompensatedSum> partial(chunks);

  if (execution == Execution::serial) {
    std::vector<double> buffer(p.vertex_count * p.dim);
    for (std::uint64_t c = 0; c < chunks; ++c) {
      partial[c] = chunk_sum(p, c * kEnumerationChunk, std::min(total, (c + 1) * kEnumerationChunk), buffer);
    }
  } else {
#pragma omp parallel
    {
      std::vector<double> buffer(p.vertex_count * p.dim);
#pragma omp for schedule(dynamic)
      for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
        const auto uc = static_cast<std::uint64_t>(c);
        partial[uc] = chunk_sum(p, uc * kEnumerationChunk, std::min(total, (uc + 1) * kEnumerationChunk), buffer);
      }
    }
  }

  CompensatedSum sum;
  for (const auto& s : partial) sum.add(s);
  return sum.value() / static_cast<double>(total);
}

std::vector<double> sampled_permutation_rg(const PermutationProblem& p, std::uint64_t samples, std::uint64_t seed,
                                           Execution execution) {
  std::vector<double> values(samples);
  if (execution == Execution::serial) {
    std::vector<double> buffer(p.vertex_count * p.dim);
    GroupPermutation sigma = GroupPermutation::identity(p.group_count, p.n);
    for (std::uint64_t s = 0; s < samples; ++s) values[s] = sample_rg(p, sigma, seed, s, buffer);
  } else {
#pragma omp parallel
    {
      std::vector<double> buffer(p.vertex_count * p.dim);
      GroupPermutation sigma = GroupPermutation::identity(p.group_count, p.n);
#pragma omp for schedule(static)
      for (std::int64_t s = 0; s < static_cast<std::int64_t>(samples); ++s) {
        values[static_cast<std::uint64_t>(s)] = sample_rg(p, sigma, seed, static_cast<std::uint64_t>(s), buffer);
      }
    }
  }
  return values;
}

}  // namespace gyration
