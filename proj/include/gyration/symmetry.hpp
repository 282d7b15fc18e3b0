#pragma once

#include <cstdint>
#include <optional>

#include <boost/rational.hpp>

#include "gyration/embedding.hpp"
#include "gyration/kernels.hpp"

namespace gyration {

/// Rg^2(X) split along the vertex partition V_0, V_1, ..., V_e'.
struct DecompositionReport {
  double within_groups = 0.0;        // (n-1)/v * sum_i Rg^2(X_i)
  double structure_term = 0.0;       // v'/v * Rg^2(X')
  double pairwise_centers = 0.0;     // (n-1)^2/(2v^2) * sum_{i,j} |mu(X_i) - mu(X_j)|^2
  double center_vs_structure = 0.0;  // (n-1) v'/v^2 * sum_i |mu(X_i) - mu(X')|^2
  double total = 0.0;
};

DecompositionReport prop1_decompose(const FullEmbedding& x);

// Per-group averages over S_n. Each takes the n displacement vectors of one
// group as a point cloud and throws DomainError when n < 2.

/// Average of Rg^2(X_i^sigma) over sigma_i.
double lemma5_group_average(const Points& group);
/// Rg^2 of the center-of-mass cloud M_i.
double center_cloud_rg(const Points& group);
/// Rg^2 of the parent cloud P_i (all interior positions pooled over sigma_i).
double parent_cloud_rg(const Points& group);

/// m'_i = (x'_head(i) + x'_tail(i)) / 2.
Point midpoint_of_edge(const StructureEmbedding& x_prime, int i);

/// Enumerates S_n for every group and returns the largest distance between
/// m'_i and either enumeration mean mu(M_i) or mu(P_i). Throws ResourceError
/// when n! exceeds `cap`.
double cloud_center_consistency(const StructureEmbedding& x_prime, const GroupedDisplacements& w,
                                double cap = kDefaultEnumerationCap);

/// Average over S_n x S_n of |mu(X_i^sigma) - mu(X_j^sigma)|^2 for two
/// independent groups with edge midpoints m_i, m_j.
double prop6_pair_average(const Points& w_i, const Points& w_j, std::span<const double> m_i,
                          std::span<const double> m_j);

enum class SymmetrizationMethod { closed, exact, monte_carlo };

/// The three summands of the closed form, each with its coefficient applied.
struct ClosedFormTerms {
  double reweighted_rg = 0.0;      // Rg^2(X', deg + 2/(n-1))
  double edge_term = 0.0;          // +(n+1)(2v-n)/(12 v^2) |W|^2
  double structure_term = 0.0;     // -(n+1)(2v-1)/(12 v^2) |W'|^2
  double edge_norm_sq = 0.0;       // |W|^2
  double structure_norm_sq = 0.0;  // |W'|^2
  double sum() const noexcept { return reweighted_rg + edge_term + structure_term; }
};

struct SymmetrizationReport {
  SymmetrizationMethod method = SymmetrizationMethod::closed;
  double value = 0.0;                  // the method's estimate of the S-average
  std::optional<double> closed_form;   // absent only when G' has an isolated vertex
  std::optional<ClosedFormTerms> terms;
  std::uint64_t samples = 0;           // Monte Carlo only; #S for exact
  double standard_error = 0.0;         // Monte Carlo only
};

/// Throws ConsistencyError on inconsistent input and DomainError on an
/// isolated structure vertex.
SymmetrizationReport theorem1_closed_form(const StructureEmbedding& x_prime, const GroupedDisplacements& w);

/// Full enumeration of S. Throws ResourceError carrying (n!)^e' above `cap`.
SymmetrizationReport theorem1_exact_average(const StructureEmbedding& x_prime, const GroupedDisplacements& w,
                                            double cap = kDefaultEnumerationCap,
                                            Execution execution = Execution::parallel);

/// Sample mean and standard error of Rg^2(X^sigma) over i.i.d. uniform sigma.
/// Throws DomainError when samples < 2.
SymmetrizationReport theorem1_mc_average(const StructureEmbedding& x_prime, const GroupedDisplacements& w,
                                         std::uint64_t samples, std::uint64_t seed,
                                         Execution execution = Execution::parallel);

using Rational = boost::rational<long long>;

struct HockeyStickSums {
  Rational first;   // sum_{1<=k,j<n} |j-k| / n
  Rational second;  // sum_{1<=k,j<n} (|j-k|-1)|j-k| / ((n-1) n)
};

/// Both sums by explicit double loop. Throws DomainError when n < 1.
HockeyStickSums hockey_stick_sums(int n);
/// (n-1)(n-2)/3 and (n-2)(n-3)/6. These agree with the loops for n >= 2 only:
/// at n = 1 the loops are empty while (n-2)(n-3)/6 = 1/3.
HockeyStickSums hockey_stick_closed_form(int n);

}  // namespace gyration
