#include "gyration/ensemble.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "gyration/errors.hpp"
#include "gyration/point_cloud.hpp"
#include "gyration/summation.hpp"
#include "gyration/symmetry.hpp"

namespace gyration {

PhantomSampler::PhantomSampler(SubdivisionGraph subdivision) : subdivision_(std::move(subdivision)) {
  const auto v = static_cast<Eigen::Index>(subdivision_.vertex_count());
  const auto e = static_cast<Eigen::Index>(subdivision_.edge_count());

  Eigen::MatrixXd incidence = Eigen::MatrixXd::Zero(e, v);
  for (Eigen::Index f = 0; f < e; ++f) {
    const DerivedEdge edge = subdivision_.edge_at(static_cast<std::size_t>(f));
    incidence(f, static_cast<Eigen::Index>(subdivision_.flat(subdivision_.head(edge)))) += 1.0;
    incidence(f, static_cast<Eigen::Index>(subdivision_.flat(subdivision_.tail(edge)))) -= 1.0;
  }
  const Eigen::MatrixXd laplacian = incidence.transpose() * incidence;
  const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(laplacian);
  if (cod.info() != Eigen::Success) throw NumericError("Laplacian factorization failed");

  const Eigen::MatrixXd projector = cod.pseudoInverse() * incidence.transpose();
  if (!projector.allFinite()) throw NumericError("Laplacian pseudo-inverse is not finite");

  projector_.resize(static_cast<std::size_t>(v * e));
  for (Eigen::Index r = 0; r < v; ++r) {
    for (Eigen::Index c = 0; c < e; ++c) projector_[static_cast<std::size_t>(r * e + c)] = projector(r, c);
  }
}

FullEmbedding PhantomSampler::project(const Points& raw) const {
  const auto v = static_cast<std::size_t>(subdivision_.vertex_count());
  const auto e = static_cast<std::size_t>(subdivision_.edge_count());
  if (raw.size() != e) {
    throw DomainError("expected " + std::to_string(e) + " raw displacement vectors, got " +
                      std::to_string(raw.size()));
  }
  const std::size_t dim = raw.dim();
  Points x(dim, v);
  for (std::size_t r = 0; r < v; ++r) {
    auto out = x[r];
    const double* row = projector_.data() + r * e;
    for (std::size_t f = 0; f < e; ++f) {
      const auto w = raw[f];
      for (std::size_t c = 0; c < dim; ++c) out[c] += row[f] * w[c];
    }
  }
  return FullEmbedding(subdivision_, std::move(x));
}

FullEmbedding PhantomSampler::sample(std::size_t dim, double step_variance, Rng& rng) const {
  const double scale = std::sqrt(step_variance);
  Points raw(dim, static_cast<std::size_t>(subdivision_.edge_count()));
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (double& c : raw.coords()) c = scale * gauss(rng);
  return project(raw);
}

FullEmbedding sample_phantom(const SubdivisionGraph& subdivision, std::size_t dim, std::uint64_t seed,
                             double step_variance) {
  if (dim < 1) throw DomainError("dimension must be at least 1");
  if (!(step_variance >= 0.0)) throw DomainError("step variance must be nonnegative");
  Rng rng = stream_rng(seed, 0);
  return PhantomSampler(subdivision).sample(dim, step_variance, rng);
}

namespace {

EnsembleSample evaluate(const PhantomSampler& sampler, std::size_t dim, double step_variance, std::uint64_t seed,
                        std::uint64_t s) {
  Rng rng = stream_rng(seed, s);
  const FullEmbedding x = sampler.sample(dim, step_variance, rng);
  EnsembleSample out;
  out.rg2_direct = unit_radius_of_gyration(x.positions().coords(), dim);
  out.rg2_closed = theorem1_closed_form(x.structure_embedding(), displacements(x)).value;
  return out;
}

}  // namespace

std::vector<EnsembleSample> sample_ensemble(const SubdivisionGraph& subdivision, std::size_t dim,
                                            std::uint64_t samples, std::uint64_t seed, double step_variance,
                                            Execution execution) {
  if (samples < 10) throw DomainError("ensemble estimate needs at least 10 samples");
  if (dim < 1) throw DomainError("dimension must be at least 1");
  if (!(step_variance >= 0.0)) throw DomainError("step variance must be nonnegative");
  const PhantomSampler sampler(subdivision);
  std::vector<EnsembleSample> out(samples);
  if (execution == Execution::serial) {
    for (std::uint64_t s = 0; s < samples; ++s) out[s] = evaluate(sampler, dim, step_variance, seed, s);
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(samples); ++s) {
      out[static_cast<std::uint64_t>(s)] = evaluate(sampler, dim, step_variance, seed, static_cast<std::uint64_t>(s));
    }
  }
  return out;
}

EnsembleStats summarize_ensemble(const std::vector<EnsembleSample>& samples, std::uint64_t seed) {
  RunningStats direct, closed, diff;
  for (const auto& s : samples) {
    direct.add(s.rg2_direct);
    closed.add(s.rg2_closed);
    diff.add(s.rg2_direct - s.rg2_closed);
  }
  EnsembleStats out;
  out.samples = samples.size();
  out.mean_direct = direct.mean();
  out.mean_closed = closed.mean();
  out.stderr_direct = direct.standard_error();
  out.stderr_diff = diff.standard_error();
  out.seed = seed;
  return out;
}

EnsembleStats estimate_expectation(const SubdivisionGraph& subdivision, std::size_t dim, std::uint64_t samples,
                                   std::uint64_t seed, double step_variance, Execution execution) {
  return summarize_ensemble(sample_ensemble(subdivision, dim, samples, seed, step_variance, execution), seed);
}

}  // namespace gyration
