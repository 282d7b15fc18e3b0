#include "gyration/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "gyration/errors.hpp"

namespace gyration {

StructureEmbedding::StructureEmbedding(DirectedMultigraph graph, Points positions)
    : graph_(std::move(graph)), positions_(std::move(positions)) {
  if (positions_.size() != static_cast<std::size_t>(graph_.vertex_count())) {
    throw DomainError("structure embedding needs " + std::to_string(graph_.vertex_count()) + " positions, got " +
                      std::to_string(positions_.size()));
  }
  if (positions_.dim() == 0) throw DomainError("embedding dimension must be positive");
}

GroupedDisplacements::GroupedDisplacements(SubdivisionGraph subdivision, Points vectors)
    : subdivision_(std::move(subdivision)), vectors_(std::move(vectors)) {
  if (vectors_.size() != static_cast<std::size_t>(subdivision_.edge_count())) {
    throw DomainError("expected " + std::to_string(subdivision_.edge_count()) + " displacement vectors, got " +
                      std::to_string(vectors_.size()));
  }
  if (vectors_.dim() == 0) throw DomainError("displacement dimension must be positive");
}

Points GroupedDisplacements::group(int i) const {
  Points out(dim(), 0);
  for (int j = 1; j <= group_size(); ++j) out.push_back(vector(i, j));
  return out;
}

Point GroupedDisplacements::group_sum(int i) const {
  Point s(dim(), 0.0);
  for (int j = 1; j <= group_size(); ++j) {
    const auto w = vector(i, j);
    for (std::size_t c = 0; c < s.size(); ++c) s[c] += w[c];
  }
  return s;
}

FullEmbedding::FullEmbedding(SubdivisionGraph subdivision, Points positions)
    : subdivision_(std::move(subdivision)), positions_(std::move(positions)) {
  if (positions_.size() != static_cast<std::size_t>(subdivision_.vertex_count())) {
    throw DomainError("full embedding needs " + std::to_string(subdivision_.vertex_count()) + " positions, got " +
                      std::to_string(positions_.size()));
  }
  if (positions_.dim() == 0) throw DomainError("embedding dimension must be positive");
}

StructureEmbedding FullEmbedding::structure_embedding() const {
  Points junctions(dim(), 0);
  for (int j = 1; j <= subdivision_.structure_vertex_count(); ++j) junctions.push_back(position({0, j}));
  return StructureEmbedding(subdivision_.structure(), std::move(junctions));
}

Points FullEmbedding::group(int i) const {
  Points out(dim(), 0);
  for (int j = 1; j < subdivision_.subdivisions(); ++j) out.push_back(position({i, j}));
  return out;
}

GroupedDisplacements displacements(const FullEmbedding& x) {
  const SubdivisionGraph& sub = x.subdivision();
  Points w(x.dim(), static_cast<std::size_t>(sub.edge_count()));
  for (std::size_t f = 0; f < static_cast<std::size_t>(sub.edge_count()); ++f) {
    const DerivedEdge e = sub.edge_at(f);
    const auto h = x.position(sub.head(e));
    const auto t = x.position(sub.tail(e));
    auto out = w[f];
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = h[c] - t[c];
  }
  return GroupedDisplacements(sub, std::move(w));
}

Points structure_displacements(const StructureEmbedding& x_prime) {
  const auto& g = x_prime.graph();
  Points w(x_prime.dim(), static_cast<std::size_t>(g.edge_count()));
  for (int i = 1; i <= g.edge_count(); ++i) {
    const auto h = x_prime.position(g.edge(i).head);
    const auto t = x_prime.position(g.edge(i).tail);
    auto out = w[static_cast<std::size_t>(i - 1)];
    for (std::size_t c = 0; c < out.size(); ++c) out[c] = h[c] - t[c];
  }
  return w;
}

namespace {

void require_same_shape(const StructureEmbedding& x_prime, const GroupedDisplacements& w) {
  if (!(x_prime.graph() == w.subdivision().structure())) {
    throw DomainError("displacements belong to a different structure graph");
  }
  if (x_prime.dim() != w.dim()) {
    throw DomainError("structure embedding is " + std::to_string(x_prime.dim()) + "-dimensional, displacements are " +
                      std::to_string(w.dim()) + "-dimensional");
  }
}

}  // namespace

ConsistencyReport check_consistency(const StructureEmbedding& x_prime, const GroupedDisplacements& w) {
  require_same_shape(x_prime, w);
  const Points w_prime = structure_displacements(x_prime);
  ConsistencyReport report;
  for (int i = 1; i <= w.group_count(); ++i) {
    const Point sum = w.group_sum(i);
    const auto target = w_prime[static_cast<std::size_t>(i - 1)];
    double length_sum = 0.0;
    for (int j = 1; j <= w.group_size(); ++j) length_sum += std::sqrt(squared_norm(w.vector(i, j)));
    const double scale = std::max({1.0, std::sqrt(squared_norm(target)), length_sum});
    const double residual = std::sqrt(squared_distance(sum, target)) / scale;
    if (report.worst_group == 0 || std::isnan(residual) || residual > report.worst_residual) {
      report.worst_residual = residual;
      report.worst_group = i;
      if (std::isnan(residual)) break;
    }
  }
  return report;
}

void require_consistent(const StructureEmbedding& x_prime, const GroupedDisplacements& w, double tolerance) {
  const ConsistencyReport r = check_consistency(x_prime, w);
  if (!(r.worst_residual <= tolerance)) {
    std::ostringstream msg;
    msg.precision(3);
    msg << "displacement group " << r.worst_group << " does not sum to x'_head - x'_tail (relative residual "
        << r.worst_residual << ", tolerance " << tolerance << ")";
    throw ConsistencyError(msg.str(), r.worst_residual, r.worst_group);
  }
}

void write_permuted_positions(std::span<const double> x_prime, std::span<const int> tails,
                              std::span<const double> w, const GroupPermutation& sigma, std::size_t dim,
                              std::span<double> out) {
  std::copy(x_prime.begin(), x_prime.end(), out.begin());
  const auto n = static_cast<std::size_t>(sigma.subdivisions());
  double* cursor = out.data() + x_prime.size();
  for (int i = 1; i <= sigma.group_count(); ++i) {
    const double* running = x_prime.data() + static_cast<std::size_t>(tails[static_cast<std::size_t>(i - 1)]) * dim;
    const double* group = w.data() + static_cast<std::size_t>(i - 1) * n * dim;
    for (std::size_t j = 1; j < n; ++j) {
      const double* step = group + static_cast<std::size_t>(sigma.image(i, static_cast<int>(j)) - 1) * dim;
      for (std::size_t c = 0; c < dim; ++c) cursor[c] = running[c] + step[c];
      running = cursor;
      cursor += dim;
    }
  }
}

FullEmbedding apply_permutation(const StructureEmbedding& x_prime, const GroupedDisplacements& w,
                                const GroupPermutation& sigma) {
  require_consistent(x_prime, w);
  if (sigma.group_count() != w.group_count() || sigma.subdivisions() != w.group_size()) {
    throw DomainError("permutation shape does not match the displacement groups");
  }
  const SubdivisionGraph& sub = w.subdivision();
  std::vector<int> tails;
  for (const Edge& e : sub.structure().edges()) tails.push_back(e.tail - 1);
  Points out(x_prime.dim(), static_cast<std::size_t>(sub.vertex_count()));
  write_permuted_positions(x_prime.positions().coords(), tails, w.vectors().coords(), sigma, x_prime.dim(),
                           out.coords());
  return FullEmbedding(sub, std::move(out));
}

FullEmbedding apply_permutation_by_indicator(const StructureEmbedding& x_prime, const GroupedDisplacements& w,
                                             const GroupPermutation& sigma) {
  require_consistent(x_prime, w);
  if (sigma.group_count() != w.group_count() || sigma.subdivisions() != w.group_size()) {
    throw DomainError("permutation shape does not match the displacement groups");
  }
  const SubdivisionGraph& sub = w.subdivision();
  const int n = sub.subdivisions();
  const std::size_t dim = x_prime.dim();
  Points out(dim, static_cast<std::size_t>(sub.vertex_count()));
  for (int j = 1; j <= sub.structure_vertex_count(); ++j) {
    std::ranges::copy(x_prime.position(j), out[sub.flat(DerivedVertex{0, j})].begin());
  }
  for (int i = 1; i <= sub.structure_edge_count(); ++i) {
    const auto tail = x_prime.position(sub.structure().edge(i).tail);
    for (int j = 1; j < n; ++j) {
      auto x = out[sub.flat(DerivedVertex{i, j})];
      std::ranges::copy(tail, x.begin());
      for (int position = 1; position <= n; ++position) {
        const int k = sigma.image(i, position);
        if (indicator_c(i, j, k, sigma) == 0) continue;
        const auto wk = w.vector(i, k);
        for (std::size_t c = 0; c < dim; ++c) x[c] += wk[c];
      }
    }
  }
  return FullEmbedding(sub, std::move(out));
}

std::uint64_t enumerate_group(const SubdivisionGraph& subdivision,
                              const std::function<void(const GroupPermutation&)>& visitor, double cap) {
  const double cardinality = group_cardinality(subdivision.structure_edge_count(), subdivision.subdivisions());
  if (cardinality > cap) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "enumerating S needs (n!)^e' = " << cardinality << " embeddings, above the cap of " << cap;
    throw ResourceError(msg.str(), cardinality);
  }
  GroupPermutation sigma =
      GroupPermutation::identity(subdivision.structure_edge_count(), subdivision.subdivisions());
  std::uint64_t visits = 0;
  do {
    visitor(sigma);
    ++visits;
  } while (sigma.advance());
  return visits;
}

GroupPermutation random_group_element(const SubdivisionGraph& subdivision, Rng& rng) {
  GroupPermutation sigma =
      GroupPermutation::identity(subdivision.structure_edge_count(), subdivision.subdivisions());
  sigma.shuffle(rng);
  return sigma;
}

}  // namespace gyration
