#include "gyration/graph.hpp"

#include <string>

#include "gyration/errors.hpp"

namespace gyration {

DirectedMultigraph::DirectedMultigraph(int vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) {
    throw StructuralError("graph needs at least one vertex, got " + std::to_string(vertex_count_));
  }
  degrees_.assign(static_cast<std::size_t>(vertex_count_), 0);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (e.tail < 1 || e.tail > vertex_count_ || e.head < 1 || e.head > vertex_count_) {
      throw StructuralError("edge " + std::to_string(k + 1) + " (" + std::to_string(e.tail) + ", " +
                            std::to_string(e.head) + ") references a vertex outside [1, " +
                            std::to_string(vertex_count_) + "]");
    }
    ++degrees_[static_cast<std::size_t>(e.tail - 1)];
    ++degrees_[static_cast<std::size_t>(e.head - 1)];
  }
}

const Edge& DirectedMultigraph::edge(int i) const {
  if (i < 1 || i > edge_count()) {
    throw StructuralError("edge index " + std::to_string(i) + " outside [1, " + std::to_string(edge_count()) + "]");
  }
  return edges_[static_cast<std::size_t>(i - 1)];
}

int DirectedMultigraph::degree(int v) const {
  if (v < 1 || v > vertex_count_) {
    throw StructuralError("vertex index " + std::to_string(v) + " outside [1, " + std::to_string(vertex_count_) +
                          "]");
  }
  return degrees_[static_cast<std::size_t>(v - 1)];
}

DirectedMultigraph build_graph(int vertex_count, std::vector<Edge> edges) {
  return DirectedMultigraph(vertex_count, std::move(edges));
}

int vertex_degree(const DirectedMultigraph& g, int v) { return g.degree(v); }

SubdivisionGraph::SubdivisionGraph(DirectedMultigraph structure, int n) : structure_(std::move(structure)), n_(n) {
  // n = 1 would make the 2/(n-1) reweighting singular.
  if (n_ < 2) throw DomainError("subdivision count must be at least 2, got " + std::to_string(n_));
}

bool SubdivisionGraph::contains(DerivedVertex v) const noexcept {
  if (v.group == 0) return v.index >= 1 && v.index <= structure_vertex_count();
  return v.group >= 1 && v.group <= structure_edge_count() && v.index >= 1 && v.index <= n_ - 1;
}

bool SubdivisionGraph::contains(DerivedEdge e) const noexcept {
  return e.group >= 1 && e.group <= structure_edge_count() && e.index >= 1 && e.index <= n_;
}

namespace {

std::string describe(DerivedEdge e) {
  return "(" + std::to_string(e.group) + "," + std::to_string(e.index) + ")";
}

std::string describe(DerivedVertex v) {
  return "(" + std::to_string(v.group) + "," + std::to_string(v.index) + ")";
}

}  // namespace

DerivedVertex SubdivisionGraph::tail(DerivedEdge e) const {
  if (!contains(e)) throw StructuralError("derived edge " + describe(e) + " out of range");
  if (e.index == 1) return {0, structure_.edge(e.group).tail};
  return {e.group, e.index - 1};
}

DerivedVertex SubdivisionGraph::head(DerivedEdge e) const {
  if (!contains(e)) throw StructuralError("derived edge " + describe(e) + " out of range");
  if (e.index == n_) return {0, structure_.edge(e.group).head};
  return {e.group, e.index};
}

std::size_t SubdivisionGraph::flat(DerivedVertex v) const {
  if (!contains(v)) throw StructuralError("derived vertex " + describe(v) + " out of range");
  if (v.group == 0) return static_cast<std::size_t>(v.index - 1);
  return static_cast<std::size_t>(structure_vertex_count() + (v.group - 1) * (n_ - 1) + (v.index - 1));
}

std::size_t SubdivisionGraph::flat(DerivedEdge e) const {
  if (!contains(e)) throw StructuralError("derived edge " + describe(e) + " out of range");
  return static_cast<std::size_t>((e.group - 1) * n_ + (e.index - 1));
}

DerivedVertex SubdivisionGraph::vertex_at(std::size_t flat_index) const {
  if (flat_index >= static_cast<std::size_t>(vertex_count())) {
    throw StructuralError("flat vertex index " + std::to_string(flat_index) + " out of range");
  }
  const auto vp = static_cast<std::size_t>(structure_vertex_count());
  if (flat_index < vp) return {0, static_cast<int>(flat_index) + 1};
  const auto r = flat_index - vp;
  const auto per = static_cast<std::size_t>(n_ - 1);
  return {static_cast<int>(r / per) + 1, static_cast<int>(r % per) + 1};
}

DerivedEdge SubdivisionGraph::edge_at(std::size_t flat_index) const {
  if (flat_index >= static_cast<std::size_t>(edge_count())) {
    throw StructuralError("flat edge index " + std::to_string(flat_index) + " out of range");
  }
  const auto per = static_cast<std::size_t>(n_);
  return {static_cast<int>(flat_index / per) + 1, static_cast<int>(flat_index % per) + 1};
}

DirectedMultigraph SubdivisionGraph::as_multigraph() const {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(edge_count()));
  for (int i = 1; i <= structure_edge_count(); ++i) {
    for (int j = 1; j <= n_; ++j) {
      const DerivedEdge e{i, j};
      edges.push_back({static_cast<int>(flat(tail(e))) + 1, static_cast<int>(flat(head(e))) + 1});
    }
  }
  return DirectedMultigraph(vertex_count(), std::move(edges));
}

SubdivisionGraph subdivide(const DirectedMultigraph& g, int n) { return SubdivisionGraph(g, n); }

}  // namespace gyration
