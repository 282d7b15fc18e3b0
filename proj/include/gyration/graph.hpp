#pragma once

#include <cstddef>
#include <vector>

namespace gyration {

/// Oriented edge of a structure graph; vertex indices are 1-based.
struct Edge {
  int tail = 0;
  int head = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed multigraph with loops and parallel edges. Edge order is the
/// order of construction and defines edge indices 1..e'.
///
/// Connectivity is deliberately not checked: nothing downstream needs it,
/// although the phantom sampler's gauge only pins one translation per
/// connected component.
class DirectedMultigraph {
 public:
  /// Throws StructuralError naming the first edge with an index outside [1, vertex_count].
  DirectedMultigraph(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const noexcept { return vertex_count_; }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(int i) const;  // 1-based

  /// Number of edge endpoints at v; a loop counts twice.
  int degree(int v) const;
  const std::vector<int>& degrees() const noexcept { return degrees_; }  // 0-based storage

  friend bool operator==(const DirectedMultigraph& a, const DirectedMultigraph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

 private:
  int vertex_count_;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
};

DirectedMultigraph build_graph(int vertex_count, std::vector<Edge> edges);
int vertex_degree(const DirectedMultigraph& g, int v);

/// Vertex of a subdivision graph: (0, j) is the junction for structure vertex j,
/// (i, j) with i >= 1 is the j-th interior vertex on structure edge i.
struct DerivedVertex {
  int group = 0;
  int index = 0;
  friend bool operator==(const DerivedVertex&, const DerivedVertex&) = default;
};

/// Edge (i, j): the j-th of the n edges replacing structure edge i.
struct DerivedEdge {
  int group = 0;
  int index = 0;
  friend bool operator==(const DerivedEdge&, const DerivedEdge&) = default;
};

/// G obtained from G' by replacing each edge with a path of n edges.
///
/// Flat (0-based) vertex order: all junctions (0,1)..(0,v') first, then the
/// interior vertices (i,j) lexicographically. Flat edge order is (i,j)
/// lexicographic.
class SubdivisionGraph {
 public:
  /// Throws DomainError when n < 2.
  SubdivisionGraph(DirectedMultigraph structure, int n);

  const DirectedMultigraph& structure() const noexcept { return structure_; }
  int subdivisions() const noexcept { return n_; }
  int structure_vertex_count() const noexcept { return structure_.vertex_count(); }
  int structure_edge_count() const noexcept { return structure_.edge_count(); }

  int vertex_count() const noexcept { return (n_ - 1) * structure_edge_count() + structure_vertex_count(); }
  int edge_count() const noexcept { return n_ * structure_edge_count(); }

  DerivedVertex tail(DerivedEdge e) const;
  DerivedVertex head(DerivedEdge e) const;

  std::size_t flat(DerivedVertex v) const;
  std::size_t flat(DerivedEdge e) const;
  DerivedVertex vertex_at(std::size_t flat_index) const;
  DerivedEdge edge_at(std::size_t flat_index) const;

  bool contains(DerivedVertex v) const noexcept;
  bool contains(DerivedEdge e) const noexcept;

  /// G itself as a plain multigraph, vertices numbered by flat index + 1.
  DirectedMultigraph as_multigraph() const;

  friend bool operator==(const SubdivisionGraph&, const SubdivisionGraph&) = default;

 private:
  DirectedMultigraph structure_;
  int n_;
};

SubdivisionGraph subdivide(const DirectedMultigraph& g, int n);

}  // namespace gyration
