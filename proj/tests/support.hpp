#pragma once

// Conversions between oracle containers and library types.

#include "gyration/embedding.hpp"
#include "gyration/graph.hpp"
#include "oracles.hpp"

namespace test_support {

inline gyration::Points to_points(const oracle::Cloud& c) {
  gyration::Points p(c.at(0).size(), 0);
  for (const auto& v : c) p.push_back(v);
  return p;
}

inline gyration::DirectedMultigraph to_graph(const oracle::Graph& g) {
  std::vector<gyration::Edge> edges;
  for (const auto& [t, h] : g.edges) edges.push_back({t, h});
  return {g.vertices, edges};
}

struct Problem {
  gyration::StructureEmbedding x_prime;
  gyration::GroupedDisplacements w;
};

inline Problem to_problem(const oracle::Graph& g, int n, const oracle::Instance& inst) {
  const auto graph = to_graph(g);
  oracle::Cloud flat;
  for (const auto& group : inst.w) flat.insert(flat.end(), group.begin(), group.end());
  return {gyration::StructureEmbedding(graph, to_points(inst.x_prime)),
          gyration::GroupedDisplacements(gyration::SubdivisionGraph(graph, n), to_points(flat))};
}

}  // namespace test_support
