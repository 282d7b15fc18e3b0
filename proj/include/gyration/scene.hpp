#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "gyration/embedding.hpp"

namespace gyration {

/// Contents of a "gyr-scene v1" file:
///
///   gyr-scene v1
///   dim d
///   vertices v'
///   edge t h                 (one per structure edge, in edge order)
///   n k
///   pos j c_1 ... c_d        (one per structure vertex)
///   disp i j c_1 ... c_d     (optional; if any is given, all n * e' must be)
///
/// Blank lines and lines starting with '#' are ignored. The header must come
/// first; dim and vertices must precede edge/pos/disp lines and n must precede
/// disp lines.
struct Scene {
  std::size_t dim = 0;
  DirectedMultigraph graph{1, {}};
  int n = 2;
  Points positions;
  std::optional<Points> displacements;  // flat derived-edge order

  StructureEmbedding structure() const { return {graph, positions}; }
  SubdivisionGraph subdivision() const { return {graph, n}; }
  std::optional<GroupedDisplacements> grouped() const;

  friend bool operator==(const Scene&, const Scene&) = default;
};

/// Throws ParseError (with line number) on grammar violations, missing or
/// duplicate entries, and ConsistencyError when displacement groups do not
/// sum to x'_head - x'_tail within 1e-9 relative.
Scene parse_scene(std::istream& in);
/// As parse_scene; throws IoError when the file cannot be opened.
Scene read_scene(const std::filesystem::path& path);

/// Canonical form, coordinates at 17 significant digits (round-trips exactly).
void write_scene(std::ostream& out, const Scene& scene);

}  // namespace gyration
