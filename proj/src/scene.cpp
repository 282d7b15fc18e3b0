#include "gyration/scene.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gyration/errors.hpp"

namespace gyration {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

long long parse_int(const std::string& tok, int line) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" + tok + "'", line);
  }
  return value;
}

double parse_double(const std::string& tok, int line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line) + ": expected a decimal number, got '" + tok + "'", line);
  }
  return value;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what, line);
}

void expect_arity(const std::vector<std::string>& toks, std::size_t arity, int line) {
  if (toks.size() != arity) {
    fail(line, "'" + toks[0] + "' takes " + std::to_string(arity - 1) + " fields, got " +
                   std::to_string(toks.size() - 1));
  }
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::optional<GroupedDisplacements> Scene::grouped() const {
  if (!displacements) return std::nullopt;
  return GroupedDisplacements(subdivision(), *displacements);
}

Scene parse_scene(std::istream& in) {
  std::string raw;
  int line = 0;
  bool have_header = false;
  long long dim = -1, vertices = -1, n = -1;
  std::vector<Edge> edges;
  std::vector<std::vector<double>> pos;
  std::vector<int> pos_line;
  struct Disp {
    long long i, j;
    std::vector<double> c;
    int line;
  };
  std::vector<Disp> disps;

  while (std::getline(in, raw)) {
    ++line;
    const auto toks = tokenize(raw);
    if (toks.empty() || toks[0][0] == '#') continue;
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "gyr-scene" || toks[1] != "v1") fail(line, "expected header 'gyr-scene v1'");
      have_header = true;
      continue;
    }
    const std::string& key = toks[0];
    if (key == "dim") {
      expect_arity(toks, 2, line);
      if (dim != -1) fail(line, "duplicate 'dim'");
      dim = parse_int(toks[1], line);
      if (dim < 1) fail(line, "dim must be at least 1");
    } else if (key == "vertices") {
      expect_arity(toks, 2, line);
      if (vertices != -1) fail(line, "duplicate 'vertices'");
      vertices = parse_int(toks[1], line);
      if (vertices < 1) fail(line, "vertices must be at least 1");
      pos.assign(static_cast<std::size_t>(vertices), {});
      pos_line.assign(static_cast<std::size_t>(vertices), 0);
    } else if (key == "edge") {
      expect_arity(toks, 3, line);
      if (vertices == -1) fail(line, "'edge' before 'vertices'");
      const long long t = parse_int(toks[1], line);
      const long long h = parse_int(toks[2], line);
      if (t < 1 || t > vertices || h < 1 || h > vertices) {
        fail(line, "edge " + std::to_string(edges.size() + 1) + " references a vertex outside [1, " +
                       std::to_string(vertices) + "]");
      }
      edges.push_back({static_cast<int>(t), static_cast<int>(h)});
    } else if (key == "n") {
      expect_arity(toks, 2, line);
      if (n != -1) fail(line, "duplicate 'n'");
      n = parse_int(toks[1], line);
      if (n < 2) fail(line, "n must be at least 2");
    } else if (key == "pos") {
      if (dim == -1 || vertices == -1) fail(line, "'pos' before 'dim' and 'vertices'");
      expect_arity(toks, 2 + static_cast<std::size_t>(dim), line);
      const long long j = parse_int(toks[1], line);
      if (j < 1 || j > vertices) fail(line, "pos index " + std::to_string(j) + " outside [1, " + std::to_string(vertices) + "]");
      const auto slot = static_cast<std::size_t>(j - 1);
      if (pos_line[slot] != 0) fail(line, "duplicate pos " + std::to_string(j) + " (first on line " + std::to_string(pos_line[slot]) + ")");
      for (std::size_t c = 0; c < static_cast<std::size_t>(dim); ++c) pos[slot].push_back(parse_double(toks[2 + c], line));
      pos_line[slot] = line;
    } else if (key == "disp") {
      if (dim == -1) fail(line, "'disp' before 'dim'");
      if (n == -1) fail(line, "'disp' before 'n'");
      expect_arity(toks, 3 + static_cast<std::size_t>(dim), line);
      Disp d{parse_int(toks[1], line), parse_int(toks[2], line), {}, line};
      for (std::size_t c = 0; c < static_cast<std::size_t>(dim); ++c) d.c.push_back(parse_double(toks[3 + c], line));
      disps.push_back(std::move(d));
    } else {
      fail(line, "unknown keyword '" + key + "'");
    }
  }

  if (!have_header) throw ParseError("missing header 'gyr-scene v1'", 0);
  if (dim == -1) throw ParseError("missing 'dim'", 0);
  if (vertices == -1) throw ParseError("missing 'vertices'", 0);
  if (n == -1) throw ParseError("missing 'n'", 0);
  for (std::size_t j = 0; j < pos_line.size(); ++j) {
    if (pos_line[j] == 0) throw ParseError("missing 'pos " + std::to_string(j + 1) + "'", 0);
  }

  Scene scene;
  scene.dim = static_cast<std::size_t>(dim);
  scene.graph = DirectedMultigraph(static_cast<int>(vertices), std::move(edges));
  scene.n = static_cast<int>(n);
  scene.positions = Points(scene.dim, 0);
  for (const auto& p : pos) scene.positions.push_back(p);

  if (!disps.empty()) {
    const int groups = scene.graph.edge_count();
    if (groups == 0) throw ParseError("line " + std::to_string(disps[0].line) + ": 'disp' without edges", disps[0].line);
    const SubdivisionGraph sub = scene.subdivision();
    std::vector<int> seen(static_cast<std::size_t>(sub.edge_count()), 0);
    Points w(scene.dim, static_cast<std::size_t>(sub.edge_count()));
    for (const Disp& d : disps) {
      if (d.i < 1 || d.i > groups || d.j < 1 || d.j > n) {
        fail(d.line, "disp index (" + std::to_string(d.i) + "," + std::to_string(d.j) + ") outside (1.." +
                         std::to_string(groups) + ", 1.." + std::to_string(n) + ")");
      }
      const std::size_t f = sub.flat(DerivedEdge{static_cast<int>(d.i), static_cast<int>(d.j)});
      if (seen[f] != 0) {
        fail(d.line, "duplicate disp (" + std::to_string(d.i) + "," + std::to_string(d.j) + ") (first on line " +
                         std::to_string(seen[f]) + ")");
      }
      seen[f] = d.line;
      std::copy(d.c.begin(), d.c.end(), w[f].begin());
    }
    for (std::size_t f = 0; f < seen.size(); ++f) {
      if (seen[f] == 0) {
        const DerivedEdge e = sub.edge_at(f);
        throw ParseError("missing disp (" + std::to_string(e.group) + "," + std::to_string(e.index) + "); " +
                             std::to_string(disps.size()) + " of " + std::to_string(seen.size()) + " present",
                         0);
      }
    }
    scene.displacements = std::move(w);
    require_consistent(scene.structure(), *scene.grouped());
  }
  return scene;
}

Scene read_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scene file '" + path.string() + "'");
  return parse_scene(in);
}

void write_scene(std::ostream& out, const Scene& scene) {
  out << "gyr-scene v1\n";
  out << "dim " << scene.dim << "\n";
  out << "vertices " << scene.graph.vertex_count() << "\n";
  for (const Edge& e : scene.graph.edges()) out << "edge " << e.tail << " " << e.head << "\n";
  out << "n " << scene.n << "\n";
  for (std::size_t j = 0; j < scene.positions.size(); ++j) {
    out << "pos " << j + 1;
    for (double c : scene.positions[j]) out << " " << format_double(c);
    out << "\n";
  }
  if (scene.displacements) {
    const SubdivisionGraph sub = scene.subdivision();
    for (std::size_t f = 0; f < scene.displacements->size(); ++f) {
      const DerivedEdge e = sub.edge_at(f);
      out << "disp " << e.group << " " << e.index;
      for (double c : (*scene.displacements)[f]) out << " " << format_double(c);
      out << "\n";
    }
  }
}

}  // namespace gyration
