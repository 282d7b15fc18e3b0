#include "gyration/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "gyration/ensemble.hpp"
#include "gyration/errors.hpp"
#include "gyration/point_cloud.hpp"
#include "gyration/scene.hpp"
#include "gyration/symmetry.hpp"

namespace gyration::cli {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string describe(DerivedVertex v) { return "(" + std::to_string(v.group) + "," + std::to_string(v.index) + ")"; }

int cmd_subdivide(const std::string& path, std::ostream& out) {
  const Scene scene = read_scene(path);
  const SubdivisionGraph sub = scene.subdivision();
  out << "v=" << sub.vertex_count() << " e=" << sub.edge_count() << "\n";
  for (std::size_t f = 0; f < static_cast<std::size_t>(sub.vertex_count()); ++f) {
    out << "vertex " << describe(sub.vertex_at(f)) << " flat=" << f << "\n";
  }
  for (std::size_t f = 0; f < static_cast<std::size_t>(sub.edge_count()); ++f) {
    const DerivedEdge e = sub.edge_at(f);
    out << "edge (" << e.group << "," << e.index << ") tail=" << describe(sub.tail(e))
        << " head=" << describe(sub.head(e)) << "\n";
  }
  return kOk;
}

GroupedDisplacements straight_displacements(const Scene& scene) {
  const SubdivisionGraph sub = scene.subdivision();
  const Points w_prime = structure_displacements(scene.structure());
  Points w(scene.dim, static_cast<std::size_t>(sub.edge_count()));
  for (std::size_t f = 0; f < w.size(); ++f) {
    const auto target = w_prime[static_cast<std::size_t>(sub.edge_at(f).group - 1)];
    for (std::size_t c = 0; c < scene.dim; ++c) w[f][c] = target[c] / scene.n;
  }
  return {sub, std::move(w)};
}

GroupedDisplacements scene_displacements(const Scene& scene, bool straight) {
  if (straight) return straight_displacements(scene);
  if (!scene.displacements) {
    throw ParseError("scene has no disp lines; pass --straight to use w_ij = w'_i / n", 0);
  }
  return *scene.grouped();
}

int cmd_rg(const std::string& path, const std::string& weighting, bool full, std::ostream& out) {
  const Scene scene = read_scene(path);
  const bool by_degree = weighting == "deg";
  double value = 0.0;
  if (full) {
    if (!scene.displacements) throw ParseError("--full needs disp lines in the scene", 0);
    const FullEmbedding x = apply_permutation(
        scene.structure(), *scene.grouped(),
        GroupPermutation::identity(scene.graph.edge_count(), scene.n));
    value = by_degree ? degree_weighted_rg(x.subdivision().as_multigraph(), x.positions())
                      : radius_of_gyration(WeightedPointCloud(x.positions()));
  } else {
    value = by_degree ? degree_weighted_rg(scene.graph, scene.positions)
                      : radius_of_gyration(WeightedPointCloud(scene.positions));
  }
  out << g17(value) << "\n";
  return kOk;
}

struct SymmetrizeOptions {
  std::string method = "closed";
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  double cap = kDefaultEnumerationCap;
  bool json = false;
  bool straight = false;
  bool serial = false;
};

const char* method_name(SymmetrizationMethod m) {
  switch (m) {
    case SymmetrizationMethod::closed:
      return "closed";
    case SymmetrizationMethod::exact:
      return "exact";
    case SymmetrizationMethod::monte_carlo:
      return "mc";
  }
  return "closed";
}

int cmd_symmetrize(const std::string& path, const SymmetrizeOptions& opt, std::ostream& out) {
  const Scene scene = read_scene(path);
  const GroupedDisplacements w = scene_displacements(scene, opt.straight);
  const StructureEmbedding x_prime = scene.structure();
  const Execution execution = opt.serial ? Execution::serial : Execution::parallel;

  SymmetrizationReport report;
  if (opt.method == "closed") {
    report = theorem1_closed_form(x_prime, w);
  } else if (opt.method == "exact") {
    report = theorem1_exact_average(x_prime, w, opt.cap, execution);
  } else {
    report = theorem1_mc_average(x_prime, w, opt.samples, opt.seed, execution);
  }

  if (opt.json) {
    nlohmann::ordered_json j;
    j["method"] = method_name(report.method);
    j["value"] = report.value;
    j["stderr"] = report.standard_error;
    j["samples"] = report.samples;
    if (report.terms) {
      j["terms"] = {{"reweighted_rg", report.terms->reweighted_rg},
                    {"edge_term", report.terms->edge_term},
                    {"structure_term", report.terms->structure_term}};
    } else {
      j["terms"] = nullptr;
    }
    out << j.dump() << "\n";
  } else if (report.method == SymmetrizationMethod::monte_carlo) {
    out << g17(report.value) << " " << g17(report.standard_error) << "\n";
  } else {
    out << g17(report.value) << "\n";
  }
  return kOk;
}

struct SampleOptions {
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  double variance = 1.0;
  std::string csv;
  bool serial = false;
};

int cmd_sample(const std::string& path, const SampleOptions& opt, std::ostream& out) {
  const Scene scene = read_scene(path);
  std::ofstream csv;
  if (!opt.csv.empty()) {
    csv.open(opt.csv, std::ios::binary | std::ios::trunc);
    if (!csv) throw IoError("cannot write CSV file '" + opt.csv + "'");
  }
  const auto samples = sample_ensemble(scene.subdivision(), scene.dim, opt.samples, opt.seed, opt.variance,
                                       opt.serial ? Execution::serial : Execution::parallel);
  const EnsembleStats stats = summarize_ensemble(samples, opt.seed);
  out << "samples=" << stats.samples << " seed=" << stats.seed << "\n"
      << "mean_direct=" << g17(stats.mean_direct) << "\n"
      << "mean_closed=" << g17(stats.mean_closed) << "\n"
      << "stderr_direct=" << g17(stats.stderr_direct) << "\n"
      << "stderr_diff=" << g17(stats.stderr_diff) << "\n";
  if (csv.is_open()) {
    csv << "index,rg2_direct,rg2_closed\n";
    for (std::size_t s = 0; s < samples.size(); ++s) {
      csv << s << "," << g17(samples[s].rg2_direct) << "," << g17(samples[s].rg2_closed) << "\n";
    }
    csv.flush();
    if (!csv) throw IoError("failed writing CSV file '" + opt.csv + "'");
  }
  return kOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::parse:
    case ErrorKind::consistency:
    case ErrorKind::structural:
      return kParse;
    case ErrorKind::domain:
    case ErrorKind::numeric:
      return kDomain;
    case ErrorKind::resource:
      return kResource;
    case ErrorKind::io:
      return kIo;
  }
  return kParse;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radius of gyration of subdivision-graph embeddings and their permutation averages", "gyr"};
  app.require_subcommand(1);

  std::string scene_path;

  auto* subdivide = app.add_subcommand("subdivide", "Print derived vertex/edge counts and the head/tail table");
  subdivide->add_option("scene", scene_path, "Scene file")->required();

  std::string weighting = "uniform";
  bool full = false;
  auto* rg = app.add_subcommand("rg", "Squared radius of gyration of the structure (or full) embedding");
  rg->add_option("scene", scene_path, "Scene file")->required();
  rg->add_option("--weighted", weighting, "Vertex weights")->check(CLI::IsMember({"deg", "uniform"}));
  rg->add_flag("--full", full, "Use the full subdivided embedding built from the disp lines");

  SymmetrizeOptions sym;
  auto* symmetrize = app.add_subcommand("symmetrize", "Average Rg^2 over all within-edge displacement reorderings");
  symmetrize->add_option("scene", scene_path, "Scene file")->required();
  symmetrize->add_option("--method", sym.method, "closed | exact | mc")->check(CLI::IsMember({"closed", "exact", "mc"}));
  symmetrize->add_option("--samples", sym.samples, "Monte Carlo sample count")->check(CLI::Range(2ULL, 1ULL << 40));
  symmetrize->add_option("--seed", sym.seed, "Monte Carlo seed");
  symmetrize->add_option("--cap", sym.cap, "Largest (n!)^e' the exact method will enumerate");
  symmetrize->add_flag("--json", sym.json, "Emit one JSON record");
  symmetrize->add_flag("--straight", sym.straight, "Use w_ij = w'_i / n instead of disp lines");
  symmetrize->add_flag("--serial", sym.serial, "Run the serial reference kernels");

  SampleOptions smp;
  auto* sample = app.add_subcommand("sample", "Gaussian phantom-network ensemble check");
  sample->add_option("scene", scene_path, "Scene file (pos/disp ignored)")->required();
  sample->add_option("--samples", smp.samples, "Sample count")->check(CLI::Range(10ULL, 1ULL << 40));
  sample->add_option("--seed", smp.seed, "Seed");
  sample->add_option("--var", smp.variance, "Per-coordinate variance of each raw edge vector")
      ->check(CLI::NonNegativeNumber);
  sample->add_option("--csv", smp.csv, "Write per-sample values here");
  sample->add_flag("--serial", smp.serial, "Run the serial reference kernels");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "gyr: " << e.what() << "\n";
    return kParse;
  }

  try {
    if (*subdivide) return cmd_subdivide(scene_path, out);
    if (*rg) return cmd_rg(scene_path, weighting, full, out);
    if (*symmetrize) return cmd_symmetrize(scene_path, sym, out);
    if (*sample) return cmd_sample(scene_path, smp, out);
  } catch (const Error& e) {
    err << "gyr: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kParse;
}

}  // namespace gyration::cli
