// Command-line front end: seeded, deterministic sampling of partitions,
// hierarchies, tree embeddings, distance oracles and spanners, plus a
// benchmark harness with machine-readable reports.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ckr/ckr.hpp"
#include "graph_gen.hpp"

namespace {

using json = nlohmann::json;
using namespace ckr;

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open input file: " + path);
  return load_graph(in);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot open output file: " + path);
  return out;
}

// writes to the file when a path is given, otherwise to stdout
void emit(const std::string& path, const std::string& payload) {
  if (path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out = open_out(path);
    out << payload;
  }
}

std::vector<std::int64_t> parse_sizes(const std::string& spec) {
  std::vector<std::int64_t> sizes;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    std::int64_t mult = 1;
    char suffix = token.back();
    if (suffix == 'k' || suffix == 'K') mult = 1000;
    if (suffix == 'm' || suffix == 'M') mult = 1000000;
    if (mult != 1) token.pop_back();
    try {
      sizes.push_back(std::stoll(token) * mult);
    } catch (const std::exception&) {
      throw input_error("bad size token: " + token);
    }
  }
  if (sizes.empty()) throw input_error("no sizes given");
  return sizes;
}

int run_partition(const std::string& input, double delta, std::uint64_t seed,
                  const std::string& out_path) {
  const WeightedGraph g = read_graph_file(input);
  RandomSource rng(seed);
  const auto [part, trace] = ckr_partition_graph(g, delta, rng);
  std::ostringstream out;
  write_partition(out, part, seed);
  emit(out_path, out.str());
  return 0;
}

int run_hierarchy(const std::string& input, std::uint64_t seed, const std::string& out_path,
                  const std::string& scales_path) {
  const WeightedGraph g = read_graph_file(input);
  if (!is_connected(g)) throw input_error("hierarchy requires a connected graph");
  HierarchySampler sampler(g);
  const HierarchySample sample = sampler.sample_all(RandomSource(seed));
  std::ostringstream out;
  sample.tree.write_text(out);
  emit(out_path, out.str());
  if (!scales_path.empty()) {
    std::ostringstream dump;
    write_scale_family(dump, sampler.family());
    emit(scales_path, dump.str());
  }
  return 0;
}

int run_embed(const std::string& input, std::uint64_t seed, const std::string& out_path,
              int distortion_samples, const std::string& report_path,
              const std::string& format) {
  const WeightedGraph g = read_graph_file(input);
  const UltrametricTree tree = sample_frt(g, RandomSource(seed));
  std::ostringstream out;
  tree.write_text(out);
  emit(out_path, out.str());
  if (distortion_samples > 0) {
    const DistortionReport report =
        empirical_distortion(g, distortion_samples, RandomSource(seed));
    std::ostringstream rep;
    if (format == "table") {
      rep << "x y rho mean_nu mean_stretch\n";
      for (const PairStretch& p : report.pairs) {
        char line[160];
        std::snprintf(line, sizeof(line), "%d %d %.6g %.6g %.6g\n", p.x, p.y, p.rho,
                      p.mean_nu, p.mean_stretch());
        rep << line;
      }
      rep << "empirical_D " << report.empirical_d << "\n";
    } else {
      for (const PairStretch& p : report.pairs) {
        json j{{"x", p.x},
               {"y", p.y},
               {"rho", p.rho},
               {"mean_nu", p.mean_nu},
               {"mean_stretch", p.mean_stretch()}};
        rep << j.dump() << "\n";
      }
      json summary{{"type", "summary"},
                   {"n", report.n},
                   {"samples", report.samples},
                   {"empirical_D", report.empirical_d}};
      rep << summary.dump() << "\n";
    }
    emit(report_path, rep.str());
  }
  return 0;
}

int run_oracle_build(const std::string& input, int k, std::uint64_t seed, double beta,
                     const std::string& out_path) {
  const WeightedGraph g = read_graph_file(input);
  const DistanceOracle oracle = build_oracle(g, k, RandomSource(seed), beta);
  std::ofstream out = open_out(out_path);
  write_oracle(out, oracle);
  return 0;
}

int run_oracle_query(const std::string& oracle_path, const std::string& pairs_path,
                     const std::string& out_path) {
  std::ifstream in(oracle_path, std::ios::binary);
  if (!in) throw input_error("cannot open oracle file: " + oracle_path);
  const DistanceOracle oracle = read_oracle(in);
  std::ifstream pairs(pairs_path);
  if (!pairs) throw input_error("cannot open pairs file: " + pairs_path);
  std::ostringstream out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(pairs, line)) {
    ++lineno;
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    long long x = 0, y = 0;
    if (!(fields >> x >> y))
      throw input_error("pairs line " + std::to_string(lineno) + ": expected 'x y'");
    out << x << ' ' << y << ' ';
    write_double(out, oracle.query(static_cast<VertexId>(x), static_cast<VertexId>(y)));
    out << "\n";
  }
  emit(out_path, out.str());
  return 0;
}

int run_spanner(const std::string& input, int k, std::uint64_t seed,
                const std::string& out_path) {
  const WeightedGraph g = read_graph_file(input);
  RandomSource rng(seed);
  const Spanner s = baswana_sen(g, k, rng);
  std::ostringstream out;
  save_graph(out, spanner_graph(g, s));
  emit(out_path, out.str());
  return 0;
}

int run_bench(const std::string& family, const std::string& sizes_spec, int seeds,
              double delta_frac, const std::string& out_path, const std::string& format) {
  const std::vector<std::int64_t> sizes = parse_sizes(sizes_spec);
  if (seeds < 1) throw input_error("need at least one seed");
  BenchReport report;
  std::ostringstream out;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    for (int seed = 0; seed < seeds; ++seed) {
      RandomSource rng = RandomSource(0xbe9c).substream(family, sizes[si], seed);
      WeightedGraph g = gen::by_family(family, static_cast<VertexId>(sizes[si]), rng);
      const BottleneckTree tree = BottleneckTree::build(g);
      const double delta = std::max(delta_frac * tree.mst_diameter(), 1e-12);
      RandomSource run_rng = rng.substream("run");
      const auto start = std::chrono::steady_clock::now();
      const auto [part, trace] = ckr_partition_graph(g, delta, run_rng);
      const auto stop = std::chrono::steady_clock::now();
      BenchRecord rec;
      rec.family = family;
      rec.n = g.vertex_count();
      rec.m = static_cast<std::int64_t>(g.edge_count());
      rec.delta = delta;
      rec.seed = seed;
      rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      rec.relaxations = trace.relaxations;
      rec.queue_inserts = trace.queue_inserts;
      report.runs.push_back(rec);
      if (format == "table") {
        char line[256];
        std::snprintf(line, sizeof(line),
                      "%-6s n=%-8lld m=%-8lld seed=%-3d wall=%8.2fms relax=%-10llu "
                      "inserts=%-10llu\n",
                      family.c_str(), static_cast<long long>(rec.n),
                      static_cast<long long>(rec.m), seed, rec.wall_ms,
                      static_cast<unsigned long long>(rec.relaxations),
                      static_cast<unsigned long long>(rec.queue_inserts));
        out << line;
      } else {
        json j{{"type", "run"},
               {"family", rec.family},
               {"n", rec.n},
               {"m", rec.m},
               {"delta", rec.delta},
               {"seed", rec.seed},
               {"wall_ms", rec.wall_ms},
               {"relaxations", rec.relaxations},
               {"queue_inserts", rec.queue_inserts},
               {"relax_per_edge", rec.relax_per_edge()},
               {"inserts_per_vertex", rec.inserts_per_vertex()}};
        out << j.dump() << "\n";
      }
    }
  }
  if (sizes.size() >= 3) {
    const ScalingFit fit = bench_scaling(report);
    if (format == "table") {
      char line[256];
      std::snprintf(line, sizeof(line),
                    "fit coef=%.4f ratio_small=%.4f ratio_large=%.4f flag=%s\n",
                    fit.coefficient, fit.ratio_smallest, fit.ratio_largest,
                    fit.flagged ? "RAISED" : "clear");
      out << line;
    } else {
      json j{{"type", "scaling_fit"},
             {"coefficient", fit.coefficient},
             {"ratio_smallest", fit.ratio_smallest},
             {"ratio_largest", fit.ratio_largest},
             {"flagged", fit.flagged}};
      out << j.dump() << "\n";
    }
  }
  emit(out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Delta-bounded graph partitions, tree embeddings and distance oracles"};
  app.require_subcommand(1);

  std::string input, out_path, report_path, oracle_path, pairs_path, scales_path;
  std::string family = "cycle", sizes = "1k,10k,100k", format = "json";
  std::uint64_t seed = 0;
  double delta = 0.0, beta = 0.0, delta_frac = 0.25;
  int k = 1, seeds = 10, distortion = 0;

  auto* partition = app.add_subcommand("partition", "sample one bounded partition");
  partition->add_option("--input", input)->required();
  partition->add_option("--delta", delta)->required();
  partition->add_option("--seed", seed)->required();
  partition->add_option("--out", out_path);

  auto* hierarchy = app.add_subcommand("hierarchy", "sample a hierarchical partition");
  hierarchy->add_option("--input", input)->required();
  hierarchy->add_option("--seed", seed)->required();
  hierarchy->add_option("--out", out_path);
  hierarchy->add_option("--dump-scales", scales_path, "write the processed-scale table");

  auto* embed = app.add_subcommand("embed", "sample an ultrametric embedding");
  embed->add_option("--input", input)->required();
  embed->add_option("--seed", seed)->required();
  embed->add_option("--out", out_path);
  embed->add_option("--distortion", distortion, "also estimate per-pair stretch");
  embed->add_option("--report", report_path);
  embed->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  auto* oracle = app.add_subcommand("oracle", "approximate distance oracle");
  oracle->require_subcommand(1);
  auto* obuild = oracle->add_subcommand("build");
  obuild->add_option("--input", input)->required();
  obuild->add_option("--k", k)->required();
  obuild->add_option("--seed", seed)->required();
  obuild->add_option("--out", out_path)->required();
  obuild->add_option("--beta", beta, "expert override of 1/(32k)");
  auto* oquery = oracle->add_subcommand("query");
  oquery->add_option("--oracle", oracle_path)->required();
  oquery->add_option("--pairs", pairs_path)->required();
  oquery->add_option("--out", out_path);

  auto* spanner = app.add_subcommand("spanner", "randomized multiplicative spanner");
  spanner->add_option("--input", input)->required();
  spanner->add_option("--k", k)->required();
  spanner->add_option("--seed", seed)->required();
  spanner->add_option("--out", out_path);

  auto* bench = app.add_subcommand("bench", "work counters on generated graphs");
  bench->add_option("--family", family)
      ->check(CLI::IsMember({"cycle", "grid", "dreg", "geom"}));
  bench->add_option("--sizes", sizes);
  bench->add_option("--seeds", seeds);
  bench->add_option("--delta-frac", delta_frac);
  bench->add_option("--out", out_path);
  bench->add_option("--format", format)->check(CLI::IsMember({"json", "table"}));

  try {
    app.parse(argc, argv);
    if (partition->parsed()) return run_partition(input, delta, seed, out_path);
    if (hierarchy->parsed()) return run_hierarchy(input, seed, out_path, scales_path);
    if (embed->parsed())
      return run_embed(input, seed, out_path, distortion, report_path, format);
    if (oracle->parsed()) {
      if (obuild->parsed()) return run_oracle_build(input, k, seed, beta, out_path);
      return run_oracle_query(oracle_path, pairs_path, out_path);
    }
    if (spanner->parsed()) return run_spanner(input, k, seed, out_path);
    if (bench->parsed())
      return run_bench(family, sizes, seeds, delta_frac, out_path, format);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
