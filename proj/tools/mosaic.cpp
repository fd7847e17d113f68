// Command-line front end: generation, ingestion, analysis and
// comparison of 2-D point sets, with reproducible seeded runs.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mosaic/analysis.hpp"
#include "mosaic/ingest.hpp"
#include "mosaic/io.hpp"
#include "mosaic/rng.hpp"
#include "mosaic/samplers.hpp"

namespace fs = std::filesystem;
using namespace mosaic;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

SamplerKind kind_from(const std::string& name) {
  if (name == "white") return SamplerKind::WhiteNoise;
  if (name == "jittered") return SamplerKind::Jittered;
  if (name == "dart") return SamplerKind::DartThrowing;
  if (name == "poisson") return SamplerKind::FastPoissonDisk;
  if (name == "bluenoise") return SamplerKind::BlueNoiseOpt;
  throw ArgumentError("unknown sampler kind: " + name);
}

void write_manifest(const fs::path& out_path, const std::vector<std::string>& argv_tail,
                    std::uint64_t seed, const std::vector<fs::path>& outputs) {
  nlohmann::json manifest;
  manifest["command"] = argv_tail;
  manifest["seed"] = seed;
  manifest["versions"] = {{"toolkit", kVersion}, {"rng", Rng::kAlgorithm}};
  auto& outs = manifest["outputs"] = nlohmann::json::array();
  for (const auto& p : outputs) {
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(io::hash_file(p)));
    outs.push_back({{"path", p.string()}, {"fnv1a64", hex}});
  }
  std::ofstream f(out_path);
  f << manifest.dump(2) << "\n";
}

/// Loads a point-set file for analysis. Micrometer sets stay in native
/// units for NN statistics; callers normalize before PCF/spectrum work.
PointSet2D load_for_analysis(const fs::path& path, double scale) {
  if (scale != 1.0) return ingest::load_points(path, scale).pointset;
  return io::read_point_set(path).points;
}

PointSet2D unit_normalized(const PointSet2D& ps) {
  const auto& dom = ps.domain();
  if (dom.width == 1.0 && dom.height == 1.0) return ps;
  const double scale = std::max(dom.width, dom.height);
  std::vector<Vec2> pts;
  pts.reserve(ps.size());
  for (const auto& p : ps.points()) pts.push_back({p.x / scale, p.y / scale});
  Domain norm = dom;
  norm.width = dom.width / scale;
  norm.height = dom.height / scale;
  norm.unit = Unit::Normalized;
  return PointSet2D(std::move(pts), norm, ps.label());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2-D point-set generation and spatial-statistics toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  // ---- generate ----
  auto* gen = app.add_subcommand("generate", "generate a point set with a seeded sampler");
  std::string gen_kind;
  std::size_t gen_n = 0;
  std::uint64_t gen_seed = 0;
  double gen_min_dist = 0.0;
  std::size_t gen_iterations = 100;
  bool gen_round_up = false;
  std::string gen_out;
  gen->add_option("--kind", gen_kind, "white|jittered|dart|poisson|bluenoise")->required();
  gen->add_option("--n", gen_n, "target sample count")->required();
  gen->add_option("--seed", gen_seed, "seed for the pseudorandom stream")->required();
  gen->add_option("--min-dist", gen_min_dist, "Poisson-disk radius (normalized units)");
  gen->add_option("--iterations", gen_iterations, "relaxation cap for bluenoise");
  gen->add_flag("--round-up", gen_round_up, "jittered: round n up to a perfect square");
  gen->add_option("-o,--out", gen_out, "output point-set file")->required();

  // ---- analyze ----
  auto* ana = app.add_subcommand("analyze", "NN statistics table plus one PCF curve per input");
  std::vector<std::string> ana_inputs;
  std::string ana_mode = "calibrated";
  double ana_r_min = 0.0, ana_r_max = 4.0, ana_sigma = 0.25;
  int ana_bins = 200;
  double ana_scale = 1.0;
  std::string ana_out_dir = ".";
  ana->add_option("inputs", ana_inputs, "point-set files")->required();
  ana->add_option("--mode", ana_mode, "raw|calibrated");
  ana->add_option("--r-min", ana_r_min, "PCF lower radius (units of d_hex)");
  ana->add_option("--r-max", ana_r_max, "PCF upper radius (units of d_hex)");
  ana->add_option("--bins", ana_bins, "PCF bin count");
  ana->add_option("--sigma", ana_sigma, "PCF smoothing bandwidth");
  ana->add_option("--scale", ana_scale, "scale factor applied on load");
  ana->add_option("--out-dir", ana_out_dir, "directory for curve files");

  // ---- compare ----
  auto* cmp = app.add_subcommand("compare", "l-infinity PCF distance and SAME/DIFFERENT verdict");
  std::string cmp_a, cmp_b, cmp_mode = "calibrated";
  double cmp_r_min = 0.0, cmp_r_max = 4.0, cmp_sigma = 0.25;
  int cmp_bins = 200;
  cmp->add_option("a", cmp_a, "first point-set file")->required();
  cmp->add_option("b", cmp_b, "second point-set file")->required();
  cmp->add_option("--mode", cmp_mode, "raw|calibrated");
  cmp->add_option("--r-min", cmp_r_min, "PCF lower radius");
  cmp->add_option("--r-max", cmp_r_max, "PCF upper radius");
  cmp->add_option("--bins", cmp_bins, "PCF bin count");
  cmp->add_option("--sigma", cmp_sigma, "PCF smoothing bandwidth");

  // ---- spectrum ----
  auto* spec = app.add_subcommand("spectrum", "radially averaged power spectrum");
  std::string spec_in, spec_out;
  int spec_max_freq = 64;
  spec->add_option("input", spec_in, "point-set file")->required();
  spec->add_option("--max-freq", spec_max_freq, "frequency lattice half-width");
  spec->add_option("-o,--out", spec_out, "output spectrum file")->required();

  // ---- report ----
  auto* rep = app.add_subcommand("report", "regularity table (label, mu, sigma, RI)");
  std::vector<std::string> rep_inputs;
  double rep_scale = 1.0;
  rep->add_option("inputs", rep_inputs, "point-set files")->required();
  rep->add_option("--scale", rep_scale, "scale factor applied on load");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      SamplerConfig config;
      config.kind = kind_from(gen_kind);
      config.n = gen_n;
      config.seed = gen_seed;
      if (gen->count("--min-dist")) config.min_dist = gen_min_dist;
      config.iterations = gen_iterations;
      config.round_up_to_square = gen_round_up;

      const auto t0 = std::chrono::steady_clock::now();
      const SampleResult result = run_sampler(config);
      const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - t0)
                          .count();

      nlohmann::json extra = {{"kind", sampler_kind_name(config.kind)},
                              {"seed", config.seed},
                              {"rng", Rng::kAlgorithm}};
      if (config.min_dist) extra["min_dist"] = *config.min_dist;
      io::write_point_set(gen_out, result.points, extra);

      std::vector<std::string> args(argv + 1, argv + argc);
      write_manifest(fs::path(gen_out).string() + ".manifest.json", args, config.seed,
                     {gen_out});
      std::cout << "wrote " << gen_out << " n=" << result.points.size()
                << (result.saturated ? " (saturated)" : "") << " runtime_ms=" << ms << "\n";
      return kExitOk;
    }

    if (ana->parsed()) {
      PcfParams params{ana_r_min, ana_r_max, ana_bins, ana_sigma,
                       ana_mode == "raw" ? PcfMode::PaperRaw : PcfMode::Calibrated};
      struct Row {
        std::string label;
        bool ok;
        double mu, sigma, ri;
        std::string error;
      };
      std::vector<Row> rows;
      std::size_t failures = 0;
      for (const auto& input : ana_inputs) {
        Row row{fs::path(input).stem().string(), false, 0, 0, 0, {}};
        try {
          const PointSet2D ps = load_for_analysis(input, ana_scale);
          row.label = ps.label();
          const NnStats stats = nn_stats(ps);
          row.mu = stats.mu;
          row.sigma = stats.sigma;
          row.ri = stats.ri;
          row.ok = true;
          const auto curve = pcf(unit_normalized(ps), params);
          const fs::path curve_path =
              fs::path(ana_out_dir) / (fs::path(input).stem().string() + ".pcf.txt");
          io::write_curve(curve_path, curve, ps.label());
        } catch (const Error& e) {
          row.error = e.what();
          ++failures;
        }
        rows.push_back(std::move(row));
      }
      std::cout << "label\tmu\tsigma\tri\tstatus\n";
      std::cout.precision(9);
      for (const auto& row : rows) {
        if (row.ok)
          std::cout << row.label << "\t" << row.mu << "\t" << row.sigma << "\t" << row.ri
                    << "\tok\n";
        else
          std::cout << row.label << "\t-\t-\t-\tfailed: " << row.error << "\n";
      }
      return failures == ana_inputs.size() ? kExitData : kExitOk;
    }

    if (cmp->parsed()) {
      PcfParams params{cmp_r_min, cmp_r_max, cmp_bins, cmp_sigma,
                       cmp_mode == "raw" ? PcfMode::PaperRaw : PcfMode::Calibrated};
      const auto a = pcf(unit_normalized(io::read_point_set(cmp_a).points), params);
      const auto b = pcf(unit_normalized(io::read_point_set(cmp_b).points), params);
      const double linf = pcf_distance(a, b);
      std::cout.precision(9);
      std::cout << "linf " << linf << "\n"
                << "verdict " << (linf < 0.1 ? "SAME" : "DIFFERENT") << "\n";
      return kExitOk;
    }

    if (spec->parsed()) {
      const auto loaded = io::read_point_set(spec_in);
      const auto spectrum = radial_spectrum(unit_normalized(loaded.points), spec_max_freq);
      io::write_spectrum(spec_out, spectrum, loaded.points.label(), loaded.points.size());
      std::cout << "wrote " << spec_out << "\n";
      return kExitOk;
    }

    if (rep->parsed()) {
      std::vector<PointSet2D> sets;
      std::vector<std::string> load_errors;
      for (const auto& input : rep_inputs) {
        try {
          sets.push_back(load_for_analysis(input, rep_scale));
        } catch (const Error& e) {
          load_errors.push_back(fs::path(input).stem().string() + "\t-\t-\t-\tfailed: " +
                                e.what());
        }
      }
      std::vector<const PointSet2D*> ptrs;
      for (const auto& ps : sets) ptrs.push_back(&ps);
      std::cout << "label\tmu\tsigma\tri\tstatus\n";
      std::cout.precision(9);
      for (const auto& row : regularity_report(ptrs)) {
        if (row.ok)
          std::cout << row.label << "\t" << row.mu << "\t" << row.sigma << "\t" << row.ri
                    << "\tok\n";
        else
          std::cout << row.label << "\t-\t-\t-\tfailed: " << row.error << "\n";
      }
      for (const auto& line : load_errors) std::cout << line << "\n";
      return load_errors.size() == rep_inputs.size() ? kExitData : kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
