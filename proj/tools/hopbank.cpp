// hopbank: train banks of Hopfield associative memories, corrupt binary
// images, and denoise them by probing every network and finishing on the
// one whose energy drops fastest.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hopbank/bank_io.hpp"
#include "hopbank/bench.hpp"
#include "hopbank/errors.hpp"
#include "hopbank/image.hpp"
#include "hopbank/noise.hpp"
#include "hopbank/pbm.hpp"
#include "hopbank/rng.hpp"
#include "hopbank/selector.hpp"
#include "hopbank/synth.hpp"
#include "hopbank/training.hpp"

namespace {

using namespace hopbank;

struct PatternSource {
  std::vector<BinaryImage> images;
  std::vector<std::string> ids;
};

// --patterns accepts a directory of .pbm files or a synthetic spec:
//   synthetic:count=120,rows=21,cols=21[,density=0.5][,finders=0|1][,seed=N]
PatternSource load_patterns(const std::string& spec) {
  PatternSource source;
  if (spec.rfind("synthetic:", 0) == 0) {
    std::map<std::string, std::string> kv;
    std::istringstream in(spec.substr(10));
    std::string item;
    while (std::getline(in, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw ParseError("synthetic spec entry '" + item + "' needs key=value");
      }
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    const auto get = [&](const char* key, const char* fallback) -> std::string {
      const auto it = kv.find(key);
      return it == kv.end() ? fallback : it->second;
    };
    std::uint32_t count = 0, rows = 0, cols = 0;
    double density = 0.5;
    std::uint64_t seed = 1;
    bool finders = false;
    try {
      count = static_cast<std::uint32_t>(std::stoul(get("count", "0")));
      rows = static_cast<std::uint32_t>(std::stoul(get("rows", "0")));
      cols = static_cast<std::uint32_t>(std::stoul(get("cols", "0")));
      density = std::stod(get("density", "0.5"));
      finders = get("finders", "0") != "0";
      seed = std::stoull(get("seed", "1"));
    } catch (const std::exception&) {
      throw ParseError("bad number in synthetic spec '" + spec + "'");
    }
    if (count == 0 || rows == 0 || cols == 0) {
      throw ParseError("synthetic spec needs count, rows and cols");
    }
    for (std::uint32_t p = 0; p < count; ++p) {
      source.images.push_back(synth_pattern(rows, cols, density, finders, derive_seed(seed, p)));
      char buf[16];
      std::snprintf(buf, sizeof(buf), "p%05u", p);
      source.ids.push_back(buf);
    }
    return source;
  }

  const std::filesystem::path dir(spec);
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("'" + spec + "' is neither a directory nor a synthetic: spec");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pbm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError("no .pbm files in '" + spec + "'");
  for (const auto& file : files) {
    source.images.push_back(read_pbm(file));
    source.ids.push_back(file.filename().string());
  }
  return source;
}

int cmd_train(const std::string& patterns, std::uint32_t k, const std::string& rule_text,
              std::uint64_t seed, const std::string& out_path) {
  const PatternSource source = load_patterns(patterns);
  const std::uint32_t rows = source.images.front().rows();
  const std::uint32_t cols = source.images.front().cols();
  for (const BinaryImage& img : source.images) {
    if (img.rows() != rows || img.cols() != cols) {
      throw DimensionError("patterns disagree on geometry: " + std::to_string(img.rows()) + "x" +
                           std::to_string(img.cols()) + " vs " + std::to_string(rows) + "x" +
                           std::to_string(cols));
    }
  }

  TrainingSet ts;
  ts.ids = source.ids;
  ts.patterns.reserve(source.images.size());
  for (const BinaryImage& img : source.images) {
    ts.patterns.push_back(to_bipolar(vectorize(img)));
  }

  const auto start = std::chrono::steady_clock::now();
  const NetworkBank bank =
      train_bank(ts, BankGeometry{rows, cols}, k, parse_rule(rule_text), seed);
  const auto stop = std::chrono::steady_clock::now();

  save_bank(bank, out_path);

  std::vector<std::uint32_t> load(bank.k(), 0);
  for (const auto& [id, index] : bank.assignment()) ++load[index];
  for (std::uint32_t net = 0; net < bank.k(); ++net) {
    std::cout << "network " << net << ": " << load[net] << " patterns\n";
  }
  std::cout << "trained " << bank.k() << " networks of n = " << bank.n() << " in "
            << std::chrono::duration<double>(stop - start).count() << " s\n"
            << "wrote " << out_path << "\n";
  return 0;
}

int cmd_corrupt(const std::string& in_path, const std::string& noise_text, std::uint64_t seed,
                const std::string& out_path) {
  const BinaryImage input = read_pbm(in_path);
  const BinaryImage output = apply_noise(input, parse_noise_spec(noise_text), seed);
  write_pbm(output, out_path);
  std::cout << "flipped " << hamming(input, output) << " of " << input.size() << " pixels\n"
            << "wrote " << out_path << "\n";
  return 0;
}

std::string denoise_report_text(const DenoiseReport& report) {
  std::ostringstream out;
  char buf[160];
  out << "winner: " << report.selection.winner << "\n"
      << "tie_broken: " << (report.selection.tie_broken ? "true" : "false") << "\n"
      << "probe_updates_per_network: " << report.selection.probe_updates << "\n"
      << "final_node_updates: " << report.final_stats.node_updates << "\n"
      << "final_flips: " << report.final_stats.flips << "\n"
      << "converged: " << (report.final_stats.converged ? "true" : "false") << "\n";
  std::snprintf(buf, sizeof(buf), "initial_energy: %.9g\nfinal_energy: %.9g\n",
                report.final_stats.initial_energy, report.final_stats.final_energy);
  out << buf;
  out << "matched_stored_id: "
      << (report.matched_stored_id ? *report.matched_stored_id : std::string("-")) << "\n";
  if (report.winner_below_threshold) out << "warning: winner delta below threshold\n";
  out << "network  E_k            E'_k           delta_k\n";
  for (const NetworkProbe& probe : report.selection.probes) {
    std::snprintf(buf, sizeof(buf), "%-8u %-14.9g %-14.9g %-14.9g\n", probe.index,
                  probe.energy_before, probe.energy_after, probe.delta);
    out << buf;
  }
  return out.str();
}

int cmd_denoise(const std::string& bank_path, const std::string& in_path,
                std::uint64_t probe_updates, std::uint64_t max_updates, std::uint64_t seed,
                const std::string& out_path, const std::string& report_path, double min_delta,
                bool min_delta_set) {
  const NetworkBank bank = load_bank(bank_path);
  const BinaryImage noisy = read_pbm(in_path);

  DenoiseOptions options;
  options.probe_updates = probe_updates;
  options.max_updates = max_updates;
  options.seed = seed;
  if (min_delta_set) options.min_winner_delta = min_delta;

  const DenoiseReport report = denoise(bank, noisy, options);
  write_pbm(report.output, out_path);

  const std::string text = denoise_report_text(report);
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + report_path + "' for writing");
    out << text;
  }
  std::cout << text << "wrote " << out_path << "\n";
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_path) {
  std::ifstream in(config_path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + config_path + "' for reading");
  std::stringstream buffer;
  buffer << in.rdbuf();

  const std::vector<ExperimentConfig> configs = parse_bench_config(buffer.str());
  std::vector<BenchReport> reports;
  reports.reserve(configs.size());
  for (const ExperimentConfig& cfg : configs) {
    reports.push_back(run_experiment(cfg));
    std::cout << format_summary(reports.back());
  }

  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + out_path + "' for writing");
  write_csv(out, reports);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parallel Hopfield-network associative memory for binary image denoising"};
  app.require_subcommand(1);

  std::string patterns, rule = "paper", bank_path, in_path, out_path, report_path, noise_text,
              config_path;
  std::uint32_t k = 1;
  std::uint64_t seed = 1, probe_updates = kDefaultProbeUpdates,
                max_updates = kDefaultMaxUpdates;
  double min_delta = 0.0;

  CLI::App* train = app.add_subcommand("train", "train a bank of networks on patterns");
  train->add_option("--patterns", patterns, "pattern directory or synthetic:... spec")
      ->required();
  train->add_option("--k", k, "number of parallel networks")->required();
  train->add_option("--rule", rule, "paper|projection|hebbian");
  train->add_option("--seed", seed, "partition seed")->required();
  train->add_option("--out", out_path, "output bank file")->required();

  CLI::App* corrupt = app.add_subcommand("corrupt", "apply seeded noise to a PBM image");
  corrupt->add_option("--in", in_path, "input image (P1/P4 PBM)")->required();
  corrupt
      ->add_option("--noise", noise_text,
                   "gaussian:<var>|saltpepper:<d>|corner-sp:<d>|corner-fill:<0|1>")
      ->required();
  corrupt->add_option("--seed", seed, "noise seed")->required();
  corrupt->add_option("--out", out_path, "output image")->required();

  CLI::App* denoise_cmd = app.add_subcommand("denoise", "recover the stored pattern");
  denoise_cmd->add_option("--bank", bank_path, "trained bank file")->required();
  denoise_cmd->add_option("--in", in_path, "noisy image")->required();
  denoise_cmd->add_option("--probe", probe_updates, "probe updates per network");
  denoise_cmd->add_option("--max-updates", max_updates, "budget for the final run");
  denoise_cmd->add_option("--seed", seed, "dynamics seed")->required();
  denoise_cmd->add_option("--out", out_path, "denoised image")->required();
  denoise_cmd->add_option("--report", report_path, "write the selection report here");
  CLI::Option* min_delta_opt =
      denoise_cmd->add_option("--min-delta", min_delta, "flag winners below this energy drop");

  CLI::App* bench = app.add_subcommand("bench", "run a seeded denoising experiment");
  bench->add_option("--config", config_path, "key = value experiment config")->required();
  bench->add_option("--out", out_path, "output CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(train)) {
      return cmd_train(patterns, k, rule, seed, out_path);
    }
    if (app.got_subcommand(corrupt)) {
      return cmd_corrupt(in_path, noise_text, seed, out_path);
    }
    if (app.got_subcommand(denoise_cmd)) {
      return cmd_denoise(bank_path, in_path, probe_updates, max_updates, seed, out_path,
                         report_path, min_delta, min_delta_opt->count() > 0);
    }
    if (app.got_subcommand(bench)) {
      return cmd_bench(config_path, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
