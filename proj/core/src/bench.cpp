#include "hopbank/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

#include "hopbank/errors.hpp"
#include "hopbank/noise.hpp"
#include "hopbank/rng.hpp"
#include "hopbank/selector.hpp"
#include "hopbank/synth.hpp"
#include "parallel.hpp"

namespace hopbank {

namespace {

constexpr std::uint64_t kPatternStream = 0x706174ULL;  // synthetic pattern draws
constexpr std::uint64_t kTrainStream = 0x747261696eULL;
constexpr std::uint64_t kTrialStream = 0x747269616cULL;

std::string pattern_id(std::uint32_t index) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "p%05u", index);
  return buf;
}

// Nearest-rank percentile over an ascending sample.
double percentile(const std::vector<double>& sorted_ms, double q) {
  if (sorted_ms.empty()) return 0.0;
  const std::size_t rank =
      static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted_ms.size())));
  return sorted_ms[rank == 0 ? 0 : rank - 1];
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

NoiseSpec parse_noise_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParseError("noise spec '" + text + "' needs kind:parameter");
  }
  const std::string kind = text.substr(0, colon);
  const std::string param_text = text.substr(colon + 1);
  double param = 0.0;
  try {
    std::size_t used = 0;
    param = std::stod(param_text, &used);
    if (used != param_text.size()) throw std::invalid_argument("trailing junk");
  } catch (const std::exception&) {
    throw ParseError("bad noise parameter '" + param_text + "' in '" + text + "'");
  }

  NoiseSpec spec;
  spec.param = param;
  if (kind == "gaussian") {
    spec.kind = NoiseSpec::Kind::Gaussian;
    if (!(param > 0.0)) throw ParseError("gaussian variance must be positive");
  } else if (kind == "saltpepper") {
    spec.kind = NoiseSpec::Kind::SaltPepper;
    if (!(param >= 0.0 && param <= 1.0)) throw ParseError("saltpepper fraction must be in [0,1]");
  } else if (kind == "corner-sp") {
    spec.kind = NoiseSpec::Kind::CornerSaltPepper;
    if (!(param >= 0.0 && param <= 1.0)) throw ParseError("corner-sp fraction must be in [0,1]");
  } else if (kind == "corner-fill") {
    spec.kind = NoiseSpec::Kind::CornerFill;
    if (param != 0.0 && param != 1.0) throw ParseError("corner-fill value must be 0 or 1");
  } else {
    throw ParseError("unknown noise kind '" + kind +
                     "', expected gaussian|saltpepper|corner-sp|corner-fill");
  }
  return spec;
}

std::string to_string(const NoiseSpec& spec) {
  char buf[48];
  switch (spec.kind) {
    case NoiseSpec::Kind::Gaussian:
      std::snprintf(buf, sizeof(buf), "gaussian:%g", spec.param);
      break;
    case NoiseSpec::Kind::SaltPepper:
      std::snprintf(buf, sizeof(buf), "saltpepper:%g", spec.param);
      break;
    case NoiseSpec::Kind::CornerSaltPepper:
      std::snprintf(buf, sizeof(buf), "corner-sp:%g", spec.param);
      break;
    case NoiseSpec::Kind::CornerFill:
      std::snprintf(buf, sizeof(buf), "corner-fill:%g", spec.param);
      break;
  }
  return buf;
}

BinaryImage apply_noise(const BinaryImage& img, const NoiseSpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case NoiseSpec::Kind::Gaussian:
      return gaussian_noise(img, spec.param, seed);
    case NoiseSpec::Kind::SaltPepper:
      return salt_pepper(img, spec.param, seed);
    case NoiseSpec::Kind::CornerSaltPepper:
      return region_salt_pepper(img, default_corner_region(img.rows(), img.cols()), spec.param,
                                seed);
    case NoiseSpec::Kind::CornerFill:
      return region_fill(img, default_corner_region(img.rows(), img.cols()),
                         spec.param != 0.0 ? 1 : 0);
  }
  throw ParameterError("unknown noise kind");
}

void ExperimentConfig::validate() const {
  if (rows == 0 || cols == 0) throw ParameterError("geometry must be positive");
  if (k == 0) throw ParameterError("k must be positive");
  if (patterns_per_network == 0) throw ParameterError("patterns_per_network must be positive");
  if (probe_updates == 0) throw ParameterError("probe_updates must be positive");
  if (max_updates < n()) throw ParameterError("max_updates must cover one sweep");
}

namespace {

struct Workbench {
  TrainingSet corpus;
  std::vector<BinaryImage> images;
  NetworkBank bank;
};

// Synthetic corpus and trained bank shared by every trial of a run.
Workbench make_workbench(const ExperimentConfig& cfg) {
  const std::uint32_t total = cfg.k * cfg.patterns_per_network;
  TrainingSet corpus;
  corpus.patterns.reserve(total);
  corpus.ids.reserve(total);
  std::vector<BinaryImage> images;
  images.reserve(total);
  for (std::uint32_t p = 0; p < total; ++p) {
    images.push_back(synth_pattern(cfg.rows, cfg.cols, 0.5, false,
                                   derive_seed(cfg.seed ^ kPatternStream, p)));
    corpus.patterns.push_back(to_bipolar(vectorize(images.back())));
    corpus.ids.push_back(pattern_id(p));
  }
  NetworkBank bank = train_bank(corpus, BankGeometry{cfg.rows, cfg.cols}, cfg.k, cfg.rule,
                                derive_seed(cfg.seed, kTrainStream));
  return Workbench{std::move(corpus), std::move(images), std::move(bank)};
}

}  // namespace

BenchReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Workbench bench = make_workbench(cfg);

  BenchReport report;
  report.config = cfg;
  report.trials.resize(cfg.trials);

  detail::parallel_for(cfg.trials, [&](std::size_t t) {
    const std::uint64_t trial_seed = derive_seed(cfg.seed ^ kTrialStream, t);
    Rng rng(trial_seed);
    const std::uint32_t pick =
        static_cast<std::uint32_t>(rng.uniform_below(bench.corpus.size()));

    const BinaryImage noisy =
        apply_noise(bench.images[pick], cfg.noise, derive_seed(trial_seed, 1));

    DenoiseOptions options;
    options.probe_updates = cfg.probe_updates;
    options.max_updates = cfg.max_updates;
    options.seed = derive_seed(trial_seed, 2);

    const auto start = std::chrono::steady_clock::now();
    const DenoiseReport result = denoise(bench.bank, noisy, options, &bench.corpus);
    const auto stop = std::chrono::steady_clock::now();

    TrialRecord& rec = report.trials[t];
    rec.trial = static_cast<std::uint32_t>(t);
    rec.true_network = bench.bank.assignment().at(bench.corpus.ids[pick]);
    rec.selected_network = result.selection.winner;
    rec.selection_correct = rec.selected_network == rec.true_network;
    rec.hamming_distance = hamming(result.output, bench.images[pick]);
    rec.exact_match = rec.hamming_distance == 0;
    rec.node_updates =
        cfg.probe_updates * bench.bank.k() + result.final_stats.node_updates;
    rec.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  });

  BenchAggregates& agg = report.aggregates;
  agg.bank_weight_bytes = bench.bank.weight_bytes();
  agg.merged_equivalent_bytes = static_cast<std::uint64_t>(cfg.k) * cfg.n() * cfg.k * cfg.n() *
                                sizeof(double);
  if (cfg.trials > 0) {
    agg.valid = true;
    double correct = 0, exact = 0, ham = 0;
    std::vector<double> times;
    times.reserve(cfg.trials);
    for (const TrialRecord& rec : report.trials) {
      correct += rec.selection_correct;
      exact += rec.exact_match;
      ham += static_cast<double>(rec.hamming_distance);
      times.push_back(rec.wall_ms);
    }
    std::sort(times.begin(), times.end());
    agg.selection_accuracy = correct / cfg.trials;
    agg.exact_recovery_rate = exact / cfg.trials;
    agg.mean_hamming = ham / cfg.trials;
    agg.p50_ms = percentile(times, 0.50);
    agg.p95_ms = percentile(times, 0.95);
  }
  return report;
}

std::vector<ExperimentConfig> parse_bench_config(const std::string& text) {
  std::map<std::string, std::string> values;
  std::istringstream in(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError("line " + std::to_string(line_number) + ": empty key or value");
    }
    if (!values.emplace(key, value).second) {
      throw ParseError("line " + std::to_string(line_number) + ": duplicate key '" + key + "'");
    }
  }

  const auto require = [&](const std::string& key) -> const std::string& {
    const auto it = values.find(key);
    if (it == values.end()) throw ParseError("missing required key '" + key + "'");
    return it->second;
  };
  const auto to_u64 = [](const std::string& key, const std::string& value) -> std::uint64_t {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(value, &used);
      if (used != value.size()) throw std::invalid_argument("trailing junk");
      return v;
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + value + "' for key '" + key + "'");
    }
  };
  const auto to_u32 = [&](const std::string& key, const std::string& value) -> std::uint32_t {
    const std::uint64_t v = to_u64(key, value);
    if (v > 0xffffffffULL) throw ParseError("value out of range for key '" + key + "'");
    return static_cast<std::uint32_t>(v);
  };

  ExperimentConfig base;
  base.rows = to_u32("rows", require("rows"));
  base.cols = to_u32("cols", require("cols"));
  base.patterns_per_network = to_u32("patterns_per_network", require("patterns_per_network"));
  base.rule = parse_rule(require("rule"));
  base.noise = parse_noise_spec(require("noise"));
  base.trials = to_u32("trials", require("trials"));
  base.probe_updates = to_u64("probe_updates", require("probe_updates"));
  base.max_updates = to_u64("max_updates", require("max_updates"));
  base.seed = to_u64("seed", require("seed"));

  // k accepts a comma-separated sweep; every other key is scalar.
  std::vector<ExperimentConfig> configs;
  std::istringstream klist(require("k"));
  std::string item;
  while (std::getline(klist, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ParseError("empty entry in k list");
    ExperimentConfig cfg = base;
    cfg.k = to_u32("k", item);
    cfg.validate();
    configs.push_back(cfg);
  }
  if (configs.empty()) throw ParseError("k list is empty");
  return configs;
}

void write_csv(std::ostream& out, std::span<const BenchReport> reports) {
  out << "k,trial,true_network,selected_network,selection_correct,exact_match,"
         "hamming,node_updates\n";
  char buf[160];
  for (const BenchReport& report : reports) {
    for (const TrialRecord& rec : report.trials) {
      std::snprintf(buf, sizeof(buf), "%u,%u,%u,%u,%d,%d,%llu,%llu\n", report.config.k, rec.trial,
                    rec.true_network, rec.selected_network, rec.selection_correct ? 1 : 0,
                    rec.exact_match ? 1 : 0,
                    static_cast<unsigned long long>(rec.hamming_distance),
                    static_cast<unsigned long long>(rec.node_updates));
      out << buf;
    }
    const BenchAggregates& agg = report.aggregates;
    out << "# aggregate k=" << report.config.k << " rule=" << rule_name(report.config.rule)
        << " noise=" << to_string(report.config.noise) << " trials=" << report.config.trials
        << "\n";
    if (agg.valid) {
      std::snprintf(buf, sizeof(buf),
                    "# selection_accuracy=%.6f exact_recovery_rate=%.6f mean_hamming=%.6f\n",
                    agg.selection_accuracy, agg.exact_recovery_rate, agg.mean_hamming);
      out << buf;
    } else {
      out << "# aggregates undefined: no trials\n";
    }
    std::snprintf(buf, sizeof(buf), "# bank_weight_bytes=%llu merged_equivalent_bytes=%llu\n",
                  static_cast<unsigned long long>(agg.bank_weight_bytes),
                  static_cast<unsigned long long>(agg.merged_equivalent_bytes));
    out << buf;
  }
}

std::string format_summary(const BenchReport& report) {
  std::ostringstream out;
  const BenchAggregates& agg = report.aggregates;
  out << "k=" << report.config.k << " rule=" << rule_name(report.config.rule)
      << " noise=" << to_string(report.config.noise) << " trials=" << report.config.trials
      << "\n";
  if (agg.valid) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "  selection accuracy  %.1f%%\n"
                  "  exact recovery      %.1f%%\n"
                  "  mean hamming        %.3f\n"
                  "  latency p50/p95     %.2f / %.2f ms\n",
                  100.0 * agg.selection_accuracy, 100.0 * agg.exact_recovery_rate,
                  agg.mean_hamming, agg.p50_ms, agg.p95_ms);
    out << buf;
  } else {
    out << "  no trials; aggregates undefined\n";
  }
  out << "  bank weights        " << agg.bank_weight_bytes << " bytes ("
      << agg.merged_equivalent_bytes / std::max<std::uint64_t>(agg.bank_weight_bytes, 1)
      << "x smaller than one merged network)\n";
  return out.str();
}

}  // namespace hopbank
