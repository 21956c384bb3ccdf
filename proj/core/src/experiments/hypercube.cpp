#include "fairmon/experiments/hypercube.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "fairmon/bse/spec.hpp"
#include "fairmon/experiments/manifest.hpp"
#include "fairmon/experiments/schedule.hpp"
#include "fairmon/monitor/monitor.hpp"
#include "fairmon/pomc/diagnostics.hpp"
#include "fairmon/pomc/models.hpp"
#include "fairmon/pomc/oracle.hpp"
#include "fairmon/pomc/sampler.hpp"
#include "fairmon/util/format.hpp"

namespace fairmon::experiments {

const char kPsiDpSpecText[] =
    "alphabet: a b\n"
    "delta: 0.05\n"
    "taumix: 7.45\n"
    "quant: P(\"a\" | \"a\") - P(\"b\" | \"b\")\n";

const char kPsiTdpSpecText[] =
    "alphabet: a b\n"
    "delta: 0.05\n"
    "taumix: 7.45\n"
    "quant: P(\"a a\") - P(\"b b\")\n";

HypercubeConfig HypercubeConfig::from_config(const Config& config) {
  config.restrict_keys({"runs", "length", "delta", "tau_low", "tau_high",
                        "seed", "threads"});
  HypercubeConfig out;
  out.runs = config.get_int("runs", out.runs);
  out.length = config.get_uint("length", out.length);
  out.delta = config.get_double("delta", out.delta);
  out.tau_low = config.get_double("tau_low", out.tau_low);
  out.tau_high = config.get_double("tau_high", out.tau_high);
  out.seed = config.get_uint("seed", out.seed);
  out.threads = config.get_int("threads", out.threads);
  if (out.runs < 1) throw ConfigError("runs must be positive");
  if (out.length < 2) throw ConfigError("length must be at least 2");
  return out;
}

namespace {

// Checkpoint series of one monitor within one run.
struct MonitorTrace {
  std::vector<double> point, lo, hi, epsilon;
  bool final_covers = false;
};

struct RunTraces {
  MonitorTrace traces[4];  // psi_dp x {low, high}, psi_tdp x {low, high}
};

}  // namespace

HypercubeResult run_hypercube(const HypercubeConfig& config) {
  const auto model = pomc::hypercube_model(3);
  const auto diag = pomc::validate(model);
  const auto& stationary = diag.stationary;

  const auto psi_dp_doc = bse::parse_spec(kPsiDpSpecText);
  const auto psi_tdp_doc = bse::parse_spec(kPsiTdpSpecText);
  const bse::SpecDocument* docs[2] = {&psi_dp_doc, &psi_tdp_doc};

  // Monitors consume symbols in document id space; align the model once.
  const auto aligned = pomc::relabel_to(model, psi_dp_doc.alphabet);

  double oracles[2];
  for (int d = 0; d < 2; ++d) {
    oracles[d] =
        pomc::exact_expr_semantics(aligned, stationary, *docs[d]->quant_root);
  }

  const auto checkpoints = checkpoint_schedule(config.length);
  const double taus[2] = {config.tau_low, config.tau_high};

  std::vector<RunTraces> runs(config.runs);
  auto execute_run = [&](int run) {
    pomc::PathSampler sampler(aligned, stationary,
                              pomc::derive_run_seed(config.seed, run));
    std::vector<monitor::Monitor> monitors;
    monitors.reserve(4);
    for (int d = 0; d < 2; ++d) {
      for (int b = 0; b < 2; ++b) {
        monitor::MonitorOptions opts;
        opts.delta = config.delta;
        opts.tau_mix = taus[b];
        monitors.emplace_back(*docs[d], opts);
      }
    }
    size_t next_checkpoint = 0;
    for (std::uint64_t t = 1; t <= config.length; ++t) {
      const bse::Symbol symbol = sampler.next_symbol();
      monitor::MonitorOutput outs[4];
      for (int m = 0; m < 4; ++m) outs[m] = monitors[m].next(symbol);
      if (next_checkpoint < checkpoints.size() &&
          checkpoints[next_checkpoint] == t) {
        for (int m = 0; m < 4; ++m) {
          if (outs[m].inconclusive) continue;
          auto& trace = runs[run].traces[m];
          trace.point.push_back(outs[m].point);
          trace.lo.push_back(outs[m].interval.lo);
          trace.hi.push_back(outs[m].interval.hi);
          trace.epsilon.push_back(outs[m].epsilon);
        }
        ++next_checkpoint;
      }
      if (t == config.length) {
        for (int m = 0; m < 4; ++m) {
          runs[run].traces[m].final_covers =
              !outs[m].inconclusive &&
              outs[m].interval.contains(oracles[m / 2]);
        }
      }
    }
  };

  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  threads = std::min(threads, config.runs);
  if (threads == 1) {
    for (int run = 0; run < config.runs; ++run) execute_run(run);
  } else {
    std::vector<std::thread> pool;
    std::atomic<int> next_run{0};
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (int run = next_run.fetch_add(1); run < config.runs;
             run = next_run.fetch_add(1)) {
          execute_run(run);
        }
      });
    }
    for (auto& worker : pool) worker.join();
  }

  // Only checkpoints past every atom's warm-up appear in traces; recompute
  // which ones those are (all four monitors share the same warm-up).
  std::vector<std::uint64_t> warmed;
  {
    monitor::Monitor probe(psi_dp_doc, {});
    std::uint64_t warm_at = 0;
    for (int i = 0; i < probe.atom_count(); ++i) {
      warm_at = std::max<std::uint64_t>(
          warm_at, static_cast<std::uint64_t>(
                       probe.estimator(i).atom().arity()));
    }
    for (auto t : checkpoints) {
      if (t >= warm_at) warmed.push_back(t);
    }
  }

  HypercubeResult result;
  result.config = config;
  HypercubeSpecResult* specs[2] = {&result.psi_dp, &result.psi_tdp};
  specs[0]->name = "psi_dp";
  specs[1]->name = "psi_tdp";
  for (int d = 0; d < 2; ++d) {
    auto& spec = *specs[d];
    spec.oracle = oracles[d];
    for (size_t c = 0; c < warmed.size(); ++c) {
      for (int b = 0; b < 2; ++b) {
        const int m = 2 * d + b;
        HypercubeSummaryRow row;
        row.t = warmed[c];
        row.tau_mix = taus[b];
        row.point_min = row.point_max = runs[0].traces[m].point[c];
        row.lo_env = runs[0].traces[m].lo[c];
        row.hi_env = runs[0].traces[m].hi[c];
        row.epsilon = runs[0].traces[m].epsilon[c];
        for (int run = 1; run < config.runs; ++run) {
          const auto& trace = runs[run].traces[m];
          row.point_min = std::min(row.point_min, trace.point[c]);
          row.point_max = std::max(row.point_max, trace.point[c]);
          row.lo_env = std::min(row.lo_env, trace.lo[c]);
          row.hi_env = std::max(row.hi_env, trace.hi[c]);
          row.epsilon = std::max(row.epsilon, trace.epsilon[c]);
        }
        spec.rows.push_back(row);
      }
    }
    for (int run = 0; run < config.runs; ++run) {
      if (runs[run].traces[2 * d].final_covers) ++spec.coverage_tau_low;
      if (runs[run].traces[2 * d + 1].final_covers) ++spec.coverage_tau_high;
    }
  }
  return result;
}

namespace {

void write_summary_csv(const std::filesystem::path& path,
                       const HypercubeSpecResult& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "t,tau_mix,point_min,point_max,lo_env,hi_env,epsilon\n";
  for (const auto& row : spec.rows) {
    out << row.t << ',' << util::format_double(row.tau_mix) << ','
        << util::format_double(row.point_min) << ','
        << util::format_double(row.point_max) << ','
        << util::format_double(row.lo_env) << ','
        << util::format_double(row.hi_env) << ','
        << util::format_double(row.epsilon) << "\n";
  }
}

}  // namespace

std::vector<std::string> write_hypercube_outputs(
    const HypercubeResult& result, const Config& config_echo,
    const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  write_summary_csv(out_dir / "psi_dp_summary.csv", result.psi_dp);
  write_summary_csv(out_dir / "psi_tdp_summary.csv", result.psi_tdp);
  std::vector<std::string> files = {"psi_dp_summary.csv",
                                    "psi_tdp_summary.csv"};
  write_manifest(out_dir, "hypercube", result.config.seed, config_echo,
                 files);
  files.push_back("manifest.json");
  return files;
}

}  // namespace fairmon::experiments
