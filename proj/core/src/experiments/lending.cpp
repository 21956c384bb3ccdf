#include "fairmon/experiments/lending.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "fairmon/experiments/manifest.hpp"
#include "fairmon/experiments/schedule.hpp"
#include "fairmon/monitor/monitor.hpp"
#include "fairmon/pomc/diagnostics.hpp"
#include "fairmon/pomc/models.hpp"
#include "fairmon/pomc/oracle.hpp"
#include "fairmon/pomc/sampler.hpp"
#include "fairmon/util/format.hpp"

namespace fairmon::experiments {

const char kPhiDpSpecText[] =
    "alphabet: S A B Y N\n"
    "delta: 0.05\n"
    "taumix: 170589.78\n"
    "quant: P(\"Y\" | \"A\") - P(\"Y\" | \"B\")\n";

const char kPhiTdpSpecText[] =
    "alphabet: S A B Y N\n"
    "delta: 0.05\n"
    "taumix: 170589.78\n"
    "quant: P(\"A Y\") - P(\"B Y\")\n";

LendingConfig LendingConfig::from_config(const Config& config) {
  config.restrict_keys({"length", "delta", "tau_mix", "projection_horizon",
                        "seed", "start_self_loop"});
  LendingConfig out;
  out.length = config.get_uint("length", out.length);
  out.delta = config.get_double("delta", out.delta);
  out.tau_mix = config.get_double("tau_mix", out.tau_mix);
  out.projection_horizon =
      config.get_uint("projection_horizon", out.projection_horizon);
  out.seed = config.get_uint("seed", out.seed);
  out.start_self_loop = config.get_double("start_self_loop", out.start_self_loop);
  if (out.length < 2) throw ConfigError("length must be at least 2");
  return out;
}

namespace {

struct Composed {
  double point = 0.0;
  estimation::Interval interval;
};

// Mirrors the monitor's bottom-up composition over fixed atom values.
Composed compose(const bse::QuantExpr& expr,
                 const std::vector<bse::AtomPtr>& atoms,
                 const std::vector<double>& points,
                 const std::vector<estimation::Interval>& intervals) {
  switch (expr.kind) {
    case bse::QuantExpr::Kind::Constant:
      return {expr.constant,
              estimation::Interval{expr.constant, expr.constant}};
    case bse::QuantExpr::Kind::Atom: {
      for (size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i]->same_structure(*expr.atom)) {
          return {points[i], intervals[i]};
        }
      }
      throw std::logic_error("atom missing from composition table");
    }
    case bse::QuantExpr::Kind::Add: {
      auto l = compose(*expr.lhs, atoms, points, intervals);
      auto r = compose(*expr.rhs, atoms, points, intervals);
      return {l.point + r.point, estimation::interval_add(l.interval, r.interval)};
    }
    case bse::QuantExpr::Kind::Mul: {
      auto l = compose(*expr.lhs, atoms, points, intervals);
      auto r = compose(*expr.rhs, atoms, points, intervals);
      return {l.point * r.point, estimation::interval_mul(l.interval, r.interval)};
    }
    case bse::QuantExpr::Kind::Inv: {
      auto l = compose(*expr.lhs, atoms, points, intervals);
      return {1.0 / l.point, estimation::interval_inv(l.interval)};
    }
  }
  throw std::logic_error("unreachable expression kind");
}

int max_arity(const std::vector<bse::AtomPtr>& atoms) {
  int n = 1;
  for (const auto& atom : atoms) n = std::max(n, atom->arity());
  return n;
}

// Raw composed half-width at time t: per-atom widths from the formula,
// intervals not clamped to atom ranges.
double raw_half_width(const bse::SpecDocument& doc,
                      const std::vector<bse::AtomPtr>& atoms,
                      const std::vector<double>& atom_points, std::uint64_t t,
                      estimation::BoundKind bound) {
  const double per_delta = doc.delta / static_cast<double>(atoms.size());
  std::vector<estimation::Interval> intervals(atoms.size());
  for (size_t i = 0; i < atoms.size(); ++i) {
    const double eps = estimation::pac_half_width(
        t, atoms[i]->arity(), {per_delta, doc.tau_mix},
        atoms[i]->range_width(), bound);
    intervals[i] = {atom_points[i] - eps, atom_points[i] + eps};
  }
  auto composed = compose(*doc.quant_root, atoms, atom_points, intervals);
  if (!composed.interval.bounded()) {
    return std::numeric_limits<double>::infinity();
  }
  return composed.interval.half_width();
}

}  // namespace

std::uint64_t smallest_t_for_half_width(const bse::SpecDocument& doc,
                                        const std::vector<double>& atom_points,
                                        double target,
                                        estimation::BoundKind bound) {
  if (doc.is_qual || !doc.quant_root) {
    throw std::invalid_argument("half-width solve needs a quantitative root");
  }
  if (!(target > 0.0)) {
    throw std::invalid_argument("target half-width must be positive");
  }
  const auto atoms = doc.unique_atoms();
  if (atom_points.size() != atoms.size()) {
    throw std::invalid_argument("one point value per unique atom required");
  }

  const std::uint64_t t_min = static_cast<std::uint64_t>(max_arity(atoms));
  std::uint64_t hi = t_min;
  const std::uint64_t kCeiling = 1ULL << 60;
  while (raw_half_width(doc, atoms, atom_points, hi, bound) > target) {
    if (hi >= kCeiling) {
      throw std::domain_error("target half-width unreachable below 2^60");
    }
    hi *= 2;
  }
  std::uint64_t lo = hi > t_min ? hi / 2 : t_min;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (raw_half_width(doc, atoms, atom_points, mid, bound) <= target) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return hi;
}

LendingResult run_lending(const LendingConfig& config) {
  pomc::LendingParams params;
  params.start_self_loop = config.start_self_loop;
  const auto model = pomc::lending_model(params);
  const auto diag = pomc::validate(model);

  const auto phi_dp_doc = bse::parse_spec(kPhiDpSpecText);
  const auto phi_tdp_doc = bse::parse_spec(kPhiTdpSpecText);
  const auto aligned = pomc::relabel_to(model, phi_dp_doc.alphabet);

  LendingResult result;
  result.config = config;
  result.oracle_phi_dp = pomc::exact_expr_semantics(aligned, diag.stationary,
                                                    *phi_dp_doc.quant_root);
  result.oracle_phi_tdp = pomc::exact_expr_semantics(aligned, diag.stationary,
                                                     *phi_tdp_doc.quant_root);

  const auto path =
      pomc::sample_path(aligned, diag.stationary, config.length, config.seed);
  const auto checkpoints = checkpoint_schedule(config.length);

  struct RootRun {
    const bse::SpecDocument* doc;
    std::string name;
    double mean_seconds = 0.0;
    double final_point = 0.0;
  };
  RootRun roots[2] = {{&phi_dp_doc, "phi_dp"}, {&phi_tdp_doc, "phi_tdp"}};

  for (auto& root : roots) {
    monitor::MonitorOptions opts;
    opts.delta = config.delta;
    opts.tau_mix = config.tau_mix;
    monitor::Monitor mon(*root.doc, opts);

    size_t next_checkpoint = 0;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t t = 1; t <= config.length; ++t) {
      const auto out = mon.next(path[t - 1]);
      if (next_checkpoint < checkpoints.size() &&
          checkpoints[next_checkpoint] == t) {
        result.series.push_back(
            make_record(out, root.name, config.tau_mix, 0));
        ++next_checkpoint;
      }
    }
    const auto stop = std::chrono::steady_clock::now();
    root.mean_seconds =
        std::chrono::duration<double>(stop - start).count() /
        static_cast<double>(config.length);
    root.final_point = mon.current().point;

    // Analytic taper: atom estimates frozen at the horizon, the composed
    // interval re-evaluated at later times through the width formula.
    const auto atoms = root.doc->unique_atoms();
    std::vector<double> points(atoms.size());
    for (size_t i = 0; i < atoms.size(); ++i) {
      points[i] = mon.estimator(static_cast<int>(i)).point();
    }
    const double per_delta = mon.per_atom_delta();
    for (auto t : checkpoint_schedule_between(config.length,
                                              config.projection_horizon)) {
      std::vector<estimation::Interval> intervals(atoms.size());
      double max_eps = 0.0;
      for (size_t i = 0; i < atoms.size(); ++i) {
        const double eps = estimation::pac_half_width(
            t, atoms[i]->arity(), {per_delta, config.tau_mix},
            atoms[i]->range_width(), mon.bound());
        max_eps = std::max(max_eps, eps);
        intervals[i] = estimation::clamp_to_range(
            {points[i] - eps, points[i] + eps}, atoms[i]->lower(),
            atoms[i]->upper());
      }
      auto composed = compose(*root.doc->quant_root, atoms, points, intervals);
      OutputRecord record;
      record.t = t;
      record.root = root.name;
      record.point = composed.point;
      record.lo = composed.interval.lo;
      record.hi = composed.interval.hi;
      record.epsilon = max_eps;
      record.tau_mix = config.tau_mix;
      record.run_id = 0;
      result.projection.push_back(record);
    }
  }

  result.mean_update_seconds_phi_dp = roots[0].mean_seconds;
  result.mean_update_seconds_phi_tdp = roots[1].mean_seconds;
  result.final_point_phi_dp = roots[0].final_point;
  result.final_point_phi_tdp = roots[1].final_point;

  auto by_time_then_root = [](const OutputRecord& a, const OutputRecord& b) {
    return a.t != b.t ? a.t < b.t : a.root < b.root;
  };
  std::stable_sort(result.series.begin(), result.series.end(),
                   by_time_then_root);
  std::stable_sort(result.projection.begin(), result.projection.end(),
                   by_time_then_root);
  return result;
}

std::vector<std::string> write_lending_outputs(
    const LendingResult& result, const Config& config_echo,
    const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  auto write_records = [&](const std::filesystem::path& path,
                           const std::vector<OutputRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << csv_header() << "\n";
    for (const auto& record : records) out << csv_row(record) << "\n";
  };
  write_records(out_dir / "lending_series.csv", result.series);
  write_records(out_dir / "lending_projection.csv", result.projection);

  {
    std::ofstream out(out_dir / "latency.txt", std::ios::binary);
    out << "phi_dp mean_update_micros "
        << util::format_double(result.mean_update_seconds_phi_dp * 1e6)
        << "\n"
        << "phi_tdp mean_update_micros "
        << util::format_double(result.mean_update_seconds_phi_tdp * 1e6)
        << "\n";
  }

  std::vector<std::string> files = {"lending_series.csv",
                                    "lending_projection.csv"};
  write_manifest(out_dir, "lending", result.config.seed, config_echo, files);
  files.push_back("manifest.json");
  files.push_back("latency.txt");
  return files;
}

}  // namespace fairmon::experiments
