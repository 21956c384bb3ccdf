#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "fairmon/bse/spec.hpp"
#include "fairmon/experiments/hypercube.hpp"
#include "fairmon/experiments/lending.hpp"
#include "fairmon/experiments/record.hpp"
#include "fairmon/monitor/monitor.hpp"
#include "fairmon/pomc/diagnostics.hpp"
#include "fairmon/pomc/model_io.hpp"
#include "fairmon/pomc/oracle.hpp"
#include "fairmon/pomc/sampler.hpp"
#include "fairmon/version.hpp"

namespace {

constexpr int kExitData = 2;
constexpr int kExitSpec = 3;
constexpr int kExitModel = 4;

int fail(int code, const std::string& message) {
  std::cerr << "fairmon: " << message << "\n";
  return code;
}

std::string read_file(const std::string& path, int error_code, int* failed) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *failed = error_code;
    return {};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fairmon::bse::SpecDocument load_spec_or_exit(const std::string& path) {
  int failed = 0;
  const std::string text = read_file(path, kExitSpec, &failed);
  if (failed) {
    std::exit(fail(kExitSpec, "cannot open spec file: " + path));
  }
  try {
    return fairmon::bse::parse_spec(text);
  } catch (const fairmon::bse::SpecError& e) {
    std::exit(fail(kExitSpec, path + ": " + e.what()));
  }
}

fairmon::pomc::PomcModel load_model_or_exit(const std::string& path) {
  int failed = 0;
  const std::string text = read_file(path, kExitModel, &failed);
  if (failed) {
    std::exit(fail(kExitModel, "cannot open model file: " + path));
  }
  try {
    return fairmon::pomc::load_model(text);
  } catch (const fairmon::pomc::ModelError& e) {
    std::exit(fail(kExitModel, path + ": " + e.what()));
  }
}

std::vector<double> initial_distribution(
    const fairmon::pomc::PomcModel& model) {
  if (!model.init.empty()) return model.init;
  const auto diag = fairmon::pomc::validate(model);
  for (const auto& warning : diag.warnings) {
    std::cerr << "fairmon: warning: " << warning << "\n";
  }
  return diag.stationary;
}

int run_monitor(const std::string& spec_path, const std::string& input_path,
                const fairmon::monitor::MonitorOptions& opts,
                const std::string& format, std::uint64_t checkpoint_every) {
  const auto doc = load_spec_or_exit(spec_path);
  fairmon::monitor::Monitor monitor(doc, opts);
  const std::string root =
      std::filesystem::path(spec_path).stem().string();
  const double tau = monitor.tau_mix();

  std::ifstream file;
  if (!input_path.empty()) {
    file.open(input_path, std::ios::binary);
    if (!file) return fail(kExitData, "cannot open input: " + input_path);
  }
  std::istream& in = input_path.empty() ? std::cin : file;

  const bool csv = format == "csv";
  std::ostream& out = std::cout;
  if (csv) out << fairmon::experiments::csv_header() << "\n";

  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() &&
             (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
        ++pos;
      }
      if (pos >= line.size()) break;
      size_t start = pos;
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' &&
             line[pos] != '\r') {
        ++pos;
      }
      const std::string_view token(line.data() + start, pos - start);
      auto symbol = doc.alphabet.find(token);
      if (!symbol) {
        return fail(kExitData, "line " + std::to_string(line_no) +
                                   ": unknown token '" + std::string(token) +
                                   "'");
      }
      const auto output = monitor.next(*symbol);
      if (output.t % checkpoint_every != 0) continue;
      const auto record =
          fairmon::experiments::make_record(output, root, tau, 0);
      out << (csv ? fairmon::experiments::csv_row(record)
                  : fairmon::experiments::jsonl_row(record))
          << "\n";
    }
  }
  return 0;
}

int run_simulate(const std::string& model_path, std::uint64_t length,
                 std::uint64_t seed) {
  const auto model = load_model_or_exit(model_path);
  const auto initial = initial_distribution(model);
  fairmon::pomc::PathSampler sampler(model, initial, seed);
  for (std::uint64_t i = 0; i < length; ++i) {
    std::cout << model.alphabet.token(sampler.next_symbol()) << "\n";
  }
  return 0;
}

int run_exact(const std::string& model_path, const std::string& spec_path) {
  const auto doc = load_spec_or_exit(spec_path);
  auto model = load_model_or_exit(model_path);
  try {
    model = fairmon::pomc::relabel_to(model, doc.alphabet);
  } catch (const fairmon::bse::UnknownTokenError& e) {
    return fail(kExitData,
                std::string("model and spec alphabets disagree: ") + e.what());
  }
  const auto initial = initial_distribution(model);
  try {
    if (doc.is_qual) {
      const bool value =
          fairmon::pomc::exact_qual_semantics(model, initial, *doc.qual_root);
      std::cout << (value ? "true" : "false") << "\n";
    } else {
      const double value =
          fairmon::pomc::exact_expr_semantics(model, initial, *doc.quant_root);
      char buffer[64];
      std::snprintf(buffer, sizeof buffer, "%.12f", value);
      std::cout << buffer << "\n";
    }
  } catch (const fairmon::pomc::OracleError& e) {
    return fail(kExitData, e.what());
  }
  return 0;
}

int run_experiment(const std::string& name, const std::string& config_path,
                   const std::string& out_dir) {
  namespace ex = fairmon::experiments;
  ex::Config config;
  if (!config_path.empty()) {
    int failed = 0;
    const std::string text = read_file(config_path, kExitData, &failed);
    if (failed) return fail(kExitData, "cannot open config: " + config_path);
    try {
      config = ex::Config::parse(text);
    } catch (const ex::ConfigError& e) {
      return fail(kExitData, config_path + ": " + e.what());
    }
  }
  try {
    std::vector<std::string> files;
    if (name == "hypercube") {
      const auto cfg = ex::HypercubeConfig::from_config(config);
      files = ex::write_hypercube_outputs(ex::run_hypercube(cfg), config,
                                          out_dir);
    } else if (name == "lending") {
      const auto cfg = ex::LendingConfig::from_config(config);
      files = ex::write_lending_outputs(ex::run_lending(cfg), config, out_dir);
    } else {
      return fail(kExitData, "unknown experiment '" + name +
                                 "' (expected hypercube or lending)");
    }
    for (const auto& file : files) {
      std::cout << "wrote " << (std::filesystem::path(out_dir) / file).string()
                << "\n";
    }
  } catch (const ex::ConfigError& e) {
    return fail(kExitData, e.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming PAC monitors for window properties of observation "
               "traces, with a Markov-chain simulator, an exact-semantics "
               "oracle, and reproducible experiment harnesses"};
  app.set_version_flag("--version", std::string(fairmon::kVersion));
  app.require_subcommand(1);

  // monitor
  auto* monitor_cmd = app.add_subcommand(
      "monitor", "Stream observations through a property document");
  std::string spec_path, input_path;
  monitor_cmd->add_option("spec", spec_path, "property document (.bse)")
      ->required();
  monitor_cmd->add_option("input", input_path,
                          "trace file (default: stdin), whitespace-separated "
                          "tokens");
  double delta_flag = -1.0, taumix_flag = -1.0;
  monitor_cmd->add_option("--delta", delta_flag,
                          "override the document's failure probability");
  monitor_cmd->add_option("--taumix", taumix_flag,
                          "override the document's mixing-time bound");
  std::string bound = "printed", format = "csv";
  monitor_cmd->add_option("--bound", bound, "half-width formula variant")
      ->check(CLI::IsMember({"printed", "proof"}));
  monitor_cmd->add_option("--format", format, "output record format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  std::uint64_t checkpoint_every = 1;
  monitor_cmd
      ->add_option("--checkpoint-every", checkpoint_every,
                   "emit every Nth record instead of all")
      ->check(CLI::PositiveNumber);

  // simulate
  auto* simulate_cmd = app.add_subcommand(
      "simulate", "Sample an observation trace from a chain description");
  std::string model_path;
  simulate_cmd->add_option("model", model_path, "chain description (.pomc)")
      ->required();
  std::uint64_t length = 1000, seed = 1;
  simulate_cmd->add_option("--length", length, "number of observations");
  simulate_cmd->add_option("--seed", seed, "RNG seed");

  // exact
  auto* exact_cmd = app.add_subcommand(
      "exact", "Print the exact semantics of a document on a known chain");
  std::string exact_model, exact_spec;
  exact_cmd->add_option("model", exact_model, "chain description (.pomc)")
      ->required();
  exact_cmd->add_option("spec", exact_spec, "property document (.bse)")
      ->required();

  // experiment
  auto* experiment_cmd =
      app.add_subcommand("experiment", "Run a packaged experiment");
  std::string experiment_name, config_path;
  experiment_cmd
      ->add_option("name", experiment_name, "hypercube or lending")
      ->required();
  experiment_cmd->add_option("config", config_path,
                             "key = value configuration file");
  const char* env_out = std::getenv("FAIRMON_OUT");
  std::string out_dir = env_out ? env_out : ".";
  experiment_cmd->add_option("--out", out_dir,
                             "output directory (default: $FAIRMON_OUT or .)");

  CLI11_PARSE(app, argc, argv);

  if (monitor_cmd->parsed()) {
    fairmon::monitor::MonitorOptions opts;
    if (delta_flag >= 0.0) opts.delta = delta_flag;
    if (taumix_flag >= 0.0) opts.tau_mix = taumix_flag;
    opts.bound = bound == "proof" ? fairmon::estimation::BoundKind::Proof
                                  : fairmon::estimation::BoundKind::Printed;
    try {
      return run_monitor(spec_path, input_path, opts, format,
                         checkpoint_every);
    } catch (const std::invalid_argument& e) {
      return fail(kExitSpec, e.what());
    }
  }
  if (simulate_cmd->parsed()) return run_simulate(model_path, length, seed);
  if (exact_cmd->parsed()) return run_exact(exact_model, exact_spec);
  if (experiment_cmd->parsed()) {
    return run_experiment(experiment_name, config_path, out_dir);
  }
  return 0;
}
