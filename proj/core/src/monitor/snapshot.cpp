#include <cstdio>
#include <cstdlib>

#include "fairmon/monitor/monitor.hpp"
#include "json.hpp"

namespace fairmon::monitor {

namespace {

constexpr int kSnapshotVersion = 1;

// Hex float text round-trips doubles bit-exactly and is locale-stable.
std::string to_hex(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%a", v);
  return buf;
}

double from_hex(const std::string& text) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') {
    throw SnapshotError("corrupt snapshot: bad float literal '" + text + "'");
  }
  return v;
}

}  // namespace

std::string Monitor::snapshot() const {
  nlohmann::json j;
  j["format"] = "fairmon-snapshot";
  j["version"] = kSnapshotVersion;
  j["spec"] = bse::pretty_print(doc_);
  j["delta"] = to_hex(delta_);
  j["tau_mix"] = to_hex(tau_mix_);
  j["bound"] =
      bound_ == estimation::BoundKind::Printed ? "printed" : "proof";
  j["t"] = t_;
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& est : estimators_) {
    nlohmann::json a;
    a["count"] = est.count();
    a["value"] = to_hex(est.point());
    a["window"] = est.window_contents();
    atoms.push_back(std::move(a));
  }
  j["atoms"] = std::move(atoms);
  return j.dump();
}

Monitor Monitor::restore(std::string_view snapshot_json) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(snapshot_json);
  } catch (const nlohmann::json::exception& e) {
    throw SnapshotError(std::string("corrupt snapshot: ") + e.what());
  }
  try {
    if (j.value("format", "") != "fairmon-snapshot") {
      throw SnapshotError("corrupt snapshot: not a monitor snapshot");
    }
    if (j.value("version", -1) != kSnapshotVersion) {
      throw SnapshotError("unsupported snapshot version");
    }
    bse::SpecDocument doc = bse::parse_spec(j.at("spec").get<std::string>());
    MonitorOptions opts;
    opts.delta = from_hex(j.at("delta").get<std::string>());
    opts.tau_mix = from_hex(j.at("tau_mix").get<std::string>());
    const std::string bound = j.at("bound").get<std::string>();
    if (bound == "printed") {
      opts.bound = estimation::BoundKind::Printed;
    } else if (bound == "proof") {
      opts.bound = estimation::BoundKind::Proof;
    } else {
      throw SnapshotError("corrupt snapshot: unknown bound kind");
    }

    Monitor m(doc, opts);
    m.t_ = j.at("t").get<std::uint64_t>();
    const auto& atoms = j.at("atoms");
    if (!atoms.is_array() || atoms.size() != m.estimators_.size()) {
      throw SnapshotError("corrupt snapshot: estimator count mismatch");
    }
    for (std::size_t i = 0; i < m.estimators_.size(); ++i) {
      const auto& a = atoms[i];
      const auto window = a.at("window").get<std::vector<bse::Symbol>>();
      for (bse::Symbol s : window) {
        if (s < 0 || s >= doc.alphabet.size()) {
          throw SnapshotError("corrupt snapshot: window symbol out of range");
        }
      }
      const auto count = a.at("count").get<std::uint64_t>();
      if (count != m.t_) {
        throw SnapshotError("corrupt snapshot: atom event count mismatch");
      }
      try {
        m.estimators_[i].restore(count, from_hex(a.at("value").get<std::string>()),
                                 window);
      } catch (const std::invalid_argument& e) {
        throw SnapshotError(std::string("corrupt snapshot: ") + e.what());
      }
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw SnapshotError(std::string("corrupt snapshot: ") + e.what());
  } catch (const bse::SpecError& e) {
    throw SnapshotError(std::string("corrupt snapshot: ") + e.what());
  }
}

}  // namespace fairmon::monitor
