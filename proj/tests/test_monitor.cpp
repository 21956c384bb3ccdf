#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

#include "fairmon/bse/spec.hpp"
#include "fairmon/estimation/pac.hpp"
#include "fairmon/monitor/monitor.hpp"
#include "fairmon/monitor/verdict.hpp"

using namespace fairmon;
using monitor::Monitor;
using monitor::MonitorOptions;
using monitor::Verdict;

namespace {

Monitor make(const std::string& text, MonitorOptions opts = {}) {
  return Monitor(bse::parse_spec(text), opts);
}

// Equality that treats NaN as equal to itself (early conditional estimates
// divide by an empty denominator).
bool same_value(double a, double b) {
  return a == b || (std::isnan(a) && std::isnan(b));
}

}  // namespace

TEST_CASE("three-valued connectives follow the non-Kleene table") {
  using monitor::verdict_and;
  using monitor::verdict_not;
  using monitor::verdict_or;
  const Verdict T = Verdict::True, F = Verdict::False, U = Verdict::Unknown;

  CHECK(verdict_not(T) == F);
  CHECK(verdict_not(F) == T);
  CHECK(verdict_not(U) == U);

  // And: any unknown operand poisons the result, even against false.
  CHECK(verdict_and(T, T) == T);
  CHECK(verdict_and(T, F) == F);
  CHECK(verdict_and(F, T) == F);
  CHECK(verdict_and(F, F) == F);
  CHECK(verdict_and(U, T) == U);
  CHECK(verdict_and(T, U) == U);
  CHECK(verdict_and(U, F) == U);
  CHECK(verdict_and(F, U) == U);
  CHECK(verdict_and(U, U) == U);

  // Or is the derived De Morgan dual.
  CHECK(verdict_or(T, T) == T);
  CHECK(verdict_or(T, F) == T);
  CHECK(verdict_or(F, T) == T);
  CHECK(verdict_or(F, F) == F);
  CHECK(verdict_or(U, T) == U);  // follows from the And table
  CHECK(verdict_or(T, U) == U);
  CHECK(verdict_or(U, F) == U);
  CHECK(verdict_or(F, U) == U);
  CHECK(verdict_or(U, U) == U);

  CHECK(std::string(monitor::verdict_name(T)) == "true");
  CHECK(std::string(monitor::verdict_name(F)) == "false");
  CHECK(std::string(monitor::verdict_name(U)) == "bot");
}

TEST_CASE("windowed indicator stream: a a b a a") {
  auto mon = make(
      "alphabet: a b\ndelta: 0.05\ntaumix: 7.45\nquant: P(\"a a\")\n");
  CHECK(mon.atom_count() == 1);
  CHECK(mon.per_atom_delta() == 0.05);

  auto out = mon.next("a");
  CHECK(out.inconclusive);
  out = mon.next("a");
  CHECK(!out.inconclusive);
  CHECK(out.point == 1.0);
  out = mon.next("b");
  out = mon.next("a");
  out = mon.next("a");
  CHECK(out.t == 5);
  CHECK(out.point == 0.5);

  const double eps = estimation::pac_half_width(5, 2, {0.05, 7.45}, 1.0);
  CHECK(out.epsilon == eps);
  CHECK(out.interval.lo == std::max(0.0, 0.5 - eps));
  CHECK(out.interval.hi == std::min(1.0, 0.5 + eps));
}

TEST_CASE("constant expressions yield degenerate intervals immediately") {
  auto mon = make("alphabet: a\ndelta: 0.05\ntaumix: 1\nquant: 2 * 3\n");
  CHECK(mon.atom_count() == 0);
  auto out = mon.current();
  CHECK(!out.inconclusive);
  CHECK(out.point == 6.0);
  CHECK(out.interval.lo == 6.0);
  CHECK(out.interval.hi == 6.0);
  CHECK(out.epsilon == 0.0);
  out = mon.next("a");
  CHECK(out.point == 6.0);
  CHECK(out.interval.width() == 0.0);

  auto qual = make("alphabet: a\ndelta: 0.05\ntaumix: 1\nqual: true\n");
  CHECK(qual.next("a").verdict == Verdict::True);
}

TEST_CASE("warm-up tracks the largest window") {
  auto mon = make(
      "alphabet: a b\ndelta: 0.05\ntaumix: 2\n"
      "quant: P(\"a\") + P(\"a a a\")\n");
  CHECK(mon.next("a").inconclusive);
  CHECK(mon.next("a").inconclusive);
  auto out = mon.next("a");
  CHECK(!out.inconclusive);
  CHECK(out.point == 2.0);  // both indicators saturated on aaa
}

TEST_CASE("shared atoms are estimated and budgeted once") {
  auto mon = make(
      "alphabet: a b\n"
      "atom f arity 1 range -1 1 { \"a\" -> 1; default -1 }\n"
      "delta: 0.05\ntaumix: 2\n"
      "qual: f >= 0 && !(f >= 0)\n");
  CHECK(mon.atom_count() == 1);
  CHECK(mon.per_atom_delta() == 0.05);

  // Whatever the stream, the contradiction can never verify.
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 500; ++i) {
    const auto out = mon.next(coin(rng));
    REQUIRE(out.verdict.has_value());
    CHECK(*out.verdict != Verdict::True);
  }
}

TEST_CASE("equal delta split across unique atoms") {
  auto mon = make(
      "alphabet: S A B Y N\ndelta: 0.05\ntaumix: 170589.78\n"
      "quant: P(\"A Y\") - P(\"B Y\")\n");
  CHECK(mon.atom_count() == 2);
  CHECK(mon.per_atom_delta() == 0.025);

  auto four = make(
      "alphabet: a b\ndelta: 0.05\ntaumix: 7.45\n"
      "quant: P(\"a\" | \"a\") - P(\"b\" | \"b\")\n");
  CHECK(four.atom_count() == 4);
  CHECK(four.per_atom_delta() == 0.0125);
}

TEST_CASE("qualitative verdicts from interval position") {
  SUBCASE("always-positive operand verifies") {
    auto mon = make(
        "alphabet: a\n"
        "atom f arity 1 range 0.1 0.3 { default 0.2 }\n"
        "delta: 0.05\ntaumix: 1\nqual: f >= 0\n");
    const auto out = mon.next("a");
    CHECK(out.verdict == Verdict::True);
    // Geq0 roots also surface the operand's estimate.
    CHECK(out.has_value);
    CHECK(out.point == 0.2);
    CHECK(out.interval.lo >= 0.1);
  }
  SUBCASE("always-negative operand falsifies") {
    auto mon = make(
        "alphabet: a\n"
        "atom f arity 1 range -0.3 -0.1 { default -0.2 }\n"
        "delta: 0.05\ntaumix: 1\nqual: f >= 0\n");
    CHECK(mon.next("a").verdict == Verdict::False);
  }
  SUBCASE("straddling interval stays unknown and negation preserves it") {
    auto mon = make(
        "alphabet: a b\ndelta: 0.05\ntaumix: 7.45\n"
        "qual: !(P(\"a\") >= 0.5)\n");
    const auto out = mon.next("a");
    // One observation: interval [1 - eps, 1] clamped, eps huge, straddles.
    CHECK(out.verdict == Verdict::Unknown);
  }
}

TEST_CASE("inverse of a straddling interval propagates unbounded") {
  auto mon = make(
      "alphabet: a b\ndelta: 0.05\ntaumix: 7.45\n"
      "quant: inv(P(\"a\") - 0.5)\n");
  const auto out = mon.next("a");
  CHECK(!out.interval.bounded());
  CHECK(out.interval.lo == -std::numeric_limits<double>::infinity());
  CHECK(out.interval.hi == std::numeric_limits<double>::infinity());
}

TEST_CASE("flag overrides replace the document scalars") {
  MonitorOptions opts;
  opts.delta = 0.2;
  opts.tau_mix = 29.8;  // 4x the document's bound
  auto mon = make(
      "alphabet: a b\ndelta: 0.05\ntaumix: 7.45\nquant: P(\"a a\")\n", opts);
  CHECK(mon.delta() == 0.2);
  CHECK(mon.tau_mix() == 29.8);
  mon.next("a");
  const auto out = mon.next("a");
  CHECK(out.epsilon ==
        estimation::pac_half_width(2, 2, {0.2, 29.8}, 1.0));

  MonitorOptions bad;
  bad.delta = 1.5;
  CHECK_THROWS_AS(
      make("alphabet: a\ndelta: 0.05\ntaumix: 1\nquant: P(\"a\")\n", bad),
      std::invalid_argument);
}

TEST_CASE("proof-mode bound widens by the window factor") {
  const std::string text =
      "alphabet: a b\ndelta: 0.05\ntaumix: 7.45\nquant: P(\"a a\")\n";
  MonitorOptions proof;
  proof.bound = estimation::BoundKind::Proof;
  auto printed = make(text);
  auto proofed = make(text, proof);
  for (int i = 0; i < 10; ++i) {
    printed.next(i % 2);
    proofed.next(i % 2);
  }
  const auto a = printed.current(), b = proofed.current();
  CHECK(b.epsilon / a.epsilon ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("unknown observations are rejected") {
  auto mon = make("alphabet: a b\ndelta: 0.05\ntaumix: 1\nquant: P(\"a\")\n");
  CHECK_THROWS_AS(mon.next("c"), bse::UnknownTokenError);
  CHECK_THROWS_AS(mon.next(bse::Symbol{2}), bse::UnknownTokenError);
  CHECK_THROWS_AS(mon.next(bse::Symbol{-1}), bse::UnknownTokenError);
  // Failed updates must not advance the clock.
  CHECK(mon.event_count() == 0);
}

TEST_CASE("identical streams give identical outputs") {
  const std::string text =
      "alphabet: a b\ndelta: 0.05\ntaumix: 7.45\n"
      "quant: P(\"a\" | \"a\") - P(\"b\" | \"b\")\n";
  auto m1 = make(text), m2 = make(text);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 2000; ++i) {
    const int s = coin(rng);
    const auto a = m1.next(s), b = m2.next(s);
    REQUIRE(same_value(a.point, b.point));
    REQUIRE(a.interval.lo == b.interval.lo);
    REQUIRE(a.interval.hi == b.interval.hi);
    REQUIRE(a.epsilon == b.epsilon);
  }
}

TEST_CASE("snapshot and restore") {
  const std::string text =
      "alphabet: a b\ndelta: 0.05\ntaumix: 7.45\n"
      "quant: P(\"a\" | \"a\") - P(\"b\" | \"b\")\n";

  SUBCASE("mid-stream round trip continues identically") {
    auto mon = make(text);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coin(0, 1);
    for (int i = 0; i < 137; ++i) mon.next(coin(rng));

    auto restored = Monitor::restore(mon.snapshot());
    CHECK(restored.event_count() == mon.event_count());
    for (int i = 0; i < 500; ++i) {
      const int s = coin(rng);
      const auto a = mon.next(s);
      const auto b = restored.next(s);
      REQUIRE(same_value(a.point, b.point));
      REQUIRE(a.interval.lo == b.interval.lo);
      REQUIRE(a.interval.hi == b.interval.hi);
      REQUIRE(a.epsilon == b.epsilon);
    }
  }

  SUBCASE("snapshot at t=0 restores a fresh monitor") {
    auto mon = make(text);
    auto restored = Monitor::restore(mon.snapshot());
    CHECK(restored.event_count() == 0);
    CHECK(restored.current().inconclusive);
  }

  SUBCASE("truncated payload is rejected") {
    auto mon = make(text);
    const auto snap = mon.snapshot();
    CHECK_THROWS_AS(Monitor::restore(snap.substr(0, snap.size() / 2)),
                    monitor::SnapshotError);
    CHECK_THROWS_AS(Monitor::restore("{}"), monitor::SnapshotError);
    CHECK_THROWS_AS(Monitor::restore("not json"), monitor::SnapshotError);
  }

  SUBCASE("version mismatch is rejected") {
    auto mon = make(text);
    auto json = nlohmann::json::parse(mon.snapshot());
    json["version"] = 2;
    CHECK_THROWS_AS(Monitor::restore(json.dump()), monitor::SnapshotError);
    json["version"] = 1;
    json["format"] = "something-else";
    CHECK_THROWS_AS(Monitor::restore(json.dump()), monitor::SnapshotError);
  }

  SUBCASE("options survive the round trip") {
    MonitorOptions opts;
    opts.delta = 0.01;
    opts.tau_mix = 204.94;
    opts.bound = estimation::BoundKind::Proof;
    auto mon = make(text, opts);
    mon.next("a");
    auto restored = Monitor::restore(mon.snapshot());
    CHECK(restored.delta() == 0.01);
    CHECK(restored.tau_mix() == 204.94);
    CHECK(restored.bound() == estimation::BoundKind::Proof);
  }

  SUBCASE("tampered register values surface as range anomalies") {
    auto mon = make(
        "alphabet: a b\ndelta: 0.05\ntaumix: 7.45\nquant: P(\"a a\")\n");
    for (int i = 0; i < 50; ++i) mon.next(i % 2);
    auto json = nlohmann::json::parse(mon.snapshot());
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%a", 9.0);  // way outside [0, 1]
    json["atoms"][0]["value"] = buffer;
    auto restored = Monitor::restore(json.dump());
    const auto out = restored.current();
    CHECK(out.anomaly);
    CHECK(out.interval.lo == 1.0);  // collapsed to the nearest boundary
    CHECK(out.interval.hi == 1.0);
  }
}
