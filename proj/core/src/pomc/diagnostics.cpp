#include "fairmon/pomc/diagnostics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace fairmon::pomc {

namespace {

constexpr int kDenseLimit = 1000;
constexpr int kSpectralLimit = 1000;

std::vector<std::vector<int>> support_edges(const PomcModel& model,
                                            bool transpose) {
  std::vector<std::vector<int>> adj(model.state_count);
  for (int q = 0; q < model.state_count; ++q) {
    for (const auto& [to, p] : model.rows[q]) {
      if (p > 0.0) {
        if (transpose) {
          adj[to].push_back(q);
        } else {
          adj[q].push_back(to);
        }
      }
    }
  }
  return adj;
}

std::vector<char> reachable(const std::vector<std::vector<int>>& adj,
                            int start) {
  std::vector<char> seen(adj.size(), 0);
  std::queue<int> frontier;
  seen[start] = 1;
  frontier.push(start);
  while (!frontier.empty()) {
    const int q = frontier.front();
    frontier.pop();
    for (int to : adj[q]) {
      if (!seen[to]) {
        seen[to] = 1;
        frontier.push(to);
      }
    }
  }
  return seen;
}

// gcd over the closed communicating class of state 0: breadth-first levels;
// every support edge u -> v inside the class contributes
// |level(u) + 1 - level(v)| to the gcd.
int chain_period(const PomcModel& model) {
  const auto forward = support_edges(model, false);
  const auto fwd_seen = reachable(forward, 0);
  const auto bwd_seen = reachable(support_edges(model, true), 0);
  std::vector<char> in_class(model.state_count, 0);
  for (int q = 0; q < model.state_count; ++q) {
    in_class[q] = fwd_seen[q] && bwd_seen[q];
  }

  std::vector<int> level(model.state_count, -1);
  std::queue<int> frontier;
  level[0] = 0;
  frontier.push(0);
  int g = 0;
  while (!frontier.empty()) {
    const int q = frontier.front();
    frontier.pop();
    for (int to : forward[q]) {
      if (!in_class[to]) continue;
      if (level[to] < 0) {
        level[to] = level[q] + 1;
        frontier.push(to);
      } else {
        g = std::gcd(g, std::abs(level[q] + 1 - level[to]));
      }
    }
  }
  return g == 0 ? 1 : g;
}

std::vector<double> stationary_dense(const PomcModel& model) {
  const int n = model.state_count;
  // pi = pi M  <=>  (M^T - I) pi = 0, with the last equation replaced by
  // sum(pi) = 1.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int q = 0; q < n; ++q) {
    for (const auto& [to, p] : model.rows[q]) {
      a(to, q) += p;
    }
    a(q, q) -= 1.0;
  }
  for (int c = 0; c < n; ++c) a(n - 1, c) = 1.0;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(n - 1) = 1.0;
  const Eigen::VectorXd pi = a.colPivHouseholderQr().solve(b);
  return {pi.data(), pi.data() + n};
}

std::vector<double> stationary_power(const PomcModel& model,
                                     std::vector<std::string>& warnings) {
  const int n = model.state_count;
  std::vector<double> pi(n, 1.0 / n);
  std::vector<double> next(n, 0.0);
  for (int iter = 0; iter < 1000000; ++iter) {
    // Damped step pi <- pi (M + I)/2: same fixed point, converges for
    // periodic chains too.
    std::fill(next.begin(), next.end(), 0.0);
    for (int q = 0; q < n; ++q) {
      next[q] += 0.5 * pi[q];
      for (const auto& [to, p] : model.rows[q]) {
        next[to] += 0.5 * pi[q] * p;
      }
    }
    double diff = 0.0;
    double sum = 0.0;
    for (int q = 0; q < n; ++q) sum += next[q];
    for (int q = 0; q < n; ++q) {
      next[q] /= sum;
      diff += std::abs(next[q] - pi[q]);
    }
    pi.swap(next);
    if (diff <= 1e-13) return pi;
  }
  warnings.push_back(
      "power iteration for the stationary distribution did not reach "
      "tolerance within 1e6 iterations");
  return pi;
}

double stationary_residual(const PomcModel& model,
                           const std::vector<double>& pi) {
  std::vector<double> pim(model.state_count, 0.0);
  for (int q = 0; q < model.state_count; ++q) {
    for (const auto& [to, p] : model.rows[q]) {
      pim[to] += pi[q] * p;
    }
  }
  double res = 0.0;
  for (int q = 0; q < model.state_count; ++q) {
    res += std::abs(pim[q] - pi[q]);
  }
  return res;
}

}  // namespace

ModelDiagnostics validate(const PomcModel& model) {
  model.check();
  ModelDiagnostics diag;

  const auto fwd_seen = reachable(support_edges(model, false), 0);
  const auto bwd_seen = reachable(support_edges(model, true), 0);
  diag.irreducible = true;
  for (int q = 0; q < model.state_count; ++q) {
    if (!fwd_seen[q] || !bwd_seen[q]) {
      diag.irreducible = false;
      break;
    }
  }
  diag.period = chain_period(model);
  diag.aperiodic = diag.period == 1;

  if (!diag.irreducible) {
    diag.warnings.push_back(
        "model is reducible; monitor guarantees are void (stationary "
        "distribution may not be unique)");
  }
  if (!diag.aperiodic) {
    diag.warnings.push_back("model is periodic (period " +
                            std::to_string(diag.period) +
                            "); monitor guarantees are void");
  }

  diag.stationary = model.state_count <= kDenseLimit
                        ? stationary_dense(model)
                        : stationary_power(model, diag.warnings);
  const double residual = stationary_residual(model, diag.stationary);
  if (residual > 1e-10) {
    diag.warnings.push_back("stationary distribution residual " +
                            std::to_string(residual) + " exceeds 1e-10");
  }

  if (diag.irreducible && model.state_count <= kSpectralLimit) {
    try {
      diag.suggested_tau_mix =
          tau_mix_bound_reversible(model, diag.stationary);
      // Recover the gap from the bound's closed form.
      double pi_min = *std::min_element(diag.stationary.begin(),
                                        diag.stationary.end());
      if (*diag.suggested_tau_mix > 0.0) {
        diag.spectral_gap =
            std::log(1.0 / (0.25 * pi_min)) / *diag.suggested_tau_mix;
      } else {
        diag.spectral_gap = 1.0;
      }
    } catch (const ModelError&) {
      // Non-reversible: no spectral suggestion.
    }
  }
  return diag;
}

double tau_mix_bound_reversible(const PomcModel& model,
                                const std::vector<double>& stationary,
                                double eps_mix) {
  const int n = model.state_count;
  if (n > kSpectralLimit) {
    throw ModelError("model too large for the spectral mixing bound");
  }
  if (n == 1) return 0.0;  // already mixed

  for (int q = 0; q < n; ++q) {
    if (!(stationary[q] > 0.0)) {
      throw ModelError(
          "stationary distribution must be strictly positive for the "
          "spectral bound");
    }
  }
  // Detailed balance: pi_i M_ij == pi_j M_ji.
  for (int q = 0; q < n; ++q) {
    for (const auto& [to, p] : model.rows[q]) {
      const double lhs = stationary[q] * p;
      const double rhs = stationary[to] * model.prob(to, q);
      if (std::abs(lhs - rhs) > 1e-10 * std::max(1.0, std::abs(lhs))) {
        throw ModelError(
            "model is not reversible; supply a mixing-time bound "
            "explicitly");
      }
    }
  }

  // Symmetrize: S = D^{1/2} M D^{-1/2} shares M's spectrum and is
  // symmetric under detailed balance.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (int q = 0; q < n; ++q) {
    for (const auto& [to, p] : model.rows[q]) {
      s(q, to) = std::sqrt(stationary[q] / stationary[to]) * p;
    }
  }
  s = 0.5 * (s + s.transpose().eval());  // scrub rounding asymmetry
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
  if (solver.info() != Eigen::Success) {
    throw ModelError("eigenvalue computation failed");
  }
  const auto& ev = solver.eigenvalues();  // ascending
  const double second = std::max(std::abs(ev(0)), std::abs(ev(n - 2)));
  const double gap = 1.0 - second;
  if (!(gap > 0.0)) {
    throw ModelError(
        "chain has no spectral gap; mixing bound unavailable");
  }
  const double pi_min = *std::min_element(stationary.begin(), stationary.end());
  return std::log(1.0 / (eps_mix * pi_min)) / gap;
}

}  // namespace fairmon::pomc
