#include "fairmon/pomc/models.hpp"

#include <algorithm>
#include <cmath>

namespace fairmon::pomc {

PomcModel hypercube_model(int dim) {
  if (dim < 1 || dim > 20) {
    throw ModelError("hypercube dimension must be in [1, 20]");
  }
  const int n = 1 << dim;
  PomcModel model;
  model.state_count = n;
  model.alphabet = bse::Alphabet({"a", "b"});
  model.rows.resize(n);
  model.labels.resize(n);
  const double flip = 1.0 / (2.0 * dim);
  for (int v = 0; v < n; ++v) {
    auto& row = model.rows[v];
    for (int bit = 0; bit < dim; ++bit) {
      const int w = v ^ (1 << bit);
      if (w == v) continue;
      row.emplace_back(w, flip);
    }
    row.emplace_back(v, 0.5);
    std::sort(row.begin(), row.end());
    model.labels[v] = (v & 1) == 0 ? 0 : 1;  // first coordinate decides a/b
  }
  model.check();
  return model;
}

PomcModel lending_model(const LendingParams& params) {
  const double p_s = params.start_self_loop;
  if (!(p_s >= 0.0 && p_s < 1.0)) {
    throw ModelError("start self-loop probability must be in [0, 1)");
  }
  double select_sum = 0.0;
  for (int g = 0; g < 2; ++g) {
    for (int s = 0; s < 2; ++s) {
      if (params.select[g][s] < 0.0) {
        throw ModelError("selection probabilities must be nonnegative");
      }
      if (params.grant[g][s] < 0.0 || params.grant[g][s] > 1.0) {
        throw ModelError("grant probabilities must be in [0, 1]");
      }
      select_sum += params.select[g][s];
    }
  }
  if (std::abs(select_sum - 1.0) > 1e-12) {
    throw ModelError("selection probabilities must sum to one");
  }

  // States: 0=S, 1=(A,1), 2=(A,2), 3=(B,1), 4=(B,2), 5=Y, 6=N.
  PomcModel model;
  model.state_count = 7;
  model.alphabet = bse::Alphabet({"S", "A", "B", "Y", "N"});
  model.labels = {0, 1, 1, 2, 2, 3, 4};
  model.rows.resize(7);

  auto& start = model.rows[0];
  if (p_s > 0.0) start.emplace_back(0, p_s);
  for (int g = 0; g < 2; ++g) {
    for (int s = 0; s < 2; ++s) {
      start.emplace_back(1 + 2 * g + s, (1.0 - p_s) * params.select[g][s]);
    }
  }
  for (int g = 0; g < 2; ++g) {
    for (int s = 0; s < 2; ++s) {
      auto& row = model.rows[1 + 2 * g + s];
      const double grant = params.grant[g][s];
      if (grant > 0.0) row.emplace_back(5, grant);
      if (grant < 1.0) row.emplace_back(6, 1.0 - grant);
    }
  }
  model.rows[5].emplace_back(0, 1.0);
  model.rows[6].emplace_back(0, 1.0);
  model.check();
  return model;
}

}  // namespace fairmon::pomc
