// Copyright 2026 The cohvec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cohvec/search.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace cohvec {

namespace {

constexpr Real kInitialStep = 0.3;
constexpr Real kMaxStep = 2.0;
constexpr Real kExpand = 1.6;
constexpr Real kContract = 0.5;
// restarts whose final values agree with the best to this much count as
// confirming the optimum
constexpr Real kAgreement = 1e-4;

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Eigen::Index OptimizerConfig::members_for(Eigen::Index dim, Eigen::Index rank) const {
  const Eigen::Index m = ensemble_size.value_or(dim * dim);
  return std::max(m, rank);
}

void OptimizerConfig::validate() const {
  if (restarts < 1) throw ValidationError("optimizer needs at least one restart");
  if (max_iters < 1) throw ValidationError("optimizer needs at least one iteration");
  if (!(tolerance > 0)) throw ValidationError("optimizer tolerance must be positive");
  if (ensemble_size && *ensemble_size < 1) throw ValidationError("ensemble size must be positive");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) {
  return splitmix(splitmix(splitmix(master) ^ stream) ^ (index * 0xd1342543de82ef95ULL));
}

SearchResult pattern_search(const std::function<Real(std::span<const Real>)>& objective,
                            std::vector<Real> x0, Real initial_step, int max_iters, Real tol) {
  SearchResult res;
  res.x = std::move(x0);
  const std::size_t n = res.x.size();
  res.value = objective(res.x);
  if (n == 0) {
    res.converged = true;
    return res;
  }
  const Real step_floor = 10 * tol;
  std::vector<Real> step(n, initial_step);
  for (int it = 0; it < max_iters; ++it) {
    res.iterations = it + 1;
    for (std::size_t i = 0; i < n; ++i) {
      const Real xi = res.x[i];
      bool moved = false;
      for (const Real dir : {1.0, -1.0}) {
        res.x[i] = xi + dir * step[i];
        const Real f = objective(res.x);
        if (f > res.value) {
          res.value = f;
          moved = true;
          break;
        }
      }
      if (moved) {
        step[i] = std::min(step[i] * kExpand, kMaxStep);
      } else {
        res.x[i] = xi;
        step[i] *= kContract;
      }
    }
    if (*std::max_element(step.begin(), step.end()) < step_floor) {
      res.converged = true;
      break;
    }
  }
  return res;
}

EnsembleSearch maximize_over_decompositions(const DecompositionMap& map, const RowObjective& objective,
                                            const OptimizerConfig& cfg, std::uint64_t stream,
                                            std::span<const std::vector<Real>> extra_starts) {
  cfg.validate();
  const auto restarts = static_cast<std::size_t>(cfg.restarts);
  const auto n = static_cast<std::size_t>(map.num_params());
  std::vector<SearchResult> results(restarts);

  auto run = [&](std::size_t r) {
    std::vector<Real> x0;
    if (r == 0) {
      x0 = map.spectral_params();
    } else if (r - 1 < extra_starts.size() && extra_starts[r - 1].size() == n) {
      x0 = extra_starts[r - 1];
    } else {
      std::mt19937_64 rng(derive_seed(cfg.seed, stream, r));
      std::normal_distribution<Real> normal(0.0, 1.0);
      x0.resize(n);
      for (auto& v : x0) v = normal(rng);
    }
    RMatrix rows;
    auto f = [&](std::span<const Real> p) {
      map.weighted_rows(p, rows);
      return objective(rows);
    };
    results[r] = pattern_search(f, std::move(x0), kInitialStep, cfg.max_iters, cfg.tolerance);
  };

  const std::size_t workers =
      cfg.parallel ? std::min<std::size_t>(restarts, std::max(1u, std::thread::hardware_concurrency())) : 1;
  if (workers <= 1) {
    for (std::size_t r = 0; r < restarts; ++r) run(r);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < restarts; r += workers) run(r);
      });
    for (auto& t : pool) t.join();
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (results[r].value > results[best].value) best = r;

  EnsembleSearch out;
  out.value = results[best].value;
  out.params = results[best].x;
  out.restart_values.reserve(restarts);
  for (const auto& r : results) out.restart_values.push_back(r.value);
  std::vector<Real> sorted = out.restart_values;
  std::sort(sorted.begin(), sorted.end());
  out.dispersion = out.value - sorted[sorted.size() / 2];
  int agreeing = 0;
  for (const Real v : out.restart_values)
    if (out.value - v <= kAgreement) ++agreeing;
  out.converged = results[best].converged && (restarts == 1 || agreeing >= 2);
  return out;
}

}  // namespace cohvec
