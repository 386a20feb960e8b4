// Copyright 2026 The rmtq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rmtq/criteria.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "rmtq/ensembles.hpp"
#include "rmtq/parallel.hpp"

namespace rmtq {

std::string to_string(Criterion c) {
  switch (c) {
    case Criterion::PPT: return "ppt";
    case Criterion::RED: return "red";
    case Criterion::RLN: return "rln";
  }
  throw std::logic_error("unreachable");
}

Criterion criterion_from_string(const std::string& s) {
  if (s == "ppt" || s == "PPT") return Criterion::PPT;
  if (s == "red" || s == "RED") return Criterion::RED;
  if (s == "rln" || s == "RLN") return Criterion::RLN;
  throw std::invalid_argument("unknown criterion: " + s);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::Balanced: return "balanced";
    case Regime::UnbalancedFixedSecond: return "unbalanced-k-fixed";
    case Regime::UnbalancedFixedFirst: return "unbalanced-n-fixed";
  }
  throw std::logic_error("unreachable");
}

Regime regime_from_string(const std::string& s) {
  if (s == "balanced") return Regime::Balanced;
  if (s == "unbalanced-k-fixed" || s == "unbalanced") return Regime::UnbalancedFixedSecond;
  if (s == "unbalanced-n-fixed") return Regime::UnbalancedFixedFirst;
  throw std::invalid_argument("unknown regime: " + s);
}

CriterionVerdict evaluate_criterion(const DensityMatrix& rho, Criterion which) {
  if (!rho.split())
    throw std::invalid_argument("evaluate_criterion: bipartite split required");
  const Split split = *rho.split();
  double margin = 0.0;
  switch (which) {
    case Criterion::PPT:
      margin = hermitian_eigenvalues(partial_transpose(rho)).minCoeff();
      break;
    case Criterion::RED: {
      // [id (x) R](rho) = Tr_2(rho) (x) I_k - rho
      const Matrix reduced =
          partial_trace(rho.matrix(), split, Side::Second);
      const Matrix mapped =
          tensor_op(reduced, Matrix::Identity(split.second, split.second)) -
          rho.matrix();
      margin = hermitian_eigenvalues(mapped).minCoeff();
      break;
    }
    case Criterion::RLN:
      margin = 1.0 - schatten1(realign(rho));
      break;
  }
  return {which, margin >= -kCriterionTol, margin};
}

double gurvits_radius(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("gurvits_radius: dims >= 1");
  const double d = static_cast<double>(n) * static_cast<double>(k);
  return 1.0 / std::sqrt(d * (d - 1.0));
}

bool in_gurvits_ball(const DensityMatrix& rho) {
  if (!rho.split())
    throw std::invalid_argument("in_gurvits_ball: bipartite split required");
  const int d = rho.dim();
  const double dist =
      (rho.matrix() - Matrix::Identity(d, d) / static_cast<double>(d)).norm();
  return dist <= gurvits_radius(rho.split()->first, rho.split()->second);
}

DensityMatrix project_to_gurvits_boundary(const DensityMatrix& rho) {
  if (!rho.split())
    throw std::invalid_argument("gurvits boundary: bipartite split required");
  const int d = rho.dim();
  const Matrix center = Matrix::Identity(d, d) / static_cast<double>(d);
  const Matrix dir = rho.matrix() - center;
  const double norm = dir.norm();
  if (norm < 1e-14)
    throw std::invalid_argument("gurvits boundary: state is the center");
  const double r = gurvits_radius(rho.split()->first, rho.split()->second);
  return DensityMatrix::from_matrix(hermitian_part(center + (r / norm) * dir),
                                    rho.split());
}

int induced_parameter_for(Criterion criterion, Regime regime, int n, int k, double c) {
  if (c <= 0.0) throw std::invalid_argument("induced parameter: c must be positive");
  double s = 0.0;
  switch (regime) {
    case Regime::Balanced:
      s = (criterion == Criterion::RED) ? c * n : c * n * k;
      break;
    case Regime::UnbalancedFixedSecond:
      s = (criterion == Criterion::RLN) ? c : c * n * k;
      break;
    case Regime::UnbalancedFixedFirst:
      // only the RED criterion has a stated scale here (s ~ c at c0 = n)
      s = c;
      break;
  }
  return std::max(1, static_cast<int>(std::lround(s)));
}

ThresholdCurve threshold_experiment(const ThresholdConfig& config) {
  if (config.trials < 1)
    throw std::invalid_argument("threshold: trials >= 1 required");
  if (config.c_values.empty())
    throw std::invalid_argument("threshold: empty c grid");
  const long dim = static_cast<long>(config.n) * config.k;
  if (dim < 2 || dim > 4096)
    throw std::invalid_argument("threshold: nk guard (2 <= nk <= 4096)");

  const int points = static_cast<int>(config.c_values.size());
  std::vector<int> s_values(points);
  for (int ci = 0; ci < points; ++ci)
    s_values[ci] = induced_parameter_for(config.criterion, config.regime, config.n,
                                         config.k, config.c_values[ci]);

  // one substream per (c index, trial index); aggregation in trial order
  std::vector<std::vector<char>> pass(points,
                                      std::vector<char>(config.trials, 0));
  const RandomStream root(config.seed);
  const int tasks = points * config.trials;
  parallel_for(tasks, config.threads, [&](int task) {
    const int ci = task / config.trials;
    const int ti = task % config.trials;
    RandomStream rs = root.substream(ci).substream(ti);
    const DensityMatrix rho =
        sample_induced(static_cast<int>(dim), s_values[ci], rs)
            .with_split(Split{config.n, config.k});
    pass[ci][ti] = evaluate_criterion(rho, config.criterion).pass ? 1 : 0;
  });

  ThresholdCurve curve;
  curve.config = config;
  for (int ci = 0; ci < points; ++ci) {
    int count = 0;
    for (char ok : pass[ci]) count += ok;
    curve.points.push_back({config.c_values[ci], s_values[ci], config.trials,
                            static_cast<double>(count) / config.trials});
  }
  return curve;
}

std::string threshold_csv_header() {
  return "criterion,regime,n,k,c,s,trials,pass_fraction,seed";
}

std::vector<std::string> threshold_csv_rows(const ThresholdCurve& curve) {
  std::vector<std::string> rows;
  rows.reserve(curve.points.size());
  char buf[256];
  for (const auto& pt : curve.points) {
    std::snprintf(buf, sizeof buf, "%s,%s,%d,%d,%.17g,%d,%d,%.17g,%llu",
                  to_string(curve.config.criterion).c_str(),
                  to_string(curve.config.regime).c_str(), curve.config.n,
                  curve.config.k, pt.c, pt.s, pt.trials, pt.pass_fraction,
                  static_cast<unsigned long long>(curve.config.seed));
    rows.emplace_back(buf);
  }
  return rows;
}

EmpiricalSpectrum rescaled_pt_spectrum(const DensityMatrix& rho, Regime regime,
                                       int s) {
  if (!rho.split())
    throw std::invalid_argument("rescaled_pt_spectrum: bipartite split required");
  const Split split = *rho.split();
  double scale = 0.0;
  switch (regime) {
    case Regime::Balanced:
      scale = static_cast<double>(split.first) * split.second;  // limit mean 1
      break;
    case Regime::UnbalancedFixedSecond:
      if (s < 1)
        throw std::invalid_argument("rescaled_pt_spectrum: s required for this regime");
      scale = static_cast<double>(s) * split.second;  // limit mean c k
      break;
    case Regime::UnbalancedFixedFirst:
      throw std::invalid_argument("rescaled_pt_spectrum: regime has no stated scaling");
  }
  return EmpiricalSpectrum::from_eigenvalues(
      hermitian_eigenvalues(partial_transpose(rho)), scale);
}

}  // namespace rmtq
