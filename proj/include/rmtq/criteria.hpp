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

#ifndef RMTQ_CRITERIA_HPP
#define RMTQ_CRITERIA_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rmtq/freeprob.hpp"
#include "rmtq/tensorlin.hpp"

namespace rmtq {

enum class Criterion { PPT, RED, RLN };

std::string to_string(Criterion c);
Criterion criterion_from_string(const std::string& s);

/// Outcome of one entanglement criterion on one state. Margins:
/// PPT/RED the minimum eigenvalue of the mapped state, RLN
/// 1 - |realign(rho)|_1; pass <=> margin >= -1e-9. Margins, not booleans,
/// are what downstream analysis should persist.
struct CriterionVerdict {
  Criterion criterion;
  bool pass = false;
  double margin = 0.0;
};

constexpr double kCriterionTol = 1e-9;

CriterionVerdict evaluate_criterion(const DensityMatrix& rho, Criterion which);

/// Radius [nk(nk-1)]^{-1/2} of the largest separable Euclidean ball around
/// the maximally mixed state.
double gurvits_radius(int n, int k);
bool in_gurvits_ball(const DensityMatrix& rho);
/// I/D + r (rho - I/D)/|rho - I/D|_F with r the Gurvits radius.
DensityMatrix project_to_gurvits_boundary(const DensityMatrix& rho);

/// Sampling regime for threshold experiments. The induced-measure parameter
/// s is tied to the grid value c by a per-criterion scale:
///   Balanced:             PPT/RLN s = c n k,  RED s = c n   (k grows as n)
///   UnbalancedFixedSecond: PPT/RED s = c n k,  RLN s = c    (k fixed)
///   UnbalancedFixedFirst:  RED     s = c                    (n fixed)
enum class Regime { Balanced, UnbalancedFixedSecond, UnbalancedFixedFirst };

std::string to_string(Regime r);
Regime regime_from_string(const std::string& s);

/// s rounded to the nearest integer >= 1.
int induced_parameter_for(Criterion criterion, Regime regime, int n, int k, double c);

struct ThresholdConfig {
  Criterion criterion = Criterion::PPT;
  Regime regime = Regime::Balanced;
  int n = 8, k = 8;
  std::vector<double> c_values;
  int trials = 100;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ThresholdPoint {
  double c = 0.0;
  int s = 1;
  int trials = 0;
  double pass_fraction = 0.0;
};

/// Pass-probability curve; fully determined by (config, seed). Trials run on
/// disjoint substreams keyed by (c index, trial index), so the result is
/// identical at any thread count.
struct ThresholdCurve {
  ThresholdConfig config;
  std::vector<ThresholdPoint> points;
};

ThresholdCurve threshold_experiment(const ThresholdConfig& config);

/// CSV schema of a ThresholdCurve (9 columns):
/// criterion,regime,n,k,c,s,trials,pass_fraction,seed
std::string threshold_csv_header();
std::vector<std::string> threshold_csv_rows(const ThresholdCurve& curve);

/// Spectrum of the partial transpose, rescaled so the limiting law has the
/// regime's mean: balanced multiplies by nk (limit mean 1), unbalanced with
/// k fixed multiplies by s k (limit mean c k). The factor is recorded on the
/// returned spectrum.
EmpiricalSpectrum rescaled_pt_spectrum(const DensityMatrix& rho, Regime regime,
                                       int s = 0);

}  // namespace rmtq

#endif  // RMTQ_CRITERIA_HPP
