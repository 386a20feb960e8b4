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

#ifndef RMTQ_FREEPROB_HPP
#define RMTQ_FREEPROB_HPP

#include <utility>
#include <vector>

#include "rmtq/rational.hpp"
#include "rmtq/tensorlin.hpp"

namespace rmtq {

/// Limiting spectral law: Marchenko-Pastur(c), Semicircle(mean, variance),
/// a finite atomic measure, or a law known only through a finite free
/// cumulant sequence (the result of free arithmetic).
class SpectralLaw {
 public:
  enum class Kind { MarchenkoPastur, Semicircle, Atomic, Cumulant };

  static SpectralLaw marchenko_pastur(double c);
  static SpectralLaw semicircle(double mean, double variance);
  /// Point masses (position, weight); weights nonnegative, summing to 1.
  static SpectralLaw atomic(std::vector<std::pair<double, double>> atoms);
  static SpectralLaw from_cumulants(std::vector<double> cumulants);

  Kind kind() const { return kind_; }
  bool closed_form() const { return kind_ != Kind::Cumulant; }
  double mp_ratio() const;
  double sc_mean() const;
  double sc_variance() const;
  const std::vector<std::pair<double, double>>& atoms() const;
  const std::vector<double>& cumulants() const;

 private:
  explicit SpectralLaw(Kind k) : kind_(k) {}
  Kind kind_;
  double c_ = 0.0, mean_ = 0.0, var_ = 0.0;
  std::vector<std::pair<double, double>> atoms_;
  std::vector<double> cumulants_;
};

struct LawSupport {
  double lower = 0.0, upper = 0.0;  // continuous part ([0,0] if none)
  std::vector<std::pair<double, double>> atoms;
};

struct LawPoint {
  double density = 0.0;  // of the absolutely continuous part
  double cdf = 0.0;      // includes atoms
};

/// Pointwise density/CDF of a closed-form law (rejects Cumulant laws).
LawPoint law_eval(const SpectralLaw& law, double x);
LawSupport law_support(const SpectralLaw& law);

/// First `order` free cumulants. MP(c) -> (c, c, ...); SC -> (m, var, 0, ..);
/// Atomic -> inversion of the moment-cumulant relation; Cumulant -> stored
/// values (order must not exceed what is stored). order <= 16.
std::vector<double> free_cumulants(const SpectralLaw& law, int order);

/// m_M = sum over non-crossing partitions of [M] of prod kappa_{|block|};
/// order <= 12 (non-crossing enumeration cost).
std::vector<double> moments_from_cumulants(const std::vector<double>& cumulants,
                                           int order);
std::vector<Rational> moments_from_cumulants(const std::vector<Rational>& cumulants,
                                             int order);
/// Inverse of the above, exact.
std::vector<Rational> cumulants_from_moments(const std::vector<Rational>& moments,
                                             int order);

/// Free arithmetic at the cumulant level; results carry `order` cumulants.
SpectralLaw free_add(const SpectralLaw& a, const SpectralLaw& b, int order);
SpectralLaw free_subtract(const SpectralLaw& a, const SpectralLaw& b, int order);
SpectralLaw free_power(const SpectralLaw& a, double t, int order);
SpectralLaw law_dilate(const SpectralLaw& a, double s, int order);
SpectralLaw law_shift(const SpectralLaw& a, double c, int order);

/// Support test for the free power SC(m, s^2)^{boxplus n/k} =
/// SC(tm, t s^2), t = n/k: positive iff t m - 2 sqrt(t) s > 0.
struct PositivityVerdict {
  bool positive = false;
  double margin = 0.0;  // t m - 2 sqrt(t) s
};
PositivityVerdict shifted_semicircle_k_positivity(int n, int k, double mean,
                                                  double sigma);

/// Sorted eigenvalue sample with a record of the affine rescaling applied.
struct EmpiricalSpectrum {
  std::vector<double> values;  // ascending
  double scale = 1.0;          // values = scale * raw + offset
  double offset = 0.0;

  static EmpiricalSpectrum from_values(std::vector<double> v);
  static EmpiricalSpectrum from_eigenvalues(const RealVector& eigs,
                                            double scale = 1.0, double offset = 0.0);
  double moment(int q) const;
  double min() const { return values.front(); }
  double max() const { return values.back(); }
};

/// Kolmogorov-Smirnov distance between the empirical CDF and a closed-form
/// law. For MP laws with an atom at 0 the comparison is restricted to the
/// continuous part (renormalized); sample values below 1e-8 are treated as
/// the empirical atom.
double ks_distance(const EmpiricalSpectrum& emp, const SpectralLaw& law);

}  // namespace rmtq

#endif  // RMTQ_FREEPROB_HPP
