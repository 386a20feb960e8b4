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

#include "rmtq/freeprob.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "rmtq/permutation.hpp"

namespace rmtq {

namespace {
constexpr double kAtomEps = 1e-8;  // empirical eigenvalues below this are zeros
}

SpectralLaw SpectralLaw::marchenko_pastur(double c) {
  if (!(c > 0.0)) throw std::invalid_argument("MP law: ratio c must be positive");
  SpectralLaw law(Kind::MarchenkoPastur);
  law.c_ = c;
  return law;
}

SpectralLaw SpectralLaw::semicircle(double mean, double variance) {
  if (variance < 0.0) throw std::invalid_argument("SC law: variance must be >= 0");
  SpectralLaw law(Kind::Semicircle);
  law.mean_ = mean;
  law.var_ = variance;
  return law;
}

SpectralLaw SpectralLaw::atomic(std::vector<std::pair<double, double>> atoms) {
  if (atoms.empty()) throw std::invalid_argument("atomic law: no atoms");
  double mass = 0.0;
  for (const auto& [x, w] : atoms) {
    if (w < 0.0) throw std::invalid_argument("atomic law: negative weight");
    mass += w;
  }
  if (std::abs(mass - 1.0) > 1e-9)
    throw std::invalid_argument("atomic law: weights must sum to 1");
  std::sort(atoms.begin(), atoms.end());
  SpectralLaw law(Kind::Atomic);
  law.atoms_ = std::move(atoms);
  return law;
}

SpectralLaw SpectralLaw::from_cumulants(std::vector<double> cumulants) {
  if (cumulants.empty()) throw std::invalid_argument("cumulant law: empty sequence");
  SpectralLaw law(Kind::Cumulant);
  law.cumulants_ = std::move(cumulants);
  return law;
}

double SpectralLaw::mp_ratio() const {
  if (kind_ != Kind::MarchenkoPastur) throw std::logic_error("not an MP law");
  return c_;
}
double SpectralLaw::sc_mean() const {
  if (kind_ != Kind::Semicircle) throw std::logic_error("not a semicircle law");
  return mean_;
}
double SpectralLaw::sc_variance() const {
  if (kind_ != Kind::Semicircle) throw std::logic_error("not a semicircle law");
  return var_;
}
const std::vector<std::pair<double, double>>& SpectralLaw::atoms() const {
  if (kind_ != Kind::Atomic) throw std::logic_error("not an atomic law");
  return atoms_;
}
const std::vector<double>& SpectralLaw::cumulants() const {
  if (kind_ != Kind::Cumulant) throw std::logic_error("not a cumulant law");
  return cumulants_;
}

LawSupport law_support(const SpectralLaw& law) {
  switch (law.kind()) {
    case SpectralLaw::Kind::MarchenkoPastur: {
      const double c = law.mp_ratio(), rc = std::sqrt(c);
      LawSupport s;
      s.lower = (1.0 - rc) * (1.0 - rc);
      s.upper = (1.0 + rc) * (1.0 + rc);
      if (c < 1.0) s.atoms.push_back({0.0, 1.0 - c});
      return s;
    }
    case SpectralLaw::Kind::Semicircle: {
      const double sd = std::sqrt(law.sc_variance());
      return {law.sc_mean() - 2.0 * sd, law.sc_mean() + 2.0 * sd, {}};
    }
    case SpectralLaw::Kind::Atomic: {
      LawSupport s;
      s.lower = s.upper = 0.0;
      s.atoms = law.atoms();
      return s;
    }
    case SpectralLaw::Kind::Cumulant:
      throw std::invalid_argument("law_support: cumulant laws carry no density");
  }
  throw std::logic_error("unreachable");
}

namespace {

double mp_density(double c, double x) {
  const double rc = std::sqrt(c);
  const double a = (1.0 - rc) * (1.0 - rc), b = (1.0 + rc) * (1.0 + rc);
  if (x <= a || x >= b) return 0.0;
  return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * x);
}

// integral of the MP continuous part over (a, x], via the substitution
// x = mid + half sin(theta) that removes the edge square roots
struct MpCdfTable {
  double a, b;
  std::vector<double> cum;  // cumulative integral at theta grid nodes

  explicit MpCdfTable(double c) {
    const double rc = std::sqrt(c);
    a = (1.0 - rc) * (1.0 - rc);
    b = (1.0 + rc) * (1.0 + rc);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const int kNodes = 1 << 14;
    cum.resize(kNodes + 1);
    cum[0] = 0.0;
    const double dtheta = std::numbers::pi / kNodes;
    auto g = [&](double theta) {
      const double ct = std::cos(theta);
      const double x = mid + half * std::sin(theta);
      return half * half * ct * ct / (2.0 * std::numbers::pi * x);
    };
    double prev = g(-std::numbers::pi / 2.0);
    for (int i = 1; i <= kNodes; ++i) {
      const double theta = -std::numbers::pi / 2.0 + i * dtheta;
      const double cur = g(theta);
      cum[i] = cum[i - 1] + 0.5 * (prev + cur) * dtheta;
      prev = cur;
    }
  }

  double continuous_cdf(double x) const {  // mass of (a, x]
    if (x <= a) return 0.0;
    if (x >= b) return cum.back();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    const double theta = std::asin(std::clamp((x - mid) / half, -1.0, 1.0));
    const double pos = (theta + std::numbers::pi / 2.0) / std::numbers::pi *
                       static_cast<double>(cum.size() - 1);
    const int i = std::clamp(static_cast<int>(pos), 0,
                             static_cast<int>(cum.size()) - 2);
    const double frac = pos - i;
    return cum[i] * (1.0 - frac) + cum[i + 1] * frac;
  }
};

const MpCdfTable& mp_table(double c) {
  static std::mutex mu;
  static std::map<double, MpCdfTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(c);
  if (it == cache.end()) it = cache.emplace(c, MpCdfTable(c)).first;
  return it->second;
}

double sc_density(double mean, double var, double x) {
  if (var == 0.0) return 0.0;
  const double rad = 4.0 * var - (x - mean) * (x - mean);
  if (rad <= 0.0) return 0.0;
  return std::sqrt(rad) / (2.0 * std::numbers::pi * var);
}

double sc_cdf(double mean, double var, double x) {
  if (var == 0.0) return x >= mean ? 1.0 : 0.0;
  const double u = std::clamp((x - mean) / std::sqrt(var), -2.0, 2.0);
  return 0.5 + (u * std::sqrt(4.0 - u * u) + 4.0 * std::asin(u / 2.0)) /
                   (4.0 * std::numbers::pi);
}

}  // namespace

LawPoint law_eval(const SpectralLaw& law, double x) {
  switch (law.kind()) {
    case SpectralLaw::Kind::MarchenkoPastur: {
      const double c = law.mp_ratio();
      LawPoint p;
      p.density = mp_density(c, x);
      p.cdf = mp_table(c).continuous_cdf(x);
      if (c < 1.0 && x >= 0.0) p.cdf += 1.0 - c;
      return p;
    }
    case SpectralLaw::Kind::Semicircle:
      return {sc_density(law.sc_mean(), law.sc_variance(), x),
              sc_cdf(law.sc_mean(), law.sc_variance(), x)};
    case SpectralLaw::Kind::Atomic: {
      LawPoint p;
      for (const auto& [pos, w] : law.atoms())
        if (pos <= x) p.cdf += w;
      return p;
    }
    case SpectralLaw::Kind::Cumulant:
      throw std::invalid_argument("law_eval: cumulant laws carry no density");
  }
  throw std::logic_error("unreachable");
}

namespace {

template <typename T>
std::vector<T> moments_from_cumulants_impl(const std::vector<T>& kappa, int order) {
  if (order < 1 || order > 12)
    throw std::invalid_argument("moments_from_cumulants: order guard 1 <= M <= 12");
  if (static_cast<int>(kappa.size()) < order)
    throw std::invalid_argument("moments_from_cumulants: not enough cumulants");
  std::vector<T> m(order);
  for (int M = 1; M <= order; ++M) {
    T total(0);
    for (const auto& part : noncrossing_partitions(M)) {
      T prod(1);
      for (const auto& block : part.blocks) prod *= kappa[block.size() - 1];
      total += prod;
    }
    m[M - 1] = total;
  }
  return m;
}

}  // namespace

std::vector<double> moments_from_cumulants(const std::vector<double>& cumulants,
                                           int order) {
  return moments_from_cumulants_impl(cumulants, order);
}

std::vector<Rational> moments_from_cumulants(const std::vector<Rational>& cumulants,
                                             int order) {
  return moments_from_cumulants_impl(cumulants, order);
}

std::vector<Rational> cumulants_from_moments(const std::vector<Rational>& moments,
                                             int order) {
  if (order < 1 || order > 12)
    throw std::invalid_argument("cumulants_from_moments: order guard 1 <= M <= 12");
  if (static_cast<int>(moments.size()) < order)
    throw std::invalid_argument("cumulants_from_moments: not enough moments");
  std::vector<Rational> kappa(order);
  for (int M = 1; M <= order; ++M) {
    // m_M = kappa_M + sum over non-full NC partitions (all blocks < M)
    Rational rest(0);
    for (const auto& part : noncrossing_partitions(M)) {
      if (part.blocks.size() == 1) continue;
      Rational prod(1);
      for (const auto& block : part.blocks) prod *= kappa[block.size() - 1];
      rest += prod;
    }
    kappa[M - 1] = moments[M - 1] - rest;
  }
  return kappa;
}

std::vector<double> free_cumulants(const SpectralLaw& law, int order) {
  if (order < 1 || order > 16)
    throw std::invalid_argument("free_cumulants: order guard 1 <= M <= 16");
  switch (law.kind()) {
    case SpectralLaw::Kind::MarchenkoPastur:
      return std::vector<double>(order, law.mp_ratio());
    case SpectralLaw::Kind::Semicircle: {
      std::vector<double> k(order, 0.0);
      k[0] = law.sc_mean();
      if (order >= 2) k[1] = law.sc_variance();
      return k;
    }
    case SpectralLaw::Kind::Atomic: {
      if (order > 12)
        throw std::invalid_argument(
            "free_cumulants: atomic inversion guarded to order 12");
      // power-sum moments, then invert the non-crossing moment-cumulant sum
      std::vector<double> md(order);
      for (int q = 1; q <= order; ++q) {
        double mq = 0.0;
        for (const auto& [x, w] : law.atoms()) mq += w * std::pow(x, q);
        md[q - 1] = mq;
      }
      std::vector<double> kappa(order, 0.0);
      for (int M = 1; M <= order; ++M) {
        double rest = 0.0;
        for (const auto& part : noncrossing_partitions(M)) {
          if (part.blocks.size() == 1) continue;
          double prod = 1.0;
          for (const auto& block : part.blocks) prod *= kappa[block.size() - 1];
          rest += prod;
        }
        kappa[M - 1] = md[M - 1] - rest;
      }
      return kappa;
    }
    case SpectralLaw::Kind::Cumulant: {
      const auto& k = law.cumulants();
      if (static_cast<int>(k.size()) < order)
        throw std::invalid_argument("free_cumulants: law carries fewer cumulants");
      return {k.begin(), k.begin() + order};
    }
  }
  throw std::logic_error("unreachable");
}

SpectralLaw free_add(const SpectralLaw& a, const SpectralLaw& b, int order) {
  auto ka = free_cumulants(a, order), kb = free_cumulants(b, order);
  for (int i = 0; i < order; ++i) ka[i] += kb[i];
  return SpectralLaw::from_cumulants(std::move(ka));
}

SpectralLaw free_subtract(const SpectralLaw& a, const SpectralLaw& b, int order) {
  auto ka = free_cumulants(a, order), kb = free_cumulants(b, order);
  for (int i = 0; i < order; ++i) ka[i] += (i % 2 == 0 ? -kb[i] : kb[i]);
  return SpectralLaw::from_cumulants(std::move(ka));
}

SpectralLaw free_power(const SpectralLaw& a, double t, int order) {
  if (t < 0.0) throw std::invalid_argument("free_power: t >= 0 required");
  auto k = free_cumulants(a, order);
  for (auto& v : k) v *= t;
  return SpectralLaw::from_cumulants(std::move(k));
}

SpectralLaw law_dilate(const SpectralLaw& a, double s, int order) {
  auto k = free_cumulants(a, order);
  double f = 1.0;
  for (int i = 0; i < order; ++i) {
    f *= s;
    k[i] *= f;
  }
  return SpectralLaw::from_cumulants(std::move(k));
}

SpectralLaw law_shift(const SpectralLaw& a, double c, int order) {
  auto k = free_cumulants(a, order);
  k[0] += c;
  return SpectralLaw::from_cumulants(std::move(k));
}

PositivityVerdict shifted_semicircle_k_positivity(int n, int k, double mean,
                                                  double sigma) {
  if (n < 1 || k < 1)
    throw std::invalid_argument("k_positivity: n, k >= 1 required");
  if (sigma < 0.0) throw std::invalid_argument("k_positivity: sigma >= 0 required");
  const double t = static_cast<double>(n) / static_cast<double>(k);
  const double margin = t * mean - 2.0 * std::sqrt(t) * sigma;
  return {margin > 0.0, margin};
}

EmpiricalSpectrum EmpiricalSpectrum::from_values(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("empirical spectrum: empty sample");
  std::sort(v.begin(), v.end());
  EmpiricalSpectrum e;
  e.values = std::move(v);
  return e;
}

EmpiricalSpectrum EmpiricalSpectrum::from_eigenvalues(const RealVector& eigs,
                                                      double scale, double offset) {
  std::vector<double> v(eigs.size());
  for (int i = 0; i < eigs.size(); ++i) v[i] = scale * eigs(i) + offset;
  auto e = from_values(std::move(v));
  e.scale = scale;
  e.offset = offset;
  return e;
}

double EmpiricalSpectrum::moment(int q) const {
  double m = 0.0;
  for (double v : values) m += std::pow(v, q);
  return m / static_cast<double>(values.size());
}

double ks_distance(const EmpiricalSpectrum& emp, const SpectralLaw& law) {
  if (!law.closed_form())
    throw std::invalid_argument("ks_distance: cumulant laws have no CDF");

  std::vector<double> sample = emp.values;
  bool renormalize = false;
  double atom_mass = 0.0;
  if (law.kind() == SpectralLaw::Kind::MarchenkoPastur && law.mp_ratio() < 1.0) {
    // compare the continuous parts; finite-size zero eigenvalues are exact zeros
    atom_mass = 1.0 - law.mp_ratio();
    std::erase_if(sample, [](double x) { return x < kAtomEps; });
    if (sample.empty())
      throw std::invalid_argument("ks_distance: no continuous part in sample");
    renormalize = true;
  }

  const double n = static_cast<double>(sample.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double f = law_eval(law, sample[i]).cdf;
    if (renormalize) f = std::clamp((f - atom_mass) / (1.0 - atom_mass), 0.0, 1.0);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    ks = std::max(ks, std::max(std::abs(f - lo), std::abs(f - hi)));
  }
  return ks;
}

}  // namespace rmtq
