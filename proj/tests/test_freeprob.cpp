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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "rmtq/ensembles.hpp"
#include "rmtq/random.hpp"

using namespace rmtq;

namespace {

// inverse CDF by bisection, for drawing from a closed-form law
double law_quantile(const SpectralLaw& law, double u) {
  const LawSupport s = law_support(law);
  double lo = s.lower - 1.0, hi = s.upper + 1.0;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (law_eval(law, mid).cdf < u) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// integral of x^q against the law's continuous density, Simpson on the
// theta substitution that removes the edge square roots
double law_moment_by_quadrature(const SpectralLaw& law, int q) {
  const LawSupport s = law_support(law);
  const double mid = 0.5 * (s.lower + s.upper), half = 0.5 * (s.upper - s.lower);
  const int nodes = 40001;
  const double h = std::numbers::pi / (nodes - 1);
  double total = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double theta = -std::numbers::pi / 2 + i * h;
    const double simpson = (i == 0 || i == nodes - 1) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    const double x = mid + half * std::sin(theta);
    const double jac = half * std::cos(theta);
    total += simpson * std::pow(x, q) * law_eval(law, x).density * jac;
  }
  return total * h / 3.0;
}

}  // namespace

TEST_SUITE("freeprob") {

TEST_CASE("supports of the closed-form laws") {
  const LawSupport mp1 = law_support(SpectralLaw::marchenko_pastur(1.0));
  CHECK(mp1.lower == doctest::Approx(0.0));
  CHECK(mp1.upper == doctest::Approx(4.0));
  CHECK(mp1.atoms.empty());

  const LawSupport mp4 = law_support(SpectralLaw::marchenko_pastur(4.0));
  CHECK(mp4.lower == doctest::Approx(1.0));
  CHECK(mp4.upper == doctest::Approx(9.0));

  const LawSupport mp_half = law_support(SpectralLaw::marchenko_pastur(0.5));
  REQUIRE(mp_half.atoms.size() == 1);
  CHECK(mp_half.atoms[0].first == 0.0);
  CHECK(mp_half.atoms[0].second == doctest::Approx(0.5));

  // SC(1, 1/c) has positive support exactly when c > 4
  for (double c : {3.8, 4.2}) {
    const LawSupport sc = law_support(SpectralLaw::semicircle(1.0, 1.0 / c));
    CHECK((sc.lower > 0.0) == (c > 4.0));
  }

  CHECK_THROWS_AS(law_support(SpectralLaw::from_cumulants({1.0})),
                  std::logic_error);
}

TEST_CASE("law evaluation: total mass, mean, and atoms") {
  for (double c : {0.5, 1.0, 2.5}) {
    const SpectralLaw law = SpectralLaw::marchenko_pastur(c);
    const LawSupport s = law_support(law);
    CHECK(law_eval(law, s.upper + 1.0).cdf == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(law_moment_by_quadrature(law, 1) == doctest::Approx(c).epsilon(1e-6));
    if (c < 1.0)
      CHECK(law_eval(law, 0.0).cdf == doctest::Approx(1.0 - c).epsilon(1e-9));
  }
  const SpectralLaw sc = SpectralLaw::semicircle(1.0, 0.25);
  CHECK(law_eval(sc, 1.0).cdf == doctest::Approx(0.5));
  CHECK(law_eval(sc, 2.0).cdf == doctest::Approx(1.0));
  CHECK(law_eval(sc, 1.0).density == doctest::Approx(1.0 / (std::numbers::pi * 0.5)));

  const SpectralLaw atomic = SpectralLaw::atomic({{0.0, 0.25}, {1.0, 0.75}});
  CHECK(law_eval(atomic, -0.5).cdf == doctest::Approx(0.0));
  CHECK(law_eval(atomic, 0.5).cdf == doctest::Approx(0.25));
  CHECK(law_eval(atomic, 1.5).cdf == doctest::Approx(1.0));
}

TEST_CASE("free cumulants of the basic laws") {
  const auto sc = free_cumulants(SpectralLaw::semicircle(0.0, 1.0), 6);
  CHECK(sc[0] == 0.0);
  CHECK(sc[1] == 1.0);
  for (int i = 2; i < 6; ++i) CHECK(sc[i] == 0.0);

  const auto mp = free_cumulants(SpectralLaw::marchenko_pastur(2.0), 5);
  for (double k : mp) CHECK(k == doctest::Approx(2.0));

  // delta_1 has cumulants (1, 0, 0, ...)
  const auto point = free_cumulants(SpectralLaw::atomic({{1.0, 1.0}}), 4);
  CHECK(point[0] == doctest::Approx(1.0));
  for (int i = 1; i < 4; ++i) CHECK(point[i] == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(free_cumulants(SpectralLaw::from_cumulants({1.0, 2.0}), 5),
                  std::invalid_argument);
}

TEST_CASE("moments from cumulants over non-crossing partitions") {
  // semicircle: Catalan even moments
  const auto sc_m = moments_from_cumulants(std::vector<double>{0, 1, 0, 0, 0, 0}, 6);
  CHECK(sc_m[0] == 0.0);
  CHECK(sc_m[1] == doctest::Approx(1.0));
  CHECK(sc_m[3] == doctest::Approx(2.0));
  CHECK(sc_m[5] == doctest::Approx(5.0));

  // MP(4): m1 = 4, m2 = kappa2 + kappa1^2 = 20
  const auto mp_m = moments_from_cumulants(std::vector<double>{4, 4}, 2);
  CHECK(mp_m[0] == doctest::Approx(4.0));
  CHECK(mp_m[1] == doctest::Approx(20.0));

  // point mass at 1: all moments 1
  const auto pt = moments_from_cumulants(std::vector<double>{1, 0, 0, 0, 0}, 5);
  for (double m : pt) CHECK(m == doctest::Approx(1.0));
}

TEST_CASE("MP moments agree between cumulants and density quadrature") {
  const double c = 2.0;
  const SpectralLaw law = SpectralLaw::marchenko_pastur(c);
  const auto moments = moments_from_cumulants(free_cumulants(law, 6), 6);
  for (int q = 1; q <= 6; ++q) {
    const double direct = law_moment_by_quadrature(law, q);
    CHECK(std::abs(moments[q - 1] - direct) / std::abs(direct) < 1e-6);
  }
}

TEST_CASE("moment-cumulant round trip is exact over the rationals") {
  // deterministic pseudo-random small rationals
  RandomStream rs(300, 0);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<Rational> kappa;
    for (int i = 0; i < 8; ++i) {
      const int num = static_cast<int>(rs.next_u64() % 21) - 10;
      const int den = 1 + static_cast<int>(rs.next_u64() % 6);
      kappa.emplace_back(num, den);
    }
    const auto moments = moments_from_cumulants(kappa, 8);
    const auto back = cumulants_from_moments(moments, 8);
    for (int i = 0; i < 8; ++i) CHECK(back[i] == kappa[i]);
  }
}

TEST_CASE("free arithmetic on cumulant sequences") {
  const SpectralLaw sc1 = SpectralLaw::semicircle(0.0, 1.0);
  const auto sum = free_cumulants(free_add(sc1, sc1, 6), 6);
  CHECK(sum[0] == 0.0);
  CHECK(sum[1] == doctest::Approx(2.0));
  for (int i = 2; i < 6; ++i) CHECK(sum[i] == doctest::Approx(0.0));

  // free difference of free Poissons: kappa_m = a + (-1)^m b
  const double a = 30, b = 10;
  const SpectralLaw diff = free_subtract(SpectralLaw::marchenko_pastur(a),
                                         SpectralLaw::marchenko_pastur(b), 6);
  const auto kd = free_cumulants(diff, 6);
  for (int m = 1; m <= 6; ++m)
    CHECK(kd[m - 1] == doctest::Approx(a + (m % 2 == 0 ? b : -b)));

  // commutativity and associativity at the cumulant level
  const SpectralLaw x = SpectralLaw::marchenko_pastur(1.5);
  const SpectralLaw y = SpectralLaw::semicircle(0.5, 2.0);
  const SpectralLaw z = SpectralLaw::atomic({{2.0, 1.0}});
  const auto xy = free_cumulants(free_add(x, y, 6), 6);
  const auto yx = free_cumulants(free_add(y, x, 6), 6);
  for (int i = 0; i < 6; ++i) CHECK(xy[i] == doctest::Approx(yx[i]));
  const auto xyz1 = free_cumulants(free_add(free_add(x, y, 6), z, 6), 6);
  const auto xyz2 = free_cumulants(free_add(x, free_add(y, z, 6), 6), 6);
  for (int i = 0; i < 6; ++i) CHECK(xyz1[i] == doctest::Approx(xyz2[i]));

  // dilation: moments scale as a^M
  const auto base_m = moments_from_cumulants(free_cumulants(x, 5), 5);
  const auto dil_m =
      moments_from_cumulants(free_cumulants(law_dilate(x, 2.0, 5), 5), 5);
  for (int q = 1; q <= 5; ++q)
    CHECK(dil_m[q - 1] == doctest::Approx(std::pow(2.0, q) * base_m[q - 1]));

  // shift touches only the first cumulant
  const auto shifted = free_cumulants(law_shift(x, 3.0, 5), 5);
  const auto orig = free_cumulants(x, 5);
  CHECK(shifted[0] == doctest::Approx(orig[0] + 3.0));
  for (int i = 1; i < 5; ++i) CHECK(shifted[i] == doctest::Approx(orig[i]));
}

TEST_CASE("free power of the single-channel defect measure matches Monte Carlo") {
  // mu = delta_1 pushed through mu_(k) = (1-1/k) delta_0 + (1/k) delta_1,
  // then the k^2-fold free additive power; the simulation is the
  // fixed-output-regime isometry channel applied to the normalized identity
  const int k = 2, n = 400;
  const SpectralLaw defect =
      SpectralLaw::atomic({{0.0, 1.0 - 1.0 / k}, {1.0, 1.0 / k}});
  const SpectralLaw limit = free_power(defect, static_cast<double>(k) * k, 4);
  const auto predicted = moments_from_cumulants(free_cumulants(limit, 4), 4);
  // predicted: m1 = 2, m2 = 5, m3 = 14, m4 = 41.75 at k = 2
  CHECK(predicted[0] == doctest::Approx(2.0));
  CHECK(predicted[1] == doctest::Approx(5.0));

  RandomStream rs(301, 0);
  const int draws = 10;
  std::vector<double> avg(4, 0.0);
  for (int t = 0; t < draws; ++t) {
    // V: C^n -> C^n (x) C^k, output the first factor, Z = Phi(I/n)
    const QuantumChannel ch = sample_random_isometry_channel(k, n, n, rs);
    const Matrix z = ch.apply_to(Matrix::Identity(n, n) / n);
    const RealVector eigs = hermitian_eigenvalues(z);
    // scaled spectrum: mean of mu is 1, so the factor is k n
    for (int q = 1; q <= 4; ++q) {
      double m = 0.0;
      for (int i = 0; i < eigs.size(); ++i)
        m += std::pow(static_cast<double>(k) * n * eigs(i), q);
      avg[q - 1] += m / eigs.size() / draws;
    }
  }
  for (int q = 1; q <= 4; ++q)
    CHECK(std::abs(avg[q - 1] - predicted[q - 1]) / predicted[q - 1] < 0.05);
}

TEST_CASE("shifted semicircle k-positivity support rule") {
  CHECK(shifted_semicircle_k_positivity(3, 1, 1.0, 0.0).positive);
  CHECK(shifted_semicircle_k_positivity(7, 2, 1.0, 0.0).positive);
  CHECK_FALSE(shifted_semicircle_k_positivity(5, 1, 0.0, 1.0).positive);
  const auto verdict = shifted_semicircle_k_positivity(4, 1, 1.0, 0.9);
  CHECK(verdict.positive);
  CHECK(verdict.margin == doctest::Approx(0.4));
  CHECK_THROWS_AS(shifted_semicircle_k_positivity(4, 1, 1.0, -0.1),
                  std::invalid_argument);
}

TEST_CASE("KS distance: self-consistency and rejection of cumulant laws") {
  RandomStream rs(302, 0);
  for (const SpectralLaw& law :
       {SpectralLaw::marchenko_pastur(1.0), SpectralLaw::semicircle(1.0, 0.2)}) {
    std::vector<double> sample;
    sample.reserve(100000);
    for (int i = 0; i < 100000; ++i)
      sample.push_back(law_quantile(law, rs.next_double()));
    const double ks =
        ks_distance(EmpiricalSpectrum::from_values(std::move(sample)), law);
    CHECK(ks < 0.01);
  }
  CHECK_THROWS_AS(ks_distance(EmpiricalSpectrum::from_values({1.0}),
                              SpectralLaw::from_cumulants({1.0})),
                  std::invalid_argument);
}

TEST_CASE("KS distance handles the MP atom by renormalizing") {
  // c < 1: exact zeros carry the atom; the continuous parts should still match
  RandomStream rs(303, 0);
  const double c = 0.5;
  const int d = 400, s = 200;
  const Matrix w = sample_wishart(d, s, rs);
  const RealVector eigs = hermitian_eigenvalues(w);
  std::vector<double> scaled;
  for (int i = 0; i < d; ++i) scaled.push_back(std::max(0.0, eigs(i)) / d);
  const double ks = ks_distance(EmpiricalSpectrum::from_values(scaled),
                                SpectralLaw::marchenko_pastur(c));
  CHECK(ks < 0.06);
  // the empirical atom mass matches max(1-c, 0)
  int zeros = 0;
  for (double v : scaled)
    if (v < 1e-8) ++zeros;
  CHECK(std::abs(static_cast<double>(zeros) / d - (1.0 - c)) < 0.01);
}

TEST_CASE("empirical spectrum bookkeeping") {
  const auto spec = EmpiricalSpectrum::from_values({3.0, 1.0, 2.0});
  CHECK(spec.values == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(spec.moment(1) == doctest::Approx(2.0));
  CHECK(spec.moment(2) == doctest::Approx(14.0 / 3.0));

  RealVector eigs(2);
  eigs << 0.5, 0.25;
  const auto scaled = EmpiricalSpectrum::from_eigenvalues(eigs, 4.0);
  CHECK(scaled.values == std::vector<double>{1.0, 2.0});
  CHECK(scaled.scale == 4.0);
}

}  // TEST_SUITE
