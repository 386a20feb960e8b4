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
#include <sstream>

#include "doctest.h"
#include "rmtq/ensembles.hpp"
#include "rmtq/random.hpp"

using namespace rmtq;

TEST_SUITE("criteria") {

TEST_CASE("maximally mixed state passes all three criteria") {
  const DensityMatrix rho = DensityMatrix::maximally_mixed(6, Split{2, 3});
  for (Criterion c : {Criterion::PPT, Criterion::RED, Criterion::RLN}) {
    const CriterionVerdict v = evaluate_criterion(rho, c);
    CHECK(v.pass);
    CHECK(v.margin > 0.0);
  }
}

TEST_CASE("maximally entangled state fails PPT and RLN with known margins") {
  for (int d : {2, 3}) {
    const DensityMatrix omega = max_entangled(d).density();
    const CriterionVerdict ppt = evaluate_criterion(omega, Criterion::PPT);
    CHECK_FALSE(ppt.pass);
    CHECK(ppt.margin == doctest::Approx(-1.0 / d).epsilon(1e-9));
    const CriterionVerdict rln = evaluate_criterion(omega, Criterion::RLN);
    CHECK_FALSE(rln.pass);
    CHECK(rln.margin == doctest::Approx(1.0 - d).epsilon(1e-9));
  }
}

TEST_CASE("criterion evaluation requires a split") {
  CHECK_THROWS_AS(evaluate_criterion(DensityMatrix::maximally_mixed(4),
                                     Criterion::PPT),
                  std::invalid_argument);
}

TEST_CASE("PPT and RED verdicts coincide when the second factor is a qubit") {
  RandomStream rs(400, 0);
  int entangled_seen = 0, separable_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho =
        sample_induced(6, 6 + static_cast<int>(rs.next_u64() % 20), rs)
            .with_split(Split{3, 2});
    const bool ppt = evaluate_criterion(rho, Criterion::PPT).pass;
    const bool red = evaluate_criterion(rho, Criterion::RED).pass;
    CHECK(ppt == red);
    (ppt ? separable_seen : entangled_seen) += 1;
  }
  // the sample must exercise both outcomes for the check to mean anything
  CHECK(entangled_seen > 0);
  CHECK(separable_seen > 0);
}

TEST_CASE("product pure states pass all three criteria") {
  RandomStream rs(401, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector u = sample_pure_uniform(3, rs).amplitudes();
    const Vector v = sample_pure_uniform(2, rs).amplitudes();
    const PureState prod = PureState::from_vector(tensor_vec(u, v), Split{3, 2});
    const DensityMatrix rho = prod.density();
    for (Criterion c : {Criterion::PPT, Criterion::RED, Criterion::RLN})
      CHECK(evaluate_criterion(rho, c).margin >= -1e-9);
  }
}

TEST_CASE("PPT spectrum does not depend on which factor is transposed") {
  RandomStream rs(402, 0);
  const DensityMatrix rho = sample_induced(6, 9, rs).with_split(Split{2, 3});
  const int n = 2, k = 3;
  // [transp (x) id](rho) built from the definition
  Matrix other(6, 6);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          other(i + n * a, j + n * b) = rho.matrix()(j + n * a, i + n * b);
  const RealVector lhs = hermitian_eigenvalues(partial_transpose(rho));
  const RealVector rhs = hermitian_eigenvalues(other);
  for (int i = 0; i < 6; ++i) CHECK(lhs(i) == doctest::Approx(rhs(i)).epsilon(1e-10));
}

TEST_CASE("verdict margins are invariant under local unitaries") {
  RandomStream rs(403, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix rho = sample_induced(6, 7, rs).with_split(Split{2, 3});
    const Matrix u = sample_haar_unitary(2, rs);
    const Matrix v = sample_haar_unitary(3, rs);
    const Matrix rot = tensor_op(u, v);
    const DensityMatrix moved = DensityMatrix::from_matrix(
        hermitian_part(rot * rho.matrix() * rot.adjoint()), Split{2, 3});
    for (Criterion c : {Criterion::PPT, Criterion::RED, Criterion::RLN}) {
      CHECK(evaluate_criterion(moved, c).margin ==
            doctest::Approx(evaluate_criterion(rho, c).margin).epsilon(1e-8));
    }
  }
}

TEST_CASE("gurvits ball") {
  CHECK(gurvits_radius(2, 2) == doctest::Approx(1.0 / std::sqrt(12.0)));
  const DensityMatrix center = DensityMatrix::maximally_mixed(4, Split{2, 2});
  CHECK(in_gurvits_ball(center));

  RandomStream rs(404, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const DensityMatrix rho = sample_induced(4, 4, rs).with_split(Split{2, 2});
    const DensityMatrix boundary = project_to_gurvits_boundary(rho);
    const double dist =
        (boundary.matrix() - center.matrix()).norm();
    CHECK(dist == doctest::Approx(gurvits_radius(2, 2)).epsilon(1e-10));
    for (Criterion c : {Criterion::PPT, Criterion::RED, Criterion::RLN})
      CHECK(evaluate_criterion(boundary, c).margin >= -1e-9);
  }
}

TEST_CASE("induced parameter scaling per criterion and regime") {
  CHECK(induced_parameter_for(Criterion::PPT, Regime::Balanced, 32, 32, 2.0) ==
        2048);
  CHECK(induced_parameter_for(Criterion::RED, Regime::Balanced, 32, 32, 1.5) ==
        48);
  CHECK(induced_parameter_for(Criterion::RLN, Regime::Balanced, 24, 24, 0.72) ==
        415);  // round(0.72 * 576)
  CHECK(induced_parameter_for(Criterion::PPT, Regime::UnbalancedFixedSecond, 64,
                              3, 3.0) == 576);
  CHECK(induced_parameter_for(Criterion::RLN, Regime::UnbalancedFixedSecond, 64,
                              3, 9.0) == 9);
  // rounding floors at 1
  CHECK(induced_parameter_for(Criterion::RLN, Regime::UnbalancedFixedSecond, 64,
                              3, 0.2) == 1);
}

TEST_CASE("threshold experiment brackets the PPT transition at desk scale") {
  ThresholdConfig config;
  config.criterion = Criterion::PPT;
  config.regime = Regime::Balanced;
  config.n = config.k = 16;
  config.c_values = {1.0, 10.0};
  config.trials = 30;
  config.seed = 405;
  config.threads = 2;
  const ThresholdCurve curve = threshold_experiment(config);
  REQUIRE(curve.points.size() == 2);
  CHECK(curve.points[0].pass_fraction <= 0.1);
  CHECK(curve.points[1].pass_fraction >= 0.9);
  CHECK(curve.points[0].s == 256);
  CHECK(curve.points[1].s == 2560);
}

TEST_CASE("threshold curves are reproducible at any thread count") {
  ThresholdConfig config;
  config.criterion = Criterion::PPT;
  config.regime = Regime::Balanced;
  config.n = config.k = 8;
  config.c_values = {2.0, 5.0};
  config.trials = 16;
  config.seed = 406;
  config.threads = 1;
  const ThresholdCurve serial = threshold_experiment(config);
  config.threads = 4;
  const ThresholdCurve parallel = threshold_experiment(config);
  REQUIRE(serial.points.size() == parallel.points.size());
  for (std::size_t i = 0; i < serial.points.size(); ++i) {
    CHECK(serial.points[i].pass_fraction == parallel.points[i].pass_fraction);
    CHECK(serial.points[i].s == parallel.points[i].s);
  }
}

TEST_CASE("threshold CSV schema") {
  CHECK(threshold_csv_header() ==
        "criterion,regime,n,k,c,s,trials,pass_fraction,seed");
  ThresholdConfig config;
  config.criterion = Criterion::RLN;
  config.regime = Regime::Balanced;
  config.n = config.k = 4;
  config.c_values = {0.5};
  config.trials = 4;
  config.seed = 407;
  const auto rows = threshold_csv_rows(threshold_experiment(config));
  REQUIRE(rows.size() == 1);
  int commas = 0;
  for (char ch : rows[0])
    if (ch == ',') ++commas;
  CHECK(commas == 8);
  CHECK(rows[0].substr(0, 4) == "rln,");
}

TEST_CASE("rescaled PT spectrum conventions") {
  RandomStream rs(408, 0);
  // balanced: mean exactly 1 after multiplying by nk (trace is exactly one)
  const DensityMatrix rho = sample_induced(64, 320, rs).with_split(Split{8, 8});
  const EmpiricalSpectrum balanced = rescaled_pt_spectrum(rho, Regime::Balanced);
  CHECK(balanced.scale == doctest::Approx(64.0));
  CHECK(balanced.moment(1) == doctest::Approx(1.0).epsilon(1e-9));

  // unbalanced with k fixed: mean is exactly c k
  const int n = 48, k = 2;
  const double c = 6.0;
  const int s = induced_parameter_for(Criterion::PPT, Regime::UnbalancedFixedSecond,
                                      n, k, c);
  const DensityMatrix rho2 = sample_induced(n * k, s, rs).with_split(Split{n, k});
  const EmpiricalSpectrum unbalanced =
      rescaled_pt_spectrum(rho2, Regime::UnbalancedFixedSecond, s);
  CHECK(unbalanced.moment(1) == doctest::Approx(c * k).epsilon(1e-9));
  CHECK_THROWS_AS(rescaled_pt_spectrum(rho2, Regime::UnbalancedFixedSecond),
                  std::invalid_argument);
}

TEST_CASE("unbalanced PT spectrum matches the free difference law at low order") {
  // k = 2, c = 10: the rescaled PT spectrum approaches
  // MP(30) boxminus MP(10); desk-scale check at n = 64 with pooled draws
  RandomStream rs(409, 0);
  const int n = 64, k = 2;
  const double c = 10.0;
  const int s = static_cast<int>(std::lround(c * n * k));
  const SpectralLaw law = free_subtract(SpectralLaw::marchenko_pastur(c * k * (k + 1) / 2),
                                        SpectralLaw::marchenko_pastur(c * k * (k - 1) / 2), 4);
  const auto predicted = moments_from_cumulants(free_cumulants(law, 4), 4);
  std::vector<double> avg(4, 0.0);
  const int draws = 8;
  for (int t = 0; t < draws; ++t) {
    const DensityMatrix rho = sample_induced(n * k, s, rs).with_split(Split{n, k});
    const EmpiricalSpectrum spec =
        rescaled_pt_spectrum(rho, Regime::UnbalancedFixedSecond, s);
    for (int q = 1; q <= 4; ++q) avg[q - 1] += spec.moment(q) / draws;
  }
  for (int q = 1; q <= 4; ++q)
    CHECK(std::abs(avg[q - 1] - predicted[q - 1]) / std::abs(predicted[q - 1]) <
          0.08);
}

TEST_CASE("criterion and regime names round trip") {
  for (Criterion c : {Criterion::PPT, Criterion::RED, Criterion::RLN})
    CHECK(criterion_from_string(to_string(c)) == c);
  for (Regime r : {Regime::Balanced, Regime::UnbalancedFixedSecond,
                   Regime::UnbalancedFixedFirst})
    CHECK(regime_from_string(to_string(r)) == r);
  CHECK_THROWS_AS(criterion_from_string("nope"), std::invalid_argument);
}

}  // TEST_SUITE
