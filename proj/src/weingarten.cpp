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

#include "rmtq/weingarten.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace rmtq {

namespace {

BigInt int_pow(int base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

// Exact Gaussian elimination with partial (first nonzero) pivoting.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a,
                                     std::vector<Rational> b) {
  const std::size_t m = a.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) throw std::runtime_error("convolution system is singular");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t row = 0; row < m; ++row) {
      if (row == col || a[row][col] == 0) continue;
      const Rational f = a[row][col] / a[col][col];
      for (std::size_t k = col; k < m; ++k) a[row][k] -= f * a[col][k];
      b[row] -= f * b[col];
    }
  }
  std::vector<Rational> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

WeingartenTable::WeingartenTable(int n, int p) : n_(n), p_(p) {
  // One unknown per cycle type. For each class representative sigma the
  // defining identity sum_tau Wg(type(tau)) n^{#(tau^{-1} sigma)} = [sigma=id]
  // yields one equation; collecting tau by cycle type gives integer
  // coefficients sum_{tau of type t} n^{#(tau^{-1} sigma)}.
  const auto types = IntegerPartition::partitions_of(p);
  std::map<IntegerPartition, std::size_t> type_index;
  for (std::size_t ti = 0; ti < types.size(); ++ti) type_index[types[ti]] = ti;

  // one representative per class: product of cycles laid out consecutively
  const auto rep_of = [&](const IntegerPartition& t) {
    std::vector<int> img(p);
    int base = 0;
    for (int part : t.parts) {
      for (int i = 0; i < part; ++i) img[base + i] = base + (i + 1) % part + 1;
      base += part;
    }
    return Permutation::from_one_line(img);
  };

  const auto group = Permutation::all(p);
  const std::size_t m = types.size();
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(m, Rational(0)));
  std::vector<Rational> rhs(m, Rational(0));
  for (std::size_t si = 0; si < m; ++si) {
    const Permutation sigma = rep_of(types[si]);
    for (const Permutation& tau : group) {
      const int cycles = tau.inverse().compose(sigma).cycle_count();
      a[si][type_index[tau.cycle_type()]] += Rational(int_pow(n, cycles));
    }
    if (sigma.is_identity()) rhs[si] = 1;
  }
  const auto x = solve_rational(std::move(a), std::move(rhs));
  for (std::size_t ti = 0; ti < m; ++ti) values_[types[ti]] = x[ti];
}

const WeingartenTable& WeingartenTable::get(int n, int p) {
  if (p < 1 || p > 8)
    throw std::invalid_argument("WeingartenTable: degree guard 1 <= p <= 8");
  if (n < p)
    throw std::invalid_argument(
        "WeingartenTable: n < p pseudo-inverse regime unsupported");
  static std::mutex mu;
  static std::map<std::pair<int, int>, WeingartenTable> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({n, p});
  if (it == cache.end())
    it = cache.emplace(std::make_pair(n, p), WeingartenTable(n, p)).first;
  return it->second;
}

const Rational& WeingartenTable::value(const IntegerPartition& cycle_type) const {
  auto it = values_.find(cycle_type);
  if (it == values_.end())
    throw std::invalid_argument("cycle type does not match table degree");
  return it->second;
}

const Rational& WeingartenTable::value(const Permutation& sigma) const {
  return value(sigma.cycle_type());
}

Rational wg_exact(int n, const IntegerPartition& cycle_type) {
  const int p = cycle_type.weight();
  if (p < 1 || p > 8) throw std::invalid_argument("wg_exact: degree guard 1 <= p <= 8");
  if (n < p) throw std::invalid_argument("wg_exact: pseudo-inverse regime unsupported");
  return WeingartenTable::get(n, p).value(cycle_type);
}

double wg_asymptotic(int n, const Permutation& sigma) {
  if (n < 1) throw std::invalid_argument("wg_asymptotic: n >= 1 required");
  const int p = sigma.degree();
  return std::pow(static_cast<double>(n), -(p + sigma.length())) *
         static_cast<double>(mobius(sigma));
}

Rational haar_monomial_integral(int n, const MonomialSpec& spec) {
  if (spec.i.size() != spec.j.size() || spec.i_conj.size() != spec.j_conj.size())
    throw std::invalid_argument("monomial: row/column tuple length mismatch");
  if (spec.i.size() != spec.i_conj.size()) return Rational(0);  // vanishing case
  const int p = static_cast<int>(spec.i.size());
  if (p == 0) return Rational(1);
  if (p > 6) throw std::invalid_argument("monomial: degree guard p <= 6");
  if (n < p) throw std::invalid_argument("monomial: pseudo-inverse regime unsupported");
  for (const auto* tuple : {&spec.i, &spec.j, &spec.i_conj, &spec.j_conj})
    for (int v : *tuple)
      if (v < 1 || v > n) throw std::invalid_argument("monomial: index out of range");

  const auto& table = WeingartenTable::get(n, p);
  const auto group = Permutation::all(p);
  Rational total = 0;
  for (const Permutation& sigma : group) {
    bool rows_match = true;
    for (int a = 1; a <= p; ++a)
      if (spec.i[a - 1] != spec.i_conj[sigma(a) - 1]) {
        rows_match = false;
        break;
      }
    if (!rows_match) continue;
    for (const Permutation& tau : group) {
      bool cols_match = true;
      for (int a = 1; a <= p; ++a)
        if (spec.j[a - 1] != spec.j_conj[tau(a) - 1]) {
          cols_match = false;
          break;
        }
      if (!cols_match) continue;
      total += table.value(tau.compose(sigma.inverse()));
    }
  }
  return total;
}

CovarianceForm::CovarianceForm(Eigen::MatrixXd cov) : cov_(std::move(cov)) {
  if (cov_.rows() != cov_.cols())
    throw std::invalid_argument("covariance must be square");
  if ((cov_ - cov_.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("covariance must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("covariance must be positive semidefinite");
}

CovarianceForm CovarianceForm::standard(int k) {
  return CovarianceForm(Eigen::MatrixXd::Identity(k, k));
}

namespace {

double wick_rec(const CovarianceForm& form, std::vector<int>& todo) {
  if (todo.empty()) return 1.0;
  // pair the first element with each other element
  const int first = todo.front();
  double total = 0.0;
  for (std::size_t m = 1; m < todo.size(); ++m) {
    const double cov = form(first, todo[m]);
    std::vector<int> rest;
    rest.reserve(todo.size() - 2);
    for (std::size_t t = 1; t < todo.size(); ++t)
      if (t != m) rest.push_back(todo[t]);
    total += cov * wick_rec(form, rest);
  }
  return total;
}

}  // namespace

double wick_moment(const CovarianceForm& form, const std::vector<int>& indices) {
  for (int v : indices)
    if (v < 1 || v > form.variables())
      throw std::invalid_argument("wick_moment: variable index out of range");
  if (indices.size() % 2 == 1) return 0.0;
  if (indices.size() > 20)
    throw std::invalid_argument("wick_moment: order guard (<= 20 factors)");
  std::vector<int> todo = indices;
  return wick_rec(form, todo);
}

}  // namespace rmtq
