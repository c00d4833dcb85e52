// Copyright 2026 The mpsq Authors
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

#include "mpsq/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "mpsq/kernels.hpp"

namespace mpsq::linalg {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

void require_finite(const std::vector<Cx>& entries) {
  for (const Cx& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("CMatrix: non-finite entry");
    }
  }
}

}  // namespace

CMatrix::CMatrix(std::size_t n) : dim_(n), entries_(n * n, Cx{}) {
  require(n >= 1, "CMatrix: dimension must be positive");
}

CMatrix::CMatrix(std::size_t n, std::vector<Cx> entries)
    : dim_(n), entries_(std::move(entries)) {
  require(n >= 1, "CMatrix: dimension must be positive");
  require(entries_.size() == n * n, "CMatrix: entry count != dim^2");
  require_finite(entries_);
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<Cx>> rows)
    : dim_(rows.size()) {
  require(dim_ >= 1, "CMatrix: dimension must be positive");
  entries_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    require(row.size() == dim_, "CMatrix: ragged initializer");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  require_finite(entries_);
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Cx(1.0, 0.0);
  return m;
}

CMatrix CMatrix::dagger() const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Cx CMatrix::trace() const {
  Cx acc{};
  for (std::size_t i = 0; i < dim_; ++i) acc += (*this)(i, i);
  return acc;
}

double CMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const Cx& z : entries_) acc += std::norm(z);
  return std::sqrt(acc);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const Cx& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::max_abs_diff(const CMatrix& other) const {
  require(dim_ == other.dim_, "CMatrix: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    m = std::max(m, std::abs(entries_[i] - other.entries_[i]));
  return m;
}

bool CMatrix::approx_equal(const CMatrix& other, double tol) const {
  return dim_ == other.dim_ && max_abs_diff(other) <= tol;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require(dim_ == other.dim_, "CMatrix: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] += other.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require(dim_ == other.dim_, "CMatrix: dimension mismatch");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] -= other.entries_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Cx scalar) {
  for (Cx& z : entries_) z *= scalar;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.dim_ != b.dim_)
    throw std::invalid_argument("CMatrix: dimension mismatch in product");
  CMatrix c(a.dim_);
  kernels::active().matmul(reinterpret_cast<const double*>(a.entries_.data()),
                           reinterpret_cast<const double*>(b.entries_.data()),
                           reinterpret_cast<double*>(c.entries_.data()),
                           a.dim_);
  return c;
}

Cx trace_of_product(const CMatrix& a, const CMatrix& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("CMatrix: dimension mismatch in trace product");
  double out[2];
  kernels::active().trace_of_product(
      reinterpret_cast<const double*>(a.entries().data()),
      reinterpret_cast<const double*>(b.entries().data()), a.dim(), out);
  return Cx(out[0], out[1]);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  CMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Cx aij = a(i, j);
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

bool is_hermitian(const CMatrix& a, double tol) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

bool is_identity(const CMatrix& a, double tol) {
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Cx want = i == j ? Cx(1.0, 0.0) : Cx{};
      if (std::abs(a(i, j) - want) > tol) return false;
    }
  return true;
}

bool is_zero(const CMatrix& a, double tol) { return a.max_abs() <= tol; }

bool is_psd(const CMatrix& a, double tol) {
  if (!is_hermitian(a, tol))
    throw std::invalid_argument("is_psd: input is not Hermitian");
  const std::vector<double> evs = hermitian_eigenvalues(a, 1e-12);
  return evs.back() >= -tol;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& a, double tol) {
  if (!is_hermitian(a, std::max(tol, 1e-12)))
    throw std::invalid_argument("hermitian_eigenvalues: input not Hermitian");
  const std::size_t n = a.dim();

  // Work on the exactly-Hermitian part; kills ~1e-16 asymmetry from
  // upstream arithmetic.
  CMatrix h(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

  const auto off_norm = [&h, n]() {
    double acc = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (p != q) acc += std::norm(h(p, q));
    return std::sqrt(acc);
  };

  constexpr int kMaxSweeps = 60;
  int sweep = 0;
  while (off_norm() >= tol) {
    if (++sweep > kMaxSweeps)
      throw std::runtime_error("hermitian_eigenvalues: Jacobi did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Cx z = h(p, q);
        const double az = std::abs(z);
        if (az == 0.0) continue;
        // Rotation angle from the equivalent real 2x2 problem
        // [[h_pp, |z|], [|z|, h_qq]]; phase carries arg(z).
        const double tau = (h(q, q).real() - h(p, p).real()) / (2.0 * az);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Cx phase = z / az;

        // Columns p,q of H <- H*U with U = [[c, s*phase], [-s*conj(phase), c]]
        // on the (p,q) plane.
        for (std::size_t k = 0; k < n; ++k) {
          const Cx hkp = h(k, p);
          const Cx hkq = h(k, q);
          h(k, p) = c * hkp - s * std::conj(phase) * hkq;
          h(k, q) = s * phase * hkp + c * hkq;
        }
        // Rows p,q of H <- U^dagger * H.
        for (std::size_t k = 0; k < n; ++k) {
          const Cx hpk = h(p, k);
          const Cx hqk = h(q, k);
          h(p, k) = c * hpk - s * phase * hqk;
          h(q, k) = s * std::conj(phase) * hpk + c * hqk;
        }
        h(p, q) = Cx{};
        h(q, p) = Cx{};
        h(p, p) = Cx(h(p, p).real(), 0.0);
        h(q, q) = Cx(h(q, q).real(), 0.0);
      }
    }
  }

  std::vector<double> evs(n);
  for (std::size_t i = 0; i < n; ++i) evs[i] = h(i, i).real();
  std::sort(evs.begin(), evs.end(), std::greater<>());
  return evs;
}

FactorShape FactorShape::qubits(std::size_t count) {
  return FactorShape{std::vector<std::size_t>(count, 2)};
}

std::size_t FactorShape::total_dim() const {
  return std::accumulate(factor_dims.begin(), factor_dims.end(),
                         std::size_t{1}, std::multiplies<>());
}

CMatrix embed_on_factors(const CMatrix& op, const std::vector<std::size_t>& factors,
                         const FactorShape& shape) {
  const std::size_t nfac = shape.factor_count();
  require(!factors.empty(), "embed_on_factors: empty factor list");
  for (std::size_t t = 0; t < factors.size(); ++t) {
    require(factors[t] < nfac, "embed_on_factors: factor index out of range");
    require(t == 0 || factors[t] > factors[t - 1],
            "embed_on_factors: factor indices must be strictly ascending");
  }

  std::size_t sel_dim = 1;
  std::vector<bool> selected(nfac, false);
  for (std::size_t f : factors) {
    selected[f] = true;
    sel_dim *= shape.factor_dims[f];
  }
  require(op.dim() == sel_dim,
          "embed_on_factors: operator dim does not match selected factors");

  const std::size_t total = shape.total_dim();

  // Factor order with the selected factors first.
  std::vector<std::size_t> order(factors);
  for (std::size_t f = 0; f < nfac; ++f)
    if (!selected[f]) order.push_back(f);

  // Strides of each factor in the natural (lexicographic) basis.
  std::vector<std::size_t> stride(nfac, 1);
  for (std::size_t f = nfac; f-- > 1;)
    stride[f - 1] = stride[f] * shape.factor_dims[f];

  // Permutation matrix: P(y, x) = 1 where y is x with its factor digits
  // rearranged into `order`.
  CMatrix perm(total);
  std::vector<std::size_t> digits(nfac);
  for (std::size_t x = 0; x < total; ++x) {
    for (std::size_t f = 0; f < nfac; ++f)
      digits[f] = (x / stride[f]) % shape.factor_dims[f];
    std::size_t y = 0;
    for (std::size_t t = 0; t < nfac; ++t)
      y = y * shape.factor_dims[order[t]] + digits[order[t]];
    perm(y, x) = Cx(1.0, 0.0);
  }

  const CMatrix padded = kron(op, CMatrix::identity(total / sel_dim));
  return perm.dagger() * padded * perm;
}

std::string to_pretty_string(Cx z) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

std::string to_pretty_string(const CMatrix& a) {
  std::string out;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out += i == 0 ? "[[" : " [";
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (j) out += ", ";
      out += to_pretty_string(a(i, j));
    }
    out += i + 1 == a.dim() ? "]]" : "]\n";
  }
  return out;
}

}  // namespace mpsq::linalg
