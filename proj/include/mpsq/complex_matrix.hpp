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

#ifndef MPSQ_COMPLEX_MATRIX_HPP
#define MPSQ_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace mpsq::linalg {

using Cx = std::complex<double>;

// Default tolerance for matrix predicates and approximate comparisons.
// Every quantity in this project is a dyadic rational or a sqrt(2)
// multiple, far above this noise floor.
inline constexpr double kDefaultTol = 1e-9;

// Dense square complex matrix, row-major. Sizes in this project are 1, 2,
// 4 and 16, so everything is dense and value-semantic. Entries are
// validated finite on construction; all operations are pure.
class CMatrix {
 public:
  // n x n zero matrix.
  explicit CMatrix(std::size_t n);
  // Row-major entries, length must be n*n.
  CMatrix(std::size_t n, std::vector<Cx> entries);
  // Literal rows; all rows must have the same length as the row count.
  CMatrix(std::initializer_list<std::initializer_list<Cx>> rows);

  static CMatrix identity(std::size_t n);

  std::size_t dim() const { return dim_; }

  const Cx& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dim_ + j];
  }
  Cx& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }

  const std::vector<Cx>& entries() const { return entries_; }

  CMatrix dagger() const;
  Cx trace() const;
  double frobenius_norm() const;
  double max_abs() const;
  double max_abs_diff(const CMatrix& other) const;
  bool approx_equal(const CMatrix& other, double tol = kDefaultTol) const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Cx scalar);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Cx s) { return a *= s; }
  friend CMatrix operator*(Cx s, CMatrix a) { return a *= s; }
  friend CMatrix operator-(CMatrix a) { return a *= Cx(-1.0, 0.0); }
  // Matrix product, dispatched to the active kernel backend.
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

 private:
  std::size_t dim_;
  std::vector<Cx> entries_;
};

// trace(a*b) without forming the product.
Cx trace_of_product(const CMatrix& a, const CMatrix& b);

// Kronecker product; rows/columns of the result are indexed
// lexicographically, i.e. entry ((i,k),(j,l)) = a(i,j) * b(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& a, double tol = kDefaultTol);
bool is_identity(const CMatrix& a, double tol = kDefaultTol);
bool is_zero(const CMatrix& a, double tol = kDefaultTol);
// Requires a Hermitian input (throws std::invalid_argument otherwise);
// true iff the smallest eigenvalue is >= -tol.
bool is_psd(const CMatrix& a, double tol = kDefaultTol);

// Eigenvalues of a Hermitian matrix, descending, with multiplicity.
// Cyclic Jacobi rotations run until the off-diagonal Frobenius norm drops
// below tol; throws std::invalid_argument if the input is not Hermitian
// within tol and std::runtime_error if the sweep cap is hit.
std::vector<double> hermitian_eigenvalues(const CMatrix& a, double tol = 1e-12);

// Tensor-factor structure of a matrix dimension (all factors are qubits
// in this project, but the machinery is generic). Factor 0 is the most
// significant index in the lexicographic basis order.
struct FactorShape {
  std::vector<std::size_t> factor_dims;

  static FactorShape qubits(std::size_t count);
  std::size_t total_dim() const;
  std::size_t factor_count() const { return factor_dims.size(); }
};

// Operator acting as `op` on the selected factors (0-based, strictly
// ascending) and as the identity on the rest. Built as kron(op, I) in the
// reordered basis (selected factors first) conjugated by the permutation
// back to natural factor order.
CMatrix embed_on_factors(const CMatrix& op, const std::vector<std::size_t>& factors,
                         const FactorShape& shape);

// Debug formatting, fixed "a+bi" at 12 significant digits.
std::string to_pretty_string(Cx z);
std::string to_pretty_string(const CMatrix& a);

}  // namespace mpsq::linalg

#endif  // MPSQ_COMPLEX_MATRIX_HPP
