// Copyright 2026 The qfault Authors
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

#ifndef QFAULT_LINALG_H
#define QFAULT_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qfault {

using Complex = std::complex<double>;

/// Default absolute tolerance for floating comparisons.
inline constexpr double kTolerance = 1e-9;

bool is_power_of_two(size_t n);

/// A pure state of one or more qubits. Always normalized within kTolerance.
class StateVector {
   public:
    /// Throws std::invalid_argument unless the length is a power of two >= 2
    /// and the squared norm is 1 within `tol`.
    explicit StateVector(std::vector<Complex> amps, double tol = kTolerance);

    /// Computational basis state |index> of the given dimension.
    static StateVector basis(size_t dim, size_t index);

    size_t dim() const {
        return amps_.size();
    }
    const Complex &operator[](size_t k) const {
        return amps_[k];
    }
    std::span<const Complex> amps() const {
        return amps_;
    }

    /// Multiplies every amplitude by a unit-modulus scalar.
    StateVector with_phase(double theta) const;

   private:
    std::vector<Complex> amps_;
};

/// Dense square complex matrix with row-major storage. The dimension is a
/// power of two (1 is allowed for scalar factors).
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    /// Zero matrix.
    explicit ComplexMatrix(size_t dim);
    ComplexMatrix(size_t dim, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(size_t dim);

    size_t dim() const {
        return dim_;
    }
    Complex &operator()(size_t row, size_t col) {
        return entries_[row * dim_ + col];
    }
    const Complex &operator()(size_t row, size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const Complex> entries() const {
        return entries_;
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    /// Exact entrywise equality.
    bool operator==(const ComplexMatrix &other) const = default;

   private:
    size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// Kronecker product; `a` is the left (more significant) factor.
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);

/// Standard product a*b. Throws std::invalid_argument on dimension mismatch.
ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);

/// Applies u to a column vector. The result is renormalization-free; u must
/// be unitary for the output to be a valid state.
StateVector apply(const ComplexMatrix &u, const StateVector &psi);

/// True iff max elementwise |U^dagger U - I| <= tol.
bool is_unitary(const ComplexMatrix &a, double tol = kTolerance);

/// Largest elementwise modulus of a - b. Throws on dimension mismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// <psi|phi>, conjugating the first argument.
Complex inner_product(std::span<const Complex> psi, std::span<const Complex> phi);

/// |<psi|phi>|^2, clamped into [0, 1].
double fidelity(const StateVector &psi, const StateVector &phi);

/// Output state for basis input |i> under the column convention.
StateVector column(const ComplexMatrix &u, size_t i);

}  // namespace qfault

#endif
