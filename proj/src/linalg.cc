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

#include "qfault/linalg.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qfault {

namespace {

void require_finite(std::span<const Complex> values, const char *what) {
    for (const auto &v : values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::invalid_argument(std::string(what) + " contains a non-finite entry");
        }
    }
}

}  // namespace

bool is_power_of_two(size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

StateVector::StateVector(std::vector<Complex> amps, double tol) : amps_(std::move(amps)) {
    if (amps_.size() < 2 || !is_power_of_two(amps_.size())) {
        throw std::invalid_argument("state dimension must be a power of two >= 2, got " + std::to_string(amps_.size()));
    }
    require_finite(amps_, "state");
    double norm2 = 0;
    for (const auto &a : amps_) {
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > tol) {
        throw std::invalid_argument("state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
    }
}

StateVector StateVector::basis(size_t dim, size_t index) {
    if (index >= dim) {
        throw std::out_of_range("basis index " + std::to_string(index) + " out of range for dimension " + std::to_string(dim));
    }
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

StateVector StateVector::with_phase(double theta) const {
    Complex phase = std::polar(1.0, theta);
    std::vector<Complex> out(amps_);
    for (auto &a : out) {
        a *= phase;
    }
    return StateVector(std::move(out));
}

ComplexMatrix::ComplexMatrix(size_t dim) : dim_(dim), entries_(dim * dim) {
    if (!is_power_of_two(dim)) {
        throw std::invalid_argument("matrix dimension must be a power of two, got " + std::to_string(dim));
    }
}

ComplexMatrix::ComplexMatrix(size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
    if (!is_power_of_two(dim)) {
        throw std::invalid_argument("matrix dimension must be a power of two, got " + std::to_string(dim));
    }
    if (entries_.size() != dim * dim) {
        throw std::invalid_argument("matrix needs dim*dim entries");
    }
    require_finite(entries_, "matrix");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    size_t dim = rows.size();
    std::vector<Complex> entries;
    entries.reserve(dim * dim);
    for (const auto &row : rows) {
        if (row.size() != dim) {
            throw std::invalid_argument("matrix must be square");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    *this = ComplexMatrix(dim, std::move(entries));
}

ComplexMatrix ComplexMatrix::identity(size_t dim) {
    ComplexMatrix m(dim);
    for (size_t k = 0; k < dim; k++) {
        m(k, k) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (size_t r = 0; r < dim_; r++) {
        for (size_t c = 0; c < dim_; c++) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    size_t da = a.dim();
    size_t db = b.dim();
    ComplexMatrix out(da * db);
    for (size_t ia = 0; ia < da; ia++) {
        for (size_t ja = 0; ja < da; ja++) {
            Complex s = a(ia, ja);
            for (size_t ib = 0; ib < db; ib++) {
                for (size_t jb = 0; jb < db; jb++) {
                    out(ia * db + ib, ja * db + jb) = s * b(ib, jb);
                }
            }
        }
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument(
            "matmul dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    size_t n = a.dim();
    std::vector<Complex> out(n * n);
    auto lhs = a.entries();
    auto rhs = b.entries();
    // i-k-j order keeps the inner loop streaming over contiguous rows.
    for (size_t i = 0; i < n; i++) {
        Complex *out_row = &out[i * n];
        for (size_t k = 0; k < n; k++) {
            Complex s = lhs[i * n + k];
            const Complex *rhs_row = &rhs[k * n];
            for (size_t j = 0; j < n; j++) {
                out_row[j] += s * rhs_row[j];
            }
        }
    }
    return ComplexMatrix(n, std::move(out));
}

StateVector apply(const ComplexMatrix &u, const StateVector &psi) {
    if (u.dim() != psi.dim()) {
        throw std::invalid_argument("apply dimension mismatch");
    }
    size_t n = u.dim();
    std::vector<Complex> out(n);
    for (size_t r = 0; r < n; r++) {
        Complex acc = 0;
        for (size_t c = 0; c < n; c++) {
            acc += u(r, c) * psi[c];
        }
        out[r] = acc;
    }
    return StateVector(std::move(out));
}

bool is_unitary(const ComplexMatrix &a, double tol) {
    size_t n = a.dim();
    for (size_t r = 0; r < n; r++) {
        for (size_t c = 0; c < n; c++) {
            // (U^dagger U)(r, c) = <col r | col c>
            Complex acc = 0;
            for (size_t k = 0; k < n; k++) {
                acc += std::conj(a(k, r)) * a(k, c);
            }
            if (std::abs(acc - Complex(r == c ? 1.0 : 0.0)) > tol) {
                return false;
            }
        }
    }
    return true;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("max_abs_diff dimension mismatch");
    }
    double worst = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (size_t k = 0; k < ea.size(); k++) {
        worst = std::max(worst, std::abs(ea[k] - eb[k]));
    }
    return worst;
}

Complex inner_product(std::span<const Complex> psi, std::span<const Complex> phi) {
    if (psi.size() != phi.size()) {
        throw std::invalid_argument("inner product dimension mismatch");
    }
    Complex acc = 0;
    for (size_t k = 0; k < psi.size(); k++) {
        acc += std::conj(psi[k]) * phi[k];
    }
    return acc;
}

double fidelity(const StateVector &psi, const StateVector &phi) {
    if (psi.dim() != phi.dim()) {
        throw std::invalid_argument("fidelity dimension mismatch");
    }
    return std::clamp(std::norm(inner_product(psi.amps(), phi.amps())), 0.0, 1.0);
}

StateVector column(const ComplexMatrix &u, size_t i) {
    if (i >= u.dim()) {
        throw std::out_of_range("column index " + std::to_string(i) + " out of range for dimension " + std::to_string(u.dim()));
    }
    std::vector<Complex> out(u.dim());
    for (size_t r = 0; r < u.dim(); r++) {
        out[r] = u(r, i);
    }
    return StateVector(std::move(out));
}

}  // namespace qfault
