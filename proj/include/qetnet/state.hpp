// Copyright 2026 The qetnet Authors
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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qetnet/errors.hpp"

namespace qetnet {

/// Largest register the dense kernels accept.
inline constexpr std::size_t kMaxDenseQubits = 14;

namespace detail {

template <typename Real>
constexpr Real norm_tolerance()
{
    // 1e-12 for double; scaled up for narrower types.
    return std::max(Real(1e-12), Real(1000) * std::numeric_limits<Real>::epsilon());
}

}  // namespace detail

/**
 * Normalized pure state on n qubits (2^n complex amplitudes). Amplitude
 * index bit i is qubit i; see pauli.hpp for the ket notation.
 */
template <typename Real>
class BasicStateVector {
  public:
    using Scalar = std::complex<Real>;
    using Amplitudes = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    BasicStateVector() = default;

    /// Computational basis state |index>.
    static BasicStateVector basis(std::size_t n_qubits, std::uint64_t index)
    {
        check_size(n_qubits);
        const auto dim = Eigen::Index{1} << n_qubits;
        if (index >= static_cast<std::uint64_t>(dim)) {
            throw DimensionError("StateVector: basis index out of range");
        }
        Amplitudes amps = Amplitudes::Zero(dim);
        amps(static_cast<Eigen::Index>(index)) = Scalar(1);
        return BasicStateVector(n_qubits, std::move(amps));
    }

    /// Takes amplitudes that must already be normalized.
    static BasicStateVector from_amplitudes(std::size_t n_qubits, Amplitudes amps)
    {
        check_size(n_qubits);
        if (amps.size() != (Eigen::Index{1} << n_qubits)) {
            throw DimensionError("StateVector: expected 2^" + std::to_string(n_qubits) +
                                 " amplitudes, got " + std::to_string(amps.size()));
        }
        const Real norm2 = amps.squaredNorm();
        if (std::abs(norm2 - Real(1)) > detail::norm_tolerance<Real>()) {
            throw NumericalError("StateVector: squared norm " + std::to_string(norm2) +
                                 " is not 1");
        }
        return BasicStateVector(n_qubits, std::move(amps));
    }

    /// Rescales a nonzero vector to unit norm.
    static BasicStateVector normalized(std::size_t n_qubits, Amplitudes amps)
    {
        const Real norm = amps.norm();
        if (!(norm > Real(0))) throw NumericalError("StateVector: cannot normalize zero vector");
        amps /= norm;
        return from_amplitudes(n_qubits, std::move(amps));
    }

    [[nodiscard]] std::size_t n_qubits() const noexcept { return n_qubits_; }
    [[nodiscard]] Eigen::Index dimension() const noexcept { return amps_.size(); }
    [[nodiscard]] const Amplitudes& amplitudes() const noexcept { return amps_; }
    [[nodiscard]] Scalar operator[](Eigen::Index i) const { return amps_(i); }

    /// <this|other>.
    [[nodiscard]] Scalar inner(const BasicStateVector& other) const
    {
        require_same_size(other);
        return amps_.dot(other.amps_);
    }

    /// |<this|other>|, insensitive to global phase.
    [[nodiscard]] Real fidelity(const BasicStateVector& other) const
    {
        return std::abs(inner(other));
    }

    void require_same_size(const BasicStateVector& other) const
    {
        if (other.n_qubits_ != n_qubits_) {
            throw DimensionError("StateVector: size mismatch " + std::to_string(n_qubits_) +
                                 " vs " + std::to_string(other.n_qubits_));
        }
    }

  private:
    BasicStateVector(std::size_t n_qubits, Amplitudes amps)
        : n_qubits_{n_qubits}, amps_{std::move(amps)}
    {
    }

    static void check_size(std::size_t n_qubits)
    {
        if (n_qubits == 0) throw DimensionError("StateVector: need at least one qubit");
        if (n_qubits > kMaxDenseQubits) {
            throw CapacityError("StateVector: " + std::to_string(n_qubits) +
                                " qubits exceeds the dense limit of " +
                                std::to_string(kMaxDenseQubits));
        }
    }

    std::size_t n_qubits_ = 0;
    Amplitudes amps_;
};

/// Classical record attached to an ensemble branch. `mu` is the sender's
/// outcome (+1/-1, 0 when unlabeled); `bits` collects later outcomes.
struct BranchLabel {
    int mu = 0;
    std::vector<int> bits;

    friend bool operator==(const BranchLabel&, const BranchLabel&) = default;
};

template <typename Real>
struct Branch {
    Real probability;
    BasicStateVector<Real> state;
    BranchLabel label;
};

/// Probabilistic mixture of pure states: rho = sum_b p_b |psi_b><psi_b|.
template <typename Real>
class BasicEnsemble {
  public:
    BasicEnsemble() = default;

    explicit BasicEnsemble(std::vector<Branch<Real>> branches) : branches_{std::move(branches)}
    {
        if (branches_.empty()) throw InvalidArgument("Ensemble: no branches");
        Real total = 0;
        for (const auto& b : branches_) {
            if (b.probability < Real(0) || b.probability > Real(1) + detail::norm_tolerance<Real>()) {
                throw InvalidArgument("Ensemble: branch probability outside [0, 1]");
            }
            branches_.front().state.require_same_size(b.state);
            total += b.probability;
        }
        if (std::abs(total - Real(1)) > detail::norm_tolerance<Real>()) {
            throw NumericalError("Ensemble: probabilities sum to " + std::to_string(total));
        }
    }

    static BasicEnsemble pure(BasicStateVector<Real> state, BranchLabel label = {})
    {
        return BasicEnsemble({Branch<Real>{Real(1), std::move(state), std::move(label)}});
    }

    [[nodiscard]] const std::vector<Branch<Real>>& branches() const noexcept { return branches_; }
    [[nodiscard]] std::size_t size() const noexcept { return branches_.size(); }
    [[nodiscard]] std::size_t n_qubits() const { return branches_.front().state.n_qubits(); }

    /// Dense density matrix; intended for small registers and cross-checks.
    [[nodiscard]] Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>
    density_matrix() const
    {
        const auto dim = branches_.front().state.dimension();
        Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> rho =
            Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>::Zero(dim, dim);
        for (const auto& b : branches_) {
            rho.noalias() += b.probability * b.state.amplitudes() * b.state.amplitudes().adjoint();
        }
        return rho;
    }

  private:
    std::vector<Branch<Real>> branches_;
};

using StateVector = BasicStateVector<double>;
using Ensemble = BasicEnsemble<double>;

}  // namespace qetnet
