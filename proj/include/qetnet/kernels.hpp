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

// Exact statevector kernels over Pauli words: application, expectation,
// Heisenberg derivative, projective measurement and the conditional
// feedback rotation. All functions are pure.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qetnet/observable.hpp"
#include "qetnet/pauli.hpp"
#include "qetnet/state.hpp"

namespace qetnet {

namespace detail {

template <typename Real>
std::complex<Real> i_power(int k)
{
    static const std::array<std::complex<Real>, 4> table = {
        std::complex<Real>(1, 0), std::complex<Real>(0, 1), std::complex<Real>(-1, 0),
        std::complex<Real>(0, -1)};
    return table[static_cast<std::size_t>(k & 3)];
}

template <typename Real>
void require_match(const BasicStateVector<Real>& state, std::size_t n_qubits, const char* who)
{
    if (state.n_qubits() != n_qubits) {
        throw DimensionError(std::string(who) + ": state has " +
                             std::to_string(state.n_qubits()) + " qubits, operator has " +
                             std::to_string(n_qubits));
    }
}

/// amps -> word * amps, without normalization checks.
template <typename Real>
typename BasicStateVector<Real>::Amplitudes
apply_word(const typename BasicStateVector<Real>::Amplitudes& amps, const PauliString& word)
{
    typename BasicStateVector<Real>::Amplitudes out(amps.size());
    const std::uint64_t x = word.x_mask();
    for (Eigen::Index b = 0; b < amps.size(); ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        out(static_cast<Eigen::Index>(ub ^ x)) = i_power<Real>(basis_phase(word, ub)) * amps(b);
    }
    return out;
}

/// <psi|word|psi>, complex.
template <typename Real>
std::complex<Real> word_expectation(const typename BasicStateVector<Real>::Amplitudes& amps,
                                    const PauliString& word)
{
    const std::uint64_t x = word.x_mask();
    // Accumulate per phase class, then apply the i-power once.
    std::array<std::complex<Real>, 4> partial{};
    for (Eigen::Index b = 0; b < amps.size(); ++b) {
        const auto ub = static_cast<std::uint64_t>(b);
        partial[static_cast<std::size_t>(basis_phase(word, ub))] +=
            std::conj(amps(static_cast<Eigen::Index>(ub ^ x))) * amps(b);
    }
    std::complex<Real> total(0);
    for (int k = 0; k < 4; ++k) total += i_power<Real>(k) * partial[static_cast<std::size_t>(k)];
    return total;
}

}  // namespace detail

/// word * state.
template <typename Real>
BasicStateVector<Real> apply_pauli(const BasicStateVector<Real>& state, const PauliString& word)
{
    detail::require_match(state, word.n_qubits(), "apply_pauli");
    return BasicStateVector<Real>::from_amplitudes(
        state.n_qubits(), detail::apply_word<Real>(state.amplitudes(), word));
}

/**
 * <psi|obs|psi>. The imaginary residual is checked against 1e-10 (scaled by
 * the operator's 1-norm) and then discarded; a larger residual means the
 * operator was not Hermitian.
 */
template <typename Real>
Real expectation(const BasicStateVector<Real>& state, const BasicObservableSum<Real>& obs)
{
    detail::require_match(state, obs.n_qubits(), "expectation");
    std::complex<Real> total(obs.offset());
    Real scale = Real(1) + std::abs(obs.offset());
    for (const auto& t : obs.terms()) {
        total += t.coefficient * detail::word_expectation<Real>(state.amplitudes(), t.word);
        scale += std::abs(t.coefficient);
    }
    if (std::abs(total.imag()) > Real(1e-10) * scale) {
        throw NumericalError("expectation: imaginary part " + std::to_string(total.imag()) +
                             " (non-Hermitian operator?)");
    }
    return total.real();
}

/// sum_b p_b <psi_b|obs|psi_b> = Tr[rho obs].
template <typename Real>
Real expectation(const BasicEnsemble<Real>& ensemble, const BasicObservableSum<Real>& obs)
{
    Real total(0);
    for (const auto& b : ensemble.branches()) total += b.probability * expectation(b.state, obs);
    return total;
}

/**
 * i[H, sigma] as a canonical observable. Only terms of H that anticommute
 * with sigma survive, each contributing 2i * (P * sigma); the offset drops
 * out. With the standard algebra this gives e.g. i[hZ, Y] = +2h X.
 */
template <typename Real>
BasicObservableSum<Real> heisenberg_derivative(const BasicObservableSum<Real>& hamiltonian,
                                               const PauliString& sigma)
{
    if (sigma.n_qubits() != hamiltonian.n_qubits()) {
        throw DimensionError("heisenberg_derivative: qubit count mismatch");
    }
    BasicObservableSum<Real> out(hamiltonian.n_qubits());
    for (const auto& t : hamiltonian.terms()) {
        if (t.word.commutes_with(sigma)) continue;
        const PauliProduct prod = multiply(t.word, sigma);
        // 2i * i^phase must be real: phase is odd for anticommuting words.
        const int power = (prod.phase + 1) & 3;
        if (power == 1 || power == 3) {
            throw NumericalError("heisenberg_derivative: non-Hermitian product");
        }
        const Real sign = power == 0 ? Real(1) : Real(-1);
        out.add(Real(2) * sign * t.coefficient, prod.word);
    }
    return out;
}

/// Result of projecting onto one eigenspace of a Pauli word.
template <typename Real>
struct Projection {
    Real probability;
    std::optional<BasicStateVector<Real>> state;  // empty when probability is ~0
};

/// Born probability and collapsed state for P(mu) = (1 + mu*sigma)/2.
template <typename Real>
Projection<Real> project(const BasicStateVector<Real>& state, const PauliString& sigma, int mu)
{
    detail::require_match(state, sigma.n_qubits(), "project");
    if (mu != 1 && mu != -1) throw InvalidArgument("project: mu must be +1 or -1");
    if (sigma.is_identity()) throw InvalidArgument("project: identity has no -1 eigenspace");
    typename BasicStateVector<Real>::Amplitudes projected =
        (state.amplitudes() + Real(mu) * detail::apply_word<Real>(state.amplitudes(), sigma)) *
        Real(0.5);
    const Real probability = projected.squaredNorm();
    if (probability < Real(1e-15)) return {Real(0), std::nullopt};
    return {probability, BasicStateVector<Real>::normalized(state.n_qubits(), std::move(projected))};
}

/**
 * Measure a +-1 valued Pauli word. Branches are labeled mu = +1 then -1;
 * zero-probability branches are dropped. Probabilities are rescaled to sum
 * to exactly 1 (the correction is O(1e-16)).
 */
template <typename Real>
BasicEnsemble<Real> projective_measure(const BasicStateVector<Real>& state,
                                       const PauliString& sigma)
{
    std::vector<Branch<Real>> branches;
    Real total(0);
    for (int mu : {1, -1}) {
        auto p = project(state, sigma, mu);
        if (!p.state) continue;
        total += p.probability;
        branches.push_back({p.probability, std::move(*p.state), BranchLabel{mu, {}}});
    }
    for (auto& b : branches) b.probability /= total;
    return BasicEnsemble<Real>(std::move(branches));
}

/// U(mu) = cos(theta) I - i mu sin(theta) sigma, for a single-site sigma.
template <typename Real>
BasicStateVector<Real> conditional_rotation(const BasicStateVector<Real>& state,
                                            const PauliString& sigma, Real theta, int mu)
{
    detail::require_match(state, sigma.n_qubits(), "conditional_rotation");
    if (sigma.weight() != 1) {
        throw InvalidArgument("conditional_rotation: sigma must act on exactly one site, got " +
                              sigma.to_string());
    }
    if (mu != 1 && mu != -1) throw InvalidArgument("conditional_rotation: mu must be +1 or -1");
    const std::complex<Real> off_diag(0, -Real(mu) * std::sin(theta));
    typename BasicStateVector<Real>::Amplitudes out =
        std::cos(theta) * state.amplitudes() +
        off_diag * detail::apply_word<Real>(state.amplitudes(), sigma);
    // Unitary up to rounding; renormalize so the invariant holds at 1e-12.
    return BasicStateVector<Real>::normalized(state.n_qubits(), std::move(out));
}

/// Dense Hermitian matrix of `obs`, column b holding obs|b>.
template <typename Real>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>
to_dense(const BasicObservableSum<Real>& obs)
{
    if (obs.n_qubits() > kMaxDenseQubits) {
        throw CapacityError("to_dense: " + std::to_string(obs.n_qubits()) +
                            " qubits exceeds the dense limit of " +
                            std::to_string(kMaxDenseQubits));
    }
    const Eigen::Index dim = Eigen::Index{1} << obs.n_qubits();
    using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix m = Matrix::Identity(dim, dim) * obs.offset();
    for (const auto& t : obs.terms()) {
        const std::uint64_t x = t.word.x_mask();
        for (Eigen::Index b = 0; b < dim; ++b) {
            const auto ub = static_cast<std::uint64_t>(b);
            m(static_cast<Eigen::Index>(ub ^ x), b) +=
                t.coefficient * detail::i_power<Real>(basis_phase(t.word, ub));
        }
    }
    return m;
}

/// Trace distance 0.5 * ||rho - sigma||_1 between two mixtures. Computed
/// from the eigenvalues of the difference, so it stays accurate near zero.
template <typename Real>
Real trace_distance(const BasicEnsemble<Real>& a, const BasicEnsemble<Real>& b)
{
    if (a.n_qubits() != b.n_qubits()) throw DimensionError("trace_distance: size mismatch");
    using Matrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
    const Matrix diff = a.density_matrix() - b.density_matrix();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(diff, Eigen::EigenvaluesOnly);
    return Real(0.5) * solver.eigenvalues().cwiseAbs().sum();
}

template <typename Real>
Real trace_distance(const BasicStateVector<Real>& a, const BasicStateVector<Real>& b)
{
    return trace_distance(BasicEnsemble<Real>::pure(a), BasicEnsemble<Real>::pure(b));
}

/// Single-qubit Hadamard; used for basis changes before readout.
template <typename Real>
BasicStateVector<Real> apply_hadamard(const BasicStateVector<Real>& state, std::size_t qubit)
{
    if (qubit >= state.n_qubits()) throw DimensionError("apply_hadamard: qubit out of range");
    const Real r = Real(1) / std::sqrt(Real(2));
    const auto bit = Eigen::Index{1} << qubit;
    typename BasicStateVector<Real>::Amplitudes out = state.amplitudes();
    for (Eigen::Index b = 0; b < out.size(); ++b) {
        if (b & bit) continue;
        const auto a0 = state.amplitudes()(b);
        const auto a1 = state.amplitudes()(b | bit);
        out(b) = r * (a0 + a1);
        out(b | bit) = r * (a0 - a1);
    }
    return BasicStateVector<Real>::normalized(state.n_qubits(), std::move(out));
}

/// CNOT with the given control and target.
template <typename Real>
BasicStateVector<Real> apply_cnot(const BasicStateVector<Real>& state, std::size_t control,
                                  std::size_t target)
{
    if (control >= state.n_qubits() || target >= state.n_qubits() || control == target) {
        throw DimensionError("apply_cnot: bad control/target");
    }
    const auto c = Eigen::Index{1} << control;
    const auto t = Eigen::Index{1} << target;
    typename BasicStateVector<Real>::Amplitudes out = state.amplitudes();
    for (Eigen::Index b = 0; b < out.size(); ++b) {
        if ((b & c) && !(b & t)) std::swap(out(b), out(b | t));
    }
    return BasicStateVector<Real>::from_amplitudes(state.n_qubits(), std::move(out));
}

}  // namespace qetnet
