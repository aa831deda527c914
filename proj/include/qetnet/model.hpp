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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qetnet/observable.hpp"
#include "qetnet/pauli.hpp"
#include "qetnet/state.hpp"

namespace qetnet {

/// Two-qubit model: H0 = hZ0 + c, H1 = hZ1 + c, V = 2k X0X1 + c'.
struct MinimalModelParams {
    double h = 1.0;
    double k = 1.0;

    void validate() const;
};

/**
 * Star cut from a {3,q} tiling: sender on site 0, receivers on 1..m,
 *
 *   H_Z,i = h Z_i + eps_i            (i = 0..m)
 *   H_X,j = s k X_0 X_j + eps'_j     (j = 1..m)
 *
 * The literal construction uses m = q receivers and coupling scale s = 1.
 * `table_convention` selects m = q - 1 and s = 2, the register layout under
 * which the published {3,q} benchmark values are reproduced.
 */
struct StarModelParams {
    double h = 1.0;
    double k = 1.0;
    int q = 6;
    int receiver_count = 0;  // 0 selects q
    double coupling_scale = 1.0;

    static StarModelParams table_convention(int q, double h, double k)
    {
        return StarModelParams{h, k, q, q - 1, 2.0};
    }

    [[nodiscard]] int receivers() const { return receiver_count == 0 ? q : receiver_count; }
    [[nodiscard]] std::size_t n_qubits() const { return static_cast<std::size_t>(receivers()) + 1; }
    void validate() const;
};

enum class ModelKind { Minimal, Star };

/**
 * A total Hamiltonian together with its named local terms.
 *
 * Minimal model locals: "H0", "H1", "V". Star model locals: "HZ0".."HZm"
 * and "HX1".."HXm". The sum of the locals equals `total`.
 */
struct ModelBundle {
    ModelKind kind = ModelKind::Minimal;
    ObservableSum total;
    std::map<std::string, ObservableSum> locals;
    std::size_t sender_site = 0;
    std::vector<std::size_t> receiver_sites;

    [[nodiscard]] const ObservableSum& local(const std::string& id) const;
    /// Sender's local term: H0 or HZ0.
    [[nodiscard]] const ObservableSum& sender_local() const;
    /// X-type receiver term: V (minimal) or HXj (star).
    [[nodiscard]] const ObservableSum& x_local(std::size_t site) const;
    /// Z-type receiver term: H1 (minimal) or HZj (star).
    [[nodiscard]] const ObservableSum& z_local(std::size_t site) const;
    /// x_local + z_local: the energy a receiver at `site` can lower.
    [[nodiscard]] ObservableSum receiver_local(std::size_t site) const;
    [[nodiscard]] std::size_t n_qubits() const { return total.n_qubits(); }
};

struct GroundSolution {
    StateVector state;
    double energy = 0.0;
    double gap = 0.0;  // first excited minus ground energy
};

/// U_j(mu) angle with the quantities that fix it.
struct FeedbackAngle {
    double theta = 0.0;
    double xi = 0.0;
    double eta = 0.0;
};

struct PreparedModel {
    ModelBundle bundle;
    GroundSolution ground;
};

/// Spectral gaps below this are treated as a degenerate ground space.
inline constexpr double kDegeneracyTolerance = 1e-9;

ModelBundle build_minimal(const MinimalModelParams& params);

/// Closed-form minimal-model ground state:
///   (1/sqrt2) sqrt(1 - h/r) |00> - (1/sqrt2) sqrt(1 + h/r) |11>,  r = sqrt(h^2+k^2).
StateVector analytic_ground_minimal(const MinimalModelParams& params);

/// Star bundle with offsets eps = -<g|Pauli part|g>, so every local and the
/// total have zero ground expectation.
ModelBundle build_star(const StarModelParams& params);

PreparedModel prepare_minimal(const MinimalModelParams& params);
PreparedModel prepare_star(const StarModelParams& params);

/**
 * Lowest eigenpair of a Hermitian observable by dense diagonalization.
 *
 * The basis is first split into the invariant blocks spanned by the terms'
 * X masks (cosets of their GF(2) span), each block diagonalized densely.
 * The returned vector has its largest-magnitude amplitude real and
 * positive. Throws NumericalError when the gap is below
 * kDegeneracyTolerance.
 */
GroundSolution solve_ground(const ObservableSum& obs);

/**
 * Feedback angle for receiver Pauli sigma_j given sender Pauli sigma_i:
 *
 *   xi  = <g| sigma_j H sigma_j |g>
 *   eta = <g| sigma_i (i[H, sigma_j]) |g>
 *   theta = atan2(eta, xi) / 2  in (-pi/2, pi/2]
 *
 * This theta minimizes the receiver energy xi sin^2(theta) - eta sin(theta)cos(theta)
 * for U_j(mu) = cos(theta) - i mu sin(theta) sigma_j. H must carry the
 * zero-point offsets (ground energy 0).
 */
FeedbackAngle compute_theta(const GroundSolution& ground, const ObservableSum& hamiltonian,
                            const PauliString& sender_sigma, const PauliString& receiver_sigma);

}  // namespace qetnet
