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

#include "qetnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "qetnet/kernels.hpp"

namespace qetnet {

namespace {

void require_positive(double value, const char* name)
{
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw InvalidArgument(std::string(name) + " must be a positive finite number, got " +
                              std::to_string(value));
    }
}

std::string z_id(std::size_t site) { return "HZ" + std::to_string(site); }
std::string x_id(std::size_t site) { return "HX" + std::to_string(site); }

// ---------------------------------------------------------------------------
// Block-dense eigensolver.

/// Partition of the basis into subspaces invariant under every term.
struct BlockPartition {
    std::vector<std::vector<std::uint64_t>> blocks;  // basis indices, ascending
};

BlockPartition partition_by_flip_span(const ObservableSum& obs)
{
    // Row-reduced GF(2) basis of the terms' X masks, keyed by pivot bit.
    std::vector<std::uint64_t> basis;
    for (const auto& t : obs.terms()) {
        std::uint64_t v = t.word.x_mask();
        for (std::uint64_t b : basis) v = std::min(v, v ^ b);
        if (v != 0) {
            basis.push_back(v);
            std::sort(basis.begin(), basis.end(), std::greater<>());
        }
    }
    const std::uint64_t dim = std::uint64_t{1} << obs.n_qubits();
    std::unordered_map<std::uint64_t, std::size_t> block_of;
    BlockPartition out;
    for (std::uint64_t index = 0; index < dim; ++index) {
        std::uint64_t key = index;
        for (std::uint64_t b : basis) key = std::min(key, key ^ b);
        auto [it, inserted] = block_of.try_emplace(key, out.blocks.size());
        if (inserted) out.blocks.emplace_back();
        out.blocks[it->second].push_back(index);
    }
    return out;
}

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Scalar phase_value(int power)
{
    if constexpr (std::is_same_v<Scalar, double>) {
        return (power & 2) ? -1.0 : 1.0;  // only even powers reach here
    } else {
        return detail::i_power<double>(power);
    }
}

template <typename Scalar>
DenseMatrix<Scalar> block_matrix(const ObservableSum& obs, const std::vector<std::uint64_t>& block)
{
    const auto n = static_cast<Eigen::Index>(block.size());
    std::unordered_map<std::uint64_t, Eigen::Index> local;
    local.reserve(block.size());
    for (Eigen::Index i = 0; i < n; ++i) local.emplace(block[static_cast<std::size_t>(i)], i);

    DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Identity(n, n) * Scalar(obs.offset());
    for (const auto& t : obs.terms()) {
        const std::uint64_t x = t.word.x_mask();
        for (Eigen::Index col = 0; col < n; ++col) {
            const std::uint64_t b = block[static_cast<std::size_t>(col)];
            const Eigen::Index row = local.at(b ^ x);
            m(row, col) += Scalar(t.coefficient) * phase_value<Scalar>(basis_phase(t.word, b));
        }
    }
    return m;
}

struct BlockSpectrum {
    double lowest = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
};

template <typename Scalar>
BlockSpectrum lowest_two(const DenseMatrix<Scalar>& m)
{
    BlockSpectrum s;
    if (m.rows() == 1) {
        s.lowest = std::real(m(0, 0));
        return s;
    }
    Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("solve_ground: eigensolver failed");
    s.lowest = solver.eigenvalues()(0);
    s.second = solver.eigenvalues()(1);
    return s;
}

/// Ground vector of a block whose lowest eigenvalue is known, by shifted
/// inverse iteration (A - s I is positive definite for s below it).
template <typename Scalar>
DenseVector<Scalar> ground_vector(const DenseMatrix<Scalar>& m, double lowest, double spread)
{
    const Eigen::Index n = m.rows();
    if (n <= 256) {
        Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(m);
        if (solver.info() != Eigen::Success) {
            throw NumericalError("solve_ground: eigensolver failed");
        }
        return solver.eigenvectors().col(0);
    }
    const double shift = lowest - 1e-9 * (1.0 + spread);
    DenseMatrix<Scalar> shifted = m;
    shifted.diagonal().array() -= Scalar(shift);
    Eigen::LLT<DenseMatrix<Scalar>> llt(shifted);
    if (llt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> solver(m);
        return solver.eigenvectors().col(0);
    }
    DenseVector<Scalar> v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = Scalar(1.0 + 1e-3 * static_cast<double>(i % 7));
    v.normalize();
    for (int iter = 0; iter < 50; ++iter) {
        v = llt.solve(v);
        v.normalize();
        const double rayleigh = std::real(v.dot(m * v));
        if ((m * v - Scalar(rayleigh) * v).norm() < 1e-13 * (1.0 + spread)) break;
    }
    return v;
}

template <typename Scalar>
GroundSolution solve_blocks(const ObservableSum& obs, const BlockPartition& partition)
{
    std::vector<DenseMatrix<Scalar>> matrices;
    matrices.reserve(partition.blocks.size());
    std::vector<double> all_low;
    double spread = 0.0;
    std::size_t best_block = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < partition.blocks.size(); ++b) {
        matrices.push_back(block_matrix<Scalar>(obs, partition.blocks[b]));
        const BlockSpectrum s = lowest_two(matrices.back());
        all_low.push_back(s.lowest);
        all_low.push_back(s.second);
        spread = std::max(spread, matrices.back().cwiseAbs().rowwise().sum().maxCoeff());
        if (s.lowest < best) {
            best = s.lowest;
            best_block = b;
        }
    }
    std::sort(all_low.begin(), all_low.end());
    const double gap = all_low.size() > 1 ? all_low[1] - all_low[0]
                                          : std::numeric_limits<double>::infinity();
    if (gap < kDegeneracyTolerance) {
        throw NumericalError("solve_ground: degenerate ground space (gap " + std::to_string(gap) +
                             ")");
    }

    const DenseVector<Scalar> local = ground_vector(matrices[best_block], best, spread);
    const Eigen::Index dim = Eigen::Index{1} << obs.n_qubits();
    StateVector::Amplitudes amps = StateVector::Amplitudes::Zero(dim);
    const auto& block = partition.blocks[best_block];
    for (std::size_t i = 0; i < block.size(); ++i) {
        amps(static_cast<Eigen::Index>(block[i])) = local(static_cast<Eigen::Index>(i));
    }

    // Phase convention: first amplitude of maximal magnitude is real positive.
    const double max_mag = amps.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (std::abs(amps(i)) >= max_mag - 1e-12) {
            amps *= std::conj(amps(i)) / std::abs(amps(i));
            break;
        }
    }
    StateVector state = StateVector::normalized(obs.n_qubits(), std::move(amps));
    const double energy = expectation(state, obs);
    return GroundSolution{std::move(state), energy, gap};
}

}  // namespace

void MinimalModelParams::validate() const
{
    require_positive(h, "h");
    require_positive(k, "k");
}

void StarModelParams::validate() const
{
    require_positive(h, "h");
    require_positive(k, "k");
    require_positive(coupling_scale, "coupling_scale");
    if (q < 1) throw InvalidArgument("q must be at least 1, got " + std::to_string(q));
    if (receiver_count < 0) throw InvalidArgument("receiver_count must be non-negative");
    if (n_qubits() > kMaxDenseQubits) {
        throw CapacityError("star model needs " + std::to_string(n_qubits()) +
                            " qubits; the dense limit is " + std::to_string(kMaxDenseQubits));
    }
}

const ObservableSum& ModelBundle::local(const std::string& id) const
{
    auto it = locals.find(id);
    if (it == locals.end()) throw InvalidArgument("ModelBundle: no local term '" + id + "'");
    return it->second;
}

const ObservableSum& ModelBundle::sender_local() const
{
    return local(kind == ModelKind::Minimal ? "H0" : z_id(sender_site));
}

const ObservableSum& ModelBundle::x_local(std::size_t site) const
{
    if (std::find(receiver_sites.begin(), receiver_sites.end(), site) == receiver_sites.end()) {
        throw InvalidArgument("ModelBundle: site " + std::to_string(site) + " is not a receiver");
    }
    return local(kind == ModelKind::Minimal ? "V" : x_id(site));
}

const ObservableSum& ModelBundle::z_local(std::size_t site) const
{
    if (std::find(receiver_sites.begin(), receiver_sites.end(), site) == receiver_sites.end()) {
        throw InvalidArgument("ModelBundle: site " + std::to_string(site) + " is not a receiver");
    }
    return local(kind == ModelKind::Minimal ? "H1" : z_id(site));
}

ObservableSum ModelBundle::receiver_local(std::size_t site) const
{
    return x_local(site) + z_local(site);
}

ModelBundle build_minimal(const MinimalModelParams& params)
{
    params.validate();
    const double h = params.h;
    const double k = params.k;
    const double r = std::hypot(h, k);
    const auto word = [](const char* letters) { return PauliString::from_letters(letters); };

    ModelBundle bundle;
    bundle.kind = ModelKind::Minimal;
    bundle.sender_site = 0;
    bundle.receiver_sites = {1};
    bundle.locals.emplace("H0", ObservableSum::term(h, word("ZI")).add_offset(h * h / r));
    bundle.locals.emplace("H1", ObservableSum::term(h, word("IZ")).add_offset(h * h / r));
    bundle.locals.emplace("V", ObservableSum::term(2.0 * k, word("XX")).add_offset(2.0 * k * k / r));
    bundle.total = bundle.locals.at("H0") + bundle.locals.at("H1") + bundle.locals.at("V");
    return bundle;
}

StateVector analytic_ground_minimal(const MinimalModelParams& params)
{
    params.validate();
    const double a = params.h / std::hypot(params.h, params.k);
    StateVector::Amplitudes amps = StateVector::Amplitudes::Zero(4);
    amps(0) = (1.0 / std::numbers::sqrt2) * std::sqrt(1.0 - a);  // |00>
    amps(3) = -(1.0 / std::numbers::sqrt2) * std::sqrt(1.0 + a);  // |11>
    return StateVector::normalized(2, std::move(amps));
}

PreparedModel prepare_minimal(const MinimalModelParams& params)
{
    ModelBundle bundle = build_minimal(params);
    GroundSolution ground = solve_ground(bundle.total);
    return {std::move(bundle), std::move(ground)};
}

PreparedModel prepare_star(const StarModelParams& params)
{
    params.validate();
    const std::size_t n = params.n_qubits();
    const auto m = static_cast<std::size_t>(params.receivers());

    std::map<std::string, ObservableSum> pauli_parts;
    for (std::size_t i = 0; i <= m; ++i) {
        pauli_parts.emplace(z_id(i), ObservableSum::term(params.h, PauliString::single(n, i, Pauli::Z)));
    }
    for (std::size_t j = 1; j <= m; ++j) {
        const PauliString xx = PauliString(n).with(0, Pauli::X).with(j, Pauli::X);
        pauli_parts.emplace(x_id(j), ObservableSum::term(params.coupling_scale * params.k, xx));
    }
    ObservableSum pauli_total(n);
    for (const auto& [id, part] : pauli_parts) pauli_total += part;

    // Offsets never change eigenvectors, so solve the Pauli part first.
    GroundSolution ground = solve_ground(pauli_total);

    ModelBundle bundle;
    bundle.kind = ModelKind::Star;
    bundle.sender_site = 0;
    for (std::size_t j = 1; j <= m; ++j) bundle.receiver_sites.push_back(j);
    bundle.total = ObservableSum(n);
    for (auto& [id, part] : pauli_parts) {
        const double eps = -expectation(ground.state, part);
        ObservableSum local = part.with_offset(eps);
        bundle.total += local;
        bundle.locals.emplace(id, std::move(local));
    }
    ground.energy = expectation(ground.state, bundle.total);
    return {std::move(bundle), std::move(ground)};
}

ModelBundle build_star(const StarModelParams& params) { return prepare_star(params).bundle; }

GroundSolution solve_ground(const ObservableSum& obs)
{
    if (obs.n_qubits() > kMaxDenseQubits) {
        throw CapacityError("solve_ground: " + std::to_string(obs.n_qubits()) +
                            " qubits exceeds the dense limit");
    }
    const BlockPartition partition = partition_by_flip_span(obs);
    const bool real = std::all_of(obs.terms().begin(), obs.terms().end(),
                                  [](const PauliTerm<double>& t) { return t.word.y_count() % 2 == 0; });
    if (real) return solve_blocks<double>(obs, partition);
    return solve_blocks<std::complex<double>>(obs, partition);
}

FeedbackAngle compute_theta(const GroundSolution& ground, const ObservableSum& hamiltonian,
                            const PauliString& sender_sigma, const PauliString& receiver_sigma)
{
    const StateVector& g = ground.state;
    const double xi = expectation(apply_pauli(g, receiver_sigma), hamiltonian);

    const ObservableSum sigma_dot = heisenberg_derivative(hamiltonian, receiver_sigma);
    std::complex<double> eta_c(0.0);
    for (const auto& t : sigma_dot.terms()) {
        const PauliProduct prod = multiply(sender_sigma, t.word);
        eta_c += t.coefficient * detail::i_power<double>(prod.phase) *
                 detail::word_expectation<double>(g.amplitudes(), prod.word);
    }
    if (std::abs(eta_c.imag()) > 1e-10 * (1.0 + std::abs(eta_c.real()))) {
        throw NumericalError("compute_theta: eta has imaginary part " +
                             std::to_string(eta_c.imag()));
    }
    const double eta = eta_c.real();
    double scale = 1.0 + std::abs(hamiltonian.offset());
    for (const auto& t : hamiltonian.terms()) scale += std::abs(t.coefficient);
    if (std::hypot(xi, eta) <= 1e-12 * scale) {
        throw NumericalError("compute_theta: xi = eta = 0, angle undefined (decoupled receiver)");
    }
    double theta = 0.5 * std::atan2(eta, xi);
    if (theta <= -std::numbers::pi / 2) theta += std::numbers::pi;
    return FeedbackAngle{theta, xi, eta};
}

}  // namespace qetnet
