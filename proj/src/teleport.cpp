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

#include "qetnet/teleport.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qetnet/kernels.hpp"

namespace qetnet {

namespace {

constexpr double kBasisStateTolerance = 1e-12;

int mu_bit(int mu) { return mu == 1 ? 0 : 1; }

PauliString z_on(std::size_t n, std::size_t qubit) { return PauliString::single(n, qubit, Pauli::Z); }

void check_pair(const StateVector& state, std::size_t source,
                std::pair<std::size_t, std::size_t> pair)
{
    const std::size_t n = state.n_qubits();
    const auto [a, b] = pair;
    if (source >= n || a >= n || b >= n || source == a || source == b || a == b) {
        throw InvalidArgument("teleport: source and pair qubits must be distinct and in range");
    }
    // (|00>+|11>)/sqrt2 is the unique +1 eigenstate of XX and ZZ; both at +1
    // also rules out entanglement with the rest of the register.
    const PauliString xx = PauliString(n).with(a, Pauli::X).with(b, Pauli::X);
    const PauliString zz = PauliString(n).with(a, Pauli::Z).with(b, Pauli::Z);
    const double sx = expectation(state, ObservableSum::term(1.0, xx));
    const double sz = expectation(state, ObservableSum::term(1.0, zz));
    if (std::abs(sx - 1.0) > 1e-10 || std::abs(sz - 1.0) > 1e-10) {
        throw InvalidArgument("teleport: qubits (" + std::to_string(a) + ", " + std::to_string(b) +
                              ") do not hold a Bell pair");
    }
}

/// Bell-basis change on (source, pair.first) ahead of the two Z readouts.
StateVector bell_rotate(const StateVector& state, std::size_t source, std::size_t first)
{
    return apply_hadamard(apply_cnot(state, source, first), source);
}

/// X^{m_first} then Z^{m_source} on the target.
StateVector correct(StateVector state, std::size_t target, int m_source, int m_first)
{
    const std::size_t n = state.n_qubits();
    if (m_first) state = apply_pauli(state, PauliString::single(n, target, Pauli::X));
    if (m_source) state = apply_pauli(state, PauliString::single(n, target, Pauli::Z));
    return state;
}

/// One sampled Z readout of `qubit`: returns (bit, collapsed state).
std::pair<int, StateVector> sample_z(const StateVector& state, std::size_t qubit, ShotRng& rng)
{
    auto zero = project(state, z_on(state.n_qubits(), qubit), +1);
    const double u = rng.uniform();
    if (zero.state && u < zero.probability) return {0, std::move(*zero.state)};
    auto one = project(state, z_on(state.n_qubits(), qubit), -1);
    if (!one.state) return {0, std::move(*zero.state)};
    return {1, std::move(*one.state)};
}

/// Relay every branch of `ensemble` through one hop on qubit `relayed`,
/// returning branches on the original register size.
Ensemble relay_hop(const Ensemble& ensemble, std::size_t relayed)
{
    std::vector<Branch<double>> out;
    for (const auto& branch : ensemble.branches()) {
        const StateVector extended = extend_with_bell(branch.state);
        const std::size_t a = branch.state.n_qubits();
        const Ensemble sub = teleport_branches(extended, relayed, {a, a + 1}, branch.label);
        for (const auto& s : sub.branches()) {
            // After dropping `relayed` and `a` the target is the last qubit.
            StateVector reduced = discard_measured(s.state, {relayed, a});
            const std::size_t target = reduced.n_qubits() - 1;
            if (target != relayed) {
                StateVector::Amplitudes amps(reduced.dimension());
                for (Eigen::Index idx = 0; idx < reduced.dimension(); ++idx) {
                    const auto u = static_cast<std::uint64_t>(idx);
                    const std::uint64_t tbit = (u >> target) & 1U;
                    const std::uint64_t low = u & ((std::uint64_t{1} << relayed) - 1);
                    const std::uint64_t mid = (u >> relayed) & ((std::uint64_t{1} << (target - relayed)) - 1);
                    const std::uint64_t mapped = low | (tbit << relayed) | (mid << (relayed + 1));
                    amps(static_cast<Eigen::Index>(mapped)) = reduced[idx];
                }
                reduced = StateVector::from_amplitudes(reduced.n_qubits(), std::move(amps));
            }
            out.push_back({branch.probability * s.probability, std::move(reduced), s.label});
        }
    }
    double total = 0.0;
    for (const auto& b : out) total += b.probability;
    for (auto& b : out) b.probability /= total;
    return Ensemble(std::move(out));
}

}  // namespace

std::string_view to_string(MessagePurpose purpose)
{
    return purpose == MessagePurpose::MuBroadcast ? "mu-broadcast" : "teleport-corrections";
}

void LoccTranscript::append(std::string from, std::string to, MessagePurpose purpose,
                            std::vector<int> bits)
{
    messages_.push_back({messages_.size(), std::move(from), std::move(to), purpose, std::move(bits)});
}

std::size_t LoccTranscript::count(MessagePurpose purpose) const
{
    return static_cast<std::size_t>(std::count_if(messages_.begin(), messages_.end(),
                                                  [&](const LoccMessage& m) { return m.purpose == purpose; }));
}

std::size_t LoccTranscript::bit_count(MessagePurpose purpose) const
{
    std::size_t total = 0;
    for (const auto& m : messages_) {
        if (m.purpose == purpose) total += m.bits.size();
    }
    return total;
}

std::string LoccTranscript::to_text() const
{
    std::ostringstream os;
    for (const auto& m : messages_) {
        os << m.seq << ' ' << m.from << ' ' << m.to << ' ' << to_string(m.purpose) << ' ';
        for (int b : m.bits) os << b;
        os << '\n';
    }
    return os.str();
}

LoccTranscript LoccTranscript::parse(std::string_view text)
{
    LoccTranscript out;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        LoccMessage m;
        std::string purpose;
        std::string bits;
        if (!(ls >> m.seq >> m.from >> m.to >> purpose >> bits)) {
            throw InvalidArgument("transcript: malformed line '" + line + "'");
        }
        if (purpose == "mu-broadcast") {
            m.purpose = MessagePurpose::MuBroadcast;
        } else if (purpose == "teleport-corrections") {
            m.purpose = MessagePurpose::TeleportCorrection;
        } else {
            throw InvalidArgument("transcript: unknown purpose '" + purpose + "'");
        }
        for (char c : bits) {
            if (c != '0' && c != '1') throw InvalidArgument("transcript: bad bit string");
            m.bits.push_back(c - '0');
        }
        if (m.seq != out.messages_.size()) throw InvalidArgument("transcript: sequence gap");
        out.messages_.push_back(std::move(m));
    }
    return out;
}

std::pair<std::size_t, std::size_t> RelayPlan::ancillas(int hop) const
{
    if (hop < 0 || hop >= hops) throw InvalidArgument("RelayPlan: hop out of range");
    return {base_qubits, base_qubits + 1};
}

std::vector<std::string> RelayPlan::node_names() const
{
    std::vector<std::string> names{"charlie"};
    for (int i = 1; i < hops; ++i) names.push_back("relay" + std::to_string(i));
    names.emplace_back("bob");
    return names;
}

StateVector extend_with_bell(const StateVector& state)
{
    const std::size_t n = state.n_qubits();
    if (n + 2 > kMaxDenseQubits) {
        throw CapacityError("extend_with_bell: " + std::to_string(n + 2) +
                            " qubits exceeds the dense limit");
    }
    const Eigen::Index dim = state.dimension();
    StateVector::Amplitudes amps = StateVector::Amplitudes::Zero(dim * 4);
    const double r = (1.0 / std::numbers::sqrt2);
    for (Eigen::Index i = 0; i < dim; ++i) {
        amps(i) = r * state[i];                 // ancillas |00>
        amps(i + 3 * dim) = r * state[i];       // ancillas |11>
    }
    return StateVector::normalized(n + 2, std::move(amps));
}

Ensemble teleport_branches(const StateVector& state, std::size_t source,
                           std::pair<std::size_t, std::size_t> pair, const BranchLabel& label)
{
    check_pair(state, source, pair);
    const std::size_t n = state.n_qubits();
    const StateVector rotated = bell_rotate(state, source, pair.first);
    std::vector<Branch<double>> branches;
    for (int m_source : {0, 1}) {
        auto p1 = project(rotated, z_on(n, source), m_source ? -1 : 1);
        if (!p1.state) continue;
        for (int m_first : {0, 1}) {
            auto p2 = project(*p1.state, z_on(n, pair.first), m_first ? -1 : 1);
            if (!p2.state) continue;
            BranchLabel l = label;
            l.bits.push_back(m_source);
            l.bits.push_back(m_first);
            branches.push_back({p1.probability * p2.probability,
                                correct(std::move(*p2.state), pair.second, m_source, m_first),
                                std::move(l)});
        }
    }
    double total = 0.0;
    for (const auto& b : branches) total += b.probability;
    for (auto& b : branches) b.probability /= total;
    return Ensemble(std::move(branches));
}

StateVector teleport_qubit(const StateVector& state, std::size_t source,
                           std::pair<std::size_t, std::size_t> pair, const std::string& from,
                           const std::string& to, LoccTranscript& transcript, ShotRng& rng)
{
    check_pair(state, source, pair);
    StateVector s = bell_rotate(state, source, pair.first);
    auto [m_source, after_source] = sample_z(s, source, rng);
    auto [m_first, after_first] = sample_z(after_source, pair.first, rng);
    transcript.append(from, to, MessagePurpose::TeleportCorrection, {m_source});
    transcript.append(from, to, MessagePurpose::TeleportCorrection, {m_first});
    return correct(std::move(after_first), pair.second, m_source, m_first);
}

StateVector discard_measured(const StateVector& state, std::vector<std::size_t> qubits)
{
    const std::size_t n = state.n_qubits();
    std::sort(qubits.begin(), qubits.end());
    qubits.erase(std::unique(qubits.begin(), qubits.end()), qubits.end());
    if (qubits.empty()) return state;
    if (qubits.back() >= n || qubits.size() >= n) {
        throw DimensionError("discard_measured: bad qubit list");
    }
    std::uint64_t mask = 0;
    std::uint64_t fixed = 0;
    for (std::size_t q : qubits) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        double p1 = 0.0;
        for (Eigen::Index i = 0; i < state.dimension(); ++i) {
            if (static_cast<std::uint64_t>(i) & bit) p1 += std::norm(state[i]);
        }
        if (p1 > kBasisStateTolerance && p1 < 1.0 - kBasisStateTolerance) {
            throw InvalidArgument("discard_measured: qubit " + std::to_string(q) +
                                  " is not in a computational basis state");
        }
        mask |= bit;
        if (p1 >= 0.5) fixed |= bit;
    }
    const std::size_t kept = n - qubits.size();
    StateVector::Amplitudes amps = StateVector::Amplitudes::Zero(Eigen::Index{1} << kept);
    for (Eigen::Index i = 0; i < state.dimension(); ++i) {
        const auto u = static_cast<std::uint64_t>(i);
        if ((u & mask) != fixed) continue;
        std::uint64_t compact = 0;
        std::size_t out_bit = 0;
        for (std::size_t q = 0; q < n; ++q) {
            if (mask & (std::uint64_t{1} << q)) continue;
            compact |= ((u >> q) & 1U) << out_bit++;
        }
        amps(static_cast<Eigen::Index>(compact)) = state[i];
    }
    return StateVector::normalized(kept, std::move(amps));
}

LongRangeResult run_longrange_qet(const MinimalModelParams& params, int hops, std::uint64_t seed)
{
    if (hops < 1) throw InvalidArgument("run_longrange_qet: hops must be at least 1");
    const PreparedModel model = prepare_minimal(params);
    const MeasuredGround measured = alice_measure(model.bundle, model.ground);
    const FeedbackAngle angle = receiver_angle(model.bundle, model.ground, 1);
    const RelayPlan plan{hops, 1, model.bundle.n_qubits()};
    const auto nodes = plan.node_names();

    // Exact: the relay (Charlie) applies U_1(mu), then every hop is enumerated.
    Ensemble rho = apply_feedback(measured.ensemble, plan.relayed_qubit, angle);
    for (int hop = 0; hop < hops; ++hop) rho = relay_hop(rho, plan.relayed_qubit);

    LongRangeResult result;
    result.record.model = ModelKind::Minimal;
    result.record.h = params.h;
    result.record.k = params.k;
    result.record.e0 = measured.e0;
    result.record.angles.emplace(1, angle);
    result.record.receivers.emplace(1, receiver_energy(rho, model.bundle, 1));

    // One sampled realization for the message log.
    ShotRng rng(seed, 0, 0);
    const auto& branches = measured.ensemble.branches();
    const double u = rng.uniform();
    const Branch<double>& chosen =
        (branches.size() == 1 || u < branches.front().probability) ? branches.front() : branches.back();
    const int mu = chosen.label.mu;
    result.transcript.append("alice", "bob,charlie", MessagePurpose::MuBroadcast, {mu_bit(mu)});
    const PauliString sigma = PauliString::single(2, plan.relayed_qubit, Pauli::Y);
    StateVector s = conditional_rotation(chosen.state, sigma, angle.theta, mu);
    for (int hop = 0; hop < hops; ++hop) {
        const auto anc = plan.ancillas(hop);
        StateVector extended = extend_with_bell(s);
        StateVector moved = teleport_qubit(extended, plan.relayed_qubit, anc,
                                           nodes[static_cast<std::size_t>(hop)],
                                           nodes[static_cast<std::size_t>(hop) + 1],
                                           result.transcript, rng);
        // With two base qubits the target already lands in the relayed slot.
        moved = discard_measured(moved, {plan.relayed_qubit, anc.first});
        s = std::move(moved);
    }
    for (const auto& b : rho.branches()) {
        if (b.label.mu != mu) continue;
        result.sampled_infidelity = std::max(result.sampled_infidelity, 1.0 - b.state.fidelity(s));
    }
    return result;
}

double relay_identity_check(int hops, std::size_t panel_size, std::uint64_t seed)
{
    if (hops < 1) throw InvalidArgument("relay_identity_check: hops must be at least 1");
    std::vector<StateVector> panel;
    const double r = (1.0 / std::numbers::sqrt2);
    using C = std::complex<double>;
    const std::vector<std::pair<C, C>> stabilizer = {
        {1, 0}, {0, 1}, {r, r}, {r, -r}, {r, C(0, r)}, {r, C(0, -r)}};
    for (const auto& [a, b] : stabilizer) {
        StateVector::Amplitudes amps(2);
        amps << a, b;
        panel.push_back(StateVector::normalized(1, amps));
    }
    for (std::size_t i = 0; i < panel_size; ++i) {
        // Gaussian components (Box-Muller) give Haar-distributed qubit states.
        ShotRng rng(seed, 1, i);
        double g[4];
        for (int c = 0; c < 4; c += 2) {
            const double u1 = 1.0 - rng.uniform();
            const double u2 = rng.uniform();
            const double rad = std::sqrt(-2.0 * std::log(u1));
            g[c] = rad * std::cos(2.0 * std::numbers::pi * u2);
            g[c + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
        }
        StateVector::Amplitudes amps(2);
        amps << C(g[0], g[1]), C(g[2], g[3]);
        panel.push_back(StateVector::normalized(1, amps));
    }

    double worst = 0.0;
    for (const auto& input : panel) {
        Ensemble rho = Ensemble::pure(input);
        for (int hop = 0; hop < hops; ++hop) rho = relay_hop(rho, 0);
        for (const auto& b : rho.branches()) worst = std::max(worst, trace_distance(b.state, input));
    }
    return worst;
}

}  // namespace qetnet
