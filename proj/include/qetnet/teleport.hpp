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
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qetnet/protocol.hpp"
#include "qetnet/rng.hpp"
#include "qetnet/state.hpp"

namespace qetnet {

enum class MessagePurpose { MuBroadcast, TeleportCorrection };

struct LoccMessage {
    std::size_t seq = 0;
    std::string from;
    std::string to;
    MessagePurpose purpose = MessagePurpose::MuBroadcast;
    std::vector<int> bits;
};

/// Ordered log of classical messages exchanged during a run.
class LoccTranscript {
  public:
    void append(std::string from, std::string to, MessagePurpose purpose, std::vector<int> bits);

    [[nodiscard]] const std::vector<LoccMessage>& messages() const noexcept { return messages_; }
    [[nodiscard]] std::size_t count(MessagePurpose purpose) const;
    /// Total classical bits carried by messages of `purpose`.
    [[nodiscard]] std::size_t bit_count(MessagePurpose purpose) const;

    /// One `seq from to purpose bits` line per message.
    [[nodiscard]] std::string to_text() const;
    static LoccTranscript parse(std::string_view text);

  private:
    std::vector<LoccMessage> messages_;
};

std::string_view to_string(MessagePurpose purpose);

/// Hops relaying one logical qubit; ancilla pair h is (n + 0, n + 1) on an
/// n-qubit register at the time of hop h (measured qubits are dropped).
struct RelayPlan {
    int hops = 1;
    std::size_t relayed_qubit = 1;
    std::size_t base_qubits = 2;

    [[nodiscard]] std::pair<std::size_t, std::size_t> ancillas(int hop) const;
    [[nodiscard]] std::vector<std::string> node_names() const;
};

/// state ⊗ (|00> + |11>)/sqrt2 on two new trailing qubits.
StateVector extend_with_bell(const StateVector& state);

/**
 * All four outcomes of teleporting `source` onto `pair.second` via the
 * Bell pair `pair`. Each branch is corrected; its label bits are
 * (m_source, m_pair_first). Source and pair.first are left in the measured
 * computational states.
 */
Ensemble teleport_branches(const StateVector& state, std::size_t source,
                           std::pair<std::size_t, std::size_t> pair, const BranchLabel& label = {});

/// One sampled teleportation; appends the two correction bits to `transcript`.
StateVector teleport_qubit(const StateVector& state, std::size_t source,
                           std::pair<std::size_t, std::size_t> pair, const std::string& from,
                           const std::string& to, LoccTranscript& transcript, ShotRng& rng);

/// Removes qubits that sit in a computational basis state; remaining qubits
/// keep their relative order.
StateVector discard_measured(const StateVector& state, std::vector<std::size_t> qubits);

struct LongRangeResult {
    QetRecord record;
    LoccTranscript transcript;
    /// Largest 1 - |<exact branch|sampled state>| seen along the sampled run.
    double sampled_infidelity = 0.0;
};

/**
 * Minimal-model QET with the receiver's qubit relayed `hops` times: the
 * sender measures, broadcasts mu, the relay applies U_1(mu), the qubit is
 * teleported hop by hop and the receiver evaluates H1 and V. The record is
 * computed by enumerating every branch; the transcript comes from one
 * seeded sampled realization of the same run.
 */
LongRangeResult run_longrange_qet(const MinimalModelParams& params, int hops,
                                  std::uint64_t seed = 0);

/// Max trace distance between input and relayed single-qubit states over
/// the six stabilizer states plus `panel_size` random states.
double relay_identity_check(int hops, std::size_t panel_size = 100, std::uint64_t seed = 7);

}  // namespace qetnet
