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
#include <optional>
#include <string>
#include <vector>

#include "qetnet/model.hpp"
#include "qetnet/state.hpp"

namespace qetnet {

/// Pauli axes of the sender's measurement and the receivers' feedback.
struct ProtocolAxes {
    Pauli sender = Pauli::X;
    Pauli receiver = Pauli::Y;
};

/// Receiver bookkeeping. `energy` is the post-protocol local expectation
/// (negative when energy was teleported); `extracted` = -energy.
struct ReceiverEnergy {
    double hx = 0.0;
    double hz = 0.0;
    double energy = 0.0;
    double extracted = 0.0;
};

enum class Method { Exact, Sampled };

struct QetRecord {
    ModelKind model = ModelKind::Minimal;
    double h = 0.0;
    double k = 0.0;
    int q = 0;                  // star only
    int receiver_count = 0;     // star only
    double coupling_scale = 1.0;
    double e0 = 0.0;  // energy injected by the sender's measurement
    std::map<std::size_t, ReceiverEnergy> receivers;
    std::map<std::size_t, FeedbackAngle> angles;
    Method method = Method::Exact;
    std::map<std::string, double> stderrs;  // filled for sampled records
};

struct MeasuredGround {
    Ensemble ensemble;  // two branches labeled mu = +1, -1
    double e0 = 0.0;
};

/// Sender measures sigma_0; E0 = Tr[rho_post H_total].
MeasuredGround alice_measure(const ModelBundle& bundle, const GroundSolution& ground,
                             const ProtocolAxes& axes = {});

/// Applies U_j(mu) branchwise; every branch must carry a mu label.
Ensemble apply_feedback(const Ensemble& ensemble, std::size_t receiver_site,
                        const FeedbackAngle& angle, const ProtocolAxes& axes = {});

ReceiverEnergy receiver_energy(const Ensemble& ensemble, const ModelBundle& bundle,
                               std::size_t receiver_site);

/// Feedback angle for `receiver_site` from the bundle's total Hamiltonian.
FeedbackAngle receiver_angle(const ModelBundle& bundle, const GroundSolution& ground,
                             std::size_t receiver_site, const ProtocolAxes& axes = {});

QetRecord run_minimal_qet(const MinimalModelParams& params, const ProtocolAxes& axes = {});

/// Multi-receiver distribution on a prepared star; receivers must be
/// distinct sites in 1..m.
QetRecord run_qed(const PreparedModel& model, const StarModelParams& params,
                  const std::vector<std::size_t>& receivers, const ProtocolAxes& axes = {});
QetRecord run_qed(const StarModelParams& params, const std::vector<std::size_t>& receivers,
                  const ProtocolAxes& axes = {});

struct SweepGrid {
    std::vector<double> h_values;
    std::vector<double> k_values;
    std::vector<std::vector<double>> extracted;     // [h][k], E_B for H1 + V
    std::vector<std::vector<double>> extracted_h1;  // [h][k], -<H1> only
};

/// Exact E_B(h, k) for the minimal model.
SweepGrid sweep_extracted_energy(const std::vector<double>& h_values,
                                 const std::vector<double>& k_values);

}  // namespace qetnet
