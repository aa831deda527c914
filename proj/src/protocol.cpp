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

#include "qetnet/protocol.hpp"

#include <algorithm>
#include <set>

#include "qetnet/kernels.hpp"

namespace qetnet {

MeasuredGround alice_measure(const ModelBundle& bundle, const GroundSolution& ground,
                             const ProtocolAxes& axes)
{
    const PauliString sigma = PauliString::single(bundle.n_qubits(), bundle.sender_site, axes.sender);
    Ensemble post = projective_measure(ground.state, sigma);
    const double e0 = expectation(post, bundle.total);
    return {std::move(post), e0};
}

Ensemble apply_feedback(const Ensemble& ensemble, std::size_t receiver_site,
                        const FeedbackAngle& angle, const ProtocolAxes& axes)
{
    const PauliString sigma = PauliString::single(ensemble.n_qubits(), receiver_site, axes.receiver);
    std::vector<Branch<double>> out;
    out.reserve(ensemble.size());
    for (const auto& b : ensemble.branches()) {
        if (b.label.mu != 1 && b.label.mu != -1) {
            throw InvalidArgument("apply_feedback: branch has no mu label");
        }
        out.push_back({b.probability, conditional_rotation(b.state, sigma, angle.theta, b.label.mu),
                       b.label});
    }
    return Ensemble(std::move(out));
}

ReceiverEnergy receiver_energy(const Ensemble& ensemble, const ModelBundle& bundle,
                               std::size_t receiver_site)
{
    ReceiverEnergy e;
    e.hx = expectation(ensemble, bundle.x_local(receiver_site));
    e.hz = expectation(ensemble, bundle.z_local(receiver_site));
    e.energy = e.hx + e.hz;
    e.extracted = -e.energy;
    return e;
}

FeedbackAngle receiver_angle(const ModelBundle& bundle, const GroundSolution& ground,
                             std::size_t receiver_site, const ProtocolAxes& axes)
{
    const std::size_t n = bundle.n_qubits();
    return compute_theta(ground, bundle.total, PauliString::single(n, bundle.sender_site, axes.sender),
                         PauliString::single(n, receiver_site, axes.receiver));
}

QetRecord run_minimal_qet(const MinimalModelParams& params, const ProtocolAxes& axes)
{
    const PreparedModel model = prepare_minimal(params);
    const MeasuredGround measured = alice_measure(model.bundle, model.ground, axes);
    const FeedbackAngle angle = receiver_angle(model.bundle, model.ground, 1, axes);
    const Ensemble rho = apply_feedback(measured.ensemble, 1, angle, axes);

    QetRecord record;
    record.model = ModelKind::Minimal;
    record.h = params.h;
    record.k = params.k;
    record.e0 = measured.e0;
    record.receivers.emplace(1, receiver_energy(rho, model.bundle, 1));
    record.angles.emplace(1, angle);
    return record;
}

QetRecord run_qed(const PreparedModel& model, const StarModelParams& params,
                  const std::vector<std::size_t>& receivers, const ProtocolAxes& axes)
{
    if (receivers.empty()) throw InvalidArgument("run_qed: no receivers");
    std::set<std::size_t> seen;
    for (std::size_t j : receivers) {
        if (j == 0 || j > static_cast<std::size_t>(params.receivers())) {
            throw InvalidArgument("run_qed: receiver site " + std::to_string(j) + " outside 1.." +
                                  std::to_string(params.receivers()));
        }
        if (!seen.insert(j).second) {
            throw InvalidArgument("run_qed: duplicate receiver site " + std::to_string(j));
        }
    }

    const MeasuredGround measured = alice_measure(model.bundle, model.ground, axes);
    QetRecord record;
    record.model = ModelKind::Star;
    record.h = params.h;
    record.k = params.k;
    record.q = params.q;
    record.receiver_count = params.receivers();
    record.coupling_scale = params.coupling_scale;
    record.e0 = measured.e0;

    Ensemble rho = measured.ensemble;
    for (std::size_t j : receivers) {
        const FeedbackAngle angle = receiver_angle(model.bundle, model.ground, j, axes);
        record.angles.emplace(j, angle);
        rho = apply_feedback(rho, j, angle, axes);
    }
    for (std::size_t j : receivers) record.receivers.emplace(j, receiver_energy(rho, model.bundle, j));
    return record;
}

QetRecord run_qed(const StarModelParams& params, const std::vector<std::size_t>& receivers,
                  const ProtocolAxes& axes)
{
    return run_qed(prepare_star(params), params, receivers, axes);
}

SweepGrid sweep_extracted_energy(const std::vector<double>& h_values,
                                 const std::vector<double>& k_values)
{
    SweepGrid grid{h_values, k_values, {}, {}};
    grid.extracted.assign(h_values.size(), std::vector<double>(k_values.size(), 0.0));
    grid.extracted_h1 = grid.extracted;
    for (std::size_t a = 0; a < h_values.size(); ++a) {
        for (std::size_t b = 0; b < k_values.size(); ++b) {
            const MinimalModelParams params{h_values[a], k_values[b]};
            const PreparedModel model = prepare_minimal(params);
            const MeasuredGround measured = alice_measure(model.bundle, model.ground);
            const FeedbackAngle angle = receiver_angle(model.bundle, model.ground, 1);
            const Ensemble rho = apply_feedback(measured.ensemble, 1, angle);
            const ReceiverEnergy e = receiver_energy(rho, model.bundle, 1);
            grid.extracted[a][b] = e.extracted;
            grid.extracted_h1[a][b] = -e.hz;
        }
    }
    return grid;
}

}  // namespace qetnet
