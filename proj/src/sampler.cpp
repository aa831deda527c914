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

#include "qetnet/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qetnet/kernels.hpp"
#include "qetnet/rng.hpp"

namespace qetnet {

namespace {

// Neumaier compensated sum; keeps the mean independent of tally order
// to well below the last printed digit.
class CompensatedSum {
  public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + carry_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

struct SampledBranch {
    int mu = 0;
    double probability = 0.0;
    std::vector<double> cdf;  // running sum of outcome probabilities
};

std::string format_number(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

}  // namespace

std::string to_string(BasisRun run) { return run == BasisRun::X ? "X" : "Z"; }

std::string to_string(Method method) { return method == Method::Exact ? "exact" : "sampled"; }

void ShotPlan::validate() const
{
    if (shots < 1) throw InvalidArgument("ShotPlan: shots must be at least 1");
}

OutcomeTallies sample_protocol(const ModelBundle& bundle, const GroundSolution& ground,
                               const std::map<std::size_t, FeedbackAngle>& angles,
                               const ShotPlan& plan, const ProtocolAxes& axes)
{
    plan.validate();
    const std::size_t n = bundle.n_qubits();
    if (ground.state.n_qubits() != n) throw DimensionError("sample_protocol: ground state size mismatch");
    for (const auto& [site, angle] : angles) {
        if (site == bundle.sender_site || site >= n) {
            throw InvalidArgument("sample_protocol: bad receiver site " + std::to_string(site));
        }
    }

    // Evolution between the sender's readout and the terminal readout is
    // deterministic, so each mu branch reduces to one outcome distribution.
    const Ensemble measured =
        projective_measure(ground.state, PauliString::single(n, bundle.sender_site, axes.sender));
    std::vector<SampledBranch> branches;
    for (const auto& b : measured.branches()) {
        StateVector state = b.state;
        for (const auto& [site, angle] : angles) {
            state = conditional_rotation(state, PauliString::single(n, site, axes.receiver), angle.theta,
                                         b.label.mu);
        }
        if (plan.basis == BasisRun::X) {
            for (std::size_t qb = 0; qb < n; ++qb) state = apply_hadamard(state, qb);
        }
        SampledBranch sb{b.label.mu, b.probability, {}};
        sb.cdf.resize(state.dimension());
        double running = 0.0;
        for (std::size_t i = 0; i < sb.cdf.size(); ++i) {
            running += std::norm(state.amplitudes()(static_cast<Eigen::Index>(i)));
            sb.cdf[i] = running;
        }
        branches.push_back(std::move(sb));
    }

    OutcomeTallies tallies;
    tallies.n_qubits = n;
    tallies.basis = plan.basis;
    tallies.shots = plan.shots;
    tallies.counts.assign(std::size_t{1} << n, 0);
    for (std::uint64_t s = 0; s < plan.shots; ++s) {
        ShotRng rng(plan.master_seed, plan.stream_id, s);
        const double u_mu = rng.uniform();
        const SampledBranch* chosen = &branches.back();
        double acc = 0.0;
        for (const auto& b : branches) {
            acc += b.probability;
            if (u_mu < acc) {
                chosen = &b;
                break;
            }
        }
        (chosen->mu == 1 ? tallies.mu_plus : tallies.mu_minus) += 1;
        const double u = rng.uniform() * chosen->cdf.back();
        auto it = std::upper_bound(chosen->cdf.begin(), chosen->cdf.end(), u);
        if (it == chosen->cdf.end()) --it;
        tallies.counts[static_cast<std::size_t>(it - chosen->cdf.begin())] += 1;
    }
    return tallies;
}

OutcomeTallies sample_protocol(const ModelBundle& bundle, const GroundSolution& ground,
                               const std::vector<std::size_t>& receivers, const ShotPlan& plan,
                               const ProtocolAxes& axes)
{
    std::map<std::size_t, FeedbackAngle> angles;
    for (std::size_t j : receivers) {
        if (j == bundle.sender_site || j >= bundle.n_qubits()) {
            throw InvalidArgument("sample_protocol: bad receiver site " + std::to_string(j));
        }
        if (!angles.emplace(j, receiver_angle(bundle, ground, j, axes)).second) {
            throw InvalidArgument("sample_protocol: duplicate receiver site " + std::to_string(j));
        }
    }
    return sample_protocol(bundle, ground, angles, plan, axes);
}

EstimateRow estimate(const OutcomeTallies& tallies, const ObservableSum& obs,
                     std::string observable_id)
{
    if (obs.n_qubits() != tallies.n_qubits) throw DimensionError("estimate: qubit count mismatch");
    if (tallies.shots == 0) throw InvalidArgument("estimate: no shots");
    for (const auto& t : obs.terms()) {
        const bool ok = tallies.basis == BasisRun::Z ? t.word.is_z_type() : t.word.is_x_type();
        if (!ok) {
            throw InvalidArgument("estimate: term " + t.word.to_string() + " is not diagonal in the " +
                                  to_string(tallies.basis) + "-run basis");
        }
    }
    // A word's readout in the rotated basis is the parity of its support.
    auto value = [&](std::uint64_t outcome) {
        double v = obs.offset();
        for (const auto& t : obs.terms()) {
            const std::uint64_t support = tallies.basis == BasisRun::Z ? t.word.z_mask() : t.word.x_mask();
            v += (std::popcount(outcome & support) & 1) ? -t.coefficient : t.coefficient;
        }
        return v;
    };

    const auto n_shots = static_cast<double>(tallies.shots);
    CompensatedSum total;
    std::vector<std::pair<double, double>> seen;  // (value, count)
    for (std::size_t b = 0; b < tallies.counts.size(); ++b) {
        if (tallies.counts[b] == 0) continue;
        const double v = value(b);
        const auto c = static_cast<double>(tallies.counts[b]);
        total.add(v * c);
        seen.emplace_back(v, c);
    }
    const double mean = total.value() / n_shots;
    double stderr_ = 0.0;
    if (tallies.shots > 1) {
        CompensatedSum sq;
        for (const auto& [v, c] : seen) sq.add(c * (v - mean) * (v - mean));
        const double variance = std::max(0.0, sq.value()) / (n_shots - 1.0);
        stderr_ = std::sqrt(variance / n_shots);
    }
    return {std::move(observable_id), mean, stderr_, tallies.shots};
}

std::vector<Table1Config> default_table1_configs()
{
    std::vector<Table1Config> configs;
    for (int q : {6, 7, 10}) {
        for (double h : {9.0, 8.0, 7.0, 6.0}) configs.push_back({q, h, 2.0});
    }
    return configs;
}

std::uint64_t config_stream_id(const Table1Config& config)
{
    const auto hb = std::bit_cast<std::uint64_t>(config.h);
    const auto kb = std::bit_cast<std::uint64_t>(config.k);
    return (static_cast<std::uint64_t>(config.q) * 0x9E3779B97F4A7C15ULL) ^ hb ^ std::rotl(kb, 29);
}

std::vector<Table1Row> estimate_table1(const std::vector<Table1Config>& configs,
                                       const Table1Options& options)
{
    if (options.sampled && options.shots < 1) throw InvalidArgument("estimate_table1: shots must be >= 1");
    const std::vector<std::size_t> receivers{1, 2};
    std::vector<Table1Row> rows;
    for (const auto& cfg : configs) {
        const StarModelParams params = StarModelParams::table_convention(cfg.q, cfg.h, cfg.k);
        params.validate();
        const PreparedModel model = prepare_star(params);
        auto row = [&](const char* obs, int site, Method m, double mean, double se, std::uint64_t shots,
                       std::uint64_t seed) {
            rows.push_back({cfg.q, cfg.h, cfg.k, obs, site, m, mean, se, shots, seed});
        };

        if (options.exact) {
            const QetRecord rec = run_qed(model, params, receivers);
            row("E0", 0, Method::Exact, rec.e0, 0.0, 0, 0);
            for (std::size_t j : receivers) {
                const ReceiverEnergy& e = rec.receivers.at(j);
                const int site = static_cast<int>(j);
                row("HX", site, Method::Exact, e.hx, 0.0, 0, 0);
                row("HZ", site, Method::Exact, e.hz, 0.0, 0, 0);
                row("E", site, Method::Exact, e.energy, 0.0, 0, 0);
            }
        }
        if (options.sampled) {
            const std::uint64_t stream = config_stream_id(cfg);
            // X and Z readouts never share shots: two independent streams.
            const OutcomeTallies z_run = sample_protocol(
                model.bundle, model.ground, receivers,
                ShotPlan{BasisRun::Z, options.shots, options.master_seed, 2 * stream});
            const OutcomeTallies x_run = sample_protocol(
                model.bundle, model.ground, receivers,
                ShotPlan{BasisRun::X, options.shots, options.master_seed, 2 * stream + 1});
            const EstimateRow e0 = estimate(z_run, model.bundle.sender_local(), "E0");
            row("E0", 0, Method::Sampled, e0.mean, e0.stderr_, options.shots, options.master_seed);
            for (std::size_t j : receivers) {
                const int site = static_cast<int>(j);
                const EstimateRow hx = estimate(x_run, model.bundle.x_local(j), "HX");
                const EstimateRow hz = estimate(z_run, model.bundle.z_local(j), "HZ");
                row("HX", site, Method::Sampled, hx.mean, hx.stderr_, options.shots, options.master_seed);
                row("HZ", site, Method::Sampled, hz.mean, hz.stderr_, options.shots, options.master_seed);
                row("E", site, Method::Sampled, hx.mean + hz.mean, std::hypot(hx.stderr_, hz.stderr_),
                    options.shots, options.master_seed);
            }
        }
    }
    return rows;
}

std::string table1_csv(const std::vector<Table1Row>& rows)
{
    std::ostringstream os;
    os << "tiling,h,k,observable,site,method,mean,stderr,shots,seed\n";
    for (const auto& r : rows) {
        os << "\"{3," << r.q << "}\"," << format_number(r.h) << ',' << format_number(r.k) << ','
           << r.observable << ',' << r.site << ',' << to_string(r.method) << ','
           << format_number(r.mean) << ',' << format_number(r.stderr_) << ',' << r.shots << ','
           << r.seed << '\n';
    }
    return os.str();
}

std::string table1_wide_csv(const std::vector<Table1Row>& rows)
{
    static const std::vector<std::pair<std::string, int>> columns{
        {"E0", 0}, {"HX", 1}, {"HZ", 1}, {"E", 1}, {"HX", 2}, {"HZ", 2}, {"E", 2}};
    std::ostringstream os;
    os << "tiling,h,k,method";
    for (const auto& [obs, site] : columns) {
        const std::string name = obs == "E0" ? "E0" : obs + std::to_string(site);
        os << ',' << name << ',' << name << "_stderr";
    }
    os << '\n';
    // Rows arrive grouped by config and method; emit one line per group.
    std::size_t i = 0;
    while (i < rows.size()) {
        const Table1Row& head = rows[i];
        std::size_t end = i;
        while (end < rows.size() && rows[end].q == head.q && rows[end].h == head.h &&
               rows[end].k == head.k && rows[end].method == head.method) {
            ++end;
        }
        os << "\"{3," << head.q << "}\"," << format_number(head.h) << ',' << format_number(head.k) << ','
           << to_string(head.method);
        for (const auto& [obs, site] : columns) {
            const auto it = std::find_if(rows.begin() + static_cast<std::ptrdiff_t>(i),
                                         rows.begin() + static_cast<std::ptrdiff_t>(end),
                                         [&](const Table1Row& r) {
                                             return r.observable == obs && r.site == site;
                                         });
            if (it == rows.begin() + static_cast<std::ptrdiff_t>(end)) {
                os << ",,";
            } else {
                os << ',' << format_number(it->mean) << ',' << format_number(it->stderr_);
            }
        }
        os << '\n';
        i = end;
    }
    return os.str();
}

}  // namespace qetnet
