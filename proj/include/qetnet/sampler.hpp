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
#include <map>
#include <string>
#include <vector>

#include "qetnet/model.hpp"
#include "qetnet/protocol.hpp"

namespace qetnet {

/// Terminal readout basis. X-run rotates every qubit by a Hadamard before
/// the computational-basis readout; Z-run reads directly.
enum class BasisRun { X, Z };

std::string to_string(BasisRun run);

struct ShotPlan {
    BasisRun basis = BasisRun::Z;
    std::uint64_t shots = 1;
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    void validate() const;
};

/// Integer histogram of full-register outcomes from one basis run.
struct OutcomeTallies {
    std::size_t n_qubits = 0;
    BasisRun basis = BasisRun::Z;
    std::uint64_t shots = 0;
    std::uint64_t mu_plus = 0;
    std::uint64_t mu_minus = 0;
    std::vector<std::uint64_t> counts;  // indexed by outcome bitstring
};

/**
 * Shot-sampled protocol: per shot, draw mu from the sender's Born
 * probabilities, apply every receiver's U_j(mu), rotate to the run's basis
 * and draw one full-register outcome. Shot s of the run uses
 * ShotRng(master_seed, stream_id, s).
 */
OutcomeTallies sample_protocol(const ModelBundle& bundle, const GroundSolution& ground,
                               const std::map<std::size_t, FeedbackAngle>& angles,
                               const ShotPlan& plan, const ProtocolAxes& axes = {});

/// Same, with each receiver's optimal angle.
OutcomeTallies sample_protocol(const ModelBundle& bundle, const GroundSolution& ground,
                               const std::vector<std::size_t>& receivers, const ShotPlan& plan,
                               const ProtocolAxes& axes = {});

struct EstimateRow {
    std::string observable;
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t shots = 0;
};

/// Mean and standard error (sample standard deviation / sqrt(shots)) of
/// `obs` over the tallied shots. Every term must be diagonal in the run's
/// basis: Z-type words for a Z-run, X-type words for an X-run.
EstimateRow estimate(const OutcomeTallies& tallies, const ObservableSum& obs,
                     std::string observable_id = {});

struct Table1Config {
    int q = 6;
    double h = 9.0;
    double k = 2.0;
};

/// The 12 benchmark configs: q in {6, 7, 10} times (h, k) in
/// {(9,2), (8,2), (7,2), (6,2)}.
std::vector<Table1Config> default_table1_configs();

/// Stream id of a config, independent of its position in any list.
std::uint64_t config_stream_id(const Table1Config& config);

struct Table1Row {
    int q = 0;
    double h = 0.0;
    double k = 0.0;
    std::string observable;  // E0, HX, HZ, E
    int site = 0;
    Method method = Method::Exact;
    double mean = 0.0;
    double stderr_ = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t seed = 0;
};

struct Table1Options {
    std::uint64_t shots = 1'000'000;
    std::uint64_t master_seed = 0;
    bool exact = true;
    bool sampled = true;
};

/**
 * Per config, in order: E0 (site 0), HX/HZ/E at site 1, HX/HZ/E at site 2,
 * exact rows before sampled rows. Star models use the benchmark register
 * convention (StarModelParams::table_convention) with receivers 1 and 2.
 */
std::vector<Table1Row> estimate_table1(const std::vector<Table1Config>& configs,
                                       const Table1Options& options);

/// `tiling,h,k,observable,site,method,mean,stderr,shots,seed` CSV.
std::string table1_csv(const std::vector<Table1Row>& rows);

/// One line per (tiling, h, k, method) with the seven observables as
/// columns, means and standard errors interleaved.
std::string table1_wide_csv(const std::vector<Table1Row>& rows);

std::string to_string(Method method);

}  // namespace qetnet
