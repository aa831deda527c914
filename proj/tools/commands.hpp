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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qetnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Seed used when --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr std::uint64_t kDefaultShots = 1'000'000;

enum class OutputFormat { Csv, Json };
enum class MethodSelection { Exact, Sampled, Both };

struct Table1Command {
    std::vector<int> q_values{6, 7, 10};
    std::vector<double> h_values{9.0, 8.0, 7.0, 6.0};
    double k = 2.0;
    std::uint64_t shots = kDefaultShots;
    std::uint64_t seed = kDefaultSeed;
    MethodSelection method = MethodSelection::Both;
    OutputFormat format = OutputFormat::Csv;
    bool wide = false;
    bool check = false;
    std::string out;
};

struct SweepCommand {
    double h_min = 0.1;
    double h_max = 2.0;
    double k_min = 0.1;
    double k_max = 2.0;
    int points = 50;
    bool with_h1 = false;
    std::string out;
};

struct TilingCommand {
    int p = 3;
    int q = 7;
    int depth = 4;
    std::string edges_out;
    std::string out;
};

struct QetCommand {
    double h = 1.0;
    double k = 1.0;
    std::uint64_t shots = kDefaultShots;
    std::uint64_t seed = kDefaultSeed;
    MethodSelection method = MethodSelection::Exact;
    OutputFormat format = OutputFormat::Json;
    std::string out;
};

struct QedCommand {
    double h = 9.0;
    double k = 2.0;
    int q = 6;
    std::vector<std::size_t> receivers{1, 2};
    bool table_convention = false;
    std::uint64_t shots = kDefaultShots;
    std::uint64_t seed = kDefaultSeed;
    MethodSelection method = MethodSelection::Exact;
    OutputFormat format = OutputFormat::Json;
    std::string out;
};

struct LongRangeCommand {
    double h = 1.0;
    double k = 1.0;
    int hops = 1;
    std::uint64_t seed = kDefaultSeed;
    std::string out;
    std::string transcript_out;
};

int cmd_table1(const Table1Command& cmd, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_tiling(const TilingCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_qet(const QetCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_qed(const QedCommand& cmd, std::ostream& out, std::ostream& err);
int cmd_longrange(const LongRangeCommand& cmd, std::ostream& out, std::ostream& err);

/// Parses argv, dispatches, and maps failures to exit codes: 0 success,
/// 1 check or runtime failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qetnet::cli
