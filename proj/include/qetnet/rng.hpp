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
#include <limits>

namespace qetnet {

/**
 * Counter-keyed random stream (SplitMix64, stream format v1).
 *
 * The stream for a shot is a pure function of (master_seed, stream_id,
 * shot_index), so shots can be drawn in any order or on any thread and
 * still reproduce the same outcomes. Doubles are built from the top 53
 * bits, never through std:: distributions, whose output is not pinned
 * across standard libraries.
 */
class ShotRng {
  public:
    using result_type = std::uint64_t;

    ShotRng(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t shot_index) noexcept
    {
        state_ = mix(master_seed);
        state_ = mix(state_ ^ (stream_id * 0xD1B54A32D192ED03ULL));
        state_ = mix(state_ ^ (shot_index * 0xA0761D6478BD642FULL));
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform in [0, 1).
    double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  private:
    static constexpr std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_ = 0;
};

}  // namespace qetnet
