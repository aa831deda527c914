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

#include "qetnet/published_values.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace qetnet {

namespace {

struct Series {
    const char* observable;
    int site;
    int q;
    // (9,2), (8,2), (7,2), (6,2)
    std::array<double, 4> mean;
    std::array<double, 4> stderr_;
};

constexpr std::array<double, 4> kFieldValues{9.0, 8.0, 7.0, 6.0};
constexpr double kCoupling = 2.0;

// clang-format off
constexpr std::array<Series, 21> kSeries{{
    {"E0", 0,  6, { 7.8897,  6.7546,  5.5674,  4.3751}, {0.0090, 0.0080, 0.0070, 0.0060}},
    {"E0", 0,  7, { 7.6482,  6.4994,  5.2865,  4.0341}, {0.0090, 0.0080, 0.0070, 0.0060}},
    {"E0", 0, 10, { 6.9239,  5.6837,  4.4021,  3.0898}, {0.0090, 0.0080, 0.0070, 0.0060}},
    {"HX", 1,  6, {-0.6715, -0.6956, -0.7141, -0.6966}, {0.0037, 0.0036, 0.0035, 0.0033}},
    {"HX", 1,  7, {-0.6497, -0.6695, -0.6679, -0.6357}, {0.0036, 0.0036, 0.0035, 0.0033}},
    {"HX", 1, 10, {-0.5821, -0.5747, -0.5372, -0.4520}, {0.0037, 0.0036, 0.0035, 0.0033}},
    {"HZ", 1,  6, { 0.5102,  0.5441,  0.5585,  0.5582}, {0.0037, 0.0036, 0.0035, 0.0034}},
    {"HZ", 1,  7, { 0.5065,  0.5289,  0.5370,  0.5136}, {0.0036, 0.0037, 0.0036, 0.0037}},
    {"HZ", 1, 10, { 0.4669,  0.4701,  0.4447,  0.3880}, {0.0036, 0.0036, 0.0035, 0.0034}},
    {"E",  1,  6, {-0.1613, -0.1514, -0.1556, -0.1383}, {0.0052, 0.0051, 0.0049, 0.0047}},
    {"E",  1,  7, {-0.1432, -0.1406, -0.1309, -0.1221}, {0.0051, 0.0052, 0.0050, 0.0049}},
    {"E",  1, 10, {-0.1151, -0.1046, -0.0925, -0.0640}, {0.0052, 0.0051, 0.0049, 0.0047}},
    {"HX", 2,  6, {-0.6747, -0.7034, -0.7073, -0.6996}, {0.0037, 0.0036, 0.0035, 0.0033}},
    {"HX", 2,  7, {-0.6497, -0.6685, -0.6674, -0.6358}, {0.0037, 0.0036, 0.0035, 0.0033}},
    {"HX", 2, 10, {-0.5797, -0.5752, -0.5387, -0.4549}, {0.0037, 0.0036, 0.0035, 0.0033}},
    {"HZ", 2,  6, { 0.5169,  0.5467,  0.5643,  0.5625}, {0.0037, 0.0036, 0.0035, 0.0034}},
    {"HZ", 2,  7, { 0.5097,  0.5305,  0.5347,  0.5159}, {0.0036, 0.0037, 0.0036, 0.0037}},
    {"HZ", 2, 10, { 0.4591,  0.4695,  0.4484,  0.3927}, {0.0037, 0.0036, 0.0035, 0.0034}},
    {"E",  2,  6, {-0.1578, -0.1567, -0.1430, -0.1371}, {0.0052, 0.0051, 0.0049, 0.0047}},
    {"E",  2,  7, {-0.1400, -0.1380, -0.1327, -0.1199}, {0.0052, 0.0052, 0.0050, 0.0049}},
    {"E",  2, 10, {-0.1205, -0.1057, -0.0903, -0.0622}, {0.0052, 0.0051, 0.0049, 0.0047}},
}};
// clang-format on

std::vector<PublishedCell> flatten()
{
    std::vector<PublishedCell> cells;
    for (const int q : {6, 7, 10}) {
        for (std::size_t c = 0; c < kFieldValues.size(); ++c) {
            for (const Series& s : kSeries) {
                if (s.q != q) continue;
                cells.push_back({q, kFieldValues[c], kCoupling, s.observable, s.site, s.mean[c],
                                 s.stderr_[c]});
            }
        }
    }
    return cells;
}

}  // namespace

std::span<const PublishedCell> published_cells()
{
    static const std::vector<PublishedCell> cells = flatten();
    return cells;
}

std::optional<PublishedCell> find_published(int q, double h, double k,
                                            const std::string& observable, int site)
{
    const auto cells = published_cells();
    const auto it = std::find_if(cells.begin(), cells.end(), [&](const PublishedCell& c) {
        return c.q == q && c.h == h && c.k == k && c.observable == observable && c.site == site;
    });
    if (it == cells.end()) return std::nullopt;
    return *it;
}

double published_tolerance(const PublishedCell& cell)
{
    return std::max(4.0 * cell.stderr_, 0.03);
}

}  // namespace qetnet
