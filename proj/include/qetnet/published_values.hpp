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

#include <optional>
#include <span>
#include <string>

namespace qetnet {

/// One benchmark cell: mean and reported standard error of an observable
/// for the {3,q} star at (h, k).
struct PublishedCell {
    int q = 0;
    double h = 0.0;
    double k = 0.0;
    std::string observable;  // "E0", "HX", "HZ" or "E"
    int site = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
};

/// All 84 published cells: q in {6, 7, 10}, (h, k) in {(9,2), (8,2), (7,2),
/// (6,2)}, observables E0 (site 0) and HX, HZ, E at sites 1 and 2.
std::span<const PublishedCell> published_cells();

std::optional<PublishedCell> find_published(int q, double h, double k,
                                            const std::string& observable, int site);

/// Comparison tolerance for a cell: max(4 * stderr, 0.03).
double published_tolerance(const PublishedCell& cell);

}  // namespace qetnet
