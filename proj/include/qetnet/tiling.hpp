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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qetnet {

enum class Curvature { Spherical, Euclidean, Hyperbolic };

std::string_view to_string(Curvature c);

/// Sign of (p-2)(q-2) - 4: hyperbolic above, Euclidean at, spherical below.
Curvature classify(int p, int q);

struct TilingSpec {
    int p = 3;
    int q = 7;
    int depth = 1;
};

inline constexpr std::size_t kMaxTilingVertices = 1'000'000;

/**
 * Combinatorial {3,q} tiling grown ring by ring from a central vertex.
 *
 * Vertex 0 is the center; `ring[v]` is the graph distance to it. Vertices
 * are numbered ring by ring, each ring in cyclic order. Edges are stored
 * once with u < v, sorted.
 */
struct TilingGraph {
    TilingSpec spec;
    std::vector<int> ring;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::vector<std::size_t>> adjacency;  // sorted neighbor lists

    [[nodiscard]] std::size_t vertex_count() const noexcept { return ring.size(); }
    [[nodiscard]] std::size_t degree(std::size_t v) const { return adjacency.at(v).size(); }
};

/**
 * Grow a {3,q} tiling to `depth` rings. Ring d is a cycle; a vertex on it
 * with `down` neighbors in ring d-1 gets q - 2 - down neighbors in ring d+1,
 * consecutive ring vertices sharing one of them so that every face is a
 * triangle. Requires p == 3 and q >= 6 (the flat and hyperbolic cases).
 */
TilingGraph generate(const TilingSpec& spec);

/// Vertex count per ring, ring 0 first.
std::vector<std::size_t> ring_sizes(const TilingGraph& graph);

/// `ring,count` CSV with header.
std::string ring_sizes_csv(const TilingGraph& graph);

struct UnitStar {
    int q = 0;
    std::size_t center = 0;
    std::vector<std::size_t> neighbors;  // neighbors[j-1] becomes star site j
};

/// Center plus its q neighbors; throws for vertices without full degree.
UnitStar unit_star(const TilingGraph& graph, std::size_t center);

/// One `u v` line per edge, u < v, sorted.
std::string export_edges(const TilingGraph& graph);

/// Inverse of export_edges.
std::vector<std::pair<std::size_t, std::size_t>> parse_edges(std::string_view text);

}  // namespace qetnet
