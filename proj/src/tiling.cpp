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

#include "qetnet/tiling.hpp"

#include <algorithm>
#include <sstream>

#include "qetnet/errors.hpp"

namespace qetnet {

std::string_view to_string(Curvature c)
{
    switch (c) {
    case Curvature::Spherical: return "Spherical";
    case Curvature::Euclidean: return "Euclidean";
    case Curvature::Hyperbolic: return "Hyperbolic";
    }
    return "Unknown";
}

Curvature classify(int p, int q)
{
    if (p < 3 || q < 3) {
        throw InvalidArgument("classify: p and q must be at least 3");
    }
    const int product = (p - 2) * (q - 2);
    if (product > 4) return Curvature::Hyperbolic;
    if (product == 4) return Curvature::Euclidean;
    return Curvature::Spherical;
}

TilingGraph generate(const TilingSpec& spec)
{
    if (spec.p != 3) {
        throw InvalidArgument("generate: only triangle tilings (p = 3) are supported");
    }
    if (spec.q < 6) {
        throw InvalidArgument("generate: {3," + std::to_string(spec.q) +
                              "} is spherical; ring growth needs q >= 6");
    }
    if (spec.depth < 0) throw InvalidArgument("generate: depth must be non-negative");

    const auto q = static_cast<std::size_t>(spec.q);
    TilingGraph g;
    g.spec = spec;
    g.ring.push_back(0);
    std::vector<std::pair<std::size_t, std::size_t>> raw_edges;
    std::vector<std::size_t> down_count{0};  // neighbors in the previous ring

    auto add_vertex = [&](int ring, std::size_t down) {
        if (g.ring.size() >= kMaxTilingVertices) {
            throw CapacityError("generate: tiling exceeds " + std::to_string(kMaxTilingVertices) +
                                " vertices");
        }
        g.ring.push_back(ring);
        down_count.push_back(down);
        return g.ring.size() - 1;
    };
    auto link = [&](std::size_t a, std::size_t b) { raw_edges.emplace_back(std::min(a, b), std::max(a, b)); };

    std::vector<std::size_t> current;
    if (spec.depth >= 1) {
        for (std::size_t i = 0; i < q; ++i) {
            current.push_back(add_vertex(1, 1));
            link(0, current.back());
        }
        for (std::size_t i = 0; i < q; ++i) link(current[i], current[(i + 1) % q]);
    }

    for (int d = 1; d < spec.depth; ++d) {
        // Vertex v = current[i] needs q - 2 - down(v) outward neighbors. The
        // first is shared with current[i-1] (closing the triangle on that
        // ring edge); for i == 0 it is the wrap-around vertex created last.
        const std::size_t m = current.size();
        std::vector<std::size_t> next;
        std::size_t first_shared = 0;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t v = current[i];
            const std::size_t outward = q - 2 - down_count[v];
            std::vector<std::size_t> fan;
            if (i == 0) {
                first_shared = add_vertex(d + 1, 2);
                fan.push_back(first_shared);
            } else {
                fan.push_back(next.back());
            }
            for (std::size_t k = 1; k + 1 < outward; ++k) fan.push_back(add_vertex(d + 1, 1));
            // Last fan vertex is shared with current[i+1]; for the final
            // vertex of the ring that is the wrap-around vertex.
            fan.push_back(i + 1 == m ? first_shared : add_vertex(d + 1, 2));
            for (std::size_t w : fan) link(v, w);
            for (std::size_t k = 0; k + 1 < fan.size(); ++k) link(fan[k], fan[k + 1]);
            if (i == 0) next.push_back(fan.front());
            for (std::size_t k = 1; k < fan.size(); ++k) {
                if (!(i + 1 == m && k + 1 == fan.size())) next.push_back(fan[k]);
            }
            if (i + 1 < m) link(fan.back(), current[i + 1]);
        }
        current = std::move(next);
    }

    std::sort(raw_edges.begin(), raw_edges.end());
    raw_edges.erase(std::unique(raw_edges.begin(), raw_edges.end()), raw_edges.end());
    g.edges = std::move(raw_edges);
    g.adjacency.assign(g.ring.size(), {});
    for (const auto& [a, b] : g.edges) {
        g.adjacency[a].push_back(b);
        g.adjacency[b].push_back(a);
    }
    for (auto& nbrs : g.adjacency) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

std::vector<std::size_t> ring_sizes(const TilingGraph& graph)
{
    std::vector<std::size_t> sizes(static_cast<std::size_t>(graph.spec.depth) + 1, 0);
    for (int r : graph.ring) ++sizes.at(static_cast<std::size_t>(r));
    return sizes;
}

std::string ring_sizes_csv(const TilingGraph& graph)
{
    std::ostringstream os;
    os << "ring,count\n";
    const auto sizes = ring_sizes(graph);
    for (std::size_t r = 0; r < sizes.size(); ++r) os << r << ',' << sizes[r] << '\n';
    return os.str();
}

UnitStar unit_star(const TilingGraph& graph, std::size_t center)
{
    if (center >= graph.vertex_count()) throw InvalidArgument("unit_star: no such vertex");
    const auto q = static_cast<std::size_t>(graph.spec.q);
    if (graph.degree(center) != q || graph.ring[center] >= graph.spec.depth) {
        throw InvalidArgument("unit_star: vertex " + std::to_string(center) +
                              " is on the boundary (degree " +
                              std::to_string(graph.degree(center)) + " of " + std::to_string(q) +
                              ")");
    }
    return UnitStar{graph.spec.q, center, graph.adjacency[center]};
}

std::string export_edges(const TilingGraph& graph)
{
    std::ostringstream os;
    for (const auto& [a, b] : graph.edges) os << a << ' ' << b << '\n';
    return os.str();
}

std::vector<std::pair<std::size_t, std::size_t>> parse_edges(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::istringstream is{std::string(text)};
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t a = 0;
        std::size_t b = 0;
        std::string extra;
        if (!(ls >> a >> b) || (ls >> extra) || a >= b) {
            throw InvalidArgument("parse_edges: malformed line '" + line + "'");
        }
        edges.emplace_back(a, b);
    }
    return edges;
}

}  // namespace qetnet
