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

#include <gtest/gtest.h>

#include <map>

#include "oracles/tiling_oracles.hpp"
#include "qetnet/errors.hpp"
#include "qetnet/tiling.hpp"

using namespace qetnet;

TEST(Classify, CurvatureSign)
{
    EXPECT_EQ(classify(3, 5), Curvature::Spherical);
    EXPECT_EQ(classify(3, 6), Curvature::Euclidean);
    EXPECT_EQ(classify(4, 4), Curvature::Euclidean);
    EXPECT_EQ(classify(6, 3), Curvature::Euclidean);
    EXPECT_EQ(classify(3, 7), Curvature::Hyperbolic);
    EXPECT_EQ(classify(3, 10), Curvature::Hyperbolic);
    EXPECT_THROW(classify(2, 7), InvalidArgument);
    EXPECT_EQ(to_string(Curvature::Hyperbolic), "Hyperbolic");
}

TEST(Generate, TriangularLatticeRingsGrowLinearly)
{
    const auto sizes = ring_sizes(generate({3, 6, 8}));
    ASSERT_EQ(sizes.size(), 9u);
    EXPECT_EQ(sizes[0], 1u);
    for (std::size_t d = 1; d < sizes.size(); ++d) EXPECT_EQ(sizes[d], 6 * d);
}

TEST(Generate, MatchesRecurrence)
{
    for (int q : {6, 7, 8, 10, 12}) {
        const auto sizes = ring_sizes(generate({3, q, 5}));
        const auto expected = oracle::recurrence_rings(q, 5);
        for (std::size_t d = 0; d < sizes.size(); ++d) {
            EXPECT_EQ(static_cast<long long>(sizes[d]), expected[d]) << "q=" << q << " d=" << d;
        }
    }
}

TEST(Generate, MatchesGeometricConstruction)
{
    for (int q : {7, 10}) {
        const int depth = q == 7 ? 6 : 4;
        const TilingGraph g = generate({3, q, depth});
        const oracle::GeometricTiling geo = oracle::geometric_rings(q, depth);
        const auto sizes = ring_sizes(g);
        for (std::size_t d = 0; d < sizes.size(); ++d) {
            EXPECT_EQ(static_cast<long long>(sizes[d]), geo.rings[d]) << "q=" << q << " d=" << d;
        }
        EXPECT_EQ(g.edges.size(), geo.edges);
        std::vector<std::map<std::size_t, std::size_t>> hist(sizes.size());
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            ++hist[static_cast<std::size_t>(g.ring[v])][g.degree(v)];
        }
        EXPECT_EQ(hist, geo.degree_histogram);
    }
}

TEST(Generate, InteriorVerticesHaveFullDegreeAndTriangularFaces)
{
    const int q = 7;
    const TilingGraph g = generate({3, q, 4});
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (g.ring[v] >= 4) continue;
        ASSERT_EQ(g.degree(v), static_cast<std::size_t>(q)) << v;
        // The link of an interior vertex is a q-cycle.
        const auto& nbrs = g.adjacency[v];
        for (std::size_t w : nbrs) {
            std::size_t common = 0;
            for (std::size_t x : g.adjacency[w]) {
                if (std::binary_search(nbrs.begin(), nbrs.end(), x)) ++common;
            }
            EXPECT_EQ(common, 2u);
        }
    }
}

TEST(Generate, EdgesJoinAdjacentOrEqualRings)
{
    const TilingGraph g = generate({3, 10, 3});
    for (const auto& [a, b] : g.edges) {
        EXPECT_LT(a, b);
        EXPECT_LE(std::abs(g.ring[a] - g.ring[b]), 1);
    }
}

TEST(Generate, HyperbolicRingsGrowExponentially)
{
    for (int q : {7, 10}) {
        const auto sizes = ring_sizes(generate({3, q, 6}));
        for (std::size_t d = 2; d + 1 < sizes.size(); ++d) {
            EXPECT_GT(static_cast<double>(sizes[d + 1]) / static_cast<double>(sizes[d]), 1.5);
        }
    }
}

TEST(Generate, RejectsUnsupportedInput)
{
    EXPECT_THROW(generate({3, 5, 2}), InvalidArgument);
    EXPECT_THROW(generate({4, 6, 2}), InvalidArgument);
    EXPECT_THROW(generate({3, 7, -1}), InvalidArgument);
    EXPECT_THROW(generate({3, 10, 9}), CapacityError);
    EXPECT_EQ(generate({3, 7, 0}).vertex_count(), 1u);
}

TEST(UnitStarTest, CenterAndNeighbors)
{
    const TilingGraph g = generate({3, 7, 2});
    const UnitStar star = unit_star(g, 0);
    EXPECT_EQ(star.neighbors.size(), 7u);
    EXPECT_EQ(unit_star(g, 1).neighbors.size(), 7u);
    EXPECT_THROW(unit_star(g, g.vertex_count() - 1), InvalidArgument);
    EXPECT_THROW(unit_star(g, g.vertex_count()), InvalidArgument);
}

TEST(EdgeList, RoundTrip)
{
    const TilingGraph g = generate({3, 7, 3});
    EXPECT_EQ(parse_edges(export_edges(g)), g.edges);
    EXPECT_THROW(parse_edges("3 1\n"), InvalidArgument);
    EXPECT_THROW(parse_edges("1 2 3\n"), InvalidArgument);
}

TEST(RingCsv, Format)
{
    EXPECT_EQ(ring_sizes_csv(generate({3, 6, 2})), "ring,count\n0,1\n1,6\n2,12\n");
}
