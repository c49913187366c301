#include "oracles.hpp"

#include <ndv/generators.hpp>
#include <ndv/metrics.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace ndv;

namespace {

std::vector<std::uint32_t> sorted_degrees(const Graph& g)
{
	auto k = degree_sequence(g);
	std::sort(k.rbegin(), k.rend());
	return k;
}

/// Node i becomes n-1-i.
Graph reversed(const Graph& g)
{
	std::vector<node_t> perm(g.num_nodes());
	for (std::size_t i = 0; i < perm.size(); ++i)
		perm[i] = node_t(perm.size() - 1 - i);
	return relabel(g, perm);
}

} // namespace

TEST(Fixtures, CanonicalGraphs)
{
	EXPECT_EQ(degree_sequence(star_graph(4)), (std::vector<std::uint32_t>{3, 1, 1, 1}));
	const Graph c5 = cycle_graph(5);
	for (auto k : c5.degrees())
		EXPECT_EQ(k, 2u);
	EXPECT_EQ(complete_graph(3), cycle_graph(3));
	EXPECT_EQ(empty_graph(4).num_edges(), 0u);
	EXPECT_THROW(cycle_graph(2), std::invalid_argument);
	EXPECT_THROW(star_graph(0), std::invalid_argument);
	EXPECT_THROW(complete_graph(0), std::invalid_argument);
}

TEST(QuasiStar, Examples)
{
	EXPECT_EQ(quasi_star(5, 4), star_graph(5));
	EXPECT_EQ(sorted_degrees(quasi_star(6, 9)), (std::vector<std::uint32_t>{5, 5, 2, 2, 2, 2}));
	EXPECT_EQ(quasi_star(6, 9), quasi_star_perfect(6, 2));
	EXPECT_EQ(degree_sequence(quasi_star(5, 5)), (std::vector<std::uint32_t>{4, 2, 2, 1, 1}));
	EXPECT_THROW(quasi_star(5, 11), std::invalid_argument);
}

TEST(QuasiStar, PerfectExamples)
{
	EXPECT_EQ(quasi_star_perfect(4, 1), star_graph(4));
	const Graph g = quasi_star_perfect(10, 3);
	EXPECT_EQ(2 * g.num_edges(), 48u);
	EXPECT_EQ(sorted_degrees(g), (std::vector<std::uint32_t>{9, 9, 9, 3, 3, 3, 3, 3, 3, 3}));
	EXPECT_EQ(quasi_star_perfect(7, 0), empty_graph(7));
	EXPECT_THROW(quasi_star_perfect(5, 5), std::invalid_argument);
}

TEST(QuasiStar, DevelopingNodeShape)
{
	// p dominant nodes, then one node absorbing the remainder
	for (std::size_t n = 3; n <= 25; ++n)
		for (std::size_t m = 0; m <= max_edges(n); ++m) {
			const Graph g = quasi_star(n, m);
			std::size_t dominant = 0;
			while (dominant < n && g.degree(node_t(dominant)) == n - 1)
				++dominant;
			const auto k = g.degrees();
			const std::size_t above = std::size_t(std::count_if(k.begin() + std::ptrdiff_t(dominant), k.end(),
			                                                    [&](std::uint32_t d) { return d > dominant + 1; }));
			EXPECT_LE(above, 1u) << n << "," << m;
		}
}

TEST(QuasiComplete, Examples)
{
	EXPECT_EQ(quasi_complete(5, 3), Graph(5, {{0, 1}, {0, 2}, {1, 2}}));
	const Graph g = quasi_complete(6, 7);
	EXPECT_EQ(degree_sequence(g), (std::vector<std::uint32_t>{4, 3, 3, 3, 1, 0}));
	EXPECT_TRUE(g.has_edge(0, 4));
	EXPECT_THROW(quasi_complete(4, 7), std::invalid_argument);
}

TEST(QuasiFamilies, ExactEdgeCounts)
{
	for (std::size_t n = 1; n <= 60; ++n)
		for (std::size_t m = 0; m <= max_edges(n); ++m) {
			ASSERT_EQ(quasi_star(n, m).num_edges(), m);
			ASSERT_EQ(quasi_complete(n, m).num_edges(), m);
		}
}

TEST(QuasiFamilies, PerfectComplementDuality)
{
	// complement of G*(n, n-p) is a p-clique plus isolated nodes; it sits on the top labels
	EXPECT_EQ(reversed(complement(quasi_star_perfect(10, 7))), quasi_complete_perfect(10, 3));
	for (std::size_t n = 1; n <= 60; ++n)
		for (std::size_t p = 1; p <= n; ++p)
			ASSERT_EQ(reversed(complement(quasi_star_perfect(n, n - p))), quasi_complete_perfect(n, p)) << n << "," << p;
}

TEST(QuasiFamilies, AttainMaximumDegreeVarianceSmallGraphs)
{
	for (std::size_t n = 2; n <= 6; ++n) {
		const auto best = oracle::max_centred_square_sum(n);
		for (std::size_t m = 0; m <= max_edges(n); ++m) {
			auto value = [&](const Graph& g) {
				return std::int64_t(n) * std::int64_t(sum_squared_degrees(g)) - std::int64_t(4 * m * m);
			};
			EXPECT_EQ(std::max(value(quasi_star(n, m)), value(quasi_complete(n, m))), best[m]) << n << "," << m;
		}
	}
}

TEST(ErdosRenyi, Extremes)
{
	EXPECT_EQ(erdos_renyi(12, 1.0, 3), complete_graph(12));
	EXPECT_EQ(erdos_renyi(12, 0.0, 3), empty_graph(12));
	EXPECT_THROW(erdos_renyi(5, 1.5, 1), std::invalid_argument);
}

TEST(ErdosRenyi, Reproducible)
{
	EXPECT_EQ(erdos_renyi(80, 0.3, 42), erdos_renyi(80, 0.3, 42));
	EXPECT_NE(erdos_renyi(80, 0.3, 42), erdos_renyi(80, 0.3, 43));
}

TEST(ErdosRenyi, MeanNormalisedVarianceNearExpectation)
{
	double sum = 0.0;
	const int seeds = 1000;
	for (int s = 0; s < seeds; ++s)
		sum += normalised_degree_variance(erdos_renyi(100, 0.2, derive_seed(5, {std::uint64_t(s)})));
	EXPECT_NEAR(sum / seeds, 0.0198, 0.05 * 0.0198);
}

TEST(RandomGeometric, SymmetricZeroDiagonalBounded)
{
	const auto wg = random_geometric_weighted(50, 9);
	for (std::size_t i = 0; i < 50; ++i) {
		EXPECT_EQ(wg.at(i, i), 0.0);
		for (std::size_t j = 0; j < 50; ++j) {
			EXPECT_EQ(wg.at(i, j), wg.at(j, i));
			EXPECT_GE(wg.at(i, j), 0.0);
			EXPECT_LE(wg.at(i, j), 1.0);
		}
	}
	EXPECT_EQ(random_geometric_weighted(50, 9).data(), wg.data());
	EXPECT_THROW(random_geometric_weighted(1, 9), std::invalid_argument);
}

TEST(RandomGeometric, ThresholdGivesExactEdgeCount)
{
	const auto wg = random_geometric_weighted(40, 3);
	for (double d : {0.05, 0.1, 0.25, 0.5, 0.9})
		EXPECT_EQ(threshold_to_density(wg, d).num_edges(), std::size_t(std::floor(d * 780 + 0.5)));
}

TEST(ScaleFree, Shape)
{
	const auto s = scale_free_shape(1000);
	EXPECT_EQ(s.core, 10u);
	EXPECT_EQ(s.attach, 5u);
	const Graph g = scale_free(1000, 1);
	EXPECT_EQ(g.num_edges(), 45u + 990u * 5u);
	EXPECT_THROW(scale_free(199, 1), std::invalid_argument);
	EXPECT_EQ(scale_free(400, 8), scale_free(400, 8));
}

TEST(ScaleFree, DensityNearOnePercent)
{
	for (std::uint64_t s = 0; s < 25; ++s) {
		const double d = density(scale_free(5000, s));
		EXPECT_GE(d, 0.008);
		EXPECT_LE(d, 0.012);
	}
}

TEST(ScaleFree, EarlyNodesCollectMoreEdges)
{
	const std::size_t n = 2000;
	const auto [core, attach] = scale_free_shape(n);
	double early = 0.0, late = 0.0;
	for (std::uint64_t s = 0; s < 25; ++s) {
		const Graph g = scale_free(n, 100 + s);
		for (std::size_t i = 0; i < 100; ++i) {
			early += g.degree(node_t(core + i));
			late += g.degree(node_t(n - 1 - i));
		}
	}
	EXPECT_GT(early, late);
	(void)attach;
}
