#pragma once

#include "graph.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ndv {

/// Symmetric nonnegative weight matrix with zero diagonal, row-major.
class WeightedGraph
{
public:
	WeightedGraph() = default;

	WeightedGraph(std::size_t n, std::vector<double> w) : n_(n), w_(std::move(w))
	{
		if (w_.size() != n_ * n_)
			throw std::invalid_argument("weight matrix must have n*n entries");
		for (std::size_t i = 0; i < n_; ++i) {
			if (at(i, i) != 0.0)
				throw std::invalid_argument("weight matrix diagonal must be zero");
			for (std::size_t j = 0; j < n_; ++j) {
				const double x = at(i, j);
				if (!std::isfinite(x) || x < 0.0)
					throw std::invalid_argument("weights must be finite and nonnegative");
				if (x != at(j, i))
					throw std::invalid_argument("weight matrix must be symmetric");
			}
		}
	}

	std::size_t num_nodes() const noexcept { return n_; }
	double at(std::size_t i, std::size_t j) const { return w_[i * n_ + j]; }
	const std::vector<double>& data() const noexcept { return w_; }

private:
	std::size_t n_ = 0;
	std::vector<double> w_;
};

/// Node pairs ordered by descending weight, ties broken by ascending (i,j).
inline std::vector<Edge> rank_pairs(const WeightedGraph& wg)
{
	const std::size_t n = wg.num_nodes();
	std::vector<Edge> pairs;
	pairs.reserve(max_edges(n));
	for (node_t i = 0; i < n; ++i)
		for (node_t j = i + 1; j < n; ++j)
			pairs.emplace_back(i, j);
	std::stable_sort(pairs.begin(), pairs.end(), [&](const Edge& a, const Edge& b) {
		return wg.at(a.u, a.v) > wg.at(b.u, b.v);
	});
	return pairs;
}

/// Round-half-up of d * n(n-1)/2.
inline std::size_t edges_for_density(std::size_t n, double d)
{
	if (!(d >= 0.0 && d <= 1.0))
		throw std::invalid_argument("density must lie in [0,1]");
	const double target = d * double(max_edges(n));
	// absorb representation error of decimal densities such as 0.29
	const auto e = std::size_t(std::floor(target + 0.5 + 1e-9));
	return std::min(e, max_edges(n));
}

/// Round-half-up of percent * n(n-1)/2 / 100, in exact integer arithmetic.
inline std::size_t edges_for_percent(std::size_t n, int percent)
{
	if (percent < 0 || percent > 100)
		throw std::invalid_argument("percent must lie in [0,100]");
	return (std::size_t(percent) * max_edges(n) + 50) / 100;
}

/// Graph made of the first `e` pairs of a ranking.
inline Graph take_strongest(std::size_t n, const std::vector<Edge>& ranked, std::size_t e)
{
	std::vector<Edge> chosen(ranked.begin(), ranked.begin() + std::ptrdiff_t(std::min(e, ranked.size())));
	return Graph(n, std::move(chosen));
}

inline Graph threshold_to_edge_count(const WeightedGraph& wg, std::size_t e)
{
	return take_strongest(wg.num_nodes(), rank_pairs(wg), e);
}

/// Keeps the round(d * n(n-1)/2) strongest pairs.
inline Graph threshold_to_density(const WeightedGraph& wg, double d)
{
	return threshold_to_edge_count(wg, edges_for_density(wg.num_nodes(), d));
}

struct ThresholdedGraph
{
	int percent;
	double density;
	Graph graph;
};

/// One thresholded graph per integer percentage; rankings are shared so edge sets are nested.
inline std::vector<ThresholdedGraph> density_sweep(const WeightedGraph& wg, const std::vector<int>& percents)
{
	const std::size_t n = wg.num_nodes();
	const auto ranked = rank_pairs(wg);
	std::vector<ThresholdedGraph> out;
	out.reserve(percents.size());
	for (int p : percents) {
		Graph g = take_strongest(n, ranked, edges_for_percent(n, p));
		const double d = n < 2 ? 0.0 : density(g);
		out.push_back({p, d, std::move(g)});
	}
	return out;
}

/// Induced weighted subgraph on a uniformly random subset of `keep` nodes.
inline WeightedGraph subsample_nodes(const WeightedGraph& wg, std::size_t keep, std::uint64_t seed)
{
	const std::size_t n = wg.num_nodes();
	if (keep > n)
		throw std::invalid_argument("cannot keep more nodes than the matrix has");
	std::vector<std::size_t> idx(n);
	for (std::size_t i = 0; i < n; ++i)
		idx[i] = i;
	Engine rng(seed);
	for (std::size_t i = 0; i < keep; ++i)
		std::swap(idx[i], idx[i + uniform_below(rng, n - i)]);
	idx.resize(keep);
	std::sort(idx.begin(), idx.end());
	std::vector<double> w(keep * keep);
	for (std::size_t a = 0; a < keep; ++a)
		for (std::size_t b = 0; b < keep; ++b)
			w[a * keep + b] = wg.at(idx[a], idx[b]);
	return {keep, std::move(w)};
}

} // namespace ndv
