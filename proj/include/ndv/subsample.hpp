#pragma once

#include "graph.hpp"
#include "rng.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ndv {

/// Round-half-up of percent/100 * total.
inline std::size_t removal_count(double percent, std::size_t total)
{
	return std::size_t(std::floor(percent * double(total) / 100.0 + 0.5 + 1e-9));
}

inline void require_percent(double percent)
{
	if (!(percent > 0.0 && percent < 100.0))
		throw std::invalid_argument("removal percentage must lie in (0,100)");
}

/// Induced subgraph after removing round(percent/100 * n) nodes uniformly at random.
inline Graph subsample_nodes(const Graph& g, double percent, std::uint64_t seed)
{
	require_percent(percent);
	const std::size_t n = g.num_nodes();
	const std::size_t keep = n - std::min(n, removal_count(percent, n));
	if (keep < 2)
		throw std::invalid_argument("node subsample would leave fewer than 2 nodes");
	std::vector<node_t> idx(n);
	for (node_t i = 0; i < n; ++i)
		idx[i] = i;
	Engine rng(seed);
	for (std::size_t i = 0; i < keep; ++i)
		std::swap(idx[i], idx[i + uniform_below(rng, n - i)]);
	idx.resize(keep);
	return induced_subgraph(g, std::move(idx));
}

inline Graph without_edges(const Graph& g, const std::vector<char>& removed)
{
	std::vector<Edge> kept;
	kept.reserve(g.num_edges());
	for (std::size_t e = 0; e < g.num_edges(); ++e)
		if (!removed[e])
			kept.push_back(g.edges()[e]);
	return Graph::from_sorted(g.num_nodes(), std::move(kept));
}

/// Removes `count` distinct edges chosen uniformly without replacement.
inline Graph remove_edges_uniform(const Graph& g, std::size_t count, std::uint64_t seed)
{
	const std::size_t m = g.num_edges();
	if (count > m)
		throw std::invalid_argument("cannot remove more edges than present");
	std::vector<std::size_t> idx(m);
	for (std::size_t e = 0; e < m; ++e)
		idx[e] = e;
	Engine rng(seed);
	std::vector<char> removed(m, 0);
	for (std::size_t i = 0; i < count; ++i) {
		std::swap(idx[i], idx[i + uniform_below(rng, m - i)]);
		removed[idx[i]] = 1;
	}
	return without_edges(g, removed);
}

inline Graph subsample_edges_uniform(const Graph& g, double percent, std::uint64_t seed)
{
	require_percent(percent);
	if (g.num_edges() == 0)
		throw std::invalid_argument("edge subsampling needs at least one edge");
	return remove_edges_uniform(g, removal_count(percent, g.num_edges()), seed);
}

/// Removal weight h_ij = ((n-1) - k_i)((n-1) - k_j) for every edge, from the given degrees.
inline std::vector<std::uint64_t> inverse_degree_weights(const Graph& g)
{
	const std::uint64_t top = g.num_nodes() - 1;
	const auto k = g.degrees();
	std::vector<std::uint64_t> h;
	h.reserve(g.num_edges());
	for (const Edge& e : g.edges())
		h.push_back((top - k[e.u]) * (top - k[e.v]));
	return h;
}

namespace detail {

/// Fenwick tree of cumulative removal weights.
class CumulativeWeights
{
public:
	explicit CumulativeWeights(const std::vector<std::uint64_t>& w) : tree_(w.size() + 1, 0)
	{
		for (std::size_t i = 0; i < w.size(); ++i)
			add(i, std::int64_t(w[i]));
	}

	std::uint64_t total() const noexcept { return total_; }

	void add(std::size_t i, std::int64_t delta)
	{
		total_ = std::uint64_t(std::int64_t(total_) + delta);
		for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1))
			tree_[j] = std::uint64_t(std::int64_t(tree_[j]) + delta);
	}

	/// Index of the bin containing `target` in [0, total).
	std::size_t find(std::uint64_t target) const
	{
		std::size_t pos = 0;
		std::size_t step = 1;
		while (step * 2 < tree_.size())
			step *= 2;
		for (; step > 0; step /= 2)
			if (pos + step < tree_.size() && tree_[pos + step] <= target) {
				pos += step;
				target -= tree_[pos];
			}
		return pos;
	}

private:
	std::vector<std::uint64_t> tree_;
	std::uint64_t total_ = 0;
};

} // namespace detail

struct EdgeSample
{
	Graph graph;
	/// Set when every remaining edge had zero weight and removal continued uniformly.
	bool uniform_fallback = false;
};

/**
 * Removes `count` edges one at a time, each drawn with probability h_ij / T
 * over the remaining edges. h is computed once from the original degrees.
 * A uniform draw on [0, T) is located in the cumulative sums of h, so edge
 * ij owns a bin of width h_ij.
 */
inline EdgeSample remove_edges_inverse_degree(const Graph& g, std::size_t count, std::uint64_t seed)
{
	const std::size_t m = g.num_edges();
	if (count > m)
		throw std::invalid_argument("cannot remove more edges than present");
	auto h = inverse_degree_weights(g);
	detail::CumulativeWeights cumulative(h);
	Engine rng(seed);
	std::vector<char> removed(m, 0);
	EdgeSample out;
	std::vector<std::size_t> remaining;
	for (std::size_t i = 0; i < count; ++i) {
		if (cumulative.total() == 0) {
			out.uniform_fallback = true;
			for (std::size_t e = 0; e < m; ++e)
				if (!removed[e])
					remaining.push_back(e);
			for (std::size_t j = 0; i + j < count; ++j) {
				std::swap(remaining[j], remaining[j + uniform_below(rng, remaining.size() - j)]);
				removed[remaining[j]] = 1;
			}
			break;
		}
		const std::size_t e = cumulative.find(uniform_below(rng, cumulative.total()));
		removed[e] = 1;
		cumulative.add(e, -std::int64_t(h[e]));
		h[e] = 0;
	}
	out.graph = without_edges(g, removed);
	return out;
}

inline EdgeSample subsample_edges_inverse_degree(const Graph& g, double percent, std::uint64_t seed)
{
	require_percent(percent);
	if (g.num_edges() == 0)
		throw std::invalid_argument("edge subsampling needs at least one edge");
	return remove_edges_inverse_degree(g, removal_count(percent, g.num_edges()), seed);
}

} // namespace ndv
