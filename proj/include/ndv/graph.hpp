#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ndv {

using node_t = std::uint32_t;

/// Unordered node pair stored with u < v.
struct Edge
{
	node_t u = 0;
	node_t v = 0;

	constexpr Edge() = default;
	constexpr Edge(node_t a, node_t b) : u(a < b ? a : b), v(a < b ? b : a) {}

	friend constexpr bool operator==(const Edge&, const Edge&) = default;
	friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

class graph_error : public std::invalid_argument
{
public:
	using std::invalid_argument::invalid_argument;
};

/**
 * Immutable simple undirected graph.
 *
 * Nodes are 0..n-1. Edges are kept sorted in lexicographic order, so
 * adjacency queries are O(log m); degrees are cached and O(1).
 */
class Graph
{
public:
	Graph() = default;

	/// Throws graph_error on self-loops, duplicates or out-of-range endpoints.
	Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges))
	{
		if (n_ > std::size_t(UINT32_MAX))
			throw graph_error("graph too large");
		std::sort(edges_.begin(), edges_.end());
		finish();
	}

	/// Builds from edges already in strictly increasing canonical order.
	static Graph from_sorted(std::size_t n, std::vector<Edge> edges)
	{
		Graph g;
		g.n_ = n;
		g.edges_ = std::move(edges);
		if (!std::is_sorted(g.edges_.begin(), g.edges_.end()))
			throw graph_error("edges not in canonical order");
		g.finish();
		return g;
	}

	std::size_t num_nodes() const noexcept { return n_; }
	std::size_t num_edges() const noexcept { return edges_.size(); }
	std::span<const Edge> edges() const noexcept { return edges_; }
	std::span<const std::uint32_t> degrees() const noexcept { return degrees_; }
	std::uint32_t degree(node_t i) const { return degrees_.at(i); }

	bool has_edge(node_t a, node_t b) const
	{
		if (a == b)
			return false;
		return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
	}

	bool has_isolated_node() const
	{
		return std::find(degrees_.begin(), degrees_.end(), 0u) != degrees_.end();
	}

	friend bool operator==(const Graph& a, const Graph& b)
	{
		return a.n_ == b.n_ && a.edges_ == b.edges_;
	}

private:
	void finish()
	{
		degrees_.assign(n_, 0);
		for (std::size_t e = 0; e < edges_.size(); ++e) {
			const Edge& ed = edges_[e];
			if (ed.u == ed.v)
				throw graph_error("self-loop at node " + std::to_string(ed.u));
			if (ed.v >= n_)
				throw graph_error("edge endpoint " + std::to_string(ed.v) + " out of range");
			if (e > 0 && edges_[e - 1] == ed)
				throw graph_error("duplicate edge (" + std::to_string(ed.u) + "," + std::to_string(ed.v) + ")");
			++degrees_[ed.u];
			++degrees_[ed.v];
		}
	}

	std::size_t n_ = 0;
	std::vector<Edge> edges_;
	std::vector<std::uint32_t> degrees_;
};

inline std::size_t max_edges(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

inline std::vector<std::uint32_t> degree_sequence(const Graph& g)
{
	return {g.degrees().begin(), g.degrees().end()};
}

/// Sum of squared degrees, accumulated exactly.
inline std::uint64_t sum_squared_degrees(const Graph& g)
{
	std::uint64_t s = 0;
	for (std::uint64_t k : g.degrees())
		s += k * k;
	return s;
}

/// 2m / (n(n-1)). Throws for n < 2.
inline double density(const Graph& g)
{
	const std::size_t n = g.num_nodes();
	if (n < 2)
		throw std::domain_error("density undefined for fewer than 2 nodes");
	return double(2 * g.num_edges()) / (double(n) * double(n - 1));
}

inline Graph complement(const Graph& g)
{
	const std::size_t n = g.num_nodes();
	std::vector<Edge> out;
	out.reserve(max_edges(n) - g.num_edges());
	auto it = g.edges().begin();
	const auto end = g.edges().end();
	for (node_t i = 0; i < n; ++i)
		for (node_t j = i + 1; j < n; ++j) {
			if (it != end && it->u == i && it->v == j) {
				++it;
				continue;
			}
			out.emplace_back(i, j);
		}
	return Graph::from_sorted(n, std::move(out));
}

/// Subgraph induced by `keep`; kept nodes are relabelled in ascending original order.
inline Graph induced_subgraph(const Graph& g, std::vector<node_t> keep)
{
	std::sort(keep.begin(), keep.end());
	keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
	constexpr node_t absent = UINT32_MAX;
	std::vector<node_t> remap(g.num_nodes(), absent);
	for (std::size_t i = 0; i < keep.size(); ++i)
		remap.at(keep[i]) = node_t(i);
	std::vector<Edge> out;
	for (const Edge& e : g.edges())
		if (remap[e.u] != absent && remap[e.v] != absent)
			out.emplace_back(remap[e.u], remap[e.v]);
	// remap is monotone, so canonical order is preserved
	return Graph::from_sorted(keep.size(), std::move(out));
}

/// Relabel node i as perm[i].
inline Graph relabel(const Graph& g, std::span<const node_t> perm)
{
	if (perm.size() != g.num_nodes())
		throw graph_error("permutation size mismatch");
	std::vector<Edge> out;
	out.reserve(g.num_edges());
	for (const Edge& e : g.edges())
		out.emplace_back(perm[e.u], perm[e.v]);
	return Graph(g.num_nodes(), std::move(out));
}

} // namespace ndv
