#pragma once

#include "graph.hpp"
#include "rng.hpp"
#include "weighted.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ndv {

inline Graph empty_graph(std::size_t n)
{
	if (n < 1)
		throw std::invalid_argument("empty graph needs n >= 1");
	return Graph::from_sorted(n, {});
}

inline Graph complete_graph(std::size_t n)
{
	if (n < 1)
		throw std::invalid_argument("complete graph needs n >= 1");
	std::vector<Edge> e;
	e.reserve(max_edges(n));
	for (node_t i = 0; i < n; ++i)
		for (node_t j = i + 1; j < n; ++j)
			e.emplace_back(i, j);
	return Graph::from_sorted(n, std::move(e));
}

/// Hub is node 0.
inline Graph star_graph(std::size_t n)
{
	if (n < 1)
		throw std::invalid_argument("star graph needs n >= 1");
	std::vector<Edge> e;
	for (node_t j = 1; j < n; ++j)
		e.emplace_back(0, j);
	return Graph::from_sorted(n, std::move(e));
}

inline Graph cycle_graph(std::size_t n)
{
	if (n < 3)
		throw std::invalid_argument("cycle graph needs n >= 3");
	std::vector<Edge> e;
	for (node_t i = 0; i < n; ++i)
		e.emplace_back(i, node_t((i + 1) % n));
	return Graph(n, std::move(e));
}

/// Edge count of the perfect quasi-star with p dominant nodes: p(2n-p-1)/2.
constexpr std::size_t quasi_star_edges(std::size_t n, std::size_t p) { return p * (2 * n - p - 1) / 2; }

/**
 * Perfect quasi-star G*(n,p): nodes 0..p-1 are joined to every other node,
 * the remaining n-p nodes have degree p.
 */
inline Graph quasi_star_perfect(std::size_t n, std::size_t p)
{
	if (n < 1 || p > n - 1)
		throw std::invalid_argument("quasi-star needs 0 <= p <= n-1");
	std::vector<Edge> e;
	e.reserve(quasi_star_edges(n, p));
	for (node_t i = 0; i < p; ++i)
		for (node_t j = i + 1; j < n; ++j)
			e.emplace_back(i, j);
	return Graph::from_sorted(n, std::move(e));
}

/**
 * Quasi-star with exactly m edges.
 *
 * p is the largest count of dominant nodes (0..p-1, degree n-1) that fits in
 * m. The remaining r edges join the developing node p to nodes p+1..p+r;
 * r < n-p-1 always holds. For r = 1 this is the single edge between two
 * non-dominant nodes, both then of degree p+1.
 */
inline Graph quasi_star(std::size_t n, std::size_t m)
{
	if (n < 1 || m > max_edges(n))
		throw std::invalid_argument("quasi-star edge count out of range");
	std::size_t p = 0;
	while (p + 1 <= n - 1 && quasi_star_edges(n, p + 1) <= m)
		++p;
	const std::size_t r = m - quasi_star_edges(n, p);
	std::vector<Edge> e;
	e.reserve(m);
	for (node_t i = 0; i < p; ++i)
		for (node_t j = i + 1; j < n; ++j)
			e.emplace_back(i, j);
	for (std::size_t k = 1; k <= r; ++k)
		e.emplace_back(node_t(p), node_t(p + k));
	return Graph::from_sorted(n, std::move(e));
}

/**
 * Quasi-complete graph with exactly m edges: a clique on nodes 0..q-1 with q
 * maximal, plus node q joined to clique nodes 0..p-1 for the remainder p.
 * All other nodes are isolated.
 */
inline Graph quasi_complete(std::size_t n, std::size_t m)
{
	if (n < 1 || m > max_edges(n))
		throw std::invalid_argument("quasi-complete edge count out of range");
	std::size_t q = 0;
	while (q + 1 <= n && max_edges(q + 1) <= m)
		++q;
	const std::size_t p = m - max_edges(q);
	std::vector<Edge> e;
	e.reserve(m);
	for (node_t i = 0; i < q; ++i) {
		for (node_t j = i + 1; j < q; ++j)
			e.emplace_back(i, j);
		if (i < p)
			e.emplace_back(i, node_t(q));
	}
	return Graph::from_sorted(n, std::move(e));
}

/// Perfect quasi-complete graph: a clique on nodes 0..q-1, the rest isolated.
inline Graph quasi_complete_perfect(std::size_t n, std::size_t q)
{
	if (q > n)
		throw std::invalid_argument("clique order exceeds node count");
	return quasi_complete(n, max_edges(q));
}

/// G(n,q): every pair present independently with probability q.
inline Graph erdos_renyi(std::size_t n, double q, std::uint64_t seed)
{
	if (!(q >= 0.0 && q <= 1.0))
		throw std::invalid_argument("edge probability must lie in [0,1]");
	Engine rng(seed);
	std::vector<Edge> e;
	e.reserve(std::size_t(q * double(max_edges(n)) * 1.1) + 16);
	for (node_t i = 0; i < n; ++i)
		for (node_t j = i + 1; j < n; ++j)
			if (uniform01(rng) < q)
				e.emplace_back(i, j);
	return Graph::from_sorted(n, std::move(e));
}

/// Independent uniform weights in [0,1); thresholding it gives a uniform G(n,m).
inline WeightedGraph random_weighted(std::size_t n, std::uint64_t seed)
{
	Engine rng(seed);
	std::vector<double> w(n * n, 0.0);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			w[i * n + j] = w[j * n + i] = uniform01(rng);
	return {n, std::move(w)};
}

/// Nodes uniform in the unit square, w_ij = 1 - dist(i,j)/sqrt(2).
inline WeightedGraph random_geometric_weighted(std::size_t n, std::uint64_t seed)
{
	if (n < 2)
		throw std::invalid_argument("random geometric graph needs n >= 2");
	Engine rng(seed);
	std::vector<double> x(n), y(n);
	for (std::size_t i = 0; i < n; ++i) {
		x[i] = uniform01(rng);
		y[i] = uniform01(rng);
	}
	std::vector<double> w(n * n, 0.0);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j)
			w[i * n + j] = w[j * n + i] = 1.0 - std::hypot(x[i] - x[j], y[i] - y[j]) / std::sqrt(2.0);
	return {n, std::move(w)};
}

struct ScaleFreeShape
{
	std::size_t core;
	std::size_t attach;
};

/// Core of ceil(1% n) nodes, ceil(0.5% n) attachments per added node.
inline ScaleFreeShape scale_free_shape(std::size_t n)
{
	return {(n + 99) / 100, (n + 199) / 200};
}

/**
 * Preferential attachment on a clique seed. Each added node picks `attach`
 * distinct existing nodes with probability proportional to current degree.
 */
inline Graph scale_free(std::size_t n, std::uint64_t seed)
{
	if (n < 200)
		throw std::invalid_argument("scale-free generator needs n >= 200");
	const auto [core, attach] = scale_free_shape(n);
	Engine rng(seed);

	std::vector<Edge> e;
	e.reserve(max_edges(core) + (n - core) * attach);
	// each edge contributes both endpoints, so uniform draws are degree-proportional
	std::vector<node_t> endpoints;
	endpoints.reserve(2 * e.capacity());
	for (node_t i = 0; i < core; ++i)
		for (node_t j = i + 1; j < core; ++j) {
			e.emplace_back(i, j);
			endpoints.push_back(i);
			endpoints.push_back(j);
		}

	std::vector<node_t> targets;
	std::vector<std::uint32_t> stamp(n, UINT32_MAX);
	for (node_t t = node_t(core); t < n; ++t) {
		targets.clear();
		while (targets.size() < attach) {
			const node_t c = endpoints[uniform_below(rng, endpoints.size())];
			if (stamp[c] == t)
				continue;
			stamp[c] = t;
			targets.push_back(c);
		}
		for (node_t c : targets) {
			e.emplace_back(c, t);
			endpoints.push_back(c);
			endpoints.push_back(t);
		}
	}
	return Graph(n, std::move(e));
}

} // namespace ndv
