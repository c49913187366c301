#pragma once

#include "generators.hpp"
#include "graph.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndv {

/// Thrown when a metric is not defined for the given graph.
class undefined_metric : public std::domain_error
{
public:
	using std::domain_error::domain_error;
};

namespace detail {

using wide_t = __int128;

inline void require_two_nodes(const Graph& g)
{
	if (g.num_nodes() < 2)
		throw undefined_metric("fewer than 2 nodes");
}

/// n * sum k^2 - (2m)^2, exact. Zero iff the graph is regular.
inline wide_t centred_square_sum(const Graph& g)
{
	const wide_t n = wide_t(g.num_nodes());
	const wide_t two_m = 2 * wide_t(g.num_edges());
	return n * wide_t(sum_squared_degrees(g)) - two_m * two_m;
}

} // namespace detail

/// v(G) = sum k^2 / (n-1) - (2m)^2 / (n(n-1)), the (n-1)-denominator variance of the degrees.
inline double degree_variance(const Graph& g)
{
	detail::require_two_nodes(g);
	const double n = double(g.num_nodes());
	return double(detail::centred_square_sum(g)) / (n * (n - 1.0));
}

/// True when m = 0 or the graph is complete; v-bar is reported as 0 there.
inline bool degenerate_density(const Graph& g)
{
	return g.num_edges() == 0 || g.num_edges() == max_edges(g.num_nodes());
}

/**
 * Normalised degree variance, (n-1) / (n m (1-d)) * v(G), in [0,1].
 *
 * Evaluated as (n-1)(n sum k^2 - (2m)^2) / (n m (n(n-1) - 2m)) with an exact
 * integer numerator, so a graph and its complement give bit-identical
 * results. Returns 0 for the empty and complete graphs.
 */
inline double normalised_degree_variance(const Graph& g)
{
	detail::require_two_nodes(g);
	if (degenerate_density(g))
		return 0.0;
	const double n = double(g.num_nodes());
	const double m = double(g.num_edges());
	const double missing = double(2 * (max_edges(g.num_nodes()) - g.num_edges()));
	return (n - 1.0) * double(detail::centred_square_sum(g)) / (n * m * missing);
}

/// J = v(G) / v(G_qs), where G_qs is the quasi-star with the same n and m. Can exceed 1.
inline double quasi_star_normalisation(const Graph& g)
{
	detail::require_two_nodes(g);
	const double reference = degree_variance(quasi_star(g.num_nodes(), g.num_edges()));
	if (reference == 0.0)
		throw undefined_metric("reference quasi-star has zero variance");
	return degree_variance(g) / reference;
}

/// sigma^2 = v(G) / <k>.
inline double average_degree_normalisation(const Graph& g)
{
	detail::require_two_nodes(g);
	if (g.num_edges() == 0)
		throw undefined_metric("no edges");
	const double mean_degree = 2.0 * double(g.num_edges()) / double(g.num_nodes());
	return degree_variance(g) / mean_degree;
}

/// Albertson irregularity: sum over edges of |k_i - k_j|.
inline std::uint64_t albertson_irregularity(const Graph& g)
{
	std::uint64_t s = 0;
	const auto k = g.degrees();
	for (const Edge& e : g.edges())
		s += k[e.u] > k[e.v] ? k[e.u] - k[e.v] : k[e.v] - k[e.u];
	return s;
}

/// Estrada heterogeneity: sum over edges of (k_i^-1/2 - k_j^-1/2)^2, over n - 2 sqrt(n-1).
inline double estrada_heterogeneity(const Graph& g)
{
	const std::size_t n = g.num_nodes();
	if (n < 3)
		throw undefined_metric("fewer than 3 nodes");
	if (g.has_isolated_node())
		throw undefined_metric("isolated nodes");
	std::vector<double> inv_root(n);
	const auto k = g.degrees();
	for (std::size_t i = 0; i < n; ++i)
		inv_root[i] = 1.0 / std::sqrt(double(k[i]));
	double s = 0.0;
	for (const Edge& e : g.edges()) {
		const double d = inv_root[e.u] - inv_root[e.v];
		s += d * d;
	}
	return s / (double(n) - 2.0 * std::sqrt(double(n) - 1.0));
}

/// A metric value or the reason it is undefined.
struct MetricValue
{
	std::optional<double> value;
	std::string note;

	bool defined() const noexcept { return value.has_value(); }
	double operator*() const { return value.value(); }
};

template <class F>
MetricValue evaluate(F&& f)
{
	try {
		return {double(f()), {}};
	} catch (const undefined_metric& e) {
		return {std::nullopt, e.what()};
	}
}

struct MetricReport
{
	MetricValue v;
	MetricValue v_bar;
	MetricValue j;
	MetricValue sigma2;
	MetricValue irr;
	MetricValue rho;
};

inline MetricReport metric_report(const Graph& g)
{
	if (g.num_nodes() < 2)
		throw undefined_metric("fewer than 2 nodes");
	MetricReport r;
	r.v = evaluate([&] { return degree_variance(g); });
	r.v_bar = evaluate([&] { return normalised_degree_variance(g); });
	if (degenerate_density(g))
		r.v_bar.note = "degenerate density";
	r.j = evaluate([&] { return quasi_star_normalisation(g); });
	r.sigma2 = evaluate([&] { return average_degree_normalisation(g); });
	r.irr = evaluate([&] { return albertson_irregularity(g); });
	r.rho = evaluate([&] { return estrada_heterogeneity(g); });
	return r;
}

// Closed forms

/// v-bar of the perfect quasi-star G*(n,p): 2(n-1)(n-p-1) / ((2n-p-1) n).
inline double vbar_perfect_quasi_star(std::int64_t n, std::int64_t p)
{
	if (n < 2 || p < 0 || p > n - 1)
		throw std::invalid_argument("need n >= 2 and 0 <= p <= n-1");
	return 2.0 * double(n - 1) * double(n - p - 1) / (double(2 * n - p - 1) * double(n));
}

/// v-bar of the star: (n^3 - 5n^2 + 8n - 4) / (n^3 - 3n^2 + 2n).
inline double vbar_star_closed_form(std::int64_t n)
{
	if (n < 3)
		throw undefined_metric("star closed form needs n >= 3");
	const detail::wide_t w = n;
	const detail::wide_t num = w * w * w - 5 * w * w + 8 * w - 4;
	const detail::wide_t den = w * w * w - 3 * w * w + 2 * w;
	return double(num) / double(den);
}

/// Expected v-bar of G(n,q), independent of q: 2(n-1)/n^2.
inline double vbar_random_expectation(std::int64_t n)
{
	if (n < 2)
		throw std::invalid_argument("need n >= 2");
	return 2.0 * double(n - 1) / (double(n) * double(n));
}

/**
 * Lower bound on v-bar for a graph with density d holding at least x nodes
 * of degree a: 2x(an - dn(n-1))^2 / (d(1-d) n^3 (n-1)(n-x)).
 */
inline double vbar_lower_bound(std::int64_t n, double d, std::int64_t x, std::int64_t a)
{
	if (n < 2 || a < 0 || a > n - 1 || x < 0)
		throw std::invalid_argument("lower bound parameters out of range");
	if (!(d > 0.0 && d < 1.0))
		throw undefined_metric("density 0 or 1");
	if (x >= n)
		throw undefined_metric("x >= n");
	const double nn = double(n);
	const double gap = double(a) * nn - d * nn * (nn - 1.0);
	return 2.0 * double(x) * gap * gap / (d * (1.0 - d) * nn * nn * nn * (nn - 1.0) * (nn - double(x)));
}

/// Leading-order bound: (x/n) 2d/(1-d) for degree-1 nodes, (x/n) 2(1-d)/d for dominant nodes.
inline double vbar_lower_bound_leading(std::int64_t n, double d, std::int64_t x, bool low_degree)
{
	if (n < 1 || x < 0)
		throw std::invalid_argument("lower bound parameters out of range");
	if (!(d > 0.0 && d < 1.0))
		throw undefined_metric("density 0 or 1");
	const double share = double(x) / double(n);
	return low_degree ? share * 2.0 * d / (1.0 - d) : share * 2.0 * (1.0 - d) / d;
}

} // namespace ndv
