#pragma once

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace ndv::stats {

class undefined_statistic : public std::domain_error
{
public:
	using std::domain_error::domain_error;
};

inline void require_sample(std::span<const double> x)
{
	if (x.empty())
		throw undefined_statistic("empty sample");
	for (double v : x)
		if (!std::isfinite(v))
			throw undefined_statistic("sample contains non-finite values");
}

inline double mean(std::span<const double> x)
{
	require_sample(x);
	return std::accumulate(x.begin(), x.end(), 0.0) / double(x.size());
}

/// Sample standard deviation, n-1 denominator; 0 for a single value.
inline double stddev(std::span<const double> x)
{
	const double mu = mean(x);
	if (x.size() < 2)
		return 0.0;
	double ss = 0.0;
	for (double v : x)
		ss += (v - mu) * (v - mu);
	return std::sqrt(ss / double(x.size() - 1));
}

inline double coefficient_of_variation(std::span<const double> x)
{
	const double mu = mean(x);
	if (mu == 0.0)
		throw undefined_statistic("coefficient of variation undefined for zero mean");
	return stddev(x) / mu;
}

/// Quantile by linear interpolation between order statistics (type 7).
inline double quantile(std::span<const double> x, double q)
{
	require_sample(x);
	std::vector<double> s(x.begin(), x.end());
	std::sort(s.begin(), s.end());
	const double h = (double(s.size()) - 1.0) * q;
	const auto lo = std::size_t(std::floor(h));
	const std::size_t hi = std::min(lo + 1, s.size() - 1);
	return s[lo] + (h - double(lo)) * (s[hi] - s[lo]);
}

struct Summary
{
	double median;
	double q1;
	double q3;
};

inline Summary median_and_iqr(std::span<const double> x)
{
	return {quantile(x, 0.5), quantile(x, 0.25), quantile(x, 0.75)};
}

/// 1-based ranks, tied values share their mean rank.
inline std::vector<double> average_ranks(std::span<const double> x)
{
	std::vector<std::size_t> order(x.size());
	std::iota(order.begin(), order.end(), 0);
	std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
	std::vector<double> r(x.size());
	for (std::size_t i = 0; i < order.size();) {
		std::size_t j = i;
		while (j + 1 < order.size() && x[order[j + 1]] == x[order[i]])
			++j;
		const double rank = 0.5 * double(i + j) + 1.0;
		for (std::size_t k = i; k <= j; ++k)
			r[order[k]] = rank;
		i = j + 1;
	}
	return r;
}

inline double pearson(std::span<const double> x, std::span<const double> y)
{
	if (x.size() != y.size())
		throw undefined_statistic("samples differ in length");
	const double mx = mean(x), my = mean(y);
	double sxy = 0.0, sxx = 0.0, syy = 0.0;
	for (std::size_t i = 0; i < x.size(); ++i) {
		sxy += (x[i] - mx) * (y[i] - my);
		sxx += (x[i] - mx) * (x[i] - mx);
		syy += (y[i] - my) * (y[i] - my);
	}
	if (sxx == 0.0 || syy == 0.0)
		throw undefined_statistic("correlation undefined for constant input");
	return sxy / std::sqrt(sxx * syy);
}

struct Correlation
{
	double r;
	double p;
};

/// Two-sided p-value of a correlation via t = r sqrt((N-2)/(1-r^2)), N-2 degrees of freedom.
inline double correlation_p_value(double r, std::size_t n)
{
	if (std::abs(r) >= 1.0)
		return 0.0;
	const double df = double(n - 2);
	const double t = r * std::sqrt(df / (1.0 - r * r));
	const boost::math::students_t dist(df);
	return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

/// Spearman rank correlation with mean ranks for ties.
inline Correlation spearman(std::span<const double> x, std::span<const double> y)
{
	if (x.size() != y.size())
		throw undefined_statistic("samples differ in length");
	if (x.size() < 3)
		throw undefined_statistic("spearman needs at least 3 pairs");
	require_sample(x);
	require_sample(y);
	const auto rx = average_ranks(x);
	const auto ry = average_ranks(y);
	const double r = std::clamp(pearson(rx, ry), -1.0, 1.0);
	return {r, correlation_p_value(r, x.size())};
}

/// Exact two-sided permutation p-value for Spearman's r, N <= 10.
inline double spearman_exact_p(std::span<const double> x, std::span<const double> y)
{
	const double observed = spearman(x, y).r;
	if (x.size() > 10)
		throw std::invalid_argument("exact permutation p-value limited to 10 pairs");
	const auto rx = average_ranks(x);
	auto ry = average_ranks(y);
	std::sort(ry.begin(), ry.end());
	std::size_t extreme = 0, total = 0;
	do {
		++total;
		if (std::abs(pearson(rx, ry)) >= std::abs(observed) - 1e-12)
			++extreme;
	} while (std::next_permutation(ry.begin(), ry.end()));
	// next_permutation skips repeats of tied ranks; each distinct arrangement is equally likely
	return double(extreme) / double(total);
}

} // namespace ndv::stats
