#pragma once

#include "generators.hpp"
#include "graph.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "subsample.hpp"
#include "weighted.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace ndv {

// ---------------------------------------------------------------------------
// Density-sweep stability

enum class Family
{
	quasi_star,
	quasi_complete,
	random,
	random_geometric,
	matrix // user-supplied weighted matrices, node-subsampled to each size
};

inline std::string_view family_name(Family f)
{
	switch (f) {
	case Family::quasi_star: return "qs";
	case Family::quasi_complete: return "qc";
	case Family::random: return "er";
	case Family::random_geometric: return "rgg";
	case Family::matrix: return "matrix";
	}
	return "?";
}

inline Family parse_family(std::string_view s)
{
	for (Family f : {Family::quasi_star, Family::quasi_complete, Family::random, Family::random_geometric, Family::matrix})
		if (family_name(f) == s)
			return f;
	throw std::invalid_argument("unknown family '" + std::string(s) + "'");
}

inline bool is_deterministic(Family f) { return f == Family::quasi_star || f == Family::quasi_complete; }

enum class SweepMetric
{
	v_bar,
	j,
	sigma2,
	rho
};

inline constexpr std::array<SweepMetric, 4> sweep_metrics{SweepMetric::v_bar, SweepMetric::j, SweepMetric::sigma2, SweepMetric::rho};

inline std::string_view metric_name(SweepMetric m)
{
	switch (m) {
	case SweepMetric::v_bar: return "v_bar";
	case SweepMetric::j: return "J";
	case SweepMetric::sigma2: return "sigma2";
	case SweepMetric::rho: return "rho";
	}
	return "?";
}

inline MetricValue evaluate_metric(SweepMetric m, const Graph& g)
{
	switch (m) {
	case SweepMetric::v_bar: return evaluate([&] { return normalised_degree_variance(g); });
	case SweepMetric::j: return evaluate([&] { return quasi_star_normalisation(g); });
	case SweepMetric::sigma2: return evaluate([&] { return average_degree_normalisation(g); });
	case SweepMetric::rho: return evaluate([&] { return estrada_heterogeneity(g); });
	}
	return {};
}

struct SweepRow
{
	Family family;
	std::size_t n;
	int percent;
	SweepMetric metric;
	std::optional<double> value; ///< mean over replicates where defined
	std::size_t valid;           ///< replicates with a defined value
	std::size_t replicates;
	std::string note;            ///< reason when undefined
};

struct SweepTable
{
	std::uint64_t seed = 0;
	std::size_t replicates = 0;
	std::vector<SweepRow> rows;
};

struct SweepConfig
{
	std::vector<Family> families;
	std::vector<std::size_t> sizes;
	std::vector<int> percents;
	std::size_t replicates = 1;
	std::uint64_t seed = 0;
	std::size_t threads = 1;
	std::vector<WeightedGraph> matrices; ///< used by Family::matrix
};

namespace detail {

/// The weighted network a random-family replicate is thresholded from.
inline WeightedGraph replicate_network(const SweepConfig& cfg, Family f, std::size_t n, std::size_t r)
{
	const std::uint64_t seed = derive_seed(cfg.seed, {hash_label("sweep"), hash_label(family_name(f)), n, r});
	switch (f) {
	case Family::random: return random_weighted(n, seed);
	case Family::random_geometric: return random_geometric_weighted(n, seed);
	case Family::matrix: {
		if (cfg.matrices.empty())
			throw std::invalid_argument("matrix family needs at least one weighted matrix");
		const WeightedGraph& src = cfg.matrices[r % cfg.matrices.size()];
		if (n > src.num_nodes())
			throw std::invalid_argument("sweep size " + std::to_string(n) + " exceeds matrix size " + std::to_string(src.num_nodes()));
		return subsample_nodes(src, n, seed);
	}
	default: throw std::logic_error("not a weighted family");
	}
}

} // namespace detail

/**
 * Evaluates v-bar, J, sigma^2 and rho across families, sizes and integer
 * densities. Quasi-star and quasi-complete graphs are built with the exact
 * edge count of each density; weighted families are proportionally
 * thresholded and averaged over replicates.
 */
inline SweepTable stability_sweep(const SweepConfig& cfg)
{
	for (std::size_t n : cfg.sizes)
		if (n < 2)
			throw std::invalid_argument("sweep sizes must be >= 2");
	for (int p : cfg.percents)
		if (p < 1 || p > 99)
			throw std::invalid_argument("sweep percents must lie in [1,99]");
	if (cfg.replicates < 1)
		throw std::invalid_argument("replicates must be >= 1");

	struct Unit
	{
		Family family;
		std::size_t n;
		std::size_t replicate;
	};
	std::vector<Unit> units;
	for (Family f : cfg.families)
		for (std::size_t n : cfg.sizes) {
			const std::size_t reps = is_deterministic(f) ? 1 : cfg.replicates;
			for (std::size_t r = 0; r < reps; ++r)
				units.push_back({f, n, r});
		}

	const std::size_t per_unit = cfg.percents.size() * sweep_metrics.size();
	std::vector<std::vector<MetricValue>> results(units.size());
	parallel_for(units.size(), cfg.threads, [&](std::size_t u) {
		const Unit& unit = units[u];
		auto& out = results[u];
		out.reserve(per_unit);
		auto record = [&](const Graph& g) {
			for (SweepMetric m : sweep_metrics)
				out.push_back(evaluate_metric(m, g));
		};
		if (is_deterministic(unit.family)) {
			for (int p : cfg.percents) {
				const std::size_t m = edges_for_percent(unit.n, p);
				record(unit.family == Family::quasi_star ? quasi_star(unit.n, m) : quasi_complete(unit.n, m));
			}
		} else {
			const auto wg = detail::replicate_network(cfg, unit.family, unit.n, unit.replicate);
			for (const auto& t : density_sweep(wg, cfg.percents))
				record(t.graph);
		}
	});

	SweepTable table;
	table.seed = cfg.seed;
	table.replicates = cfg.replicates;
	// units are grouped by (family, n) with replicates contiguous and in order
	for (std::size_t u = 0; u < units.size();) {
		std::size_t end = u;
		while (end < units.size() && units[end].family == units[u].family && units[end].n == units[u].n)
			++end;
		for (std::size_t pi = 0; pi < cfg.percents.size(); ++pi)
			for (std::size_t mi = 0; mi < sweep_metrics.size(); ++mi) {
				SweepRow row{units[u].family, units[u].n, cfg.percents[pi], sweep_metrics[mi], std::nullopt, 0, end - u, {}};
				double sum = 0.0;
				for (std::size_t r = u; r < end; ++r) {
					const MetricValue& mv = results[r][pi * sweep_metrics.size() + mi];
					if (mv.defined()) {
						sum += *mv;
						++row.valid;
					} else if (row.note.empty()) {
						row.note = mv.note;
					}
				}
				if (row.valid > 0)
					row.value = sum / double(row.valid);
				table.rows.push_back(std::move(row));
			}
		u = end;
	}
	return table;
}

struct CovRecord
{
	Family family;
	SweepMetric metric;
	std::optional<double> value;
	std::size_t groups_used;     ///< densities (or sizes) that contributed a CoV
	std::size_t groups_excluded; ///< groups with fewer than 2 defined values or zero mean
	std::string note;
};

namespace detail {

/// Groups rows by (family, metric, group key), takes CoV across the other axis, then averages.
template <class GroupKey>
std::vector<CovRecord> averaged_cov(const SweepTable& table, GroupKey key)
{
	using Cell = std::tuple<Family, SweepMetric>;
	std::map<Cell, std::map<std::int64_t, std::vector<double>>> groups;
	std::vector<Cell> order;
	for (const SweepRow& row : table.rows) {
		const Cell cell{row.family, row.metric};
		if (!groups.count(cell))
			order.push_back(cell);
		auto& bucket = groups[cell][key(row)];
		if (row.value)
			bucket.push_back(*row.value);
	}
	std::vector<CovRecord> out;
	for (const Cell& cell : order) {
		CovRecord rec{std::get<0>(cell), std::get<1>(cell), std::nullopt, 0, 0, {}};
		double sum = 0.0;
		for (const auto& [k, values] : groups[cell]) {
			if (values.size() < 2) {
				++rec.groups_excluded;
				continue;
			}
			try {
				sum += stats::coefficient_of_variation(values);
				++rec.groups_used;
			} catch (const stats::undefined_statistic&) {
				++rec.groups_excluded;
			}
		}
		if (rec.groups_used > 0)
			rec.value = sum / double(rec.groups_used);
		else
			rec.note = "no group with two or more defined values";
		out.push_back(std::move(rec));
	}
	return out;
}

} // namespace detail

/// CoV across sizes at each density, averaged over densities.
inline std::vector<CovRecord> cov_vs_size(const SweepTable& table)
{
	return detail::averaged_cov(table, [](const SweepRow& r) { return std::int64_t(r.percent); });
}

/// CoV across densities at each size, averaged over sizes.
inline std::vector<CovRecord> cov_vs_density(const SweepTable& table)
{
	return detail::averaged_cov(table, [](const SweepRow& r) { return std::int64_t(r.n); });
}

// ---------------------------------------------------------------------------
// Timing benchmark

struct BenchRecord
{
	std::string metric;
	std::size_t n;
	std::vector<double> seconds;
	double mean;
};

/**
 * Wall-clock times of v-bar, rho and J on scale-free graphs. Graph
 * generation is outside the timed region and one warm-up call per metric
 * is discarded.
 */
inline std::vector<BenchRecord> timing_benchmark(const std::vector<std::size_t>& sizes, std::size_t replicates, std::uint64_t seed)
{
	if (replicates < 1)
		throw std::invalid_argument("replicates must be >= 1");
	using clock = std::chrono::steady_clock;
	std::vector<BenchRecord> out;
	for (std::size_t n : sizes) {
		const Graph g = scale_free(n, derive_seed(seed, {hash_label("bench"), n}));
		struct Timed
		{
			const char* name;
			double (*fn)(const Graph&);
		};
		const std::array<Timed, 3> timed{{
			{"v_bar", &normalised_degree_variance},
			{"rho", &estrada_heterogeneity},
			{"J", &quasi_star_normalisation},
		}};
		std::array<BenchRecord, 3> recs;
		volatile double sink = 0.0;
		for (std::size_t t = 0; t < timed.size(); ++t) {
			recs[t] = {timed[t].name, n, {}, 0.0};
			sink = sink + timed[t].fn(g);
		}
		for (std::size_t r = 0; r < replicates; ++r)
			for (std::size_t t = 0; t < timed.size(); ++t) {
				const auto start = clock::now();
				const double v = timed[t].fn(g);
				const auto stop = clock::now();
				sink = sink + v;
				recs[t].seconds.push_back(std::chrono::duration<double>(stop - start).count());
			}
		for (auto& rec : recs) {
			rec.mean = stats::mean(rec.seconds);
			out.push_back(std::move(rec));
		}
	}
	return out;
}

// ---------------------------------------------------------------------------
// Corpus analysis

struct NamedGraph
{
	std::string id;
	Graph graph;
};

enum class RemovalMode
{
	nodes_uniform,
	edges_uniform,
	edges_inverse_degree
};

inline constexpr std::array<RemovalMode, 3> removal_modes{RemovalMode::nodes_uniform, RemovalMode::edges_uniform, RemovalMode::edges_inverse_degree};

inline std::string_view mode_name(RemovalMode m)
{
	switch (m) {
	case RemovalMode::nodes_uniform: return "nodes_uniform";
	case RemovalMode::edges_uniform: return "edges_uniform";
	case RemovalMode::edges_inverse_degree: return "edges_inverse_degree";
	}
	return "?";
}

enum class CorpusMetric
{
	v_bar,
	rho
};

inline std::string_view metric_name(CorpusMetric m) { return m == CorpusMetric::v_bar ? "v_bar" : "rho"; }

struct RobustnessRecord
{
	std::string network_id;
	RemovalMode mode;
	double percent;
	CorpusMetric metric;
	std::optional<double> baseline;
	std::optional<double> subsample_mean; ///< over iterations where the metric is defined
	std::size_t n_valid;
	std::size_t n_skipped;
	std::optional<double> abs_difference;
	std::string note;
};

struct RobustnessSummary
{
	RemovalMode mode;
	double percent;
	CorpusMetric metric;
	std::optional<double> median_abs_difference;
	std::size_t networks; ///< networks contributing a defined difference
	double mean_skip_rate; ///< mean over networks of n_skipped / iterations
};

struct NetworkFailure
{
	std::string network_id;
	std::string reason;
};

struct RobustnessResult
{
	std::vector<RobustnessRecord> records;
	std::vector<RobustnessSummary> summary;
	std::vector<NetworkFailure> failures;
};

struct RobustnessConfig
{
	std::vector<double> percents{5, 10, 15, 20, 25};
	std::size_t iterations = 50;
	std::uint64_t seed = 0;
	std::size_t threads = 1;
};

inline Graph subsample(const Graph& g, RemovalMode mode, double percent, std::uint64_t seed, bool* fallback = nullptr)
{
	switch (mode) {
	case RemovalMode::nodes_uniform: return subsample_nodes(g, percent, seed);
	case RemovalMode::edges_uniform: return subsample_edges_uniform(g, percent, seed);
	case RemovalMode::edges_inverse_degree: {
		auto s = subsample_edges_inverse_degree(g, percent, seed);
		if (fallback && s.uniform_fallback)
			*fallback = true;
		return std::move(s.graph);
	}
	}
	throw std::logic_error("unknown removal mode");
}

inline MetricValue evaluate_metric(CorpusMetric m, const Graph& g)
{
	if (m == CorpusMetric::v_bar)
		return evaluate([&] { return normalised_degree_variance(g); });
	return evaluate([&] { return estrada_heterogeneity(g); });
}

/**
 * Removes each percentage of nodes or edges `iterations` times per network
 * and compares the mean subsampled v-bar and rho with the baseline. Rho
 * iterations that leave isolated nodes are skipped and counted.
 */
inline RobustnessResult robustness_suite(const std::vector<NamedGraph>& corpus, const RobustnessConfig& cfg)
{
	for (double p : cfg.percents)
		require_percent(p);
	if (cfg.iterations < 1)
		throw std::invalid_argument("iterations must be >= 1");

	constexpr std::array<CorpusMetric, 2> metrics{CorpusMetric::v_bar, CorpusMetric::rho};
	struct PerNetwork
	{
		std::vector<RobustnessRecord> records;
		std::optional<std::string> failure;
	};
	std::vector<PerNetwork> per(corpus.size());

	parallel_for(corpus.size(), cfg.threads, [&](std::size_t idx) {
		const NamedGraph& net = corpus[idx];
		auto& out = per[idx];
		const Graph& g = net.graph;
		if (g.num_nodes() < 5 || g.num_edges() < 5) {
			out.failure = "network needs at least 5 nodes and 5 edges";
			return;
		}
		try {
			std::array<MetricValue, 2> base{evaluate_metric(metrics[0], g), evaluate_metric(metrics[1], g)};
			for (RemovalMode mode : removal_modes)
				for (double percent : cfg.percents) {
					std::array<double, 2> sum{0.0, 0.0};
					std::array<std::size_t, 2> valid{0, 0};
					std::array<std::string, 2> skip_note;
					bool fallback = false;
					for (std::size_t it = 0; it < cfg.iterations; ++it) {
						const std::uint64_t s = derive_seed(cfg.seed, {hash_label("subsample"), hash_label(net.id), std::uint64_t(mode),
						                                               std::uint64_t(percent * 1000.0 + 0.5), it});
						const Graph sub = subsample(g, mode, percent, s, &fallback);
						for (std::size_t k = 0; k < metrics.size(); ++k) {
							const MetricValue mv = evaluate_metric(metrics[k], sub);
							if (mv.defined()) {
								sum[k] += *mv;
								++valid[k];
							} else if (skip_note[k].empty()) {
								skip_note[k] = mv.note;
							}
						}
					}
					for (std::size_t k = 0; k < metrics.size(); ++k) {
						RobustnessRecord rec{net.id, mode, percent, metrics[k], base[k].value, std::nullopt, valid[k], cfg.iterations - valid[k], std::nullopt, {}};
						if (valid[k] > 0)
							rec.subsample_mean = sum[k] / double(valid[k]);
						if (rec.baseline && rec.subsample_mean)
							rec.abs_difference = std::abs(*rec.baseline - *rec.subsample_mean);
						if (!base[k].defined())
							rec.note = "baseline " + base[k].note;
						else if (valid[k] == 0)
							rec.note = "all iterations skipped: " + skip_note[k];
						if (fallback)
							rec.note += rec.note.empty() ? "uniform fallback used" : "; uniform fallback used";
						out.records.push_back(std::move(rec));
					}
				}
		} catch (const std::exception& e) {
			out.records.clear();
			out.failure = e.what();
		}
	});

	RobustnessResult result;
	for (std::size_t i = 0; i < corpus.size(); ++i) {
		if (per[i].failure)
			result.failures.push_back({corpus[i].id, *per[i].failure});
		for (auto& rec : per[i].records)
			result.records.push_back(std::move(rec));
	}

	for (RemovalMode mode : removal_modes)
		for (double percent : cfg.percents)
			for (CorpusMetric metric : metrics) {
				std::vector<double> diffs;
				double skip = 0.0;
				std::size_t nets = 0;
				for (const auto& rec : result.records) {
					if (rec.mode != mode || rec.percent != percent || rec.metric != metric)
						continue;
					++nets;
					skip += double(rec.n_skipped) / double(cfg.iterations);
					if (rec.abs_difference)
						diffs.push_back(*rec.abs_difference);
				}
				RobustnessSummary s{mode, percent, metric, std::nullopt, diffs.size(), nets ? skip / double(nets) : 0.0};
				if (!diffs.empty())
					s.median_abs_difference = stats::quantile(diffs, 0.5);
				result.summary.push_back(s);
			}
	return result;
}

struct CorpusEntry
{
	std::string id;
	std::size_t n;
	std::size_t m;
	double density;
	double average_degree; ///< (n-1) d
	MetricValue v_bar;
	MetricValue rho;
};

struct CorpusCorrelation
{
	std::vector<CorpusEntry> entries;
	std::optional<stats::Correlation> v_bar_vs_degree;
	std::optional<stats::Correlation> rho_vs_degree;
	std::optional<stats::Correlation> size_vs_density;
	std::size_t rho_excluded = 0;
	std::optional<stats::Summary> v_bar_summary;
	std::optional<stats::Summary> rho_summary;
	std::vector<std::string> notes;
};

/// Spearman correlation of v-bar and rho against average degree, with medians and IQRs.
inline CorpusCorrelation corpus_correlation(const std::vector<NamedGraph>& corpus, std::size_t threads = 1)
{
	if (corpus.size() < 10)
		throw std::invalid_argument("corpus correlation needs at least 10 networks");
	CorpusCorrelation out;
	out.entries.resize(corpus.size());
	parallel_for(corpus.size(), threads, [&](std::size_t i) {
		const Graph& g = corpus[i].graph;
		auto& e = out.entries[i];
		e.id = corpus[i].id;
		e.n = g.num_nodes();
		e.m = g.num_edges();
		e.density = g.num_nodes() >= 2 ? density(g) : 0.0;
		e.average_degree = double(e.n > 0 ? e.n - 1 : 0) * e.density;
		e.v_bar = evaluate_metric(CorpusMetric::v_bar, g);
		e.rho = evaluate_metric(CorpusMetric::rho, g);
	});

	std::vector<double> deg_v, vb, deg_r, rh, sizes, dens;
	for (const auto& e : out.entries) {
		sizes.push_back(double(e.n));
		dens.push_back(e.density);
		if (e.v_bar.defined()) {
			deg_v.push_back(e.average_degree);
			vb.push_back(*e.v_bar);
		}
		if (e.rho.defined()) {
			deg_r.push_back(e.average_degree);
			rh.push_back(*e.rho);
		} else {
			++out.rho_excluded;
		}
	}
	auto correlate = [&](std::span<const double> x, std::span<const double> y, const char* label) -> std::optional<stats::Correlation> {
		try {
			return stats::spearman(x, y);
		} catch (const stats::undefined_statistic& ex) {
			out.notes.push_back(std::string(label) + ": " + ex.what());
			return std::nullopt;
		}
	};
	out.v_bar_vs_degree = correlate(deg_v, vb, "v_bar vs average degree");
	out.rho_vs_degree = correlate(deg_r, rh, "rho vs average degree");
	out.size_vs_density = correlate(sizes, dens, "size vs density");
	if (!vb.empty())
		out.v_bar_summary = stats::median_and_iqr(vb);
	if (!rh.empty())
		out.rho_summary = stats::median_and_iqr(rh);
	return out;
}

} // namespace ndv
