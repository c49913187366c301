// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "oracles.hpp"

#include <ndv/ndv.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace ndv;
namespace fs = std::filesystem;

namespace {

struct Outcome
{
	bool pass;
	std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body)
{
	const auto start = std::chrono::steady_clock::now();
	Outcome o;
	try {
		o = body();
	} catch (const std::exception& e) {
		o = {false, std::string("exception: ") + e.what()};
	}
	const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
	if (!o.pass)
		++failures;
	std::printf("%s %2d %-28s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
	std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
	char buf[256];
	std::snprintf(buf, sizeof buf, f, a, b, c);
	return buf;
}

// Criteria 1 and 7 share one random corpus.
struct CorpusStats
{
	std::size_t n;
	std::size_t m;
	std::uint64_t sum_sq;
	double v_bar;
};

std::vector<CorpusStats> random_corpus()
{
	std::vector<CorpusStats> out;
	std::mt19937_64 rng(101);
	std::uniform_int_distribution<std::size_t> size(2, 500);
	std::uniform_real_distribution<double> prob(0.0, 1.0);
	for (int i = 0; i < 10000; ++i) {
		const std::size_t n = size(rng);
		const Graph g = erdos_renyi(n, prob(rng), rng());
		out.push_back({n, g.num_edges(), sum_squared_degrees(g), normalised_degree_variance(g)});
	}
	return out;
}

const std::vector<CorpusStats>& corpus()
{
	static const auto c = random_corpus();
	return c;
}

int run_cli(const std::string& args)
{
	const std::string cmd = std::string(NDV_CLI_PATH) + " " + args + " >/dev/null 2>&1";
	const int raw = std::system(cmd.c_str());
	return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string slurp(const fs::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::ostringstream s;
	s << in.rdbuf();
	return s.str();
}

std::vector<NamedGraph> robustness_corpus()
{
	std::vector<NamedGraph> out;
	for (std::uint64_t i = 0; i < 5; ++i) {
		out.push_back({"er" + std::to_string(i), erdos_renyi(100 + 50 * i, 0.05 + 0.03 * double(i), 1000 + i)});
		out.push_back({"rgg" + std::to_string(i), threshold_to_density(random_geometric_weighted(100 + 25 * i, 2000 + i), 0.1)});
		out.push_back({"sf" + std::to_string(i), scale_free(200 + 50 * i, 3000 + i)});
		const std::size_t n = 100 + 20 * i;
		out.push_back({"qs" + std::to_string(i), quasi_star(n, (n - 1) * (2 + i) + 7)});
	}
	return out;
}

} // namespace

int main()
{
	criterion(1, "boundedness", [] {
		std::size_t checked = 0, bad = 0;
		for (const auto& s : corpus()) {
			++checked;
			bad += !(s.v_bar >= 0.0 && s.v_bar <= 1.0 + 1e-12);
		}
		for (std::size_t n = 1; n <= 50; ++n)
			for (std::size_t m = 0; m <= max_edges(n); ++m)
				for (const Graph& g : {quasi_star(n, m), quasi_complete(n, m)}) {
					if (n < 2)
						continue;
					const double v = normalised_degree_variance(g);
					++checked;
					bad += !(v >= 0.0 && v <= 1.0 + 1e-12);
				}
		return Outcome{bad == 0, std::to_string(checked) + " graphs, " + std::to_string(bad) + " outside [0, 1+1e-12]"};
	});

	criterion(2, "complement symmetry", [] {
		std::mt19937_64 rng(202);
		std::uniform_int_distribution<std::size_t> size(2, 200);
		std::uniform_real_distribution<double> prob(0.0, 1.0);
		double worst = 0.0;
		for (int i = 0; i < 1000; ++i) {
			const Graph g = oracle::random_graph(size(rng), prob(rng), rng);
			const double a = normalised_degree_variance(g), b = normalised_degree_variance(complement(g));
			const double scale = std::max(std::abs(a), std::abs(b));
			if (scale > 0)
				worst = std::max(worst, std::abs(a - b) / scale);
		}
		return Outcome{worst <= 1e-12, fmt("max relative gap %.3g over 1000 graphs", worst)};
	});

	criterion(3, "closed-form oracles", [] {
		double worst = 0.0;
		for (std::size_t n = 3; n <= 200; ++n)
			for (std::size_t p = 1; p + 2 <= n; ++p) {
				const double built = normalised_degree_variance(quasi_star_perfect(n, p));
				const double dn = double(n), dp = double(p);
				const double formula = 2.0 * (dn - 1) * (dn - dp - 1) / ((2 * dn - dp - 1) * dn);
				worst = std::max(worst, std::abs(built - formula));
				worst = std::max(worst, std::abs(vbar_perfect_quasi_star(std::int64_t(n), std::int64_t(p)) - formula));
			}
		const bool star4 = normalised_degree_variance(star_graph(4)) == 0.5 && vbar_star_closed_form(4) == 0.5;
		bool increasing = true;
		double prev = vbar_star_closed_form(3);
		for (std::int64_t n = 4; n <= 1000000; ++n) {
			const double v = vbar_star_closed_form(n);
			increasing = increasing && v > prev && v < 1.0;
			prev = v;
		}
		return Outcome{worst <= 1e-12 && star4 && increasing,
		               fmt("max |built - formula| %.3g; ", worst) + "star(4) = 0.5 " + (star4 ? "yes" : "no") + "; star sequence increasing below 1 " +
		                   (increasing ? "yes" : "no") + fmt(" (n=10^6: %.12g)", prev)};
	});

	criterion(4, "random-graph expectation", [] {
		std::string detail;
		bool ok = true;
		for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
			double sum = 0.0;
			for (std::uint64_t s = 0; s < 1000; ++s)
				sum += normalised_degree_variance(erdos_renyi(100, q, derive_seed(404, {std::uint64_t(q * 10), s})));
			const double mean = sum / 1000.0;
			ok = ok && std::abs(mean - 0.0198) <= 0.05 * 0.0198;
			detail += fmt("q=%.1f:%.5f ", q, mean);
		}
		return Outcome{ok, detail + "(target 0.0198 +/- 5%)"};
	});

	criterion(5, "maximality brute force", [] {
		std::size_t cases = 0, bad = 0;
		for (std::size_t n = 1; n <= 7; ++n) {
			const auto best = oracle::max_centred_square_sum(n);
			for (std::size_t m = 0; m <= max_edges(n); ++m) {
				auto value = [&](const Graph& g) { return std::int64_t(n) * std::int64_t(sum_squared_degrees(g)) - std::int64_t(4 * m * m); };
				++cases;
				bad += std::max(value(quasi_star(n, m)), value(quasi_complete(n, m))) != best[m];
			}
		}
		return Outcome{bad == 0, std::to_string(cases) + " (n,m) pairs, " + std::to_string(bad) + " not attained"};
	});

	criterion(6, "J invalidity witness", [] {
		double best = 0.0;
		std::size_t wn = 0, wm = 0;
		for (std::size_t n = 3; n <= 30; ++n)
			for (std::size_t m = 1; m < max_edges(n); ++m) {
				const MetricValue j = evaluate([&] { return quasi_star_normalisation(quasi_complete(n, m)); });
				if (j.defined() && *j > best) {
					best = *j;
					wn = n;
					wm = m;
				}
			}
		return Outcome{best > 1.0, fmt("max J(quasi_complete) = %.6f at n=%g, m=%g", best, double(wn), double(wm))};
	});

	criterion(7, "de Caen bound", [] {
		std::size_t bad = 0;
		for (const auto& s : corpus()) {
			if (s.n < 2)
				continue;
			const double n = double(s.n), m = double(s.m);
			bad += double(s.sum_sq) > m * (2.0 * m / (n - 1.0) + n - 2.0) * (1.0 + 1e-12);
		}
		return Outcome{bad == 0, std::to_string(corpus().size()) + " graphs, " + std::to_string(bad) + " violations"};
	});

	criterion(8, "lower bound", [] {
		std::mt19937_64 rng(808);
		std::size_t checked = 0, bad = 0;
		double tightest = 1e300;
		while (checked < 10000) {
			const std::size_t n = std::uniform_int_distribution<std::size_t>(8, 60)(rng);
			const std::size_t x = std::uniform_int_distribution<std::size_t>(1, n / 3)(rng);
			const std::size_t core = n - x;
			const std::size_t a = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(6, core - 1))(rng);
			// x low nodes with exactly a neighbours in the core, random edges inside the core
			std::vector<Edge> e;
			std::vector<node_t> targets(core);
			for (std::size_t i = 0; i < core; ++i)
				targets[i] = node_t(x + i);
			for (node_t i = 0; i < x; ++i) {
				std::shuffle(targets.begin(), targets.end(), rng);
				for (std::size_t t = 0; t < a; ++t)
					e.emplace_back(i, targets[t]);
			}
			const double q = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
			std::bernoulli_distribution coin(q);
			for (node_t i = node_t(x); i < n; ++i)
				for (node_t j = i + 1; j < n; ++j)
					if (coin(rng))
						e.emplace_back(i, j);
			const Graph g(n, std::move(e));
			const double d = density(g);
			if (d <= 0.0 || d >= 1.0)
				continue;
			++checked;
			const double bound = vbar_lower_bound(std::int64_t(n), d, std::int64_t(x), std::int64_t(a));
			const double v = normalised_degree_variance(g);
			bad += v < bound - 1e-12;
			tightest = std::min(tightest, v - bound);
		}
		return Outcome{bad == 0, std::to_string(checked) + " graphs, " + std::to_string(bad) + fmt(" violations, min slack %.3g", tightest)};
	});

	criterion(9, "stability tables", [] {
		std::vector<int> percents;
		for (int p = 1; p <= 99; ++p)
			percents.push_back(p);
		const SweepConfig cfg{{Family::quasi_star, Family::quasi_complete, Family::random}, {16, 32, 64, 128}, percents, 100, 1, 1, {}};
		const auto table = stability_sweep(cfg);
		auto pick = [](const std::vector<CovRecord>& recs, Family f, SweepMetric m) -> std::optional<double> {
			for (const auto& r : recs)
				if (r.family == f && r.metric == m)
					return r.value;
			return std::nullopt;
		};
		const auto by_size = cov_vs_size(table), by_density = cov_vs_density(table);
		const auto qs_size = pick(by_size, Family::quasi_star, SweepMetric::j);
		const auto qs_density = pick(by_density, Family::quasi_star, SweepMetric::j);
		const auto er_density = pick(by_density, Family::random, SweepMetric::v_bar);
		std::size_t isolated = 0, rho_bad = 0;
		for (const auto& row : table.rows) {
			if (row.family != Family::quasi_complete || row.metric != SweepMetric::rho)
				continue;
			const bool has_isolated = quasi_complete(row.n, edges_for_percent(row.n, row.percent)).has_isolated_node();
			isolated += has_isolated;
			rho_bad += has_isolated == row.value.has_value();
		}
		const bool ok = qs_size == 0.0 && qs_density == 0.0 && er_density && *er_density < 0.08 && rho_bad == 0 && isolated > 0;
		return Outcome{ok, fmt("QS J CoV size/density %g/%g; ER v_bar CoV-vs-density %.4f (< 0.08); ", qs_size.value_or(-1), qs_density.value_or(-1),
		                       er_density.value_or(-1)) +
		                       std::to_string(isolated) + " QC cells with isolated nodes, " + std::to_string(rho_bad) + " rho mismatches"};
	});

	criterion(10, "timing ordering", [] {
		const auto start = std::chrono::steady_clock::now();
		const auto recs = timing_benchmark({5000, 10000, 50000}, 25, 1);
		const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
		double tv = 0, tr = 0, tj = 0;
		for (const auto& r : recs)
			if (r.n == 10000)
				(r.metric == "v_bar" ? tv : r.metric == "rho" ? tr : tj) = r.mean;
		const bool ok = tv < tr && tr < tj && 5.0 * tv <= tj && total < 300.0;
		return Outcome{ok, fmt("n=10^4 means v_bar %.3g s, rho %.3g s, J %.3g s; ", tv, tr, tj) + fmt("J/v_bar %.1fx; bench total %.1fs", tj / tv, total)};
	});

	criterion(11, "subsampling robustness", [] {
		RobustnessConfig cfg;
		cfg.seed = 1;
		const auto result = robustness_suite(robustness_corpus(), cfg);
		auto median = [&](RemovalMode mode, double pct, CorpusMetric m) -> std::optional<double> {
			for (const auto& s : result.summary)
				if (s.mode == mode && s.percent == pct && s.metric == m)
					return s.median_abs_difference;
			return std::nullopt;
		};
		const auto v5 = median(RemovalMode::nodes_uniform, 5, CorpusMetric::v_bar);
		const auto r5 = median(RemovalMode::nodes_uniform, 5, CorpusMetric::rho);
		std::string detail = fmt("nodes 5%%: v_bar %.3g, rho %.3g; inversions", v5.value_or(-1), r5.value_or(-1));
		bool ok = result.failures.empty() && v5 && r5 && *v5 < 0.01 && *v5 < *r5;
		for (RemovalMode mode : removal_modes) {
			int inversions = 0;
			double prev = -1.0;
			for (double p : cfg.percents) {
				const auto v = median(mode, p, CorpusMetric::v_bar);
				if (!v) {
					ok = false;
					continue;
				}
				inversions += *v < prev;
				prev = *v;
			}
			ok = ok && inversions <= 1;
			detail += " " + std::string(mode_name(mode)) + "=" + std::to_string(inversions);
		}
		return Outcome{ok, detail};
	});

	criterion(12, "sampler correctness", [] {
		const Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {3, 4}});
		const auto k = oracle::degrees_from_matrix(g);
		std::vector<double> h;
		double total = 0.0;
		for (const Edge& e : g.edges()) {
			h.push_back((4.0 - k[e.u]) * (4.0 - k[e.v]));
			total += h.back();
		}
		const int trials = 10000;
		std::vector<double> hits(g.num_edges(), 0.0);
		for (int s = 0; s < trials; ++s) {
			const Graph sub = remove_edges_inverse_degree(g, 1, derive_seed(1212, {std::uint64_t(s)})).graph;
			for (std::size_t e = 0; e < g.num_edges(); ++e)
				hits[e] += !sub.has_edge(g.edges()[e].u, g.edges()[e].v);
		}
		double worst = 0.0;
		for (std::size_t e = 0; e < g.num_edges(); ++e) {
			const double p = h[e] / total;
			const double sigma = std::sqrt(trials * p * (1 - p));
			worst = std::max(worst, sigma > 0 ? std::abs(hits[e] - trials * p) / sigma : std::abs(hits[e]));
		}
		return Outcome{worst <= 3.0, fmt("worst deviation %.2f sigma over %g edges", worst, double(g.num_edges()))};
	});

	criterion(13, "determinism across threads", [] {
		const fs::path root = fs::temp_directory_path() / ("ndv_accept_" + std::to_string(std::random_device{}()));
		const fs::path corpus_dir = root / "corpus";
		fs::create_directories(corpus_dir);
		const auto nets = robustness_corpus();
		for (std::size_t i = 0; i < 12; ++i)
			io::write_edge_list(corpus_dir / (nets[i].id + ".edges"), nets[i].graph);
		bool ok = true;
		std::string detail;
		for (const char* threads : {"1", "4"}) {
			const fs::path out = root / threads;
			const std::string t = std::string(" --threads ") + threads;
			ok = ok && run_cli("sweep --families qs,qc,er,rgg --sizes 16,32 --percents 1..99 --replicates 5 --seed 1 --out-dir " + (out / "sweep").string() + t) == 0;
			ok = ok && run_cli("subsample --corpus " + corpus_dir.string() + " --iterations 10 --seed 1 --out-dir " + (out / "sub").string() + t) == 0;
			ok = ok && run_cli("corpus --corpus " + corpus_dir.string() + " --out-dir " + (out / "corpus").string() + t) == 0;
		}
		if (!ok)
			detail = "a subcommand exited nonzero; ";
		std::size_t compared = 0;
		for (const char* f : {"sweep/sweep.csv", "sweep/cov_vs_size.csv", "sweep/cov_vs_density.csv", "sub/robustness.csv", "sub/robustness_summary.csv",
		                      "corpus/corpus.csv"}) {
			const std::string a = slurp(root / "1" / f), b = slurp(root / "4" / f);
			const bool same = !a.empty() && a == b;
			ok = ok && same;
			compared += same;
			if (!same)
				detail += std::string(f) + " differs; ";
		}
		fs::remove_all(root);
		return Outcome{ok, detail + std::to_string(compared) + "/6 CSV files byte-identical for --threads 1 vs 4 (sweep, subsample, corpus)"};
	});

	std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
	return failures ? 1 : 0;
}
