// ndv: heterogeneity metrics, graph generators and experiment suites.
//
// Exit codes: 0 success, 1 operational failure, 2 usage error.

#include <ndv/ndv.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

/// Thrown for invalid flag combinations; maps to exit code 2.
struct usage_error : std::invalid_argument
{
	using std::invalid_argument::invalid_argument;
};

std::string timestamp()
{
	const std::time_t t = std::time(nullptr);
	char buf[32];
	std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
	return buf;
}

/// "1..99", "5,10,15" or a mix such as "1..5,50".
std::vector<int> parse_int_list(const std::string& text)
{
	std::vector<int> out;
	std::stringstream ss(text);
	std::string part;
	while (std::getline(ss, part, ',')) {
		if (part.empty())
			continue;
		const auto dots = part.find("..");
		try {
			if (dots == std::string::npos) {
				out.push_back(std::stoi(part));
			} else {
				const int lo = std::stoi(part.substr(0, dots));
				const int hi = std::stoi(part.substr(dots + 2));
				if (lo > hi)
					throw usage_error("empty range " + part);
				for (int v = lo; v <= hi; ++v)
					out.push_back(v);
			}
		} catch (const std::logic_error& e) {
			if (dynamic_cast<const usage_error*>(&e))
				throw;
			throw usage_error("cannot parse list element '" + part + "'");
		}
	}
	if (out.empty())
		throw usage_error("empty list '" + text + "'");
	return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text)
{
	std::vector<std::size_t> out;
	for (int v : parse_int_list(text)) {
		if (v < 0)
			throw usage_error("sizes must be nonnegative");
		out.push_back(std::size_t(v));
	}
	return out;
}

void ensure_dir(const fs::path& dir)
{
	std::error_code ec;
	fs::create_directories(dir, ec);
	if (!fs::is_directory(dir))
		throw std::runtime_error("cannot create output directory " + dir.string());
}

json optional_number(std::optional<double> v)
{
	return v ? json(*v) : json(nullptr);
}

void print_report(std::ostream& out, const ndv::Graph& g, const ndv::MetricReport& r)
{
	out << "nodes    " << g.num_nodes() << "\n";
	out << "edges    " << g.num_edges() << "\n";
	out << "density  " << ndv::io::format_number(ndv::density(g)) << "\n\n";
	const std::pair<const char*, const ndv::MetricValue*> rows[] = {
	    {"v", &r.v}, {"v_bar", &r.v_bar}, {"J", &r.j}, {"sigma2", &r.sigma2}, {"irr", &r.irr}, {"rho", &r.rho}};
	out << std::left << std::setw(8) << "metric" << " value\n";
	for (const auto& [name, mv] : rows) {
		out << std::left << std::setw(8) << name << " ";
		if (mv->defined()) {
			out << ndv::io::format_number(mv->value);
			if (!mv->note.empty())
				out << "  (" << mv->note << ")";
		} else {
			out << "undefined: " << mv->note;
		}
		out << "\n";
	}
}

// ---------------------------------------------------------------------------

struct MetricArgs
{
	std::string input;
	bool weighted = false;
	std::optional<double> density;
	std::string csv;
};

int run_metric(const MetricArgs& a)
{
	ndv::Graph g;
	if (a.weighted) {
		if (!a.density)
			throw usage_error("--weighted needs --density");
		auto data = ndv::io::load_weighted_matrix(a.input);
		for (const auto& w : data.warnings)
			std::cerr << "warning: " << w << "\n";
		g = ndv::threshold_to_density(data.graph, *a.density);
	} else {
		if (a.density)
			throw usage_error("--density applies only to --weighted input");
		auto data = ndv::io::load_edge_list(a.input);
		if (data.duplicates)
			std::cerr << "note: " << data.duplicates << " duplicate edge(s) dropped\n";
		if (data.self_loops)
			std::cerr << "note: " << data.self_loops << " self-loop(s) dropped\n";
		g = std::move(data.graph);
	}
	if (g.num_nodes() < 2)
		throw std::runtime_error("metrics need at least 2 nodes");
	const auto report = ndv::metric_report(g);
	print_report(std::cout, g, report);
	if (!a.csv.empty())
		ndv::io::write_file(a.csv, [&](std::ostream& out) { ndv::io::write_report_csv(out, report); });
	return 0;
}

struct GenerateArgs
{
	std::string family;
	std::optional<std::size_t> n, m, p;
	std::optional<double> q, density;
	std::optional<std::uint64_t> seed;
	std::string out;
	std::string matrix_out;
};

int run_generate(const GenerateArgs& a)
{
	auto need = [&](const auto& opt, const char* flag) {
		if (!opt)
			throw usage_error(a.family + " needs " + flag);
		return *opt;
	};
	const std::size_t n = need(a.n, "--n");
	std::vector<std::string> comments{"family=" + a.family};
	ndv::Graph g;
	std::optional<ndv::WeightedGraph> weighted;
	if (a.family == "qs" || a.family == "quasi-star") {
		if (a.p && a.m)
			throw usage_error("give either --m or --p");
		g = a.p ? ndv::quasi_star_perfect(n, *a.p) : ndv::quasi_star(n, need(a.m, "--m or --p"));
	} else if (a.family == "qc" || a.family == "quasi-complete") {
		g = ndv::quasi_complete(n, need(a.m, "--m"));
	} else if (a.family == "er") {
		g = ndv::erdos_renyi(n, need(a.q, "--q"), need(a.seed, "--seed"));
	} else if (a.family == "sf" || a.family == "scale-free") {
		g = ndv::scale_free(n, need(a.seed, "--seed"));
	} else if (a.family == "rgg") {
		weighted = ndv::random_geometric_weighted(n, need(a.seed, "--seed"));
		g = ndv::threshold_to_density(*weighted, need(a.density, "--density"));
	} else if (a.family == "star") {
		g = ndv::star_graph(n);
	} else if (a.family == "complete") {
		g = ndv::complete_graph(n);
	} else if (a.family == "cycle") {
		g = ndv::cycle_graph(n);
	} else if (a.family == "empty") {
		g = ndv::empty_graph(n);
	} else {
		throw usage_error("unknown family '" + a.family + "'");
	}
	if (a.seed)
		comments.push_back("seed=" + std::to_string(*a.seed));
	if (a.out.empty() || a.out == "-")
		ndv::io::write_edge_list(std::cout, g, comments);
	else
		ndv::io::write_edge_list(a.out, g, comments);
	if (!a.matrix_out.empty()) {
		if (!weighted)
			throw usage_error("--matrix-out applies only to rgg");
		ndv::io::write_file(a.matrix_out, [&](std::ostream& out) {
			const std::size_t k = weighted->num_nodes();
			for (std::size_t i = 0; i < k; ++i) {
				for (std::size_t j = 0; j < k; ++j)
					out << (j ? "," : "") << ndv::io::format_number(weighted->at(i, j));
				out << '\n';
			}
		});
	}
	return 0;
}

struct SweepArgs
{
	std::string families = "qs,qc,er,rgg";
	std::string sizes = "16,32,64,128";
	std::string percents = "1..99";
	std::size_t replicates = 20;
	std::uint64_t seed = 0;
	std::size_t threads = 1;
	std::vector<std::string> matrices;
	std::string out_dir = ".";
};

int run_sweep(const SweepArgs& a)
{
	ndv::SweepConfig cfg;
	std::stringstream ss(a.families);
	std::string f;
	while (std::getline(ss, f, ','))
		if (!f.empty())
			cfg.families.push_back(ndv::parse_family(f));
	if (cfg.families.empty())
		throw usage_error("no families given");
	cfg.sizes = parse_size_list(a.sizes);
	cfg.percents = parse_int_list(a.percents);
	cfg.replicates = a.replicates;
	cfg.seed = a.seed;
	cfg.threads = a.threads;
	for (const auto& path : a.matrices) {
		auto data = ndv::io::load_weighted_matrix(path);
		for (const auto& w : data.warnings)
			std::cerr << "warning: " << w << "\n";
		cfg.matrices.push_back(std::move(data.graph));
	}
	const bool wants_matrix = std::find(cfg.families.begin(), cfg.families.end(), ndv::Family::matrix) != cfg.families.end();
	if (wants_matrix && cfg.matrices.empty())
		throw usage_error("family 'matrix' needs at least one --matrix file");

	const auto table = ndv::stability_sweep(cfg);
	const auto by_size = ndv::cov_vs_size(table);
	const auto by_density = ndv::cov_vs_density(table);

	const fs::path dir = a.out_dir;
	ensure_dir(dir);
	ndv::io::write_file(dir / "sweep.csv", [&](std::ostream& out) { ndv::io::write_sweep_csv(out, table); });
	ndv::io::write_file(dir / "cov_vs_size.csv", [&](std::ostream& out) { ndv::io::write_cov_csv(out, by_size); });
	ndv::io::write_file(dir / "cov_vs_density.csv", [&](std::ostream& out) { ndv::io::write_cov_csv(out, by_density); });

	auto cov_json = [](const std::vector<ndv::CovRecord>& recs) {
		json j = json::array();
		for (const auto& r : recs)
			j.push_back({{"family", ndv::family_name(r.family)},
			             {"metric", ndv::metric_name(r.metric)},
			             {"cov", optional_number(r.value)},
			             {"groups_used", r.groups_used},
			             {"groups_excluded", r.groups_excluded}});
		return j;
	};
	json summary;
	summary["provenance"] = ndv::io::provenance(
	    a.seed, {{"families", a.families}, {"sizes", cfg.sizes}, {"percents", a.percents}, {"replicates", a.replicates}, {"matrices", a.matrices}});
	summary["provenance"]["generated_at"] = timestamp();
	summary["cov_vs_size"] = cov_json(by_size);
	summary["cov_vs_density"] = cov_json(by_density);
	ndv::io::write_json(dir / "summary.json", summary);
	std::cout << "wrote " << table.rows.size() << " sweep rows to " << (dir / "sweep.csv").string() << "\n";
	return 0;
}

struct BenchArgs
{
	std::string sizes = "5000,10000,50000";
	std::size_t replicates = 25;
	std::uint64_t seed = 0;
	bool large = false;
	std::string out_dir = ".";
};

int run_bench(const BenchArgs& a)
{
	const auto sizes = parse_size_list(a.sizes);
	for (std::size_t n : sizes)
		if (n > 50000 && !a.large)
			throw usage_error("sizes above 50000 need --large");
	const auto recs = ndv::timing_benchmark(sizes, a.replicates, a.seed);
	const fs::path dir = a.out_dir;
	ensure_dir(dir);
	ndv::io::write_file(dir / "bench.csv", [&](std::ostream& out) { ndv::io::write_bench_csv(out, recs); });
	json summary;
	summary["provenance"] = ndv::io::provenance(a.seed, {{"sizes", sizes}, {"replicates", a.replicates}, {"large", a.large}});
	summary["provenance"]["generated_at"] = timestamp();
	json rows = json::array();
	for (const auto& r : recs) {
		rows.push_back({{"metric", r.metric}, {"n", r.n}, {"mean_seconds", r.mean}});
		std::cout << std::left << std::setw(6) << r.metric << " n=" << std::setw(8) << r.n << " mean " << r.mean << " s\n";
	}
	summary["results"] = rows;
	ndv::io::write_json(dir / "summary.json", summary);
	return 0;
}

ndv::io::CorpusScan load_corpus(const std::string& dir)
{
	auto scan = ndv::io::scan_corpus(dir);
	for (const auto& f : scan.failures)
		std::cerr << "warning: skipped " << f.network_id << ": " << f.reason << "\n";
	return scan;
}

json failures_json(const std::vector<ndv::NetworkFailure>& failures)
{
	json j = json::array();
	for (const auto& f : failures)
		j.push_back({{"network_id", f.network_id}, {"reason", f.reason}});
	return j;
}

struct CorpusArgs
{
	std::string corpus;
	std::size_t threads = 1;
	std::string out_dir = ".";
};

int run_corpus(const CorpusArgs& a)
{
	const auto scan = load_corpus(a.corpus);
	const auto report = ndv::corpus_correlation(scan.graphs, a.threads);
	const fs::path dir = a.out_dir;
	ensure_dir(dir);
	ndv::io::write_file(dir / "corpus.csv", [&](std::ostream& out) { ndv::io::write_corpus_csv(out, report); });

	auto corr = [](const std::optional<ndv::stats::Correlation>& c) {
		return c ? json{{"r_s", c->r}, {"p", c->p}} : json(nullptr);
	};
	auto summ = [](const std::optional<ndv::stats::Summary>& s) {
		return s ? json{{"median", s->median}, {"q1", s->q1}, {"q3", s->q3}} : json(nullptr);
	};
	json summary;
	summary["provenance"] = ndv::io::provenance(0, {{"corpus", a.corpus}});
	summary["provenance"]["generated_at"] = timestamp();
	summary["networks"] = report.entries.size();
	summary["v_bar_vs_average_degree"] = corr(report.v_bar_vs_degree);
	summary["rho_vs_average_degree"] = corr(report.rho_vs_degree);
	summary["size_vs_density"] = corr(report.size_vs_density);
	summary["rho_excluded"] = report.rho_excluded;
	summary["v_bar_summary"] = summ(report.v_bar_summary);
	summary["rho_summary"] = summ(report.rho_summary);
	summary["notes"] = report.notes;
	summary["failures"] = failures_json(scan.failures);
	ndv::io::write_json(dir / "summary.json", summary);

	auto show = [](const char* label, const std::optional<ndv::stats::Correlation>& c) {
		std::cout << label;
		if (c)
			std::cout << "r_s = " << ndv::io::format_number(c->r) << ", p = " << ndv::io::format_number(c->p) << "\n";
		else
			std::cout << "undefined\n";
	};
	show("v_bar vs average degree: ", report.v_bar_vs_degree);
	show("rho   vs average degree: ", report.rho_vs_degree);
	return 0;
}

struct SubsampleArgs
{
	std::string corpus;
	std::string percents = "5,10,15,20,25";
	std::size_t iterations = 50;
	std::uint64_t seed = 0;
	std::size_t threads = 1;
	std::string out_dir = ".";
};

int run_subsample(const SubsampleArgs& a)
{
	const auto scan = load_corpus(a.corpus);
	ndv::RobustnessConfig cfg;
	cfg.percents.clear();
	for (int p : parse_int_list(a.percents))
		cfg.percents.push_back(double(p));
	cfg.iterations = a.iterations;
	cfg.seed = a.seed;
	cfg.threads = a.threads;
	const auto result = ndv::robustness_suite(scan.graphs, cfg);

	const fs::path dir = a.out_dir;
	ensure_dir(dir);
	ndv::io::write_file(dir / "robustness.csv", [&](std::ostream& out) { ndv::io::write_robustness_csv(out, result.records); });
	ndv::io::write_file(dir / "robustness_summary.csv", [&](std::ostream& out) { ndv::io::write_robustness_summary_csv(out, result.summary); });
	json summary;
	summary["provenance"] = ndv::io::provenance(a.seed, {{"corpus", a.corpus}, {"percents", cfg.percents}, {"iterations", a.iterations}});
	summary["provenance"]["generated_at"] = timestamp();
	json rows = json::array();
	for (const auto& s : result.summary)
		rows.push_back({{"mode", ndv::mode_name(s.mode)},
		                {"percent", s.percent},
		                {"metric", ndv::metric_name(s.metric)},
		                {"median_abs_difference", optional_number(s.median_abs_difference)},
		                {"networks", s.networks},
		                {"mean_skip_rate", s.mean_skip_rate}});
	summary["summary"] = rows;
	json failures = failures_json(scan.failures);
	for (const auto& f : failures_json(result.failures))
		failures.push_back(f);
	summary["failures"] = failures;
	ndv::io::write_json(dir / "summary.json", summary);
	std::cout << "wrote " << result.records.size() << " robustness records to " << (dir / "robustness.csv").string() << "\n";
	return 0;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Normalised degree variance and competing heterogeneity indices"};
	app.require_subcommand(1);
	app.set_version_flag("--version", ndv::version);

	MetricArgs metric;
	auto* cmd_metric = app.add_subcommand("metric", "Compute all heterogeneity indices of one network");
	cmd_metric->add_option("input", metric.input, "Edge list, or weighted CSV matrix with --weighted")->required();
	cmd_metric->add_flag("--weighted", metric.weighted, "Input is a weighted matrix; threshold it with --density");
	cmd_metric->add_option("--density", metric.density, "Proportional threshold density in [0,1]");
	cmd_metric->add_option("--csv", metric.csv, "Also write the report as CSV");

	GenerateArgs gen;
	auto* cmd_gen = app.add_subcommand("generate", "Write a generated graph as an edge list");
	cmd_gen->add_option("family", gen.family, "qs|qc|er|sf|rgg|star|complete|cycle|empty")->required();
	cmd_gen->add_option("--n", gen.n, "Node count");
	cmd_gen->add_option("--m", gen.m, "Edge count (qs, qc)");
	cmd_gen->add_option("--p", gen.p, "Dominant node count of a perfect quasi-star");
	cmd_gen->add_option("--q", gen.q, "Edge probability (er)");
	cmd_gen->add_option("--density", gen.density, "Threshold density (rgg)");
	cmd_gen->add_option("--seed", gen.seed, "Random seed (er, sf, rgg)");
	cmd_gen->add_option("--out", gen.out, "Output path, stdout if omitted");
	cmd_gen->add_option("--matrix-out", gen.matrix_out, "Also write the rgg weight matrix as CSV");

	SweepArgs sweep;
	auto* cmd_sweep = app.add_subcommand("sweep", "Density-sweep stability of v_bar, J, sigma2 and rho");
	cmd_sweep->add_option("--families", sweep.families, "Comma list of qs,qc,er,rgg,matrix")->capture_default_str();
	cmd_sweep->add_option("--sizes", sweep.sizes, "Network sizes")->capture_default_str();
	cmd_sweep->add_option("--percents", sweep.percents, "Integer densities in percent, e.g. 1..99")->capture_default_str();
	cmd_sweep->add_option("--replicates", sweep.replicates, "Replicates per random cell")->capture_default_str();
	cmd_sweep->add_option("--seed", sweep.seed, "Master seed")->required();
	cmd_sweep->add_option("--threads", sweep.threads, "Worker threads")->capture_default_str();
	cmd_sweep->add_option("--matrix", sweep.matrices, "Weighted CSV matrix for the 'matrix' family (repeatable)");
	cmd_sweep->add_option("--out-dir", sweep.out_dir, "Output directory")->capture_default_str();

	BenchArgs bench;
	auto* cmd_bench = app.add_subcommand("bench", "Time v_bar, rho and J on scale-free graphs");
	cmd_bench->add_option("--sizes", bench.sizes, "Network sizes")->capture_default_str();
	cmd_bench->add_option("--replicates", bench.replicates, "Timed repetitions per metric and size")->capture_default_str();
	cmd_bench->add_option("--seed", bench.seed, "Master seed")->required();
	cmd_bench->add_flag("--large", bench.large, "Allow sizes above 50000");
	cmd_bench->add_option("--out-dir", bench.out_dir, "Output directory")->capture_default_str();

	CorpusArgs corpus;
	auto* cmd_corpus = app.add_subcommand("corpus", "Spearman correlation of v_bar and rho with average degree");
	cmd_corpus->add_option("--corpus", corpus.corpus, "Directory of edge lists")->required();
	cmd_corpus->add_option("--threads", corpus.threads, "Worker threads")->capture_default_str();
	cmd_corpus->add_option("--out-dir", corpus.out_dir, "Output directory")->capture_default_str();

	SubsampleArgs sub;
	auto* cmd_sub = app.add_subcommand("subsample", "Robustness of v_bar and rho to node and edge removal");
	cmd_sub->add_option("--corpus", sub.corpus, "Directory of edge lists")->required();
	cmd_sub->add_option("--percents", sub.percents, "Removal percentages")->capture_default_str();
	cmd_sub->add_option("--iterations", sub.iterations, "Subsamples per percentage")->capture_default_str();
	cmd_sub->add_option("--seed", sub.seed, "Master seed")->required();
	cmd_sub->add_option("--threads", sub.threads, "Worker threads")->capture_default_str();
	cmd_sub->add_option("--out-dir", sub.out_dir, "Output directory")->capture_default_str();

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForAllHelp& e) {
		return app.exit(e);
	} catch (const CLI::CallForVersion& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return 2;
	}

	try {
		if (*cmd_metric)
			return run_metric(metric);
		if (*cmd_gen)
			return run_generate(gen);
		if (*cmd_sweep)
			return run_sweep(sweep);
		if (*cmd_bench)
			return run_bench(bench);
		if (*cmd_corpus)
			return run_corpus(corpus);
		if (*cmd_sub)
			return run_subsample(sub);
	} catch (const std::invalid_argument& e) {
		std::cerr << "usage error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	return 2;
}
