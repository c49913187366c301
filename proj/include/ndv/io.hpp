#pragma once

#include "experiments.hpp"
#include "graph.hpp"
#include "metrics.hpp"
#include "version.hpp"
#include "weighted.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ndv::io {

namespace fs = std::filesystem;

class format_error : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string_view trim(std::string_view s)
{
	const auto b = s.find_first_not_of(" \t\r\n");
	if (b == std::string_view::npos)
		return {};
	const auto e = s.find_last_not_of(" \t\r\n");
	return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line, bool commas_only)
{
	std::vector<std::string_view> out;
	std::size_t i = 0;
	auto is_sep = [&](char c) { return c == ',' || (!commas_only && (c == ' ' || c == '\t')); };
	if (commas_only) {
		while (true) {
			const auto j = line.find(',', i);
			out.push_back(trim(line.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i)));
			if (j == std::string_view::npos)
				break;
			i = j + 1;
		}
		return out;
	}
	while (i < line.size()) {
		while (i < line.size() && is_sep(line[i]))
			++i;
		std::size_t j = i;
		while (j < line.size() && !is_sep(line[j]) && line[j] != '\r')
			++j;
		if (j > i)
			out.push_back(line.substr(i, j - i));
		i = j + 1;
	}
	return out;
}

inline std::optional<double> parse_double(std::string_view s)
{
	s = trim(s);
	if (!s.empty() && s.front() == '+')
		s.remove_prefix(1);
	double v = 0.0;
	const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
		return std::nullopt;
	return v;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view s)
{
	std::uint64_t v = 0;
	const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
	if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
		return std::nullopt;
	return v;
}

/// "n=<k>" inside a comment line.
inline std::optional<std::uint64_t> node_count_header(std::string_view comment)
{
	const auto pos = comment.find("n=");
	if (pos == std::string_view::npos || (pos > 0 && std::isalnum(static_cast<unsigned char>(comment[pos - 1]))))
		return std::nullopt;
	auto rest = comment.substr(pos + 2);
	const auto end = rest.find_first_not_of("0123456789");
	return parse_uint(rest.substr(0, end));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Edge lists

struct EdgeListData
{
	Graph graph;
	std::vector<std::string> labels; ///< labels[id] is the original node label
	std::size_t duplicates = 0;
	std::size_t self_loops = 0;
};

/**
 * Parses whitespace- or comma-separated node pairs. Lines starting with '#'
 * or '%' are comments; a comment holding "n=<k>" fixes the node count so
 * isolated nodes survive. When that header is present and every label is an
 * integer below k, labels are used as ids directly; otherwise labels are
 * numbered in first-appearance order. Extra columns (weights) are ignored.
 */
inline EdgeListData parse_edge_list(std::istream& in, const std::string& source = "<stream>")
{
	std::optional<std::uint64_t> declared_n;
	std::vector<std::pair<std::string, std::string>> pairs;
	std::string line;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		const auto t = detail::trim(line);
		if (t.empty())
			continue;
		if (t.front() == '#' || t.front() == '%') {
			if (!declared_n)
				declared_n = detail::node_count_header(t);
			continue;
		}
		const auto fields = detail::split_fields(t, false);
		if (fields.size() < 2)
			throw format_error(source + ":" + std::to_string(line_no) + ": expected a node pair");
		pairs.emplace_back(std::string(fields[0]), std::string(fields[1]));
	}
	if (pairs.empty() && !declared_n)
		throw format_error(source + ": no edges");

	EdgeListData out;
	std::unordered_map<std::string, node_t> ids;
	bool identity = declared_n.has_value();
	if (identity)
		for (const auto& [a, b] : pairs)
			for (const std::string* s : {&a, &b}) {
				const auto v = detail::parse_uint(*s);
				if (!v || *v >= *declared_n)
					identity = false;
			}

	std::size_t n = 0;
	auto id_of = [&](const std::string& label) -> node_t {
		if (identity)
			return node_t(*detail::parse_uint(label));
		auto [it, inserted] = ids.try_emplace(label, node_t(out.labels.size()));
		if (inserted)
			out.labels.push_back(label);
		return it->second;
	};

	std::vector<Edge> edges;
	edges.reserve(pairs.size());
	for (const auto& [a, b] : pairs) {
		const node_t u = id_of(a), v = id_of(b);
		if (u == v) {
			++out.self_loops;
			continue;
		}
		edges.emplace_back(u, v);
	}
	if (identity) {
		n = *declared_n;
		out.labels.clear();
		for (std::size_t i = 0; i < n; ++i)
			out.labels.push_back(std::to_string(i));
	} else {
		n = out.labels.size();
		if (declared_n && *declared_n > n)
			for (std::size_t i = n; i < *declared_n; ++i)
				out.labels.push_back("<isolated " + std::to_string(i) + ">");
		n = out.labels.size();
	}
	std::sort(edges.begin(), edges.end());
	const auto last = std::unique(edges.begin(), edges.end());
	out.duplicates = std::size_t(edges.end() - last);
	edges.erase(last, edges.end());
	out.graph = Graph::from_sorted(n, std::move(edges));
	return out;
}

inline EdgeListData load_edge_list(const fs::path& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open " + path.string());
	return parse_edge_list(in, path.string());
}

/// Canonical edge list: "# n=<n>", any extra comment lines, then one "u v" per edge.
inline void write_edge_list(std::ostream& out, const Graph& g, const std::vector<std::string>& comments = {})
{
	out << "# n=" << g.num_nodes() << "\n";
	out << "# m=" << g.num_edges() << "\n";
	out << "# format=ndv-edgelist/" << format_version << "\n";
	for (const auto& c : comments)
		out << "# " << c << "\n";
	for (const Edge& e : g.edges())
		out << e.u << ' ' << e.v << '\n';
}

inline void write_edge_list(const fs::path& path, const Graph& g, const std::vector<std::string>& comments = {})
{
	std::ofstream out(path);
	if (!out)
		throw std::runtime_error("cannot write " + path.string());
	write_edge_list(out, g, comments);
	if (!out)
		throw std::runtime_error("write failed for " + path.string());
}

struct CorpusScan
{
	std::vector<NamedGraph> graphs;
	std::vector<NetworkFailure> failures;
};

/// Loads every regular file in `dir`, in lexicographic filename order. Ids are file stems.
inline CorpusScan scan_corpus(const fs::path& dir)
{
	if (!fs::is_directory(dir))
		throw std::runtime_error(dir.string() + " is not a directory");
	std::vector<fs::path> files;
	for (const auto& entry : fs::directory_iterator(dir))
		if (entry.is_regular_file())
			files.push_back(entry.path());
	if (files.empty())
		throw std::runtime_error(dir.string() + " contains no files");
	std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
	CorpusScan scan;
	for (const auto& f : files) {
		try {
			scan.graphs.push_back({f.stem().string(), load_edge_list(f).graph});
		} catch (const std::exception& e) {
			scan.failures.push_back({f.stem().string(), e.what()});
		}
	}
	return scan;
}

// ---------------------------------------------------------------------------
// Weighted matrices

struct WeightedMatrixData
{
	WeightedGraph graph;
	double max_asymmetry = 0.0;
	std::vector<std::string> warnings;
};

/**
 * Comma-separated square matrix, one row per line. A first line that does
 * not parse as numbers is taken as a header and skipped. The result is
 * symmetrised as (w + w^T)/2 with the diagonal zeroed.
 */
inline WeightedMatrixData parse_weighted_matrix(std::istream& in, const std::string& source = "<stream>")
{
	std::vector<std::vector<double>> rows;
	std::string line;
	std::size_t line_no = 0;
	bool first = true;
	while (std::getline(in, line)) {
		++line_no;
		const auto t = detail::trim(line);
		if (t.empty())
			continue;
		const auto fields = detail::split_fields(t, true);
		std::vector<double> row;
		row.reserve(fields.size());
		bool numeric = true;
		for (const auto f : fields) {
			const auto v = detail::parse_double(f);
			if (!v) {
				numeric = false;
				break;
			}
			row.push_back(*v);
		}
		if (!numeric) {
			if (first) {
				first = false;
				continue;
			}
			throw format_error(source + ":" + std::to_string(line_no) + ": non-numeric entry");
		}
		first = false;
		for (double v : row)
			if (!std::isfinite(v) || v < 0.0)
				throw format_error(source + ":" + std::to_string(line_no) + ": weights must be finite and nonnegative");
		rows.push_back(std::move(row));
	}
	const std::size_t n = rows.size();
	if (n == 0)
		throw format_error(source + ": empty matrix");
	for (std::size_t i = 0; i < n; ++i)
		if (rows[i].size() != n)
			throw format_error(source + ": row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) + " entries, expected " +
			                   std::to_string(n));

	WeightedMatrixData out;
	std::vector<double> w(n * n, 0.0);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t j = i + 1; j < n; ++j) {
			out.max_asymmetry = std::max(out.max_asymmetry, std::abs(rows[i][j] - rows[j][i]));
			w[i * n + j] = w[j * n + i] = 0.5 * (rows[i][j] + rows[j][i]);
		}
	if (out.max_asymmetry > 1e-9)
		out.warnings.push_back(source + ": matrix asymmetric (max |w_ij - w_ji| = " + std::to_string(out.max_asymmetry) + "), symmetrised");
	for (std::size_t i = 0; i < n; ++i)
		if (rows[i][i] != 0.0) {
			out.warnings.push_back(source + ": nonzero diagonal zeroed");
			break;
		}
	out.graph = WeightedGraph(n, std::move(w));
	return out;
}

inline WeightedMatrixData load_weighted_matrix(const fs::path& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open " + path.string());
	return parse_weighted_matrix(in, path.string());
}

// ---------------------------------------------------------------------------
// CSV and JSON output

/// 12 significant digits; undefined values become empty cells.
inline std::string format_number(std::optional<double> v)
{
	if (!v)
		return {};
	char buf[32];
	std::snprintf(buf, sizeof buf, "%.12g", *v);
	return buf;
}

inline std::string csv_escape(std::string_view s)
{
	if (s.find_first_of(",\"\n") == std::string_view::npos)
		return std::string(s);
	std::string out = "\"";
	for (char c : s) {
		if (c == '"')
			out += '"';
		out += c;
	}
	return out + '"';
}

class CsvWriter
{
public:
	CsvWriter(std::ostream& out, const std::vector<std::string>& header) : out_(out) { row(header); }

	void row(const std::vector<std::string>& cells)
	{
		for (std::size_t i = 0; i < cells.size(); ++i)
			out_ << (i ? "," : "") << csv_escape(cells[i]);
		out_ << '\n';
	}

private:
	std::ostream& out_;
};

inline std::string num(std::size_t v) { return std::to_string(v); }
inline std::string num(double v) { return format_number(v); }
inline std::string num(std::optional<double> v) { return format_number(v); }

inline void write_sweep_csv(std::ostream& out, const SweepTable& t)
{
	CsvWriter w(out, {"family", "n", "density_percent", "metric", "value", "valid", "replicates", "reason"});
	for (const auto& r : t.rows)
		w.row({std::string(family_name(r.family)), num(r.n), std::to_string(r.percent), std::string(metric_name(r.metric)), num(r.value), num(r.valid),
		       num(r.replicates), r.value ? "" : r.note});
}

inline void write_cov_csv(std::ostream& out, const std::vector<CovRecord>& recs)
{
	CsvWriter w(out, {"family", "metric", "cov", "groups_used", "groups_excluded", "reason"});
	for (const auto& r : recs)
		w.row({std::string(family_name(r.family)), std::string(metric_name(r.metric)), num(r.value), num(r.groups_used), num(r.groups_excluded), r.note});
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& recs)
{
	CsvWriter w(out, {"metric", "n", "replicates", "mean_seconds", "min_seconds", "max_seconds"});
	for (const auto& r : recs) {
		const auto [lo, hi] = std::minmax_element(r.seconds.begin(), r.seconds.end());
		w.row({r.metric, num(r.n), num(r.seconds.size()), num(r.mean), num(*lo), num(*hi)});
	}
}

inline void write_robustness_csv(std::ostream& out, const std::vector<RobustnessRecord>& recs)
{
	CsvWriter w(out, {"network_id", "mode", "percent", "metric", "baseline", "subsample_mean", "n_valid", "n_skipped", "abs_difference", "reason"});
	for (const auto& r : recs)
		w.row({r.network_id, std::string(mode_name(r.mode)), num(r.percent), std::string(metric_name(r.metric)), num(r.baseline), num(r.subsample_mean),
		       num(r.n_valid), num(r.n_skipped), num(r.abs_difference), r.note});
}

inline void write_robustness_summary_csv(std::ostream& out, const std::vector<RobustnessSummary>& recs)
{
	CsvWriter w(out, {"mode", "percent", "metric", "median_abs_difference", "networks", "mean_skip_rate"});
	for (const auto& r : recs)
		w.row({std::string(mode_name(r.mode)), num(r.percent), std::string(metric_name(r.metric)), num(r.median_abs_difference), num(r.networks),
		       num(r.mean_skip_rate)});
}

inline void write_corpus_csv(std::ostream& out, const CorpusCorrelation& c)
{
	CsvWriter w(out, {"network_id", "n", "m", "density", "average_degree", "v_bar", "v_bar_reason", "rho", "rho_reason"});
	for (const auto& e : c.entries)
		w.row({e.id, num(e.n), num(e.m), num(e.density), num(e.average_degree), num(e.v_bar.value), e.v_bar.defined() ? "" : e.v_bar.note,
		       num(e.rho.value), e.rho.defined() ? "" : e.rho.note});
}

inline void write_report_csv(std::ostream& out, const MetricReport& r)
{
	CsvWriter w(out, {"metric", "value", "reason"});
	const std::pair<const char*, const MetricValue*> rows[] = {{"v", &r.v},           {"v_bar", &r.v_bar}, {"J", &r.j},
	                                                           {"sigma2", &r.sigma2}, {"irr", &r.irr},     {"rho", &r.rho}};
	for (const auto& [name, mv] : rows)
		w.row({name, num(mv->value), mv->note});
}

/// Writes via `fn(stream)` to `path`, failing loudly on unwritable paths.
template <class F>
void write_file(const fs::path& path, F&& fn)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw std::runtime_error("cannot write " + path.string());
	fn(out);
	out.flush();
	if (!out)
		throw std::runtime_error("write failed for " + path.string());
}

/// Header-only JSON block recording tool version, seed and parameters.
inline nlohmann::ordered_json provenance(std::uint64_t seed, nlohmann::ordered_json parameters)
{
	nlohmann::ordered_json j;
	j["tool"] = "ndv";
	j["version"] = version;
	j["format_version"] = format_version;
	j["seed"] = seed;
	j["parameters"] = std::move(parameters);
	return j;
}

inline void write_json(const fs::path& path, const nlohmann::ordered_json& j)
{
	write_file(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

/// Minimal CSV reader for the files written above; quoted fields supported.
inline std::vector<std::vector<std::string>> read_csv(std::istream& in)
{
	std::vector<std::vector<std::string>> rows;
	std::string line;
	while (std::getline(in, line)) {
		std::vector<std::string> row;
		std::string cell;
		bool quoted = false;
		for (std::size_t i = 0; i < line.size(); ++i) {
			const char c = line[i];
			if (quoted) {
				if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
					cell += '"';
					++i;
				} else if (c == '"') {
					quoted = false;
				} else {
					cell += c;
				}
			} else if (c == '"') {
				quoted = true;
			} else if (c == ',') {
				row.push_back(std::move(cell));
				cell.clear();
			} else {
				cell += c;
			}
		}
		row.push_back(std::move(cell));
		rows.push_back(std::move(row));
	}
	return rows;
}

} // namespace ndv::io
