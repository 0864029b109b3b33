#pragma once

// Subcommand implementations behind the horizonsel command-line tool.

#include "horizonsel/config.hpp"
#include "horizonsel/error.hpp"
#include "horizonsel/io.hpp"
#include "horizonsel/pipeline.hpp"
#include "horizonsel/synthetic.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace horizonsel::app {

namespace fs = std::filesystem;

inline constexpr const char *kRunOutputs[] = {"metrics.csv", "adjusted.csv", "selections.csv", "gra.csv",
                                               "report.csv",  "frequency.csv", "stats.csv"};

/// Writes rendered tables into `dir`. Either every file lands or none is left.
inline void write_outputs(const fs::path &dir, const std::vector<std::pair<std::string, std::string>> &files) {
	std::error_code ec;
	fs::create_directories(dir, ec);
	if (ec) {
		throw Error(ErrorCode::IoError, "cannot create output directory '" + dir.string() + "': " + ec.message());
	}
	std::vector<fs::path> written;
	try {
		for (const auto &[name, content] : files) {
			const fs::path path = dir / name;
			std::ofstream out(path, std::ios::binary | std::ios::trunc);
			if (!out) {
				throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
			}
			written.push_back(path);
			out << content;
			out.flush();
			if (!out) {
				throw Error(ErrorCode::IoError, "write failed for '" + path.string() + "'");
			}
		}
	} catch (...) {
		for (const auto &p : written) {
			fs::remove(p, ec);
		}
		throw;
	}
}

inline std::string render(const std::function<void(std::ostream &)> &writer) {
	std::ostringstream os;
	writer(os);
	return os.str();
}

struct RunSummary {
	std::size_t series_total = 0;
	std::size_t series_evaluated = 0;
	std::vector<pipeline::SeriesFailure> failures;
	std::vector<std::string> warnings;
};

/// Renders the seven report tables for an evaluated corpus, keyed by file name.
inline std::vector<std::pair<std::string, std::string>> render_run_outputs(const pipeline::CorpusEvaluation &corpus,
                                                                           const pipeline::PipelineOptions &options) {
	const auto &evals = corpus.evaluations;
	const auto report = pipeline::aggregate(evals, options.selectors);
	const auto gra = pipeline::gra_cells(evals);
	const auto significance = pipeline::selector_significance(gra, options.selectors, report.horizon);
	return {
	    {"metrics.csv", render([&](std::ostream &os) { io::write_metrics(os, evals); })},
	    {"adjusted.csv", render([&](std::ostream &os) { io::write_adjusted(os, evals); })},
	    {"selections.csv", render([&](std::ostream &os) { io::write_selections(os, io::selection_records(evals)); })},
	    {"gra.csv", render([&](std::ostream &os) { io::write_gra(os, gra); })},
	    {"report.csv", render([&](std::ostream &os) { io::write_report(os, report); })},
	    {"frequency.csv", render([&](std::ostream &os) { io::write_frequency(os, report); })},
	    {"stats.csv", render([&](std::ostream &os) { io::write_stats(os, significance, options.selectors); })},
	};
}

/// Full pipeline: ingest, evaluate every series, aggregate, write the reports.
/// Series that cannot be evaluated are skipped and listed in the summary,
/// unless `strict` is set, in which case the first failure aborts the run.
inline RunSummary run(const config::RunConfig &cfg) {
	if (cfg.input.empty()) {
		throw Error(ErrorCode::ConfigError, "input: path is required");
	}
	if (cfg.output.empty()) {
		throw Error(ErrorCode::ConfigError, "output: directory is required");
	}
	const auto corpus = io::ingest_csv(cfg.input, cfg.seasonal_period);
	const auto evaluated = pipeline::evaluate_corpus(corpus, cfg.pipeline, cfg.threads);

	RunSummary summary;
	summary.series_total = corpus.size();
	summary.series_evaluated = evaluated.evaluations.size();
	summary.failures = evaluated.failures;
	for (const auto &e : evaluated.evaluations) {
		for (const auto &w : e.warnings) {
			summary.warnings.push_back(e.series_id + ": " + w);
		}
	}
	if (cfg.strict && !summary.failures.empty()) {
		const auto &f = summary.failures.front();
		throw Error(ErrorCode::InvalidArgument, "series '" + f.series_id + "' failed: " + f.message);
	}
	if (evaluated.evaluations.empty()) {
		throw Error(ErrorCode::NoUsableModel, "no series could be evaluated");
	}
	write_outputs(cfg.output, render_run_outputs(evaluated, cfg.pipeline));
	return summary;
}

/// Selectors only, from the metrics.csv and adjusted.csv of an earlier run.
/// Writes selections.csv into `output_dir`.
inline std::size_t select_from_tables(const std::string &metrics_path, const std::string &adjusted_path,
                                      const std::string &output_dir, const pipeline::PipelineOptions &options) {
	const auto inputs = io::read_selection_input(metrics_path, adjusted_path);
	std::vector<io::SelectionRecord> records;
	for (const auto &in : inputs) {
		DemandStructure structure;
		structure.p = in.p;
		structure.c = in.c;
		structure.zero_mean = !in.c.has_value();
		structure.classification = (in.c && in.p >= options.thresholds.p_star && *in.c < options.thresholds.c_star)
		                               ? DemandClass::Regular
		                               : DemandClass::IntermittentOrVariable;
		for (auto kind : options.selectors) {
			for (std::size_t h = 1; h <= in.rows_by_h.size(); ++h) {
				const auto &rows = in.rows_by_h[h - 1];
				if (rows.empty()) {
					throw Error(ErrorCode::MalformedRow,
					            "series '" + in.series_id + "' has no rows at h = " + std::to_string(h));
				}
				records.push_back({in.series_id, select::run_selector(kind, rows, structure, static_cast<int>(h),
				                                                      options.selector_options)});
			}
		}
	}
	write_outputs(output_dir, {{"selections.csv", render([&](std::ostream &os) { io::write_selections(os, records); })}});
	return records.size();
}

/// Kruskal-Wallis / Dunn per horizon from a gra.csv; writes stats.csv.
inline std::size_t stats_from_gra(const std::string &gra_path, const std::string &output_dir,
                                  const std::vector<select::SelectorKind> &selectors) {
	const auto cells = io::read_gra(gra_path);
	int horizon = 0;
	for (const auto &c : cells) {
		horizon = std::max(horizon, c.h);
	}
	const auto rows = pipeline::selector_significance(cells, selectors, horizon);
	write_outputs(output_dir, {{"stats.csv", render([&](std::ostream &os) { io::write_stats(os, rows, selectors); })}});
	return rows.size();
}

/// Synthetic corpus in the ingest format.
inline std::size_t generate(const std::string &output_path, const std::string &kind, int count, int length,
                            std::uint64_t seed, const synthetic::SyntheticParams &params) {
	const auto corpus = synthetic::generate_corpus(kind, count, length, seed, params);
	const fs::path path(output_path);
	if (path.has_parent_path()) {
		fs::create_directories(path.parent_path());
	}
	std::ofstream out(path, std::ios::binary | std::ios::trunc);
	if (!out) {
		throw Error(ErrorCode::IoError, "cannot write '" + output_path + "'");
	}
	io::write_input_csv(out, corpus);
	return corpus.size();
}

} // namespace horizonsel::app
