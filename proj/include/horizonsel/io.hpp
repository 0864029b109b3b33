#pragma once

// Long-format demand panel ingest and the report tables written by the CLI.

#include "horizonsel/csv.hpp"
#include "horizonsel/error.hpp"
#include "horizonsel/pipeline.hpp"
#include "horizonsel/series.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace horizonsel::io {

inline constexpr const char *kInputHeader = "series_id,period,value";

/// Reads `series_id,period,value` rows. Periods are 0-based and contiguous per
/// series; rows may come in any order. Series are returned sorted by id.
inline std::vector<DemandSeries> ingest_csv(const std::string &path, int seasonal_period) {
	std::ifstream in(path);
	if (!in) {
		throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
	}
	struct Obs {
		long long period;
		double value;
		std::size_t line;
	};
	std::map<std::string, std::vector<Obs>> grouped;
	std::string line;
	std::size_t line_no = 0;
	bool header_seen = false;
	while (std::getline(in, line)) {
		++line_no;
		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}
		if (!header_seen) {
			if (line != kInputHeader) {
				throw Error(ErrorCode::MalformedRow,
				            path + ":" + std::to_string(line_no) + ": header must be exactly '" + kInputHeader + "'");
			}
			header_seen = true;
			continue;
		}
		if (line.empty()) {
			continue;
		}
		const auto where = path + ":" + std::to_string(line_no);
		const auto fields = csv::split_line(line);
		if (fields.size() != 3 || fields[0].empty()) {
			throw Error(ErrorCode::MalformedRow, where + ": expected series_id,period,value");
		}
		const auto period = csv::parse_int(fields[1]);
		const auto value = csv::parse_double(fields[2]);
		if (!period || *period < 0) {
			throw Error(ErrorCode::MalformedRow, where + ": period must be a non-negative integer");
		}
		if (!value) {
			throw Error(ErrorCode::MalformedRow, where + ": value must be a finite decimal");
		}
		if (*value < 0.0) {
			throw Error(ErrorCode::NegativeValue, where + ": negative demand value");
		}
		grouped[fields[0]].push_back({*period, *value, line_no});
	}
	if (!header_seen) {
		throw Error(ErrorCode::MalformedRow, path + ": empty file");
	}

	std::vector<DemandSeries> out;
	for (auto &[id, obs] : grouped) {
		std::stable_sort(obs.begin(), obs.end(), [](const Obs &a, const Obs &b) { return a.period < b.period; });
		std::vector<double> values;
		values.reserve(obs.size());
		for (std::size_t i = 0; i < obs.size(); ++i) {
			if (obs[i].period != static_cast<long long>(i)) {
				throw Error(ErrorCode::NonContiguousPeriods, path + ":" + std::to_string(obs[i].line) + ": series '" +
				                                                 id + "' expected period " + std::to_string(i) +
				                                                 ", found " + std::to_string(obs[i].period));
			}
			values.push_back(obs[i].value);
		}
		out.emplace_back(id, std::move(values), seasonal_period);
	}
	return out;
}

inline void write_input_csv(std::ostream &os, const std::vector<DemandSeries> &corpus) {
	os << kInputHeader << '\n';
	for (const auto &s : corpus) {
		const auto values = s.values();
		for (std::size_t t = 0; t < values.size(); ++t) {
			csv::write_row(os, {s.id(), std::to_string(t), csv::fmt(values[t])});
		}
	}
}

// ---------------------------------------------------------------------------
// Report tables

inline void write_metrics(std::ostream &os, const std::vector<pipeline::SeriesEvaluation> &evals) {
	csv::write_row(os, {"series_id", "model_id", "mae", "rmse", "rmsse", "mape", "smape", "r2", "bias", "regime", "alpha",
	                    "alpha_source", "p", "c", "demand_class"});
	for (const auto &e : evals) {
		for (const auto &m : e.models) {
			const auto &x = m.metrics;
			csv::write_row(os, {e.series_id, m.model_id, csv::fmt(x.mae), csv::fmt(x.rmse), csv::fmt(x.rmsse),
			                    csv::fmt(x.mape), csv::fmt(x.smape), csv::fmt(x.r2), csv::fmt(x.bias),
			                    m.regime ? std::string(mdfh::to_string(m.regime->kind)) : std::string{},
			                    csv::fmt(m.degradation.alpha), std::string(mdfh::to_string(m.degradation.source)),
			                    csv::fmt(e.structure.p), csv::fmt(e.structure.c),
			                    std::string(to_string(e.structure.classification))});
		}
	}
}

inline void write_adjusted(std::ostream &os, const std::vector<pipeline::SeriesEvaluation> &evals) {
	csv::write_row(os, {"series_id", "model_id", "h", "rmsse_h", "mae_h", "rmse_h"});
	for (const auto &e : evals) {
		for (const auto &m : e.models) {
			for (const auto &a : m.adjusted) {
				csv::write_row(os, {e.series_id, m.model_id, std::to_string(a.h), csv::fmt(a.rmsse_h), csv::fmt(a.mae_h),
				                    csv::fmt(a.rmse_h)});
			}
		}
	}
}

/// {"model": rank, ...} in rank order.
inline std::string rank_json(const select::SelectorResult &r) {
	nlohmann::ordered_json j = nlohmann::ordered_json::object();
	for (const auto &m : r.ranking) {
		j[m.model_id] = m.rank;
	}
	return j.dump();
}

struct SelectionRecord {
	std::string series_id;
	select::SelectorResult result;
};

inline void write_selections(std::ostream &os, const std::vector<SelectionRecord> &records) {
	csv::write_row(os, {"series_id", "selector", "h", "chosen_model", "rank_json", "score"});
	for (const auto &rec : records) {
		const auto &r = rec.result;
		csv::write_row(os, {rec.series_id, std::string(select::to_string(r.selector)), std::to_string(r.horizon), r.chosen,
		                    rank_json(r), csv::fmt(r.ranking.front().score)});
	}
}

inline std::vector<SelectionRecord> selection_records(const std::vector<pipeline::SeriesEvaluation> &evals) {
	std::vector<SelectionRecord> out;
	for (const auto &e : evals) {
		for (const auto &s : e.selections) {
			out.push_back({e.series_id, s.result});
		}
	}
	return out;
}

inline void write_gra(std::ostream &os, const std::vector<pipeline::GraCell> &cells) {
	csv::write_row(os, {"series_id", "selector", "h", "gra"});
	for (const auto &c : cells) {
		csv::write_row(os, {c.series_id, std::string(select::to_string(c.selector)), std::to_string(c.h), csv::fmt(c.gra)});
	}
}

inline void write_report(std::ostream &os, const pipeline::CorpusReport &report) {
	csv::write_row(os, {"selector", "h", "count", "mean", "median", "std", "min", "max", "IQR", "MAD", "robust_cv",
	                    "gra_global", "final_ranking"});
	for (const auto &c : report.cells) {
		csv::write_row(os, {std::string(select::to_string(c.selector)), std::to_string(c.h), std::to_string(c.count),
		                    csv::fmt(c.mean), csv::fmt(c.median), csv::fmt(c.std), csv::fmt(c.min), csv::fmt(c.max),
		                    csv::fmt(c.iqr), csv::fmt(c.mad), csv::fmt(c.robust_cv), csv::fmt(c.gra_global),
		                    std::to_string(c.final_ranking)});
	}
}

inline void write_frequency(std::ostream &os, const pipeline::CorpusReport &report) {
	csv::write_row(os, {"selector", "h", "model_id", "count"});
	for (const auto &f : report.frequency) {
		csv::write_row(os,
		               {std::string(select::to_string(f.selector)), std::to_string(f.h), f.model_id, std::to_string(f.count)});
	}
}

inline std::string pair_column(std::string_view a, std::string_view b) {
	return "p_" + std::string(a) + "_vs_" + std::string(b);
}

inline void write_stats(std::ostream &os, const std::vector<pipeline::SignificanceRow> &rows,
                        const std::vector<select::SelectorKind> &selectors) {
	std::vector<std::string> header{"h", "KW_H", "KW_p"};
	for (std::size_t a = 0; a < selectors.size(); ++a) {
		for (std::size_t b = a + 1; b < selectors.size(); ++b) {
			header.push_back(pair_column(select::to_string(selectors[a]), select::to_string(selectors[b])));
		}
	}
	csv::write_row(os, header);
	const std::size_t pairs = header.size() - 3;
	for (const auto &r : rows) {
		std::vector<std::string> fields{std::to_string(r.h)};
		if (r.kruskal) {
			fields.push_back(csv::fmt(r.kruskal->h));
			fields.push_back(csv::fmt(r.kruskal->p_value));
			for (const auto &p : r.pairwise) {
				fields.push_back(csv::fmt(p.p_bonferroni));
			}
		} else {
			fields.resize(3 + pairs);
		}
		csv::write_row(os, fields);
	}
}

// ---------------------------------------------------------------------------
// Readers for the `select` and `stats` subcommands

inline std::optional<double> optional_field(const csv::Table &t, std::size_t row, std::size_t col) {
	const auto &text = t.rows[row][col];
	if (text.empty()) {
		return std::nullopt;
	}
	const auto v = csv::parse_double(text);
	if (!v) {
		throw Error(ErrorCode::MalformedRow, "line " + std::to_string(t.line_numbers[row]) + ": bad number '" + text + "'");
	}
	return v;
}

inline double required_field(const csv::Table &t, std::size_t row, std::size_t col) {
	const auto v = optional_field(t, row, col);
	if (!v) {
		throw Error(ErrorCode::MalformedRow,
		            "line " + std::to_string(t.line_numbers[row]) + ": column '" + t.header[col] + "' is empty");
	}
	return *v;
}

inline int int_field(const csv::Table &t, std::size_t row, std::size_t col) {
	const auto v = csv::parse_int(t.rows[row][col]);
	if (!v) {
		throw Error(ErrorCode::MalformedRow,
		            "line " + std::to_string(t.line_numbers[row]) + ": column '" + t.header[col] + "' must be an integer");
	}
	return static_cast<int>(*v);
}

/// Selector inputs rebuilt from metrics.csv and adjusted.csv.
struct SelectionInput {
	std::string series_id;
	double p = 0.0;
	std::optional<double> c;
	/// model rows per horizon; index h - 1
	std::vector<std::vector<select::ModelMetricsRow>> rows_by_h;
};

inline std::vector<SelectionInput> read_selection_input(const std::string &metrics_path,
                                                        const std::string &adjusted_path) {
	const csv::Table metrics = csv::read_table(metrics_path);
	const csv::Table adjusted = csv::read_table(adjusted_path);

	struct Raw {
		std::optional<double> smape, bias, mape, r2;
	};
	std::map<std::string, SelectionInput> by_series;
	std::map<std::pair<std::string, std::string>, Raw> raw;
	std::map<std::string, std::vector<std::string>> model_order;
	{
		const auto sid = metrics.column("series_id"), mid = metrics.column("model_id");
		const auto smape = metrics.column("smape"), bias = metrics.column("bias"), mape = metrics.column("mape"),
		           r2 = metrics.column("r2"), p = metrics.column("p"), c = metrics.column("c");
		for (std::size_t i = 0; i < metrics.rows.size(); ++i) {
			const auto &row = metrics.rows[i];
			auto &in = by_series[row[sid]];
			in.series_id = row[sid];
			in.p = required_field(metrics, i, p);
			in.c = optional_field(metrics, i, c);
			raw[{row[sid], row[mid]}] = {optional_field(metrics, i, smape), optional_field(metrics, i, bias),
			                             optional_field(metrics, i, mape), optional_field(metrics, i, r2)};
			model_order[row[sid]].push_back(row[mid]);
		}
	}
	const auto sid = adjusted.column("series_id"), mid = adjusted.column("model_id"), hcol = adjusted.column("h"),
	           rmsse = adjusted.column("rmsse_h"), mae = adjusted.column("mae_h"), rmse = adjusted.column("rmse_h");
	for (std::size_t i = 0; i < adjusted.rows.size(); ++i) {
		const auto &row = adjusted.rows[i];
		const auto it = raw.find({row[sid], row[mid]});
		if (it == raw.end()) {
			throw Error(ErrorCode::MalformedRow, adjusted_path + ":" + std::to_string(adjusted.line_numbers[i]) +
			                                         ": (series, model) not present in metrics table");
		}
		const int h = int_field(adjusted, i, hcol);
		if (h < 1) {
			throw Error(ErrorCode::MalformedRow,
			            adjusted_path + ":" + std::to_string(adjusted.line_numbers[i]) + ": h must be >= 1");
		}
		auto &in = by_series[row[sid]];
		if (in.rows_by_h.size() < static_cast<std::size_t>(h)) {
			in.rows_by_h.resize(static_cast<std::size_t>(h));
		}
		select::ModelMetricsRow r;
		r.model_id = row[mid];
		r.rmsse_h = optional_field(adjusted, i, rmsse);
		r.mae_h = optional_field(adjusted, i, mae);
		r.rmse_h = optional_field(adjusted, i, rmse);
		r.smape = it->second.smape;
		r.bias = it->second.bias;
		r.mape = it->second.mape;
		r.r2 = it->second.r2;
		in.rows_by_h[static_cast<std::size_t>(h - 1)].push_back(std::move(r));
	}
	std::vector<SelectionInput> out;
	for (auto &[id, in] : by_series) {
		out.push_back(std::move(in));
	}
	return out;
}

inline std::vector<pipeline::GraCell> read_gra(const std::string &path) {
	const csv::Table t = csv::read_table(path);
	const auto sid = t.column("series_id"), sel = t.column("selector"), hcol = t.column("h"), gra = t.column("gra");
	std::vector<pipeline::GraCell> out;
	for (std::size_t i = 0; i < t.rows.size(); ++i) {
		const auto kind = select::selector_from_string(t.rows[i][sel]);
		if (!kind) {
			throw Error(ErrorCode::MalformedRow,
			            path + ":" + std::to_string(t.line_numbers[i]) + ": unknown selector '" + t.rows[i][sel] + "'");
		}
		out.push_back({t.rows[i][sid], *kind, int_field(t, i, hcol), required_field(t, i, gra)});
	}
	return out;
}

} // namespace horizonsel::io
