#pragma once

#include "horizonsel/error.hpp"
#include "horizonsel/forecasters.hpp"
#include "horizonsel/mdfh.hpp"
#include "horizonsel/metrics.hpp"
#include "horizonsel/numeric.hpp"
#include "horizonsel/selectors.hpp"
#include "horizonsel/series.hpp"
#include "horizonsel/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace horizonsel::pipeline {

/// Which sequence feeds the MDFH regime diagnosis.
enum class DiagnosisSource { FutureForecast, ObservedHistory };
/// Which data the future trajectory is fitted on.
enum class FutureFit { TrainPlusTest, TrainOnly };

constexpr std::string_view to_string(DiagnosisSource s) noexcept {
	return s == DiagnosisSource::FutureForecast ? "future_forecast" : "observed_history";
}
constexpr std::string_view to_string(FutureFit f) noexcept {
	return f == FutureFit::TrainPlusTest ? "train_plus_test" : "train_only";
}

struct MdfhOptions {
	int block_size = 3;
	mdfh::AlphaBounds bounds{};
	DiagnosisSource diagnosis_source = DiagnosisSource::FutureForecast;
};

struct PipelineOptions {
	SplitConfig split{};
	std::vector<forecast::ForecasterSpec> forecasters;
	MdfhOptions mdfh{};
	FutureFit future_fit = FutureFit::TrainPlusTest;
	StructureThresholds thresholds{};
	std::vector<select::SelectorKind> selectors{select::kAllSelectors.begin(), select::kAllSelectors.end()};
	select::SelectorOptions selector_options{};

	void validate() const {
		split.validate();
		thresholds.validate();
		if (forecasters.empty()) {
			throw Error(ErrorCode::InvalidArgument, "at least one forecaster is required");
		}
		std::set<std::string> ids;
		for (const auto &f : forecasters) {
			f.validate();
			if (!ids.insert(f.id()).second) {
				throw Error(ErrorCode::InvalidArgument, "forecaster '" + f.id() + "' listed twice");
			}
		}
		if (selectors.empty()) {
			throw Error(ErrorCode::InvalidArgument, "at least one selector is required");
		}
		if (mdfh.block_size < 1) {
			throw Error(ErrorCode::InvalidArgument, "mdfh.block_size must be >= 1");
		}
		if (!(mdfh.bounds.min <= mdfh.bounds.max)) {
			throw Error(ErrorCode::InvalidArgument, "mdfh.alpha_min must not exceed mdfh.alpha_max");
		}
	}
};

struct AdjustedMetrics {
	int h = 0;
	double rmsse_h = 0.0;
	double mae_h = 0.0;
	double rmse_h = 0.0;
};

struct ModelEvaluation {
	std::string model_id;
	std::vector<double> test_forecast;
	metrics::MetricSet metrics;
	std::vector<double> future_forecast; ///< length H
	std::optional<mdfh::StructuralRegime> regime; ///< absent for a one-point trajectory (no adjustment)
	mdfh::DegradationParams degradation;
	std::vector<AdjustedMetrics> adjusted; ///< h = 1..H in order
};

struct SelectionCell {
	select::SelectorKind selector = select::SelectorKind::RMSSE_h;
	int h = 0;
	select::SelectorResult result;
	std::optional<double> gra; ///< absent when the first h future actuals sum to zero
};

struct SeriesEvaluation {
	std::string series_id;
	EvaluationWindow window;
	DemandStructure structure;
	std::vector<ModelEvaluation> models;
	std::vector<SelectionCell> selections; ///< selector-major, then h ascending
	std::vector<std::string> warnings;

	const ModelEvaluation *model(std::string_view id) const {
		for (const auto &m : models) {
			if (m.model_id == id) {
				return &m;
			}
		}
		return nullptr;
	}

	const SelectionCell *selection(select::SelectorKind kind, int h) const {
		for (const auto &s : selections) {
			if (s.selector == kind && s.h == h) {
				return &s;
			}
		}
		return nullptr;
	}
};

/// Selector input rows at horizon h (1-based).
inline std::vector<select::ModelMetricsRow> rows_at(const std::vector<ModelEvaluation> &models, int h) {
	std::vector<select::ModelMetricsRow> rows;
	rows.reserve(models.size());
	for (const auto &m : models) {
		const auto &adj = m.adjusted.at(static_cast<std::size_t>(h - 1));
		select::ModelMetricsRow row;
		row.model_id = m.model_id;
		row.rmsse_h = adj.rmsse_h;
		row.mae_h = adj.mae_h;
		row.rmse_h = adj.rmse_h;
		row.smape = m.metrics.smape;
		row.bias = m.metrics.bias;
		row.mape = m.metrics.mape;
		row.r2 = m.metrics.r2;
		rows.push_back(std::move(row));
	}
	return rows;
}

namespace detail {

/// Test metrics for one model. A flat training slice leaves RMSSE without a
/// scale; a model that reproduces the test slice exactly is kept with RMSSE 0,
/// any other model is rejected.
inline metrics::MetricSet test_metrics(const EvaluationWindow &w, std::span<const double> pred) {
	try {
		return metrics::compute_metric_set(w.train, w.test, pred);
	} catch (const Error &e) {
		if (e.code() != ErrorCode::FlatTrainingSeries || metrics::rmse(w.test, pred) != 0.0) {
			throw;
		}
	}
	metrics::MetricSet out;
	out.mae = 0.0;
	out.rmse = 0.0;
	out.rmsse = 0.0;
	out.mape = metrics::mape(w.test, pred);
	out.smape = metrics::smape(w.test, pred);
	out.r2 = metrics::r2(w.test, pred);
	out.bias = 0.0;
	return out;
}

} // namespace detail

/// Runs every stage for one series: split, fit, test metrics, future
/// trajectory, regime diagnosis, horizon adjustment, selection and ex post GRA.
/// Models whose fit or metrics fail are dropped with a warning; the series
/// fails with NoUsableModel only when none survive.
inline SeriesEvaluation evaluate_series(const DemandSeries &series, const PipelineOptions &options) {
	options.validate();
	SeriesEvaluation out;
	out.series_id = series.id();
	out.window = partition_series(series, options.split);
	const EvaluationWindow &w = out.window;
	const std::vector<double> observed = w.observed();
	out.structure = demand_structure(observed, options.thresholds);

	const int horizon = options.split.future_horizon;
	const int test_len = static_cast<int>(w.test.size());
	const std::vector<double> &future_history = options.future_fit == FutureFit::TrainPlusTest ? observed : w.train;

	for (const auto &spec : options.forecasters) {
		ModelEvaluation m;
		m.model_id = spec.id();
		try {
			m.test_forecast = forecast::fit_forecast(spec, w.train, test_len);
			m.metrics = detail::test_metrics(w, m.test_forecast);
			m.future_forecast = forecast::fit_forecast(spec, future_history, horizon);
		} catch (const Error &e) {
			out.warnings.push_back("model '" + m.model_id + "' dropped: " + e.what());
			continue;
		}
		const std::span<const double> trajectory = options.mdfh.diagnosis_source == DiagnosisSource::FutureForecast
		                                               ? std::span<const double>(m.future_forecast)
		                                               : std::span<const double>(observed);
		if (trajectory.size() >= 2) {
			m.regime = mdfh::diagnose_regime(trajectory);
		}
		m.degradation =
		    mdfh::estimate_alpha(w.test, m.test_forecast, options.mdfh.block_size, options.mdfh.bounds);
		m.adjusted.reserve(static_cast<std::size_t>(horizon));
		auto adjust = [&](double value, int h, mdfh::MetricKind kind) {
			return m.regime ? mdfh::adjust_metric(*m.regime, value, test_len, h, kind, m.degradation) : value;
		};
		for (int h = 1; h <= horizon; ++h) {
			m.adjusted.push_back({h, adjust(m.metrics.rmsse, h, mdfh::MetricKind::RMSSE),
			                      adjust(m.metrics.mae, h, mdfh::MetricKind::MAE),
			                      adjust(m.metrics.rmse, h, mdfh::MetricKind::RMSE)});
		}
		out.models.push_back(std::move(m));
	}
	if (out.models.empty()) {
		throw Error(ErrorCode::NoUsableModel, "series '" + series.id() + "': every model was dropped");
	}

	for (auto kind : options.selectors) {
		for (int h = 1; h <= horizon; ++h) {
			SelectionCell cell;
			cell.selector = kind;
			cell.h = h;
			cell.result = select::run_selector(kind, rows_at(out.models, h), out.structure, h, options.selector_options);
			const auto n = static_cast<std::size_t>(h);
			const std::span<const double> actual(w.future_actual.data(), n);
			if (numeric::sum(actual) > 0.0) {
				const ModelEvaluation *chosen = out.model(cell.result.chosen);
				cell.gra = metrics::gra(actual, std::span<const double>(chosen->future_forecast.data(), n));
			}
			out.selections.push_back(std::move(cell));
		}
	}
	return out;
}

struct SeriesFailure {
	std::string series_id;
	std::string message;
};

struct CorpusEvaluation {
	std::vector<SeriesEvaluation> evaluations; ///< sorted by series_id
	std::vector<SeriesFailure> failures;       ///< sorted by series_id
};

/// Evaluates every series, optionally on several threads. Results land in
/// per-series slots and are sorted by id, so output never depends on `threads`.
inline CorpusEvaluation evaluate_corpus(const std::vector<DemandSeries> &corpus, const PipelineOptions &options,
                                        unsigned threads = 1) {
	options.validate();
	struct Slot {
		std::optional<SeriesEvaluation> evaluation;
		std::string error;
	};
	std::vector<Slot> slots(corpus.size());
	std::atomic<std::size_t> next{0};
	auto worker = [&] {
		for (std::size_t i = next++; i < corpus.size(); i = next++) {
			try {
				slots[i].evaluation = evaluate_series(corpus[i], options);
			} catch (const std::exception &e) {
				slots[i].error = e.what();
			}
		}
	};
	threads = std::max(1u, threads);
	if (threads == 1) {
		worker();
	} else {
		std::vector<std::jthread> pool;
		for (unsigned t = 0; t < threads; ++t) {
			pool.emplace_back(worker);
		}
	}

	CorpusEvaluation out;
	for (std::size_t i = 0; i < corpus.size(); ++i) {
		if (slots[i].evaluation) {
			out.evaluations.push_back(std::move(*slots[i].evaluation));
		} else {
			out.failures.push_back({corpus[i].id(), slots[i].error});
		}
	}
	std::stable_sort(out.evaluations.begin(), out.evaluations.end(),
	                 [](const auto &a, const auto &b) { return a.series_id < b.series_id; });
	std::stable_sort(out.failures.begin(), out.failures.end(),
	                 [](const auto &a, const auto &b) { return a.series_id < b.series_id; });
	return out;
}

/// Descriptive statistics of one selector's GRA values at one horizon.
struct ReportCell {
	select::SelectorKind selector = select::SelectorKind::RMSSE_h;
	int h = 0;
	std::size_t count = 0;
	std::optional<double> mean, median, std, min, max, iqr, mad, robust_cv;
	double gra_global = 0.0;
	int final_ranking = 0;
};

struct FrequencyCell {
	select::SelectorKind selector = select::SelectorKind::RMSSE_h;
	int h = 0;
	std::string model_id;
	std::size_t count = 0;
};

struct CorpusReport {
	int horizon = 0;
	std::vector<ReportCell> cells;         ///< h ascending, then selector order
	std::vector<FrequencyCell> frequency;  ///< selector order, h ascending, model_id ascending
};

/// One ex post GRA observation; the unit both the report and the significance
/// tests are computed from.
struct GraCell {
	std::string series_id;
	select::SelectorKind selector = select::SelectorKind::RMSSE_h;
	int h = 0;
	double gra = 0.0;
};

inline std::vector<GraCell> gra_cells(const std::vector<SeriesEvaluation> &evals) {
	std::vector<const SeriesEvaluation *> sorted;
	for (const auto &e : evals) {
		sorted.push_back(&e);
	}
	std::stable_sort(sorted.begin(), sorted.end(), [](auto *a, auto *b) { return a->series_id < b->series_id; });
	std::vector<GraCell> out;
	for (const auto *e : sorted) {
		for (const auto &s : e->selections) {
			if (s.gra) {
				out.push_back({e->series_id, s.selector, s.h, *s.gra});
			}
		}
	}
	return out;
}

/// Descriptive summary of a nonempty sample (population std, linear quantiles).
inline void describe(std::vector<double> values, ReportCell &cell) {
	cell.count = values.size();
	cell.gra_global = numeric::sum(values);
	if (values.empty()) {
		return;
	}
	std::sort(values.begin(), values.end());
	cell.mean = numeric::mean(values);
	cell.median = numeric::quantile_sorted(values, 0.5);
	cell.std = numeric::popstd(values);
	cell.min = values.front();
	cell.max = values.back();
	cell.iqr = numeric::quantile_sorted(values, 0.75) - numeric::quantile_sorted(values, 0.25);
	cell.mad = numeric::mad(values);
	if (*cell.median != 0.0) {
		cell.robust_cv = *cell.iqr / *cell.median;
	}
}

/// Corpus-level synthesis per (selector, h) plus the selection-frequency matrix.
/// Input order does not matter: everything is keyed and summed in series_id order.
inline CorpusReport aggregate(const std::vector<SeriesEvaluation> &evals,
                              const std::vector<select::SelectorKind> &selectors) {
	if (evals.empty()) {
		throw Error(ErrorCode::EmptyInput, "aggregate needs at least one series evaluation");
	}
	std::vector<const SeriesEvaluation *> sorted;
	for (const auto &e : evals) {
		sorted.push_back(&e);
	}
	std::stable_sort(sorted.begin(), sorted.end(), [](auto *a, auto *b) { return a->series_id < b->series_id; });

	CorpusReport report;
	report.horizon = static_cast<int>(sorted.front()->window.future_actual.size());
	for (const auto *e : sorted) {
		if (static_cast<int>(e->window.future_actual.size()) != report.horizon) {
			throw Error(ErrorCode::InvalidArgument, "evaluations use different future horizons");
		}
	}

	std::map<std::pair<int, int>, std::vector<double>> values; // (h, selector index)
	std::set<std::string> model_ids;
	std::map<std::tuple<int, int, std::string>, std::size_t> counts; // (selector index, h, model)
	for (const auto *e : sorted) {
		for (const auto &m : e->models) {
			model_ids.insert(m.model_id);
		}
		for (const auto &s : e->selections) {
			const auto it = std::find(selectors.begin(), selectors.end(), s.selector);
			if (it == selectors.end()) {
				continue;
			}
			const int idx = static_cast<int>(it - selectors.begin());
			if (s.gra) {
				values[{s.h, idx}].push_back(*s.gra);
			}
			++counts[{idx, s.h, s.result.chosen}];
		}
	}

	for (int h = 1; h <= report.horizon; ++h) {
		const std::size_t first = report.cells.size();
		for (int idx = 0; idx < static_cast<int>(selectors.size()); ++idx) {
			ReportCell cell;
			cell.selector = selectors[static_cast<std::size_t>(idx)];
			cell.h = h;
			const auto it = values.find({h, idx});
			describe(it == values.end() ? std::vector<double>{} : it->second, cell);
			report.cells.push_back(std::move(cell));
		}
		std::vector<std::size_t> order(report.cells.size() - first);
		std::iota(order.begin(), order.end(), first);
		std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
			const auto &x = report.cells[a];
			const auto &y = report.cells[b];
			if (x.gra_global != y.gra_global) {
				return x.gra_global > y.gra_global;
			}
			return select::to_string(x.selector) < select::to_string(y.selector);
		});
		for (std::size_t r = 0; r < order.size(); ++r) {
			report.cells[order[r]].final_ranking = static_cast<int>(r) + 1;
		}
	}

	for (int idx = 0; idx < static_cast<int>(selectors.size()); ++idx) {
		for (int h = 1; h <= report.horizon; ++h) {
			for (const auto &id : model_ids) {
				const auto it = counts.find({idx, h, id});
				report.frequency.push_back(
				    {selectors[static_cast<std::size_t>(idx)], h, id, it == counts.end() ? 0 : it->second});
			}
		}
	}
	return report;
}

/// Kruskal-Wallis across selectors at one horizon, plus Bonferroni-adjusted
/// Dunn comparisons for every selector pair (in selector-list order).
struct SignificanceRow {
	int h = 0;
	std::optional<stats::KruskalWallis> kruskal;
	std::vector<stats::PairwiseComparison> pairwise;
};

inline std::vector<SignificanceRow> selector_significance(const std::vector<GraCell> &cells,
                                                          const std::vector<select::SelectorKind> &selectors,
                                                          int horizon, double alpha = 0.05) {
	std::vector<SignificanceRow> out;
	for (int h = 1; h <= horizon; ++h) {
		SignificanceRow row;
		row.h = h;
		std::vector<stats::Group> groups;
		for (auto kind : selectors) {
			stats::Group g{std::string(select::to_string(kind)), {}};
			for (const auto &c : cells) {
				if (c.h == h && c.selector == kind) {
					g.values.push_back(c.gra);
				}
			}
			groups.push_back(std::move(g));
		}
		std::size_t total = 0;
		bool any_empty = false;
		for (const auto &g : groups) {
			total += g.values.size();
			any_empty = any_empty || g.values.empty();
		}
		if (groups.size() >= 2 && !any_empty && total >= 3) {
			const stats::GroupedSample sample(std::move(groups));
			row.kruskal = stats::kruskal_wallis(sample);
			row.pairwise = stats::dunn_posthoc(sample, alpha);
		}
		out.push_back(std::move(row));
	}
	return out;
}

} // namespace horizonsel::pipeline
