#pragma once

#include "horizonsel/error.hpp"
#include "horizonsel/numeric.hpp"
#include "horizonsel/pareto.hpp"
#include "horizonsel/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace horizonsel::select {

/// Per-model metrics at one horizon h. rmsse_h, mae_h and rmse_h are the
/// horizon-adjusted values; the rest are raw test metrics.
struct ModelMetricsRow {
	std::string model_id;
	std::optional<double> rmsse_h;
	std::optional<double> mae_h;
	std::optional<double> rmse_h;
	std::optional<double> smape;
	std::optional<double> bias;
	std::optional<double> mape;
	std::optional<double> r2;
};

enum class SelectorKind { RMSSE_h, AHSIV, ERA };

inline constexpr std::array<SelectorKind, 3> kAllSelectors = {SelectorKind::RMSSE_h, SelectorKind::AHSIV,
                                                             SelectorKind::ERA};

constexpr std::string_view to_string(SelectorKind k) noexcept {
	switch (k) {
	case SelectorKind::RMSSE_h: return "RMSSE_h";
	case SelectorKind::AHSIV: return "AHSIV";
	case SelectorKind::ERA: return "ERA";
	}
	return "Unknown";
}

inline std::optional<SelectorKind> selector_from_string(std::string_view name) noexcept {
	for (auto k : kAllSelectors) {
		if (to_string(k) == name) {
			return k;
		}
	}
	return std::nullopt;
}

struct RankedModel {
	std::string model_id;
	int rank = 0;
	double score = 0.0;
};

/// `ranking` is ordered by rank (1 first); ranks are a permutation of 1..K.
struct SelectorResult {
	SelectorKind selector = SelectorKind::RMSSE_h;
	int horizon = 0;
	std::vector<RankedModel> ranking;
	std::string chosen;

	const RankedModel *find(std::string_view model_id) const {
		for (const auto &r : ranking) {
			if (r.model_id == model_id) {
				return &r;
			}
		}
		return nullptr;
	}

	friend bool operator==(const SelectorResult &a, const SelectorResult &b) {
		if (a.selector != b.selector || a.horizon != b.horizon || a.chosen != b.chosen ||
		    a.ranking.size() != b.ranking.size()) {
			return false;
		}
		for (std::size_t i = 0; i < a.ranking.size(); ++i) {
			const auto &x = a.ranking[i];
			const auto &y = b.ranking[i];
			if (x.model_id != y.model_id || x.rank != y.rank || x.score != y.score) {
				return false;
			}
		}
		return true;
	}
};

struct SelectorOptions {
	/// AHSIV: pick min (|bias|, sMAPE) over the whole Pareto front instead of
	/// the two best-ordered candidates.
	bool ahsiv_full_front_variant = false;
	/// ERA: rank only (MAE_h, RMSE_h, R2), leaving MAPE out.
	bool era_body_variant = false;
};

namespace detail {

inline void check_rows(const std::vector<ModelMetricsRow> &rows) {
	if (rows.empty()) {
		throw Error(ErrorCode::EmptyInput, "selector needs at least one model row");
	}
	std::set<std::string> seen;
	for (const auto &r : rows) {
		if (!seen.insert(r.model_id).second) {
			throw Error(ErrorCode::InvalidArgument, "duplicate model_id '" + r.model_id + "'");
		}
	}
}

inline double require(const ModelMetricsRow &row, const std::optional<double> &value, const char *name) {
	if (!value) {
		throw Error(ErrorCode::MissingMetric, std::string(name) + " missing for model '" + row.model_id + "'");
	}
	if (!std::isfinite(*value)) {
		throw Error(ErrorCode::NonFiniteValue, std::string(name) + " is not finite for model '" + row.model_id + "'");
	}
	return *value;
}

inline SelectorResult from_order(SelectorKind kind, int h, const std::vector<ModelMetricsRow> &rows,
                                 const std::vector<std::size_t> &order, const std::vector<double> &scores) {
	SelectorResult out;
	out.selector = kind;
	out.horizon = h;
	for (std::size_t pos = 0; pos < order.size(); ++pos) {
		const std::size_t i = order[pos];
		out.ranking.push_back({rows[i].model_id, static_cast<int>(pos) + 1, scores[i]});
	}
	out.chosen = out.ranking.front().model_id;
	return out;
}

} // namespace detail

/// Ascending adjusted RMSSE at horizon h; ties by model_id. Score is the raw
/// adjusted value.
inline SelectorResult select_rmsse_h(const std::vector<ModelMetricsRow> &rows, int h) {
	detail::check_rows(rows);
	std::vector<double> score(rows.size());
	for (std::size_t i = 0; i < rows.size(); ++i) {
		score[i] = detail::require(rows[i], rows[i].rmsse_h, "rmsse_h");
	}
	std::vector<std::size_t> order(rows.size());
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
		return std::tie(score[a], rows[a].model_id) < std::tie(score[b], rows[b].model_id);
	});
	return detail::from_order(SelectorKind::RMSSE_h, h, rows, order, score);
}

/// Demand-structure-adaptive selection.
///
/// Regular demand: models are ordered by (Pareto tier over (rmsse_h, mae_h),
/// rmsse_h, mae_h, model_id). The first two form the candidate set, which is
/// sorted by sMAPE; the candidate with the smallest |bias| wins, with ties
/// falling back to that sMAPE order. Candidates come from the front only.
///
/// Intermittent or highly variable demand: argmin rmsse_h, ties by model_id.
///
/// The chosen model gets rank 1 and the rest follow in the ordering above.
/// Score is (rank - 1) / (K - 1), or 0 when K = 1.
inline SelectorResult select_ahsiv(const std::vector<ModelMetricsRow> &rows, const DemandStructure &structure, int h,
                                   const SelectorOptions &options = {}) {
	detail::check_rows(rows);
	const std::size_t k = rows.size();
	std::vector<double> rmsse(k), mae(k);
	for (std::size_t i = 0; i < k; ++i) {
		rmsse[i] = detail::require(rows[i], rows[i].rmsse_h, "rmsse_h");
		mae[i] = detail::require(rows[i], rows[i].mae_h, "mae_h");
	}

	std::vector<std::size_t> order(k);
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::size_t chosen = 0;

	if (structure.classification == DemandClass::Regular) {
		std::vector<double> smape(k), abs_bias(k);
		for (std::size_t i = 0; i < k; ++i) {
			smape[i] = detail::require(rows[i], rows[i].smape, "smape");
			abs_bias[i] = std::abs(detail::require(rows[i], rows[i].bias, "bias"));
		}
		std::vector<pareto::Point> points;
		points.reserve(k);
		for (std::size_t i = 0; i < k; ++i) {
			points.push_back({rows[i].model_id, rmsse[i], mae[i]});
		}
		const std::vector<int> tier = pareto::pareto_tiers(points);
		std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
			return std::tie(tier[a], rmsse[a], mae[a], rows[a].model_id) <
			       std::tie(tier[b], rmsse[b], mae[b], rows[b].model_id);
		});

		std::vector<std::size_t> candidates;
		if (options.ahsiv_full_front_variant) {
			for (std::size_t i : order) {
				if (tier[i] == 0) {
					candidates.push_back(i);
				}
			}
			chosen = *std::min_element(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
				return std::tie(abs_bias[a], smape[a], rows[a].model_id) <
				       std::tie(abs_bias[b], smape[b], rows[b].model_id);
			});
		} else {
			// The two best-ordered front members; a singleton front is its own
			// candidate set, so the choice never leaves the front.
			for (std::size_t i : order) {
				if (tier[i] == 0 && candidates.size() < 2) {
					candidates.push_back(i);
				}
			}
			std::stable_sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
				return std::tie(smape[a], rows[a].model_id) < std::tie(smape[b], rows[b].model_id);
			});
			// First minimum in sMAPE order wins ties on |bias|.
			chosen = *std::min_element(candidates.begin(), candidates.end(),
			                           [&](std::size_t a, std::size_t b) { return abs_bias[a] < abs_bias[b]; });
		}
	} else {
		std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
			return std::tie(rmsse[a], rows[a].model_id) < std::tie(rmsse[b], rows[b].model_id);
		});
		chosen = order.front();
	}

	std::vector<std::size_t> final_order{chosen};
	for (std::size_t i : order) {
		if (i != chosen) {
			final_order.push_back(i);
		}
	}
	std::vector<double> score(k, 0.0);
	for (std::size_t pos = 0; pos < k; ++pos) {
		score[final_order[pos]] = k == 1 ? 0.0 : static_cast<double>(pos) / static_cast<double>(k - 1);
	}
	return detail::from_order(SelectorKind::AHSIV, h, rows, final_order, score);
}

/// Rank aggregation over mae_h, rmse_h, mape (ascending) and r2 (descending).
/// A column takes part only when every model has it. Ties share the average
/// rank. F = 1 - (total - min) / (max - min), or 1 for everyone when all totals
/// agree; the chosen model maximizes F, ties by model_id.
inline SelectorResult select_era(const std::vector<ModelMetricsRow> &rows, int h, const SelectorOptions &options = {}) {
	detail::check_rows(rows);
	const std::size_t k = rows.size();

	auto column = [&](std::optional<double> ModelMetricsRow::*field) -> std::optional<std::vector<double>> {
		std::vector<double> values;
		values.reserve(k);
		for (const auto &r : rows) {
			const auto &v = r.*field;
			if (!v || !std::isfinite(*v)) {
				return std::nullopt;
			}
			values.push_back(*v);
		}
		return values;
	};

	std::vector<double> total(k, 0.0);
	bool any = false;
	auto add_ranks = [&](std::optional<std::vector<double>> values, bool descending) {
		if (!values) {
			return;
		}
		if (descending) {
			for (double &v : *values) {
				v = -v;
			}
		}
		const std::vector<double> ranks = numeric::fractional_ranks(*values);
		for (std::size_t i = 0; i < k; ++i) {
			total[i] += ranks[i];
		}
		any = true;
	};
	add_ranks(column(&ModelMetricsRow::mae_h), false);
	add_ranks(column(&ModelMetricsRow::rmse_h), false);
	if (!options.era_body_variant) {
		add_ranks(column(&ModelMetricsRow::mape), false);
	}
	add_ranks(column(&ModelMetricsRow::r2), true);
	if (!any) {
		throw Error(ErrorCode::NoUsableMetric, "ERA found none of mae_h, rmse_h, mape, r2 for every model");
	}

	const auto [lo, hi] = std::minmax_element(total.begin(), total.end());
	const double min_total = *lo;
	const double max_total = *hi;
	std::vector<double> score(k, 1.0);
	if (max_total > min_total) {
		for (std::size_t i = 0; i < k; ++i) {
			score[i] = 1.0 - (total[i] - min_total) / (max_total - min_total);
		}
	}
	std::vector<std::size_t> order(k);
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
		if (score[a] != score[b]) {
			return score[a] > score[b];
		}
		return rows[a].model_id < rows[b].model_id;
	});
	return detail::from_order(SelectorKind::ERA, h, rows, order, score);
}

inline SelectorResult run_selector(SelectorKind kind, const std::vector<ModelMetricsRow> &rows,
                                   const DemandStructure &structure, int h, const SelectorOptions &options = {}) {
	switch (kind) {
	case SelectorKind::RMSSE_h: return select_rmsse_h(rows, h);
	case SelectorKind::AHSIV: return select_ahsiv(rows, structure, h, options);
	case SelectorKind::ERA: return select_era(rows, h, options);
	}
	throw Error(ErrorCode::InvalidArgument, "unknown selector");
}

} // namespace horizonsel::select
