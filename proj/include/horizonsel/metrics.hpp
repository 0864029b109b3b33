#pragma once

#include "horizonsel/error.hpp"
#include "horizonsel/numeric.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

namespace horizonsel::metrics {

namespace detail {

inline void check_pair(std::span<const double> actual, std::span<const double> pred) {
	if (actual.size() != pred.size()) {
		throw Error(ErrorCode::LengthMismatch, "actual has " + std::to_string(actual.size()) +
		                                           " values but prediction has " + std::to_string(pred.size()));
	}
	numeric::require_nonempty(actual, "actual");
	numeric::require_finite(actual, "actual");
	numeric::require_finite(pred, "prediction");
}

} // namespace detail

inline double mae(std::span<const double> actual, std::span<const double> pred) {
	detail::check_pair(actual, pred);
	double total = 0.0;
	for (std::size_t i = 0; i < actual.size(); ++i) {
		total += std::abs(actual[i] - pred[i]);
	}
	return total / static_cast<double>(actual.size());
}

inline double rmse(std::span<const double> actual, std::span<const double> pred) {
	detail::check_pair(actual, pred);
	double total = 0.0;
	for (std::size_t i = 0; i < actual.size(); ++i) {
		const double e = actual[i] - pred[i];
		total += e * e;
	}
	return std::sqrt(total / static_cast<double>(actual.size()));
}

/// RMS of the one-step naive differences of the training slice; the RMSSE scale.
inline double naive_scale(std::span<const double> train) {
	if (train.size() < 2) {
		throw Error(ErrorCode::SeriesTooShort, "RMSSE scaling needs at least 2 training values");
	}
	numeric::require_finite(train, "train");
	double total = 0.0;
	for (std::size_t t = 1; t < train.size(); ++t) {
		const double d = train[t] - train[t - 1];
		total += d * d;
	}
	return std::sqrt(total / static_cast<double>(train.size() - 1));
}

/// Test RMSE divided by the in-sample naive scale of the training slice.
inline double rmsse(std::span<const double> train, std::span<const double> actual, std::span<const double> pred) {
	const double scale = naive_scale(train);
	const double num = rmse(actual, pred);
	if (scale == 0.0) {
		throw Error(ErrorCode::FlatTrainingSeries, "training slice has no first-difference variation");
	}
	return num / scale;
}

/// Percent. Zero actuals are skipped; absent when every actual is zero.
inline std::optional<double> mape(std::span<const double> actual, std::span<const double> pred) {
	detail::check_pair(actual, pred);
	double total = 0.0;
	std::size_t kept = 0;
	for (std::size_t i = 0; i < actual.size(); ++i) {
		if (actual[i] != 0.0) {
			total += std::abs((actual[i] - pred[i]) / actual[i]);
			++kept;
		}
	}
	if (kept == 0) {
		return std::nullopt;
	}
	return 100.0 * total / static_cast<double>(kept);
}

/// In [0, 2]; a 0/0 term counts as perfect agreement.
inline double smape(std::span<const double> actual, std::span<const double> pred) {
	detail::check_pair(actual, pred);
	double total = 0.0;
	for (std::size_t i = 0; i < actual.size(); ++i) {
		const double denom = std::abs(actual[i]) + std::abs(pred[i]);
		if (denom > 0.0) {
			total += 2.0 * std::abs(actual[i] - pred[i]) / denom;
		}
	}
	return total / static_cast<double>(actual.size());
}

inline std::optional<double> r2(std::span<const double> actual, std::span<const double> pred) {
	detail::check_pair(actual, pred);
	const double m = numeric::mean(actual);
	double sse = 0.0;
	double sst = 0.0;
	for (std::size_t i = 0; i < actual.size(); ++i) {
		sse += (actual[i] - pred[i]) * (actual[i] - pred[i]);
		sst += (actual[i] - m) * (actual[i] - m);
	}
	if (sst == 0.0) {
		return std::nullopt;
	}
	return 1.0 - sse / sst;
}

/// Mean of actual - predicted: negative means the model overestimates.
inline double bias(std::span<const double> actual, std::span<const double> pred) {
	detail::check_pair(actual, pred);
	double total = 0.0;
	for (std::size_t i = 0; i < actual.size(); ++i) {
		total += actual[i] - pred[i];
	}
	return total / static_cast<double>(actual.size());
}

/// Global relative accuracy: 1 - |sum(pred) - sum(actual)| / sum(actual).
/// Bounded above by 1, unbounded below.
inline double gra(std::span<const double> actual, std::span<const double> pred) {
	detail::check_pair(actual, pred);
	const double total_actual = numeric::sum(actual);
	if (!(total_actual > 0.0)) {
		throw Error(ErrorCode::ZeroTotalDemand, "GRA undefined when total actual demand is not positive");
	}
	return 1.0 - std::abs(numeric::sum(pred) - total_actual) / total_actual;
}

struct MetricSet {
	double mae = 0.0;
	double rmse = 0.0;
	double rmsse = 0.0;
	std::optional<double> mape;
	double smape = 0.0;
	std::optional<double> r2;
	double bias = 0.0;
};

/// All seven test-set metrics. Throws FlatTrainingSeries when RMSSE has no scale.
inline MetricSet compute_metric_set(std::span<const double> train, std::span<const double> actual,
                                    std::span<const double> pred) {
	MetricSet out;
	out.mae = mae(actual, pred);
	out.rmse = rmse(actual, pred);
	out.rmsse = rmsse(train, actual, pred);
	out.mape = mape(actual, pred);
	out.smape = smape(actual, pred);
	out.r2 = r2(actual, pred);
	out.bias = bias(actual, pred);
	return out;
}

} // namespace horizonsel::metrics
