#pragma once

// Metric degradation by forecast horizon: regime-gated power-law projection
// of a test-horizon error metric to a future horizon,
//   E(h_future) = E(h_test) * (h_future / h_test)^alpha   (Stable regime only).

#include "horizonsel/error.hpp"
#include "horizonsel/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace horizonsel::mdfh {

enum class RegimeKind { Stable, Biased, Explosive };

constexpr std::string_view to_string(RegimeKind k) noexcept {
	switch (k) {
	case RegimeKind::Stable: return "Stable";
	case RegimeKind::Biased: return "Biased";
	case RegimeKind::Explosive: return "Explosive";
	}
	return "Unknown";
}

struct StructuralRegime {
	RegimeKind kind = RegimeKind::Stable;
	double cv_delta = 0.0;
	double second_diff_mean = 0.0;
};

inline constexpr double kStableCv = 0.2;
inline constexpr double kStableSecondDiffShare = 0.1;
inline constexpr double kBiasedCv = 0.5;
inline constexpr double kFallbackAlpha = 0.5;

/// Classifies a trajectory from the dispersion of its absolute increments and
/// the mean magnitude of its second differences. A flat trajectory is Stable.
inline StructuralRegime diagnose_regime(std::span<const double> trajectory) {
	if (trajectory.size() < 2) {
		throw Error(ErrorCode::TrajectoryTooShort, "regime diagnosis needs at least 2 points");
	}
	const std::vector<double> delta = numeric::diff(trajectory);
	std::vector<double> abs_delta(delta.size());
	std::transform(delta.begin(), delta.end(), abs_delta.begin(), [](double d) { return std::abs(d); });

	StructuralRegime out;
	const std::vector<double> second = numeric::diff(delta);
	if (!second.empty()) {
		double total = 0.0;
		for (double d : second) {
			total += std::abs(d);
		}
		out.second_diff_mean = total / static_cast<double>(second.size());
	}

	const double mean_abs = numeric::mean(abs_delta);
	if (mean_abs == 0.0) {
		out.kind = RegimeKind::Stable;
		out.cv_delta = 0.0;
		return out;
	}
	out.cv_delta = numeric::popstd(abs_delta) / mean_abs;
	if (out.cv_delta < kStableCv && out.second_diff_mean < kStableSecondDiffShare * mean_abs) {
		out.kind = RegimeKind::Stable;
	} else if (out.cv_delta < kBiasedCv) {
		out.kind = RegimeKind::Biased;
	} else {
		out.kind = RegimeKind::Explosive;
	}
	return out;
}

enum class AlphaSource { Empirical, Fallback };

constexpr std::string_view to_string(AlphaSource s) noexcept {
	return s == AlphaSource::Empirical ? "Empirical" : "Fallback";
}

struct AlphaBounds {
	double min = 0.3;
	double max = 0.9;
};

struct DegradationParams {
	double alpha = kFallbackAlpha;
	AlphaSource source = AlphaSource::Fallback;
	int block_size = 3;
	AlphaBounds bounds{};
};

/// Degradation exponent from the growth of block-median absolute errors across
/// the test horizon: ln(e_K / e_1) / ln(h_K / h_1), clipped to the bounds.
/// Falls back to 0.5 when the test window is too short or the ratio is not finite.
inline DegradationParams estimate_alpha(std::span<const double> test_actual, std::span<const double> test_pred,
                                        int block_size = 3, AlphaBounds bounds = {}) {
	if (test_actual.size() != test_pred.size()) {
		throw Error(ErrorCode::LengthMismatch, "test actual and prediction lengths differ");
	}
	if (block_size < 1) {
		throw Error(ErrorCode::InvalidArgument, "block_size must be >= 1");
	}
	if (!(bounds.min <= bounds.max)) {
		throw Error(ErrorCode::InvalidArgument, "alpha bounds must satisfy min <= max");
	}
	DegradationParams out;
	out.block_size = block_size;
	out.bounds = bounds;

	const auto block = static_cast<std::size_t>(block_size);
	if (test_actual.size() < 2 * block) {
		return out;
	}
	const std::size_t n_blocks = test_actual.size() / block;

	auto block_median = [&](std::size_t k) {
		std::vector<double> errs;
		errs.reserve(block);
		for (std::size_t i = k * block; i < (k + 1) * block; ++i) {
			errs.push_back(std::abs(test_actual[i] - test_pred[i]));
		}
		return numeric::median(errs);
	};
	// Mean of the 1-based step indices k*b+1 .. (k+1)*b.
	auto block_horizon = [&](std::size_t k) {
		return static_cast<double>(k * block) + 0.5 * static_cast<double>(block + 1);
	};

	const double first_err = block_median(0);
	const double last_err = block_median(n_blocks - 1);
	if (!(first_err > 0.0) || !std::isfinite(first_err) || !std::isfinite(last_err)) {
		return out;
	}
	const double raw = std::log(last_err / first_err) / std::log(block_horizon(n_blocks - 1) / block_horizon(0));
	if (!std::isfinite(raw)) {
		return out;
	}
	out.alpha = std::clamp(raw, bounds.min, bounds.max);
	out.source = AlphaSource::Empirical;
	return out;
}

enum class MetricKind { MAE, RMSE, RMSSE, Other };

/// Projects a test-horizon metric to h_future. Identity unless the trajectory is
/// diagnosed Stable and the metric is MAE, RMSE or RMSSE.
inline double adjust_metric(std::span<const double> trajectory, double metric_value, int h_test, int h_future,
                            MetricKind kind, const DegradationParams &params) {
	if (h_test < 1 || h_future < 1) {
		throw Error(ErrorCode::InvalidHorizon, "horizons must be >= 1");
	}
	if (trajectory.size() < 2 || kind == MetricKind::Other) {
		return metric_value;
	}
	if (diagnose_regime(trajectory).kind != RegimeKind::Stable) {
		return metric_value;
	}
	return metric_value * std::pow(static_cast<double>(h_future) / static_cast<double>(h_test), params.alpha);
}

/// Same projection with the regime already diagnosed; used when one diagnosis
/// serves many horizons and metrics.
inline double adjust_metric(const StructuralRegime &regime, double metric_value, int h_test, int h_future,
                            MetricKind kind, const DegradationParams &params) {
	if (h_test < 1 || h_future < 1) {
		throw Error(ErrorCode::InvalidHorizon, "horizons must be >= 1");
	}
	if (kind == MetricKind::Other || regime.kind != RegimeKind::Stable) {
		return metric_value;
	}
	return metric_value * std::pow(static_cast<double>(h_future) / static_cast<double>(h_test), params.alpha);
}

} // namespace horizonsel::mdfh
