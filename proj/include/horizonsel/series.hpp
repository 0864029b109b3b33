#pragma once

#include "horizonsel/error.hpp"
#include "horizonsel/numeric.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace horizonsel {

/// One SKU's observed demand history. Validated on construction.
class DemandSeries {
public:
	DemandSeries(std::string id, std::vector<double> values, int seasonal_period)
	    : id_(std::move(id)), values_(std::move(values)), seasonal_period_(seasonal_period) {
		if (values_.size() < 3) {
			throw Error(ErrorCode::SeriesTooShort, "series '" + id_ + "' needs at least 3 observations");
		}
		if (seasonal_period_ < 1) {
			throw Error(ErrorCode::InvalidArgument, "seasonal period must be >= 1");
		}
		for (double v : values_) {
			if (!std::isfinite(v)) {
				throw Error(ErrorCode::NonFiniteValue, "series '" + id_ + "' contains a non-finite value");
			}
			if (v < 0.0) {
				throw Error(ErrorCode::NegativeValue, "series '" + id_ + "' contains a negative value");
			}
		}
	}

	const std::string &id() const noexcept {
		return id_;
	}
	std::span<const double> values() const noexcept {
		return values_;
	}
	std::size_t size() const noexcept {
		return values_.size();
	}
	int seasonal_period() const noexcept {
		return seasonal_period_;
	}

private:
	std::string id_;
	std::vector<double> values_;
	int seasonal_period_;
};

struct SplitConfig {
	double train_ratio = 0.91;
	int future_horizon = 12;

	void validate() const {
		if (!(train_ratio > 0.0 && train_ratio < 1.0)) {
			throw Error(ErrorCode::InvalidArgument, "train_ratio must lie in (0, 1)");
		}
		if (future_horizon < 1) {
			throw Error(ErrorCode::InvalidArgument, "future horizon must be >= 1");
		}
	}
};

/// Contiguous train | test | future partition of a series, in original order.
struct EvaluationWindow {
	std::vector<double> train;
	std::vector<double> test;
	std::vector<double> future_actual;

	/// train followed by test: everything observed before the forecast origin.
	std::vector<double> observed() const {
		std::vector<double> out(train);
		out.insert(out.end(), test.begin(), test.end());
		return out;
	}
};

/// The last H values are reserved as the future segment; the remaining n
/// values split into floor(ratio * n) training and n - floor(ratio * n) test.
inline EvaluationWindow partition_series(const DemandSeries &series, const SplitConfig &cfg) {
	cfg.validate();
	const auto total = static_cast<long long>(series.size());
	const long long horizon = cfg.future_horizon;
	const long long observed = total - horizon;
	if (observed < 4) {
		throw Error(ErrorCode::SeriesTooShort, "series '" + series.id() + "' has " + std::to_string(total) +
		                                           " values; needs at least H + 4 = " +
		                                           std::to_string(horizon + 4));
	}
	// The epsilon absorbs representation error such as 0.7 * 10 = 7.000000000000001
	// without ever crossing an integer boundary for realistic lengths.
	const auto train_len = static_cast<long long>(std::floor(cfg.train_ratio * static_cast<double>(observed) + 1e-9));
	const long long test_len = observed - train_len;
	if (train_len < 2 || test_len < 1) {
		throw Error(ErrorCode::SeriesTooShort, "series '" + series.id() + "' cannot be split into train >= 2 and test >= 1");
	}
	const auto v = series.values();
	EvaluationWindow w;
	w.train.assign(v.begin(), v.begin() + train_len);
	w.test.assign(v.begin() + train_len, v.begin() + observed);
	w.future_actual.assign(v.begin() + observed, v.end());
	return w;
}

enum class DemandClass { Regular, IntermittentOrVariable };

constexpr std::string_view to_string(DemandClass c) noexcept {
	return c == DemandClass::Regular ? "Regular" : "IntermittentOrVariable";
}

struct DemandStructure {
	double p = 0.0;                     ///< share of periods with strictly positive demand
	std::optional<double> c;            ///< popstd / mean; absent when the mean is zero
	DemandClass classification = DemandClass::IntermittentOrVariable;
	bool zero_mean = false;
};

struct StructureThresholds {
	double p_star = 0.5;
	double c_star = 0.7;

	void validate() const {
		if (!(p_star > 0.0 && p_star < 1.0)) {
			throw Error(ErrorCode::InvalidArgument, "p_star must lie in (0, 1)");
		}
		if (!(c_star > 0.0)) {
			throw Error(ErrorCode::InvalidArgument, "c_star must be > 0");
		}
	}
};

/// Frequency/variability descriptors of a demand history. An all-zero history
/// has no defined c; it is flagged and routed to IntermittentOrVariable.
inline DemandStructure demand_structure(std::span<const double> values, StructureThresholds thresholds = {}) {
	thresholds.validate();
	numeric::require_nonempty(values, "demand history");
	DemandStructure out;
	std::size_t positive = 0;
	for (double v : values) {
		if (v > 0.0) {
			++positive;
		}
	}
	out.p = static_cast<double>(positive) / static_cast<double>(values.size());
	const double m = numeric::mean(values);
	if (m == 0.0) {
		out.zero_mean = true;
		out.classification = DemandClass::IntermittentOrVariable;
		return out;
	}
	out.c = numeric::popstd(values) / m;
	out.classification = (out.p >= thresholds.p_star && *out.c < thresholds.c_star) ? DemandClass::Regular
	                                                                                  : DemandClass::IntermittentOrVariable;
	return out;
}

inline DemandStructure demand_structure(const DemandSeries &series, StructureThresholds thresholds = {}) {
	return demand_structure(series.values(), thresholds);
}

} // namespace horizonsel
