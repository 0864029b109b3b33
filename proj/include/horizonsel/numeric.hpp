#pragma once

#include "horizonsel/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

namespace horizonsel::numeric {

inline void require_nonempty(std::span<const double> values, const char *what) {
	if (values.empty()) {
		throw Error(ErrorCode::EmptyInput, std::string(what) + " is empty");
	}
}

inline void require_finite(std::span<const double> values, const char *what) {
	for (double v : values) {
		if (!std::isfinite(v)) {
			throw Error(ErrorCode::NonFiniteValue, std::string(what) + " contains a non-finite value");
		}
	}
}

inline double sum(std::span<const double> values) {
	return std::accumulate(values.begin(), values.end(), 0.0);
}

inline double mean(std::span<const double> values) {
	require_nonempty(values, "mean input");
	return sum(values) / static_cast<double>(values.size());
}

/// Population standard deviation (divides by n). Every coefficient of
/// variation in the library goes through this helper.
inline double popstd(std::span<const double> values) {
	const double m = mean(values);
	double ss = 0.0;
	for (double v : values) {
		ss += (v - m) * (v - m);
	}
	return std::sqrt(ss / static_cast<double>(values.size()));
}

/// Linear-interpolation quantile on the sorted sample (inclusive definition,
/// position q*(n-1)); matches the NumPy default.
inline double quantile_sorted(std::span<const double> sorted, double q) {
	require_nonempty(sorted, "quantile input");
	const double pos = q * static_cast<double>(sorted.size() - 1);
	const auto lo = static_cast<std::size_t>(std::floor(pos));
	const auto hi = std::min(lo + 1, sorted.size() - 1);
	const double frac = pos - static_cast<double>(lo);
	return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline double quantile(std::span<const double> values, double q) {
	std::vector<double> sorted(values.begin(), values.end());
	std::sort(sorted.begin(), sorted.end());
	return quantile_sorted(sorted, q);
}

inline double median(std::span<const double> values) {
	return quantile(values, 0.5);
}

/// Median absolute deviation about the median, unscaled.
inline double mad(std::span<const double> values) {
	const double med = median(values);
	std::vector<double> dev;
	dev.reserve(values.size());
	for (double v : values) {
		dev.push_back(std::abs(v - med));
	}
	return median(dev);
}

inline std::vector<double> diff(std::span<const double> values) {
	std::vector<double> out;
	if (values.size() < 2) {
		return out;
	}
	out.reserve(values.size() - 1);
	for (std::size_t i = 1; i < values.size(); ++i) {
		out.push_back(values[i] - values[i - 1]);
	}
	return out;
}

/// 1-based ranks where tied values share the average of the ranks they span.
inline std::vector<double> fractional_ranks(std::span<const double> values) {
	const std::size_t n = values.size();
	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::stable_sort(order.begin(), order.end(),
	                 [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
	std::vector<double> ranks(n);
	std::size_t i = 0;
	while (i < n) {
		std::size_t j = i + 1;
		while (j < n && values[order[j]] == values[order[i]]) {
			++j;
		}
		const double avg = 0.5 * static_cast<double>(i + 1 + j);
		for (std::size_t k = i; k < j; ++k) {
			ranks[order[k]] = avg;
		}
		i = j;
	}
	return ranks;
}

/// Sum of t^3 - t over groups of tied values.
inline double tie_sum(std::span<const double> values) {
	std::vector<double> sorted(values.begin(), values.end());
	std::sort(sorted.begin(), sorted.end());
	double total = 0.0;
	std::size_t i = 0;
	while (i < sorted.size()) {
		std::size_t j = i + 1;
		while (j < sorted.size() && sorted[j] == sorted[i]) {
			++j;
		}
		const auto t = static_cast<double>(j - i);
		total += t * t * t - t;
		i = j;
	}
	return total;
}

} // namespace horizonsel::numeric
