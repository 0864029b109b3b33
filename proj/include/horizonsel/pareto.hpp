#pragma once

#include "horizonsel/error.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace horizonsel::pareto {

/// A two-objective point to be minimized on both coordinates.
struct Point {
	std::string id;
	double first = 0.0;
	double second = 0.0;
};

/// a dominates b: no worse on both objectives, strictly better on one.
inline bool dominates(const Point &a, const Point &b) noexcept {
	return a.first <= b.first && a.second <= b.second && (a.first < b.first || a.second < b.second);
}

namespace detail {

inline void check(const std::vector<Point> &points) {
	if (points.empty()) {
		throw Error(ErrorCode::EmptyInput, "Pareto analysis needs at least one point");
	}
	for (const auto &p : points) {
		if (!std::isfinite(p.first) || !std::isfinite(p.second)) {
			throw Error(ErrorCode::NonFiniteValue, "point '" + p.id + "' has a non-finite coordinate");
		}
	}
}

} // namespace detail

/// Indices of the non-dominated points, in input order.
inline std::vector<std::size_t> front_indices(const std::vector<Point> &points) {
	detail::check(points);
	std::vector<std::size_t> out;
	for (std::size_t i = 0; i < points.size(); ++i) {
		bool dominated = false;
		for (std::size_t j = 0; j < points.size() && !dominated; ++j) {
			dominated = j != i && dominates(points[j], points[i]);
		}
		if (!dominated) {
			out.push_back(i);
		}
	}
	return out;
}

inline std::vector<std::string> pareto_front(const std::vector<Point> &points) {
	std::vector<std::string> ids;
	for (std::size_t i : front_indices(points)) {
		ids.push_back(points[i].id);
	}
	return ids;
}

/// Non-dominated sorting by repeated peeling: tier 0 is the front of all
/// points, tier k the front of what remains after removing tiers < k.
/// Result is indexed like `points`.
inline std::vector<int> pareto_tiers(const std::vector<Point> &points) {
	detail::check(points);
	const std::size_t n = points.size();
	std::vector<int> tier(n, -1);
	std::size_t assigned = 0;
	for (int level = 0; assigned < n; ++level) {
		std::vector<std::size_t> current;
		for (std::size_t i = 0; i < n; ++i) {
			if (tier[i] != -1) {
				continue;
			}
			bool dominated = false;
			for (std::size_t j = 0; j < n && !dominated; ++j) {
				dominated = j != i && tier[j] == -1 && dominates(points[j], points[i]);
			}
			if (!dominated) {
				current.push_back(i);
			}
		}
		for (std::size_t i : current) {
			tier[i] = level;
		}
		assigned += current.size();
	}
	return tier;
}

} // namespace horizonsel::pareto
