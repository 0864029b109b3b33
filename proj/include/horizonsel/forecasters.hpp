#pragma once

#include "horizonsel/error.hpp"
#include "horizonsel/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace horizonsel::forecast {

enum class ForecasterKind { Naive, SeasonalNaive, Drift, MovingAverage, SES };

/// A candidate model. `window` applies to MovingAverage; `ses_alpha` to SES
/// (absent selects the smoothing level from the grid by in-sample error).
struct ForecasterSpec {
	ForecasterKind kind = ForecasterKind::Naive;
	int window = 3;
	std::optional<double> ses_alpha;
	int seasonal_period = 1;

	static ForecasterSpec naive() {
		ForecasterSpec s;
		s.kind = ForecasterKind::Naive;
		return s;
	}
	static ForecasterSpec seasonal_naive(int period) {
		ForecasterSpec s;
		s.kind = ForecasterKind::SeasonalNaive;
		s.seasonal_period = period;
		return s;
	}
	static ForecasterSpec drift() {
		ForecasterSpec s;
		s.kind = ForecasterKind::Drift;
		return s;
	}
	static ForecasterSpec moving_average(int window) {
		ForecasterSpec s;
		s.kind = ForecasterKind::MovingAverage;
		s.window = window;
		return s;
	}
	static ForecasterSpec ses(std::optional<double> alpha = std::nullopt) {
		ForecasterSpec s;
		s.kind = ForecasterKind::SES;
		s.ses_alpha = alpha;
		return s;
	}

	void validate() const {
		if (kind == ForecasterKind::MovingAverage && window < 1) {
			throw Error(ErrorCode::InvalidParams, "moving average window must be >= 1");
		}
		if (kind == ForecasterKind::SES && ses_alpha && !(*ses_alpha >= 0.01 && *ses_alpha <= 0.9)) {
			throw Error(ErrorCode::InvalidParams, "SES smoothing level must lie in [0.01, 0.9]");
		}
		if (kind == ForecasterKind::SeasonalNaive && seasonal_period < 1) {
			throw Error(ErrorCode::InvalidParams, "seasonal period must be >= 1");
		}
	}

	/// Stable identifier used as model_id in every table.
	std::string id() const {
		switch (kind) {
		case ForecasterKind::Naive: return "Naive";
		case ForecasterKind::SeasonalNaive: return "SeasonalNaive";
		case ForecasterKind::Drift: return "Drift";
		case ForecasterKind::MovingAverage: return "MovingAverage(w=" + std::to_string(window) + ")";
		case ForecasterKind::SES: {
			if (!ses_alpha) {
				return "SES(alpha=auto)";
			}
			char buf[32];
			std::snprintf(buf, sizeof buf, "SES(alpha=%.2f)", *ses_alpha);
			return buf;
		}
		}
		return "Unknown";
	}
};

/// 0.01, then 0.05 to 0.9 in steps of 0.05.
inline constexpr std::array<double, 19> kSesGrid = {0.01, 0.05, 0.1,  0.15, 0.2,  0.25, 0.3,  0.35, 0.4, 0.45,
                                                    0.5,  0.55, 0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9};

/// Final SES level with l_1 = y_1 and l_t = a*y_t + (1-a)*l_{t-1}.
inline double ses_level(std::span<const double> history, double alpha) {
	double level = history[0];
	for (std::size_t t = 1; t < history.size(); ++t) {
		level = alpha * history[t] + (1.0 - alpha) * level;
	}
	return level;
}

/// In-sample one-step squared error of SES: y_t predicted by l_{t-1}, t >= 2.
inline double ses_sse(std::span<const double> history, double alpha) {
	double level = history[0];
	double sse = 0.0;
	for (std::size_t t = 1; t < history.size(); ++t) {
		const double e = history[t] - level;
		sse += e * e;
		level = alpha * history[t] + (1.0 - alpha) * level;
	}
	return sse;
}

/// Grid search; ties keep the smaller smoothing level.
inline double ses_select_alpha(std::span<const double> history) {
	double best_alpha = kSesGrid.front();
	double best_sse = ses_sse(history, best_alpha);
	for (std::size_t i = 1; i < kSesGrid.size(); ++i) {
		const double sse = ses_sse(history, kSesGrid[i]);
		if (sse < best_sse) {
			best_sse = sse;
			best_alpha = kSesGrid[i];
		}
	}
	return best_alpha;
}

/// Fixed-origin n-step forecast computed from `history` only.
inline std::vector<double> fit_forecast(const ForecasterSpec &spec, std::span<const double> history, int n) {
	spec.validate();
	if (n < 1) {
		throw Error(ErrorCode::InvalidHorizon, "forecast length must be >= 1");
	}
	numeric::require_finite(history, "history");
	if (history.size() < 2) {
		throw Error(ErrorCode::HistoryTooShort, spec.id() + " needs at least 2 observations");
	}
	const auto steps = static_cast<std::size_t>(n);
	const std::size_t len = history.size();
	std::vector<double> out(steps);

	switch (spec.kind) {
	case ForecasterKind::Naive:
		std::fill(out.begin(), out.end(), history.back());
		break;
	case ForecasterKind::SeasonalNaive: {
		const auto m = static_cast<std::size_t>(spec.seasonal_period);
		if (len < m) {
			throw Error(ErrorCode::HistoryTooShort, "SeasonalNaive needs at least one full season of history");
		}
		// y_{T+k} = y_{T+k-m*ceil(k/m)}: the matching position in the last season.
		for (std::size_t k = 1; k <= steps; ++k) {
			const std::size_t back = m * ((k + m - 1) / m);
			out[k - 1] = history[len + k - back - 1];
		}
		break;
	}
	case ForecasterKind::Drift: {
		const double slope = (history.back() - history.front()) / static_cast<double>(len - 1);
		for (std::size_t k = 1; k <= steps; ++k) {
			out[k - 1] = history.back() + static_cast<double>(k) * slope;
		}
		break;
	}
	case ForecasterKind::MovingAverage: {
		const auto w = static_cast<std::size_t>(spec.window);
		if (len < w) {
			throw Error(ErrorCode::HistoryTooShort, spec.id() + " needs at least w observations");
		}
		std::fill(out.begin(), out.end(), numeric::mean(history.subspan(len - w)));
		break;
	}
	case ForecasterKind::SES: {
		const double alpha = spec.ses_alpha ? *spec.ses_alpha : ses_select_alpha(history);
		std::fill(out.begin(), out.end(), ses_level(history, alpha));
		break;
	}
	}
	return out;
}

} // namespace horizonsel::forecast
