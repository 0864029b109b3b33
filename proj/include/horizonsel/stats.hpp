#pragma once

#include "horizonsel/error.hpp"
#include "horizonsel/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace horizonsel::stats {

// Regularized incomplete gamma functions. The series converges quickly for
// x < a + 1; the Lentz continued fraction covers the rest. Both iterate to
// machine precision.

inline double gamma_p_series(double a, double x) {
	double term = 1.0 / a;
	double total = term;
	for (int n = 1; n < 1000; ++n) {
		term *= x / (a + n);
		total += term;
		if (std::abs(term) < std::abs(total) * 1e-16) {
			break;
		}
	}
	return total * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

inline double gamma_q_continued_fraction(double a, double x) {
	constexpr double tiny = 1e-300;
	double b = x + 1.0 - a;
	double c = 1.0 / tiny;
	double d = 1.0 / b;
	double h = d;
	for (int i = 1; i < 1000; ++i) {
		const double an = -i * (i - a);
		b += 2.0;
		d = an * d + b;
		if (std::abs(d) < tiny) {
			d = tiny;
		}
		c = b + an / c;
		if (std::abs(c) < tiny) {
			c = tiny;
		}
		d = 1.0 / d;
		const double delta = d * c;
		h *= delta;
		if (std::abs(delta - 1.0) < 1e-16) {
			break;
		}
	}
	return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

/// Upper regularized incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
inline double gamma_q(double a, double x) {
	if (!(a > 0.0) || x < 0.0) {
		throw Error(ErrorCode::InvalidArgument, "gamma_q needs a > 0 and x >= 0");
	}
	if (x == 0.0) {
		return 1.0;
	}
	if (x < a + 1.0) {
		return 1.0 - gamma_p_series(a, x);
	}
	return gamma_q_continued_fraction(a, x);
}

/// Upper tail of the chi-square distribution.
inline double chi_square_sf(double statistic, double dof) {
	if (statistic <= 0.0) {
		return 1.0;
	}
	return gamma_q(0.5 * dof, 0.5 * statistic);
}

/// Two-sided standard normal tail probability of |z|.
inline double normal_two_sided(double z) {
	return std::erfc(std::abs(z) / std::sqrt(2.0));
}

struct Group {
	std::string label;
	std::vector<double> values;
};

/// Labelled samples; at least two nonempty groups and three values overall.
class GroupedSample {
public:
	explicit GroupedSample(std::vector<Group> groups) : groups_(std::move(groups)) {
		if (groups_.size() < 2) {
			throw Error(ErrorCode::InvalidArgument, "need at least two groups");
		}
		std::size_t total = 0;
		for (const auto &g : groups_) {
			if (g.values.empty()) {
				throw Error(ErrorCode::EmptyInput, "group '" + g.label + "' is empty");
			}
			numeric::require_finite(g.values, "group values");
			total += g.values.size();
		}
		if (total < 3) {
			throw Error(ErrorCode::InvalidArgument, "need at least three observations overall");
		}
	}

	const std::vector<Group> &groups() const noexcept {
		return groups_;
	}

	std::size_t total_size() const noexcept {
		std::size_t n = 0;
		for (const auto &g : groups_) {
			n += g.values.size();
		}
		return n;
	}

	std::vector<double> pooled() const {
		std::vector<double> out;
		for (const auto &g : groups_) {
			out.insert(out.end(), g.values.begin(), g.values.end());
		}
		return out;
	}

private:
	std::vector<Group> groups_;
};

namespace detail {

struct RankSummary {
	std::vector<double> mean_rank;
	std::vector<double> sizes;
	double n = 0.0;
	double ties = 0.0; ///< sum of t^3 - t
};

inline RankSummary rank_summary(const GroupedSample &sample) {
	const std::vector<double> pooled = sample.pooled();
	const std::vector<double> ranks = numeric::fractional_ranks(pooled);
	RankSummary out;
	out.n = static_cast<double>(pooled.size());
	out.ties = numeric::tie_sum(pooled);
	std::size_t offset = 0;
	for (const auto &g : sample.groups()) {
		double total = 0.0;
		for (std::size_t i = 0; i < g.values.size(); ++i) {
			total += ranks[offset + i];
		}
		out.mean_rank.push_back(total / static_cast<double>(g.values.size()));
		out.sizes.push_back(static_cast<double>(g.values.size()));
		offset += g.values.size();
	}
	return out;
}

} // namespace detail

struct KruskalWallis {
	double h = 0.0;
	double p_value = 1.0;
	bool degenerate = false;
};

/// Tie-corrected Kruskal-Wallis H with a chi-square (g - 1 dof) p-value.
/// All pooled values identical: reported as H = 0, p = 1, degenerate.
inline KruskalWallis kruskal_wallis(const GroupedSample &sample) {
	const auto s = detail::rank_summary(sample);
	const double n = s.n;
	const double correction = 1.0 - s.ties / (n * n * n - n);
	KruskalWallis out;
	if (correction <= 0.0) {
		out.degenerate = true;
		return out;
	}
	double weighted = 0.0;
	for (std::size_t g = 0; g < s.mean_rank.size(); ++g) {
		weighted += s.sizes[g] * s.mean_rank[g] * s.mean_rank[g];
	}
	const double raw = 12.0 / (n * (n + 1.0)) * weighted - 3.0 * (n + 1.0);
	out.h = std::max(0.0, raw / correction);
	out.p_value = chi_square_sf(out.h, static_cast<double>(s.mean_rank.size() - 1));
	return out;
}

struct PairwiseComparison {
	std::string label_a;
	std::string label_b;
	double z = 0.0;
	double p_raw = 1.0;
	double p_bonferroni = 1.0;
	bool significant = false;
};

/// Dunn's pairwise mean-rank test with tie-corrected variance and Bonferroni
/// adjustment over all C(g, 2) pairs. Pairs are listed in (i < j) group order.
inline std::vector<PairwiseComparison> dunn_posthoc(const GroupedSample &sample, double alpha = 0.05) {
	if (!(alpha > 0.0 && alpha < 1.0)) {
		throw Error(ErrorCode::InvalidArgument, "alpha must lie in (0, 1)");
	}
	const auto s = detail::rank_summary(sample);
	const auto &groups = sample.groups();
	const std::size_t g = groups.size();
	const double pairs = static_cast<double>(g * (g - 1) / 2);
	const double n = s.n;
	const double variance = n * (n + 1.0) / 12.0 - s.ties / (12.0 * (n - 1.0));

	std::vector<PairwiseComparison> out;
	for (std::size_t a = 0; a < g; ++a) {
		for (std::size_t b = a + 1; b < g; ++b) {
			PairwiseComparison cmp;
			cmp.label_a = groups[a].label;
			cmp.label_b = groups[b].label;
			if (variance > 0.0) {
				const double se = std::sqrt(variance * (1.0 / s.sizes[a] + 1.0 / s.sizes[b]));
				cmp.z = (s.mean_rank[a] - s.mean_rank[b]) / se;
				cmp.p_raw = std::min(1.0, normal_two_sided(cmp.z));
			}
			cmp.p_bonferroni = std::min(1.0, pairs * cmp.p_raw);
			cmp.significant = cmp.p_bonferroni < alpha;
			out.push_back(std::move(cmp));
		}
	}
	return out;
}

} // namespace horizonsel::stats
