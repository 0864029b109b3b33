#pragma once

#include "horizonsel/error.hpp"
#include "horizonsel/series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace horizonsel::synthetic {

enum class SeriesKind { StableSeasonal, Intermittent, Lumpy, Trending, Explosive };

constexpr std::string_view to_string(SeriesKind k) noexcept {
	switch (k) {
	case SeriesKind::StableSeasonal: return "stable_seasonal";
	case SeriesKind::Intermittent: return "intermittent";
	case SeriesKind::Lumpy: return "lumpy";
	case SeriesKind::Trending: return "trending";
	case SeriesKind::Explosive: return "explosive";
	}
	return "unknown";
}

inline std::optional<SeriesKind> kind_from_string(std::string_view name) noexcept {
	for (auto k : {SeriesKind::StableSeasonal, SeriesKind::Intermittent, SeriesKind::Lumpy, SeriesKind::Trending,
	               SeriesKind::Explosive}) {
		if (to_string(k) == name) {
			return k;
		}
	}
	return std::nullopt;
}

struct SyntheticParams {
	int period = 12;
	double level = 100.0;
	double amplitude = 0.3;  ///< seasonal swing as a share of level
	double noise = 0.05;     ///< bounded multiplicative noise half-width
	double q = 0.3;          ///< demand occurrence probability
	double slope = 1.0;      ///< trend per period, in units
	double volatility = 0.1; ///< log-step sd of the explosive walk

	void validate() const {
		if (period < 1) {
			throw Error(ErrorCode::InvalidParams, "period must be >= 1");
		}
		if (!(level > 0.0)) {
			throw Error(ErrorCode::InvalidParams, "level must be > 0");
		}
		if (!(amplitude >= 0.0 && amplitude < 1.0)) {
			throw Error(ErrorCode::InvalidParams, "amplitude must lie in [0, 1)");
		}
		if (!(noise >= 0.0 && noise < 1.0)) {
			throw Error(ErrorCode::InvalidParams, "noise must lie in [0, 1)");
		}
		if (!(q > 0.0 && q <= 1.0)) {
			throw Error(ErrorCode::InvalidParams, "q must lie in (0, 1]");
		}
		if (!(volatility >= 0.0)) {
			throw Error(ErrorCode::InvalidParams, "volatility must be >= 0");
		}
	}
};

/// Deterministic stream of uniforms and normals on top of mt19937_64. The
/// conversions are spelled out so that a seed yields the same series on every
/// standard library implementation.
class Stream {
public:
	explicit Stream(std::uint64_t seed) : engine_(seed) {
	}

	/// Uniform on [0, 1) with 53 random bits.
	double uniform() {
		return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
	}

	/// Box-Muller; one normal per call.
	double normal() {
		const double u1 = 1.0 - uniform(); // (0, 1]
		const double u2 = uniform();
		return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
	}

	bool bernoulli(double p) {
		return uniform() < p;
	}

private:
	std::mt19937_64 engine_;
};

/// Seed for the index-th series of a corpus; splitmix64 finalizer over both inputs.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
	std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
	z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
	z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
	return z ^ (z >> 31);
}

inline DemandSeries generate_synthetic(SeriesKind kind, int length, std::uint64_t seed, const SyntheticParams &params = {},
                                       std::string id = {}) {
	if (length < 20) {
		throw Error(ErrorCode::InvalidParams, "synthetic series need T >= 20");
	}
	params.validate();
	if (id.empty()) {
		id = std::string(to_string(kind)) + "_" + std::to_string(seed);
	}
	Stream rng(seed);
	const auto n = static_cast<std::size_t>(length);
	std::vector<double> y(n);

	switch (kind) {
	case SeriesKind::StableSeasonal: {
		// One season is tabulated so that noiseless series repeat bit-for-bit.
		std::vector<double> season(static_cast<std::size_t>(params.period));
		for (std::size_t k = 0; k < season.size(); ++k) {
			season[k] = params.level *
			            (1.0 + params.amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(k) /
			                                               static_cast<double>(params.period)));
		}
		for (std::size_t t = 0; t < n; ++t) {
			const double base = season[t % season.size()];
			y[t] = params.noise == 0.0 ? base : base * (1.0 + params.noise * (2.0 * rng.uniform() - 1.0));
		}
		break;
	}
	case SeriesKind::Intermittent:
		for (auto &v : y) {
			const bool occurs = rng.bernoulli(params.q);
			const double size = params.level * (0.5 + rng.uniform());
			v = occurs ? size : 0.0;
		}
		break;
	case SeriesKind::Lumpy:
		for (auto &v : y) {
			const bool occurs = rng.bernoulli(params.q);
			const double size = params.level * std::exp(1.5 * rng.normal());
			v = occurs ? size : 0.0;
		}
		break;
	case SeriesKind::Trending:
		for (std::size_t t = 0; t < n; ++t) {
			const double base = params.level + params.slope * static_cast<double>(t);
			y[t] = std::max(0.0, base * (1.0 + params.noise * (2.0 * rng.uniform() - 1.0)));
		}
		break;
	case SeriesKind::Explosive: {
		double level = params.level;
		for (auto &v : y) {
			level *= std::exp(params.volatility * rng.normal());
			v = level;
		}
		break;
	}
	}
	return DemandSeries(std::move(id), std::move(y), params.period);
}

inline constexpr std::array<SeriesKind, 5> kMixedRotation = {SeriesKind::StableSeasonal, SeriesKind::Trending,
                                                             SeriesKind::Intermittent, SeriesKind::Lumpy,
                                                             SeriesKind::Explosive};

/// `count` series of one kind, or of every kind in rotation when kind is
/// "mixed". Ids are zero-padded so that lexical order equals generation order.
inline std::vector<DemandSeries> generate_corpus(std::string_view kind, int count, int length, std::uint64_t seed,
                                                 const SyntheticParams &params = {}) {
	if (count < 1) {
		throw Error(ErrorCode::InvalidParams, "count must be >= 1");
	}
	const bool mixed = kind == "mixed";
	const auto single = kind_from_string(kind);
	if (!mixed && !single) {
		throw Error(ErrorCode::InvalidParams, "unknown series kind '" + std::string(kind) + "'");
	}
	std::vector<DemandSeries> out;
	out.reserve(static_cast<std::size_t>(count));
	for (int i = 0; i < count; ++i) {
		const SeriesKind k = mixed ? kMixedRotation[static_cast<std::size_t>(i) % kMixedRotation.size()] : *single;
		char id[64];
		std::snprintf(id, sizeof id, "S%05d_%s", i, std::string(to_string(k)).c_str());
		out.push_back(generate_synthetic(k, length, derive_seed(seed, static_cast<std::uint64_t>(i)), params, id));
	}
	return out;
}

} // namespace horizonsel::synthetic
