#pragma once

#include "horizonsel/csv.hpp"
#include "horizonsel/error.hpp"
#include "horizonsel/forecasters.hpp"
#include "horizonsel/pipeline.hpp"
#include "horizonsel/selectors.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace horizonsel::config {

using KeyValues = std::map<std::string, std::string>;

/// Every key accepted in a config file or as a `--key value` flag.
inline const std::vector<std::string> &known_keys() {
	static const std::vector<std::string> keys = {
	    "input",          "output",        "seasonal_period",   "train_ratio",
	    "horizon",        "forecasters",   "selectors",         "era_body_variant",
	    "ahsiv_full_front_variant",        "mdfh.block_size",   "mdfh.alpha_min",
	    "mdfh.alpha_max", "mdfh.diagnosis_source",              "future_fit",
	    "p_star",         "c_star",        "seed",              "threads",
	    "strict",
	};
	return keys;
}

inline std::string trim(std::string_view s) {
	const auto first = s.find_first_not_of(" \t\r");
	if (first == std::string_view::npos) {
		return {};
	}
	const auto last = s.find_last_not_of(" \t\r");
	return std::string(s.substr(first, last - first + 1));
}

/// Flat `key = value` text; `#` starts a comment. Unknown keys are rejected.
inline KeyValues parse_config_text(std::string_view text, const std::string &origin = "config") {
	KeyValues out;
	std::size_t line_no = 0;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		const auto end = text.find('\n', pos);
		std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
		pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
		++line_no;
		if (const auto hash = line.find('#'); hash != std::string_view::npos) {
			line = line.substr(0, hash);
		}
		const std::string content = trim(line);
		if (content.empty()) {
			continue;
		}
		const auto eq = content.find('=');
		if (eq == std::string::npos) {
			throw Error(ErrorCode::ConfigError, origin + ":" + std::to_string(line_no) + ": expected key = value");
		}
		const std::string key = trim(std::string_view(content).substr(0, eq));
		const std::string value = trim(std::string_view(content).substr(eq + 1));
		if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
			throw Error(ErrorCode::ConfigError, origin + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
		}
		out[key] = value;
	}
	return out;
}

inline KeyValues load_config_file(const std::string &path) {
	std::ifstream in(path);
	if (!in) {
		throw Error(ErrorCode::IoError, "cannot open config '" + path + "'");
	}
	const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
	return parse_config_text(text, path);
}

inline std::vector<std::string> split_list(std::string_view text) {
	std::vector<std::string> out;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		const auto comma = text.find(',', pos);
		const std::string item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
		if (!item.empty()) {
			out.push_back(item);
		}
		if (comma == std::string_view::npos) {
			break;
		}
		pos = comma + 1;
	}
	return out;
}

/// `naive`, `seasonal_naive`, `drift`, `moving_average:W`, `ses:auto` or `ses:A`.
inline forecast::ForecasterSpec parse_forecaster(std::string_view text, int seasonal_period) {
	const auto colon = text.find(':');
	const std::string name(text.substr(0, colon));
	const std::string arg = colon == std::string_view::npos ? std::string{} : std::string(text.substr(colon + 1));
	auto fail = [&](const std::string &why) {
		return Error(ErrorCode::ConfigError, "forecasters: '" + std::string(text) + "': " + why);
	};
	if (name == "naive" && arg.empty()) {
		return forecast::ForecasterSpec::naive();
	}
	if (name == "seasonal_naive" && arg.empty()) {
		return forecast::ForecasterSpec::seasonal_naive(seasonal_period);
	}
	if (name == "drift" && arg.empty()) {
		return forecast::ForecasterSpec::drift();
	}
	if (name == "moving_average") {
		const auto w = csv::parse_int(arg.empty() ? "3" : arg);
		if (!w || *w < 1) {
			throw fail("window must be a positive integer");
		}
		return forecast::ForecasterSpec::moving_average(static_cast<int>(*w));
	}
	if (name == "ses") {
		if (arg.empty() || arg == "auto") {
			return forecast::ForecasterSpec::ses();
		}
		const auto a = csv::parse_double(arg);
		if (!a || *a < 0.01 || *a > 0.9) {
			throw fail("smoothing level must be 'auto' or lie in [0.01, 0.9]");
		}
		return forecast::ForecasterSpec::ses(*a);
	}
	throw fail("unknown forecaster");
}

inline constexpr const char *kDefaultForecasters = "naive,seasonal_naive,drift,moving_average:3,ses:auto";

struct RunConfig {
	std::string input;
	std::string output;
	int seasonal_period = 12;
	pipeline::PipelineOptions pipeline;
	std::uint64_t seed = 0;
	unsigned threads = 1;
	bool strict = false;
};

namespace detail {

inline double get_double(const KeyValues &kv, const std::string &key, double fallback) {
	const auto it = kv.find(key);
	if (it == kv.end()) {
		return fallback;
	}
	const auto v = csv::parse_double(it->second);
	if (!v) {
		throw Error(ErrorCode::ConfigError, key + ": '" + it->second + "' is not a number");
	}
	return *v;
}

inline long long get_int(const KeyValues &kv, const std::string &key, long long fallback) {
	const auto it = kv.find(key);
	if (it == kv.end()) {
		return fallback;
	}
	const auto v = csv::parse_int(it->second);
	if (!v) {
		throw Error(ErrorCode::ConfigError, key + ": '" + it->second + "' is not an integer");
	}
	return *v;
}

inline bool get_bool(const KeyValues &kv, const std::string &key, bool fallback) {
	const auto it = kv.find(key);
	if (it == kv.end()) {
		return fallback;
	}
	if (it->second == "true" || it->second == "1" || it->second == "yes") {
		return true;
	}
	if (it->second == "false" || it->second == "0" || it->second == "no") {
		return false;
	}
	throw Error(ErrorCode::ConfigError, key + ": '" + it->second + "' is not a boolean");
}

inline std::string get_string(const KeyValues &kv, const std::string &key, const std::string &fallback) {
	const auto it = kv.find(key);
	return it == kv.end() ? fallback : it->second;
}

} // namespace detail

/// Builds and validates a RunConfig; every failure names the offending key.
inline RunConfig build_run_config(const KeyValues &kv) {
	using namespace detail;
	RunConfig cfg;
	cfg.input = get_string(kv, "input", "");
	cfg.output = get_string(kv, "output", "");

	const long long period = get_int(kv, "seasonal_period", 12);
	if (period < 1) {
		throw Error(ErrorCode::ConfigError, "seasonal_period: must be >= 1");
	}
	cfg.seasonal_period = static_cast<int>(period);

	auto &p = cfg.pipeline;
	p.split.train_ratio = get_double(kv, "train_ratio", 0.91);
	if (!(p.split.train_ratio > 0.0 && p.split.train_ratio < 1.0)) {
		throw Error(ErrorCode::ConfigError, "train_ratio: must lie in (0, 1)");
	}
	const long long horizon = get_int(kv, "horizon", 12);
	if (horizon < 1) {
		throw Error(ErrorCode::ConfigError, "horizon: must be >= 1");
	}
	p.split.future_horizon = static_cast<int>(horizon);

	p.forecasters.clear();
	for (const auto &item : split_list(get_string(kv, "forecasters", kDefaultForecasters))) {
		p.forecasters.push_back(parse_forecaster(item, cfg.seasonal_period));
	}
	if (p.forecasters.empty()) {
		throw Error(ErrorCode::ConfigError, "forecasters: at least one is required");
	}

	p.selectors.clear();
	for (const auto &item : split_list(get_string(kv, "selectors", "RMSSE_h,AHSIV,ERA"))) {
		const auto kind = select::selector_from_string(item);
		if (!kind) {
			throw Error(ErrorCode::ConfigError, "selectors: unknown selector '" + item + "'");
		}
		if (std::find(p.selectors.begin(), p.selectors.end(), *kind) != p.selectors.end()) {
			throw Error(ErrorCode::ConfigError, "selectors: '" + item + "' listed twice");
		}
		p.selectors.push_back(*kind);
	}
	if (p.selectors.empty()) {
		throw Error(ErrorCode::ConfigError, "selectors: at least one is required");
	}
	p.selector_options.era_body_variant = get_bool(kv, "era_body_variant", false);
	p.selector_options.ahsiv_full_front_variant = get_bool(kv, "ahsiv_full_front_variant", false);

	const long long block = get_int(kv, "mdfh.block_size", 3);
	if (block < 1) {
		throw Error(ErrorCode::ConfigError, "mdfh.block_size: must be >= 1");
	}
	p.mdfh.block_size = static_cast<int>(block);
	p.mdfh.bounds.min = get_double(kv, "mdfh.alpha_min", 0.3);
	p.mdfh.bounds.max = get_double(kv, "mdfh.alpha_max", 0.9);
	if (!(p.mdfh.bounds.min <= p.mdfh.bounds.max)) {
		throw Error(ErrorCode::ConfigError, "mdfh.alpha_min: must not exceed mdfh.alpha_max");
	}
	const std::string source = get_string(kv, "mdfh.diagnosis_source", "future_forecast");
	if (source == "future_forecast") {
		p.mdfh.diagnosis_source = pipeline::DiagnosisSource::FutureForecast;
	} else if (source == "observed_history") {
		p.mdfh.diagnosis_source = pipeline::DiagnosisSource::ObservedHistory;
	} else {
		throw Error(ErrorCode::ConfigError, "mdfh.diagnosis_source: expected future_forecast or observed_history");
	}
	const std::string fit = get_string(kv, "future_fit", "train_plus_test");
	if (fit == "train_plus_test") {
		p.future_fit = pipeline::FutureFit::TrainPlusTest;
	} else if (fit == "train_only") {
		p.future_fit = pipeline::FutureFit::TrainOnly;
	} else {
		throw Error(ErrorCode::ConfigError, "future_fit: expected train_plus_test or train_only");
	}

	p.thresholds.p_star = get_double(kv, "p_star", 0.5);
	if (!(p.thresholds.p_star > 0.0 && p.thresholds.p_star < 1.0)) {
		throw Error(ErrorCode::ConfigError, "p_star: must lie in (0, 1)");
	}
	p.thresholds.c_star = get_double(kv, "c_star", 0.7);
	if (!(p.thresholds.c_star > 0.0)) {
		throw Error(ErrorCode::ConfigError, "c_star: must be > 0");
	}

	const long long seed = get_int(kv, "seed", 0);
	if (seed < 0) {
		throw Error(ErrorCode::ConfigError, "seed: must be >= 0");
	}
	cfg.seed = static_cast<std::uint64_t>(seed);
	const long long threads = get_int(kv, "threads", 1);
	if (threads < 1 || threads > 1024) {
		throw Error(ErrorCode::ConfigError, "threads: must lie in [1, 1024]");
	}
	cfg.threads = static_cast<unsigned>(threads);
	cfg.strict = get_bool(kv, "strict", false);

	try {
		p.validate();
	} catch (const Error &e) {
		throw Error(ErrorCode::ConfigError, e.what());
	}
	return cfg;
}

} // namespace horizonsel::config
