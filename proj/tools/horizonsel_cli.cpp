#include "horizonsel/app.hpp"
#include "horizonsel/config.hpp"
#include "horizonsel/error.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

namespace {

using horizonsel::config::KeyValues;

/// One string option per config key; values given on the command line win
/// over the --config file.
struct KeyOptions {
	std::string config_path;
	std::map<std::string, std::string> values;
	std::map<std::string, CLI::Option *> options;

	void attach(CLI::App &cmd) {
		cmd.add_option("--config", config_path, "flat key = value config file");
		for (const auto &key : horizonsel::config::known_keys()) {
			options[key] = cmd.add_option("--" + key, values[key], "overrides '" + key + "' from the config file");
		}
	}

	KeyValues merged() const {
		KeyValues kv;
		if (!config_path.empty()) {
			kv = horizonsel::config::load_config_file(config_path);
		}
		for (const auto &[key, opt] : options) {
			if (opt->count() > 0) {
				kv[key] = values.at(key);
			}
		}
		return kv;
	}
};

int report_error(const horizonsel::Error &e) {
	std::cerr << "error:\n  code: " << horizonsel::to_string(e.code()) << "\n  message: " << e.what() << '\n';
	return 2;
}

} // namespace

int main(int argc, char **argv) {
	CLI::App app{"Horizon-aware forecast model selection (RMSSE_h, AHSIV, ERA) with GRA evaluation"};
	app.require_subcommand(1);

	auto *run_cmd = app.add_subcommand("run", "full pipeline: ingest, evaluate, select, score, report");
	KeyOptions run_keys;
	run_keys.attach(*run_cmd);

	auto *select_cmd = app.add_subcommand("select", "selectors only, from metrics.csv and adjusted.csv of a run");
	KeyOptions select_keys;
	select_keys.attach(*select_cmd);
	std::string metrics_path, adjusted_path;
	select_cmd->add_option("--metrics", metrics_path, "metrics.csv")->required();
	select_cmd->add_option("--adjusted", adjusted_path, "adjusted.csv")->required();

	auto *stats_cmd = app.add_subcommand("stats", "Kruskal-Wallis and Dunn tests from gra.csv");
	std::string gra_path, stats_output, stats_selectors = "RMSSE_h,AHSIV,ERA";
	stats_cmd->add_option("--gra", gra_path, "gra.csv")->required();
	stats_cmd->add_option("--output", stats_output, "output directory")->required();
	stats_cmd->add_option("--selectors", stats_selectors, "selector groups, in column order");

	auto *gen_cmd = app.add_subcommand("gen", "write a synthetic corpus in the ingest format");
	std::string gen_output, gen_kind = "mixed";
	int gen_count = 100, gen_length = 120;
	std::uint64_t gen_seed = 0;
	horizonsel::synthetic::SyntheticParams params;
	gen_cmd->add_option("--output", gen_output, "CSV file to write")->required();
	gen_cmd->add_option("--kind", gen_kind, "stable_seasonal|intermittent|lumpy|trending|explosive|mixed");
	gen_cmd->add_option("--count", gen_count, "number of series");
	gen_cmd->add_option("--length", gen_length, "observations per series (>= 20)");
	gen_cmd->add_option("--seed", gen_seed, "corpus seed");
	gen_cmd->add_option("--period", params.period, "seasonal period");
	gen_cmd->add_option("--level", params.level, "base demand level");
	gen_cmd->add_option("--amplitude", params.amplitude, "seasonal swing as a share of level");
	gen_cmd->add_option("--noise", params.noise, "multiplicative noise half-width");
	gen_cmd->add_option("--q", params.q, "demand occurrence probability");
	gen_cmd->add_option("--slope", params.slope, "trend per period");
	gen_cmd->add_option("--volatility", params.volatility, "log-step sd of the explosive walk");

	CLI11_PARSE(app, argc, argv);

	try {
		if (run_cmd->parsed()) {
			const auto cfg = horizonsel::config::build_run_config(run_keys.merged());
			const auto summary = horizonsel::app::run(cfg);
			for (const auto &w : summary.warnings) {
				std::cerr << "warning: " << w << '\n';
			}
			for (const auto &f : summary.failures) {
				std::cerr << "skipped: " << f.series_id << ": " << f.message << '\n';
			}
			std::cout << "evaluated " << summary.series_evaluated << " of " << summary.series_total << " series; reports in "
			          << cfg.output << '\n';
		} else if (select_cmd->parsed()) {
			const auto cfg = horizonsel::config::build_run_config(select_keys.merged());
			if (cfg.output.empty()) {
				throw horizonsel::Error(horizonsel::ErrorCode::ConfigError, "output: directory is required");
			}
			const auto n = horizonsel::app::select_from_tables(metrics_path, adjusted_path, cfg.output, cfg.pipeline);
			std::cout << "wrote " << n << " selections to " << cfg.output << "/selections.csv\n";
		} else if (stats_cmd->parsed()) {
			std::vector<horizonsel::select::SelectorKind> selectors;
			for (const auto &name : horizonsel::config::split_list(stats_selectors)) {
				const auto kind = horizonsel::select::selector_from_string(name);
				if (!kind) {
					throw horizonsel::Error(horizonsel::ErrorCode::ConfigError, "selectors: unknown selector '" + name + "'");
				}
				selectors.push_back(*kind);
			}
			const auto n = horizonsel::app::stats_from_gra(gra_path, stats_output, selectors);
			std::cout << "wrote " << n << " horizons to " << stats_output << "/stats.csv\n";
		} else if (gen_cmd->parsed()) {
			const auto n = horizonsel::app::generate(gen_output, gen_kind, gen_count, gen_length, gen_seed, params);
			std::cout << "wrote " << n << " series to " << gen_output << '\n';
		}
	} catch (const horizonsel::Error &e) {
		return report_error(e);
	} catch (const std::exception &e) {
		std::cerr << "error:\n  code: Internal\n  message: " << e.what() << '\n';
		return 3;
	}
	return 0;
}
