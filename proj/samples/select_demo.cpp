// Evaluates one synthetic seasonal series and prints, per horizon, the model
// each selector picks together with its ex post GRA.

#include <horizonsel/horizonsel.hpp>

#include <cstdio>
#include <string>

int main() {
	using namespace horizonsel;

	const auto series = synthetic::generate_synthetic(synthetic::SeriesKind::StableSeasonal, 120, 7);

	pipeline::PipelineOptions options;
	options.forecasters = {forecast::ForecasterSpec::naive(), forecast::ForecasterSpec::seasonal_naive(12),
	                       forecast::ForecasterSpec::drift(), forecast::ForecasterSpec::moving_average(3),
	                       forecast::ForecasterSpec::ses()};

	const auto eval = pipeline::evaluate_series(series, options);
	std::printf("series %s: train %zu, test %zu, future %zu, class %s\n", eval.series_id.c_str(),
	            eval.window.train.size(), eval.window.test.size(), eval.window.future_actual.size(),
	            eval.structure.classification == DemandClass::Regular ? "Regular" : "IntermittentOrVariable");

	for (const auto &m : eval.models) {
		std::printf("  %-20s rmsse %.4f  mae %.4f  alpha %.3f\n", m.model_id.c_str(), m.metrics.rmsse, m.metrics.mae,
		            m.degradation.alpha);
	}
	std::printf("\n%3s  %-20s %-20s %-20s\n", "h", "RMSSE_h", "AHSIV", "ERA");
	for (int h = 1; h <= options.split.future_horizon; ++h) {
		std::printf("%3d ", h);
		for (auto kind : select::kAllSelectors) {
			const auto *cell = eval.selection(kind, h);
			std::string text = cell->result.chosen;
			if (cell->gra) {
				char buf[32];
				std::snprintf(buf, sizeof buf, " (%.3f)", *cell->gra);
				text += buf;
			}
			std::printf(" %-20s", text.c_str());
		}
		std::printf("\n");
	}
	return 0;
}
