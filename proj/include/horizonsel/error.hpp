#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace horizonsel {

enum class ErrorCode {
	InvalidArgument,
	EmptyInput,
	LengthMismatch,
	NonFiniteValue,
	SeriesTooShort,
	FlatTrainingSeries,
	ZeroTotalDemand,
	TrajectoryTooShort,
	InvalidHorizon,
	HistoryTooShort,
	MissingMetric,
	NoUsableMetric,
	NoUsableModel,
	DegenerateSample,
	InvalidParams,
	MalformedRow,
	NonContiguousPeriods,
	NegativeValue,
	ConfigError,
	IoError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
	switch (code) {
	case ErrorCode::InvalidArgument: return "InvalidArgument";
	case ErrorCode::EmptyInput: return "EmptyInput";
	case ErrorCode::LengthMismatch: return "LengthMismatch";
	case ErrorCode::NonFiniteValue: return "NonFiniteValue";
	case ErrorCode::SeriesTooShort: return "SeriesTooShort";
	case ErrorCode::FlatTrainingSeries: return "FlatTrainingSeries";
	case ErrorCode::ZeroTotalDemand: return "ZeroTotalDemand";
	case ErrorCode::TrajectoryTooShort: return "TrajectoryTooShort";
	case ErrorCode::InvalidHorizon: return "InvalidHorizon";
	case ErrorCode::HistoryTooShort: return "HistoryTooShort";
	case ErrorCode::MissingMetric: return "MissingMetric";
	case ErrorCode::NoUsableMetric: return "NoUsableMetric";
	case ErrorCode::NoUsableModel: return "NoUsableModel";
	case ErrorCode::DegenerateSample: return "DegenerateSample";
	case ErrorCode::InvalidParams: return "InvalidParams";
	case ErrorCode::MalformedRow: return "MalformedRow";
	case ErrorCode::NonContiguousPeriods: return "NonContiguousPeriods";
	case ErrorCode::NegativeValue: return "NegativeValue";
	case ErrorCode::ConfigError: return "ConfigError";
	case ErrorCode::IoError: return "IoError";
	}
	return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
public:
	Error(ErrorCode code, const std::string &message)
	    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {
	}

	ErrorCode code() const noexcept {
		return code_;
	}

private:
	ErrorCode code_;
};

} // namespace horizonsel
