#pragma once

#include "horizonsel/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace horizonsel::csv {

/// Fixed six-decimal rendering; a value that rounds to zero prints as 0.000000
/// so that -0.0 never leaks into reports.
inline std::string fmt(double value) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.6f", value);
	std::string out(buf);
	if (out == "-0.000000") {
		out.erase(0, 1);
	}
	return out;
}

/// Absent values are written as empty fields.
inline std::string fmt(const std::optional<double> &value) {
	return value ? fmt(*value) : std::string{};
}

inline std::string quote(std::string_view field) {
	if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
		return std::string(field);
	}
	std::string out = "\"";
	for (char c : field) {
		if (c == '"') {
			out += '"';
		}
		out += c;
	}
	out += '"';
	return out;
}

inline void write_row(std::ostream &os, const std::vector<std::string> &fields) {
	for (std::size_t i = 0; i < fields.size(); ++i) {
		if (i > 0) {
			os << ',';
		}
		os << quote(fields[i]);
	}
	os << '\n';
}

/// Splits one line into fields, honouring double-quoted fields with "" escapes.
inline std::vector<std::string> split_line(std::string_view line) {
	std::vector<std::string> fields;
	std::string current;
	bool quoted = false;
	for (std::size_t i = 0; i < line.size(); ++i) {
		const char c = line[i];
		if (quoted) {
			if (c == '"') {
				if (i + 1 < line.size() && line[i + 1] == '"') {
					current += '"';
					++i;
				} else {
					quoted = false;
				}
			} else {
				current += c;
			}
		} else if (c == '"') {
			quoted = true;
		} else if (c == ',') {
			fields.push_back(std::move(current));
			current.clear();
		} else {
			current += c;
		}
	}
	fields.push_back(std::move(current));
	return fields;
}

struct Table {
	std::vector<std::string> header;
	std::vector<std::vector<std::string>> rows;
	std::vector<std::size_t> line_numbers; ///< 1-based source line of each row

	std::size_t column(std::string_view name) const {
		for (std::size_t i = 0; i < header.size(); ++i) {
			if (header[i] == name) {
				return i;
			}
		}
		throw Error(ErrorCode::MalformedRow, "missing column '" + std::string(name) + "'");
	}
};

inline Table read_table(const std::string &path) {
	std::ifstream in(path);
	if (!in) {
		throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
	}
	Table table;
	std::string line;
	std::size_t line_no = 0;
	while (std::getline(in, line)) {
		++line_no;
		if (!line.empty() && line.back() == '\r') {
			line.pop_back();
		}
		if (line.empty()) {
			continue;
		}
		auto fields = split_line(line);
		if (table.header.empty()) {
			table.header = std::move(fields);
			continue;
		}
		if (fields.size() != table.header.size()) {
			throw Error(ErrorCode::MalformedRow, path + ":" + std::to_string(line_no) + ": expected " +
			                                         std::to_string(table.header.size()) + " fields, found " +
			                                         std::to_string(fields.size()));
		}
		table.rows.push_back(std::move(fields));
		table.line_numbers.push_back(line_no);
	}
	if (table.header.empty()) {
		throw Error(ErrorCode::MalformedRow, "'" + path + "' has no header");
	}
	return table;
}

inline std::optional<double> parse_double(std::string_view text) {
	if (text.empty()) {
		return std::nullopt;
	}
	double value = 0.0;
	const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
	if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
		return std::nullopt;
	}
	return value;
}

inline std::optional<long long> parse_int(std::string_view text) {
	long long value = 0;
	const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
	if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
		return std::nullopt;
	}
	return value;
}

} // namespace horizonsel::csv
