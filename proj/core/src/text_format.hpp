#pragma once

// Line tokenizer shared by the automaton text formats.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "seqrec/errors.hpp"

namespace seqrec::detail {

struct Line {
	std::size_t number; // 1-based
	std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize_lines(std::string_view text) {
	std::vector<Line> out;
	std::size_t number = 0;
	std::size_t pos = 0;
	while (pos <= text.size()) {
		auto end = text.find('\n', pos);
		if (end == std::string_view::npos) {
			end = text.size();
		}
		++number;
		auto line = text.substr(pos, end - pos);
		if (const auto hash = line.find('#'); hash != std::string_view::npos) {
			line = line.substr(0, hash);
		}
		Line parsed{number, {}};
		std::size_t i = 0;
		while (i < line.size()) {
			while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) {
				++i;
			}
			std::size_t j = i;
			while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') {
				++j;
			}
			if (j > i) {
				parsed.tokens.emplace_back(line.substr(i, j - i));
			}
			i = j;
		}
		if (!parsed.tokens.empty()) {
			out.push_back(std::move(parsed));
		}
		if (end == text.size()) {
			break;
		}
		pos = end + 1;
	}
	return out;
}

inline std::uint64_t parse_index(const std::string& token, std::size_t line, const char* what) {
	if (token.empty() || token.size() > 18) {
		throw ParseError(line, std::string("malformed ") + what + " '" + token + "'");
	}
	std::uint64_t v = 0;
	for (char c : token) {
		if (c < '0' || c > '9') {
			throw ParseError(line, std::string("malformed ") + what + " '" + token + "'");
		}
		v = v * 10 + static_cast<std::uint64_t>(c - '0');
	}
	return v;
}

} // namespace seqrec::detail
