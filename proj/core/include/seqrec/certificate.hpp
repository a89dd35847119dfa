#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "seqrec/ratlin.hpp"

namespace seqrec {

// Inclusive index range lo..hi; empty when lo > hi.
struct IndexRange {
	std::uint64_t lo = 0;
	std::uint64_t hi = 0;

	bool empty() const noexcept { return lo > hi; }
	std::uint64_t size() const noexcept { return empty() ? 0 : hi - lo + 1; }
	bool contains(std::uint64_t n) const noexcept { return lo <= n && n <= hi; }
	bool operator==(const IndexRange&) const = default;
};

// "lo..hi"; InputError when malformed.
IndexRange parse_range(std::string_view text);

enum class Status { Verified, Counterexample, NoSolution, Exhausted };

std::string_view to_string(Status status) noexcept;
Status status_from_string(std::string_view text);

// f(k^t n + b) evaluated to lhs, the claimed combination to rhs.
struct Counterexample {
	std::uint64_t n = 0;
	std::uint64_t b = 0;
	Rational lhs;
	Rational rhs;
};

struct Certificate {
	nlohmann::json claim;
	IndexRange range;
	Status status = Status::Verified;
	bool vacuous = false;
	std::optional<Counterexample> counterexample;
	nlohmann::json witness = nlohmann::json::object();

	bool verified() const noexcept { return status == Status::Verified; }
};

nlohmann::json to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& doc);

} // namespace seqrec
