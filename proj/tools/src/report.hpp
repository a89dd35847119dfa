#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "seqrec/corpus.hpp"
#include "seqrec/recsolve.hpp"

namespace seqrec::cli {

struct ReportConfig {
	OraclePtr oracle;
	unsigned k = 2;
	std::uint64_t bounded_n = 100000;
	std::uint64_t sync_n = 10000;
	unsigned negatives = 4;
	std::uint64_t seed = 1;
	unsigned max_t = 3;
	unsigned max_band = 8;
	IndexRange verify_range = kDefaultVerifyRange;
	unsigned jobs = 1;
};

// Finite-scale evidence for each sequence class; never a proof.
nlohmann::json build_report(const ReportConfig& config);

} // namespace seqrec::cli
