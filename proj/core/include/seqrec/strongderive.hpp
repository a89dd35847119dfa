#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqrec/certificate.hpp"
#include "seqrec/corpus.hpp"
#include "seqrec/dfao.hpp"
#include "seqrec/recsolve.hpp"

namespace seqrec {

// Claims f(k^t n + b) = f(k^r n + map[b]) for all n >= 0, 0 <= b < k^t.
struct SubsequenceMapping {
	unsigned k = 2;
	unsigned r = 0;
	unsigned t = 1;
	std::vector<std::uint64_t> map; // size k^t, entries < k^r

	bool operator==(const SubsequenceMapping&) const = default;
};

struct LevelPair {
	unsigned r;
	unsigned t;

	bool operator==(const LevelPair&) const = default;
};

// Smallest t, then smallest r < t, with S_t a subset of S_r. Exists with
// t <= 2^|Q| + 1. lsd-first automata only.
LevelPair find_rt(const Dfao& dfao);

// Reads b's t lsd digits to a state q and maps b to the smallest a < k^r whose
// r digits also reach q. PreconditionError if S_t is not a subset of S_r or
// the automaton output depends on trailing zeros.
SubsequenceMapping derive_mapping(const Dfao& dfao, unsigned r, unsigned t);

// Exact check for 0 <= n <= max_n and every b.
Certificate verify_mapping(const SequenceOracle& oracle, const SubsequenceMapping& mapping, std::uint64_t max_n,
                           unsigned jobs = 1);

// Unit coefficient on a = map[b]; n0 = 0, L = 0, U = k^r.
RecursionScheme mapping_to_scheme(const SubsequenceMapping& mapping);

nlohmann::json to_json(const SubsequenceMapping& mapping);
SubsequenceMapping mapping_from_json(const nlohmann::json& doc);

} // namespace seqrec
