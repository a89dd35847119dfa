#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "seqrec/certificate.hpp"
#include "seqrec/corpus.hpp"
#include "seqrec/ratlin.hpp"

namespace seqrec {

// f(k^t n + b) = sum_{L <= a < U} c[b][a - L] * f(k^r n + a) for all n >= n0
// and 0 <= b < k^t.
struct RecursionScheme {
	unsigned k = 2;
	unsigned r = 0;
	unsigned t = 1;
	std::int64_t L = 0;
	std::int64_t U = 1;
	std::uint64_t n0 = 0;
	std::vector<std::vector<Rational>> coeffs;

	std::uint64_t modulus() const { return checked_pow(k, t); }
	std::size_t width() const noexcept { return static_cast<std::size_t>(U - L); }
	const Rational& coeff(std::uint64_t b, std::int64_t a) const { return coeffs.at(b).at(a - L); }

	bool operator==(const RecursionScheme&) const = default;
};

// Throws ParameterError unless k >= 2, r < t, L < U and there is one
// coefficient vector of length U - L per residue.
void validate(const RecursionScheme& scheme);

// n0 = 0, L >= 0 and U <= k^t.
bool is_strong(const RecursionScheme& scheme);

nlohmann::json to_json(const RecursionScheme& scheme);
RecursionScheme scheme_from_json(const nlohmann::json& doc);

constexpr IndexRange kDefaultVerifyRange{0, 10000};

// Sampled system for one kernel subsequence:
//   f(k^target_level n + b) = sum_i x_i f(k^source_level n + offsets[i]),
// one row per n in `samples`.
struct SubsequenceFit {
	std::vector<std::uint64_t> samples;
	LinearSystem system{0};
	SolveResult result;
};

// ParameterError if some index k^source_level n + offset is negative.
SubsequenceFit fit_subsequence(const SequenceOracle& oracle, unsigned k, unsigned target_level, std::uint64_t b,
                               unsigned source_level, std::span<const std::int64_t> offsets, IndexRange samples);

struct FitResult {
	std::optional<RecursionScheme> scheme;
	// For each residue whose solution set was affine, the offsets a whose
	// coefficients were pinned to zero.
	std::map<std::uint64_t, std::vector<std::int64_t>> pinned;
	// NoSolution: certificate witness names the residue and sample rows.
	Certificate certificate;

	bool found() const noexcept { return scheme.has_value(); }
};

// Exact fit of every residue b over the n >= n0 in `train`. ParameterError
// on malformed parameters or when fewer than U - L + 2 samples are available.
FitResult fit(const SequenceOracle& oracle, unsigned k, unsigned r, unsigned t, std::int64_t L, std::int64_t U,
              std::uint64_t n0, IndexRange train);

// Checks every (n, b) with n in range, n >= n0. Returns Verified or the
// lexicographically first counterexample. `jobs` splits the n range.
Certificate verify(const SequenceOracle& oracle, const RecursionScheme& scheme, IndexRange range = kDefaultVerifyRange,
                   unsigned jobs = 1);

struct SearchOptions {
	IndexRange verify_range = kDefaultVerifyRange;
	unsigned jobs = 1;
};

struct SearchResult {
	Certificate certificate;
	std::optional<RecursionScheme> scheme;
	std::uint64_t candidates = 0;
};

// Enumerates (t, r, U - L, L, n0) by increasing t, r, width, then decreasing
// L, fits and verifies each candidate; Exhausted when nothing verifies.
SearchResult search(const SequenceOracle& oracle, unsigned k, unsigned max_t, unsigned max_band,
                    const SearchOptions& options = {});

// No (r, t) strong recursion for g_{k,ell}: samples n = 1 and n = k in the
// aggregate unknown c0 + c1.
Certificate refute_g_strong(unsigned k, unsigned ell, unsigned r, unsigned t);

// No (r, t, L, U) recursion for g_{k,ell}: samples n = k^(s-1)(k+1) and
// n = k^s(k+1), derives c = 1 and the exponent contradiction.
Certificate refute_g_general(unsigned k, unsigned ell, unsigned r, unsigned t, std::int64_t L, std::int64_t U);

// Smallest s >= 1 with k^(r+s-1) >= max(-L, U).
unsigned refutation_shift(unsigned k, unsigned r, std::int64_t L, std::int64_t U);

// The n in {0, 1, 3} system for h(3^t n) = c0 h(3^r n) + c1 h(3^r n + 1).
LinearSystem h_strong_system(unsigned r, unsigned t);
Certificate refute_h_strong(unsigned r, unsigned t);

// Kernel relations of g_{k,ell} at level 2 against g(n), g(kn), g(kn+1):
//   g(k^2 n)     = -ell g(n) + (ell+1) g(kn)
//   g(k^2 n + a) = -ell g(n) + ell g(kn) + g(kn+1)     1 <= a < k
//   g(k^2 n + b) = -ell g(n) + g(kn) + ell g(kn+1)     k <= b < k^2
// For 0 <= n <= max_n and every a, b (or only a, b in {1, k-1, k, k^2-1}).
Certificate verify_g_kernel_relations(unsigned k, unsigned ell, std::uint64_t max_n, bool boundary_only = false);

} // namespace seqrec
