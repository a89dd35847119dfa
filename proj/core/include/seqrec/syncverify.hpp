#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqrec/certificate.hpp"
#include "seqrec/corpus.hpp"
#include "seqrec/ratlin.hpp"

namespace seqrec {

using PairDigit = std::pair<unsigned, unsigned>;

// Two-track msd-first automaton over pairs [d1, d2] of base-k digits.
// Transitions are partial; a missing one leads to an implicit non-accepting
// dead state.
class SyncDfa {
public:
	SyncDfa(unsigned k, std::size_t num_states, std::size_t initial, std::vector<bool> accepting);

	// ParameterError on out-of-range states or digits, or when (from, [d1,d2])
	// already has a transition.
	void add_transition(std::size_t from, unsigned d1, unsigned d2, std::size_t to);

	unsigned base() const noexcept { return k_; }
	std::size_t num_states() const noexcept { return accepting_.size(); }
	std::size_t initial() const noexcept { return initial_; }
	bool accepting(std::size_t q) const { return accepting_.at(q); }
	std::optional<std::size_t> next(std::size_t q, unsigned d1, unsigned d2) const;

	// InputError on a digit >= k.
	bool run(std::span<const PairDigit> word) const;

	// Pads the shorter msd representation with leading zeros; (0, 0) is the
	// empty word.
	bool accepts(const BigInt& n, const BigInt& m) const;
	bool accepts(std::uint64_t n, std::uint64_t m) const;

	bool operator==(const SyncDfa&) const = default;

private:
	unsigned k_;
	std::size_t initial_;
	std::vector<bool> accepting_;
	std::vector<std::vector<std::optional<std::size_t>>> delta_; // [q][d1 * k + d2]
};

// Machine recognizing {(n, g_{2,2}(n))}.
SyncDfa build_fig2();
// Machine recognizing {(n, g_{k,k}(n))} for k > 2; ParameterError otherwise.
SyncDfa build_figk(unsigned k);
// {(n, n)}: a single accepting state with [d, d] loops.
SyncDfa equality_machine(unsigned k);

// Text format shares the DFAO layout:
//   base <k> msd pair
//   state <id> <0|1>            accepting flag; the first listed is initial
//   trans <from> <d1>,<d2> <to>
SyncDfa parse_sync_dfa(std::string_view text);
std::string serialize(const SyncDfa& dfa);

// For 0 <= n <= max_n: (n, f(n)) accepted, and `negatives_per_n` values
// m != f(n) rejected (f(n)+1, f(n)-1, 0, 2 f(n), then seeded random draws).
Certificate verify_sync(const SyncDfa& dfa, const SequenceOracle& oracle, std::uint64_t max_n,
                        unsigned negatives_per_n = 4, std::uint64_t seed = 1);

// For k <= n <= max_n with a base-k representation of length L >= 2, the
// representation of g_{k,k}(n) is 1 0^(L-2) 1.
Certificate repr_pattern_check(unsigned k, std::uint64_t max_n);

enum class SyncVerdict { PossiblySynchronized, NotSynchronized };

std::string_view to_string(SyncVerdict verdict) noexcept;

struct SyncScreen {
	SyncVerdict verdict;
	double exponent;
	std::string reason;
};

// One-sided: a synchronized sequence is O(1), or O(n) and >= cn infinitely
// often. Flags exponent > 1 + margin and margin < exponent < 1 - margin.
SyncScreen sync_growth_screen(const SequenceOracle& oracle, unsigned k, unsigned depth, double margin = 0.1);

} // namespace seqrec
