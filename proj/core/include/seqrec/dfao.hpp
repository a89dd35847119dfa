#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqrec/ratlin.hpp"

namespace seqrec {

enum class DigitOrder { Lsd, Msd };

std::string_view to_string(DigitOrder order) noexcept;

// Deterministic finite automaton with output over the digits 0..k-1.
//
// States are 0..num_states()-1. The transition table is total. n = 0 is the
// empty word, so eval(0) is the output of the initial state.
class Dfao {
public:
	// Throws ParameterError unless k >= 2, every row of `delta` has k entries
	// naming valid states, outputs has one entry per state and initial is valid.
	Dfao(unsigned k, DigitOrder order, std::vector<BigInt> outputs,
	     std::vector<std::vector<std::size_t>> delta, std::size_t initial = 0);

	unsigned base() const noexcept { return k_; }
	DigitOrder order() const noexcept { return order_; }
	std::size_t num_states() const noexcept { return outputs_.size(); }
	std::size_t initial() const noexcept { return initial_; }
	std::size_t next(std::size_t q, unsigned digit) const { return delta_.at(q).at(digit); }
	const BigInt& output(std::size_t q) const { return outputs_.at(q); }

	// Runs `word` (already in reading order) from state `from`.
	std::size_t run(std::span<const unsigned> word, std::size_t from) const;
	std::size_t run(std::span<const unsigned> word) const { return run(word, initial_); }

	// Output on the canonical base-k representation of n, read in order().
	BigInt eval(const BigInt& n) const;
	BigInt eval(std::uint64_t n) const;

	// True when reading a non-significant zero never changes the output of a
	// reachable state (trailing zeros for lsd, leading zeros for msd).
	bool zero_insensitive() const;

	bool operator==(const Dfao&) const = default;

private:
	unsigned k_;
	DigitOrder order_;
	std::vector<BigInt> outputs_;
	std::vector<std::vector<std::size_t>> delta_;
	std::size_t initial_;
};

// S_t: states reachable from the initial state by exactly t digits.
struct ReachSet {
	unsigned depth;
	std::vector<std::size_t> states; // sorted, unique
};

// S_0 .. S_max_depth via set-BFS. lsd-first only (DigitOrderError otherwise).
std::vector<ReachSet> reach_sets(const Dfao& dfao, unsigned max_depth);

// Text format:
//
//   base <k> <lsd|msd>
//   state <id> <output>         one per state; the first listed is initial
//   trans <from> <digit> <to>   one per (state, digit)
//
// `#` starts a comment. Errors carry the offending line number.
Dfao parse_dfao(std::string_view text);
std::string serialize(const Dfao& dfao);

Dfao load_dfao(const std::string& path);

// lsd-first Thue-Morse automaton: state = parity of ones read so far.
Dfao thue_morse_dfao();

} // namespace seqrec
