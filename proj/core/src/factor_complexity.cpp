#include <algorithm>
#include <array>
#include <cstdint>
#include <mutex>
#include <vector>

#include "seqrec/corpus.hpp"
#include "seqrec/errors.hpp"

namespace seqrec {

namespace {

// Suffix automaton over a binary word. Each state v stands for the substrings
// of lengths (len[link[v]], len[v]], all distinct across states.
class SuffixAutomaton {
public:
	explicit SuffixAutomaton(std::size_t expected_length) {
		const auto cap = 2 * expected_length + 2;
		len_.reserve(cap);
		link_.reserve(cap);
		next_.reserve(cap);
		add_state(0, -1);
	}

	void extend(unsigned char c) {
		const auto cur = add_state(len_[last_] + 1, -1);
		std::int32_t p = last_;
		while (p != -1 && next_[p][c] == -1) {
			next_[p][c] = cur;
			p = link_[p];
		}
		if (p == -1) {
			link_[cur] = 0;
		} else {
			const auto q = next_[p][c];
			if (len_[p] + 1 == len_[q]) {
				link_[cur] = q;
			} else {
				const auto clone = add_state(len_[p] + 1, link_[q]);
				next_[clone] = next_[q];
				while (p != -1 && next_[p][c] == q) {
					next_[p][c] = clone;
					p = link_[p];
				}
				link_[q] = clone;
				link_[cur] = clone;
			}
		}
		last_ = cur;
	}

	// counts[n] = number of distinct substrings of length n, n <= max_n.
	std::vector<std::uint64_t> counts_by_length(std::uint64_t max_n) const {
		std::vector<std::int64_t> diff(max_n + 2, 0);
		for (std::size_t v = 1; v < len_.size(); ++v) {
			const std::uint64_t lo = static_cast<std::uint64_t>(len_[link_[v]]) + 1;
			const std::uint64_t hi = std::min<std::uint64_t>(static_cast<std::uint64_t>(len_[v]), max_n);
			if (lo <= hi) {
				diff[lo] += 1;
				diff[hi + 1] -= 1;
			}
		}
		std::vector<std::uint64_t> out(max_n + 1, 0);
		std::int64_t running = 0;
		for (std::uint64_t n = 0; n <= max_n; ++n) {
			running += diff[n];
			out[n] = static_cast<std::uint64_t>(running);
		}
		out[0] = 1; // the empty factor
		return out;
	}

private:
	std::int32_t add_state(std::int32_t len, std::int32_t link) {
		len_.push_back(len);
		link_.push_back(link);
		next_.push_back({-1, -1});
		return static_cast<std::int32_t>(len_.size() - 1);
	}

	std::vector<std::int32_t> len_;
	std::vector<std::int32_t> link_;
	std::vector<std::array<std::int32_t, 2>> next_;
	std::int32_t last_ = 0;
};

std::vector<std::uint64_t> counts_for_prefix(std::uint64_t prefix_length, std::uint64_t max_n) {
	if (prefix_length > (std::uint64_t{1} << 29)) {
		throw ParameterError("factor complexity prefix too long");
	}
	SuffixAutomaton sam(prefix_length);
	for (std::uint64_t i = 0; i < prefix_length; ++i) {
		sam.extend(static_cast<unsigned char>(tm(i)));
	}
	return sam.counts_by_length(max_n);
}

class FactorComplexityCache {
public:
	BigInt get(std::uint64_t n) {
		std::lock_guard lock(mutex_);
		if (n >= table_.size()) {
			const auto target = std::max<std::uint64_t>({n, 2 * table_.size(), 64});
			table_ = tm_factor_complexity_table(target);
		}
		return to_big(table_[n]);
	}

private:
	std::mutex mutex_;
	std::vector<std::uint64_t> table_;
};

} // namespace

std::vector<std::uint64_t> tm_factor_complexity_table(std::uint64_t max_n) {
	std::uint64_t prefix = 16 * std::max<std::uint64_t>(max_n, 1);
	auto counts = counts_for_prefix(prefix, max_n);
	for (;;) {
		prefix *= 2;
		auto doubled = counts_for_prefix(prefix, max_n);
		if (doubled == counts) {
			return counts;
		}
		counts = std::move(doubled);
	}
}

BigInt tm_factor_complexity(std::uint64_t n) {
	static FactorComplexityCache cache;
	return cache.get(n);
}

} // namespace seqrec
