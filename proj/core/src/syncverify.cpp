#include "seqrec/syncverify.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "seqrec/errors.hpp"
#include "text_format.hpp"

namespace seqrec {

SyncDfa::SyncDfa(unsigned k, std::size_t num_states, std::size_t initial, std::vector<bool> accepting)
	: k_(k), initial_(initial), accepting_(std::move(accepting)) {
	if (k_ < 2) {
		throw ParameterError("base must be >= 2");
	}
	if (num_states == 0 || accepting_.size() != num_states) {
		throw ParameterError("accepting flags must cover every state");
	}
	if (initial_ >= num_states) {
		throw ParameterError("initial state out of range");
	}
	delta_.assign(num_states, std::vector<std::optional<std::size_t>>(std::size_t{k_} * k_));
}

void SyncDfa::add_transition(std::size_t from, unsigned d1, unsigned d2, std::size_t to) {
	if (from >= num_states() || to >= num_states()) {
		throw ParameterError("transition between unknown states");
	}
	if (d1 >= k_ || d2 >= k_) {
		throw ParameterError("digit out of range");
	}
	auto& slot = delta_[from][d1 * k_ + d2];
	if (slot) {
		throw ParameterError("nondeterministic transition on [" + std::to_string(d1) + "," + std::to_string(d2) +
		                     "] from state " + std::to_string(from));
	}
	slot = to;
}

std::optional<std::size_t> SyncDfa::next(std::size_t q, unsigned d1, unsigned d2) const {
	if (d1 >= k_ || d2 >= k_) {
		throw InputError("digit out of range for base " + std::to_string(k_));
	}
	return delta_.at(q)[d1 * k_ + d2];
}

bool SyncDfa::run(std::span<const PairDigit> word) const {
	std::size_t q = initial_;
	for (const auto& [d1, d2] : word) {
		const auto to = next(q, d1, d2);
		if (!to) {
			// Still validate the rest of the input.
			for (const auto& [e1, e2] : word) {
				if (e1 >= k_ || e2 >= k_) {
					throw InputError("digit out of range for base " + std::to_string(k_));
				}
			}
			return false;
		}
		q = *to;
	}
	return accepting_[q];
}

namespace {

std::vector<PairDigit> pair_word(std::vector<unsigned> a, std::vector<unsigned> b) {
	const auto len = std::max(a.size(), b.size());
	a.resize(len, 0);
	b.resize(len, 0);
	std::vector<PairDigit> word(len);
	for (std::size_t i = 0; i < len; ++i) {
		word[len - 1 - i] = {a[i], b[i]};
	}
	return word;
}

} // namespace

bool SyncDfa::accepts(const BigInt& n, const BigInt& m) const {
	if (n < 0 || m < 0) {
		throw InputError("synchronized pairs are natural numbers");
	}
	return run(pair_word(digits_lsd(n, k_), digits_lsd(m, k_)));
}

bool SyncDfa::accepts(std::uint64_t n, std::uint64_t m) const {
	return run(pair_word(digits_lsd(n, k_), digits_lsd(m, k_)));
}

SyncDfa build_fig2() {
	// 0 initial, 2 and 3 accepting. Short values run 0 -> 3 -> 2; the rest
	// run 0 -> 1 (loop on [*,0]) -> 2.
	SyncDfa dfa(2, 4, 0, {false, false, true, true});
	dfa.add_transition(0, 0, 0, 0);
	dfa.add_transition(0, 1, 1, 1);
	dfa.add_transition(1, 0, 1, 2);
	dfa.add_transition(1, 1, 1, 2);
	dfa.add_transition(1, 0, 0, 1);
	dfa.add_transition(1, 1, 0, 1);
	dfa.add_transition(0, 0, 1, 3);
	dfa.add_transition(3, 1, 0, 2);
	return dfa;
}

SyncDfa build_figk(unsigned k) {
	if (k <= 2) {
		throw ParameterError("the three-state machine needs k > 2");
	}
	SyncDfa dfa(k, 3, 0, {false, false, true});
	dfa.add_transition(0, 0, 0, 0);
	for (unsigned a = 1; a < k; ++a) {
		dfa.add_transition(0, a, 1, 1);
	}
	for (unsigned a = 0; a < k; ++a) {
		dfa.add_transition(1, a, 1, 2);
		dfa.add_transition(1, a, 0, 1);
	}
	dfa.add_transition(0, 0, 1, 2);
	for (unsigned a = 1; a < k; ++a) {
		dfa.add_transition(0, a, 2, 2);
	}
	return dfa;
}

SyncDfa equality_machine(unsigned k) {
	SyncDfa dfa(k, 1, 0, {true});
	for (unsigned d = 0; d < k; ++d) {
		dfa.add_transition(0, d, d, 0);
	}
	return dfa;
}

SyncDfa parse_sync_dfa(std::string_view text) {
	const auto lines = detail::tokenize_lines(text);
	if (lines.empty()) {
		throw ParseError(1, "empty automaton file");
	}
	const auto& header = lines.front();
	if (header.tokens.size() != 4 || header.tokens[0] != "base" || header.tokens[2] != "msd" ||
	    header.tokens[3] != "pair") {
		throw ParseError(header.number, "expected 'base <k> msd pair'");
	}
	const auto k = detail::parse_index(header.tokens[1], header.number, "base");
	if (k < 2 || k > 1024) {
		throw ParseError(header.number, "base must be >= 2");
	}

	std::map<std::uint64_t, std::pair<bool, std::size_t>> states; // id -> (accepting, line)
	std::optional<std::uint64_t> initial;
	struct Trans {
		std::uint64_t from, d1, d2, to;
		std::size_t line;
	};
	std::vector<Trans> trans;
	for (std::size_t i = 1; i < lines.size(); ++i) {
		const auto& line = lines[i];
		const auto& tok = line.tokens;
		if (tok[0] == "state" && tok.size() == 3) {
			const auto id = detail::parse_index(tok[1], line.number, "state id");
			if (tok[2] != "0" && tok[2] != "1") {
				throw ParseError(line.number, "accepting flag must be 0 or 1");
			}
			if (!states.emplace(id, std::pair{tok[2] == "1", line.number}).second) {
				throw ParseError(line.number, "duplicate state " + tok[1]);
			}
			if (!initial) {
				initial = id;
			}
		} else if (tok[0] == "trans" && tok.size() == 4) {
			const auto comma = tok[2].find(',');
			if (comma == std::string::npos) {
				throw ParseError(line.number, "pair label must be <d1>,<d2>");
			}
			Trans t{detail::parse_index(tok[1], line.number, "state id"),
			        detail::parse_index(tok[2].substr(0, comma), line.number, "digit"),
			        detail::parse_index(tok[2].substr(comma + 1), line.number, "digit"),
			        detail::parse_index(tok[3], line.number, "state id"), line.number};
			if (t.d1 >= k || t.d2 >= k) {
				throw ParseError(line.number, "digit out of range for base " + std::to_string(k));
			}
			trans.push_back(t);
		} else {
			throw ParseError(line.number, "malformed line");
		}
	}
	if (states.empty()) {
		throw ParseError(header.number, "no states declared");
	}
	std::uint64_t expect = 0;
	std::vector<bool> accepting;
	for (const auto& [id, decl] : states) {
		if (id != expect++) {
			throw ParseError(decl.second, "state ids must be 0.." + std::to_string(states.size() - 1));
		}
		accepting.push_back(decl.first);
	}
	SyncDfa dfa(static_cast<unsigned>(k), states.size(), *initial, std::move(accepting));
	for (const auto& t : trans) {
		if (!states.contains(t.from) || !states.contains(t.to)) {
			throw ParseError(t.line, "transition names an undeclared state");
		}
		if (dfa.next(t.from, static_cast<unsigned>(t.d1), static_cast<unsigned>(t.d2))) {
			throw ParseError(t.line, "duplicate transition (" + std::to_string(t.from) + ",[" + std::to_string(t.d1) +
			                             "," + std::to_string(t.d2) + "])");
		}
		dfa.add_transition(t.from, static_cast<unsigned>(t.d1), static_cast<unsigned>(t.d2), t.to);
	}
	return dfa;
}

std::string serialize(const SyncDfa& dfa) {
	std::ostringstream os;
	os << "base " << dfa.base() << " msd pair\n";
	std::vector<std::size_t> order{dfa.initial()};
	for (std::size_t q = 0; q < dfa.num_states(); ++q) {
		if (q != dfa.initial()) {
			order.push_back(q);
		}
	}
	for (auto q : order) {
		os << "state " << q << ' ' << (dfa.accepting(q) ? 1 : 0) << '\n';
	}
	for (auto q : order) {
		for (unsigned d1 = 0; d1 < dfa.base(); ++d1) {
			for (unsigned d2 = 0; d2 < dfa.base(); ++d2) {
				if (const auto to = dfa.next(q, d1, d2)) {
					os << "trans " << q << ' ' << d1 << ',' << d2 << ' ' << *to << '\n';
				}
			}
		}
	}
	return os.str();
}

Certificate verify_sync(const SyncDfa& dfa, const SequenceOracle& oracle, std::uint64_t max_n,
                        unsigned negatives_per_n, std::uint64_t seed) {
	Certificate cert;
	cert.claim = {{"synchronized", oracle.describe()},
	              {"k", dfa.base()},
	              {"negatives_per_n", negatives_per_n},
	              {"seed", seed}};
	cert.range = {0, max_n};
	std::uint64_t negatives_checked = 0;
	for (std::uint64_t n = 0; n <= max_n; ++n) {
		const BigInt v = oracle.eval(n);
		if (v < 0) {
			throw DomainError("synchronized sequences take natural values; f(" + std::to_string(n) + ") < 0");
		}
		if (!dfa.accepts(to_big(n), v)) {
			cert.status = Status::Counterexample;
			cert.witness["rejected_graph_point"] = {{"n", n}, {"m", to_string(v)}};
			return cert;
		}
		std::vector<BigInt> negatives;
		auto offer = [&](const BigInt& m) {
			if (negatives.size() < negatives_per_n && m >= 0 && m != v &&
			    std::find(negatives.begin(), negatives.end(), m) == negatives.end()) {
				negatives.push_back(m);
			}
		};
		offer(v + 1);
		offer(v - 1);
		offer(BigInt(0));
		offer(2 * v);
		std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + n);
		const BigInt bound = 4 * v + 4;
		if (mpz_sizeinbase(bound.get_mpz_t(), 2) <= 62) {
			std::uniform_int_distribution<std::uint64_t> draw(0, bound.get_ui());
			for (int tries = 0; negatives.size() < negatives_per_n && tries < 64; ++tries) {
				offer(to_big(draw(rng)));
			}
		} else {
			gmp_randclass draws(gmp_randinit_mt);
			draws.seed(rng());
			for (int tries = 0; negatives.size() < negatives_per_n && tries < 64; ++tries) {
				offer(draws.get_z_range(bound + 1));
			}
		}
		for (const auto& m : negatives) {
			++negatives_checked;
			if (dfa.accepts(to_big(n), m)) {
				cert.status = Status::Counterexample;
				cert.witness["accepted_non_graph_point"] = {{"n", n}, {"m", to_string(m)}, {"f(n)", to_string(v)}};
				return cert;
			}
		}
	}
	cert.status = Status::Verified;
	cert.witness["negatives_checked"] = negatives_checked;
	return cert;
}

Certificate repr_pattern_check(unsigned k, std::uint64_t max_n) {
	if (k < 2) {
		throw ParameterError("k must be >= 2");
	}
	if (max_n < k) {
		throw ParameterError("pattern check needs max_n >= k");
	}
	const GOracle g(k, k);
	Certificate cert;
	cert.claim = {{"pattern", "base-k representation of g_{k,k}(n) is 1 0^(L-2) 1"}, {"k", k}};
	cert.range = {k, max_n};
	for (std::uint64_t n = k; n <= max_n; ++n) {
		const auto len = digits_lsd(n, k).size();
		auto rep = digits_lsd(g.eval(n), k);
		std::vector<unsigned> expected(len, 0);
		expected.front() = 1;
		expected.back() = 1;
		if (rep != expected) {
			std::reverse(rep.begin(), rep.end());
			std::string shown;
			for (auto d : rep) {
				shown += std::to_string(d) + (k > 10 ? "." : "");
			}
			cert.status = Status::Counterexample;
			cert.witness = {{"n", n}, {"representation", shown}};
			return cert;
		}
	}
	cert.status = Status::Verified;
	return cert;
}

std::string_view to_string(SyncVerdict verdict) noexcept {
	return verdict == SyncVerdict::NotSynchronized ? "NotSynchronized" : "PossiblySynchronized";
}

SyncScreen sync_growth_screen(const SequenceOracle& oracle, unsigned k, unsigned depth, double margin) {
	if (depth < 6) {
		throw ParameterError("growth screen needs depth >= 6");
	}
	const double theta = growth_exponent(oracle, k, depth);
	if (theta > 1 + margin) {
		return {SyncVerdict::NotSynchronized, theta, "superlinear growth"};
	}
	if (theta > margin && theta < 1 - margin) {
		return {SyncVerdict::NotSynchronized, theta, "unbounded but sublinear growth"};
	}
	return {SyncVerdict::PossiblySynchronized, theta, "growth compatible with O(1) or linear"};
}

} // namespace seqrec
