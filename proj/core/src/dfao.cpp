#include "seqrec/dfao.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "seqrec/errors.hpp"
#include "text_format.hpp"

namespace seqrec {

std::string_view to_string(DigitOrder order) noexcept { return order == DigitOrder::Lsd ? "lsd" : "msd"; }

Dfao::Dfao(unsigned k, DigitOrder order, std::vector<BigInt> outputs, std::vector<std::vector<std::size_t>> delta,
           std::size_t initial)
	: k_(k), order_(order), outputs_(std::move(outputs)), delta_(std::move(delta)), initial_(initial) {
	if (k_ < 2) {
		throw ParameterError("DFAO base must be >= 2");
	}
	if (outputs_.empty()) {
		throw ParameterError("DFAO needs at least one state");
	}
	if (delta_.size() != outputs_.size()) {
		throw ParameterError("transition table and output table disagree on the number of states");
	}
	if (initial_ >= outputs_.size()) {
		throw ParameterError("initial state out of range");
	}
	for (std::size_t q = 0; q < delta_.size(); ++q) {
		if (delta_[q].size() != k_) {
			throw ParameterError("state " + std::to_string(q) + " does not have " + std::to_string(k_) + " transitions");
		}
		for (auto to : delta_[q]) {
			if (to >= outputs_.size()) {
				throw ParameterError("transition from state " + std::to_string(q) + " to unknown state");
			}
		}
	}
}

std::size_t Dfao::run(std::span<const unsigned> word, std::size_t from) const {
	std::size_t q = from;
	for (unsigned d : word) {
		if (d >= k_) {
			throw InputError("digit " + std::to_string(d) + " out of range for base " + std::to_string(k_));
		}
		q = delta_[q][d];
	}
	return q;
}

BigInt Dfao::eval(const BigInt& n) const {
	if (n < 0) {
		throw DomainError("DFAO input must be >= 0");
	}
	auto digits = digits_lsd(n, k_);
	if (order_ == DigitOrder::Msd) {
		std::reverse(digits.begin(), digits.end());
	}
	return outputs_[run(digits)];
}

BigInt Dfao::eval(std::uint64_t n) const {
	auto digits = digits_lsd(n, k_);
	if (order_ == DigitOrder::Msd) {
		std::reverse(digits.begin(), digits.end());
	}
	return outputs_[run(digits)];
}

bool Dfao::zero_insensitive() const {
	std::vector<bool> seen(num_states(), false);
	std::vector<std::size_t> stack{initial_};
	seen[initial_] = true;
	while (!stack.empty()) {
		const auto q = stack.back();
		stack.pop_back();
		if (order_ == DigitOrder::Lsd) {
			if (outputs_[delta_[q][0]] != outputs_[q]) {
				return false;
			}
		}
		for (auto to : delta_[q]) {
			if (!seen[to]) {
				seen[to] = true;
				stack.push_back(to);
			}
		}
	}
	// msd: leading zeros are read first, from the initial state only. A zero
	// self-loop there is sufficient (not necessary).
	return order_ == DigitOrder::Lsd || delta_[initial_][0] == initial_;
}

std::vector<ReachSet> reach_sets(const Dfao& dfao, unsigned max_depth) {
	if (dfao.order() != DigitOrder::Lsd) {
		throw DigitOrderError("reach sets are defined for lsd-first automata");
	}
	std::vector<ReachSet> out;
	out.reserve(max_depth + 1);
	std::vector<std::size_t> current{dfao.initial()};
	for (unsigned t = 0;; ++t) {
		out.push_back({t, current});
		if (t == max_depth) {
			break;
		}
		std::vector<bool> mark(dfao.num_states(), false);
		for (auto q : current) {
			for (unsigned d = 0; d < dfao.base(); ++d) {
				mark[dfao.next(q, d)] = true;
			}
		}
		current.clear();
		for (std::size_t q = 0; q < mark.size(); ++q) {
			if (mark[q]) {
				current.push_back(q);
			}
		}
	}
	return out;
}

Dfao parse_dfao(std::string_view text) {
	const auto lines = detail::tokenize_lines(text);
	if (lines.empty()) {
		throw ParseError(1, "empty automaton file");
	}
	const auto& header = lines.front();
	if (header.tokens.size() != 3 || header.tokens[0] != "base") {
		throw ParseError(header.number, "expected 'base <k> <lsd|msd>'");
	}
	const auto k = detail::parse_index(header.tokens[1], header.number, "base");
	if (k < 2 || k > 1u << 16) {
		throw ParseError(header.number, "base must be >= 2");
	}
	DigitOrder order;
	if (header.tokens[2] == "lsd") {
		order = DigitOrder::Lsd;
	} else if (header.tokens[2] == "msd") {
		order = DigitOrder::Msd;
	} else {
		throw ParseError(header.number, "digit order must be lsd or msd, got '" + header.tokens[2] + "'");
	}

	struct StateDecl {
		BigInt output;
		std::size_t line;
	};
	std::map<std::uint64_t, StateDecl> states;
	std::optional<std::uint64_t> initial;
	std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<std::uint64_t, std::size_t>> trans; // -> (to, line)

	for (std::size_t i = 1; i < lines.size(); ++i) {
		const auto& line = lines[i];
		const auto& tok = line.tokens;
		if (tok[0] == "state" && tok.size() == 3) {
			const auto id = detail::parse_index(tok[1], line.number, "state id");
			BigInt out;
			if (out.set_str(tok[2], 10) != 0) {
				throw ParseError(line.number, "malformed output '" + tok[2] + "'");
			}
			if (!states.emplace(id, StateDecl{out, line.number}).second) {
				throw ParseError(line.number, "duplicate state " + tok[1]);
			}
			if (!initial) {
				initial = id;
			}
		} else if (tok[0] == "trans" && tok.size() == 4) {
			const auto from = detail::parse_index(tok[1], line.number, "state id");
			const auto digit = detail::parse_index(tok[2], line.number, "digit");
			const auto to = detail::parse_index(tok[3], line.number, "state id");
			if (digit >= k) {
				throw ParseError(line.number, "digit " + tok[2] + " out of range for base " + std::to_string(k));
			}
			if (!trans.emplace(std::pair{from, digit}, std::pair{to, line.number}).second) {
				throw ParseError(line.number, "duplicate transition (" + tok[1] + "," + tok[2] + ")");
			}
		} else if (tok[0] == "base") {
			throw ParseError(line.number, "repeated base line");
		} else {
			throw ParseError(line.number, "malformed line");
		}
	}

	if (states.empty()) {
		throw ParseError(header.number, "no states declared");
	}
	for (const auto& [key, value] : trans) {
		for (auto id : {key.first, value.first}) {
			if (!states.contains(id)) {
				throw ParseError(value.second, "state " + std::to_string(id) + " has no output");
			}
		}
	}
	std::uint64_t expect = 0;
	for (const auto& [id, decl] : states) {
		if (id != expect++) {
			throw ParseError(decl.line, "state ids must be 0.." + std::to_string(states.size() - 1));
		}
	}

	std::vector<BigInt> outputs;
	std::vector<std::vector<std::size_t>> delta(states.size(), std::vector<std::size_t>(k));
	for (const auto& [id, decl] : states) {
		outputs.push_back(decl.output);
		for (std::uint64_t d = 0; d < k; ++d) {
			const auto it = trans.find({id, d});
			if (it == trans.end()) {
				throw ParseError(decl.line,
				                 "transition (" + std::to_string(id) + "," + std::to_string(d) + ") undefined");
			}
			delta[id][d] = it->second.first;
		}
	}
	return Dfao(static_cast<unsigned>(k), order, std::move(outputs), std::move(delta), *initial);
}

namespace {

std::vector<std::size_t> listing_order(std::size_t num_states, std::size_t initial) {
	std::vector<std::size_t> order{initial};
	for (std::size_t q = 0; q < num_states; ++q) {
		if (q != initial) {
			order.push_back(q);
		}
	}
	return order;
}

} // namespace

std::string serialize(const Dfao& dfao) {
	std::ostringstream os;
	os << "base " << dfao.base() << ' ' << to_string(dfao.order()) << '\n';
	const auto order = listing_order(dfao.num_states(), dfao.initial());
	for (auto q : order) {
		os << "state " << q << ' ' << to_string(dfao.output(q)) << '\n';
	}
	for (auto q : order) {
		for (unsigned d = 0; d < dfao.base(); ++d) {
			os << "trans " << q << ' ' << d << ' ' << dfao.next(q, d) << '\n';
		}
	}
	return os.str();
}

Dfao load_dfao(const std::string& path) {
	std::ifstream in(path);
	if (!in) {
		throw InputError("cannot open " + path);
	}
	std::ostringstream buf;
	buf << in.rdbuf();
	return parse_dfao(buf.str());
}

Dfao thue_morse_dfao() {
	return Dfao(2, DigitOrder::Lsd, {BigInt(0), BigInt(1)}, {{0, 1}, {1, 0}}, 0);
}

} // namespace seqrec
