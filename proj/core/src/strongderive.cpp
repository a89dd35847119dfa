#include "seqrec/strongderive.hpp"

#include <algorithm>
#include <optional>
#include <thread>

#include "seqrec/errors.hpp"

namespace seqrec {

using nlohmann::json;

LevelPair find_rt(const Dfao& dfao) {
	if (dfao.order() != DigitOrder::Lsd) {
		throw DigitOrderError("find_rt needs an lsd-first automaton");
	}
	std::vector<std::vector<bool>> sets;
	std::vector<bool> current(dfao.num_states(), false);
	current[dfao.initial()] = true;
	for (unsigned t = 0;; ++t) {
		for (unsigned r = 0; r < t; ++r) {
			bool subset = true;
			for (std::size_t q = 0; q < current.size() && subset; ++q) {
				subset = !current[q] || sets[r][q];
			}
			if (subset) {
				return {r, t};
			}
		}
		sets.push_back(current);
		std::vector<bool> next(dfao.num_states(), false);
		for (std::size_t q = 0; q < current.size(); ++q) {
			if (current[q]) {
				for (unsigned d = 0; d < dfao.base(); ++d) {
					next[dfao.next(q, d)] = true;
				}
			}
		}
		current = std::move(next);
	}
}

SubsequenceMapping derive_mapping(const Dfao& dfao, unsigned r, unsigned t) {
	if (dfao.order() != DigitOrder::Lsd) {
		throw DigitOrderError("derive_mapping needs an lsd-first automaton");
	}
	if (r >= t) {
		throw ParameterError("need r < t");
	}
	if (!dfao.zero_insensitive()) {
		throw PreconditionError("automaton output changes on trailing zeros");
	}
	const auto sets = reach_sets(dfao, t);
	const auto& st = sets[t].states;
	const auto& sr = sets[r].states;
	for (auto q : st) {
		if (!std::binary_search(sr.begin(), sr.end(), q)) {
			throw PreconditionError("S_" + std::to_string(t) + " is not a subset of S_" + std::to_string(r) +
			                        ": state " + std::to_string(q) + " is missing");
		}
	}

	const unsigned k = dfao.base();
	const auto kr = checked_pow(k, r);
	const auto kt = checked_pow(k, t);
	std::vector<std::optional<std::uint64_t>> smallest(dfao.num_states());
	for (std::uint64_t a = 0; a < kr; ++a) {
		const auto q = dfao.run(padded_digits_lsd(a, k, r));
		if (!smallest[q]) {
			smallest[q] = a;
		}
	}
	SubsequenceMapping out{k, r, t, {}};
	out.map.reserve(kt);
	for (std::uint64_t b = 0; b < kt; ++b) {
		const auto q = dfao.run(padded_digits_lsd(b, k, t));
		out.map.push_back(smallest[q].value());
	}
	return out;
}

Certificate verify_mapping(const SequenceOracle& oracle, const SubsequenceMapping& mapping, std::uint64_t max_n,
                           unsigned jobs) {
	const auto kt = checked_pow(mapping.k, mapping.t);
	const auto kr = checked_pow(mapping.k, mapping.r);
	if (mapping.r >= mapping.t || mapping.map.size() != kt) {
		throw ParameterError("malformed mapping");
	}
	for (auto a : mapping.map) {
		if (a >= kr) {
			throw ParameterError("mapping image out of range");
		}
	}

	Certificate cert;
	cert.claim = {{"mapping", to_json(mapping)}, {"oracle", oracle.describe()}};
	cert.range = {0, max_n};

	jobs = std::max(1u, jobs);
	std::vector<std::optional<Counterexample>> found(jobs);
	const std::uint64_t step = (max_n + jobs) / jobs;
	{
		std::vector<std::jthread> workers;
		for (unsigned j = 0; j < jobs; ++j) {
			const std::uint64_t lo = j * step;
			if (lo > max_n) {
				break;
			}
			const std::uint64_t hi = std::min(max_n, lo + step - 1);
			workers.emplace_back([&, j, lo, hi] {
				for (auto n = lo; n <= hi; ++n) {
					for (std::uint64_t b = 0; b < kt; ++b) {
						const BigInt lhs = oracle.eval(kt * n + b);
						const BigInt rhs = oracle.eval(kr * n + mapping.map[b]);
						if (lhs != rhs) {
							found[j] = Counterexample{n, b, Rational(lhs), Rational(rhs)};
							return;
						}
					}
				}
			});
		}
	}
	cert.status = Status::Verified;
	for (const auto& f : found) {
		if (f) {
			cert.status = Status::Counterexample;
			cert.counterexample = f;
			break;
		}
	}
	return cert;
}

RecursionScheme mapping_to_scheme(const SubsequenceMapping& mapping) {
	const auto kr = checked_pow(mapping.k, mapping.r);
	RecursionScheme scheme{mapping.k, mapping.r, mapping.t, 0, static_cast<std::int64_t>(kr), 0, {}};
	for (auto a : mapping.map) {
		std::vector<Rational> row(kr, Rational(0));
		row.at(a) = 1;
		scheme.coeffs.push_back(std::move(row));
	}
	validate(scheme);
	return scheme;
}

json to_json(const SubsequenceMapping& mapping) {
	json map = json::object();
	for (std::size_t b = 0; b < mapping.map.size(); ++b) {
		map[std::to_string(b)] = mapping.map[b];
	}
	return {{"k", mapping.k}, {"r", mapping.r}, {"t", mapping.t}, {"map", std::move(map)}};
}

SubsequenceMapping mapping_from_json(const json& doc) {
	SubsequenceMapping m;
	try {
		m.k = doc.at("k").get<unsigned>();
		m.r = doc.at("r").get<unsigned>();
		m.t = doc.at("t").get<unsigned>();
		if (m.k < 2 || m.r >= m.t) {
			throw ParameterError("malformed mapping parameters");
		}
		const auto kt = checked_pow(m.k, m.t);
		for (std::uint64_t b = 0; b < kt; ++b) {
			m.map.push_back(doc.at("map").at(std::to_string(b)).get<std::uint64_t>());
		}
	} catch (const json::exception& e) {
		throw InputError(std::string("malformed mapping: ") + e.what());
	}
	return m;
}

} // namespace seqrec
