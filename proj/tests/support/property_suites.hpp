#pragma once

// Randomized property checks with fixed seeds. Each suite returns the number
// of cases run and the first failure, so the same code backs the unit tests
// and the acceptance report.

#include <random>
#include <sstream>
#include <string>

#include "seqrec/certificate.hpp"
#include "seqrec/dfao.hpp"
#include "seqrec/ratlin.hpp"
#include "seqrec/recsolve.hpp"
#include "seqrec/syncverify.hpp"
#include "test_oracles.hpp"

namespace props {

struct Outcome {
	std::string name;
	int cases = 0;
	int failures = 0;
	std::string first_failure;

	bool ok() const { return failures == 0; }
	void fail(const std::string& what) {
		if (failures++ == 0) {
			first_failure = what;
		}
	}
};

inline const char* const kLsdGolden[] = {"thue_morse.dfao", "period_doubling.dfao", "rudin_shapiro.dfao",
                                         "digit_sum_mod3.dfao"};

inline seqrec::Dfao random_dfao(std::mt19937_64& rng, bool any_order = true) {
	const unsigned k = 2 + rng() % 4;
	const std::size_t states = 1 + rng() % 6;
	std::vector<seqrec::BigInt> outputs;
	std::vector<std::vector<std::size_t>> delta(states);
	for (std::size_t q = 0; q < states; ++q) {
		outputs.emplace_back(static_cast<long>(rng() % 21) - 10);
		for (unsigned d = 0; d < k; ++d) {
			delta[q].push_back(rng() % states);
		}
	}
	const auto order = any_order && rng() % 2 ? seqrec::DigitOrder::Msd : seqrec::DigitOrder::Lsd;
	return seqrec::Dfao(k, order, outputs, delta, rng() % states);
}

inline seqrec::SyncDfa machine_for(unsigned k) { return k == 2 ? seqrec::build_fig2() : seqrec::build_figk(k); }

// Extra leading [0,0] pairs never change acceptance; neither do trailing
// zeros for lsd automata or leading zeros for msd ones.
inline Outcome padding_invariance(int cases = 600) {
	Outcome out{"padding invariance"};
	std::mt19937_64 rng(1001);
	const auto tm_msd = seqrec::load_dfao(std::string(SEQREC_TEST_DATA) + "/thue_morse_msd.dfao");
	for (int i = 0; i < cases; ++i, ++out.cases) {
		if (i % 2 == 0) {
			const unsigned k = 2 + rng() % 4;
			const auto m = machine_for(k);
			const std::uint64_t n = rng() % 100000;
			const std::uint64_t v = i % 4 == 0 ? oracle::g(k, k, n).get_ui() : rng() % 200000;
			auto dn = seqrec::digits_lsd(n, k), dv = seqrec::digits_lsd(v, k);
			const auto len = std::max(dn.size(), dv.size()) + 1 + rng() % 3;
			dn.resize(len, 0);
			dv.resize(len, 0);
			std::vector<seqrec::PairDigit> word;
			for (std::size_t j = len; j-- > 0;) {
				word.emplace_back(dn[j], dv[j]);
			}
			if (m.run(word) != m.accepts(n, v) || m.accepts(n, v) != (oracle::g(k, k, n) == v)) {
				out.fail("sync k=" + std::to_string(k) + " n=" + std::to_string(n) + " m=" + std::to_string(v));
			}
		} else {
			const bool msd = i % 6 == 1;
			const auto dfao = msd ? tm_msd
			                      : seqrec::load_dfao(std::string(SEQREC_TEST_DATA) + "/" + kLsdGolden[rng() % 4]);
			const std::uint64_t n = rng() % 1000000;
			auto digits = seqrec::digits_lsd(n, dfao.base());
			const auto zeros = 1 + rng() % 4;
			if (msd) {
				std::reverse(digits.begin(), digits.end());
				digits.insert(digits.begin(), zeros, 0);
			} else {
				digits.insert(digits.end(), zeros, 0);
			}
			if (dfao.output(dfao.run(digits)) != dfao.eval(n)) {
				out.fail("dfao n=" + std::to_string(n));
			}
		}
	}
	return out;
}

inline seqrec::RecursionScheme random_scheme(std::mt19937_64& rng) {
	seqrec::RecursionScheme s;
	s.k = 2 + rng() % 3;
	s.t = 1 + rng() % 2;
	s.r = rng() % s.t;
	s.L = static_cast<std::int64_t>(rng() % 9) - 4;
	s.U = s.L + 1 + static_cast<std::int64_t>(rng() % 6);
	s.n0 = rng() % 3;
	s.coeffs.resize(s.modulus());
	for (auto& row : s.coeffs) {
		for (auto a = s.L; a < s.U; ++a) {
			row.push_back(seqrec::make_rational(static_cast<std::int64_t>(rng() % 41) - 20,
			                                    1 + static_cast<std::int64_t>(rng() % 5)));
		}
	}
	return s;
}

// serialize/parse and JSON encode/decode are inverse on every format.
inline Outcome round_trip(int cases = 600) {
	Outcome out{"round-trip serialization"};
	std::mt19937_64 rng(2002);
	for (int i = 0; i < cases; ++i, ++out.cases) {
		switch (i % 4) {
		case 0: {
			const auto dfao = random_dfao(rng);
			const auto text = seqrec::serialize(dfao);
			if (!(seqrec::parse_dfao(text) == dfao) || seqrec::serialize(seqrec::parse_dfao(text)) != text) {
				out.fail("dfao:\n" + text);
			}
			break;
		}
		case 1: {
			const unsigned k = 2 + rng() % 3;
			const std::size_t states = 1 + rng() % 5;
			std::vector<bool> acc;
			for (std::size_t q = 0; q < states; ++q) {
				acc.push_back(rng() % 2);
			}
			seqrec::SyncDfa m(k, states, rng() % states, acc);
			for (std::size_t q = 0; q < states; ++q) {
				for (unsigned a = 0; a < k; ++a) {
					for (unsigned b = 0; b < k; ++b) {
						if (rng() % 3) {
							m.add_transition(q, a, b, rng() % states);
						}
					}
				}
			}
			const auto text = seqrec::serialize(m);
			if (!(seqrec::parse_sync_dfa(text) == m) || seqrec::serialize(seqrec::parse_sync_dfa(text)) != text) {
				out.fail("sync:\n" + text);
			}
			break;
		}
		case 2: {
			const auto s = random_scheme(rng);
			const auto doc = nlohmann::json::parse(seqrec::to_json(s).dump());
			const bool strong = s.n0 == 0 && s.L >= 0 && s.U <= static_cast<std::int64_t>(s.modulus());
			if (!(seqrec::scheme_from_json(doc) == s) || seqrec::is_strong(s) != strong) {
				out.fail("scheme " + doc.dump());
			}
			break;
		}
		default: {
			seqrec::Certificate c;
			c.claim = {{"case", i}};
			c.range = {rng() % 100, rng() % 1000};
			c.status = static_cast<seqrec::Status>(rng() % 4);
			c.vacuous = rng() % 2;
			if (c.status == seqrec::Status::Counterexample) {
				c.counterexample = seqrec::Counterexample{rng() % 50, rng() % 16,
				                                          seqrec::make_rational(static_cast<std::int64_t>(rng() % 99), 7),
				                                          seqrec::Rational(static_cast<long>(rng() % 99))};
			}
			c.witness["x"] = rng() % 10;
			const auto doc = seqrec::to_json(c);
			const auto back = seqrec::certificate_from_json(nlohmann::json::parse(doc.dump()));
			if (seqrec::to_json(back) != doc) {
				out.fail("certificate " + doc.dump());
			}
		}
		}
	}
	return out;
}

// solve_exact against ranks from fraction-free elimination, with every
// returned solution, null vector and inconsistency witness checked by hand.
inline Outcome solver_agreement(int cases = 600) {
	using seqrec::Rational;
	Outcome out{"solver-oracle agreement"};
	std::mt19937_64 rng(20240611);
	std::uniform_int_distribution<int> dim(1, 6), val(-4, 4), den(1, 3);
	for (int trial = 0; trial < cases; ++trial, ++out.cases) {
		const auto rows = dim(rng), cols = dim(rng);
		seqrec::LinearSystem sys(cols);
		std::vector<std::vector<mpz_class>> a, ab;
		std::vector<std::vector<Rational>> ext_rows;
		const bool low_rank = trial % 3 == 0;
		for (int i = 0; i < rows; ++i) {
			std::vector<Rational> ext(cols + 1);
			if (low_rank && i >= 2) {
				// Combination of the first two rows; consistent on even trials.
				const Rational x(val(rng)), y(val(rng));
				for (int j = 0; j <= cols; ++j) {
					ext[j] = x * ext_rows[0][j] + y * ext_rows[1][j];
				}
				if (trial % 2 == 1) {
					ext[cols] += Rational(val(rng));
				}
			} else {
				for (auto& x : ext) {
					x = Rational(val(rng), den(rng));
					x.canonicalize();
				}
			}
			ext_rows.push_back(ext);
			std::vector<Rational> coeffs(ext.begin(), ext.end() - 1);
			a.push_back(oracle::clear_row(coeffs));
			ab.push_back(oracle::clear_row(ext));
			sys.add_row(coeffs, ext[cols]);
		}
		auto residual = [&](const std::vector<Rational>& x, bool homogeneous) {
			for (const auto& row : ext_rows) {
				Rational acc = 0;
				for (int j = 0; j < cols; ++j) {
					acc += row[j] * x[j];
				}
				if (acc != (homogeneous ? Rational(0) : row[cols])) {
					return false;
				}
			}
			return true;
		};
		const auto rank_a = oracle::bareiss_rank(a);
		const auto rank_ab = oracle::bareiss_rank(ab);
		const auto res = seqrec::solve_exact(sys);
		const std::string tag = "trial " + std::to_string(trial);
		if (rank_a != rank_ab) {
			const auto* inc = std::get_if<seqrec::Inconsistent>(&res);
			if (!inc) {
				out.fail(tag + ": expected Inconsistent");
				continue;
			}
			std::vector<Rational> combo(cols + 1);
			for (std::size_t i = 0; i < inc->rows.size(); ++i) {
				for (int j = 0; j <= cols; ++j) {
					combo[j] += inc->multipliers[i] * ext_rows[inc->rows[i]][j];
				}
			}
			bool zero = true;
			for (int j = 0; j < cols; ++j) {
				zero = zero && combo[j] == 0;
			}
			if (!zero || combo[cols] == 0 || combo[cols] != inc->residual) {
				out.fail(tag + ": bad inconsistency witness");
			}
		} else if (rank_a == static_cast<std::size_t>(cols)) {
			const auto* u = std::get_if<seqrec::Unique>(&res);
			if (!u || !residual(u->solution, false)) {
				out.fail(tag + ": expected a unique solution");
			}
		} else {
			const auto* aff = std::get_if<seqrec::Affine>(&res);
			if (!aff || !residual(aff->particular, false) || aff->null_space.size() != cols - rank_a) {
				out.fail(tag + ": expected an affine solution set of dimension " + std::to_string(cols - rank_a));
				continue;
			}
			for (auto f : aff->free_columns) {
				if (aff->particular[f] != 0) {
					out.fail(tag + ": free variable not pinned to zero");
				}
			}
			for (const auto& v : aff->null_space) {
				if (!residual(v, true)) {
					out.fail(tag + ": null vector does not solve the homogeneous system");
				}
			}
		}
	}
	return out;
}

// Whatever fit returns reproduces every training row (checked here directly),
// and verify over the train range agrees.
inline Outcome fit_verify_soundness(int cases = 500) {
	Outcome out{"fit/verify soundness"};
	std::mt19937_64 rng(3003);
	int found = 0;
	for (int trial = 0; trial < cases; ++trial, ++out.cases) {
		seqrec::OraclePtr f;
		unsigned k;
		switch (trial % 4) {
		case 0: {
			const auto dfao = random_dfao(rng, false);
			k = dfao.base();
			f = std::make_shared<seqrec::DfaoOracle>(dfao);
			break;
		}
		case 1:
			k = 2 + rng() % 2;
			f = std::make_shared<seqrec::GOracle>(k, 2 + rng() % 3);
			break;
		case 2:
			k = 2 + rng() % 2;
			f = std::make_shared<seqrec::DigitSumOracle>(k);
			break;
		default: {
			// Random quadratic polynomial.
			k = 2 + rng() % 2;
			const long c0 = static_cast<long>(rng() % 7) - 3, c1 = static_cast<long>(rng() % 7) - 3,
			           c2 = static_cast<long>(rng() % 3);
			f = std::make_shared<seqrec::FunctionOracle>("poly", [=](std::uint64_t n) -> seqrec::BigInt {
				const seqrec::BigInt x = seqrec::to_big(n);
				return c0 + c1 * x + c2 * x * x;
			});
		}
		}
		const unsigned t = 1 + rng() % 2;
		const unsigned r = rng() % t;
		const std::int64_t L = rng() % 3 == 0 ? -static_cast<std::int64_t>(rng() % 3) : 0;
		const std::int64_t U = L + 1 + static_cast<std::int64_t>(rng() % 4);
		const std::uint64_t n0 = L < 0 ? 2 : rng() % 2;
		const seqrec::IndexRange train{n0, n0 + 12 + rng() % 20};
		const auto result = seqrec::fit(*f, k, r, t, L, U, n0, train);
		const std::string tag = "trial " + std::to_string(trial) + " " + f->describe();
		if (!result.found()) {
			if (result.certificate.status != seqrec::Status::NoSolution) {
				out.fail(tag + ": no scheme and no NoSolution certificate");
			}
			continue;
		}
		++found;
		const auto& s = *result.scheme;
		const auto kt = seqrec::checked_pow(k, t), kr = seqrec::checked_pow(k, r);
		for (auto n = train.lo; n <= train.hi; ++n) {
			for (std::uint64_t b = 0; b < kt; ++b) {
				seqrec::Rational rhs = 0;
				for (auto a = L; a < U; ++a) {
					rhs += s.coeff(b, a) * seqrec::Rational(f->eval(static_cast<std::uint64_t>(
						static_cast<std::int64_t>(kr * n) + a)));
				}
				if (rhs != seqrec::Rational(f->eval(kt * n + b))) {
					out.fail(tag + ": fitted row fails at n=" + std::to_string(n) + " b=" + std::to_string(b));
				}
			}
		}
		if (!seqrec::verify(*f, s, train).verified() || !result.certificate.verified()) {
			out.fail(tag + ": verify disagrees on the train range");
		}
	}
	if (found < cases / 10) {
		out.fail("only " + std::to_string(found) + " fits succeeded; suite too weak");
	}
	return out;
}

} // namespace props
