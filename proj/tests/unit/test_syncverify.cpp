#include <random>

#include <gtest/gtest.h>

#include "seqrec/errors.hpp"
#include "seqrec/syncverify.hpp"
#include "test_oracles.hpp"

using namespace seqrec;

TEST(Fig2, Examples) {
	const auto m = build_fig2();
	EXPECT_TRUE(m.accepts(1u, 2u));
	EXPECT_TRUE(m.accepts(2u, 3u));
	EXPECT_FALSE(m.accepts(2u, 5u));
	EXPECT_TRUE(m.accepts(0u, 1u));
	EXPECT_FALSE(m.accepts(0u, 2u));
	EXPECT_FALSE(m.accepts(0u, 0u));
	EXPECT_EQ(m.num_states(), 4u);
	EXPECT_TRUE(m.accepting(2));
	EXPECT_TRUE(m.accepting(3));
	// The path 0 -> 3 -> 2 on [0,1], [1,0].
	EXPECT_EQ(m.next(0, 0, 1), 3u);
	EXPECT_EQ(m.next(3, 1, 0), 2u);
}

TEST(FigK, Examples) {
	const auto m = build_figk(3);
	EXPECT_TRUE(m.accepts(1u, 2u));
	EXPECT_EQ(m.next(0, 1, 2), 2u);
	EXPECT_TRUE(m.accepts(3u, 4u));
	EXPECT_FALSE(m.accepts(3u, 5u));
	EXPECT_THROW(build_figk(2), ParameterError);
	EXPECT_THROW(build_figk(1), ParameterError);
}

TEST(SyncDfa, AcceptsExactlyTheGraphOnSmallBox) {
	for (unsigned k = 2; k <= 5; ++k) {
		const auto m = k == 2 ? build_fig2() : build_figk(k);
		for (std::uint64_t n = 0; n <= 200; ++n) {
			const auto v = oracle::g(k, k, n);
			for (std::uint64_t mm = 0; mm <= 400; ++mm) {
				ASSERT_EQ(m.accepts(n, mm), v == mm) << "k=" << k << " n=" << n << " m=" << mm;
			}
		}
	}
}

TEST(SyncDfa, PaddingInvariance) {
	std::mt19937_64 rng(4242);
	for (unsigned k = 2; k <= 5; ++k) {
		const auto m = k == 2 ? build_fig2() : build_figk(k);
		for (int i = 0; i < 500; ++i) {
			const std::uint64_t n = rng() % 5000;
			const std::uint64_t v = i % 2 ? oracle::g(k, k, n).get_ui() : rng() % 10000;
			auto dn = digits_lsd(n, k), dm = digits_lsd(v, k);
			const auto len = std::max(dn.size(), dm.size()) + rng() % 4;
			dn.resize(len, 0);
			dm.resize(len, 0);
			std::vector<PairDigit> word;
			for (std::size_t j = len; j-- > 0;) {
				word.emplace_back(dn[j], dm[j]);
			}
			ASSERT_EQ(m.run(word), m.accepts(n, v)) << k << " " << n << " " << v;
		}
	}
}

TEST(SyncDfa, RejectsBadDigitsAndNondeterminism) {
	auto m = build_fig2();
	const std::vector<PairDigit> word{{0, 2}};
	EXPECT_THROW(m.run(word), InputError);
	const std::vector<PairDigit> late{{1, 0}, {3, 0}};
	EXPECT_THROW(m.run(late), InputError);
	EXPECT_THROW(m.add_transition(0, 0, 0, 1), ParameterError);
	EXPECT_THROW(m.accepts(BigInt(-1), BigInt(0)), InputError);
}

TEST(SyncDfa, BigValues) {
	const auto m = build_figk(3);
	const BigInt n = big_pow(3, 80) + 5;
	EXPECT_TRUE(m.accepts(n, big_pow(3, 80) + 1));
	EXPECT_FALSE(m.accepts(n, big_pow(3, 80) + 2));
}

TEST(EqualityMachine, AcceptsDiagonal) {
	const auto m = equality_machine(3);
	EXPECT_TRUE(m.accepts(0u, 0u));
	EXPECT_TRUE(m.accepts(17u, 17u));
	EXPECT_FALSE(m.accepts(17u, 18u));
	EXPECT_TRUE(verify_sync(m, IdentityOracle(), 2000, 4, 3).verified());
}

TEST(VerifySync, ForwardDirection) {
	EXPECT_TRUE(verify_sync(build_fig2(), GOracle(2, 2), 3000, 4).verified());
	for (unsigned k = 3; k <= 5; ++k) {
		const auto cert = verify_sync(build_figk(k), GOracle(k, k), 3000, 4);
		EXPECT_TRUE(cert.verified()) << k;
		EXPECT_GE(cert.witness["negatives_checked"].get<std::uint64_t>(), 4u * 3000);
	}
}

TEST(VerifySync, WrongOracleIsCaught) {
	const auto cert = verify_sync(build_fig2(), GOracle(2, 3), 100, 4);
	ASSERT_EQ(cert.status, Status::Counterexample);
	EXPECT_EQ(cert.witness["rejected_graph_point"]["n"], 2);
	EXPECT_EQ(cert.witness["rejected_graph_point"]["m"], "4");
}

TEST(VerifySync, AcceptingTooMuchIsCaught) {
	// Accepts every pair.
	SyncDfa all(2, 1, 0, {true});
	for (unsigned a = 0; a < 2; ++a) {
		for (unsigned b = 0; b < 2; ++b) {
			all.add_transition(0, a, b, 0);
		}
	}
	const auto cert = verify_sync(all, GOracle(2, 2), 10, 4);
	ASSERT_EQ(cert.status, Status::Counterexample);
	EXPECT_EQ(cert.witness["accepted_non_graph_point"]["n"], 0);
}

TEST(VerifySync, SeedDeterminesOutput) {
	const auto a = verify_sync(build_figk(4), GOracle(4, 4), 500, 8, 11);
	const auto b = verify_sync(build_figk(4), GOracle(4, 4), 500, 8, 11);
	EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(ReprPattern, Holds) {
	EXPECT_TRUE(repr_pattern_check(2, 10000).verified());
	EXPECT_TRUE(repr_pattern_check(3, 10000).verified());
	// n = 9: g = 10 = 101 in base 3.
	EXPECT_EQ(digits_lsd(eval_g(3, 3, 9), 3), (std::vector<unsigned>{1, 0, 1}));
	EXPECT_EQ(repr_pattern_check(3, 10000).range, (IndexRange{3, 10000}));
	EXPECT_THROW(repr_pattern_check(3, 2), ParameterError);
	EXPECT_THROW(repr_pattern_check(1, 20), ParameterError);
}

TEST(GrowthScreen, Verdicts) {
	auto s = sync_growth_screen(GOracle(2, 3), 2, 12);
	EXPECT_EQ(s.verdict, SyncVerdict::NotSynchronized);
	EXPECT_NEAR(s.exponent, std::log2(3.0), 0.05);
	EXPECT_EQ(sync_growth_screen(GOracle(3, 2), 3, 12).verdict, SyncVerdict::NotSynchronized);
	EXPECT_EQ(sync_growth_screen(GOracle(2, 5), 2, 12).verdict, SyncVerdict::NotSynchronized);
	EXPECT_EQ(sync_growth_screen(GOracle(3, 3), 3, 12).verdict, SyncVerdict::PossiblySynchronized);
	EXPECT_EQ(sync_growth_screen(DigitSumOracle(2), 2, 12).verdict, SyncVerdict::PossiblySynchronized);
	EXPECT_THROW(sync_growth_screen(GOracle(2, 3), 2, 5), ParameterError);
}

TEST(SyncFormat, RoundTrip) {
	for (unsigned k = 2; k <= 5; ++k) {
		const auto m = k == 2 ? build_fig2() : build_figk(k);
		const auto text = serialize(m);
		EXPECT_EQ(parse_sync_dfa(text), m);
		EXPECT_EQ(serialize(parse_sync_dfa(text)), text);
	}
	EXPECT_EQ(serialize(build_fig2()), "base 2 msd pair\n"
	                                   "state 0 0\nstate 1 0\nstate 2 1\nstate 3 1\n"
	                                   "trans 0 0,0 0\ntrans 0 0,1 3\ntrans 0 1,1 1\n"
	                                   "trans 1 0,0 1\ntrans 1 0,1 2\ntrans 1 1,0 1\ntrans 1 1,1 2\n"
	                                   "trans 3 1,0 2\n");
}

TEST(SyncFormat, Errors) {
	EXPECT_THROW(parse_sync_dfa("base 2 lsd pair\n"), ParseError);
	EXPECT_THROW(parse_sync_dfa("base 2 msd pair\nstate 0 2\n"), ParseError);
	EXPECT_THROW(parse_sync_dfa("base 2 msd pair\nstate 0 1\ntrans 0 0,0 0\ntrans 0 0,0 0\n"), ParseError);
	EXPECT_THROW(parse_sync_dfa("base 2 msd pair\nstate 0 1\ntrans 0 0;0 0\n"), ParseError);
	EXPECT_THROW(parse_sync_dfa("base 2 msd pair\nstate 0 1\ntrans 0 0,2 0\n"), ParseError);
	EXPECT_THROW(parse_sync_dfa("base 2 msd pair\nstate 0 1\ntrans 0 0,1 5\n"), ParseError);
	EXPECT_THROW(parse_sync_dfa("base 2 msd pair\nstate 1 1\n"), ParseError);
}

TEST(SyncFormat, RandomMachinesRoundTrip) {
	std::mt19937_64 rng(5);
	for (int trial = 0; trial < 500; ++trial) {
		const unsigned k = 2 + rng() % 3;
		const std::size_t states = 1 + rng() % 5;
		std::vector<bool> acc;
		for (std::size_t q = 0; q < states; ++q) {
			acc.push_back(rng() % 2);
		}
		SyncDfa m(k, states, rng() % states, acc);
		for (std::size_t q = 0; q < states; ++q) {
			for (unsigned a = 0; a < k; ++a) {
				for (unsigned b = 0; b < k; ++b) {
					if (rng() % 3) {
						m.add_transition(q, a, b, rng() % states);
					}
				}
			}
		}
		ASSERT_EQ(parse_sync_dfa(serialize(m)), m);
	}
}
