#include <gtest/gtest.h>

#include "seqrec/errors.hpp"
#include "seqrec/ratlin.hpp"

using namespace seqrec;

namespace {

std::vector<Rational> q(std::initializer_list<long> xs) {
	std::vector<Rational> out;
	for (auto x : xs) {
		out.emplace_back(x);
	}
	return out;
}

// A x, computed here rather than through LinearSystem::satisfied_by.
bool solves(const LinearSystem& sys, const std::vector<Rational>& x) {
	for (const auto& row : sys.rows()) {
		Rational acc = 0;
		for (std::size_t j = 0; j < x.size(); ++j) {
			acc += row.coeffs[j] * x[j];
		}
		if (acc != row.rhs) {
			return false;
		}
	}
	return true;
}

} // namespace

TEST(Rational, NormalizesAndPrints) {
	EXPECT_EQ(to_string(make_rational(6, -4)), "-3/2");
	EXPECT_EQ(to_string(make_rational(4, 2)), "2");
	EXPECT_EQ(parse_rational("-10/4"), make_rational(-5, 2));
	EXPECT_EQ(parse_rational("7"), Rational(7));
	EXPECT_THROW(make_rational(1, 0), DomainError);
	EXPECT_THROW(parse_rational("1/0"), Error);
	EXPECT_THROW(parse_rational("x"), Error);
}

TEST(IntegerHelpers, FloorLogUsesIntegerComparisons) {
	EXPECT_EQ(floor_log(std::uint64_t{2}, std::uint64_t{1}), 0u);
	EXPECT_EQ(floor_log(std::uint64_t{3}, std::uint64_t{26}), 2u);
	EXPECT_EQ(floor_log(std::uint64_t{3}, std::uint64_t{27}), 3u);
	EXPECT_EQ(floor_log(std::uint64_t{10}, std::uint64_t{999999999999999999}), 17u);
	EXPECT_EQ(floor_log(std::uint64_t{10}, std::uint64_t{1000000000000000000}), 18u);
	EXPECT_EQ(floor_log(2u, big_pow(2, 200) - 1), 199u);
	EXPECT_THROW(checked_pow(2, 64), Error);
	EXPECT_EQ(checked_pow(3, 4), 81u);
}

TEST(IntegerHelpers, Digits) {
	EXPECT_TRUE(digits_lsd(std::uint64_t{0}, 2).empty());
	EXPECT_EQ(digits_lsd(std::uint64_t{6}, 2), (std::vector<unsigned>{0, 1, 1}));
	EXPECT_EQ(digits_lsd(BigInt(10), 3), (std::vector<unsigned>{1, 0, 1}));
	EXPECT_EQ(padded_digits_lsd(1, 2, 3), (std::vector<unsigned>{1, 0, 0}));
	EXPECT_THROW(padded_digits_lsd(8, 2, 3), DomainError);
}

TEST(LinearSystem, RejectsWrongRowLength) {
	LinearSystem sys(2);
	EXPECT_THROW(sys.add_row(q({1}), 0), ParameterError);
}

TEST(SolveExact, UniqueSolution) {
	LinearSystem sys(2);
	sys.add_row(q({2, 1}), 5);
	sys.add_row(q({1, -1}), 1);
	const auto res = solve_exact(sys);
	ASSERT_TRUE(std::holds_alternative<Unique>(res));
	EXPECT_EQ(std::get<Unique>(res).solution, q({2, 1}));
}

TEST(SolveExact, AffinePinsFreeVariablesToZero) {
	LinearSystem sys(3);
	sys.add_row(q({1, 1, 0}), 3);
	sys.add_row(q({2, 2, 0}), 6);
	const auto res = solve_exact(sys);
	ASSERT_TRUE(std::holds_alternative<Affine>(res));
	const auto& aff = std::get<Affine>(res);
	EXPECT_EQ(aff.particular, q({3, 0, 0}));
	EXPECT_EQ(aff.free_columns, (std::vector<std::size_t>{1, 2}));
	ASSERT_EQ(aff.null_space.size(), 2u);
	EXPECT_EQ(aff.null_space[0], q({-1, 1, 0}));
	EXPECT_EQ(aff.null_space[1], q({0, 0, 1}));
}

TEST(SolveExact, InconsistencyWitnessCombinesRows) {
	LinearSystem sys(2);
	sys.add_row(q({1, 1}), 1);
	sys.add_row(q({0, 1}), 4);
	sys.add_row(q({2, 2}), 3);
	sys.add_row(q({1, 0}), 0);
	const auto res = solve_exact(sys);
	ASSERT_TRUE(std::holds_alternative<Inconsistent>(res));
	const auto& inc = std::get<Inconsistent>(res);
	// The first three rows already fail; row 3 must not be needed.
	for (auto r : inc.rows) {
		EXPECT_LT(r, 3u);
	}
	std::vector<Rational> combo(2);
	Rational rhs = 0;
	for (std::size_t i = 0; i < inc.rows.size(); ++i) {
		const auto& row = sys.rows()[inc.rows[i]];
		combo[0] += inc.multipliers[i] * row.coeffs[0];
		combo[1] += inc.multipliers[i] * row.coeffs[1];
		rhs += inc.multipliers[i] * row.rhs;
	}
	EXPECT_EQ(combo, q({0, 0}));
	EXPECT_EQ(rhs, inc.residual);
	EXPECT_NE(rhs, 0);
	EXPECT_EQ(solution_of(res), nullptr);
}

TEST(SolveExact, EmptySystems) {
	LinearSystem none(2);
	const auto res = solve_exact(none);
	ASSERT_TRUE(std::holds_alternative<Affine>(res));
	EXPECT_EQ(std::get<Affine>(res).particular, q({0, 0}));
	LinearSystem zero_unknowns(0);
	zero_unknowns.add_row({}, 0);
	EXPECT_TRUE(std::holds_alternative<Unique>(solve_exact(zero_unknowns)));
	LinearSystem bad(0);
	bad.add_row({}, 1);
	EXPECT_TRUE(std::holds_alternative<Inconsistent>(solve_exact(bad)));
}
