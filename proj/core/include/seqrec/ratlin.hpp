#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace seqrec {

using BigInt = mpz_class;
using Rational = mpq_class;

// Canonical num/den; throws DomainError when den == 0.
Rational make_rational(const BigInt& num, const BigInt& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

BigInt big_pow(const BigInt& base, unsigned long exponent);
BigInt to_big(std::uint64_t v);

std::string to_string(const BigInt& v);
std::string to_string(const Rational& v);

// Parses "p" or "p/q" in decimal.
Rational parse_rational(const std::string& text);

// k^e, throws ParameterError on 64-bit overflow.
std::uint64_t checked_pow(std::uint64_t k, unsigned e);

// Largest s with k^s <= n, by integer comparison. n >= 1.
unsigned floor_log(std::uint64_t k, std::uint64_t n);
unsigned floor_log(unsigned k, const BigInt& n);

// Base-k digits, least significant first. Zero has no digits.
std::vector<unsigned> digits_lsd(std::uint64_t n, unsigned k);
std::vector<unsigned> digits_lsd(const BigInt& n, unsigned k);

// Digits of n, least significant first, padded with zeros to `width`.
// Throws DomainError if n does not fit.
std::vector<unsigned> padded_digits_lsd(std::uint64_t n, unsigned k, unsigned width);

struct LinearRow {
	std::vector<Rational> coeffs;
	Rational rhs;
};

class LinearSystem {
public:
	explicit LinearSystem(std::size_t num_unknowns) : num_unknowns_(num_unknowns) {}

	// Throws ParameterError if coeffs.size() != num_unknowns().
	void add_row(std::vector<Rational> coeffs, Rational rhs);

	std::size_t num_unknowns() const noexcept { return num_unknowns_; }
	std::size_t num_rows() const noexcept { return rows_.size(); }
	const std::vector<LinearRow>& rows() const noexcept { return rows_; }

	bool satisfied_by(const std::vector<Rational>& x) const;

private:
	std::size_t num_unknowns_;
	std::vector<LinearRow> rows_;
};

struct Unique {
	std::vector<Rational> solution;
};

// particular has every free variable pinned to zero; one null-space vector per
// free column, in column order.
struct Affine {
	std::vector<Rational> particular;
	std::vector<std::vector<Rational>> null_space;
	std::vector<std::size_t> free_columns;
};

// sum(multipliers[i] * rows[rows[i]]) has all-zero coefficients and rhs equal
// to `residual` != 0.
struct Inconsistent {
	std::vector<std::size_t> rows;
	std::vector<Rational> multipliers;
	Rational residual;
};

using SolveResult = std::variant<Unique, Affine, Inconsistent>;

// Exact Gauss-Jordan elimination. Rows are absorbed in order, so an
// inconsistency is reported from the shortest failing prefix; pivots are
// the leftmost independent columns (reduced row echelon form).
SolveResult solve_exact(const LinearSystem& system);

// Any exact solution (free variables pinned to zero), or nullptr.
const std::vector<Rational>* solution_of(const SolveResult& result);

} // namespace seqrec
