#include "seqrec/ratlin.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "seqrec/errors.hpp"

namespace seqrec {

Rational make_rational(const BigInt& num, const BigInt& den) {
	if (den == 0) {
		throw DomainError("rational with zero denominator");
	}
	Rational q(num, den);
	q.canonicalize();
	return q;
}

Rational make_rational(std::int64_t num, std::int64_t den) {
	return make_rational(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

BigInt big_pow(const BigInt& base, unsigned long exponent) {
	BigInt out;
	mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
	return out;
}

BigInt to_big(std::uint64_t v) {
	BigInt out;
	mpz_import(out.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
	return out;
}

std::string to_string(const BigInt& v) { return v.get_str(10); }

std::string to_string(const Rational& v) { return v.get_str(10); }

Rational parse_rational(const std::string& text) {
	const auto slash = text.find('/');
	BigInt num, den(1);
	bool ok = true;
	if (slash == std::string::npos) {
		ok = num.set_str(text, 10) == 0;
	} else {
		ok = num.set_str(text.substr(0, slash), 10) == 0 && den.set_str(text.substr(slash + 1), 10) == 0;
	}
	if (!ok || text.empty()) {
		throw InputError("not a rational: '" + text + "'");
	}
	return make_rational(num, den);
}

std::uint64_t checked_pow(std::uint64_t k, unsigned e) {
	std::uint64_t out = 1;
	for (unsigned i = 0; i < e; ++i) {
		if (k != 0 && out > std::numeric_limits<std::uint64_t>::max() / k) {
			throw ParameterError("k^e overflows 64 bits");
		}
		out *= k;
	}
	return out;
}

unsigned floor_log(std::uint64_t k, std::uint64_t n) {
	if (k < 2 || n == 0) {
		throw DomainError("floor_log needs k >= 2 and n >= 1");
	}
	unsigned s = 0;
	std::uint64_t p = 1; // k^s <= n
	while (p <= n / k) {
		p *= k;
		++s;
	}
	return s;
}

unsigned floor_log(unsigned k, const BigInt& n) {
	if (k < 2 || n <= 0) {
		throw DomainError("floor_log needs k >= 2 and n >= 1");
	}
	unsigned s = 0;
	BigInt p = 1;
	while (p * k <= n) {
		p *= k;
		++s;
	}
	return s;
}

std::vector<unsigned> digits_lsd(std::uint64_t n, unsigned k) {
	std::vector<unsigned> out;
	while (n > 0) {
		out.push_back(static_cast<unsigned>(n % k));
		n /= k;
	}
	return out;
}

std::vector<unsigned> digits_lsd(const BigInt& n, unsigned k) {
	if (n < 0) {
		throw DomainError("digits of a negative number");
	}
	std::vector<unsigned> out;
	BigInt m = n;
	BigInt digit;
	while (m > 0) {
		digit = m % k;
		out.push_back(static_cast<unsigned>(digit.get_ui()));
		m /= k;
	}
	return out;
}

std::vector<unsigned> padded_digits_lsd(std::uint64_t n, unsigned k, unsigned width) {
	auto out = digits_lsd(n, k);
	if (out.size() > width) {
		throw DomainError(std::to_string(n) + " has more than " + std::to_string(width) + " digits");
	}
	out.resize(width, 0);
	return out;
}

void LinearSystem::add_row(std::vector<Rational> coeffs, Rational rhs) {
	if (coeffs.size() != num_unknowns_) {
		throw ParameterError("row has " + std::to_string(coeffs.size()) + " coefficients, expected " +
		                     std::to_string(num_unknowns_));
	}
	rows_.push_back({std::move(coeffs), std::move(rhs)});
}

bool LinearSystem::satisfied_by(const std::vector<Rational>& x) const {
	if (x.size() != num_unknowns_) {
		return false;
	}
	for (const auto& row : rows_) {
		Rational acc = 0;
		for (std::size_t j = 0; j < num_unknowns_; ++j) {
			acc += row.coeffs[j] * x[j];
		}
		if (acc != row.rhs) {
			return false;
		}
	}
	return true;
}

namespace {

struct ReducedRow {
	std::size_t pivot;
	std::vector<Rational> coeffs;
	Rational rhs;
	std::map<std::size_t, Rational> combo; // original row -> multiplier
};

void subtract_scaled(ReducedRow& target, const ReducedRow& source, const Rational& factor) {
	for (std::size_t j = 0; j < target.coeffs.size(); ++j) {
		if (source.coeffs[j] != 0) {
			target.coeffs[j] -= factor * source.coeffs[j];
		}
	}
	target.rhs -= factor * source.rhs;
	for (const auto& [row, mult] : source.combo) {
		auto& entry = target.combo[row];
		entry -= factor * mult;
		if (entry == 0) {
			target.combo.erase(row);
		}
	}
}

} // namespace

SolveResult solve_exact(const LinearSystem& system) {
	const std::size_t n = system.num_unknowns();
	std::vector<ReducedRow> basis;

	for (std::size_t i = 0; i < system.num_rows(); ++i) {
		const auto& row = system.rows()[i];
		ReducedRow r{0, row.coeffs, row.rhs, {{i, Rational(1)}}};
		for (const auto& b : basis) {
			if (r.coeffs[b.pivot] != 0) {
				const Rational factor = r.coeffs[b.pivot];
				subtract_scaled(r, b, factor);
			}
		}
		const auto lead = std::find_if(r.coeffs.begin(), r.coeffs.end(), [](const Rational& v) { return v != 0; });
		if (lead == r.coeffs.end()) {
			if (r.rhs != 0) {
				Inconsistent out;
				out.residual = r.rhs;
				for (const auto& [idx, mult] : r.combo) {
					out.rows.push_back(idx);
					out.multipliers.push_back(mult);
				}
				return out;
			}
			continue;
		}
		r.pivot = static_cast<std::size_t>(lead - r.coeffs.begin());
		const Rational scale = r.coeffs[r.pivot];
		for (auto& v : r.coeffs) {
			v /= scale;
		}
		r.rhs /= scale;
		for (auto& [idx, mult] : r.combo) {
			mult /= scale;
		}
		basis.push_back(std::move(r));
	}

	std::sort(basis.begin(), basis.end(), [](const ReducedRow& a, const ReducedRow& b) { return a.pivot < b.pivot; });
	for (std::size_t p = basis.size(); p-- > 0;) {
		for (std::size_t q = 0; q < basis.size(); ++q) {
			if (q != p && basis[q].coeffs[basis[p].pivot] != 0) {
				const Rational factor = basis[q].coeffs[basis[p].pivot];
				subtract_scaled(basis[q], basis[p], factor);
			}
		}
	}

	std::vector<Rational> particular(n, Rational(0));
	std::vector<bool> is_pivot(n, false);
	for (const auto& b : basis) {
		particular[b.pivot] = b.rhs;
		is_pivot[b.pivot] = true;
	}
	if (basis.size() == n) {
		return Unique{std::move(particular)};
	}

	Affine out;
	out.particular = std::move(particular);
	for (std::size_t j = 0; j < n; ++j) {
		if (is_pivot[j]) {
			continue;
		}
		std::vector<Rational> v(n, Rational(0));
		v[j] = 1;
		for (const auto& b : basis) {
			v[b.pivot] = -b.coeffs[j];
		}
		out.free_columns.push_back(j);
		out.null_space.push_back(std::move(v));
	}
	return out;
}

const std::vector<Rational>* solution_of(const SolveResult& result) {
	if (const auto* u = std::get_if<Unique>(&result)) {
		return &u->solution;
	}
	if (const auto* a = std::get_if<Affine>(&result)) {
		return &a->particular;
	}
	return nullptr;
}

} // namespace seqrec
