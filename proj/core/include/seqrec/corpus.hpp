#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "seqrec/dfao.hpp"
#include "seqrec/ratlin.hpp"

namespace seqrec {

using OracleParams = std::map<std::string, std::int64_t>;

// A deterministic integer sequence n -> f(n), total on n >= 0.
// Implementations are safe to evaluate from several threads.
class SequenceOracle {
public:
	virtual ~SequenceOracle() = default;

	virtual BigInt eval(std::uint64_t n) const = 0;
	virtual std::string name() const = 0;
	virtual OracleParams params() const { return {}; }

	// "g(ell=3,k=2)"
	std::string describe() const;
};

using OraclePtr = std::shared_ptr<const SequenceOracle>;

// 1 if n = 0, else 1 + ell^floor(log_k n). ParameterError if k or ell < 2.
BigInt eval_g(unsigned k, unsigned ell, std::uint64_t n);

// Sum of base-k digits.
BigInt eval_s(unsigned k, std::uint64_t n);

// Thue-Morse: parity of the number of ones in binary n.
int tm(std::uint64_t n);

// Number of distinct length-n factors of the Thue-Morse word (f(0) = 1).
BigInt tm_factor_complexity(std::uint64_t n);

// Distinct-window counts for every length 0..max_n, from prefixes that are
// doubled (starting at 16 * max_n) until the counts stop changing.
std::vector<std::uint64_t> tm_factor_complexity_table(std::uint64_t max_n);

// h(0) = 0; h(n) = h(n/3) + ((n/3) mod 2) for n = 0, 2 mod 3;
// h(n) = h(n/9) + 1 for n = 1 mod 3. Memoized, thread-safe.
BigInt eval_h(std::uint64_t n);

// Central Delannoy number sum_k C(n,k) C(n+k,k).
BigInt delannoy(std::uint64_t n);

// Largest e with p^e | m. DomainError if m <= 0, ParameterError if p < 2.
unsigned long padic_valuation(unsigned p, const BigInt& m);

// Least-squares slope of log f(k^j) against j log k, j = 2..depth.
// ParameterError if depth < 4; DomainError on a nonpositive sample.
double growth_exponent(const SequenceOracle& oracle, unsigned k, unsigned depth);

class GOracle final : public SequenceOracle {
public:
	GOracle(unsigned k, unsigned ell);
	BigInt eval(std::uint64_t n) const override;
	std::string name() const override { return "g"; }
	OracleParams params() const override { return {{"k", k_}, {"ell", ell_}}; }
	unsigned k() const noexcept { return k_; }
	unsigned ell() const noexcept { return ell_; }

private:
	unsigned k_;
	unsigned ell_;
	std::vector<BigInt> ell_pow_; // ell^s for every s reachable from 64-bit n
};

class DigitSumOracle final : public SequenceOracle {
public:
	explicit DigitSumOracle(unsigned k);
	BigInt eval(std::uint64_t n) const override { return eval_s(k_, n); }
	std::string name() const override { return "s"; }
	OracleParams params() const override { return {{"k", k_}}; }

private:
	unsigned k_;
};

class ThueMorseOracle final : public SequenceOracle {
public:
	BigInt eval(std::uint64_t n) const override { return tm(n); }
	std::string name() const override { return "tm"; }
};

class TmFactorComplexityOracle final : public SequenceOracle {
public:
	BigInt eval(std::uint64_t n) const override { return tm_factor_complexity(n); }
	std::string name() const override { return "tmfc"; }
};

class HOracle final : public SequenceOracle {
public:
	BigInt eval(std::uint64_t n) const override { return eval_h(n); }
	std::string name() const override { return "h"; }
};

class IdentityOracle final : public SequenceOracle {
public:
	BigInt eval(std::uint64_t n) const override { return to_big(n); }
	std::string name() const override { return "id"; }
};

class DelannoyOracle final : public SequenceOracle {
public:
	BigInt eval(std::uint64_t n) const override { return delannoy(n); }
	std::string name() const override { return "delannoy"; }
};

class DfaoOracle final : public SequenceOracle {
public:
	explicit DfaoOracle(Dfao dfao) : dfao_(std::move(dfao)) {}
	BigInt eval(std::uint64_t n) const override { return dfao_.eval(n); }
	std::string name() const override { return "dfao"; }
	OracleParams params() const override { return {{"k", dfao_.base()}}; }
	const Dfao& dfao() const noexcept { return dfao_; }

private:
	Dfao dfao_;
};

// Wraps a callable; used by tests and for one-off sequences.
class FunctionOracle final : public SequenceOracle {
public:
	FunctionOracle(std::string name, std::function<BigInt(std::uint64_t)> fn)
		: name_(std::move(name)), fn_(std::move(fn)) {}
	BigInt eval(std::uint64_t n) const override { return fn_(n); }
	std::string name() const override { return name_; }

private:
	std::string name_;
	std::function<BigInt(std::uint64_t)> fn_;
};

// Registry of the built-in oracles: g (k, ell), s (k), tm, tmfc, h, id
// (alias n), delannoy. ParameterError on unknown names or missing params.
OraclePtr make_oracle(const std::string& name, const OracleParams& params = {});
std::vector<std::string> oracle_names();

} // namespace seqrec
