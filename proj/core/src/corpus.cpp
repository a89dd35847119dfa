#include "seqrec/corpus.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "seqrec/errors.hpp"

namespace seqrec {

std::string SequenceOracle::describe() const {
	std::ostringstream os;
	os << name();
	const auto p = params();
	if (!p.empty()) {
		os << '(';
		bool first = true;
		for (const auto& [key, value] : p) {
			os << (first ? "" : ",") << key << '=' << value;
			first = false;
		}
		os << ')';
	}
	return os.str();
}

namespace {

void require_base(std::int64_t v, const char* what) {
	if (v < 2 || v > std::numeric_limits<unsigned>::max()) {
		throw ParameterError(std::string(what) + " must be >= 2");
	}
}

} // namespace

BigInt eval_g(unsigned k, unsigned ell, std::uint64_t n) {
	require_base(k, "k");
	require_base(ell, "ell");
	if (n == 0) {
		return 1;
	}
	return 1 + big_pow(BigInt(ell), floor_log(std::uint64_t{k}, n));
}

BigInt eval_s(unsigned k, std::uint64_t n) {
	require_base(k, "k");
	std::uint64_t sum = 0;
	while (n > 0) {
		sum += n % k;
		n /= k;
	}
	return to_big(sum);
}

int tm(std::uint64_t n) { return std::popcount(n) & 1; }

namespace {

class HMemo {
public:
	std::uint64_t get(std::uint64_t n) {
		if (n == 0) {
			return 0;
		}
		{
			std::lock_guard lock(mutex_);
			if (auto it = memo_.find(n); it != memo_.end()) {
				return it->second;
			}
		}
		std::uint64_t v;
		switch (n % 3) {
		case 1:
			v = get(n / 9) + 1;
			break;
		default:
			v = get(n / 3) + ((n / 3) % 2);
			break;
		}
		std::lock_guard lock(mutex_);
		if (memo_.size() > (1u << 22)) {
			memo_.clear();
		}
		memo_.emplace(n, v);
		return v;
	}

private:
	std::mutex mutex_;
	std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

HMemo& h_memo() {
	static HMemo memo;
	return memo;
}

} // namespace

BigInt eval_h(std::uint64_t n) { return to_big(h_memo().get(n)); }

BigInt delannoy(std::uint64_t n) {
	BigInt sum = 0;
	BigInt a, b;
	for (std::uint64_t j = 0; j <= n; ++j) {
		mpz_bin_uiui(a.get_mpz_t(), n, j);
		mpz_bin_uiui(b.get_mpz_t(), n + j, j);
		sum += a * b;
	}
	return sum;
}

unsigned long padic_valuation(unsigned p, const BigInt& m) {
	if (p < 2) {
		throw ParameterError("p must be >= 2");
	}
	if (m <= 0) {
		throw DomainError("valuation of a nonpositive number");
	}
	unsigned long e = 0;
	BigInt rest = m;
	while (mpz_divisible_ui_p(rest.get_mpz_t(), p) != 0) {
		mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
		++e;
	}
	return e;
}

double growth_exponent(const SequenceOracle& oracle, unsigned k, unsigned depth) {
	require_base(k, "k");
	if (depth < 4) {
		throw ParameterError("growth_exponent needs depth >= 4");
	}
	std::vector<double> xs, ys;
	for (unsigned j = 2; j <= depth; ++j) {
		const BigInt v = oracle.eval(checked_pow(k, j));
		if (v <= 0) {
			throw DomainError("nonpositive value at " + std::to_string(k) + "^" + std::to_string(j));
		}
		long exp2 = 0;
		const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
		xs.push_back(j * std::log(static_cast<double>(k)));
		ys.push_back(std::log(mant) + static_cast<double>(exp2) * std::log(2.0));
	}
	const double m = static_cast<double>(xs.size());
	double sx = 0, sy = 0;
	for (std::size_t i = 0; i < xs.size(); ++i) {
		sx += xs[i];
		sy += ys[i];
	}
	const double mx = sx / m, my = sy / m;
	double sxy = 0, sxx = 0;
	for (std::size_t i = 0; i < xs.size(); ++i) {
		sxy += (xs[i] - mx) * (ys[i] - my);
		sxx += (xs[i] - mx) * (xs[i] - mx);
	}
	return sxy / sxx;
}

GOracle::GOracle(unsigned k, unsigned ell) : k_(k), ell_(ell) {
	require_base(k, "k");
	require_base(ell, "ell");
	BigInt p = 1;
	for (unsigned s = 0; s < 64; ++s) {
		ell_pow_.push_back(p);
		p *= ell_;
	}
}

BigInt GOracle::eval(std::uint64_t n) const {
	if (n == 0) {
		return 1;
	}
	return 1 + ell_pow_[floor_log(std::uint64_t{k_}, n)];
}

DigitSumOracle::DigitSumOracle(unsigned k) : k_(k) { require_base(k, "k"); }

namespace {

std::int64_t required(const OracleParams& params, const std::string& oracle, const std::string& key) {
	const auto it = params.find(key);
	if (it == params.end()) {
		throw ParameterError("oracle '" + oracle + "' needs parameter " + key);
	}
	return it->second;
}

unsigned base_param(const OracleParams& params, const std::string& oracle, const std::string& key) {
	const auto v = required(params, oracle, key);
	require_base(v, key.c_str());
	return static_cast<unsigned>(v);
}

using Factory = std::function<OraclePtr(const OracleParams&)>;

const std::map<std::string, Factory>& registry() {
	static const std::map<std::string, Factory> table = {
		{"g", [](const OracleParams& p) {
			 return std::make_shared<GOracle>(base_param(p, "g", "k"), base_param(p, "g", "ell"));
		 }},
		{"s", [](const OracleParams& p) { return std::make_shared<DigitSumOracle>(base_param(p, "s", "k")); }},
		{"tm", [](const OracleParams&) { return std::make_shared<ThueMorseOracle>(); }},
		{"tmfc", [](const OracleParams&) { return std::make_shared<TmFactorComplexityOracle>(); }},
		{"h", [](const OracleParams&) { return std::make_shared<HOracle>(); }},
		{"id", [](const OracleParams&) { return std::make_shared<IdentityOracle>(); }},
		{"n", [](const OracleParams&) { return std::make_shared<IdentityOracle>(); }},
		{"delannoy", [](const OracleParams&) { return std::make_shared<DelannoyOracle>(); }},
	};
	return table;
}

} // namespace

OraclePtr make_oracle(const std::string& name, const OracleParams& params) {
	const auto& table = registry();
	const auto it = table.find(name);
	if (it == table.end()) {
		throw ParameterError("unknown oracle '" + name + "'");
	}
	return it->second(params);
}

std::vector<std::string> oracle_names() {
	std::vector<std::string> out;
	for (const auto& [name, factory] : registry()) {
		out.push_back(name);
	}
	return out;
}

} // namespace seqrec
