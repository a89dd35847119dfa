#include "seqrec/recsolve.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "seqrec/errors.hpp"

namespace seqrec {

using nlohmann::json;

namespace {

json rational_pair(const Rational& q) { return json::array({to_string(q.get_num()), to_string(q.get_den())}); }

Rational rational_from_pair(const json& pair) {
	if (!pair.is_array() || pair.size() != 2) {
		throw InputError("coefficient must be a [num, den] pair");
	}
	return make_rational(BigInt(pair.at(0).get<std::string>()), BigInt(pair.at(1).get<std::string>()));
}

json solver_witness(const Inconsistent& inc, std::span<const std::uint64_t> samples) {
	json rows = json::array();
	json sample_n = json::array();
	json mults = json::array();
	for (std::size_t i = 0; i < inc.rows.size(); ++i) {
		rows.push_back(inc.rows[i]);
		if (!samples.empty()) {
			sample_n.push_back(samples[inc.rows[i]]);
		}
		mults.push_back(to_string(inc.multipliers[i]));
	}
	json out = {{"rows", rows}, {"multipliers", mults}, {"residual", to_string(inc.residual)}};
	if (!samples.empty()) {
		out["samples"] = sample_n;
	}
	return out;
}

void check_parameters(unsigned k, unsigned r, unsigned t, std::int64_t L, std::int64_t U) {
	if (k < 2) {
		throw ParameterError("k must be >= 2");
	}
	if (r >= t) {
		throw ParameterError("need r < t");
	}
	if (L >= U) {
		throw ParameterError("need L < U");
	}
	if (checked_pow(k, t) > (std::uint64_t{1} << 20)) {
		throw ParameterError("k^t too large");
	}
}

std::int64_t to_signed(std::uint64_t v) {
	if (v > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
		throw ParameterError("index overflows");
	}
	return static_cast<std::int64_t>(v);
}

// k^level * n + offset, rejecting negatives and overflow.
std::uint64_t kernel_index(std::uint64_t scale, std::uint64_t n, std::int64_t offset) {
	if (n != 0 && scale > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()) / n) {
		throw ParameterError("index overflows");
	}
	const std::int64_t idx = to_signed(scale * n) + offset;
	if (idx < 0) {
		throw ParameterError("negative index " + std::to_string(idx) + " at n = " + std::to_string(n) +
		                     "; raise n0");
	}
	return static_cast<std::uint64_t>(idx);
}

// Shares oracle values between the many small systems of a fit or search.
class MemoOracle final : public SequenceOracle {
public:
	explicit MemoOracle(const SequenceOracle& inner) : inner_(inner) {}

	BigInt eval(std::uint64_t n) const override {
		std::lock_guard lock(mutex_);
		auto it = memo_.find(n);
		if (it == memo_.end()) {
			it = memo_.emplace(n, inner_.eval(n)).first;
		}
		return it->second;
	}
	std::string name() const override { return inner_.name(); }
	OracleParams params() const override { return inner_.params(); }

private:
	const SequenceOracle& inner_;
	mutable std::mutex mutex_;
	mutable std::unordered_map<std::uint64_t, BigInt> memo_;
};

template <typename Fn>
void parallel_chunks(std::uint64_t lo, std::uint64_t hi, unsigned jobs, Fn&& fn) {
	const std::uint64_t count = hi - lo + 1;
	jobs = static_cast<unsigned>(std::clamp<std::uint64_t>(jobs, 1, count));
	if (jobs == 1) {
		fn(0u, lo, hi);
		return;
	}
	const std::uint64_t step = (count + jobs - 1) / jobs;
	std::vector<std::jthread> workers;
	for (unsigned j = 0; j < jobs; ++j) {
		const std::uint64_t a = lo + j * step;
		if (a > hi) {
			break;
		}
		const std::uint64_t b = std::min(hi, a + step - 1);
		workers.emplace_back([&fn, j, a, b] { fn(j, a, b); });
	}
}

} // namespace

void validate(const RecursionScheme& scheme) {
	check_parameters(scheme.k, scheme.r, scheme.t, scheme.L, scheme.U);
	const auto m = scheme.modulus();
	if (scheme.coeffs.size() != m) {
		throw ParameterError("scheme needs " + std::to_string(m) + " coefficient rows, has " +
		                     std::to_string(scheme.coeffs.size()));
	}
	for (const auto& row : scheme.coeffs) {
		if (row.size() != scheme.width()) {
			throw ParameterError("coefficient row length must be U - L = " + std::to_string(scheme.width()));
		}
	}
}

bool is_strong(const RecursionScheme& scheme) {
	return scheme.n0 == 0 && scheme.L >= 0 && static_cast<std::uint64_t>(scheme.U) <= scheme.modulus();
}

json to_json(const RecursionScheme& scheme) {
	json coeffs = json::object();
	for (std::size_t b = 0; b < scheme.coeffs.size(); ++b) {
		json row = json::array();
		for (const auto& c : scheme.coeffs[b]) {
			row.push_back(rational_pair(c));
		}
		coeffs[std::to_string(b)] = row;
	}
	return {{"k", scheme.k}, {"r", scheme.r},   {"t", scheme.t},          {"L", scheme.L},
	        {"U", scheme.U}, {"n0", scheme.n0}, {"coeffs", std::move(coeffs)}};
}

RecursionScheme scheme_from_json(const json& doc) {
	RecursionScheme s;
	try {
		s.k = doc.at("k").get<unsigned>();
		s.r = doc.at("r").get<unsigned>();
		s.t = doc.at("t").get<unsigned>();
		s.L = doc.at("L").get<std::int64_t>();
		s.U = doc.at("U").get<std::int64_t>();
		s.n0 = doc.at("n0").get<std::uint64_t>();
		check_parameters(s.k, s.r, s.t, s.L, s.U);
		const auto& coeffs = doc.at("coeffs");
		s.coeffs.resize(s.modulus());
		for (std::uint64_t b = 0; b < s.modulus(); ++b) {
			for (const auto& pair : coeffs.at(std::to_string(b))) {
				s.coeffs[b].push_back(rational_from_pair(pair));
			}
		}
	} catch (const json::exception& e) {
		throw InputError(std::string("malformed scheme: ") + e.what());
	}
	validate(s);
	return s;
}

SubsequenceFit fit_subsequence(const SequenceOracle& oracle, unsigned k, unsigned target_level, std::uint64_t b,
                               unsigned source_level, std::span<const std::int64_t> offsets, IndexRange samples) {
	const auto target_scale = checked_pow(k, target_level);
	const auto source_scale = checked_pow(k, source_level);
	SubsequenceFit out;
	out.system = LinearSystem(offsets.size());
	for (std::uint64_t n = samples.lo; !samples.empty() && n <= samples.hi; ++n) {
		std::vector<Rational> row;
		row.reserve(offsets.size());
		for (auto a : offsets) {
			row.emplace_back(oracle.eval(kernel_index(source_scale, n, a)));
		}
		out.system.add_row(std::move(row), Rational(oracle.eval(kernel_index(target_scale, n, to_signed(b)))));
		out.samples.push_back(n);
	}
	out.result = solve_exact(out.system);
	return out;
}

FitResult fit(const SequenceOracle& oracle, unsigned k, unsigned r, unsigned t, std::int64_t L, std::int64_t U,
              std::uint64_t n0, IndexRange train) {
	check_parameters(k, r, t, L, U);
	const IndexRange samples{std::max(train.lo, n0), train.hi};
	const auto width = static_cast<std::uint64_t>(U - L);
	if (samples.size() < width + 2) {
		throw ParameterError("train range has " + std::to_string(samples.size()) + " samples with n >= n0; need " +
		                     std::to_string(width + 2));
	}
	kernel_index(checked_pow(k, r), samples.lo, L); // negative-index check

	MemoOracle memo(oracle);
	std::vector<std::int64_t> offsets;
	for (auto a = L; a < U; ++a) {
		offsets.push_back(a);
	}

	RecursionScheme scheme{k, r, t, L, U, n0, {}};
	FitResult out;
	const auto modulus = scheme.modulus();
	for (std::uint64_t b = 0; b < modulus; ++b) {
		auto sub = fit_subsequence(memo, k, t, b, r, offsets, samples);
		if (const auto* inc = std::get_if<Inconsistent>(&sub.result)) {
			Certificate& cert = out.certificate;
			cert.claim = {{"fit", {{"oracle", oracle.describe()},
			                       {"k", k}, {"r", r}, {"t", t}, {"L", L}, {"U", U}, {"n0", n0}}}};
			cert.range = samples;
			cert.status = Status::NoSolution;
			cert.witness = {{"residue", b}, {"system", solver_witness(*inc, sub.samples)}};
			return out;
		}
		if (const auto* aff = std::get_if<Affine>(&sub.result)) {
			auto& pinned = out.pinned[b];
			for (auto col : aff->free_columns) {
				pinned.push_back(L + static_cast<std::int64_t>(col));
			}
		}
		scheme.coeffs.push_back(*solution_of(sub.result));
	}

	out.certificate = verify(memo, scheme, samples);
	json pinned = json::object();
	for (const auto& [b, offs] : out.pinned) {
		pinned[std::to_string(b)] = offs;
	}
	out.certificate.witness["pinned_to_zero"] = std::move(pinned);
	out.certificate.witness["underdetermined"] = !out.pinned.empty();
	out.scheme = std::move(scheme);
	return out;
}

Certificate verify(const SequenceOracle& oracle, const RecursionScheme& scheme, IndexRange range, unsigned jobs) {
	validate(scheme);
	Certificate cert;
	cert.claim = {{"scheme", to_json(scheme)}, {"oracle", oracle.describe()}};
	cert.range = range;
	cert.status = Status::Verified;

	const IndexRange active{std::max(range.lo, scheme.n0), range.hi};
	if (active.empty()) {
		cert.vacuous = true;
		return cert;
	}

	const auto kt = scheme.modulus();
	const auto kr = checked_pow(scheme.k, scheme.r);
	const auto first = std::min(kernel_index(kt, active.lo, 0), kernel_index(kr, active.lo, scheme.L));
	const auto last = std::max(kernel_index(kt, active.hi, to_signed(kt - 1)), kernel_index(kr, active.hi, scheme.U - 1));

	std::vector<BigInt> values(last - first + 1);
	parallel_chunks(first, last, jobs, [&](unsigned, std::uint64_t a, std::uint64_t b) {
		for (auto i = a; i <= b; ++i) {
			values[i - first] = oracle.eval(i);
		}
	});
	auto value = [&](std::uint64_t idx) -> const BigInt& { return values[idx - first]; };

	// Clear denominators per residue: den * lhs == sum (den * c_a) f(...)
	struct Term {
		std::int64_t a;
		BigInt scaled;
	};
	std::vector<BigInt> dens(kt);
	std::vector<std::vector<Term>> terms(kt);
	for (std::uint64_t b = 0; b < kt; ++b) {
		BigInt den = 1;
		for (const auto& c : scheme.coeffs[b]) {
			mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
		}
		dens[b] = den;
		for (std::size_t j = 0; j < scheme.coeffs[b].size(); ++j) {
			const auto& c = scheme.coeffs[b][j];
			if (c != 0) {
				terms[b].push_back({scheme.L + static_cast<std::int64_t>(j), BigInt(c.get_num() * (den / c.get_den()))});
			}
		}
	}

	std::vector<std::optional<Counterexample>> found(std::max(1u, jobs));
	parallel_chunks(active.lo, active.hi, jobs, [&](unsigned job, std::uint64_t lo, std::uint64_t hi) {
		BigInt acc, lhs_scaled;
		for (auto n = lo; n <= hi; ++n) {
			for (std::uint64_t b = 0; b < kt; ++b) {
				acc = 0;
				for (const auto& term : terms[b]) {
					acc += term.scaled * value(static_cast<std::uint64_t>(static_cast<std::int64_t>(kr * n) + term.a));
				}
				const BigInt& lhs = value(kt * n + b);
				lhs_scaled = lhs * dens[b];
				if (lhs_scaled != acc) {
					found[job] = Counterexample{n, b, Rational(lhs), make_rational(acc, dens[b])};
					return;
				}
			}
		}
	});
	for (const auto& f : found) {
		if (f) {
			cert.status = Status::Counterexample;
			cert.counterexample = f;
			break;
		}
	}
	return cert;
}

SearchResult search(const SequenceOracle& oracle, unsigned k, unsigned max_t, unsigned max_band,
                    const SearchOptions& options) {
	if (k < 2) {
		throw ParameterError("k must be >= 2");
	}
	if (max_t < 2) {
		throw ParameterError("search needs max_t >= 2");
	}
	if (max_band < 1) {
		throw ParameterError("search needs max_band >= 1");
	}
	MemoOracle memo(oracle);
	SearchResult out;
	const auto band = static_cast<std::int64_t>(max_band);
	for (unsigned t = 1; t <= max_t; ++t) {
		const auto kt = to_signed(checked_pow(k, t));
		for (unsigned r = 0; r < t; ++r) {
			const auto kr = to_signed(checked_pow(k, r));
			for (std::int64_t w = 1; w <= band; ++w) {
				for (std::int64_t L = std::min(band, kt - w); L >= -band; --L) {
					const std::int64_t U = L + w;
					const auto n_min = static_cast<std::uint64_t>(L < 0 ? (-L + kr - 1) / kr : 0);
					for (auto n0 : {n_min, n_min + 1}) {
						++out.candidates;
						const IndexRange train{n0, n0 + static_cast<std::uint64_t>(std::max<std::int64_t>(40, 3 * w + 8))};
						auto fitted = fit(memo, k, r, t, L, U, n0, train);
						if (!fitted.found()) {
							continue;
						}
						auto cert = verify(memo, *fitted.scheme, options.verify_range, options.jobs);
						if (!cert.verified()) {
							continue;
						}
						cert.claim["strong"] = is_strong(*fitted.scheme);
						cert.witness["candidates_tried"] = out.candidates;
						cert.witness["pinned_to_zero"] = fitted.certificate.witness["pinned_to_zero"];
						out.certificate = std::move(cert);
						out.scheme = std::move(fitted.scheme);
						return out;
					}
				}
			}
		}
	}
	out.certificate.claim = {{"search", {{"oracle", oracle.describe()}, {"k", k}, {"max_t", max_t}, {"max_band", max_band}}}};
	out.certificate.range = options.verify_range;
	out.certificate.status = Status::Exhausted;
	out.certificate.witness = {
		{"candidates_tried", out.candidates},
		{"bounds", {{"t", json::array({1, max_t})}, {"width", json::array({1, max_band})}, {"L", json::array({-band, band})}}},
		{"n0", "{n_min, n_min + 1}, n_min = smallest n0 with k^r n0 + L >= 0"},
	};
	return out;
}

namespace {

void check_g_refutation(unsigned k, unsigned ell, unsigned r, unsigned t) {
	if (k < 2 || ell < 2) {
		throw ParameterError("k and ell must be >= 2");
	}
	if (r >= t) {
		throw ParameterError("need r < t");
	}
}

// Every generator value in a row must coincide for the aggregate unknown.
BigInt common_value(const std::vector<Rational>& row) {
	for (const auto& v : row) {
		if (v != row.front()) {
			throw std::logic_error("generator values differ; aggregate reduction does not apply");
		}
	}
	return row.front().get_num();
}

} // namespace

Certificate refute_g_strong(unsigned k, unsigned ell, unsigned r, unsigned t) {
	check_g_refutation(k, ell, r, t);
	const GOracle g(k, ell);
	// Strong generators reduce to a = 0, 1 (only a = 0 exists when k^r = 1).
	std::vector<std::int64_t> offsets{0};
	if (r >= 1) {
		offsets.push_back(1);
	}
	const std::vector<std::uint64_t> samples{1, k};
	const auto kt = checked_pow(k, t);
	const auto kr = checked_pow(k, r);

	LinearSystem full(offsets.size());
	LinearSystem aggregate(1);
	json equations = json::array();
	std::vector<Rational> ratios;
	for (auto n : samples) {
		std::vector<Rational> row;
		for (auto a : offsets) {
			row.emplace_back(g.eval(kr * n + static_cast<std::uint64_t>(a)));
		}
		const BigInt lhs = g.eval(kt * n);
		const BigInt coef = common_value(row);
		full.add_row(row, Rational(lhs));
		aggregate.add_row({Rational(coef)}, Rational(lhs));
		ratios.push_back(make_rational(lhs, coef));
		equations.push_back({{"n", n}, {"lhs", to_string(lhs)}, {"coefficient", to_string(coef)}});
	}

	Certificate cert;
	cert.claim = {{"refute", "strong"}, {"family", "g"}, {"k", k}, {"ell", ell}, {"r", r}, {"t", t},
	              {"unknown", r >= 1 ? "c0+c1" : "c0"}};
	cert.range = {1, k};
	cert.witness = {{"samples", samples},
	                {"equations", equations},
	                {"ratios", {to_string(ratios[0]), to_string(ratios[1])}},
	                {"ratios_differ", ratios[0] != ratios[1]}};
	const auto agg = solve_exact(aggregate);
	const auto fullr = solve_exact(full);
	const auto* inc = std::get_if<Inconsistent>(&agg);
	if (inc && std::holds_alternative<Inconsistent>(fullr) && ratios[0] != ratios[1]) {
		cert.status = Status::NoSolution;
		cert.witness["system"] = solver_witness(*inc, samples);
	} else {
		cert.status = Status::Exhausted;
		cert.witness["note"] = "sampled system is consistent; refutation failed";
	}
	return cert;
}

unsigned refutation_shift(unsigned k, unsigned r, std::int64_t L, std::int64_t U) {
	const std::int64_t need = std::max(-L, U);
	unsigned s = 1;
	while (true) {
		const auto p = checked_pow(k, r + s - 1);
		if (need <= 0 || p >= static_cast<std::uint64_t>(need)) {
			return s;
		}
		++s;
	}
}

Certificate refute_g_general(unsigned k, unsigned ell, unsigned r, unsigned t, std::int64_t L, std::int64_t U) {
	check_g_refutation(k, ell, r, t);
	if (L >= U) {
		throw ParameterError("need L < U");
	}
	const GOracle g(k, ell);
	const unsigned s = refutation_shift(k, r, L, U);
	const auto kr = checked_pow(k, r);
	const auto kt = checked_pow(k, t);
	const std::uint64_t n1 = checked_pow(k, s - 1) * (k + 1);
	const std::uint64_t n2 = n1 * k;

	bool log_sanity = true;
	std::vector<std::int64_t> offsets;
	for (auto a = L; a < U; ++a) {
		offsets.push_back(a);
	}
	LinearSystem full(offsets.size());
	std::vector<BigInt> lhs, coef;
	for (auto [n, level] : {std::pair{n1, r + s}, std::pair{n2, r + s + 1}}) {
		std::vector<Rational> row;
		for (auto a : offsets) {
			const auto idx = kernel_index(kr, n, a);
			log_sanity = log_sanity && floor_log(std::uint64_t{k}, idx) == level;
			row.emplace_back(g.eval(idx));
		}
		coef.push_back(common_value(row));
		lhs.push_back(g.eval(kt * n));
		full.add_row(std::move(row), Rational(lhs.back()));
	}

	const BigInt ell_big(ell);
	// ell * first - second: ell - 1 = (ell - 1) c
	const BigInt c_lhs = ell_big * lhs[0] - lhs[1];
	const BigInt c_coef = ell_big * coef[0] - coef[1];
	const Rational c = make_rational(c_lhs, c_coef);
	// second - first with c inserted: (ell-1) ell^(t+s) vs (ell-1) ell^(r+s) c
	const BigInt diff_lhs = lhs[1] - lhs[0];
	const Rational diff_rhs = c * Rational(coef[1] - coef[0]);

	Certificate cert;
	cert.claim = {{"refute", "general"}, {"family", "g"}, {"k", k}, {"ell", ell}, {"r", r},
	              {"t", t},              {"L", L},        {"U", U},  {"unknown", "c = sum c_a"}};
	cert.range = {n1, n2};
	cert.witness = {
		{"s", s},
		{"samples", {n1, n2}},
		{"log_sanity", log_sanity},
		{"equations",
		 {{{"n", n1}, {"lhs", to_string(lhs[0])}, {"coefficient", to_string(coef[0])}},
		  {{"n", n2}, {"lhs", to_string(lhs[1])}, {"coefficient", to_string(coef[1])}}}},
		{"c_equation", {{"lhs", to_string(c_lhs)}, {"coefficient", to_string(c_coef)}}},
		{"c", to_string(c)},
		{"contradiction", {{"lhs", to_string(diff_lhs)}, {"rhs", to_string(diff_rhs)}}},
	};
	const auto solved = solve_exact(full);
	const auto* inc = std::get_if<Inconsistent>(&solved);
	if (log_sanity && c == 1 && Rational(diff_lhs) != diff_rhs && inc) {
		cert.status = Status::NoSolution;
		cert.witness["system"] = solver_witness(*inc, std::vector<std::uint64_t>{n1, n2});
	} else {
		cert.status = Status::Exhausted;
		cert.witness["note"] = "refutation failed";
	}
	return cert;
}

LinearSystem h_strong_system(unsigned r, unsigned t) {
	const auto kr = checked_pow(3, r);
	const auto kt = checked_pow(3, t);
	LinearSystem system(2);
	for (std::uint64_t n : {0, 1, 3}) {
		system.add_row({Rational(eval_h(kr * n)), Rational(eval_h(kr * n + 1))}, Rational(eval_h(kt * n)));
	}
	return system;
}

Certificate refute_h_strong(unsigned r, unsigned t) {
	if (r >= t) {
		throw ParameterError("need r < t");
	}
	const auto system = h_strong_system(r, t);
	Certificate cert;
	cert.claim = {{"refute", "strong"}, {"family", "h"}, {"k", 3}, {"r", r}, {"t", t}, {"unknowns", {"c0", "c1"}}};
	cert.range = {0, 3};
	json rows = json::array();
	for (const auto& row : system.rows()) {
		rows.push_back({to_string(row.coeffs[0]), to_string(row.coeffs[1]), to_string(row.rhs)});
	}
	cert.witness["rows"] = rows;
	const auto solved = solve_exact(system);
	if (const auto* inc = std::get_if<Inconsistent>(&solved)) {
		cert.status = Status::NoSolution;
		cert.witness["system"] = solver_witness(*inc, std::vector<std::uint64_t>{0, 1, 3});
	} else {
		cert.status = Status::Exhausted;
		cert.witness["note"] = "refutation failed";
	}
	return cert;
}

Certificate verify_g_kernel_relations(unsigned k, unsigned ell, std::uint64_t max_n, bool boundary_only) {
	const GOracle g(k, ell);
	const std::uint64_t k2 = std::uint64_t{k} * k;
	std::vector<std::uint64_t> small, large; // 1 <= a < k, k <= b < k^2
	if (boundary_only) {
		for (std::uint64_t v : {std::uint64_t{1}, std::uint64_t{k} - 1, std::uint64_t{k}, k2 - 1}) {
			auto& bucket = v < k ? small : large;
			if (std::find(bucket.begin(), bucket.end(), v) == bucket.end()) {
				bucket.push_back(v);
			}
		}
	} else {
		for (std::uint64_t v = 1; v < k2; ++v) {
			(v < k ? small : large).push_back(v);
		}
	}

	Certificate cert;
	cert.claim = {{"relations", "g kernel at level 2"}, {"k", k}, {"ell", ell}, {"boundary_only", boundary_only},
	              {"residues", {{"single_digit", small}, {"two_digit", large}}}};
	cert.range = {0, max_n};
	const BigInt l(ell);
	for (std::uint64_t n = 0; n <= max_n; ++n) {
		const BigInt gn = g.eval(n), gkn = g.eval(k * n), gkn1 = g.eval(k * n + 1);
		auto check = [&](std::uint64_t b, const BigInt& rhs) {
			const BigInt lhs = g.eval(k2 * n + b);
			if (lhs != rhs) {
				cert.status = Status::Counterexample;
				cert.counterexample = Counterexample{n, b, Rational(lhs), Rational(rhs)};
				return false;
			}
			return true;
		};
		if (!check(0, -l * gn + (l + 1) * gkn)) {
			return cert;
		}
		const BigInt rhs_small = -l * gn + l * gkn + gkn1;
		for (auto a : small) {
			if (!check(a, rhs_small)) {
				return cert;
			}
		}
		const BigInt rhs_large = -l * gn + gkn + l * gkn1;
		for (auto b : large) {
			if (!check(b, rhs_large)) {
				return cert;
			}
		}
	}
	cert.status = Status::Verified;
	return cert;
}

} // namespace seqrec
