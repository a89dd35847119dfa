#include "seqrec/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "report.hpp"
#include "seqrec/corpus.hpp"
#include "seqrec/dfao.hpp"
#include "seqrec/errors.hpp"
#include "seqrec/recsolve.hpp"
#include "seqrec/strongderive.hpp"
#include "seqrec/syncverify.hpp"

namespace seqrec::cli {

namespace {

struct UsageError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

struct Config {
	std::string seq;
	std::string dfao;
	std::optional<std::int64_t> k;
	std::optional<std::int64_t> ell;
	std::string n_range;
	std::optional<unsigned> r;
	std::optional<unsigned> t;
	std::optional<std::int64_t> L;
	std::optional<std::int64_t> U;
	std::uint64_t n0 = 0;
	std::string train;
	std::string verify;
	std::string scheme;
	std::string out;
	std::uint64_t seed = 1;
	unsigned jobs = 1;
	unsigned max_t = 3;
	unsigned max_band = 8;
	std::string family = "g";
	std::string machine;
	std::uint64_t n_max = 10000;
	unsigned negatives = 4;
	std::uint64_t verify_n = 10000;
	std::optional<std::uint64_t> bounded_n;
};

unsigned default_jobs() {
	if (const char* env = std::getenv("SEQREC_JOBS")) {
		try {
			const auto v = std::stoul(env);
			if (v > 0) {
				return static_cast<unsigned>(v);
			}
		} catch (const std::exception&) {
		}
	}
	return 1;
}

unsigned as_base(std::int64_t v) {
	if (v < 2 || v > 1 << 20) {
		throw UsageError("--k must be >= 2");
	}
	return static_cast<unsigned>(v);
}

OraclePtr build_oracle(const Config& cfg) {
	if (!cfg.dfao.empty()) {
		if (!cfg.seq.empty()) {
			throw UsageError("give either --seq or --dfao, not both");
		}
		return std::make_shared<DfaoOracle>(load_dfao(cfg.dfao));
	}
	if (cfg.seq.empty()) {
		throw UsageError("an oracle is required (--seq NAME or --dfao FILE)");
	}
	OracleParams params;
	if (cfg.k) {
		params["k"] = *cfg.k;
	}
	if (cfg.ell) {
		params["ell"] = *cfg.ell;
	}
	try {
		return make_oracle(cfg.seq, params);
	} catch (const ParameterError& e) {
		throw UsageError(e.what());
	}
}

unsigned base_of(const Config& cfg, const SequenceOracle& oracle) {
	if (cfg.k) {
		return as_base(*cfg.k);
	}
	if (const auto* d = dynamic_cast<const DfaoOracle*>(&oracle)) {
		return d->dfao().base();
	}
	throw UsageError("--k is required");
}

template <class T>
T need(const std::optional<T>& v, const char* flag) {
	if (!v) {
		throw UsageError(std::string(flag) + " is required");
	}
	return *v;
}

IndexRange range_or(const std::string& text, IndexRange fallback) {
	return text.empty() ? fallback : parse_range(text);
}

void emit(const Config& cfg, const nlohmann::json& doc, std::ostream& out) {
	const auto text = doc.dump(2) + "\n";
	if (cfg.out.empty()) {
		out << text;
		return;
	}
	std::ofstream file(cfg.out);
	if (!file) {
		throw UsageError("cannot write " + cfg.out);
	}
	file << text;
}

int exit_for(const Certificate& cert) { return cert.verified() ? kExitOk : kExitFailed; }

void summarize(std::ostream& err, const std::string& what, const Certificate& cert) {
	err << what << ": " << to_string(cert.status);
	if (!cert.range.empty()) {
		err << " over " << cert.range.lo << ".." << cert.range.hi;
	}
	if (cert.vacuous) {
		err << " (vacuous)";
	}
	if (cert.counterexample) {
		const auto& c = *cert.counterexample;
		err << " at n=" << c.n << ", b=" << c.b << " (lhs " << to_string(c.lhs) << ", rhs " << to_string(c.rhs)
		    << ")";
	}
	err << '\n';
}

int cmd_eval(const Config& cfg, std::ostream& out) {
	const auto oracle = build_oracle(cfg);
	if (cfg.n_range.empty()) {
		throw UsageError("--n lo..hi is required");
	}
	// A bare N means N..N.
	const auto range = parse_range(cfg.n_range.find("..") == std::string::npos ? cfg.n_range + ".." + cfg.n_range
	                                                                             : cfg.n_range);
	std::ostringstream os;
	for (auto n = range.lo; !range.empty() && n <= range.hi; ++n) {
		os << n << ' ' << to_string(oracle->eval(n)) << '\n';
		if (n == range.hi) {
			break;
		}
	}
	if (cfg.out.empty()) {
		out << os.str();
	} else {
		std::ofstream file(cfg.out);
		file << os.str();
	}
	return kExitOk;
}

int cmd_fit(const Config& cfg, std::ostream& out, std::ostream& err) {
	const auto oracle = build_oracle(cfg);
	const auto k = base_of(cfg, *oracle);
	if (cfg.train.empty()) {
		throw UsageError("--train lo..hi is required");
	}
	const auto result = fit(*oracle, k, need(cfg.r, "--r"), need(cfg.t, "--t"), need(cfg.L, "--L"),
	                        need(cfg.U, "--U"), cfg.n0, parse_range(cfg.train));
	nlohmann::json doc;
	if (!result.found()) {
		summarize(err, "fit", result.certificate);
		doc["scheme"] = nullptr;
		doc["certificate"] = to_json(result.certificate);
		emit(cfg, doc, out);
		return kExitFailed;
	}
	const auto cert = verify(*oracle, *result.scheme, range_or(cfg.verify, kDefaultVerifyRange), cfg.jobs);
	summarize(err, "fit + verify", cert);
	doc["scheme"] = to_json(*result.scheme);
	doc["certificate"] = to_json(cert);
	if (!result.pinned.empty()) {
		nlohmann::json pinned = nlohmann::json::object();
		for (const auto& [b, offsets] : result.pinned) {
			pinned[std::to_string(b)] = offsets;
		}
		doc["certificate"]["witness"]["pinned_to_zero"] = pinned;
	}
	emit(cfg, doc, out);
	return exit_for(cert);
}

nlohmann::json read_json(const std::string& path) {
	std::ifstream in(path);
	if (!in) {
		throw UsageError("cannot read " + path);
	}
	try {
		return nlohmann::json::parse(in);
	} catch (const nlohmann::json::exception& e) {
		throw InputError(path + ": " + e.what());
	}
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
	const auto oracle = build_oracle(cfg);
	if (cfg.scheme.empty()) {
		throw UsageError("--scheme FILE is required");
	}
	auto doc = read_json(cfg.scheme);
	if (doc.contains("scheme")) {
		doc = doc["scheme"];
	}
	RecursionScheme scheme;
	try {
		scheme = scheme_from_json(doc);
	} catch (const nlohmann::json::exception& e) {
		throw InputError(cfg.scheme + ": " + e.what());
	}
	const auto cert = verify(*oracle, scheme, range_or(cfg.verify, kDefaultVerifyRange), cfg.jobs);
	summarize(err, "verify", cert);
	emit(cfg, {{"scheme", to_json(scheme)}, {"certificate", to_json(cert)}}, out);
	return exit_for(cert);
}

int cmd_search(const Config& cfg, std::ostream& out, std::ostream& err) {
	const auto oracle = build_oracle(cfg);
	const auto k = base_of(cfg, *oracle);
	const auto result =
		search(*oracle, k, cfg.max_t, cfg.max_band, SearchOptions{range_or(cfg.verify, kDefaultVerifyRange), cfg.jobs});
	summarize(err, "search (" + std::to_string(result.candidates) + " candidates)", result.certificate);
	nlohmann::json doc;
	doc["scheme"] = result.scheme ? to_json(*result.scheme) : nlohmann::json(nullptr);
	doc["certificate"] = to_json(result.certificate);
	emit(cfg, doc, out);
	return exit_for(result.certificate);
}

int cmd_refute(const Config& cfg, std::ostream& out, std::ostream& err) {
	const auto r = need(cfg.r, "--r");
	const auto t = need(cfg.t, "--t");
	Certificate cert;
	if (cfg.family == "g") {
		const auto k = as_base(need(cfg.k, "--k"));
		const auto ell = as_base(need(cfg.ell, "--ell"));
		if (cfg.L || cfg.U) {
			cert = refute_g_general(k, ell, r, t, need(cfg.L, "--L"), need(cfg.U, "--U"));
		} else {
			cert = refute_g_strong(k, ell, r, t);
		}
	} else if (cfg.family == "h") {
		cert = refute_h_strong(r, t);
	} else {
		throw UsageError("--family must be g or h");
	}
	summarize(err, "refute", cert);
	emit(cfg, {{"certificate", to_json(cert)}}, out);
	return cert.status == Status::NoSolution ? kExitFailed : kExitOk;
}

int cmd_derive_strong(const Config& cfg, std::ostream& out, std::ostream& err) {
	if (cfg.dfao.empty()) {
		throw UsageError("--dfao FILE is required");
	}
	const auto dfao = load_dfao(cfg.dfao);
	const auto [r, t] = find_rt(dfao);
	const auto mapping = derive_mapping(dfao, r, t);
	const DfaoOracle oracle(dfao);
	const auto cert = verify_mapping(oracle, mapping, cfg.verify_n, cfg.jobs);
	err << "derive-strong: (r,t) = (" << r << "," << t << ")\n";
	summarize(err, "verify_mapping", cert);
	emit(cfg, {{"mapping", to_json(mapping)}, {"certificate", to_json(cert)}}, out);
	return exit_for(cert);
}

int cmd_sync_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
	unsigned k = cfg.k ? as_base(*cfg.k) : 2;
	std::optional<SyncDfa> dfa;
	if (cfg.machine == "fig2") {
		if (cfg.k && k != 2) {
			throw UsageError("fig2 is a base-2 machine");
		}
		dfa = build_fig2();
	} else if (cfg.machine == "figk") {
		if (k <= 2) {
			throw UsageError("figk needs --k > 2");
		}
		dfa = build_figk(k);
	} else if (cfg.machine == "equality") {
		dfa = equality_machine(k);
	} else {
		throw UsageError("--machine must be fig2, figk or equality");
	}
	OraclePtr oracle;
	if (cfg.seq.empty() && cfg.dfao.empty()) {
		oracle = std::make_shared<GOracle>(k, k);
	} else {
		oracle = build_oracle(cfg);
	}
	auto cert = verify_sync(*dfa, *oracle, cfg.n_max, cfg.negatives, cfg.seed);
	cert.claim["machine"] = cfg.machine;
	summarize(err, "sync-verify", cert);
	emit(cfg, {{"certificate", to_json(cert)}}, out);
	return exit_for(cert);
}

int cmd_report(const Config& cfg, std::ostream& out, std::ostream& err) {
	ReportConfig rc;
	rc.oracle = build_oracle(cfg);
	rc.k = cfg.k ? as_base(*cfg.k) : (cfg.seq == "h" ? 3 : 2);
	if (const auto* d = dynamic_cast<const DfaoOracle*>(rc.oracle.get()); d && !cfg.k) {
		rc.k = d->dfao().base();
	}
	if (cfg.bounded_n) {
		rc.bounded_n = *cfg.bounded_n;
	}
	rc.sync_n = cfg.n_max;
	rc.negatives = cfg.negatives;
	rc.seed = cfg.seed;
	rc.max_t = cfg.max_t;
	rc.max_band = cfg.max_band;
	rc.verify_range = range_or(cfg.verify, kDefaultVerifyRange);
	rc.jobs = cfg.jobs;
	const auto doc = build_report(rc);
	err << "report " << doc["oracle"].get<std::string>() << ": bounded max " << doc["bounded"]["max"].get<std::string>()
	    << ", sync " << doc["synchronized"]["status"].get<std::string>() << ", search "
	    << doc["recursive"]["status"].get<std::string>() << ", regular "
	    << doc["regular"]["status"].get<std::string>() << '\n';
	emit(cfg, doc, out);
	return kExitOk;
}

void add_oracle_options(CLI::App* sub, Config& cfg) {
	sub->add_option("--seq", cfg.seq, "Built-in oracle: " + [] {
		std::string names;
		for (const auto& n : oracle_names()) {
			names += (names.empty() ? "" : ", ") + n;
		}
		return names;
	}());
	sub->add_option("--dfao", cfg.dfao, "DFAO file used as the oracle");
	sub->add_option("--k", cfg.k, "Base k");
	sub->add_option("--ell", cfg.ell, "Parameter ell of the g family");
}

void add_common(CLI::App* sub, Config& cfg) {
	sub->add_option("--out", cfg.out, "Write JSON here instead of stdout");
	sub->add_option("--jobs", cfg.jobs, "Worker threads (default $SEQREC_JOBS or 1)")->check(CLI::PositiveNumber);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
	Config cfg;
	cfg.jobs = default_jobs();

	CLI::App app{"Exact tools for k-recursive, k-regular and k-synchronized sequences", "seqrec"};
	app.require_subcommand(1);

	auto* eval = app.add_subcommand("eval", "Print `n value` lines for an index range");
	add_oracle_options(eval, cfg);
	eval->add_option("--n", cfg.n_range, "Index range lo..hi, or a single N")->required();
	eval->add_option("--out", cfg.out, "Write here instead of stdout");

	auto* fitc = app.add_subcommand("fit", "Fit a recursion scheme exactly and verify it");
	add_oracle_options(fitc, cfg);
	fitc->add_option("--r", cfg.r)->required();
	fitc->add_option("--t", cfg.t)->required();
	fitc->add_option("--L", cfg.L)->required();
	fitc->add_option("--U", cfg.U)->required();
	fitc->add_option("--n0", cfg.n0);
	fitc->add_option("--train", cfg.train, "Training range lo..hi")->required();
	fitc->add_option("--verify", cfg.verify, "Verification range (default 0..10000)");
	add_common(fitc, cfg);

	auto* verifyc = app.add_subcommand("verify", "Verify a scheme JSON file against an oracle");
	add_oracle_options(verifyc, cfg);
	verifyc->add_option("--scheme", cfg.scheme, "Scheme JSON file")->required();
	verifyc->add_option("--verify", cfg.verify, "Verification range (default 0..10000)");
	add_common(verifyc, cfg);

	auto* searchc = app.add_subcommand("search", "Enumerate and verify recursion schemes");
	add_oracle_options(searchc, cfg);
	searchc->add_option("--max-t", cfg.max_t)->check(CLI::Range(1u, 16u));
	searchc->add_option("--max-band", cfg.max_band)->check(CLI::Range(1u, 64u));
	searchc->add_option("--verify", cfg.verify, "Verification range (default 0..10000)");
	add_common(searchc, cfg);

	auto* refute = app.add_subcommand("refute", "Exact refutation systems for the g and h families");
	refute->add_option("--family", cfg.family)->check(CLI::IsMember({"g", "h"}));
	refute->add_option("--k", cfg.k);
	refute->add_option("--ell", cfg.ell);
	refute->add_option("--r", cfg.r)->required();
	refute->add_option("--t", cfg.t)->required();
	refute->add_option("--L", cfg.L);
	refute->add_option("--U", cfg.U);
	refute->add_option("--out", cfg.out);

	auto* derive = app.add_subcommand("derive-strong", "Derive subsequence equalities from an lsd-first DFAO");
	derive->add_option("--dfao", cfg.dfao)->required();
	derive->add_option("--verify-n", cfg.verify_n, "Check 0 <= n <= N (default 10000)");
	add_common(derive, cfg);

	auto* sync = app.add_subcommand("sync-verify", "Check a synchronized automaton against an oracle");
	sync->add_option("--machine", cfg.machine)->required()->check(CLI::IsMember({"fig2", "figk", "equality"}));
	sync->add_option("--k", cfg.k);
	sync->add_option("--seq", cfg.seq, "Oracle (default g with ell = k)");
	sync->add_option("--ell", cfg.ell);
	sync->add_option("--dfao", cfg.dfao);
	sync->add_option("--n-max", cfg.n_max);
	sync->add_option("--negatives", cfg.negatives);
	sync->add_option("--seed", cfg.seed);
	sync->add_option("--out", cfg.out);

	auto* report = app.add_subcommand("report", "Finite-scale class evidence for one oracle");
	add_oracle_options(report, cfg);
	report->add_option("--bounded-n", cfg.bounded_n, "Boundedness range 0..N (default 100000)");
	report->add_option("--n-max", cfg.n_max, "Synchronization and kernel-relation range (default 10000)");
	report->add_option("--negatives", cfg.negatives);
	report->add_option("--seed", cfg.seed);
	report->add_option("--max-t", cfg.max_t)->check(CLI::Range(1u, 16u));
	report->add_option("--max-band", cfg.max_band)->check(CLI::Range(1u, 64u));
	report->add_option("--verify", cfg.verify);
	add_common(report, cfg);

	try {
		std::vector<std::string> reversed(args.rbegin(), args.rend());
		app.parse(reversed);
	} catch (const CLI::CallForHelp&) {
		out << app.help();
		return kExitOk;
	} catch (const CLI::CallForAllHelp&) {
		out << app.help("", CLI::AppFormatMode::All);
		return kExitOk;
	} catch (const CLI::ParseError& e) {
		err << "error: " << e.what() << '\n';
		if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
			err << sub->help();
		}
		return kExitUsage;
	}

	try {
		if (eval->parsed()) {
			return cmd_eval(cfg, out);
		}
		if (fitc->parsed()) {
			return cmd_fit(cfg, out, err);
		}
		if (verifyc->parsed()) {
			return cmd_verify(cfg, out, err);
		}
		if (searchc->parsed()) {
			return cmd_search(cfg, out, err);
		}
		if (refute->parsed()) {
			return cmd_refute(cfg, out, err);
		}
		if (derive->parsed()) {
			return cmd_derive_strong(cfg, out, err);
		}
		if (sync->parsed()) {
			return cmd_sync_verify(cfg, out, err);
		}
		return cmd_report(cfg, out, err);
	} catch (const UsageError& e) {
		err << "error: " << e.what() << '\n';
		return kExitUsage;
	} catch (const Error& e) {
		// Bad parameters, malformed input files and unmet preconditions are all
		// caller mistakes.
		err << "error: " << e.what() << '\n';
		return kExitUsage;
	}
}

} // namespace seqrec::cli
