#include "report.hpp"

#include <optional>

#include "seqrec/errors.hpp"
#include "seqrec/syncverify.hpp"

namespace seqrec::cli {

namespace {

constexpr const char* kEvidence = "EVIDENCE (finite-scale)";

nlohmann::json bounded_evidence(const SequenceOracle& oracle, std::uint64_t max_n) {
	BigInt lo = oracle.eval(0);
	BigInt hi = lo;
	for (std::uint64_t n = 1; n <= max_n; ++n) {
		const BigInt v = oracle.eval(n);
		if (v < lo) {
			lo = v;
		}
		if (v > hi) {
			hi = v;
		}
	}
	return {{"label", kEvidence}, {"range", {0, max_n}}, {"min", to_string(lo)}, {"max", to_string(hi)}};
}

std::optional<std::pair<std::string, SyncDfa>> known_machine(const SequenceOracle& oracle, unsigned k) {
	const auto params = oracle.params();
	if (oracle.name() == "g" && params.at("k") == params.at("ell") && params.at("k") == k) {
		if (k == 2) {
			return std::pair{std::string("fig2"), build_fig2()};
		}
		return std::pair{std::string("figk"), build_figk(k)};
	}
	if (oracle.name() == "id") {
		return std::pair{std::string("equality"), equality_machine(k)};
	}
	return std::nullopt;
}

nlohmann::json sync_evidence(const ReportConfig& config) {
	nlohmann::json doc = {{"label", kEvidence}};
	std::optional<SyncScreen> screen;
	try {
		screen = sync_growth_screen(*config.oracle, config.k, 12);
		doc["growth_screen"] = {{"verdict", std::string(to_string(screen->verdict))},
		                        {"exponent", screen->exponent},
		                        {"reason", screen->reason}};
	} catch (const DomainError& e) {
		doc["growth_screen"] = {{"verdict", "not applicable"}, {"reason", e.what()}};
	}
	if (const auto machine = known_machine(*config.oracle, config.k)) {
		const auto cert = verify_sync(machine->second, *config.oracle, config.sync_n, config.negatives, config.seed);
		doc["machine"] = machine->first;
		doc["status"] = std::string(to_string(cert.status));
		doc["certificate"] = to_json(cert);
	} else if (screen && screen->verdict == SyncVerdict::NotSynchronized) {
		doc["status"] = "NotSynchronized";
	} else {
		doc["status"] = "not established";
	}
	return doc;
}

nlohmann::json recursive_evidence(const ReportConfig& config) {
	const auto result = search(*config.oracle, config.k, config.max_t, config.max_band,
	                           SearchOptions{config.verify_range, config.jobs});
	nlohmann::json doc = {{"label", kEvidence},
	                      {"status", std::string(to_string(result.certificate.status))},
	                      {"bounds",
	                       {{"max_t", config.max_t},
	                        {"max_band", config.max_band},
	                        {"verify_range", {config.verify_range.lo, config.verify_range.hi}}}},
	                      {"candidates", result.candidates}};
	if (result.scheme) {
		doc["scheme"] = to_json(*result.scheme);
		doc["strong"] = is_strong(*result.scheme);
	}
	return doc;
}

nlohmann::json regular_evidence(const ReportConfig& config) {
	const auto& oracle = *config.oracle;
	if (oracle.name() != "g" || oracle.params().at("k") != config.k) {
		return {{"label", kEvidence}, {"status", "not checked"}};
	}
	const auto ell = static_cast<unsigned>(oracle.params().at("ell"));
	const auto cert = verify_g_kernel_relations(config.k, ell, config.sync_n, config.k > 3);
	return {{"label", kEvidence},
	        {"relations", "level-2 kernel relations against g(n), g(kn), g(kn+1)"},
	        {"status", std::string(to_string(cert.status))},
	        {"certificate", to_json(cert)}};
}

} // namespace

nlohmann::json build_report(const ReportConfig& config) {
	return {{"oracle", config.oracle->describe()},
	        {"k", config.k},
	        {"kind", "EVIDENCE, not PROOF"},
	        {"bounded", bounded_evidence(*config.oracle, config.bounded_n)},
	        {"synchronized", sync_evidence(config)},
	        {"recursive", recursive_evidence(config)},
	        {"regular", regular_evidence(config)}};
}

} // namespace seqrec::cli
