#include "seqrec/certificate.hpp"

#include <charconv>

#include "seqrec/errors.hpp"

namespace seqrec {

IndexRange parse_range(std::string_view text) {
	const auto dots = text.find("..");
	if (dots == std::string_view::npos) {
		throw InputError("range must look like lo..hi, got '" + std::string(text) + "'");
	}
	auto parse = [&](std::string_view part) {
		std::uint64_t v = 0;
		const auto* end = part.data() + part.size();
		const auto [ptr, ec] = std::from_chars(part.data(), end, v);
		if (part.empty() || ec != std::errc{} || ptr != end) {
			throw InputError("range must look like lo..hi, got '" + std::string(text) + "'");
		}
		return v;
	};
	return {parse(text.substr(0, dots)), parse(text.substr(dots + 2))};
}

std::string_view to_string(Status status) noexcept {
	switch (status) {
	case Status::Verified:
		return "Verified";
	case Status::Counterexample:
		return "Counterexample";
	case Status::NoSolution:
		return "NoSolution";
	case Status::Exhausted:
		return "Exhausted";
	}
	return "?";
}

Status status_from_string(std::string_view text) {
	for (auto s : {Status::Verified, Status::Counterexample, Status::NoSolution, Status::Exhausted}) {
		if (to_string(s) == text) {
			return s;
		}
	}
	throw InputError("unknown certificate status '" + std::string(text) + "'");
}

nlohmann::json to_json(const Certificate& cert) {
	nlohmann::json doc;
	doc["claim"] = cert.claim;
	doc["status"] = std::string(to_string(cert.status));
	doc["range"] = {cert.range.lo, cert.range.hi};
	doc["vacuous"] = cert.vacuous;
	doc["witness"] = cert.witness;
	if (cert.counterexample) {
		const auto& c = *cert.counterexample;
		doc["witness"]["counterexample"] = {
			{"n", c.n}, {"b", c.b}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}};
	}
	return doc;
}

Certificate certificate_from_json(const nlohmann::json& doc) {
	Certificate cert;
	try {
		cert.claim = doc.value("claim", nlohmann::json());
		cert.status = status_from_string(doc.at("status").get<std::string>());
		cert.range = {doc.at("range").at(0).get<std::uint64_t>(), doc.at("range").at(1).get<std::uint64_t>()};
		cert.vacuous = doc.value("vacuous", false);
		cert.witness = doc.value("witness", nlohmann::json::object());
		if (cert.witness.contains("counterexample")) {
			const auto& c = cert.witness.at("counterexample");
			cert.counterexample = Counterexample{c.at("n").get<std::uint64_t>(), c.at("b").get<std::uint64_t>(),
			                                     parse_rational(c.at("lhs").get<std::string>()),
			                                     parse_rational(c.at("rhs").get<std::string>())};
			cert.witness.erase("counterexample");
		}
	} catch (const nlohmann::json::exception& e) {
		throw InputError(std::string("malformed certificate: ") + e.what());
	}
	return cert;
}

} // namespace seqrec
