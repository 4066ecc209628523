#pragma once

#include "stabkit/hyper.hpp"
#include "stabkit/search.hpp"

#include <json.hpp>

namespace stabkit {

using Json = nlohmann::ordered_json;

// Group specs: "int:DIM", "dyadic:DIM", "binseq".
std::string group_to_text(const GroupDescriptor& g);
GroupDescriptor group_from_text(const std::string& text);

Json to_json(const CodomainValue& v);
CodomainValue codomain_value_from_json(const GroupDescriptor& g, const Json& j);

Json to_json(const TestFunction& f);
TestFunction function_from_json(const Json& j);

Json to_json(const WeightFunction& phi);
WeightFunction weight_from_json(const Json& j);

Json to_json(const ScanReport& report);
std::string to_csv(const ScanReport& report);

Json to_json(const CauchyCertificate& cert);
Json to_json(const JensenCertificate& cert);
Json to_json(const HyperCertificate& cert);

Json to_json(const SearchResult& result);

/// Re-derives every certificate field from the embedded function, budget,
/// points and witnesses, and demands the result match the input exactly.
/// Throws Error(VerifyFailed) describing the first mismatch.
void verify_certificate(const Json& j);

} // namespace stabkit
