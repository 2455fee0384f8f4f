#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pfister/fixtures.hpp"

namespace pfister {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Missing, mistyped or unexpected keys, or a wrong schema version.
class SchemaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Elements are strings in the syntax of Field::parse_elem; objects that carry
// their own field (certificates, reports) store it under "field".

Json to_json(const SearchBudget& b);
SearchBudget budget_from_json(const Json& j);

Json to_json(const QuadForm& q);
QuadForm form_from_json(const Json& j, const FieldPtr& F);

Json to_json(const QSymbol& s);
QSymbol symbol_from_json(const Json& j, const FieldPtr& F);

Json to_json(const PfisterDesc& d);
PfisterDesc desc_from_json(const Json& j, const FieldPtr& F);

Json to_json(const SplitWitness& w);
SplitWitness witness_from_json(const Json& j, const FieldPtr& F);

Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

Json to_json(const ProductSplitCert& c);
ProductSplitCert product_split_from_json(const Json& j);

Json to_json(const AnisoCert& c);
AnisoCert aniso_cert_from_json(const Json& j);

Json to_json(const FormCertificate& c);
FormCertificate form_certificate_from_json(const Json& j);

Json to_json(const DescentReport& r);
DescentReport report_from_json(const Json& j);

/// {"schema_version", "field", "kind", "payload", "budget"?}
Json to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace pfister
