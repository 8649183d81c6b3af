#pragma once

#include <string>

#include <json.hpp>

#include "qarc/laurent.hpp"
#include "qarc/qms.hpp"
#include "qarc/schur.hpp"

namespace qarc {

using Json = nlohmann::ordered_json;

/// {"coeffs": [[n, re, im], ...]} with frequencies sorted ascending.
Json to_json(const LaurentPoly& f);
LaurentPoly laurent_from_json(const Json& j);

Json to_json(const SupNormCert& cert);
Json to_json(const MKResult& r);
Json to_json(const GHBoundReport& rep);

/// Debug dump: row-major [re, im] pairs.
Json to_json(const BandedOperator& t);

Json to_json(const ContinuityScan& scan);
std::string to_csv(const ContinuityScan& scan);

/// Serialize with every floating-point number printed to 12 significant
/// digits, so reports are reproducible byte for byte.
std::string dump_g12(const Json& j, int indent = 2);

/// One number, %.12g.
std::string format_g12(double v);

}  // namespace qarc
