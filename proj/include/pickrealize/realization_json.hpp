#pragma once

#include "pickrealize/pick_analysis.hpp"
#include "pickrealize/polynomial_json.hpp"
#include "pickrealize/realization.hpp"

namespace pickrealize {

inline constexpr const char* kSchemaVersion = "1";

Json to_json(const CertificateReport& report);
Json to_json(const SOSFactor& factor);
Json to_json(const PickVerdict& verdict);
Json to_json(const Witness& witness);

// {"form", "m", "n0", "blocks", "H", "hermitian"}; pencils add "A".
Json realization_to_json(const Realization& r);
Realization realization_from_json(const Json& j);

}  // namespace pickrealize
