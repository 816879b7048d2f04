#pragma once

// Stable-field-order JSON views of report types; absent optional fields are
// omitted rather than emitted as null.

#include <string>
#include <vector>

#include <json.hpp>

#include "etaq/congruence.hpp"
#include "etaq/eta.hpp"
#include "etaq/hecke.hpp"

namespace etaq {

// {prime, weight, level, chi_p, sturm, terms_checked, annihilated_mod2,
//  first_nonzero_index?}; a report that could not run serializes as
// {prime, error}.
nlohmann::ordered_json report_json(const HeckeReport& rep);

// {target, p?, alpha?, beta?, gamma?, n_range:[lo,hi], holds, first_failure?}
nlohmann::ordered_json report_json(const CongruenceReport& rep);

// {specs, level, weight, cond24_delta, cond24_codelta, character_raw,
//  character_kernel, cusp_orders:[{d, order}], verdict}; big integers and
// rationals render as decimal strings.
nlohmann::ordered_json classification_json(
    const std::vector<EtaQuotient>& summands, const Classification& cls);

} // namespace etaq
