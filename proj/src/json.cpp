#include "etaq/json.hpp"

namespace etaq {

using nlohmann::ordered_json;

ordered_json report_json(const HeckeReport& rep) {
    ordered_json j;
    j["prime"] = rep.prime;
    if (!rep.error.empty()) {
        j["error"] = rep.error;
        return j;
    }
    j["weight"] = rep.weight;
    j["level"] = rep.level;
    j["chi_p"] = rep.chi_p;
    j["sturm"] = rep.sturm;
    j["terms_checked"] = rep.terms_checked;
    j["annihilated_mod2"] = rep.annihilated_mod2;
    if (rep.first_nonzero_index)
        j["first_nonzero_index"] = *rep.first_nonzero_index;
    return j;
}

ordered_json report_json(const CongruenceReport& rep) {
    ordered_json j;
    j["target"] = rep.target;
    if (rep.p)
        j["p"] = *rep.p;
    if (rep.alpha)
        j["alpha"] = *rep.alpha;
    if (rep.beta)
        j["beta"] = *rep.beta;
    if (rep.gamma)
        j["gamma"] = *rep.gamma;
    j["n_range"] = {rep.n_range.first, rep.n_range.second};
    j["holds"] = rep.holds;
    if (rep.first_failure)
        j["first_failure"] = *rep.first_failure;
    return j;
}

ordered_json classification_json(const std::vector<EtaQuotient>& summands,
                                 const Classification& cls) {
    ordered_json j;
    ordered_json specs = ordered_json::array();
    for (const auto& eq : summands)
        specs.push_back(to_string(eq));
    j["specs"] = std::move(specs);
    j["level"] = summands.empty() ? 0ul : summands.front().level;
    j["weight"] = cls.weight.get_str();
    j["cond24_delta"] = cls.cond24_delta;
    j["cond24_codelta"] = cls.cond24_codelta;
    j["character_raw"] = cls.character_raw.get_str();
    j["character_kernel"] = cls.character_kernel.get_str();
    ordered_json orders = ordered_json::array();
    for (const auto& [d, ord] : cls.cusp_orders) {
        ordered_json o;
        o["d"] = d;
        o["order"] = ord.get_str();
        orders.push_back(std::move(o));
    }
    j["cusp_orders"] = std::move(orders);
    j["verdict"] = verdict_name(cls.verdict);
    return j;
}

} // namespace etaq
