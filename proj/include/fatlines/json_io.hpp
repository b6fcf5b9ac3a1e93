#pragma once

#include <json.hpp>

#include "fatlines/divisor.hpp"
#include "fatlines/interpolation.hpp"
#include "fatlines/verifier.hpp"
#include "fatlines/version.hpp"
#include "fatlines/waldschmidt.hpp"

namespace fatlines {

using ordered_json = nlohmann::ordered_json;

// All JSON documents share this head; field order is part of the format.
inline ordered_json report_envelope(const std::string& command,
                                    std::uint32_t prime,
                                    const std::vector<std::uint64_t>& seeds) {
    return ordered_json{{"schema_version", kSchemaVersion},
                        {"tool", kToolName},
                        {"tool_version", kToolVersion},
                        {"command", command},
                        {"prime", prime},
                        {"seeds", seeds}};
}

inline ordered_json to_json(const Rational& q) {
    return ordered_json{{"num", q.num}, {"den", q.den}, {"str", q.str()}};
}

inline ordered_json to_json(const DimensionReport& r) {
    ordered_json j = report_envelope("dim", r.prime, r.seeds);
    j["system"] = ordered_json{{"degree", r.system.degree()},
                               {"mults", r.system.mults()},
                               {"label", system_label(r.system)}};
    j["virtual"] = r.virtual_dim;
    j["expected"] = r.expected_dim;
    j["actual_per_seed"] = r.actual_per_seed;
    j["consensus_actual"] = r.consensus_actual;
    j["special"] = r.special;
    j["caveats"] = r.caveats;
    return j;
}

inline ordered_json to_json(const BoundInfo& b) {
    return ordered_json{{"value", to_json(b.value)},
                        {"certified", b.certified},
                        {"source", b.source}};
}

inline ordered_json to_json(const WaldschmidtReport& r) {
    ordered_json j = report_envelope("waldschmidt", r.prime, r.seeds);
    j["s"] = r.s;
    ordered_json samples = ordered_json::array();
    for (const auto& smp : r.samples) {
        samples.push_back(ordered_json{{"m", smp.m},
                                       {"alpha", smp.alpha},
                                       {"ratio", to_json(smp.ratio)}});
    }
    j["samples"] = samples;
    j["upper_bound"] = r.upper_bound ? to_json(*r.upper_bound) : ordered_json();
    j["lower_bound"] = r.lower_bound ? to_json(*r.lower_bound) : ordered_json();
    j["exact"] = r.exact ? to_json(*r.exact) : ordered_json();
    j["conjectured_rational"] =
        r.conjectured_rational ? to_json(*r.conjectured_rational) : ordered_json();
    j["conjectured_root"] = r.conjectured_root_value
                                ? ordered_json(*r.conjectured_root_value)
                                : ordered_json();
    j["notes"] = r.notes;
    j["caveats"] = r.caveats;
    return j;
}

inline ordered_json to_json(const CheckResult& r) {
    ordered_json j = report_envelope("verify", r.prime, r.seeds);
    j["name"] = r.name;
    j["claim"] = r.claim;
    j["computed"] = r.computed;
    j["passed"] = r.passed;
    j["runtime_seconds"] = r.runtime_seconds;
    return j;
}

inline std::string model_name(const BlowupModel& model) {
    switch (model.kind()) {
        case BlowupModel::Kind::CuboCubic: return "cubo-cubic";
        case BlowupModel::Kind::Todd: return "todd";
        case BlowupModel::Kind::Lines:
            return "lines(" + std::to_string(model.line_count()) + ")";
    }
    return "?";
}

inline ordered_json to_json(const DivisorClass& cls) {
    return ordered_json{{"model", model_name(cls.model())},
                        {"coeffs", cls.coeffs()},
                        {"pretty", cls.pretty()}};
}

}  // namespace fatlines
