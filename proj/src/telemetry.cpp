#include <rainbow/telemetry.hpp>

#include <json.hpp>

namespace rainbow {

std::string to_string(Phase p)
{
    switch (p) {
    case Phase::direct: return "direct";
    case Phase::track: return "track";
    case Phase::scheme2: return "scheme2";
    case Phase::five_heavy_left: return "five-heavy-left";
    case Phase::scheme3: return "scheme3";
    case Phase::lucky: return "lucky";
    case Phase::final_win: return "final";
    case Phase::exact_fallback: return "exact-fallback";
    }
    return "unknown";
}

std::string to_json_line(const StepTelemetry &t)
{
    nlohmann::ordered_json j;
    j["relations"] = t.relations;
    j["c"] = t.constant;
    j["proven_regime"] = t.proven_regime;
    j["phase"] = to_string(t.phase);
    j["branch"] = t.branch;
    j["track_components"] = t.track_components;
    j["scheme1_histograms"] = t.scheme1_histograms;
    j["sigma_histogram"] = t.sigma_histogram;
    j["tau_histogram"] = t.tau_histogram;
    j["heavy"] = {{"total", t.heavy_total}, {"left", t.heavy_left}, {"right", t.heavy_right}};
    j["scheme3"] = {{"runs", t.scheme3_runs},
                    {"max_uncharged", t.scheme3_max_uncharged},
                    {"max_charges", t.scheme3_max_charges}};
    if (t.lucky) {
        const auto &l = *t.lucky;
        j["lucky"] = {{"position", l.lucky_position},   {"h_prime", l.h_prime},
                      {"h_double", l.h_double},         {"conflict_edges", l.conflict_edges},
                      {"bipartite", l.bipartite},       {"popular", l.popular},
                      {"exclusion_size", l.exclusion_size}, {"exclusion_bound_x8", l.exclusion_bound_x8}};
    }
    j["invariant_checks"] = t.invariant_checks;
    if (!t.fallback_reason.empty()) {
        j["fallback_reason"] = t.fallback_reason;
        j["exact_nodes"] = t.exact_nodes;
    }
    return j.dump();
}

} // namespace rainbow
