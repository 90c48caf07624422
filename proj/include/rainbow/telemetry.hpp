#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

/// Pipeline phases of one extension step, in the order they run.
enum class Phase
{
    direct,
    track,
    scheme2,
    five_heavy_left,
    scheme3,
    lucky,
    final_win,
    exact_fallback
};

std::string to_string(Phase p);

struct LuckySummary
{
    std::size_t lucky_position = 0;
    std::size_t h_prime = 0;
    std::size_t h_double = 0;
    std::size_t conflict_edges = 0;
    bool bipartite = true;
    std::size_t popular = 0;
    std::size_t exclusion_size = 0;
    /// 8 * (2(m - t) + c/8 + c/4), kept scaled so it stays an integer.
    std::int64_t exclusion_bound_x8 = 0;
};

/// Structured record of one extension step.
struct StepTelemetry
{
    std::size_t relations = 0;
    std::int64_t constant = 0;
    bool proven_regime = false;
    Phase phase = Phase::direct;
    std::string branch;

    std::size_t track_components = 0;
    /// Per track step: number of components holding 0..4 charges.
    std::vector<std::array<std::size_t, 5>> scheme1_histograms;
    std::array<std::size_t, 5> sigma_histogram{};
    std::array<std::size_t, 5> tau_histogram{};
    std::size_t heavy_total = 0;
    std::size_t heavy_left = 0;
    std::size_t heavy_right = 0;

    std::size_t scheme3_runs = 0;
    std::size_t scheme3_max_uncharged = 0;
    std::size_t scheme3_max_charges = 0;
    std::optional<LuckySummary> lucky;

    /// Number of invariant checks that ran (each failure throws).
    std::size_t invariant_checks = 0;

    std::string fallback_reason;
    std::uint64_t exact_nodes = 0;
};

std::string to_json_line(const StepTelemetry &t);

} // namespace rainbow
