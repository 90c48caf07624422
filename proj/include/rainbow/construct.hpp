#pragma once

// Constructive extension step: given a rainbow matching for all relations but
// one, build the track, run the three charging schemes, and complete a
// matching for every relation.
//
// Everything here works in *position* space. Position 1 is the relation being
// added; positions 2..m each own one component C_p = {a_p, b_p} (plus the cross
// pair c_p, d_p once the component joins the track). Positions 2..L form the
// track ("left" side), positions L+1..m the right side. Promoting a component
// swaps positions, so the state carries the position -> relation map.

#include <rainbow/relations.hpp>
#include <rainbow/telemetry.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rainbow {

inline constexpr std::int64_t default_constant = 5000;
inline constexpr std::size_t default_n_min = 30;

class HypothesisViolation : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// A step that the counting arguments guarantee failed. Always a bug.
class InternalLogicError : public std::logic_error
{
public:
    InternalLogicError(std::string step, std::string detail, std::string digest);

    const std::string &step() const noexcept { return step_; }
    const std::string &digest() const noexcept { return digest_; }

private:
    std::string step_;
    std::string digest_;
};

class CompletionImpossible : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A late phase failed for a constant too small for its counting argument.
/// Not a bug; the caller falls back to exact search.
class RegimeUnsupported : public std::runtime_error
{
public:
    RegimeUnsupported(std::string step, const std::string &detail);

    const std::string &step() const noexcept { return step_; }

private:
    std::string step_;
};

/// True when c is large enough for every counting argument of the late
/// phases (lucky component, nonconflicting and compatible pairs) to hold.
bool constant_is_proven(std::int64_t c);

/// Integer ceil(sqrt(c)) for c >= 0.
std::int64_t ceil_sqrt(std::int64_t c);

enum class Role : std::uint8_t
{
    a,
    b,
    c,
    d
};

struct Slot
{
    std::size_t position = 0;
    Role role = Role::a;
};

struct Component
{
    Element a = 0;
    Element b = 0;
    std::optional<Element> c;
    std::optional<Element> d;
};

class TrackState
{
public:
    /// `relations[0]` is the relation being added; `relations[k]` (k >= 1)
    /// sits at position k + 1 with identity pair `pairs[k - 1]`.
    TrackState(std::size_t ground_size, std::vector<std::size_t> relations, std::span<const Pair> pairs);

    std::size_t size() const noexcept { return relations_.size(); }
    std::size_t relation_at(std::size_t pos) const { return relations_[pos - 1]; }
    const Component &component(std::size_t pos) const { return components_[pos]; }

    /// Last track position; 1 while the track is empty.
    std::size_t left_end() const noexcept { return left_end_; }
    /// Target track parameter t = floor(m / 5).
    std::size_t track_length() const noexcept { return size() / 5; }

    bool is_left(std::size_t pos) const noexcept { return pos >= 2 && pos <= left_end_; }
    bool is_right(std::size_t pos) const noexcept { return pos > left_end_ && pos <= size(); }

    std::optional<Slot> locate(Element x) const;
    bool in_b(Element x) const;
    bool in_b_prime(Element x) const { return locate(x).has_value(); }
    bool in_right(Element x) const;
    bool in_left(Element x) const;

    /// Moves the component at `pos` (a right position) to position
    /// left_end() + 1 and gives it the cross pair (c, d).
    void promote(std::size_t pos, Element c, Element d);

    /// Short description for error reports.
    std::string digest() const;

private:
    void place(std::size_t pos);

    std::vector<std::size_t> relations_;
    std::vector<Component> components_;
    std::vector<std::uint32_t> slots_;
    std::size_t left_end_ = 1;
};

/// Pairs fixed by a win recipe before the chain completion runs.
class Overrides
{
public:
    /// Throws std::invalid_argument on reuse of a position or an element.
    void assign(std::size_t pos, Pair p);
    /// Same check without throwing; returns false and leaves the map as is.
    bool try_assign(std::size_t pos, Pair p);

    const std::map<std::size_t, Pair> &assigned() const noexcept { return assigned_; }
    ElementSet consumed() const;

private:
    std::map<std::size_t, Pair> assigned_;
};

/// A completed matching in position space (index 0 unused) and the branch
/// that produced it.
struct Win
{
    std::vector<Pair> by_position;
    std::string branch;
};

/// Assigns every position not in `ov` its identity pair or, for positions
/// below the track end, one of the two cross pairs into the next component.
std::optional<std::vector<Pair>> try_complete_assignment(const InstanceIndex &index, const TrackState &state,
                                                         const Overrides &ov);

/// As above; throws CompletionImpossible when no completion exists.
std::vector<Pair> complete_assignment(const InstanceIndex &index, const TrackState &state, const Overrides &ov);

// --- track -----------------------------------------------------------------

/// Lowest pair x < y, both outside B, equivalent under the relation at
/// position 1.
std::optional<Pair> try_direct_pair(const InstanceIndex &index, const TrackState &state);

/// Looks for x ~ y under the relation at `pos`, both off the right side and
/// not split across the top and bottom halves of one track component.
std::optional<Win> try_unless_win(const InstanceIndex &index, const TrackState &state, std::size_t pos);

/// Extends the track to t - 1 components, returning early on a win.
std::optional<Win> build_track(const InstanceIndex &index, TrackState &state, StepTelemetry *telemetry = nullptr);

// --- scheme 2 and heavy components -------------------------------------------

struct ChargeLedger
{
    /// Indexed by position; entries 0 and 1 unused.
    std::vector<int> sigma;
    std::vector<int> tau;
    std::vector<ElementSet> s_sets;
    std::vector<ElementSet> t_sets;
    std::size_t kernel_first = 0;
    std::size_t kernel_track = 0;

    ElementSet u_set(std::size_t pos) const;
    int total(std::size_t pos) const { return sigma[pos] + tau[pos]; }
};

ChargeLedger charge_scheme_2(const InstanceIndex &index, const TrackState &state);

/// Descriptions of every broken ledger invariant; empty when all hold.
std::vector<std::string> ledger_violations(const ChargeLedger &ledger, const TrackState &state);

struct HeavySets
{
    std::vector<std::size_t> all;
    std::vector<std::size_t> left;
    /// The set H: heavy right-side positions.
    std::vector<std::size_t> right;
};

HeavySets heavy_indices(const TrackState &state, const ChargeLedger &ledger);

/// Throws InternalLogicError when a heavy component breaks the per-component
/// bounds on |S|, |T|, |U|.
void check_heavy_sets(const TrackState &state, const ChargeLedger &ledger, const HeavySets &heavy);

std::optional<Win> try_five_heavy_left_win(const InstanceIndex &index, const TrackState &state,
                                           const ChargeLedger &ledger);

struct HeavyPairChoice
{
    Element v1 = 0;
    Element w1 = 0;
    Element v2 = 0;
    Element w2 = 0;
};

/// Every choice of four distinct elements v1, v2 in C_i u C_j and w1, w2 in
/// U_i u U_j with v1 ~_1 w1 and v2 ~_t w2. With `exactly_one_of`, only
/// choices where exactly one of the two given elements is among {w1, w2}.
std::vector<HeavyPairChoice>
all_heavy_pair_choices(const InstanceIndex &index, const TrackState &state, const ChargeLedger &ledger,
                       std::size_t i, std::size_t j,
                       std::optional<std::pair<Element, Element>> exactly_one_of = std::nullopt);

/// First choice from all_heavy_pair_choices; InternalLogicError if none.
HeavyPairChoice pick_heavy_pair_elements(const InstanceIndex &index, const TrackState &state,
                                         const ChargeLedger &ledger, std::size_t i, std::size_t j,
                                         std::optional<std::pair<Element, Element>> exactly_one_of = std::nullopt);

// --- scheme 3 and the lucky component --------------------------------------

struct Scheme3Table
{
    std::size_t heavy_position = 0;
    /// i-charges per position.
    std::vector<int> charges;
    std::size_t uncharged = 0;
    /// Right positions holding four i-charges, with their two outside elements.
    std::map<std::size_t, std::array<Element, 2>> full_right;
};

using Scheme3Result = std::variant<Win, Scheme3Table>;

Scheme3Result charge_scheme_3(const InstanceIndex &index, const TrackState &state, const ChargeLedger &ledger,
                              std::size_t heavy_position);

struct LuckyData
{
    std::size_t lucky = 0;
    std::vector<std::size_t> h_prime;
    /// W_k for every k in H'.
    std::map<std::size_t, std::array<Element, 2>> witnesses;
    std::vector<std::size_t> h_double;
    ElementSet popular;
    ElementSet exclusion;
};

LuckyData find_lucky(const TrackState &state, const std::vector<Scheme3Table> &tables, std::int64_t c);

/// True when no distinct w, x, y, z exist with {w, x} = C_lucky,
/// y, z in W_k1 u W_k2, w ~_k1 y and x ~_k2 z.
bool conflicting(const InstanceIndex &index, const TrackState &state, const LuckyData &lucky, std::size_t k1,
                 std::size_t k2);

struct ConflictStats
{
    std::size_t edges = 0;
    bool bipartite = true;
};

/// Fills lucky.h_double from lucky.h_prime.
void select_nonconflicting(const InstanceIndex &index, const TrackState &state, LuckyData &lucky, std::int64_t c,
                           ConflictStats *stats = nullptr);

/// Fills lucky.popular and returns every compatible, nonconflicting pair of
/// H'' in selection order.
std::vector<std::pair<std::size_t, std::size_t>> compatible_pairs(const InstanceIndex &index,
                                                                  const TrackState &state,
                                                                  const ChargeLedger &ledger, LuckyData &lucky,
                                                                  std::int64_t c);

std::optional<std::pair<std::size_t, std::size_t>> find_compatible_pair(const InstanceIndex &index,
                                                                        const TrackState &state,
                                                                        const ChargeLedger &ledger,
                                                                        LuckyData &lucky, std::int64_t c);

/// Y = C_right u W u (union of U_k over H''); stored in lucky.exclusion.
void build_exclusion_set(const TrackState &state, const ChargeLedger &ledger, LuckyData &lucky);

/// Lowest x < y equivalent under the lucky relation, both outside Y.
std::optional<Pair> find_free_pair(const InstanceIndex &index, const TrackState &state, const LuckyData &lucky);

Win final_win(const InstanceIndex &index, const TrackState &state, const ChargeLedger &ledger,
              const LuckyData &lucky, const std::vector<std::pair<std::size_t, std::size_t>> &compatible,
              Pair free_pair, std::int64_t c);

// --- the whole step ----------------------------------------------------------

struct ExtendOptions
{
    std::int64_t c = default_constant;
    std::size_t n_min = default_n_min;
    /// Throw HypothesisViolation instead of deferring to exact search.
    bool strict = false;
    std::uint64_t exact_budget = 10'000'000;
};

enum class ExtendStatus
{
    matched,
    proven_none,
    budget_exhausted
};

struct ExtendResult
{
    ExtendStatus status = ExtendStatus::matched;
    PartialMatching matching;
    StepTelemetry telemetry;
};

/// Extends `sub` (pairs for every active relation except `new_rel`) to
/// `new_rel`. The active relations are those with a pair in `sub` plus
/// `new_rel`; the rest of the instance is ignored.
ExtendResult extend_matching(const InstanceIndex &index, const Instance &inst, const PartialMatching &sub,
                             std::size_t new_rel, const ExtendOptions &options = {});

ExtendResult extend_matching(const Instance &inst, const PartialMatching &sub, std::size_t new_rel,
                             const ExtendOptions &options = {});

struct SolveResult
{
    ExtendStatus status = ExtendStatus::matched;
    std::optional<Matching> matching;
    std::vector<StepTelemetry> steps;
    /// Deepest phase any step reached.
    Phase deepest = Phase::direct;
    std::uint64_t exact_nodes = 0;
};

/// Whole-instance solve by adding relations one at a time, newest as
/// relation 1. Relations n - n_min + 1 .. n form the exactly solved base.
SolveResult solve_constructive(const Instance &inst, const ExtendOptions &options = {});

} // namespace rainbow
