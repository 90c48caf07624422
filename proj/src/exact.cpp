#include <rainbow/exact.hpp>

#include <limits>

namespace rainbow {

std::string to_string(ExactVerdict v)
{
    switch (v) {
    case ExactVerdict::matched: return "matched";
    case ExactVerdict::proven_none: return "proven-none";
    case ExactVerdict::budget_exhausted: return "budget";
    }
    return "unknown";
}

namespace {

class Search
{
public:
    Search(const InstanceIndex &index, std::span<const std::size_t> rels, std::uint64_t budget)
        : index_(index), rels_(rels.begin(), rels.end()), budget_(budget), used_(index.ground_size(), 0),
          chosen_(rels.size()), done_(rels.size(), 0)
    {
    }

    ExactVerdict run()
    {
        if (dfs(0))
            return ExactVerdict::matched;
        return exhausted_ ? ExactVerdict::budget_exhausted : ExactVerdict::proven_none;
    }

    std::uint64_t nodes() const { return nodes_; }
    const std::vector<Pair> &chosen() const { return chosen_; }

private:
    std::uint64_t available(std::size_t k) const
    {
        std::uint64_t total = 0;
        for (const auto &cls : index_.classes(rels_[k])) {
            std::uint64_t f = 0;
            for (Element e : cls)
                f += used_[e] ? 0 : 1;
            total += f * (f - (f > 0 ? 1 : 0)) / 2;
        }
        return total;
    }

    bool dfs(std::size_t depth)
    {
        if (depth == rels_.size())
            return true;
        if (budget_ != 0 && nodes_ >= budget_) {
            exhausted_ = true;
            return false;
        }
        ++nodes_;

        std::size_t pick = rels_.size();
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        for (std::size_t k = 0; k < rels_.size(); ++k) {
            if (done_[k])
                continue;
            std::uint64_t a = available(k);
            if (a < best) {
                best = a;
                pick = k;
            }
            if (a == 0)
                return false;
        }

        done_[pick] = 1;
        for (const auto &cls : index_.classes(rels_[pick])) {
            for (std::size_t i = 0; i < cls.size(); ++i) {
                if (used_[cls[i]])
                    continue;
                for (std::size_t j = i + 1; j < cls.size(); ++j) {
                    if (used_[cls[j]])
                        continue;
                    used_[cls[i]] = used_[cls[j]] = 1;
                    chosen_[pick] = {cls[i], cls[j]};
                    bool ok = dfs(depth + 1);
                    used_[cls[i]] = used_[cls[j]] = 0;
                    if (ok)
                        return true;
                    if (exhausted_) {
                        done_[pick] = 0;
                        return false;
                    }
                }
            }
        }
        done_[pick] = 0;
        return false;
    }

    const InstanceIndex &index_;
    std::vector<std::size_t> rels_;
    std::uint64_t budget_;
    std::vector<char> used_;
    std::vector<Pair> chosen_;
    std::vector<char> done_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

} // namespace

PartialExactResult exact_solve(const InstanceIndex &index, std::span<const std::size_t> relations,
                               std::uint64_t budget)
{
    Search s(index, relations, budget);
    PartialExactResult out;
    out.verdict = s.run();
    out.nodes = s.nodes();
    out.matching.assign(index.size(), std::nullopt);
    if (out.verdict == ExactVerdict::matched)
        for (std::size_t k = 0; k < relations.size(); ++k)
            out.matching[relations[k]] = s.chosen()[k];
    return out;
}

PartialExactResult exact_solve(const Instance &inst, std::span<const std::size_t> relations, std::uint64_t budget)
{
    return exact_solve(InstanceIndex(inst), relations, budget);
}

ExactResult exact_solve(const Instance &inst, std::uint64_t budget)
{
    std::vector<std::size_t> all(inst.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = i;
    auto part = exact_solve(inst, all, budget);
    ExactResult out;
    out.verdict = part.verdict;
    out.nodes = part.nodes;
    if (part.verdict == ExactVerdict::matched) {
        Matching m;
        for (const auto &p : part.matching)
            m.pairs.push_back(*p);
        out.matching = std::move(m);
    }
    return out;
}

} // namespace rainbow
