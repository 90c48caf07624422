#include <rainbow/search.hpp>

#include <rainbow/exact.hpp>
#include <rainbow/rng.hpp>

#include <algorithm>

namespace rainbow {

namespace {

struct CapReached
{
};

class Restart
{
public:
    Restart(const SearchOptions &opt, std::size_t ground, std::uint64_t cap, Rng &rng)
        : opt_(opt), ground_(ground), cap_(cap), rng_(rng), taken_(ground, 0)
    {
    }

    /// True when a witness was found; throws CapReached when out of nodes.
    bool run()
    {
        std::vector<std::pair<std::size_t, std::size_t>> types;
        for (std::size_t threes = 0; 3 * threes <= ground_; ++threes)
            for (std::size_t twos = 0; 3 * threes + 2 * twos <= ground_; ++twos)
                if (3 * threes + 2 * twos >= opt_.kernel_target && 3 * threes + 2 * twos >= 2)
                    types.emplace_back(threes, twos);
        rng_.shuffle(std::span(types));
        for (auto [threes, twos] : types) {
            std::vector<ElementSet> first;
            Element e = 0;
            for (std::size_t k = 0; k < threes; ++k, e += 3)
                first.push_back({e, e + 1, e + 2});
            for (std::size_t k = 0; k < twos; ++k, e += 2)
                first.push_back({e, e + 1});
            rels_.assign(1, Partition(first));
            if (opt_.n == 1) {
                if (certify())
                    return true;
                continue;
            }
            current_.clear();
            if (build(0, 0))
                return true;
        }
        return false;
    }

    Instance witness() const { return Instance(ground_, rels_); }
    std::uint64_t nodes() const { return nodes_; }

private:
    void tick(std::uint64_t k = 1)
    {
        nodes_ += k;
        if (nodes_ > cap_)
            throw CapReached{};
    }

    bool unmatchable(const std::vector<Partition> &rels)
    {
        Instance inst(ground_, rels);
        auto r = exact_solve(inst, 0);
        tick(r.nodes);
        return r.verdict == ExactVerdict::proven_none;
    }

    bool certify() { return unmatchable(rels_); }

    bool last_relation() const { return rels_.size() + 1 == opt_.n; }

    // Scans elements from `from`; `kernel` counts elements already in classes.
    bool build(Element from, std::size_t kernel)
    {
        tick();
        while (from < ground_ && taken_[from])
            ++from;
        if (from == ground_)
            return close(kernel);

        std::size_t undecided = 0;
        for (Element e = from; e < ground_; ++e)
            undecided += taken_[e] ? 0 : 1;
        if (kernel + undecided < opt_.kernel_target)
            return false;

        std::vector<ElementSet> options{{from}};
        for (Element f = from + 1; f < ground_; ++f) {
            if (taken_[f])
                continue;
            options.push_back({from, f});
            for (Element h = f + 1; h < ground_; ++h)
                if (!taken_[h])
                    options.push_back({from, f, h});
        }
        rng_.shuffle(std::span(options));

        for (const auto &cls : options) {
            if (cls.size() == 1) {
                taken_[from] = 1;
                bool ok = build(from + 1, kernel);
                taken_[from] = 0;
                if (ok)
                    return true;
                continue;
            }
            current_.push_back(cls);
            bool keep = true;
            if (last_relation()) {
                auto trial = rels_;
                trial.emplace_back(current_);
                keep = unmatchable(trial);
            }
            if (keep) {
                for (Element e : cls)
                    taken_[e] = 1;
                bool ok = build(from + 1, kernel + cls.size());
                for (Element e : cls)
                    taken_[e] = 0;
                if (ok)
                    return true;
            }
            current_.pop_back();
        }
        return false;
    }

    bool close(std::size_t kernel)
    {
        if (kernel < opt_.kernel_target)
            return false;
        Partition p(current_);
        if (rels_.size() >= 2 && p.classes() < rels_.back().classes())
            return false;
        rels_.push_back(p);
        bool ok = false;
        if (rels_.size() == opt_.n) {
            ok = certify();
        } else {
            auto saved_current = current_;
            auto saved_taken = taken_;
            current_.clear();
            std::fill(taken_.begin(), taken_.end(), 0);
            ok = build(0, 0);
            current_ = std::move(saved_current);
            taken_ = std::move(saved_taken);
        }
        if (!ok)
            rels_.pop_back();
        return ok;
    }

    const SearchOptions &opt_;
    std::size_t ground_;
    std::uint64_t cap_;
    Rng &rng_;
    std::vector<char> taken_;
    std::vector<Partition> rels_;
    std::vector<ElementSet> current_;
    std::uint64_t nodes_ = 0;
};

} // namespace

SearchResult search_unmatchable(const SearchOptions &opt)
{
    SearchResult out;
    if (opt.n == 0 || opt.max_ground < opt.kernel_target || opt.max_ground < 2)
        return out;
    const std::size_t lo = std::max<std::size_t>(opt.kernel_target, 2);
    const std::size_t span = opt.max_ground - lo + 1;
    std::vector<char> finished(span, 0);
    std::size_t finished_count = 0;
    for (std::uint64_t r = 0; out.nodes < opt.budget; ++r) {
        const std::size_t ground = lo + static_cast<std::size_t>(r % span);
        if (finished[ground - lo])
            continue;
        const std::uint64_t cap = std::min(opt.restart_nodes, opt.budget - out.nodes);
        Rng rng(derive_seed(opt.seed, r));
        Restart restart(opt, ground, cap, rng);
        ++out.restarts;
        bool found = false;
        bool capped = false;
        try {
            found = restart.run();
        } catch (const CapReached &) {
            capped = true;
        }
        out.nodes += std::min(restart.nodes(), cap);
        if (found) {
            out.witness = restart.witness();
            return out;
        }
        if (!capped && !finished[ground - lo]) {
            finished[ground - lo] = 1;
            if (++finished_count == span) {
                out.exhaustive = true;
                return out;
            }
        }
    }
    return out;
}

MinKernelResult min_unmatchable_kernel(std::size_t n, std::size_t max_ground, std::uint64_t budget,
                                       std::uint64_t seed)
{
    MinKernelResult out;
    for (std::size_t k = 2; k <= max_ground; ++k) {
        SearchOptions opt;
        opt.n = n;
        opt.kernel_target = k;
        opt.max_ground = max_ground;
        opt.budget = budget;
        opt.seed = derive_seed(seed, k);
        opt.restart_nodes = std::max<std::uint64_t>(budget / 16, 1);
        auto r = search_unmatchable(opt);
        out.nodes += r.nodes;
        if (!r.witness) {
            out.exhaustive = r.exhaustive;
            break;
        }
        out.kernel = k;
        out.witness = std::move(r.witness);
    }
    return out;
}

} // namespace rainbow
