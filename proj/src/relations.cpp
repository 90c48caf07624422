#include <rainbow/relations.hpp>

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace rainbow {

Partition::Partition(std::vector<ElementSet> classes)
    : classes_(std::move(classes))
{
    for (auto &cls : classes_) {
        std::sort(cls.begin(), cls.end());
        if (cls.size() < 2)
            throw InvalidInstance("class of size < 2");
        if (std::adjacent_find(cls.begin(), cls.end()) != cls.end())
            throw InvalidInstance("duplicate element in class");
        kernel_size_ += cls.size();
    }
    std::sort(classes_.begin(), classes_.end());

    std::vector<Element> all;
    all.reserve(kernel_size_);
    for (const auto &cls : classes_)
        all.insert(all.end(), cls.begin(), cls.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw InvalidInstance("classes are not pairwise disjoint");
}

Instance::Instance(std::size_t ground_size, std::vector<Partition> relations)
    : ground_size_(ground_size), relations_(std::move(relations))
{
    for (const auto &rel : relations_)
        for (const auto &cls : rel.classes())
            if (cls.back() >= ground_size_)
                throw InvalidInstance("element " + std::to_string(cls.back()) + " outside ground set of size "
                                      + std::to_string(ground_size_));
}

ElementSet kernel(const Partition &p)
{
    ElementSet out;
    out.reserve(p.kernel_size());
    for (const auto &cls : p.classes())
        out.insert(out.end(), cls.begin(), cls.end());
    std::sort(out.begin(), out.end());
    return out;
}

ElementSet class_of(const Partition &p, Element x)
{
    for (const auto &cls : p.classes())
        if (std::binary_search(cls.begin(), cls.end(), x))
            return cls;
    return {x};
}

std::size_t min_kernel(const Instance &inst)
{
    if (inst.size() == 0)
        throw std::invalid_argument("min_kernel of an instance without relations");
    std::size_t best = inst.relation(0).kernel_size();
    for (const auto &rel : inst.relations())
        best = std::min(best, rel.kernel_size());
    return best;
}

Instance normalize(const Instance &inst)
{
    std::vector<Partition> rels;
    rels.reserve(inst.size());
    for (const auto &rel : inst.relations()) {
        std::vector<ElementSet> out;
        for (const auto &cls : rel.classes()) {
            if (cls.size() <= 3) {
                out.push_back(cls);
                continue;
            }
            std::size_t k = cls.size();
            // Blocks of three; a remainder of one turns the last four into 2+2.
            std::size_t threes = (k % 3 == 1) ? (k - 4) / 3 : k / 3;
            std::size_t pos = 0;
            for (std::size_t b = 0; b < threes; ++b, pos += 3)
                out.emplace_back(cls.begin() + pos, cls.begin() + pos + 3);
            while (pos < k) {
                out.emplace_back(cls.begin() + pos, cls.begin() + pos + 2);
                pos += 2;
            }
        }
        rels.emplace_back(std::move(out));
    }
    return Instance(inst.ground_size(), std::move(rels));
}

std::string to_string(Violation v)
{
    switch (v) {
    case Violation::none: return "none";
    case Violation::wrong_pair_count: return "wrong-pair-count";
    case Violation::element_out_of_range: return "element-out-of-range";
    case Violation::element_reused: return "element-reused";
    case Violation::not_equivalent: return "not-equivalent";
    }
    return "unknown";
}

namespace {

VerificationReport fail(Violation v, std::size_t rel, Element e, std::string msg)
{
    return {false, v, rel, e, std::move(msg)};
}

VerificationReport verify_pairs(const Instance &inst, std::span<const std::optional<Pair>> pairs)
{
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!pairs[i])
            continue;
        for (Element e : {pairs[i]->first, pairs[i]->second})
            if (e >= inst.ground_size())
                return fail(Violation::element_out_of_range, i, e,
                            "relation " + std::to_string(i + 1) + ": element " + std::to_string(e) + " out of range");
    }

    std::vector<char> seen(inst.ground_size(), 0);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!pairs[i])
            continue;
        for (Element e : {pairs[i]->first, pairs[i]->second}) {
            if (seen[e])
                return fail(Violation::element_reused, i, e,
                            "relation " + std::to_string(i + 1) + ": element " + std::to_string(e) + " reused");
            seen[e] = 1;
        }
    }

    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (!pairs[i])
            continue;
        const auto &cls = class_of(inst.relation(i), pairs[i]->first);
        if (!std::binary_search(cls.begin(), cls.end(), pairs[i]->second) || cls.size() < 2)
            return fail(Violation::not_equivalent, i, pairs[i]->first,
                        "relation " + std::to_string(i + 1) + ": elements " + std::to_string(pairs[i]->first) + " and "
                            + std::to_string(pairs[i]->second) + " are not equivalent");
    }
    return {};
}

} // namespace

VerificationReport verify_matching(const Instance &inst, const Matching &m)
{
    if (m.pairs.size() != inst.size())
        return fail(Violation::wrong_pair_count, 0, 0,
                    "expected " + std::to_string(inst.size()) + " pairs, got " + std::to_string(m.pairs.size()));
    PartialMatching all(m.pairs.begin(), m.pairs.end());
    return verify_pairs(inst, all);
}

VerificationReport verify_partial(const Instance &inst, const PartialMatching &m)
{
    if (m.size() != inst.size())
        return fail(Violation::wrong_pair_count, 0, 0,
                    "expected " + std::to_string(inst.size()) + " slots, got " + std::to_string(m.size()));
    return verify_pairs(inst, m);
}

InstanceIndex::InstanceIndex(const Instance &inst)
    : ground_size_(inst.ground_size())
{
    classes_.reserve(inst.size());
    class_ids_.reserve(inst.size());
    for (const auto &rel : inst.relations()) {
        classes_.push_back(rel.classes());
        kernel_sizes_.push_back(rel.kernel_size());
        std::vector<std::uint32_t> ids(ground_size_, no_class);
        for (std::uint32_t c = 0; c < rel.classes().size(); ++c)
            for (Element e : rel.classes()[c])
                ids[e] = c;
        class_ids_.push_back(std::move(ids));
    }
}

std::span<const Element> InstanceIndex::class_members(std::size_t rel, Element x) const
{
    auto c = class_ids_[rel][x];
    if (c == no_class)
        return {};
    return classes_[rel][c];
}

} // namespace rainbow
