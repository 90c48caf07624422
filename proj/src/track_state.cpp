#include <rainbow/construct.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rainbow {

InternalLogicError::InternalLogicError(std::string step, std::string detail, std::string digest)
    : std::logic_error(step + ": " + detail + " [" + digest + "]"), step_(std::move(step)), digest_(std::move(digest))
{
}

RegimeUnsupported::RegimeUnsupported(std::string step, const std::string &detail)
    : std::runtime_error(step + ": " + detail), step_(std::move(step))
{
}

std::int64_t ceil_sqrt(std::int64_t c)
{
    if (c <= 0)
        return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(c)));
    while (r * r < c)
        ++r;
    while (r > 0 && (r - 1) * (r - 1) >= c)
        --r;
    return r;
}

bool constant_is_proven(std::int64_t c)
{
    if (c < 16)
        return false;
    std::int64_t h = c / 16;
    std::int64_t s = ceil_sqrt(c);
    return h >= 3 && h - 4 * s - 4 >= 1 && h - 2 * (2 * h / s) >= 1;
}

TrackState::TrackState(std::size_t ground_size, std::vector<std::size_t> relations, std::span<const Pair> pairs)
    : relations_(std::move(relations)), slots_(ground_size, 0)
{
    if (relations_.empty() || pairs.size() + 1 != relations_.size())
        throw std::invalid_argument("track state needs one pair per relation after the first");
    components_.resize(relations_.size() + 1);
    for (std::size_t pos = 2; pos <= relations_.size(); ++pos) {
        const Pair &p = pairs[pos - 2];
        if (p.first == p.second || p.first >= ground_size || p.second >= ground_size)
            throw std::invalid_argument("bad identity pair at position " + std::to_string(pos));
        components_[pos].a = p.first;
        components_[pos].b = p.second;
        for (Element e : {p.first, p.second})
            if (slots_[e] != 0)
                throw std::invalid_argument("element " + std::to_string(e) + " used twice in sub-matching");
        place(pos);
    }
}

void TrackState::place(std::size_t pos)
{
    const Component &comp = components_[pos];
    auto put = [&](Element e, Role r) { slots_[e] = static_cast<std::uint32_t>(pos * 4 + static_cast<unsigned>(r) + 1); };
    put(comp.a, Role::a);
    put(comp.b, Role::b);
    if (comp.c)
        put(*comp.c, Role::c);
    if (comp.d)
        put(*comp.d, Role::d);
}

std::optional<Slot> TrackState::locate(Element x) const
{
    if (x >= slots_.size() || slots_[x] == 0)
        return std::nullopt;
    std::uint32_t s = slots_[x] - 1;
    return Slot{s / 4, static_cast<Role>(s % 4)};
}

bool TrackState::in_b(Element x) const
{
    auto s = locate(x);
    return s && (s->role == Role::a || s->role == Role::b);
}

bool TrackState::in_right(Element x) const
{
    auto s = locate(x);
    return s && is_right(s->position);
}

bool TrackState::in_left(Element x) const
{
    auto s = locate(x);
    return s && is_left(s->position);
}

void TrackState::promote(std::size_t pos, Element c, Element d)
{
    if (!is_right(pos))
        throw std::invalid_argument("promote: position " + std::to_string(pos) + " is not on the right side");
    if (c == d || locate(c) || locate(d))
        throw std::invalid_argument("promote: cross elements must be fresh and distinct");
    std::size_t target = left_end_ + 1;
    std::swap(relations_[pos - 1], relations_[target - 1]);
    std::swap(components_[pos], components_[target]);
    components_[target].c = c;
    components_[target].d = d;
    place(pos);
    place(target);
    left_end_ = target;
}

std::string TrackState::digest() const
{
    std::ostringstream os;
    os << "m=" << size() << " t=" << track_length() << " left_end=" << left_end_ << " order=";
    for (std::size_t i = 0; i < relations_.size() && i < 12; ++i)
        os << (i ? "," : "") << relations_[i] + 1;
    if (relations_.size() > 12)
        os << ",...";
    return os.str();
}

void Overrides::assign(std::size_t pos, Pair p)
{
    if (!try_assign(pos, p))
        throw std::invalid_argument("override at position " + std::to_string(pos) + " reuses a position or element");
}

bool Overrides::try_assign(std::size_t pos, Pair p)
{
    if (p.first == p.second || assigned_.count(pos))
        return false;
    for (const auto &[q, other] : assigned_)
        for (Element e : {p.first, p.second})
            if (e == other.first || e == other.second)
                return false;
    assigned_.emplace(pos, p);
    return true;
}

ElementSet Overrides::consumed() const
{
    ElementSet out;
    for (const auto &[pos, p] : assigned_) {
        out.push_back(p.first);
        out.push_back(p.second);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace rainbow
