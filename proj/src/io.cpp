#include <rainbow/io.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace rainbow {

ParseError::ParseError(std::size_t line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

namespace {

struct Line
{
    std::size_t number;
    std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text)
{
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        Line l{number, {}};
        std::size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
                ++i;
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
                ++j;
            if (j > i)
                l.tokens.push_back(line.substr(i, j - i));
            i = j;
        }
        if (!l.tokens.empty())
            out.push_back(std::move(l));
    }
    return out;
}

std::uint64_t number(const Line &l, std::size_t k)
{
    if (k >= l.tokens.size())
        throw ParseError(l.number, "missing field");
    std::uint64_t v = 0;
    auto tok = l.tokens[k];
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(l.number, "expected a non-negative integer, got '" + std::string(tok) + "'");
    return v;
}

void expect_fields(const Line &l, std::size_t k)
{
    if (l.tokens.size() != k)
        throw ParseError(l.number, "expected " + std::to_string(k) + " fields");
}

} // namespace

Instance parse_instance(std::string_view text)
{
    auto lines = tokenize(text);
    if (lines.empty())
        throw ParseError(1, "missing header");
    const Line &head = lines[0];
    expect_fields(head, 4);
    if (head.tokens[0] != "rainbow" || number(head, 1) != 1)
        throw ParseError(head.number, "header must be 'rainbow 1 <n> <ground_size>'");
    const std::uint64_t n = number(head, 2);
    const std::uint64_t ground = number(head, 3);

    std::size_t at = 1;
    std::vector<Partition> rels;
    std::vector<std::size_t> owner(ground, 0);
    for (std::uint64_t r = 1; r <= n; ++r) {
        if (at >= lines.size())
            throw ParseError(lines.back().number, "missing 'rel " + std::to_string(r) + "'");
        const Line &rl = lines[at++];
        expect_fields(rl, 3);
        if (rl.tokens[0] != "rel" || number(rl, 1) != r)
            throw ParseError(rl.number, "expected 'rel " + std::to_string(r) + " <k>'");
        const std::uint64_t k = number(rl, 2);
        std::vector<ElementSet> classes;
        for (std::uint64_t c = 0; c < k; ++c) {
            if (at >= lines.size())
                throw ParseError(rl.number, "relation " + std::to_string(r) + " is missing class lines");
            const Line &cl = lines[at++];
            if (cl.tokens.size() < 2)
                throw ParseError(cl.number, "class of size < 2");
            ElementSet cls;
            for (std::size_t f = 0; f < cl.tokens.size(); ++f) {
                std::uint64_t e = number(cl, f);
                if (e >= ground)
                    throw ParseError(cl.number, "element " + std::to_string(e) + " out of range (ground size "
                                                    + std::to_string(ground) + ")");
                if (std::find(cls.begin(), cls.end(), e) != cls.end())
                    throw ParseError(cl.number, "duplicate element " + std::to_string(e) + " in class");
                if (owner[e] == r)
                    throw ParseError(cl.number, "element " + std::to_string(e) + " appears in two classes");
                owner[e] = r;
                cls.push_back(static_cast<Element>(e));
            }
            classes.push_back(std::move(cls));
        }
        rels.emplace_back(std::move(classes));
    }
    if (at != lines.size())
        throw ParseError(lines[at].number, "unexpected content after the last relation");
    return Instance(ground, std::move(rels));
}

std::string write_instance(const Instance &inst)
{
    std::ostringstream os;
    os << "rainbow 1 " << inst.size() << ' ' << inst.ground_size() << '\n';
    for (std::size_t r = 0; r < inst.size(); ++r) {
        const auto &classes = inst.relation(r).classes();
        os << "rel " << r + 1 << ' ' << classes.size() << '\n';
        for (const auto &cls : classes) {
            for (std::size_t i = 0; i < cls.size(); ++i)
                os << (i ? " " : "") << cls[i];
            os << '\n';
        }
    }
    return os.str();
}

Matching parse_matching(std::string_view text)
{
    std::map<std::uint64_t, Pair> pairs;
    for (const auto &l : tokenize(text)) {
        expect_fields(l, 3);
        std::uint64_t i = number(l, 0);
        if (i == 0)
            throw ParseError(l.number, "relation indices start at 1");
        if (!pairs.emplace(i, Pair{static_cast<Element>(number(l, 1)), static_cast<Element>(number(l, 2))}).second)
            throw ParseError(l.number, "relation " + std::to_string(i) + " listed twice");
        if (i != pairs.size())
            throw ParseError(l.number, "relation indices must be listed in order from 1");
    }
    Matching m;
    for (const auto &[i, p] : pairs)
        m.pairs.push_back(p);
    return m;
}

std::string write_matching(const Matching &m)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < m.pairs.size(); ++i)
        os << i + 1 << ' ' << m.pairs[i].first << ' ' << m.pairs[i].second << '\n';
    return os.str();
}

std::string read_text(const std::string &path)
{
    std::ostringstream os;
    if (path == "-") {
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    os << in.rdbuf();
    return os.str();
}

} // namespace rainbow
