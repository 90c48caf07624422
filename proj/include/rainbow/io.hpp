#pragma once

// Text formats. Instances:
//
//   rainbow 1 <n> <ground_size>
//   rel <i> <k>          (i is 1-based, k class lines follow)
//   <x> <y> [<z> ...]
//
// Matchings: one line "i a b" per relation, sorted by i. '#' starts a
// comment; blank lines are ignored.

#include <rainbow/relations.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace rainbow {

class ParseError : public std::runtime_error
{
public:
    ParseError(std::size_t line, const std::string &what);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

Instance parse_instance(std::string_view text);
std::string write_instance(const Instance &inst);

Matching parse_matching(std::string_view text);
std::string write_matching(const Matching &m);

/// Reads a whole file, or standard input for "-".
std::string read_text(const std::string &path);

} // namespace rainbow
