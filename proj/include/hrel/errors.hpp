#pragma once

#include <stdexcept>
#include <string>

namespace hrel {

/// Location inside a rep-file, 1-based.
struct SourceSpan {
    int line = 0;
    int col = 0;
};

class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, SourceSpan where, std::string expected = "")
        : std::runtime_error(std::move(msg)), span(where), expected(std::move(expected)) {}
    SourceSpan span;
    std::string expected;  // comma-separated expected-token set, may be empty
};

class eval_error : public std::runtime_error {
public:
    explicit eval_error(std::string msg, SourceSpan where = {})
        : std::runtime_error(std::move(msg)), span(where) {}
    SourceSpan span;
};

/// A numerical postcondition failed (non-finite value, route disagreement).
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hrel
