#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace csctop {

// Point and basis-row codes are natural numbers throughout.
using Point = std::uint64_t;
using BasisIndex = std::uint64_t;

// Three-valued answers for bounded-information queries. Unknown is reserved
// for budgeted oracles; it must never be collapsed to No by callers.
enum class Ternary { No, Yes, Unknown };

inline std::string to_string(Ternary t) {
    switch (t) {
        case Ternary::No: return "no";
        case Ternary::Yes: return "yes";
        default: return "unknown";
    }
}

// Raised by membership evaluation when the defining computation for a basis
// row cannot be resolved at the queried point: either the computation is known
// to diverge there, or a budgeted oracle ran out of fuel.
class EvalNontotal : public std::runtime_error {
public:
    EvalNontotal(Point point, bool budget_exceeded, const std::string& what)
        : std::runtime_error(what), point_(point), budget_exceeded_(budget_exceeded) {}
    Point point() const { return point_; }
    bool budget_exceeded() const { return budget_exceeded_; }

private:
    Point point_;
    bool budget_exceeded_;
};

// Raised by file and expression parsers; carries a 1-based line number when
// the input is line oriented (0 when not applicable).
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Raised when a symbolic computation is asked about an expression outside the
// fragment its rules cover. Deliberately loud: no silent approximations.
class RulesIncomplete : public std::logic_error {
public:
    explicit RulesIncomplete(const std::string& what) : std::logic_error(what) {}
};

// Raised when an order-analysis routine that only makes sense for scattered
// orders is applied to an order with a dense suborder.
class NotScattered : public std::logic_error {
public:
    explicit NotScattered(const std::string& what) : std::logic_error(what) {}
};

} // namespace csctop
