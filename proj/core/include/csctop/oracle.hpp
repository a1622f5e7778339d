#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csctop/base.hpp"

namespace csctop {

// A stage function models a partial computable function together with its
// stagewise approximation: for each input x it either halts at a definite
// stage with a definite value, or diverges. Finitely many inputs are listed
// explicitly; all remaining inputs follow a default rule, which keeps every
// global property of the function decidable from the description.
//
// Default rules:
//   Diverge      - unlisted inputs never halt
//   HaltAtSelf v - unlisted input x halts at stage x with value v
//   Modular p    - unlisted input x behaves per its residue class x mod p
//                  (each residue either halts at stage x with a fixed value,
//                  or diverges)
//
// A stage function may be "opaque": stage queries beyond a fuel budget come
// back Unknown, and the global metadata is off limits. This models oracles
// one can only observe by running, not inspect.

struct StageEntry {
    bool halts = false;
    std::uint64_t stage = 0;  // meaningful iff halts
    std::uint64_t value = 0;  // meaningful iff halts
};

struct DefaultRule {
    enum class Kind { Diverge, HaltAtSelf, Modular };
    Kind kind = Kind::Diverge;
    std::uint64_t value = 0;                              // HaltAtSelf payload
    std::vector<std::optional<std::uint64_t>> residues;   // Modular: value per residue, nullopt = diverge
};

// Plain-data description of a stage function; the unit that file parsing and
// serialization round-trip.
struct OracleSpec {
    std::map<std::uint64_t, StageEntry> entries;
    DefaultRule rule;
    bool opaque = false;
    std::uint64_t budget = 1024;
};

class StageFunction {
public:
    // Validates the spec (Modular period >= 1, residue list matching the
    // period) and freezes it. Throws std::invalid_argument on bad specs.
    explicit StageFunction(OracleSpec spec);

    bool opaque() const { return spec_.opaque; }
    std::uint64_t budget() const { return spec_.budget; }
    const OracleSpec& spec() const { return spec_; }

    // Has input x halted by the end of stage s? Monotone in s. For opaque
    // functions, queries with s beyond the budget answer Unknown unless the
    // halt was already visible within the budget.
    Ternary halted_by(std::uint64_t x, std::uint64_t s) const;

    // Has input x halted by stage s with output exactly v?
    Ternary halted_with_value_by(std::uint64_t x, std::uint64_t s, std::uint64_t v) const;

    // --- Global metadata; throws std::logic_error on opaque functions. ---

    bool is_total() const;
    std::optional<std::uint64_t> first_divergent() const;

    // The set {x : f(x) halts with value 1}. Exactly one of the two holds.
    bool ones_cofinite() const;    // complement finite
    bool ones_coinfinite() const;  // complement infinite
    // Least T with f(x) = 1 for all x >= T; only when ones_cofinite().
    std::uint64_t ones_threshold() const;
    // Every input halts with value 1.
    bool ones_universal() const;

    // The halting set {x : f(x) halts}.
    bool domain_finite() const;
    // All halting inputs, in increasing order; only when domain_finite().
    std::vector<std::uint64_t> domain_elements() const;

    // Full resolution for one input (never Unknown); requires transparency.
    const StageEntry resolve(std::uint64_t x) const;

private:
    StageEntry default_entry(std::uint64_t x) const;
    void require_transparent(const char* op) const;

    OracleSpec spec_;
};

// Parses the oracle file format:
//   # comment
//   DEFAULT DIV
//   DEFAULT HALT-AT-SELF <v>
//   DEFAULT MOD <p> <r0> ... <r(p-1)>     each ri = HALT:<v> or DIV
//   OPAQUE [<budget>]
//   <x> HALT <s> <v>
//   <x> DIV
// At most one DEFAULT line (DIV assumed when absent); duplicate inputs are
// contradictory and rejected. Throws ParseError.
OracleSpec parse_oracle(std::istream& in);
OracleSpec parse_oracle_file(const std::string& path);

// Canonical rendering: DEFAULT line, then OPAQUE if set, then entries by
// increasing input. parse_oracle(serialize_oracle(s)) reproduces s.
std::string serialize_oracle(const OracleSpec& spec);

// A computably enumerable set presented by the halting set of a stage
// function, with the convention that element x "appears" at stage
// halt_stage(x) + 1 (so appearance stages are always >= 1). The presentation
// is required to be parsimonious: no two elements appear at the same stage.
class CeSet {
public:
    // Throws std::invalid_argument if two elements share an appearance stage.
    explicit CeSet(StageFunction fn);

    const StageFunction& fn() const { return fn_; }

    // Does some element appear at exactly stage t? Requires transparency.
    bool gain_at(std::uint64_t t) const;
    // Budget-honest version: Unknown when the stage lies beyond the fuel of
    // an opaque underlying function.
    Ternary gain_at_bounded(std::uint64_t t) const;
    // The element appearing at stage t, if any. Requires transparency.
    std::optional<std::uint64_t> element_at_stage(std::uint64_t t) const;
    // Appearance stage of x, if x is ever enumerated. Requires transparency.
    std::optional<std::uint64_t> stage_of(std::uint64_t x) const;

    // All appearance stages t with lo <= t <= hi, increasing. Requires
    // transparency.
    std::vector<std::uint64_t> fresh_stages(std::uint64_t lo, std::uint64_t hi) const;

    // Number of elements that have appeared by the end of stage s. Requires
    // transparency.
    std::uint64_t count_by(std::uint64_t s) const;

    // Whether the set is finite (metadata; requires transparency).
    bool is_finite() const;

private:
    StageFunction fn_;
};

} // namespace csctop
