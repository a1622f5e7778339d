#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csctop/gadgets.hpp"
#include "csctop/space.hpp"

namespace csctop {

// The separation axioms this library decides, in implication order:
// T3 => T2Half => T2 => T1 => THalf => T0, and Discrete => T2.
enum class Axiom { T0, THalf, T1, T2, T2Half, T3, Discrete };

std::string to_string(Axiom axiom);
std::optional<Axiom> axiom_from(const std::string& name);
const std::vector<Axiom>& all_axioms();

using AxiomProfile = std::map<Axiom, bool>;

// True when the profile's true-set is upward closed along the implication
// order above.
bool profile_respects_implications(const AxiomProfile& profile);

// Outcome of a separation check or decision.
//
//   SeparatedAll - every required pair/configuration within bounds has a
//                  witness (a truncation-relative positive for the bounded
//                  checkers);
//   Pending      - some configurations lack witnesses at these bounds; never
//                  a refutation, since larger bounds may supply them;
//   Decided      - an exact yes/no from a transparent gadget decider, with a
//                  certificate.
struct Verdict {
    enum class Status { SeparatedAll, Pending, Decided };

    Status status = Status::Pending;
    bool value = false;  // meaningful iff status == Decided
    std::string reason;

    // Bounded-checker data: per-pair witness rows (T0 one row; T1/T2/T2Half
    // two rows), per-(point,row) regularity witnesses (T3), per-point rows
    // (THalf, Discrete), and whatever stayed unresolved.
    std::map<std::pair<Point, Point>, std::vector<BasisIndex>> pair_witnesses;
    std::map<std::pair<Point, BasisIndex>, BasisIndex> config_witnesses;
    std::map<Point, BasisIndex> point_witnesses;
    std::vector<std::pair<Point, Point>> unresolved_pairs;
    std::vector<std::pair<Point, BasisIndex>> unresolved_configs;
    std::vector<Point> unresolved_points;

    // Decider data: named certificate values (points, rows, thresholds).
    std::map<std::string, std::uint64_t> certificate;
};

// Bounded witness search on a truncation window. P must be a truncation of
// parent (same enumeration prefix); throws std::invalid_argument otherwise.
// Closure-flavored clauses (THalf, T2Half, T3) use the truncation-relative
// closure, so their positives are relative to the window.
Verdict check_axiom(Axiom axiom, const SpacePresentation& P, const CscSpace& parent);

// Exact decision for a transparent gadget space, from the defining oracle
// data, with a certificate or failing configuration. Opaque gadgets (and the
// diagonal space of a non-total oracle) yield a Pending refusal.
Verdict decide_gadget_axiom(Axiom axiom, const GadgetSpace& G);

// The full expected truth table for a transparent gadget. Throws
// std::logic_error on opaque gadgets and std::invalid_argument for the
// diagonal space of a non-total oracle (not a valid space).
AxiomProfile expected_axiom_profile(const GadgetSpace& G);

// Text report: status line, reason, witness table. Deterministic.
std::string verdict_text(Axiom axiom, const Verdict& v);

// CLI convention: 0 separated/decided-true, 2 pending, 3 decided-false.
int verdict_exit_code(const Verdict& v);

} // namespace csctop
