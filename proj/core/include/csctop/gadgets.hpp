#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csctop/oracle.hpp"
#include "csctop/space.hpp"

namespace csctop {

// The reduction spaces. Each kind fixes a basis-family shape driven by one or
// more stage functions; the axiom deciders dispatch on the kind.
enum class GadgetKind {
    T0Gadget,      // T0 iff the oracle is total
    T1Gadget,      // T1 iff total; always T0 and T-half
    T2Gadget,      // T2 iff the value-1 preimage is coinfinite; always T1
    ThalfBasic,    // on omega+1: T-half iff the value-1 preimage is cofinite
    ThalfPi4,      // coproduct of ThalfBasic rows: T-half iff all rows cofinite
    VUnit,         // one c.e. set as a fan around 0; discrete iff W finite
    VSplitUnit,    // two-sided fan; 0 sticks to both halves iff W infinite
    UUnit,         // V-unit column with a limit point x*; regular at x* iff tail all-finite
    UxyUnit,       // split column with x*, y*; closed-nbhd-separable iff tail all-finite
    YTower,        // coproduct of UUnits; T3 iff every conjunct true
    YTower2Half,   // coproduct of UxyUnits; T2-half iff every conjunct true
    DiagCsc,       // diagonal membership family; valid space iff total
};

std::string to_string(GadgetKind kind);
std::optional<GadgetKind> gadget_kind_from(const std::string& name);

// Tail behavior of an infinite family of c.e. sets, beyond the finitely many
// materialized members.
enum class TailRule {
    AllFinite,      // canonical finite set: empty
    AllInfinite,    // canonical infinite set: gains at every stage
    InfiniteEvery,  // gains on one residue class mod the modulus
};

// A family (W_c)_{c in omega} presented as finitely many explicit rows plus a
// tail rule, standing for the statement "for all but finitely many c, W_c is
// finite". With this presentation the statement's truth is carried by the
// tail rule alone.
struct SigmaFourPresentation {
    std::vector<OracleSpec> rows;
    TailRule tail = TailRule::AllFinite;
    std::uint64_t tail_modulus = 2;  // for InfiniteEvery

    bool truth() const { return tail == TailRule::AllFinite; }
    // Spec of row c: materialized when c < rows.size(), else tail-generated.
    OracleSpec row_spec(std::uint64_t c) const;
    bool row_finite(std::uint64_t c) const;  // requires transparency
    bool transparent() const;
};

// A conjunction over m of tail-all-finite statements: finitely many explicit
// conjuncts plus a default for the rest.
struct PiFivePresentation {
    std::vector<SigmaFourPresentation> conjuncts;
    bool tail_true = true;  // default conjuncts true (all-finite) or false

    bool truth() const;
    SigmaFourPresentation conjunct(std::uint64_t m) const;
    bool transparent() const;
};

struct ThalfPi4Data {
    std::vector<OracleSpec> rows;
    OracleSpec default_row;
};

// A built reduction space bundled with the data the deciders need: its kind,
// the consumed oracle descriptions, and named landmark points.
struct GadgetSpace {
    GadgetKind kind = GadgetKind::T0Gadget;
    SpacePtr space;
    std::map<std::string, Point> landmarks;
    bool transparent = true;

    std::optional<OracleSpec> oracle;             // single-oracle kinds
    std::optional<ThalfPi4Data> pi4;              // ThalfPi4
    std::optional<SigmaFourPresentation> sigma4;  // UUnit / UxyUnit
    std::optional<PiFivePresentation> pi5;        // towers
};

enum class TowerVariant { T3, T2Half };

// --- builders -------------------------------------------------------------

// kind must be T0Gadget, T1Gadget, T2Gadget, or ThalfBasic.
GadgetSpace build_separation_gadget(GadgetKind kind, const OracleSpec& f);
GadgetSpace build_V_unit(const OracleSpec& W, bool split);
GadgetSpace build_sigma_unit(const SigmaFourPresentation& P, bool split);
GadgetSpace build_regularity_tower(const PiFivePresentation& P, TowerVariant variant);
GadgetSpace build_thalf_pi4(const std::vector<OracleSpec>& rows, const OracleSpec& default_row);
GadgetSpace build_diag_csc(const OracleSpec& f);

// --- gadget spec files ----------------------------------------------------

// Plain-data form of a gadget spec file:
//   KIND <name>
//   ORACLE <path> | ORACLE INLINE ... END        (single-oracle kinds)
//   ROW <path> | ROW INLINE ... END              (ThalfPi4, repeatable)
//   DEFAULT-ROW <path|INLINE...END|COFINITE|COINFINITE>
//   W <path> | W INLINE ... END                  (sigma units, repeatable)
//   TAIL FINITE | INFINITE | INFINITE-EVERY <k>
//   CONJUNCT ... END                             (towers; W/TAIL lines inside)
//   DEFAULT-CONJUNCT TRUE | FALSE
// Relative oracle paths resolve against the spec file's directory.
struct GadgetSpecFile {
    GadgetKind kind = GadgetKind::T0Gadget;
    std::optional<OracleSpec> oracle;
    std::vector<OracleSpec> rows;
    std::optional<OracleSpec> default_row;
    SigmaFourPresentation sigma4;
    PiFivePresentation pi5;
    bool saw_sigma4 = false;
    bool saw_pi5 = false;
};

GadgetSpecFile parse_gadget_spec(std::istream& in, const std::string& base_dir);
GadgetSpecFile parse_gadget_spec_file(const std::string& path);

// Builds the space a parsed spec describes.
GadgetSpace build_gadget(const GadgetSpecFile& spec);

} // namespace csctop
