#include "csctop/gadgets.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "csctop/pairing.hpp"

namespace csctop {

std::string to_string(GadgetKind kind) {
    switch (kind) {
        case GadgetKind::T0Gadget: return "T0";
        case GadgetKind::T1Gadget: return "T1";
        case GadgetKind::T2Gadget: return "T2";
        case GadgetKind::ThalfBasic: return "THALF-BASIC";
        case GadgetKind::ThalfPi4: return "THALF-PI4";
        case GadgetKind::VUnit: return "VUNIT";
        case GadgetKind::VSplitUnit: return "VUNIT-SPLIT";
        case GadgetKind::UUnit: return "UUNIT";
        case GadgetKind::UxyUnit: return "UUNIT-SPLIT";
        case GadgetKind::YTower: return "TOWER-T3";
        case GadgetKind::YTower2Half: return "TOWER-T2HALF";
        case GadgetKind::DiagCsc: return "DIAG";
    }
    return "?";
}

std::optional<GadgetKind> gadget_kind_from(const std::string& name) {
    static const std::map<std::string, GadgetKind> table = {
        {"T0", GadgetKind::T0Gadget},
        {"T1", GadgetKind::T1Gadget},
        {"T2", GadgetKind::T2Gadget},
        {"THALF-BASIC", GadgetKind::ThalfBasic},
        {"THALF-PI4", GadgetKind::ThalfPi4},
        {"VUNIT", GadgetKind::VUnit},
        {"VUNIT-SPLIT", GadgetKind::VSplitUnit},
        {"UUNIT", GadgetKind::UUnit},
        {"UUNIT-SPLIT", GadgetKind::UxyUnit},
        {"TOWER-T3", GadgetKind::YTower},
        {"TOWER-T2HALF", GadgetKind::YTower2Half},
        {"DIAG", GadgetKind::DiagCsc},
    };
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

// --- presentations --------------------------------------------------------

OracleSpec SigmaFourPresentation::row_spec(std::uint64_t c) const {
    if (c < rows.size()) return rows[c];
    OracleSpec spec;
    switch (tail) {
        case TailRule::AllFinite:
            spec.rule.kind = DefaultRule::Kind::Diverge;
            break;
        case TailRule::AllInfinite:
            spec.rule.kind = DefaultRule::Kind::HaltAtSelf;
            spec.rule.value = 0;
            break;
        case TailRule::InfiniteEvery: {
            spec.rule.kind = DefaultRule::Kind::Modular;
            spec.rule.residues.assign(static_cast<std::size_t>(tail_modulus), std::nullopt);
            spec.rule.residues[0] = 0;  // residue 0 halts with value 0
            break;
        }
    }
    return spec;
}

bool SigmaFourPresentation::row_finite(std::uint64_t c) const {
    if (c >= rows.size()) return tail == TailRule::AllFinite;
    StageFunction fn(rows[c]);
    return fn.domain_finite();
}

bool SigmaFourPresentation::transparent() const {
    return std::none_of(rows.begin(), rows.end(),
                        [](const OracleSpec& r) { return r.opaque; });
}

bool PiFivePresentation::truth() const {
    if (!tail_true) return false;
    return std::all_of(conjuncts.begin(), conjuncts.end(),
                       [](const SigmaFourPresentation& s) { return s.truth(); });
}

SigmaFourPresentation PiFivePresentation::conjunct(std::uint64_t m) const {
    if (m < conjuncts.size()) return conjuncts[m];
    SigmaFourPresentation s;
    s.tail = tail_true ? TailRule::AllFinite : TailRule::AllInfinite;
    return s;
}

bool PiFivePresentation::transparent() const {
    return std::all_of(conjuncts.begin(), conjuncts.end(),
                       [](const SigmaFourPresentation& s) { return s.transparent(); });
}

namespace {

// --- shared oracle-shape helpers ------------------------------------------

// Halt stage of f(x) when this is knowable: transparent functions resolve
// exactly; opaque ones binary-search the visible window. nullopt means
// "diverges" for transparent f and "not visible" for opaque f.
std::optional<std::uint64_t> known_halt_stage(const StageFunction& f, std::uint64_t x) {
    if (!f.opaque()) {
        const StageEntry e = f.resolve(x);
        if (!e.halts) return std::nullopt;
        return e.stage;
    }
    if (f.halted_by(x, f.budget()) != Ternary::Yes) return std::nullopt;
    std::uint64_t lo = 0, hi = f.budget();
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (f.halted_by(x, mid) == Ternary::Yes) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

[[noreturn]] void throw_budget(Point blame, BasisIndex row) {
    throw EvalNontotal(blame, true,
                       "row " + std::to_string(row) + " undecidable at point " +
                           std::to_string(blame) + ": oracle budget exhausted");
}

// --- T0 reduction space ---------------------------------------------------
//
// Points: all naturals. Row 0 is the whole space; row <x,s>+1 is the
// singleton {x+1} once x has halted within s stages, and the whole space
// otherwise. Some point has a singleton row iff the oracle halts there.
class T0Space final : public CscSpace {
public:
    explicit T0Space(OracleSpec spec) : f_(std::move(spec)) {}

    std::string describe() const override { return "T0 reduction space"; }
    std::optional<std::uint64_t> point_count() const override { return std::nullopt; }
    Point point_at(std::uint64_t n) const override { return n; }
    bool contains(Point) const override { return true; }

    bool member(BasisIndex i, Point p) const override {
        if (i == 0) return true;
        const auto [x, s] = unpair_code(i - 1);
        const Ternary h = f_.halted_by(x, s);
        if (h == Ternary::Yes) return p == x + 1;
        if (h == Ternary::No) return true;
        if (p == x + 1) return true;  // both candidate rows contain x+1
        throw_budget(p, i);
    }

    BasisIndex k(BasisIndex i, BasisIndex j, Point p) const override {
        if (i == 0) return j;
        if (j == 0) return i;
        if (singleton_row(i, p)) return i;
        if (singleton_row(j, p)) return j;
        return i;  // both rows are the whole space
    }

    BasisIndex cover_witness(Point) const override { return 0; }

    IsolationAnswer exact_isolated(Point p) const override {
        if (p == 0) return {Ternary::No, std::nullopt};  // no row is {0}
        const std::uint64_t x = p - 1;
        const auto stage = known_halt_stage(f_, x);
        if (stage.has_value()) {
            return {Ternary::Yes, 1 + pair_code(x, *stage)};
        }
        if (!f_.opaque()) return {Ternary::No, std::nullopt};
        return {};
    }

private:
    bool singleton_row(BasisIndex i, Point blame) const {
        const auto [x, s] = unpair_code(i - 1);
        const Ternary h = f_.halted_by(x, s);
        if (h == Ternary::Unknown) throw_budget(blame, i);
        return h == Ternary::Yes;
    }

    StageFunction f_;
};

// --- T1 reduction space ---------------------------------------------------
//
// Points: all naturals. Row 2x is the tail [x, inf); row 2<x,s>+1 is {x}
// once x has halted within s stages and the whole space otherwise. Every
// tail is present, so points are pairwise one-sided separated; {x} appears
// iff the oracle halts at x.
class T1Space final : public CscSpace {
public:
    explicit T1Space(OracleSpec spec) : f_(std::move(spec)) {}

    std::string describe() const override { return "T1 reduction space"; }
    std::optional<std::uint64_t> point_count() const override { return std::nullopt; }
    Point point_at(std::uint64_t n) const override { return n; }
    bool contains(Point) const override { return true; }

    bool member(BasisIndex i, Point p) const override {
        if (i % 2 == 0) return p >= i / 2;
        const auto [x, s] = unpair_code(i / 2);
        const Ternary h = f_.halted_by(x, s);
        if (h == Ternary::Yes) return p == x;
        if (h == Ternary::No) return true;
        if (p == x) return true;
        throw_budget(p, i);
    }

    BasisIndex k(BasisIndex i, BasisIndex j, Point p) const override {
        const auto si = shape(i, p);
        const auto sj = shape(j, p);
        if (si.singleton) return i;
        if (sj.singleton) return j;
        return 2 * std::max(si.start, sj.start);
    }

    BasisIndex cover_witness(Point) const override { return 0; }

    IsolationAnswer exact_isolated(Point p) const override {
        const auto stage = known_halt_stage(f_, p);
        if (stage.has_value()) {
            return {Ternary::Yes, 2 * pair_code(p, *stage) + 1};
        }
        if (!f_.opaque()) return {Ternary::No, std::nullopt};
        return {};
    }

private:
    struct Shape {
        bool singleton = false;
        std::uint64_t start = 0;  // tail start when not a singleton
    };

    Shape shape(BasisIndex i, Point blame) const {
        if (i % 2 == 0) return {false, i / 2};
        const auto [x, s] = unpair_code(i / 2);
        const Ternary h = f_.halted_by(x, s);
        if (h == Ternary::Unknown) throw_budget(blame, i);
        if (h == Ternary::Yes) return {true, x};
        return {false, 0};
    }

    StageFunction f_;
};

// --- T2 reduction space ---------------------------------------------------
//
// Points: all naturals. Row 2<x,y> is {x} plus the tail [y, inf). Row
// 2<x,y>+1, for x <= y, is {x} plus every stage by which y has halted with
// value 1 (a tail when that happens, nothing otherwise); for x > y it is the
// whole space. Every basic set is "one point plus a tail", which keeps the
// intersection operation uniform.
class T2Space final : public CscSpace {
public:
    explicit T2Space(OracleSpec spec) : f_(std::move(spec)) {}

    std::string describe() const override { return "T2 reduction space"; }
    std::optional<std::uint64_t> point_count() const override { return std::nullopt; }
    Point point_at(std::uint64_t n) const override { return n; }
    bool contains(Point) const override { return true; }

    bool member(BasisIndex i, Point p) const override {
        if (i % 2 == 0) {
            const auto [x, y] = unpair_code(i / 2);
            return p == x || p >= y;
        }
        const auto [x, y] = unpair_code(i / 2);
        if (x > y) return true;
        if (p == x) return true;
        const Ternary h = f_.halted_with_value_by(y, p, 1);
        if (h == Ternary::Unknown) throw_budget(p, i);
        return h == Ternary::Yes;
    }

    BasisIndex k(BasisIndex i, BasisIndex j, Point p) const override {
        const auto si = shape(i, p);
        const auto sj = shape(j, p);
        if (!si.tail.has_value()) return i;  // U_i == {p}
        if (!sj.tail.has_value()) return j;
        return 2 * pair_code(p, std::max(*si.tail, *sj.tail));
    }

    BasisIndex cover_witness(Point) const override { return 0; }  // {0} + [0, inf)

    IsolationAnswer exact_isolated(Point p) const override {
        // p is isolated iff some y >= p fails to compute value 1 (then
        // {p} occurs as row 2<p,y>+1).
        if (!f_.opaque()) {
            if (f_.ones_cofinite()) {
                std::optional<std::uint64_t> witness_y;
                for (const auto& [x, e] : f_.spec().entries) {
                    if (x >= p && !(e.halts && e.value == 1)) {
                        witness_y = x;
                        break;
                    }
                }
                if (witness_y.has_value()) {
                    return {Ternary::Yes, 2 * pair_code(p, *witness_y) + 1};
                }
                return {Ternary::No, std::nullopt};
            }
            // Coinfinitely many failures: one exists above any p.
            for (std::uint64_t y = p;; ++y) {
                const StageEntry e = f_.resolve(y);
                if (!(e.halts && e.value == 1)) {
                    return {Ternary::Yes, 2 * pair_code(p, y) + 1};
                }
                if (y > p + (1u << 20)) {
                    throw std::logic_error("isolated-point scan exhausted");
                }
            }
        }
        for (std::uint64_t y = p; y <= p + 256; ++y) {
            if (f_.halted_by(y, f_.budget()) == Ternary::Yes &&
                f_.halted_with_value_by(y, f_.budget(), 1) == Ternary::No) {
                return {Ternary::Yes, 2 * pair_code(p, y) + 1};
            }
        }
        return {};
    }

private:
    struct Shape {
        std::uint64_t sing = 0;
        std::optional<std::uint64_t> tail;  // tail start; nullopt = bare singleton
    };

    Shape shape(BasisIndex i, Point blame) const {
        const auto [x, y] = unpair_code(i / 2);
        if (i % 2 == 0) return {x, y};
        if (x > y) return {0, 0};  // whole space, as {0} + [0, inf)
        if (f_.opaque() && f_.halted_by(y, f_.budget()) != Ternary::Yes) {
            throw_budget(blame, i);
        }
        const auto stage = known_halt_stage(f_, y);
        if (stage.has_value() &&
            f_.halted_with_value_by(y, *stage, 1) == Ternary::Yes) {
            return {x, *stage};
        }
        return {x, std::nullopt};
    }

    StageFunction f_;
};

// --- T-half basic space (omega + 1) ---------------------------------------
//
// Point code 0 is the top point; code n+1 is the natural n. Row 2x is the
// closed tail [x, top]; row 2<x,s>+1 is {x} once x has halted with value 1
// within s stages, and the whole space otherwise. Naturals become isolated
// exactly where the oracle computes 1; the top point never does.
class ThalfBasicSpace final : public CscSpace {
public:
    explicit ThalfBasicSpace(OracleSpec spec) : f_(std::move(spec)) {}

    std::string describe() const override { return "T-half basic space (omega+1)"; }
    std::optional<std::uint64_t> point_count() const override { return std::nullopt; }
    Point point_at(std::uint64_t n) const override { return n; }
    bool contains(Point) const override { return true; }

    bool member(BasisIndex i, Point p) const override {
        if (i % 2 == 0) return p == 0 || p >= i / 2 + 1;
        const auto [x, s] = unpair_code(i / 2);
        const Ternary h = f_.halted_with_value_by(x, s, 1);
        if (h == Ternary::Yes) return p == x + 1;
        if (h == Ternary::No) return true;
        if (p == x + 1) return true;
        throw_budget(p, i);
    }

    BasisIndex k(BasisIndex i, BasisIndex j, Point p) const override {
        const auto si = shape(i, p);
        const auto sj = shape(j, p);
        if (si.singleton) return i;
        if (sj.singleton) return j;
        return 2 * std::max(si.start, sj.start);
    }

    BasisIndex cover_witness(Point) const override { return 0; }

    IsolationAnswer exact_isolated(Point p) const override {
        if (p == 0) return {Ternary::No, std::nullopt};  // top point: tails only
        const std::uint64_t x = p - 1;
        const auto stage = known_halt_stage(f_, x);
        if (stage.has_value()) {
            const bool one = f_.halted_with_value_by(x, *stage, 1) == Ternary::Yes;
            if (one) return {Ternary::Yes, 2 * pair_code(x, *stage) + 1};
            return {Ternary::No, std::nullopt};  // halt value is frozen
        }
        if (!f_.opaque()) return {Ternary::No, std::nullopt};
        return {};
    }

private:
    struct Shape {
        bool singleton = false;
        std::uint64_t start = 0;
    };

    Shape shape(BasisIndex i, Point blame) const {
        if (i % 2 == 0) return {false, i / 2};
        const auto [x, s] = unpair_code(i / 2);
        const Ternary h = f_.halted_with_value_by(x, s, 1);
        if (h == Ternary::Unknown) throw_budget(blame, i);
        if (h == Ternary::Yes) return {true, 0};
        return {false, 0};
    }

    StageFunction f_;
};

// --- V-unit space ---------------------------------------------------------
//
// One c.e. set W, presented so that at most one element appears per stage;
// the space's nonzero points are the gain stages of W (always >= 1), plus a
// stick point 0. Row 2s is {0} plus every gain stage >= s; row 2s+1 is {s}
// if s is a gain stage and empty otherwise. Gains are isolated outright; 0
// is isolated iff W stops gaining, i.e. iff W is finite.
class VUnitSpace final : public CscSpace {
public:
    explicit VUnitSpace(OracleSpec spec) : W_(StageFunction(std::move(spec))) {}

    std::string describe() const override { return "V-unit space"; }

    std::optional<std::uint64_t> point_count() const override {
        if (W_.fn().opaque()) return std::nullopt;
        if (!W_.is_finite()) return std::nullopt;
        return 1 + W_.fn().domain_elements().size();
    }

    Point point_at(std::uint64_t n) const override {
        if (n == 0) return 0;
        const auto total = point_count();
        if (total.has_value() && n >= *total) {
            throw std::out_of_range("point index past the end of a finite space");
        }
        std::uint64_t seen = 0;
        for (std::uint64_t t = 1;; ++t) {
            if (gain_or_throw_point(t) && ++seen == n) return t;
        }
    }

    bool contains(Point p) const override {
        if (p == 0) return true;
        return gain_or_throw_point(p);
    }

    bool member(BasisIndex i, Point p) const override {
        if (i % 2 == 0) {
            if (p == 0) return true;
            if (p < i / 2) return false;
            return gain_or_throw(p, p, i) ;
        }
        const std::uint64_t s = i / 2;
        if (p != s) return false;
        return gain_or_throw(s, p, i);
    }

    BasisIndex k(BasisIndex i, BasisIndex j, Point) const override {
        if (i % 2 == 1) return i;  // U_i == {p}
        if (j % 2 == 1) return j;
        return 2 * std::max(i / 2, j / 2);
    }

    BasisIndex cover_witness(Point) const override { return 0; }

    IsolationAnswer exact_isolated(Point p) const override {
        if (p != 0) {
            if (W_.gain_at_bounded(p) == Ternary::Yes) {
                return {Ternary::Yes, 2 * p + 1};
            }
            return {};
        }
        if (W_.fn().opaque()) return {};
        if (!W_.is_finite()) return {Ternary::No, std::nullopt};
        return {Ternary::Yes, 2 * quiet_stage()};
    }

    // First stage s with no gains at any stage >= s; only for finite W.
    std::uint64_t quiet_stage() const {
        std::uint64_t max_gain = 0;
        for (const std::uint64_t x : W_.fn().domain_elements()) {
            max_gain = std::max(max_gain, *W_.stage_of(x));
        }
        return max_gain + 1;
    }

    const CeSet& gains() const { return W_; }

private:
    bool gain_or_throw_point(std::uint64_t t) const {
        const Ternary g = W_.gain_at_bounded(t);
        if (g == Ternary::Unknown) {
            throw EvalNontotal(t, true,
                               "point resolution stalled at stage " + std::to_string(t) +
                                   ": oracle budget exhausted");
        }
        return g == Ternary::Yes;
    }

    bool gain_or_throw(std::uint64_t t, Point blame, BasisIndex row) const {
        const Ternary g = W_.gain_at_bounded(t);
        if (g == Ternary::Unknown) throw_budget(blame, row);
        return g == Ternary::Yes;
    }

    CeSet W_;
};

// --- split V-unit space ---------------------------------------------------
//
// Like the V-unit but each gain stage t contributes two points 2t and 2t+1,
// and the single fan splits in three: row 3s is {0} plus both copies of all
// gains >= s; rows 3s+1 and 3s+2 carve out {2s} and {2s+1} when s is a gain
// stage. The even copies and odd copies each accumulate to 0 iff W is
// infinite.
class VSplitUnitSpace final : public CscSpace {
public:
    explicit VSplitUnitSpace(OracleSpec spec) : W_(StageFunction(std::move(spec))) {}

    std::string describe() const override { return "split V-unit space"; }

    std::optional<std::uint64_t> point_count() const override {
        if (W_.fn().opaque()) return std::nullopt;
        if (!W_.is_finite()) return std::nullopt;
        return 1 + 2 * W_.fn().domain_elements().size();
    }

    Point point_at(std::uint64_t n) const override {
        if (n == 0) return 0;
        const auto total = point_count();
        if (total.has_value() && n >= *total) {
            throw std::out_of_range("point index past the end of a finite space");
        }
        const std::uint64_t rank = (n - 1) / 2;  // which gain, in stage order
        const std::uint64_t parity = (n - 1) % 2;
        std::uint64_t seen = 0;
        for (std::uint64_t t = 1;; ++t) {
            if (gain_or_throw_point(t) && seen++ == rank) return 2 * t + parity;
        }
    }

    bool contains(Point p) const override {
        if (p == 0) return true;
        const std::uint64_t t = p / 2;
        if (t == 0) return false;
        return gain_or_throw_point(t);
    }

    bool member(BasisIndex i, Point p) const override {
        const std::uint64_t s = i / 3;
        if (i % 3 == 0) {
            if (p == 0) return true;
            const std::uint64_t t = p / 2;
            if (t == 0 || t < s) return false;
            return gain_or_throw(t, p, i);
        }
        const Point target = 2 * s + (i % 3 == 1 ? 0 : 1);
        if (p != target || s == 0) return false;
        return gain_or_throw(s, p, i);
    }

    BasisIndex k(BasisIndex i, BasisIndex j, Point) const override {
        if (i % 3 != 0) return i;  // U_i == {p}
        if (j % 3 != 0) return j;
        return 3 * std::max(i / 3, j / 3);
    }

    BasisIndex cover_witness(Point) const override { return 0; }

    IsolationAnswer exact_isolated(Point p) const override {
        if (p != 0) {
            const std::uint64_t t = p / 2;
            if (t >= 1 && W_.gain_at_bounded(t) == Ternary::Yes) {
                return {Ternary::Yes, 3 * t + (p % 2 == 0 ? 1 : 2)};
            }
            return {};
        }
        if (W_.fn().opaque()) return {};
        if (!W_.is_finite()) return {Ternary::No, std::nullopt};
        std::uint64_t max_gain = 0;
        for (const std::uint64_t x : W_.fn().domain_elements()) {
            max_gain = std::max(max_gain, *W_.stage_of(x));
        }
        return {Ternary::Yes, 3 * (max_gain + 1)};
    }

    const CeSet& gains() const { return W_; }

private:
    bool gain_or_throw_point(std::uint64_t t) const {
        const Ternary g = W_.gain_at_bounded(t);
        if (g == Ternary::Unknown) {
            throw EvalNontotal(2 * t, true,
                               "point enumeration stalled at stage " + std::to_string(t) +
                                   ": oracle budget exhausted");
        }
        return g == Ternary::Yes;
    }

    bool gain_or_throw(std::uint64_t t, Point blame, BasisIndex row) const {
        const Ternary g = W_.gain_at_bounded(t);
        if (g == Ternary::Unknown) throw_budget(blame, row);
        return g == Ternary::Yes;
    }

    CeSet W_;
};

// Local singleton row index for a nonzero local point of a component unit.
BasisIndex local_singleton_row(bool split, Point lp) {
    if (!split) return 2 * lp + 1;
    const std::uint64_t t = lp / 2;
    return lp % 2 == 0 ? 3 * t + 1 : 3 * t + 2;
}

// Lazily built family of component units for a tail-all-finite statement;
// rows past the materialized prefix share one tail unit.
template <typename Unit>
class UnitFamily {
public:
    explicit UnitFamily(SigmaFourPresentation P) : P_(std::move(P)) {}

    const SigmaFourPresentation& presentation() const { return P_; }

    std::shared_ptr<const Unit> unit(std::uint64_t c) const {
        const std::uint64_t key = std::min<std::uint64_t>(c, P_.rows.size());
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        auto made = std::make_shared<Unit>(P_.row_spec(key));
        memo_.emplace(key, made);
        return made;
    }

private:
    SigmaFourPresentation P_;
    mutable std::mutex mu_;
    mutable std::map<std::uint64_t, std::shared_ptr<const Unit>> memo_;
};

// --- sigma-unit space (unsplit) -------------------------------------------
//
// A limit point x* (code 0) over the disjoint column of V-units V_c, one per
// row of a tail-all-finite statement; point 1+<c,v> is local point v of V_c.
// Even row 2<c,l> is local row l of V_c; odd row 2q+1 is x* together with
// the nonzero points of every column >= q. x* has a neighborhood missing
// all sticks iff the tail columns are gain-free, i.e. iff the statement is
// true; that is what the regularity deciders probe.
class UUnitSpace final : public CscSpace {
public:
    explicit UUnitSpace(SigmaFourPresentation P) : family_(std::move(P)) {}

    std::string describe() const override { return "sigma-unit space"; }
    std::optional<std::uint64_t> point_count() const override { return std::nullopt; }

    Point point_at(std::uint64_t n) const override {
        if (n == 0) return 0;
        std::uint64_t seen = 0;
        for (std::uint64_t z = 0;; ++z) {
            const auto [c, m] = unpair_code(z);
            const auto unit = family_.unit(c);
            const auto local_count = unit->point_count();
            if (local_count.has_value() && m >= *local_count) continue;
            if (seen++ == n - 1) return 1 + pair_code(c, unit->point_at(m));
        }
    }

    bool contains(Point p) const override {
        if (p == 0) return true;
        const auto [c, lp] = unpair_code(p - 1);
        return family_.unit(c)->contains(lp);
    }

    bool member(BasisIndex i, Point p) const override {
        if (i % 2 == 0) {
            if (p == 0) return false;
            const auto [c, li] = unpair_code(i / 2);
            const auto [cp, lp] = unpair_code(p - 1);
            if (cp != c) return false;
            return family_.unit(c)->member(li, lp);
        }
        if (p == 0) return true;
        const std::uint64_t q = i / 2;
        const auto [cp, lp] = unpair_code(p - 1);
        if (cp < q || lp == 0) return false;
        return family_.unit(cp)->contains(lp);
    }

    BasisIndex k(BasisIndex i, BasisIndex j, Point p) const override {
        const bool ei = i % 2 == 0, ej = j % 2 == 0;
        if ((ei || ej) && p == 0) {
            throw std::logic_error("k precondition: x* lies in no column row");
        }
        if (ei && ej) {
            const auto [ci, li] = unpair_code(i / 2);
            const auto [cj, lj] = unpair_code(j / 2);
            if (ci != cj) throw std::logic_error("k queried across disjoint columns");
            const auto [cp, lp] = unpair_code(p - 1);
            (void)cp;
            return 2 * pair_code(ci, family_.unit(ci)->k(li, lj, lp));
        }
        if (ei != ej) {
            // One column row, one x*-neighborhood; p is a nonzero local point,
            // so its local singleton row separates it inside both.
            const auto [cp, lp] = unpair_code(p - 1);
            return 2 * pair_code(cp, local_singleton_row(false, lp));
        }
        return 2 * std::max(i / 2, j / 2) + 1;
    }

    BasisIndex cover_witness(Point p) const override {
        if (p == 0) return 1;  // odd row q == 0
        const auto [c, lp] = unpair_code(p - 1);
        (void)lp;
        return 2 * pair_code(c, 0);  // image of the whole column
    }

    IsolationAnswer exact_isolated(Point p) const override {
        const auto& P = family_.presentation();
        if (p == 0) {
            if (P.tail == TailRule::AllFinite) {
                return {Ternary::Yes, 2 * P.rows.size() + 1};
            }
            return {Ternary::No, std::nullopt};  // every x*-row keeps infinitely many sticks
        }
        const auto [c, lp] = unpair_code(p - 1);
        IsolationAnswer a = family_.unit(c)->exact_isolated(lp);
        if (a.witness.has_value()) a.witness = 2 * pair_code(c, *a.witness);
        return a;
    }

    const SigmaFourPresentation& presentation() const { return family_.presentation(); }

private:
    UnitFamily<VUnitSpace> family_;
};

// --- split sigma-unit space -----------------------------------------------
//
// Two limit points x* (code 0) and y* (code 1) over split V-unit columns;
// point 2+<c,v> is local point v of the split column c. Even row 2<c,l> is
// local row l of column c; odd row 2(2i)+1 collects x* with the even-copy
// gains of columns >= i, and odd row 2(2i+1)+1 collects y* with the odd
// copies. When some tail column gains forever, every pair of closed
// neighborhoods of x* and y* meets in that column.
class UxyUnitSpace final : public CscSpace {
public:
    explicit UxyUnitSpace(SigmaFourPresentation P) : family_(std::move(P)) {}

    std::string describe() const override { return "split sigma-unit space"; }
    std::optional<std::uint64_t> point_count() const override { return std::nullopt; }

    Point point_at(std::uint64_t n) const override {
        if (n <= 1) return n;
        std::uint64_t seen = 0;
        for (std::uint64_t z = 0;; ++z) {
            const auto [c, m] = unpair_code(z);
            const auto unit = family_.unit(c);
            const auto local_count = unit->point_count();
            if (local_count.has_value() && m >= *local_count) continue;
            if (seen++ == n - 2) return 2 + pair_code(c, unit->point_at(m));
        }
    }

    bool contains(Point p) const override {
        if (p <= 1) return true;
        const auto [c, lp] = unpair_code(p - 2);
        return family_.unit(c)->contains(lp);
    }

    bool member(BasisIndex i, Point p) const override {
        if (i % 2 == 0) {
            if (p <= 1) return false;
            const auto [c, li] = unpair_code(i / 2);
            const auto [cp, lp] = unpair_code(p - 2);
            if (cp != c) return false;
            return family_.unit(c)->member(li, lp);
        }
        const std::uint64_t q = i / 2;
        const std::uint64_t level = q / 2;
        const bool x_side = q % 2 == 0;
        if (p == 0) return x_side;
        if (p == 1) return !x_side;
        const auto [cp, lp] = unpair_code(p - 2);
        if (cp < level || lp == 0) return false;
        if ((lp % 2 == 0) != x_side) return false;
        return family_.unit(cp)->contains(lp);
    }

    BasisIndex k(BasisIndex i, BasisIndex j, Point p) const override {
        const bool ei = i % 2 == 0, ej = j % 2 == 0;
        if ((ei || ej) && p <= 1) {
            throw std::logic_error("k precondition: limit points lie in no column row");
        }
        if (ei && ej) {
            const auto [ci, li] = unpair_code(i / 2);
            const auto [cj, lj] = unpair_code(j / 2);
            if (ci != cj) throw std::logic_error("k queried across disjoint columns");
            const auto [cp, lp] = unpair_code(p - 2);
            (void)cp;
            return 2 * pair_code(ci, family_.unit(ci)->k(li, lj, lp));
        }
        if (ei != ej) {
            const auto [cp, lp] = unpair_code(p - 2);
            return 2 * pair_code(cp, local_singleton_row(true, lp));
        }
        const std::uint64_t qi = i / 2, qj = j / 2;
        if (qi % 2 != qj % 2) {
            throw std::logic_error("k queried on disjoint limit neighborhoods");
        }
        return 2 * (2 * std::max(qi / 2, qj / 2) + qi % 2) + 1;
    }

    BasisIndex cover_witness(Point p) const override {
        if (p == 0) return 1;  // x*-side, level 0
        if (p == 1) return 3;  // y*-side, level 0
        const auto [c, lp] = unpair_code(p - 2);
        (void)lp;
        return 2 * pair_code(c, 0);
    }

    IsolationAnswer exact_isolated(Point p) const override {
        const auto& P = family_.presentation();
        if (p <= 1) {
            if (P.tail == TailRule::AllFinite) {
                const std::uint64_t level = P.rows.size();
                return {Ternary::Yes, 2 * (2 * level + p) + 1};
            }
            return {Ternary::No, std::nullopt};
        }
        const auto [c, lp] = unpair_code(p - 2);
        IsolationAnswer a = family_.unit(c)->exact_isolated(lp);
        if (a.witness.has_value()) a.witness = 2 * pair_code(c, *a.witness);
        return a;
    }

    const SigmaFourPresentation& presentation() const { return family_.presentation(); }

private:
    UnitFamily<VSplitUnitSpace> family_;
};

// --- diagonal membership space --------------------------------------------
//
// Points: all naturals; row i contains only the point i, and membership of
// i in row i is defined by running the oracle at i. A divergent input makes
// that one membership query unresolvable, so the family is a legal space
// exactly when the oracle is total.
class DiagSpace final : public CscSpace {
public:
    explicit DiagSpace(OracleSpec spec) : f_(std::move(spec)) {}

    std::string describe() const override { return "diagonal membership space"; }
    std::optional<std::uint64_t> point_count() const override { return std::nullopt; }
    Point point_at(std::uint64_t n) const override { return n; }
    bool contains(Point) const override { return true; }

    bool member(BasisIndex i, Point p) const override {
        if (i != p) return false;
        if (!f_.opaque()) {
            if (f_.resolve(p).halts) return true;
            throw EvalNontotal(p, false,
                               "row " + std::to_string(i) + " at point " + std::to_string(p) +
                                   ": defining computation diverges");
        }
        if (f_.halted_by(p, f_.budget()) == Ternary::Yes) return true;
        throw_budget(p, i);
    }

    BasisIndex k(BasisIndex i, BasisIndex, Point) const override { return i; }
    BasisIndex cover_witness(Point p) const override { return p; }

    IsolationAnswer exact_isolated(Point p) const override {
        if (known_halt_stage(f_, p).has_value()) return {Ternary::Yes, p};
        return {};
    }

private:
    StageFunction f_;
};

std::string fmt_landmark(const char* stem, std::uint64_t a) {
    return std::string(stem) + "_" + std::to_string(a);
}

std::string fmt_landmark(const char* stem, std::uint64_t a, std::uint64_t b) {
    return std::string(stem) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

} // namespace

// --- builders -------------------------------------------------------------

GadgetSpace build_separation_gadget(GadgetKind kind, const OracleSpec& f) {
    GadgetSpace g;
    g.kind = kind;
    g.oracle = f;
    g.transparent = !f.opaque;
    switch (kind) {
        case GadgetKind::T0Gadget:
            g.space = std::make_shared<T0Space>(f);
            break;
        case GadgetKind::T1Gadget:
            g.space = std::make_shared<T1Space>(f);
            break;
        case GadgetKind::T2Gadget:
            g.space = std::make_shared<T2Space>(f);
            break;
        case GadgetKind::ThalfBasic:
            g.space = std::make_shared<ThalfBasicSpace>(f);
            g.landmarks["omega"] = 0;
            break;
        default:
            throw std::invalid_argument(
                "build_separation_gadget: kind must be T0, T1, T2, or THALF-BASIC");
    }
    return g;
}

GadgetSpace build_V_unit(const OracleSpec& W, bool split) {
    GadgetSpace g;
    g.kind = split ? GadgetKind::VSplitUnit : GadgetKind::VUnit;
    g.oracle = W;
    g.transparent = !W.opaque;
    if (split) {
        g.space = std::make_shared<VSplitUnitSpace>(W);
    } else {
        g.space = std::make_shared<VUnitSpace>(W);
    }
    g.landmarks["0"] = 0;
    return g;
}

GadgetSpace build_sigma_unit(const SigmaFourPresentation& P, bool split) {
    GadgetSpace g;
    g.kind = split ? GadgetKind::UxyUnit : GadgetKind::UUnit;
    g.sigma4 = P;
    g.transparent = P.transparent();
    const std::uint64_t offset = split ? 2 : 1;
    if (split) {
        g.space = std::make_shared<UxyUnitSpace>(P);
        g.landmarks["y*"] = 1;
    } else {
        g.space = std::make_shared<UUnitSpace>(P);
    }
    g.landmarks["x*"] = 0;
    for (std::uint64_t c = 0; c < P.rows.size(); ++c) {
        g.landmarks[fmt_landmark("0", c)] = offset + pair_code(c, 0);
    }
    return g;
}

GadgetSpace build_regularity_tower(const PiFivePresentation& P, TowerVariant variant) {
    GadgetSpace g;
    const bool split = variant == TowerVariant::T2Half;
    g.kind = split ? GadgetKind::YTower2Half : GadgetKind::YTower;
    g.pi5 = P;
    g.transparent = P.transparent();

    std::vector<SpacePtr> prefix;
    prefix.reserve(P.conjuncts.size());
    for (const auto& conj : P.conjuncts) {
        if (split) {
            prefix.push_back(std::make_shared<UxyUnitSpace>(conj));
        } else {
            prefix.push_back(std::make_shared<UUnitSpace>(conj));
        }
    }
    SpacePtr tail_unit;
    {
        const SigmaFourPresentation def = P.conjunct(P.conjuncts.size());
        if (split) {
            tail_unit = std::make_shared<UxyUnitSpace>(def);
        } else {
            tail_unit = std::make_shared<UUnitSpace>(def);
        }
    }
    g.space = std::make_shared<DisjointUnionSpace>(
        split ? "closed-separation tower" : "regularity tower", std::move(prefix),
        [tail_unit](std::uint64_t) { return tail_unit; });

    const std::uint64_t offset = split ? 2 : 1;
    for (std::uint64_t m = 0; m < P.conjuncts.size(); ++m) {
        g.landmarks[fmt_landmark("x*", m)] = pair_code(m, 0);
        if (split) g.landmarks[fmt_landmark("y*", m)] = pair_code(m, 1);
        for (std::uint64_t c = 0; c < P.conjuncts[m].rows.size(); ++c) {
            g.landmarks[fmt_landmark("0", m, c)] = pair_code(m, offset + pair_code(c, 0));
        }
    }
    return g;
}

GadgetSpace build_thalf_pi4(const std::vector<OracleSpec>& rows, const OracleSpec& default_row) {
    GadgetSpace g;
    g.kind = GadgetKind::ThalfPi4;
    g.pi4 = ThalfPi4Data{rows, default_row};
    g.transparent = !default_row.opaque &&
                    std::none_of(rows.begin(), rows.end(),
                                 [](const OracleSpec& r) { return r.opaque; });

    std::vector<SpacePtr> prefix;
    prefix.reserve(rows.size());
    for (const auto& r : rows) prefix.push_back(std::make_shared<ThalfBasicSpace>(r));
    SpacePtr tail = std::make_shared<ThalfBasicSpace>(default_row);
    g.space = std::make_shared<DisjointUnionSpace>(
        "T-half product space", std::move(prefix),
        [tail](std::uint64_t) { return tail; });

    for (std::uint64_t c = 0; c < rows.size(); ++c) {
        g.landmarks[fmt_landmark("omega", c)] = pair_code(c, 0);
    }
    return g;
}

GadgetSpace build_diag_csc(const OracleSpec& f) {
    GadgetSpace g;
    g.kind = GadgetKind::DiagCsc;
    g.oracle = f;
    g.transparent = !f.opaque;
    g.space = std::make_shared<DiagSpace>(f);
    return g;
}

// --- spec files -----------------------------------------------------------

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

struct SpecReader {
    std::istream& in;
    std::string base_dir;
    std::size_t lineno = 0;

    bool next(std::vector<std::string>& toks, std::string& raw) {
        while (std::getline(in, raw)) {
            ++lineno;
            const auto hash = raw.find('#');
            std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
            toks = split_ws(body);
            if (!toks.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(lineno, msg); }

    // Reads an oracle either from a path operand or from an INLINE ... END
    // block ending at a bare END line.
    OracleSpec read_oracle_operand(const std::vector<std::string>& toks, std::size_t at) {
        if (at >= toks.size()) fail("expected a path or INLINE");
        if (toks[at] == "INLINE") {
            if (at + 1 != toks.size()) fail("INLINE takes no further operands");
            const std::size_t block_start = lineno;
            std::ostringstream block;
            std::string raw;
            bool closed = false;
            while (std::getline(in, raw)) {
                ++lineno;
                const auto body = split_ws(raw);
                if (body.size() == 1 && body[0] == "END") {
                    closed = true;
                    break;
                }
                block << raw << '\n';
            }
            if (!closed) throw ParseError(block_start, "INLINE block not closed by END");
            std::istringstream iss(block.str());
            try {
                return parse_oracle(iss);
            } catch (const ParseError& e) {
                std::string msg = e.what();
                if (e.line() > 0) {
                    const auto p = msg.find(": ");
                    if (p != std::string::npos) msg = msg.substr(p + 2);
                }
                throw ParseError(block_start + e.line(), msg);
            }
        }
        if (at + 1 != toks.size()) fail("unexpected trailing operands");
        std::filesystem::path p(toks[at]);
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        return parse_oracle_file(p.string());
    }

    std::uint64_t read_number(const std::string& tok) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(tok, &used);
            if (used != tok.size()) fail("malformed number '" + tok + "'");
            return v;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            fail("malformed number '" + tok + "'");
        }
    }

    // Parses a TAIL clause into an existing statement.
    void apply_tail(SigmaFourPresentation& sig, const std::vector<std::string>& toks) {
        if (toks.size() < 2) fail("TAIL needs FINITE, INFINITE, or INFINITE-EVERY <k>");
        if (toks[1] == "FINITE") {
            if (toks.size() != 2) fail("TAIL FINITE takes no operands");
            sig.tail = TailRule::AllFinite;
        } else if (toks[1] == "INFINITE") {
            if (toks.size() != 2) fail("TAIL INFINITE takes no operands");
            sig.tail = TailRule::AllInfinite;
        } else if (toks[1] == "INFINITE-EVERY") {
            if (toks.size() != 3) fail("TAIL INFINITE-EVERY needs a modulus");
            const std::uint64_t k = read_number(toks[2]);
            if (k == 0) fail("modulus must be positive");
            sig.tail = TailRule::InfiniteEvery;
            sig.tail_modulus = k;
        } else {
            fail("unknown TAIL rule '" + toks[1] + "'");
        }
    }
};

OracleSpec canonical_cofinite_row() {
    OracleSpec spec;
    spec.rule.kind = DefaultRule::Kind::HaltAtSelf;
    spec.rule.value = 1;
    return spec;
}

OracleSpec canonical_coinfinite_row() {
    OracleSpec spec;
    spec.rule.kind = DefaultRule::Kind::HaltAtSelf;
    spec.rule.value = 0;
    return spec;
}

} // namespace

GadgetSpecFile parse_gadget_spec(std::istream& in, const std::string& base_dir) {
    SpecReader rd{in, base_dir};
    GadgetSpecFile out;

    std::vector<std::string> toks;
    std::string raw;
    if (!rd.next(toks, raw)) throw ParseError(0, "empty gadget spec");
    if (toks[0] != "KIND" || toks.size() != 2) {
        rd.fail("gadget specs must open with 'KIND <name>'");
    }
    const auto kind = gadget_kind_from(toks[1]);
    if (!kind.has_value()) rd.fail("unknown gadget kind '" + toks[1] + "'");
    out.kind = *kind;

    bool saw_tail = false;
    bool saw_default_conjunct = false;

    while (rd.next(toks, raw)) {
        const std::string& key = toks[0];
        if (key == "KIND") {
            rd.fail("KIND repeated");
        } else if (key == "ORACLE") {
            if (out.oracle.has_value()) rd.fail("ORACLE repeated");
            out.oracle = rd.read_oracle_operand(toks, 1);
        } else if (key == "ROW") {
            out.rows.push_back(rd.read_oracle_operand(toks, 1));
        } else if (key == "DEFAULT-ROW") {
            if (out.default_row.has_value()) rd.fail("DEFAULT-ROW repeated");
            if (toks.size() == 2 && toks[1] == "COFINITE") {
                out.default_row = canonical_cofinite_row();
            } else if (toks.size() == 2 && toks[1] == "COINFINITE") {
                out.default_row = canonical_coinfinite_row();
            } else {
                out.default_row = rd.read_oracle_operand(toks, 1);
            }
        } else if (key == "W") {
            out.saw_sigma4 = true;
            out.sigma4.rows.push_back(rd.read_oracle_operand(toks, 1));
        } else if (key == "TAIL") {
            out.saw_sigma4 = true;
            if (saw_tail) rd.fail("TAIL repeated");
            saw_tail = true;
            rd.apply_tail(out.sigma4, toks);
        } else if (key == "CONJUNCT") {
            if (toks.size() != 1) rd.fail("CONJUNCT takes no operands");
            out.saw_pi5 = true;
            const std::size_t opened_at = rd.lineno;
            SigmaFourPresentation conj;
            bool conj_tail = false;
            bool closed = false;
            while (rd.next(toks, raw)) {
                if (toks[0] == "END") {
                    if (toks.size() != 1) rd.fail("END takes no operands");
                    closed = true;
                    break;
                } else if (toks[0] == "W") {
                    conj.rows.push_back(rd.read_oracle_operand(toks, 1));
                } else if (toks[0] == "TAIL") {
                    if (conj_tail) rd.fail("TAIL repeated in conjunct");
                    conj_tail = true;
                    rd.apply_tail(conj, toks);
                } else {
                    rd.fail("unexpected '" + toks[0] + "' inside CONJUNCT");
                }
            }
            if (!closed) throw ParseError(opened_at, "CONJUNCT block not closed by END");
            if (!conj_tail) throw ParseError(opened_at, "CONJUNCT block needs a TAIL line");
            out.pi5.conjuncts.push_back(std::move(conj));
        } else if (key == "DEFAULT-CONJUNCT") {
            out.saw_pi5 = true;
            if (saw_default_conjunct) rd.fail("DEFAULT-CONJUNCT repeated");
            saw_default_conjunct = true;
            if (toks.size() != 2 || (toks[1] != "TRUE" && toks[1] != "FALSE")) {
                rd.fail("DEFAULT-CONJUNCT needs TRUE or FALSE");
            }
            out.pi5.tail_true = toks[1] == "TRUE";
        } else {
            rd.fail("unknown directive '" + key + "'");
        }
    }

    // Kind-specific completeness checks.
    const auto need = [&](bool ok, const char* msg) {
        if (!ok) throw ParseError(rd.lineno, msg);
    };
    const bool single_oracle_kind =
        out.kind == GadgetKind::T0Gadget || out.kind == GadgetKind::T1Gadget ||
        out.kind == GadgetKind::T2Gadget || out.kind == GadgetKind::ThalfBasic ||
        out.kind == GadgetKind::VUnit || out.kind == GadgetKind::VSplitUnit ||
        out.kind == GadgetKind::DiagCsc;
    if (single_oracle_kind) {
        need(out.oracle.has_value(), "this gadget kind needs an ORACLE line");
        need(out.rows.empty() && !out.default_row.has_value(), "ROW lines do not apply here");
        need(!out.saw_sigma4, "W/TAIL lines do not apply here");
        need(!out.saw_pi5, "CONJUNCT lines do not apply here");
    } else if (out.kind == GadgetKind::ThalfPi4) {
        need(!out.oracle.has_value(), "use ROW/DEFAULT-ROW lines, not ORACLE");
        need(out.default_row.has_value(), "THALF-PI4 needs a DEFAULT-ROW line");
        need(!out.saw_sigma4 && !out.saw_pi5, "W/TAIL/CONJUNCT lines do not apply here");
    } else if (out.kind == GadgetKind::UUnit || out.kind == GadgetKind::UxyUnit) {
        need(!out.oracle.has_value() && out.rows.empty() && !out.default_row.has_value(),
             "use W/TAIL lines for this gadget kind");
        need(saw_tail, "this gadget kind needs a TAIL line");
        need(!out.saw_pi5, "CONJUNCT lines do not apply here");
    } else {  // towers
        need(!out.oracle.has_value() && out.rows.empty() && !out.default_row.has_value(),
             "use CONJUNCT blocks for this gadget kind");
        need(!out.saw_sigma4, "top-level W/TAIL lines do not apply here");
        need(saw_default_conjunct, "towers need a DEFAULT-CONJUNCT line");
    }
    return out;
}

GadgetSpecFile parse_gadget_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open gadget spec '" + path + "'");
    const std::string dir = std::filesystem::path(path).parent_path().string();
    try {
        return parse_gadget_spec(in, dir);
    } catch (const ParseError& e) {
        std::string msg = e.what();
        if (e.line() > 0) {
            const auto p = msg.find(": ");
            if (p != std::string::npos) msg = msg.substr(p + 2);
        }
        throw ParseError(e.line(), path + ": " + msg);
    }
}

GadgetSpace build_gadget(const GadgetSpecFile& spec) {
    switch (spec.kind) {
        case GadgetKind::T0Gadget:
        case GadgetKind::T1Gadget:
        case GadgetKind::T2Gadget:
        case GadgetKind::ThalfBasic:
            return build_separation_gadget(spec.kind, *spec.oracle);
        case GadgetKind::VUnit:
            return build_V_unit(*spec.oracle, false);
        case GadgetKind::VSplitUnit:
            return build_V_unit(*spec.oracle, true);
        case GadgetKind::UUnit:
            return build_sigma_unit(spec.sigma4, false);
        case GadgetKind::UxyUnit:
            return build_sigma_unit(spec.sigma4, true);
        case GadgetKind::YTower:
            return build_regularity_tower(spec.pi5, TowerVariant::T3);
        case GadgetKind::YTower2Half:
            return build_regularity_tower(spec.pi5, TowerVariant::T2Half);
        case GadgetKind::ThalfPi4:
            return build_thalf_pi4(spec.rows, *spec.default_row);
        case GadgetKind::DiagCsc:
            return build_diag_csc(*spec.oracle);
    }
    throw std::logic_error("unhandled gadget kind");
}

} // namespace csctop
