#include "csctop/separation.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "csctop/pairing.hpp"

namespace csctop {

std::string to_string(Axiom axiom) {
    switch (axiom) {
        case Axiom::T0: return "T0";
        case Axiom::THalf: return "THALF";
        case Axiom::T1: return "T1";
        case Axiom::T2: return "T2";
        case Axiom::T2Half: return "T2HALF";
        case Axiom::T3: return "T3";
        case Axiom::Discrete: return "DISCRETE";
    }
    return "?";
}

std::optional<Axiom> axiom_from(const std::string& name) {
    for (Axiom a : all_axioms()) {
        if (to_string(a) == name) return a;
    }
    return std::nullopt;
}

const std::vector<Axiom>& all_axioms() {
    static const std::vector<Axiom> axioms = {
        Axiom::T0,    Axiom::THalf, Axiom::T1,      Axiom::T2,
        Axiom::T2Half, Axiom::T3,   Axiom::Discrete,
    };
    return axioms;
}

bool profile_respects_implications(const AxiomProfile& profile) {
    const auto holds = [&](Axiom a) {
        auto it = profile.find(a);
        return it != profile.end() && it->second;
    };
    const std::pair<Axiom, Axiom> implications[] = {
        {Axiom::T3, Axiom::T2Half}, {Axiom::T2Half, Axiom::T2},
        {Axiom::T2, Axiom::T1},     {Axiom::T1, Axiom::THalf},
        {Axiom::THalf, Axiom::T0},  {Axiom::Discrete, Axiom::T2},
    };
    for (const auto& [from, to] : implications) {
        if (holds(from) && !holds(to)) return false;
    }
    return true;
}

// --- bounded checks -------------------------------------------------------

namespace {

// Precomputed window facts: raw row/point incidence from the presentation,
// truncation-relative closures of rows and singletons on demand.
class Window {
public:
    explicit Window(const SpacePresentation& P) : P_(P) {}

    std::size_t points() const { return P_.points.size(); }
    std::size_t rows() const { return P_.rows.size(); }
    bool at(std::size_t i, std::size_t n) const { return P_.rows[i][n]; }
    Point point(std::size_t n) const { return P_.points[n]; }

    bool rows_disjoint(std::size_t i, std::size_t j) const {
        for (std::size_t n = 0; n < points(); ++n) {
            if (at(i, n) && at(j, n)) return false;
        }
        return true;
    }

    // Closure of row i, as point-index flags.
    const std::vector<bool>& row_closure(std::size_t i) const {
        ensure_row_closure(i);
        return row_closures_[i];
    }

    bool row_closures_disjoint(std::size_t i, std::size_t j) const {
        const auto& a = row_closure(i);
        const auto& b = row_closure(j);
        for (std::size_t n = 0; n < points(); ++n) {
            if (a[n] && b[n]) return false;
        }
        return true;
    }

    // closure(U_j) subset of U_i, judged on presented points.
    bool row_closure_inside(std::size_t j, std::size_t i) const {
        const auto& cl = row_closure(j);
        for (std::size_t n = 0; n < points(); ++n) {
            if (cl[n] && !at(i, n)) return false;
        }
        return true;
    }

    // Closure of the singleton {points[n]}, as point-index flags.
    std::vector<bool> point_closure(std::size_t n) const {
        const auto cl = closure_of(P_, {P_.points[n]});
        std::vector<bool> flags(points(), false);
        for (std::size_t m = 0; m < points(); ++m) {
            if (cl.count(P_.points[m])) flags[m] = true;
        }
        return flags;
    }

private:
    void ensure_row_closure(std::size_t i) const {
        if (row_closures_.empty()) row_closures_.resize(rows());
        if (!row_closures_[i].empty()) return;
        std::set<Point> base;
        for (std::size_t n = 0; n < points(); ++n) {
            if (at(i, n)) base.insert(P_.points[n]);
        }
        const auto cl = closure_of(P_, base);
        std::vector<bool> flags(points(), false);
        for (std::size_t n = 0; n < points(); ++n) {
            if (cl.count(P_.points[n])) flags[n] = true;
        }
        row_closures_[i] = std::move(flags);
        if (row_closures_[i].empty()) row_closures_[i].resize(points());  // 0-point window
    }

    const SpacePresentation& P_;
    mutable std::vector<std::vector<bool>> row_closures_;
};

void require_derived(const SpacePresentation& P, const CscSpace& parent) {
    if (P.rows.size() != P.basis_bound) {
        throw std::invalid_argument("presentation row count disagrees with its basis bound");
    }
    for (const auto& row : P.rows) {
        if (row.size() != P.points.size()) {
            throw std::invalid_argument("presentation row width disagrees with its point count");
        }
    }
    if (P.derivative_stage == 0) {
        for (std::size_t n = 0; n < P.points.size(); ++n) {
            if (parent.point_at(n) != P.points[n]) {
                throw std::invalid_argument(
                    "presentation does not match the parent space's enumeration at index " +
                    std::to_string(n));
            }
        }
    } else {
        for (const Point p : P.points) {
            if (!parent.contains(p)) {
                throw std::invalid_argument("presented point " + std::to_string(p) +
                                            " is not a point of the parent space");
            }
        }
    }
}

Verdict check_pairwise(Axiom axiom, const Window& w) {
    Verdict v;
    const std::size_t N = w.points();
    const std::size_t M = w.rows();

    // Pairwise disjointness tables for the two-set axioms.
    std::vector<std::vector<bool>> disjoint;
    if (axiom == Axiom::T2 || axiom == Axiom::T2Half) {
        disjoint.assign(M, std::vector<bool>(M, false));
        for (std::size_t i = 0; i < M; ++i) {
            for (std::size_t j = i; j < M; ++j) {
                const bool d = axiom == Axiom::T2 ? w.rows_disjoint(i, j)
                                                  : w.row_closures_disjoint(i, j);
                disjoint[i][j] = disjoint[j][i] = d;
            }
        }
    }

    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t b = a + 1; b < N; ++b) {
            const auto key = std::make_pair(w.point(a), w.point(b));
            bool found = false;
            if (axiom == Axiom::T0) {
                for (std::size_t i = 0; i < M && !found; ++i) {
                    if (w.at(i, a) != w.at(i, b)) {
                        v.pair_witnesses[key] = {static_cast<BasisIndex>(i)};
                        found = true;
                    }
                }
            } else if (axiom == Axiom::T1) {
                std::optional<std::size_t> ab, ba;
                for (std::size_t i = 0; i < M; ++i) {
                    if (!ab && w.at(i, a) && !w.at(i, b)) ab = i;
                    if (!ba && w.at(i, b) && !w.at(i, a)) ba = i;
                    if (ab && ba) break;
                }
                if (ab && ba) {
                    v.pair_witnesses[key] = {static_cast<BasisIndex>(*ab),
                                             static_cast<BasisIndex>(*ba)};
                    found = true;
                }
            } else {  // T2 / T2Half: least (i, j) in lexicographic order
                for (std::size_t i = 0; i < M && !found; ++i) {
                    if (!w.at(i, a)) continue;
                    for (std::size_t j = 0; j < M && !found; ++j) {
                        if (!w.at(j, b) || !disjoint[i][j]) continue;
                        v.pair_witnesses[key] = {static_cast<BasisIndex>(i),
                                                 static_cast<BasisIndex>(j)};
                        found = true;
                    }
                }
            }
            if (!found) v.unresolved_pairs.push_back(key);
        }
    }

    if (v.unresolved_pairs.empty()) {
        v.status = Verdict::Status::SeparatedAll;
        v.reason = "all presented pairs separated within bounds";
    } else {
        v.status = Verdict::Status::Pending;
        v.reason = std::to_string(v.unresolved_pairs.size()) +
                   " pair(s) lack witnesses at these bounds";
    }
    return v;
}

Verdict check_regularity(const Window& w) {
    Verdict v;
    const std::size_t N = w.points();
    const std::size_t M = w.rows();

    // inside[j][i]: closure(U_j) subset of U_i on the window.
    std::vector<std::vector<bool>> inside(M, std::vector<bool>(M, false));
    for (std::size_t j = 0; j < M; ++j) {
        for (std::size_t i = 0; i < M; ++i) {
            inside[j][i] = w.row_closure_inside(j, i);
        }
    }

    for (std::size_t n = 0; n < N; ++n) {
        for (std::size_t i = 0; i < M; ++i) {
            if (!w.at(i, n)) continue;
            const auto key = std::make_pair(w.point(n), static_cast<BasisIndex>(i));
            bool found = false;
            for (std::size_t j = 0; j < M && !found; ++j) {
                if (w.at(j, n) && inside[j][i]) {
                    v.config_witnesses[key] = static_cast<BasisIndex>(j);
                    found = true;
                }
            }
            if (!found) v.unresolved_configs.push_back(key);
        }
    }

    if (v.unresolved_configs.empty()) {
        v.status = Verdict::Status::SeparatedAll;
        v.reason = "every presented neighborhood admits a closed shrink within bounds";
    } else {
        v.status = Verdict::Status::Pending;
        v.reason = std::to_string(v.unresolved_configs.size()) +
                   " (point, row) configuration(s) lack witnesses at these bounds";
    }
    return v;
}

Verdict check_pointwise(Axiom axiom, const Window& w) {
    Verdict v;
    const std::size_t N = w.points();
    const std::size_t M = w.rows();

    for (std::size_t n = 0; n < N; ++n) {
        bool found = false;
        if (axiom == Axiom::Discrete) {
            for (std::size_t i = 0; i < M && !found; ++i) {
                if (!w.at(i, n)) continue;
                bool only = true;
                for (std::size_t m = 0; m < N && only; ++m) {
                    if (m != n && w.at(i, m)) only = false;
                }
                if (only) {
                    v.point_witnesses[w.point(n)] = static_cast<BasisIndex>(i);
                    found = true;
                }
            }
        } else {  // THalf: U_i meets closure({x}) in exactly {x}
            const auto cl = w.point_closure(n);
            for (std::size_t i = 0; i < M && !found; ++i) {
                if (!w.at(i, n)) continue;
                bool clean = true;
                for (std::size_t m = 0; m < N && clean; ++m) {
                    if (m != n && w.at(i, m) && cl[m]) clean = false;
                }
                if (clean) {
                    v.point_witnesses[w.point(n)] = static_cast<BasisIndex>(i);
                    found = true;
                }
            }
        }
        if (!found) v.unresolved_points.push_back(w.point(n));
    }

    if (v.unresolved_points.empty()) {
        v.status = Verdict::Status::SeparatedAll;
        v.reason = axiom == Axiom::Discrete
                       ? "every presented point has a singleton row within bounds"
                       : "every presented point is isolated in its closure within bounds";
    } else {
        v.status = Verdict::Status::Pending;
        v.reason = std::to_string(v.unresolved_points.size()) +
                   " point(s) lack witnesses at these bounds";
    }
    return v;
}

} // namespace

Verdict check_axiom(Axiom axiom, const SpacePresentation& P, const CscSpace& parent) {
    require_derived(P, parent);
    Window w(P);
    switch (axiom) {
        case Axiom::T0:
        case Axiom::T1:
        case Axiom::T2:
        case Axiom::T2Half:
            return check_pairwise(axiom, w);
        case Axiom::T3:
            return check_regularity(w);
        case Axiom::THalf:
        case Axiom::Discrete:
            return check_pointwise(axiom, w);
    }
    throw std::logic_error("unhandled axiom");
}

// --- exact gadget decisions -----------------------------------------------

namespace {

// Least input not computing value 1; requires one to exist.
std::uint64_t least_bad(const StageFunction& f) {
    for (std::uint64_t x = 0; x <= (1u << 20); ++x) {
        const StageEntry e = f.resolve(x);
        if (!(e.halts && e.value == 1)) return x;
    }
    throw std::logic_error("bad-input scan exhausted");
}

AxiomProfile make_profile(bool t0, bool th, bool t1, bool t2, bool t2h, bool t3, bool disc) {
    return {{Axiom::T0, t0},     {Axiom::THalf, th}, {Axiom::T1, t1},
            {Axiom::T2, t2},     {Axiom::T2Half, t2h},
            {Axiom::T3, t3},     {Axiom::Discrete, disc}};
}

struct ThalfPi4Facts {
    bool all_cofinite = true;
    bool all_universal = true;
    // First offending component for each failure, counting the default row as
    // component rows.size().
    std::optional<std::uint64_t> first_coinfinite;
    std::optional<std::uint64_t> first_nonuniversal;
};

ThalfPi4Facts pi4_facts(const ThalfPi4Data& data) {
    ThalfPi4Facts facts;
    const auto consider = [&](const OracleSpec& spec, std::uint64_t c) {
        StageFunction fn(spec);
        if (!fn.ones_cofinite() && !facts.first_coinfinite) {
            facts.all_cofinite = false;
            facts.first_coinfinite = c;
        }
        if (!fn.ones_universal() && !facts.first_nonuniversal) {
            facts.all_universal = false;
            facts.first_nonuniversal = c;
        }
    };
    for (std::uint64_t c = 0; c < data.rows.size(); ++c) consider(data.rows[c], c);
    consider(data.default_row, data.rows.size());
    return facts;
}

// First materialized row describing an infinite enumeration, if any.
std::optional<std::uint64_t> first_infinite_row(const SigmaFourPresentation& P) {
    for (std::uint64_t c = 0; c < P.rows.size(); ++c) {
        if (!P.row_finite(c)) return c;
    }
    return std::nullopt;
}

// First failing conjunct of a tower statement, counting the default region
// as conjunct conjuncts.size().
std::optional<std::uint64_t> first_false_conjunct(const PiFivePresentation& P) {
    for (std::uint64_t m = 0; m < P.conjuncts.size(); ++m) {
        if (!P.conjuncts[m].truth()) return m;
    }
    if (!P.tail_true) return P.conjuncts.size();
    return std::nullopt;
}

// First reason a tower fails to be discrete: (conjunct, optional row).
struct TowerDiscreteFailure {
    std::uint64_t conjunct = 0;
    std::optional<std::uint64_t> row;  // infinite row inside a true conjunct
};

std::optional<TowerDiscreteFailure> tower_discrete_failure(const PiFivePresentation& P) {
    for (std::uint64_t m = 0; m < P.conjuncts.size(); ++m) {
        if (!P.conjuncts[m].truth()) return TowerDiscreteFailure{m, std::nullopt};
        if (auto c = first_infinite_row(P.conjuncts[m])) return TowerDiscreteFailure{m, c};
    }
    if (!P.tail_true) return TowerDiscreteFailure{P.conjuncts.size(), std::nullopt};
    return std::nullopt;
}

Verdict decided(bool value, std::string reason,
                std::map<std::string, std::uint64_t> certificate = {}) {
    Verdict v;
    v.status = Verdict::Status::Decided;
    v.value = value;
    v.reason = std::move(reason);
    v.certificate = std::move(certificate);
    return v;
}

} // namespace

AxiomProfile expected_axiom_profile(const GadgetSpace& G) {
    if (!G.transparent) {
        throw std::logic_error("expected_axiom_profile requires transparent oracles");
    }
    switch (G.kind) {
        case GadgetKind::T0Gadget: {
            const bool tot = StageFunction(*G.oracle).is_total();
            return make_profile(tot, tot, false, false, false, false, false);
        }
        case GadgetKind::T1Gadget: {
            const bool tot = StageFunction(*G.oracle).is_total();
            return make_profile(true, true, tot, tot, tot, tot, tot);
        }
        case GadgetKind::T2Gadget: {
            const bool coinf = StageFunction(*G.oracle).ones_coinfinite();
            return make_profile(true, true, true, coinf, coinf, coinf, coinf);
        }
        case GadgetKind::ThalfBasic: {
            StageFunction fn(*G.oracle);
            const bool cof = fn.ones_cofinite();
            const bool uni = fn.ones_universal();
            return make_profile(true, cof, uni, uni, uni, uni, false);
        }
        case GadgetKind::ThalfPi4: {
            const auto facts = pi4_facts(*G.pi4);
            return make_profile(true, facts.all_cofinite, facts.all_universal,
                                facts.all_universal, facts.all_universal,
                                facts.all_universal, false);
        }
        case GadgetKind::VUnit:
        case GadgetKind::VSplitUnit: {
            const bool fin = StageFunction(*G.oracle).domain_finite();
            return make_profile(true, true, true, true, true, true, fin);
        }
        case GadgetKind::UUnit: {
            const bool tr = G.sigma4->truth();
            const bool disc = tr && !first_infinite_row(*G.sigma4).has_value();
            return make_profile(true, true, true, true, true, tr, disc);
        }
        case GadgetKind::UxyUnit: {
            const bool tr = G.sigma4->truth();
            const bool disc = tr && !first_infinite_row(*G.sigma4).has_value();
            return make_profile(true, true, true, true, tr, tr, disc);
        }
        case GadgetKind::YTower: {
            const bool tr = G.pi5->truth();
            const bool disc = !tower_discrete_failure(*G.pi5).has_value();
            return make_profile(true, true, true, true, true, tr, disc);
        }
        case GadgetKind::YTower2Half: {
            const bool tr = G.pi5->truth();
            const bool disc = !tower_discrete_failure(*G.pi5).has_value();
            return make_profile(true, true, true, true, tr, tr, disc);
        }
        case GadgetKind::DiagCsc: {
            StageFunction fn(*G.oracle);
            if (!fn.is_total()) {
                throw std::invalid_argument(
                    "diagonal family of a non-total oracle is not a space (membership "
                    "diverges at point " +
                    std::to_string(*fn.first_divergent()) + ")");
            }
            return make_profile(true, true, true, true, true, true, true);
        }
    }
    throw std::logic_error("unhandled gadget kind");
}

Verdict decide_gadget_axiom(Axiom axiom, const GadgetSpace& G) {
    if (!G.transparent) {
        Verdict v;
        v.status = Verdict::Status::Pending;
        v.reason = "opaque oracle: exact decision refused";
        return v;
    }

    switch (G.kind) {
        case GadgetKind::T0Gadget: {
            StageFunction fn(*G.oracle);
            const bool tot = fn.is_total();
            if (axiom == Axiom::T0 || axiom == Axiom::THalf) {
                if (tot) {
                    return decided(true,
                                   "oracle total: every nonzero point eventually receives a "
                                   "singleton row, and 0 is alone in its closure");
                }
                const std::uint64_t d = *fn.first_divergent();
                return decided(false,
                               "oracle diverges at " + std::to_string(d) +
                                   ": points 0 and " + std::to_string(d + 1) +
                                   " lie in exactly the same basic sets",
                               {{"x", 0}, {"y", d + 1}});
            }
            return decided(false, "the point 0 has no basic neighborhood but the whole space",
                           {{"point", 0}});
        }

        case GadgetKind::T1Gadget: {
            StageFunction fn(*G.oracle);
            const bool tot = fn.is_total();
            if (axiom == Axiom::T0 || axiom == Axiom::THalf) {
                return decided(true, "tail rows provide one-sided separation everywhere");
            }
            if (tot) {
                return decided(true, "oracle total: every singleton appears, the space is discrete");
            }
            const std::uint64_t d = *fn.first_divergent();
            if (axiom == Axiom::Discrete) {
                return decided(false,
                               "oracle diverges at " + std::to_string(d) +
                                   ": that point never receives a singleton row",
                               {{"point", d}});
            }
            return decided(false,
                           "oracle diverges at " + std::to_string(d) +
                               ": every basic set containing it is an infinite tail",
                           {{"x", d}, {"y", d + 1}});
        }

        case GadgetKind::T2Gadget: {
            StageFunction fn(*G.oracle);
            if (axiom == Axiom::T0 || axiom == Axiom::THalf || axiom == Axiom::T1) {
                return decided(true, "point-plus-tail rows provide one-sided separation");
            }
            if (fn.ones_coinfinite()) {
                return decided(true,
                               "value-1 computation fails above every point, so every point "
                               "has a singleton row: the space is discrete");
            }
            const std::uint64_t T = fn.ones_threshold();
            if (axiom == Axiom::Discrete) {
                return decided(false,
                               "value 1 holds from " + std::to_string(T) +
                                   " on: no singleton row for " + std::to_string(T),
                               {{"point", T}});
            }
            return decided(false,
                           "value 1 holds from " + std::to_string(T) +
                               " on: every basic set around " + std::to_string(T) + " or " +
                               std::to_string(T + 1) + " is cofinite, so any two meet",
                           {{"x", T}, {"y", T + 1}});
        }

        case GadgetKind::ThalfBasic: {
            StageFunction fn(*G.oracle);
            if (axiom == Axiom::T0) {
                return decided(true, "closed tails distinguish any two points");
            }
            if (axiom == Axiom::Discrete) {
                return decided(false, "the top point only has infinite tail neighborhoods",
                               {{"point", 0}});
            }
            if (axiom == Axiom::THalf) {
                if (fn.ones_cofinite()) {
                    const std::uint64_t T = fn.ones_threshold();
                    return decided(true,
                                   "value-1 inputs are cofinite from " + std::to_string(T) +
                                       ": the tail row there isolates the top point in its "
                                       "closure",
                                   {{"row", 2 * T}});
                }
                return decided(false,
                               "non-1 inputs are unbounded: every tail neighborhood of the "
                               "top point meets its closure again",
                               {{"point", 0}});
            }
            if (fn.ones_universal()) {
                return decided(true,
                               "value 1 everywhere: all naturals are isolated and the top "
                               "point has its tail base (convergent-sequence space)");
            }
            const std::uint64_t b = least_bad(fn);
            return decided(false,
                           "input " + std::to_string(b) +
                               " never computes 1: no basic set holds it apart from the top "
                               "point",
                           {{"x", 0}, {"y", b + 1}});
        }

        case GadgetKind::ThalfPi4: {
            const auto facts = pi4_facts(*G.pi4);
            const std::uint64_t R = G.pi4->rows.size();
            if (axiom == Axiom::T0) {
                return decided(true, "closed tails distinguish within rows; rows are clopen");
            }
            if (axiom == Axiom::Discrete) {
                return decided(false, "each row's top point only has infinite tail neighborhoods",
                               {{"point", pair_code(0, 0)}});
            }
            if (axiom == Axiom::THalf) {
                if (facts.all_cofinite) {
                    return decided(true,
                                   "every row (materialized and default) has cofinite value-1 "
                                   "inputs: all top points are isolated in their closures");
                }
                const std::uint64_t c = *facts.first_coinfinite;
                const std::string which =
                    c < R ? "row " + std::to_string(c) : "the default row";
                return decided(false,
                               which + " has unboundedly many non-1 inputs: its top point "
                                       "fails the axiom",
                               {{"component", c}, {"point", pair_code(c, 0)}});
            }
            if (facts.all_universal) {
                return decided(true, "value 1 everywhere in every row: a sum of "
                                     "convergent-sequence spaces");
            }
            const std::uint64_t c = *facts.first_nonuniversal;
            StageFunction fn(c < R ? G.pi4->rows[c] : G.pi4->default_row);
            const std::uint64_t b = least_bad(fn);
            return decided(false,
                           "component " + std::to_string(c) + ", input " + std::to_string(b) +
                               ": never computes 1, so its point sticks to that row's top",
                           {{"component", c},
                            {"x", pair_code(c, 0)},
                            {"y", pair_code(c, b + 1)}});
        }

        case GadgetKind::VUnit:
        case GadgetKind::VSplitUnit: {
            StageFunction fn(*G.oracle);
            const bool split = G.kind == GadgetKind::VSplitUnit;
            if (axiom != Axiom::Discrete) {
                return decided(true, "hub rows are clopen at every stage; the fan is regular");
            }
            if (fn.domain_finite()) {
                CeSet W(StageFunction(*G.oracle));
                std::uint64_t max_gain = 0;
                for (const std::uint64_t x : fn.domain_elements()) {
                    max_gain = std::max(max_gain, *W.stage_of(x));
                }
                const std::uint64_t quiet = max_gain + 1;
                return decided(true,
                               "enumeration stops after stage " + std::to_string(max_gain) +
                                   ": the hub row there is exactly the stick point",
                               {{"row", (split ? 3 : 2) * quiet}});
            }
            return decided(false,
                           "the enumeration never stops: every hub neighborhood of the stick "
                           "point is infinite",
                           {{"point", 0}});
        }

        case GadgetKind::UUnit:
        case GadgetKind::UxyUnit: {
            const auto& sig = *G.sigma4;
            const bool split = G.kind == GadgetKind::UxyUnit;
            const bool tr = sig.truth();
            const std::uint64_t R = sig.rows.size();
            const bool closed_sep_axiom =
                axiom == Axiom::T3 || (split && axiom == Axiom::T2Half);
            if (closed_sep_axiom) {
                if (tr) {
                    std::map<std::string, std::uint64_t> cert;
                    if (split) {
                        cert = {{"x_row", 4 * R + 1}, {"y_row", 4 * R + 3}};
                    } else {
                        cert = {{"limit_row", 2 * R + 1}};
                    }
                    return decided(true,
                                   "tail columns are gain-free: the limit row past the "
                                   "materialized columns is clopen",
                                   std::move(cert));
                }
                std::map<std::string, std::uint64_t> cert;
                if (split) {
                    cert = {{"x", 0}, {"y", 1}};
                } else {
                    cert = {{"point", 0}};
                }
                return decided(false,
                               "tail columns gain forever: the closure of every limit "
                               "neighborhood captures their stick points",
                               std::move(cert));
            }
            if (axiom == Axiom::Discrete) {
                if (!tr) {
                    return decided(false,
                                   "tail columns gain forever: the limit point is not isolated",
                                   {{"point", 0}});
                }
                if (const auto c = first_infinite_row(sig)) {
                    const std::uint64_t offset = split ? 2 : 1;
                    return decided(false,
                                   "column " + std::to_string(*c) +
                                       " never stops gaining: its stick point is a limit",
                                   {{"component", *c}, {"point", offset + pair_code(*c, 0)}});
                }
                return decided(true,
                               "statement true with all materialized columns finite: every "
                               "point is eventually carved out");
            }
            return decided(true,
                           split ? "columns are clopen and the two limit rows at any level "
                                   "are disjoint by parity"
                                 : "columns are clopen and limit rows dodge any given column");
        }

        case GadgetKind::YTower:
        case GadgetKind::YTower2Half: {
            const auto& pi = *G.pi5;
            const bool split = G.kind == GadgetKind::YTower2Half;
            const bool tr = pi.truth();
            const bool closed_sep_axiom =
                axiom == Axiom::T3 || (split && axiom == Axiom::T2Half);
            if (closed_sep_axiom) {
                if (tr) {
                    return decided(true,
                                   "every conjunct (and the default region) is true: each "
                                   "component is closed-separated and components are clopen");
                }
                const std::uint64_t m = *first_false_conjunct(pi);
                std::map<std::string, std::uint64_t> cert{{"component", m},
                                                          {"point", pair_code(m, 0)}};
                if (split) cert["y"] = pair_code(m, 1);
                return decided(false,
                               "conjunct " + std::to_string(m) +
                                   " is false: its limit point is not " +
                                   (axiom == Axiom::T3 ? "regular" : "closed-separated"),
                               std::move(cert));
            }
            if (axiom == Axiom::Discrete) {
                if (const auto fail = tower_discrete_failure(pi)) {
                    std::map<std::string, std::uint64_t> cert{{"component", fail->conjunct}};
                    std::string why;
                    if (fail->row.has_value()) {
                        const std::uint64_t offset = split ? 2 : 1;
                        cert["point"] =
                            pair_code(fail->conjunct, offset + pair_code(*fail->row, 0));
                        why = "conjunct " + std::to_string(fail->conjunct) + ", column " +
                              std::to_string(*fail->row) + " never stops gaining";
                    } else {
                        cert["point"] = pair_code(fail->conjunct, 0);
                        why = "conjunct " + std::to_string(fail->conjunct) +
                              " is false, so its limit point is not isolated";
                    }
                    return decided(false, why, std::move(cert));
                }
                return decided(true, "all conjuncts true with finite materialized columns");
            }
            return decided(true,
                           split ? "components are clopen; within each, limit rows are "
                                   "disjoint by parity"
                                 : "components are clopen; within each, limit rows dodge "
                                   "any given column");
        }

        case GadgetKind::DiagCsc: {
            StageFunction fn(*G.oracle);
            if (!fn.is_total()) {
                Verdict v;
                v.status = Verdict::Status::Pending;
                const std::uint64_t d = *fn.first_divergent();
                v.reason = "not a valid space: membership at point " + std::to_string(d) +
                           " diverges";
                v.certificate = {{"point", d}};
                return v;
            }
            return decided(true, "every row is the singleton of its own index: discrete");
        }
    }
    throw std::logic_error("unhandled gadget kind");
}

// --- rendering ------------------------------------------------------------

std::string verdict_text(Axiom axiom, const Verdict& v) {
    std::ostringstream out;
    out << "axiom " << to_string(axiom) << ": ";
    switch (v.status) {
        case Verdict::Status::SeparatedAll: out << "separated-all"; break;
        case Verdict::Status::Pending: out << "pending"; break;
        case Verdict::Status::Decided: out << (v.value ? "true" : "false"); break;
    }
    out << '\n';
    if (!v.reason.empty()) out << "reason: " << v.reason << '\n';
    for (const auto& [pair, rows] : v.pair_witnesses) {
        out << "pair (" << pair.first << ", " << pair.second << "): rows";
        for (const BasisIndex r : rows) out << ' ' << r;
        out << '\n';
    }
    for (const auto& [cfg, row] : v.config_witnesses) {
        out << "config (" << cfg.first << ", row " << cfg.second << "): shrink row " << row
            << '\n';
    }
    for (const auto& [p, row] : v.point_witnesses) {
        out << "point " << p << ": row " << row << '\n';
    }
    for (const auto& [a, b] : v.unresolved_pairs) {
        out << "unresolved pair (" << a << ", " << b << ")\n";
    }
    for (const auto& [p, i] : v.unresolved_configs) {
        out << "unresolved config (" << p << ", row " << i << ")\n";
    }
    for (const Point p : v.unresolved_points) {
        out << "unresolved point " << p << '\n';
    }
    for (const auto& [name, value] : v.certificate) {
        out << "certificate " << name << " = " << value << '\n';
    }
    return out.str();
}

int verdict_exit_code(const Verdict& v) {
    switch (v.status) {
        case Verdict::Status::SeparatedAll: return 0;
        case Verdict::Status::Pending: return 2;
        case Verdict::Status::Decided: return v.value ? 0 : 3;
    }
    return 1;
}

} // namespace csctop
