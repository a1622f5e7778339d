#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "csctop/base.hpp"
#include "csctop/orders.hpp"
#include "csctop/ordinal.hpp"
#include "csctop/pairing.hpp"
#include "csctop/separation.hpp"
#include "csctop/space.hpp"

using namespace csctop;

namespace {

RankValue rk_of(const std::string& term) { return rk_symbolic(parse_order_term(term)); }
RankValue hr_of(const std::string& term) {
    return hausdorff_rank_symbolic(parse_order_term(term));
}

OrderPtr order_of(const std::string& term) { return eval_term(parse_order_term(term)); }

std::shared_ptr<const IntervalSpace> topology_of(const std::string& term) {
    return interval_topology(order_of(term));
}

// Terms whose interval topologies certify T1 within the standard small window.
const std::vector<std::string> kTopologyCorpus = {
    "1",   "fin(5)", "w",   "w+1", "zeta",  "z+1+z", "eta",
    "w+z", "w^2",    "w^2+1", "w*z", "w*2", "2*z"};

// Terms needing a slightly deeper basis window for the same certificate.
const std::vector<std::string> kDeepWindowCorpus = {"z*eta", "z*z"};

Point find_greatest(const ConcreteOrder& L, std::uint64_t bound) {
    for (Point p = 0; p < bound; ++p) {
        if (L.is_greatest(p)) return p;
    }
    REQUIRE(false);
    return 0;
}

} // namespace

TEST_CASE("order terms parse and render canonically") {
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"w", "w"},
        {"w^2", "w^2"},
        {"w^1", "w"},
        {"fin(5)", "5"},
        {"7", "7"},
        {"z", "z"},
        {"zeta", "z"},
        {"eta", "eta"},
        {"z+1+z", "z+1+z"},
        {"w*(z+1+z)", "w*(z+1+z)"},
        {"(w+1)*z", "(w+1)*z"},
        {"2*w", "2*w"},
        {"w * z ", "w*z"},
        {"((w))", "w"},
        {"w^0", "1"},
    };
    for (const auto& [input, canonical] : cases) {
        CAPTURE(input);
        CHECK(to_string(parse_order_term(input)) == canonical);
    }
    // Rendering of a parsed term re-parses to the same rendering.
    for (const auto& [input, canonical] : cases) {
        CHECK(to_string(parse_order_term(canonical)) == canonical);
    }
}

TEST_CASE("order term parse errors are reported") {
    for (const std::string bad : {"", "q", "w^", "w^9", "fin(2", "w+", "(w", "w)", "3 4"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_order_term(bad), std::invalid_argument);
    }
    // Ordinal order types are restricted to finite exponent towers.
    CHECK_THROWS_AS(eval_term(OrderTerm::ordinal(Ordinal::omega_pow(Ordinal::omega()))),
                    std::invalid_argument);
    CHECK_THROWS_AS(OrderTerm::sum({OrderTerm::integers()}), std::invalid_argument);
}

TEST_CASE("integer order structure") {
    auto L = order_of("zeta");
    CHECK(!L->size().has_value());
    CHECK(L->describe() == "z");
    // Codes zig-zag through 0, -1, 1, -2, 2, ...
    CHECK(L->less(zigzag_code(-1), zigzag_code(0)));
    CHECK(L->less(zigzag_code(0), zigzag_code(1)));
    CHECK(L->less(zigzag_code(-5), zigzag_code(4)));
    CHECK(!L->is_least(zigzag_code(-7)));
    CHECK(!L->is_greatest(zigzag_code(7)));
    CHECK(*L->immediate_pred(zigzag_code(0)) == zigzag_code(-1));
    CHECK(*L->immediate_succ(zigzag_code(0)) == zigzag_code(1));
    CHECK(L->finitely_apart(zigzag_code(-3), zigzag_code(9)));
    CHECK(L->has_rank_oracle());
    CHECK(rank_to_string(L->point_rank(zigzag_code(5))) == "0");
}

TEST_CASE("successor ordinal structure") {
    auto L = order_of("w+1");
    const Point top = 1;  // the one-point tail is scheduled right after code 0
    CHECK(L->is_greatest(top));
    CHECK(!L->immediate_pred(top).has_value());
    CHECK(!L->immediate_succ(top).has_value());
    CHECK(L->is_least(0));
    CHECK(*L->immediate_succ(0) == 2);
    CHECK(L->less(0, 2));
    CHECK(L->less(2, top));
    CHECK(!L->finitely_apart(0, top));
    CHECK(L->finitely_apart(0, 4));
    CHECK(rank_to_string(L->point_rank(top)) == "1");
    CHECK(rank_to_string(L->point_rank(0)) == "0");
}

TEST_CASE("ordinal enumeration interleaves limits") {
    auto L = order_of("w^2");
    // Graded enumeration: 0, 1, 2, w, 3, w+1, 4, w+2, w*2, 5, ...
    CHECK(rank_to_string(L->point_rank(0)) == "0");
    CHECK(rank_to_string(L->point_rank(3)) == "1");   // w
    CHECK(rank_to_string(L->point_rank(8)) == "1");   // w*2
    CHECK(rank_to_string(L->point_rank(6)) == "0");   // 4
    CHECK(*L->immediate_succ(3) == 5);                // w + 1
    CHECK(!L->immediate_pred(3).has_value());
    CHECK(*L->immediate_pred(5) == 3);
    CHECK(L->less(2, 3));
    CHECK(L->less(6, 3));  // 4 < w
    CHECK(L->less(3, 8));  // w < w*2
    CHECK(!L->finitely_apart(0, 3));
    CHECK(L->finitely_apart(3, 5));
}

TEST_CASE("dense order keeps a long monotone integer prefix") {
    auto L = order_of("eta");
    for (Point i = 0; i + 1 < 64; ++i) {
        CHECK(L->less(i, i + 1));
    }
    CHECK(!L->immediate_pred(10).has_value());
    CHECK(!L->immediate_succ(10).has_value());
    CHECK(!L->finitely_apart(3, 4));
    // The tail starts with -1, -1/2, -1/4, 1/2 in enumeration order.
    CHECK(L->less(64, 0));
    CHECK(L->less(64, 65));
    CHECK(L->less(65, 66));
    CHECK(L->less(66, 0));
    CHECK(L->less(0, 67));
    CHECK(L->less(67, 1));
    CHECK(rank_to_string(L->point_rank(5)) == "inf");
}

TEST_CASE("product orders compare position-first") {
    auto L = order_of("z*eta");
    // With both factors infinite, codes pair a copy index with a position.
    for (std::uint64_t z1 = 0; z1 < 4; ++z1) {
        for (std::uint64_t e1 = 0; e1 < 4; ++e1) {
            for (std::uint64_t z2 = 0; z2 < 4; ++z2) {
                for (std::uint64_t e2 = 0; e2 < 4; ++e2) {
                    const bool expect =
                        e1 != e2 ? e1 < e2 : unzigzag_code(z1) < unzigzag_code(z2);
                    CAPTURE(z1);
                    CAPTURE(e1);
                    CAPTURE(z2);
                    CAPTURE(e2);
                    CHECK(L->less(pair_code(z1, e1), pair_code(z2, e2)) == expect);
                }
            }
        }
    }
    CHECK(L->immediate_pred(pair_code(0, 3)).has_value());
    CHECK(rank_to_string(L->point_rank(pair_code(0, 5))) == "0");
}

TEST_CASE("copies along the integers pick up boundary ranks") {
    auto L = order_of("w*z");
    // A copy's least point has no predecessor and inherits rank one.
    CHECK(!L->immediate_pred(pair_code(0, 5)).has_value());
    CHECK(rank_to_string(L->point_rank(pair_code(0, 5))) == "1");
    CHECK(rank_to_string(L->point_rank(pair_code(3, 5))) == "0");
    CHECK(*L->immediate_succ(pair_code(3, 5)) == pair_code(4, 5));
}

TEST_CASE("whole-order rank table") {
    // "-" marks orders without a condensation rank.
    const std::vector<std::array<std::string, 3>> table = {
        {"fin(5)", "0", "0"},
        {"2", "0", "0"},
        {"zeta", "0", "1"},
        {"w", "0", "1"},
        {"w+1", "1", "1"},
        {"w^2", "1", "2"},
        {"w^2+1", "2", "2"},
        {"w^3+1", "3", "3"},
        {"w^4+1", "4", "4"},
        {"w^3+w+2", "3", "3"},
        {"z*z", "0", "2"},
        {"z*z*z", "0", "3"},
        {"z+1+z", "1", "1"},
        {"w*z", "1", "2"},
        {"w^2*z", "2", "3"},
        {"w^3*z", "3", "4"},
        {"w*(z+1+z)", "2", "2"},
        {"w^2*(z+1+z)", "3", "3"},
        {"z*w", "0", "2"},
        {"w+z", "0", "1"},
        {"eta", "inf", "-"},
        {"z*eta", "0", "-"},
        {"w*eta", "inf", "-"},
        {"w*z*z", "1", "3"},
        {"(w+1)*z", "1", "2"},
        {"(z+1+z)*z", "1", "2"},
        {"w*w", "1", "2"},
        {"w*w*w", "2", "3"},
        {"2*w", "0", "1"},
        {"w*2", "1", "1"},
        {"z*2", "0", "1"},
        {"2*z", "0", "1"},
        {"(w+1)*w", "1", "2"},
    };
    std::size_t scattered_compared = 0;
    for (const auto& row : table) {
        CAPTURE(row[0]);
        const RankValue rk = rk_of(row[0]);
        CHECK(rank_to_string(rk) == row[1]);
        if (row[2] == "-") {
            CHECK_THROWS_AS(hr_of(row[0]), NotScattered);
        } else {
            const RankValue hr = hr_of(row[0]);
            CHECK(rank_to_string(hr) == row[2]);
            // The back-and-forth rank never exceeds the condensation rank.
            CHECK(!rank_less(hr, rk));
            ++scattered_compared;
        }
    }
    CHECK(scattered_compared >= 10);
}

TEST_CASE("rank of copies over a split line built from term parts") {
    OrderTerm t = OrderTerm::product(
        OrderTerm::ordinal(Ordinal::omega()),
        OrderTerm::sum({OrderTerm::integers(), OrderTerm::finite(1), OrderTerm::integers()}));
    CHECK(rank_to_string(rk_symbolic(t)) == "2");
    CHECK(to_string(t) == "w*(z+1+z)");
    CHECK(rank_to_string(rk_of("w^1*(z+1+z)")) == "2");
}

TEST_CASE("rank rules refuse layouts they do not cover") {
    OrderTerm nested = parse_order_term("z*(z*z)");
    CHECK_THROWS_AS(rk_symbolic(nested), RulesIncomplete);
    auto L = eval_term(nested);
    CHECK(!L->has_rank_oracle());
    CHECK_THROWS_AS(L->point_rank(0), RulesIncomplete);
    // The associated left-nested product is covered.
    CHECK(rank_to_string(rk_of("z*z*z")) == "0");
}

TEST_CASE("empty and one-point orders") {
    auto empty = topology_of("fin(0)");
    CHECK(empty->point_count() == std::uint64_t{0});
    CHECK_THROWS_AS(empty->point_at(0), std::out_of_range);
    CHECK(validate(*empty, 8, 8).ok);
    CHECK(rank_to_string(rk_of("fin(0)")) == "0");
    CHECK(rank_to_string(hr_of("fin(0)")) == "0");

    auto one = topology_of("1");
    CHECK(one->point_count() == std::uint64_t{1});
    auto iso = one->exact_isolated(0);
    CHECK(iso.verdict == Ternary::Yes);
    REQUIRE(iso.witness.has_value());
    CHECK(*iso.witness == 0);
    CHECK_THROWS_AS(one->point_at(1), std::out_of_range);
}

TEST_CASE("interval basis rows for the integers") {
    auto topo = topology_of("zeta");
    CHECK(topo->describe() == "interval topology of z");
    CHECK(topo->order().describe() == "z");
    struct Expect {
        bool lu;
        std::int64_t l;
        bool ru;
        std::int64_t r;
        bool owned;
        std::int64_t owner;
    };
    // Row 0 is the whole line; afterwards each enumerated integer gets the
    // interval between its nearest already-seen neighbours, refreshed when a
    // later integer lands inside it.
    const std::vector<Expect> expect = {
        {true, 0, true, 0, false, 0},   // (-inf, +inf)
        {false, -1, true, 0, true, 0},  // (-1, +inf) around 0
        {true, 0, false, 0, true, -1},  // (-inf, 0) around -1
        {false, -1, false, 1, true, 0},
        {false, 0, false, 2, true, 1},
        {false, -3, false, -1, true, -2},
        {false, -2, false, 0, true, -1},
        {false, 1, false, 3, true, 2},
        {false, -4, false, -2, true, -3},
    };
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CAPTURE(i);
        const IntervalRowView v = topo->row_bounds(i);
        CHECK(v.left_unbounded == expect[i].lu);
        if (!expect[i].lu) CHECK(unzigzag_code(v.left) == expect[i].l);
        CHECK(v.right_unbounded == expect[i].ru);
        if (!expect[i].ru) CHECK(unzigzag_code(v.right) == expect[i].r);
        CHECK(v.owner.has_value() == expect[i].owned);
        if (expect[i].owned) CHECK(unzigzag_code(*v.owner) == expect[i].owner);
    }
    // Bounds are exclusive.
    CHECK(topo->member(3, zigzag_code(0)));
    CHECK(!topo->member(3, zigzag_code(1)));
    CHECK(!topo->member(3, zigzag_code(-1)));
}

TEST_CASE("refinement returns the exact intersection when it exists as a row") {
    auto topo = topology_of("zeta");
    // Rows 1 = (-1, +inf) and 4 = (0, 2) meet in exactly (0, 2).
    const Point one = zigzag_code(1);
    const BasisIndex k = topo->k(1, 4, one);
    CHECK(k == 4);
    const IntervalRowView v = topo->row_bounds(k);
    REQUIRE(!v.left_unbounded);
    REQUIRE(!v.right_unbounded);
    CHECK(unzigzag_code(v.left) == 0);
    CHECK(unzigzag_code(v.right) == 2);
    CHECK_THROWS_AS(topo->k(1, 4, zigzag_code(5)), std::invalid_argument);
}

TEST_CASE("interval topologies satisfy the basis laws at depth") {
    for (const auto& corpus : {kTopologyCorpus, kDeepWindowCorpus}) {
        for (const auto& term : corpus) {
            CAPTURE(term);
            auto topo = topology_of(term);
            const ValidationReport report = validate(*topo, 64, 64);
            CAPTURE(report.detail);
            CHECK(report.ok);
        }
    }
}

TEST_CASE("interval topologies separate points within the small window") {
    for (const auto& term : kTopologyCorpus) {
        CAPTURE(term);
        auto topo = topology_of(term);
        const Verdict v = check_axiom(Axiom::T1, truncate(*topo, 32, 48), *topo);
        CAPTURE(verdict_text(Axiom::T1, v));
        CHECK(v.status == Verdict::Status::SeparatedAll);
    }
    // Positive window certificates persist as the window deepens.
    for (const std::string term : {"w", "zeta", "eta", "w^2+1"}) {
        CAPTURE(term);
        auto topo = topology_of(term);
        const Verdict v = check_axiom(Axiom::T1, truncate(*topo, 32, 96), *topo);
        CHECK(v.status == Verdict::Status::SeparatedAll);
    }
}

TEST_CASE("dense-copy products separate points one window later") {
    const std::map<std::string, std::size_t> pending_pairs = {{"z*eta", 9}, {"z*z", 6}};
    for (const auto& [term, unresolved] : pending_pairs) {
        CAPTURE(term);
        auto topo = topology_of(term);
        const Verdict shallow = check_axiom(Axiom::T1, truncate(*topo, 32, 48), *topo);
        CHECK(shallow.status == Verdict::Status::Pending);
        CHECK(shallow.unresolved_pairs.size() == unresolved);
        const Verdict deep = check_axiom(Axiom::T1, truncate(*topo, 32, 64), *topo);
        CHECK(deep.status == Verdict::Status::SeparatedAll);
    }
}

TEST_CASE("isolation certificates match the order structure") {
    std::vector<std::string> corpus = kTopologyCorpus;
    corpus.insert(corpus.end(), kDeepWindowCorpus.begin(), kDeepWindowCorpus.end());
    for (const auto& term : corpus) {
        CAPTURE(term);
        auto topo = topology_of(term);
        const ConcreteOrder& L = topo->order();
        const auto sz = L.size();
        const std::uint64_t bound = sz.has_value() ? std::min<std::uint64_t>(*sz, 24) : 24;
        for (Point x = 0; x < bound; ++x) {
            CAPTURE(x);
            const bool structural =
                (L.immediate_pred(x).has_value() || L.is_least(x)) &&
                (L.immediate_succ(x).has_value() || L.is_greatest(x));
            const IsolationAnswer a = topo->exact_isolated(x);
            CHECK(a.verdict == (structural ? Ternary::Yes : Ternary::No));
            if (structural) {
                REQUIRE(a.witness.has_value());
                CHECK(topo->member(*a.witness, x));
                const std::uint64_t others =
                    sz.has_value() ? std::min<std::uint64_t>(*sz, 32) : 32;
                for (Point y = 0; y < others; ++y) {
                    if (y != x) CHECK(!topo->member(*a.witness, y));
                }
            }
        }
    }
}

TEST_CASE("no basic neighbourhood cuts off a greatest point from above") {
    auto L = order_of("w+1");
    auto topo = interval_topology(L);
    const Point top = find_greatest(*L, 64);
    for (BasisIndex i = 0; i < 64; ++i) {
        if (topo->member(i, top)) {
            CHECK(topo->row_bounds(i).right_unbounded);
        }
    }
}

TEST_CASE("limit probes with the rank oracle") {
    LimitProbe probe;
    auto L = order_of("w^2+1");
    const Point top = 1;
    CHECK(alpha_limit(*L, top, Ordinal(0), probe));
    CHECK(alpha_limit(*L, top, Ordinal(1), probe));
    CHECK(alpha_limit(*L, top, Ordinal(2), probe));
    CHECK(!alpha_limit(*L, top, Ordinal(3), probe));
    auto E = order_of("eta");
    CHECK(alpha_limit(*E, 7, Ordinal::omega_pow(Ordinal(2)), probe));
    auto F = order_of("fin(3)");
    CHECK_THROWS_AS(alpha_limit(*F, 3, Ordinal(1), probe), std::out_of_range);
}

TEST_CASE("limit probes by bounded search") {
    LimitProbe probe;
    probe.use_rank_oracle = false;

    auto L1 = order_of("w+1");
    const Point t1 = find_greatest(*L1, 64);
    CHECK(alpha_limit(*L1, t1, Ordinal(1), probe));
    CHECK(!alpha_limit(*L1, t1, Ordinal(2), probe));

    auto L2 = order_of("w^2+1");
    const Point t2 = find_greatest(*L2, 64);
    CHECK(alpha_limit(*L2, t2, Ordinal(1), probe));
    CHECK(alpha_limit(*L2, t2, Ordinal(2), probe));
    CHECK(!alpha_limit(*L2, t2, Ordinal(3), probe));

    auto L3 = order_of("z*eta");
    CHECK(!alpha_limit(*L3, 0, Ordinal(1), probe));

    auto L4 = order_of("eta");
    CHECK(alpha_limit(*L4, 5, Ordinal(1), probe));
    CHECK(alpha_limit(*L4, 5, Ordinal(2), probe));

    CHECK_THROWS_AS(alpha_limit(*L1, t1, Ordinal(4), probe), std::invalid_argument);
    CHECK_THROWS_AS(alpha_limit(*L1, t1, Ordinal::omega(), probe), std::invalid_argument);
}

TEST_CASE("bounded search limits agree with the oracle near the origin") {
    LimitProbe brute;
    brute.use_rank_oracle = false;
    LimitProbe oracle;
    for (const std::string term : {"w+1", "zeta", "z+1+z", "w^2+1"}) {
        CAPTURE(term);
        auto L = order_of(term);
        for (Point x = 0; x < 16; ++x) {
            CAPTURE(x);
            CHECK(alpha_limit(*L, x, Ordinal(1), brute) ==
                  alpha_limit(*L, x, Ordinal(1), oracle));
        }
    }
    auto L = order_of("w^2+1");
    for (Point x = 0; x < 16; ++x) {
        CAPTURE(x);
        CHECK(alpha_limit(*L, x, Ordinal(2), brute) == alpha_limit(*L, x, Ordinal(2), oracle));
    }
}

TEST_CASE("single derivative step removes exactly the certified points") {
    auto topo = topology_of("zeta");
    const SpacePresentation pres = truncate(*topo, 8, 12);
    REQUIRE(pres.points.size() == 8);
    const CbStepReport rep = cb_step(pres, [](Point p) {
        if (p == 2 || p == 5) return IsolationAnswer{Ternary::Yes, std::nullopt};
        return IsolationAnswer{Ternary::No, std::nullopt};
    });
    CHECK(rep.removed == std::vector<Point>{2, 5});
    CHECK(!rep.stalled);
    CHECK(rep.next.derivative_stage == pres.derivative_stage + 1);
    CHECK(rep.next.points.size() == 6);
    for (const auto& row : rep.next.rows) CHECK(row.size() == 6);
    CHECK(std::find(rep.next.points.begin(), rep.next.points.end(), 2) ==
          rep.next.points.end());

    const CbStepReport stuck =
        cb_step(pres, [](Point) { return IsolationAnswer{Ternary::No, std::nullopt}; });
    CHECK(stuck.stalled);
    CHECK(stuck.removed.empty());
}

TEST_CASE("derivative iteration counts match the whole-order rank") {
    struct Case {
        std::string term;
        std::uint64_t steps;
        std::string rank;
        std::vector<std::size_t> removed;
    };
    const std::vector<Case> cases = {
        {"fin(5)", 1, "0", {5}},
        {"zeta", 1, "0", {48}},
        {"w+1", 2, "1", {47, 1}},
        {"w^2+1", 3, "2", {42, 5, 1}},
        {"w^3+1", 4, "3", {}},
    };
    for (const auto& c : cases) {
        CAPTURE(c.term);
        auto L = order_of(c.term);
        auto topo = interval_topology(L);
        const CbRankReport rep = cb_rank_by_steps(*L, *topo, 48, 48);
        CHECK(rep.emptied);
        CHECK(!rep.stalled);
        CHECK(rep.steps == c.steps);
        REQUIRE(rep.rank.has_value());
        CHECK(rank_to_string(*rep.rank) == c.rank);
        if (!c.removed.empty()) CHECK(rep.removed_per_step == c.removed);
        // The iteration empties in exactly one step more than the rank.
        const RankValue whole = rk_symbolic(parse_order_term(c.term));
        REQUIRE(whole.has_value());
        CHECK(Ordinal(c.steps) == *whole + Ordinal(1));
    }
    auto E = order_of("eta");
    auto etopo = interval_topology(E);
    const CbRankReport rep = cb_rank_by_steps(*E, *etopo, 48, 48);
    CHECK(rep.stalled);
    CHECK(!rep.emptied);
    CHECK(rep.steps == 0);
    CHECK(!rep.rank.has_value());
}

TEST_CASE("finite condensation merges finitely separated points") {
    auto sizes = [](const std::vector<std::vector<Point>>& classes) {
        std::vector<std::size_t> out;
        for (const auto& c : classes) out.push_back(c.size());
        return out;
    };
    CHECK(sizes(condense_finite(*order_of("zeta"), 32)) == std::vector<std::size_t>{32});
    CHECK(sizes(condense_finite(*order_of("w+w"), 32)) == std::vector<std::size_t>{16, 16});
    CHECK(sizes(condense_finite(*order_of("fin(4)"), 32)) == std::vector<std::size_t>{4});
    CHECK(sizes(condense_finite(*order_of("z+1+z"), 32)) ==
          std::vector<std::size_t>{16, 1, 15});
    // Classes come back in order and partition the window.
    const auto classes = condense_finite(*order_of("w*z"), 32);
    auto L = order_of("w*z");
    std::size_t total = 0;
    for (std::size_t c = 0; c + 1 < classes.size(); ++c) {
        total += classes[c].size();
        CHECK(L->less(classes[c].back(), classes[c + 1].front()));
    }
    total += classes.back().size();
    CHECK(total == 32);
}

TEST_CASE("dense orders refuse condensation ranks") {
    CHECK_THROWS_AS(hr_of("eta"), NotScattered);
    CHECK_THROWS_AS(hr_of("z*eta"), NotScattered);
    CHECK_THROWS_AS(hr_of("w+eta"), NotScattered);
    CHECK(rank_to_string(hr_of("eta*fin(0)")) == "0");  // vacuously scattered
}
