#include "doctest.h"

#include <memory>

#include "csctop/pairing.hpp"
#include "csctop/space.hpp"

using namespace csctop;

namespace {

// Discrete space on {0, ..., n-1}: U_i = {i} for i < n, empty above.
SpacePtr discrete_space(std::uint64_t n) {
    HookSpace::Config cfg;
    cfg.name = "discrete " + std::to_string(n);
    cfg.count = n;
    cfg.point_at = [](std::uint64_t m) { return m; };
    cfg.contains = [n](Point x) { return x < n; };
    cfg.member = [n](BasisIndex i, Point x) { return i < n && i == x; };
    cfg.k = [](BasisIndex i, BasisIndex, Point) { return i; };
    cfg.cover = [](Point x) { return x; };
    cfg.isolated = [](Point x) { return IsolationAnswer{Ternary::Yes, x}; };
    return std::make_shared<HookSpace>(cfg);
}

// Points 0..n-1 plus a top point n; U_0 = everything, U_{1+i} = {i}.
// The top point's only neighborhood is the whole space.
SpacePtr glued_top_space(std::uint64_t n) {
    HookSpace::Config cfg;
    cfg.name = "glued top " + std::to_string(n);
    cfg.count = n + 1;
    cfg.point_at = [](std::uint64_t m) { return m; };
    cfg.contains = [n](Point x) { return x <= n; };
    cfg.member = [n](BasisIndex i, Point x) {
        if (x > n) return false;
        if (i == 0) return true;
        return i <= n && x == i - 1;
    };
    cfg.k = [](BasisIndex i, BasisIndex j, Point) { return std::max(i, j); };
    cfg.cover = [](Point) { return BasisIndex{0}; };
    cfg.isolated = [n](Point x) {
        if (x < n) return IsolationAnswer{Ternary::Yes, x + 1};
        return IsolationAnswer{Ternary::No, std::nullopt};
    };
    return std::make_shared<HookSpace>(cfg);
}

} // namespace

TEST_CASE("truncate produces the membership matrix") {
    const SpacePtr d = discrete_space(3);
    const SpacePresentation pres = truncate(*d, 3, 3);
    REQUIRE(pres.points == std::vector<Point>{0, 1, 2});
    REQUIRE(pres.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t n = 0; n < 3; ++n) {
            CHECK(pres.rows[i][n] == (i == n));
        }
    }
    CHECK(pres.basis_bound == 3);
    CHECK(pres.derivative_stage == 0);

    // Asking for more points than exist keeps the list short.
    CHECK(truncate(*d, 10, 2).points.size() == 3);
    CHECK_THROWS_AS(truncate(*d, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(truncate(*d, 3, 0), std::invalid_argument);
}

TEST_CASE("truncate is monotone in both bounds") {
    const SpacePtr g = glued_top_space(6);
    const SpacePresentation small = truncate(*g, 4, 3);
    const SpacePresentation big = truncate(*g, 7, 7);
    for (std::size_t i = 0; i < small.rows.size(); ++i) {
        for (std::size_t n = 0; n < small.points.size(); ++n) {
            CHECK(small.rows[i][n] == big.rows[i][n]);
        }
    }
    CHECK(std::equal(small.points.begin(), small.points.end(), big.points.begin()));
}

TEST_CASE("validate passes well-formed spaces and finds planted defects") {
    CHECK(validate(*discrete_space(5), 16, 16).ok);
    CHECK(validate(*glued_top_space(6), 16, 16).ok);

    // k points at a row that misses the queried point.
    HookSpace::Config bad = HookSpace::Config{};
    bad.name = "bad k";
    bad.count = 3;
    bad.point_at = [](std::uint64_t m) { return m; };
    bad.contains = [](Point x) { return x < 3; };
    bad.member = [](BasisIndex i, Point x) {
        if (i == 0) return true;       // whole space
        return i < 4 && x == i - 1;    // singletons
    };
    bad.k = [](BasisIndex, BasisIndex, Point x) { return x == 1 ? BasisIndex{3} : BasisIndex{0}; };
    bad.cover = [](Point) { return BasisIndex{0}; };
    {
        const ValidationReport rep = validate(HookSpace(bad), 3, 1);
        CHECK_FALSE(rep.ok);
        CHECK(rep.detail.find("k(0,0,1) = 3") != std::string::npos);
    }

    // k points at a row that escapes the intersection.
    HookSpace::Config leak = bad;
    leak.name = "leaky k";
    leak.k = [](BasisIndex, BasisIndex, Point) { return BasisIndex{0}; };
    {
        const ValidationReport rep = validate(HookSpace(leak), 3, 4);
        CHECK_FALSE(rep.ok);
        CHECK(rep.detail.find("outside") != std::string::npos);
    }

    // Broken cover witness.
    HookSpace::Config nocover = bad;
    nocover.name = "bad cover";
    nocover.k = [](BasisIndex i, BasisIndex, Point) { return i; };
    nocover.cover = [](Point) { return BasisIndex{9}; };
    {
        const ValidationReport rep = validate(HookSpace(nocover), 3, 1);
        CHECK_FALSE(rep.ok);
        CHECK(rep.detail.find("coverage violated") != std::string::npos);
    }
}

TEST_CASE("validate reports non-total membership with the failing point") {
    HookSpace::Config cfg;
    cfg.name = "partial membership";
    cfg.count = 8;
    cfg.point_at = [](std::uint64_t m) { return m; };
    cfg.contains = [](Point x) { return x < 8; };
    cfg.member = [](BasisIndex i, Point x) -> bool {
        if (i == 5 && x == 5) {
            throw EvalNontotal(5, false, "membership(5,5) diverges");
        }
        return i == 0;
    };
    cfg.k = [](BasisIndex, BasisIndex, Point) { return BasisIndex{0}; };
    cfg.cover = [](Point) { return BasisIndex{0}; };

    const ValidationReport rep = validate(HookSpace(cfg), 8, 8);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.nontotal_point.has_value());
    CHECK(*rep.nontotal_point == 5);
    CHECK_FALSE(rep.budget_exceeded);

    HookSpace::Config opq = cfg;
    opq.member = [](BasisIndex i, Point x) -> bool {
        if (i == 5 && x == 5) {
            throw EvalNontotal(5, true, "membership(5,5) exceeds the stage budget");
        }
        return i == 0;
    };
    const ValidationReport rep2 = validate(HookSpace(opq), 8, 8);
    CHECK_FALSE(rep2.ok);
    CHECK(rep2.budget_exceeded);
}

TEST_CASE("closure_of is extensive, monotone, and idempotent") {
    const SpacePtr g = glued_top_space(10);
    const SpacePresentation pres = truncate(*g, 11, 11);

    const std::set<Point> s5 = {5};
    const std::set<Point> closed = closure_of(pres, s5);
    // The glued top point has no small neighborhood, so it joins every
    // nonempty closure; the other isolated points do not.
    CHECK(closed == std::set<Point>{5, 10});

    CHECK(closure_of(pres, {}) == std::set<Point>{});
    const std::set<Point> bigger = closure_of(pres, {5, 7});
    CHECK(bigger == std::set<Point>{5, 7, 10});
    for (Point p : closed) CHECK(bigger.count(p) + (p == 7) >= closed.count(p));
    CHECK(closure_of(pres, closed) == closed);
    CHECK(closure_of(pres, bigger) == bigger);

    // In a discrete truncation, closures do not grow.
    const SpacePresentation dd = truncate(*discrete_space(6), 6, 6);
    CHECK(closure_of(dd, {2}) == std::set<Point>{2});
}

TEST_CASE("is_isolated uses space certificates first, then bounded search") {
    const SpacePtr g = glued_top_space(6);
    const IsolationAnswer yes = is_isolated(*g, 2, 7, 7);
    CHECK(yes.verdict == Ternary::Yes);
    CHECK(*yes.witness == 3);
    const IsolationAnswer no = is_isolated(*g, 6, 7, 7);
    CHECK(no.verdict == Ternary::No);

    // A space with no certificate: bounded search finds a candidate row but
    // stays Unknown.
    HookSpace::Config cfg;
    cfg.name = "no certificate";
    cfg.count = 4;
    cfg.point_at = [](std::uint64_t m) { return m; };
    cfg.contains = [](Point x) { return x < 4; };
    cfg.member = [](BasisIndex i, Point x) {
        if (i == 0) return true;
        return i == 1 && x == 2;
    };
    cfg.k = [](BasisIndex i, BasisIndex j, Point) { return std::max(i, j); };
    cfg.cover = [](Point) { return BasisIndex{0}; };
    const HookSpace h(cfg);
    const IsolationAnswer unk = is_isolated(h, 2, 4, 4);
    CHECK(unk.verdict == Ternary::Unknown);
    CHECK(*unk.witness == 1);
    const IsolationAnswer none = is_isolated(h, 1, 4, 4);
    CHECK(none.verdict == Ternary::Unknown);
    CHECK_FALSE(none.witness.has_value());
}

TEST_CASE("dump_presentation renders the documented format") {
    const SpacePresentation pres = truncate(*discrete_space(3), 3, 4);
    CHECK(dump_presentation(pres) ==
          "CSC 3 4\n"
          "U 0: 0\n"
          "U 1: 1\n"
          "U 2: 2\n"
          "U 3:\n");
    const std::string kb = dump_k_block(*discrete_space(3), pres);
    CHECK(kb.find("K 1 1 1 1\n") != std::string::npos);
    CHECK(kb.find("K 0 1") == std::string::npos);  // disjoint singletons: no shared points
}

TEST_CASE("disjoint unions glue components without cross talk") {
    std::vector<SpacePtr> comps = {discrete_space(2), discrete_space(2)};
    const DisjointUnionSpace u("two doubletons", comps);
    CHECK(*u.point_count() == 4);
    CHECK(*u.component_count() == 2);
    CHECK(validate(u, 16, 16).ok);

    // All four points appear, tagged by component.
    std::set<Point> pts;
    for (std::uint64_t n = 0; n < 4; ++n) pts.insert(u.point_at(n));
    CHECK(pts == std::set<Point>{pair_code(0, 0), pair_code(0, 1), pair_code(1, 0), pair_code(1, 1)});
    CHECK_THROWS_AS(u.point_at(4), std::out_of_range);

    // Basis rows never cross components.
    CHECK(u.member(pair_code(0, 0), pair_code(0, 0)));
    CHECK_FALSE(u.member(pair_code(0, 0), pair_code(1, 0)));

    // Discreteness is inherited pointwise.
    const IsolationAnswer iso = u.exact_isolated(pair_code(1, 1));
    CHECK(iso.verdict == Ternary::Yes);
    CHECK(*iso.witness == pair_code(1, 1));

    // Single-component union: membership agrees with the component through
    // the pairing.
    const DisjointUnionSpace single("one piece", {glued_top_space(4)});
    for (BasisIndex li = 0; li < 6; ++li) {
        for (Point lx = 0; lx < 5; ++lx) {
            CHECK(single.member(pair_code(0, li), pair_code(0, lx)) ==
                  glued_top_space(4)->member(li, lx));
        }
    }
    CHECK(validate(single, 16, 16).ok);
}

TEST_CASE("disjoint unions over an infinite family enumerate by dovetailing") {
    // Component c is a discrete space with c+1 points.
    const DisjointUnionSpace u("growing blocks", {},
                               [](std::uint64_t c) { return discrete_space(c + 1); });
    CHECK_FALSE(u.point_count().has_value());
    CHECK_FALSE(u.component_count().has_value());
    std::set<Point> seen;
    for (std::uint64_t n = 0; n < 30; ++n) seen.insert(u.point_at(n));
    CHECK(seen.size() == 30);
    CHECK(seen.count(pair_code(0, 0)) == 1);
    CHECK(seen.count(pair_code(3, 2)) == 1);
    CHECK(validate(u, 24, 24).ok);
}

TEST_CASE("subbasis codes are a bijection with increasing index lists") {
    CHECK(subbasis_list_of(0) == std::vector<BasisIndex>{0});
    CHECK(subbasis_list_of(1) == std::vector<BasisIndex>{1});
    CHECK(subbasis_list_of(2) == std::vector<BasisIndex>{0, 1});
    CHECK(subbasis_list_of(3) == std::vector<BasisIndex>{2});
    CHECK(subbasis_list_of(4) == std::vector<BasisIndex>{1, 2});
    CHECK(subbasis_list_of(5) == std::vector<BasisIndex>{0, 2});
    for (BasisIndex code = 0; code < 2000; ++code) {
        const auto list = subbasis_list_of(code);
        REQUIRE_FALSE(list.empty());
        for (std::size_t t = 1; t < list.size(); ++t) REQUIRE(list[t] > list[t - 1]);
        CHECK(subbasis_code_of(list) == code);
    }
    CHECK_THROWS_AS(subbasis_code_of({}), std::invalid_argument);
    CHECK_THROWS_AS(subbasis_code_of({3, 3}), std::invalid_argument);
}

TEST_CASE("close_subbasis materializes finite intersections") {
    // V0 = {0,1}, V1 = {1,2} over points {0,1,2}; higher subbasic sets are
    // copies of the whole point set so coverage search succeeds.
    Subbasis sb;
    sb.name = "overlap";
    sb.point_count = 3;
    sb.point_at = [](std::uint64_t n) { return n; };
    sb.contains = [](Point x) { return x < 3; };
    sb.member = [](BasisIndex i, Point x) {
        if (i == 0) return x <= 1;
        if (i == 1) return x == 1 || x == 2;
        return true;
    };
    const SpacePtr closed = close_subbasis(sb);

    // The row for {V0, V1} is exactly {1}.
    const BasisIndex both = subbasis_code_of({0, 1});
    CHECK(closed->member(both, 1));
    CHECK_FALSE(closed->member(both, 0));
    CHECK_FALSE(closed->member(both, 2));
    CHECK(closed->k(subbasis_code_of({0}), subbasis_code_of({1}), 1) == both);
    // k is idempotent on equal rows.
    for (BasisIndex b : {subbasis_code_of({0}), subbasis_code_of({1}), both}) {
        CHECK(closed->k(b, b, 1) == b);
    }
    CHECK(validate(*closed, 8, 24).ok);

    // Single subbasic set covering everything: k(0,0,x) = 0.
    Subbasis whole;
    whole.point_count = 5;
    whole.point_at = [](std::uint64_t n) { return n; };
    whole.contains = [](Point x) { return x < 5; };
    whole.member = [](BasisIndex i, Point) { return i == 0; };
    const SpacePtr w = close_subbasis(whole);
    CHECK(w->k(0, 0, 3) == 0);
    CHECK(w->cover_witness(4) == subbasis_code_of({0}));
    CHECK(validate(*w, 8, 8).ok);
}

TEST_CASE("close_subbasis reports points no subbasic set covers") {
    Subbasis sb;
    sb.name = "holey";
    sb.point_count = 3;
    sb.point_at = [](std::uint64_t n) { return n; };
    sb.contains = [](Point x) { return x < 3; };
    sb.member = [](BasisIndex i, Point x) { return i < 8 && x == 0; };  // only point 0 covered
    sb.cover_search_bound = 32;
    const SpacePtr closed = close_subbasis(sb);
    CHECK_THROWS_AS(closed->cover_witness(2), CoverageFailure);
    const ValidationReport rep = validate(*closed, 3, 3);
    CHECK_FALSE(rep.ok);
    CHECK(rep.detail.find("coverage failure") != std::string::npos);
}
