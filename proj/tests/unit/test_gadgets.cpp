#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "csctop/gadgets.hpp"
#include "csctop/pairing.hpp"
#include "csctop/space.hpp"

using namespace csctop;

namespace {

OracleSpec oracle_text(const std::string& text) {
    std::istringstream iss(text);
    return parse_oracle(iss);
}

// W = {4, 9}, appearing at stages 4 and 7.
OracleSpec finite_w() { return oracle_text("4 HALT 3 0\n9 HALT 6 0\n"); }
// Gains at every stage >= 1.
OracleSpec infinite_w() { return oracle_text("DEFAULT HALT-AT-SELF 0\n"); }

std::set<Point> row_set(const CscSpace& space, BasisIndex i, std::uint64_t first_n) {
    std::set<Point> out;
    for (std::uint64_t n = 0; n < first_n; ++n) {
        const Point p = space.point_at(n);
        if (space.member(i, p)) out.insert(p);
    }
    return out;
}

} // namespace

TEST_CASE("tail-statement presentations carry their truth in the tail rule") {
    SigmaFourPresentation sig;
    sig.rows = {finite_w(), infinite_w()};
    sig.tail = TailRule::AllFinite;
    CHECK(sig.truth());
    CHECK(sig.row_finite(0));
    CHECK_FALSE(sig.row_finite(1));
    CHECK(sig.row_finite(2));   // tail row: empty
    CHECK(sig.row_finite(99));
    CHECK(sig.transparent());

    sig.tail = TailRule::AllInfinite;
    CHECK_FALSE(sig.truth());
    CHECK_FALSE(sig.row_finite(5));
    StageFunction tail_fn(sig.row_spec(5));
    CHECK(tail_fn.is_total());

    sig.tail = TailRule::InfiniteEvery;
    sig.tail_modulus = 3;
    CHECK_FALSE(sig.truth());
    CHECK_FALSE(sig.row_finite(7));
    StageFunction every(sig.row_spec(7));
    CHECK(every.resolve(6).halts);
    CHECK_FALSE(every.resolve(7).halts);

    PiFivePresentation pi;
    pi.conjuncts = {SigmaFourPresentation{}, SigmaFourPresentation{}};
    CHECK(pi.truth());
    pi.conjuncts[1].tail = TailRule::AllInfinite;
    CHECK_FALSE(pi.truth());
    pi.conjuncts[1].tail = TailRule::AllFinite;
    pi.tail_true = false;
    CHECK_FALSE(pi.truth());
    CHECK_FALSE(pi.conjunct(10).truth());  // default conjunct inherits the tail
    pi.tail_true = true;
    CHECK(pi.conjunct(10).truth());
}

TEST_CASE("distinguishability space: halting points grow singleton rows") {
    auto g = build_separation_gadget(GadgetKind::T0Gadget, oracle_text("DEFAULT HALT-AT-SELF 0\n3 DIV\n"));
    CHECK(validate(*g.space, 64, 64).ok);

    // 3 diverges: point 4 never gets a singleton row.
    CHECK(g.space->exact_isolated(4).verdict == Ternary::No);
    // 0 is only ever in whole-space rows.
    CHECK(g.space->exact_isolated(0).verdict == Ternary::No);
    // 5 halts at stage 5: row <5,5>+1 is exactly {6} on a window.
    const auto ans = g.space->exact_isolated(6);
    REQUIRE(ans.verdict == Ternary::Yes);
    REQUIRE(ans.witness.has_value());
    CHECK(*ans.witness == 1 + pair_code(5, 5));
    CHECK(row_set(*g.space, *ans.witness, 40) == std::set<Point>{6});
    // Before the halt stage the same coordinates still name the whole space.
    CHECK(g.space->member(1 + pair_code(5, 4), 17));
}

TEST_CASE("distinguishability space stays quiet within an opaque budget") {
    auto g = build_separation_gadget(GadgetKind::T0Gadget,
                                     oracle_text("OPAQUE 8\nDEFAULT HALT-AT-SELF 0\n"));
    CHECK_FALSE(g.transparent);
    // Row asking about stage 100 halts: beyond fuel, undetermined at most points...
    CHECK_THROWS_AS((void)g.space->member(1 + pair_code(100, 100), 5), EvalNontotal);
    // ...but both candidate row shapes contain the halting point's successor.
    CHECK(g.space->member(1 + pair_code(100, 100), 101));
    // Within fuel everything is definite.
    CHECK(g.space->member(1 + pair_code(3, 2), 9));       // not yet halted: whole space
    CHECK_FALSE(g.space->member(1 + pair_code(3, 3), 9)); // halted: {4}
    CHECK(g.space->exact_isolated(101).verdict == Ternary::Unknown);
    CHECK(g.space->exact_isolated(4).verdict == Ternary::Yes);
}

TEST_CASE("one-sided separation space: tails always, singletons on halting") {
    auto g = build_separation_gadget(GadgetKind::T1Gadget, oracle_text("DEFAULT HALT-AT-SELF 0\n2 DIV\n"));
    CHECK(validate(*g.space, 64, 64).ok);
    CHECK(row_set(*g.space, 2 * 5, 12) == std::set<Point>{5, 6, 7, 8, 9, 10, 11});

    CHECK(g.space->exact_isolated(2).verdict == Ternary::No);
    const auto ans = g.space->exact_isolated(7);
    REQUIRE(ans.verdict == Ternary::Yes);
    CHECK(*ans.witness == 2 * pair_code(7, 7) + 1);
    CHECK(row_set(*g.space, *ans.witness, 40) == std::set<Point>{7});
}

TEST_CASE("closed-separation space tracks where value 1 fails") {
    // Value 1 everywhere except: 6 computes 0, 11 diverges.
    auto spec = oracle_text("DEFAULT HALT-AT-SELF 1\n6 HALT 2 0\n11 DIV\n");
    auto g = build_separation_gadget(GadgetKind::T2Gadget, spec);
    CHECK(validate(*g.space, 64, 64).ok);

    // Even row <x,y>: {x} plus the tail from y.
    CHECK(row_set(*g.space, 2 * pair_code(3, 9), 14) ==
          std::set<Point>{3, 9, 10, 11, 12, 13});
    // Odd row with a good y: {x} plus stages where y's value-1 halt is visible.
    // y = 4 halts at stage 4, so the tail starts at 4.
    CHECK(row_set(*g.space, 2 * pair_code(2, 4) + 1, 10) ==
          std::set<Point>{2, 4, 5, 6, 7, 8, 9});
    // Odd row over a bad y collapses to the singleton {x}.
    CHECK(row_set(*g.space, 2 * pair_code(2, 6) + 1, 40) == std::set<Point>{2});
    CHECK(row_set(*g.space, 2 * pair_code(9, 11) + 1, 40) == std::set<Point>{9});

    // Failures are bounded by 11, so points up to 11 are isolated, later ones not.
    for (Point p = 0; p <= 11; ++p) {
        const auto ans = g.space->exact_isolated(p);
        REQUIRE(ans.verdict == Ternary::Yes);
        CHECK(row_set(*g.space, *ans.witness, 40) == std::set<Point>{p});
    }
    CHECK(g.space->exact_isolated(12).verdict == Ternary::No);

    // A coinfinitely-failing oracle isolates every point.
    auto h = build_separation_gadget(GadgetKind::T2Gadget,
                                     oracle_text("DEFAULT MOD 2 HALT:1 DIV\n"));
    CHECK(validate(*h.space, 64, 64).ok);
    for (Point p : {0, 7, 30}) {
        const auto ans = h.space->exact_isolated(p);
        REQUIRE(ans.verdict == Ternary::Yes);
        CHECK(row_set(*h.space, *ans.witness, 64) == std::set<Point>{p});
    }
}

TEST_CASE("omega-plus-one space: top point is never isolated") {
    // Value 1 everywhere except 3 (computes 0) and 5 (diverges).
    auto g = build_separation_gadget(GadgetKind::ThalfBasic,
                                     oracle_text("DEFAULT HALT-AT-SELF 1\n3 HALT 1 0\n5 DIV\n"));
    CHECK(g.landmarks.at("omega") == 0);
    CHECK(validate(*g.space, 64, 64).ok);

    // Closed tail [4, top]: codes {0} and naturals >= 4 shifted by one.
    CHECK(row_set(*g.space, 2 * 4, 10) == std::set<Point>{0, 5, 6, 7, 8, 9});

    CHECK(g.space->exact_isolated(0).verdict == Ternary::No);
    CHECK(g.space->exact_isolated(3 + 1).verdict == Ternary::No);
    CHECK(g.space->exact_isolated(5 + 1).verdict == Ternary::No);
    const auto ans = g.space->exact_isolated(7 + 1);
    REQUIRE(ans.verdict == Ternary::Yes);
    CHECK(row_set(*g.space, *ans.witness, 40) == std::set<Point>{8});
}

TEST_CASE("fan space over a finite enumeration") {
    auto g = build_V_unit(finite_w(), false);
    CHECK(g.landmarks.at("0") == 0);
    REQUIRE(g.space->point_count().has_value());
    CHECK(*g.space->point_count() == 3);
    CHECK(g.space->point_at(0) == 0);
    CHECK(g.space->point_at(1) == 4);
    CHECK(g.space->point_at(2) == 7);
    CHECK_THROWS_AS((void)g.space->point_at(3), std::out_of_range);
    CHECK(validate(*g.space, 8, 32).ok);

    CHECK(row_set(*g.space, 2 * 5, 3) == std::set<Point>{0, 7});
    CHECK(row_set(*g.space, 2 * 8, 3) == std::set<Point>{0});
    CHECK(row_set(*g.space, 2 * 4 + 1, 3) == std::set<Point>{4});
    CHECK(row_set(*g.space, 2 * 5 + 1, 3).empty());

    const auto stick = g.space->exact_isolated(0);
    REQUIRE(stick.verdict == Ternary::Yes);
    CHECK(*stick.witness == 2 * 8);  // first gain-free stage
    const auto gain = g.space->exact_isolated(7);
    REQUIRE(gain.verdict == Ternary::Yes);
    CHECK(*gain.witness == 2 * 7 + 1);
}

TEST_CASE("fan space over an endless enumeration keeps 0 in every closure") {
    auto g = build_V_unit(infinite_w(), false);
    CHECK_FALSE(g.space->point_count().has_value());
    CHECK(g.space->point_at(5) == 5);
    CHECK(validate(*g.space, 64, 64).ok);
    CHECK(g.space->exact_isolated(0).verdict == Ternary::No);
    CHECK(g.space->exact_isolated(9).verdict == Ternary::Yes);
}

TEST_CASE("split fan space carries both copies of each gain in its hub rows") {
    auto g = build_V_unit(finite_w(), true);
    REQUIRE(g.space->point_count().has_value());
    CHECK(*g.space->point_count() == 5);
    CHECK(g.space->point_at(0) == 0);
    CHECK(g.space->point_at(1) == 8);
    CHECK(g.space->point_at(2) == 9);
    CHECK(g.space->point_at(3) == 14);
    CHECK(g.space->point_at(4) == 15);
    CHECK(validate(*g.space, 8, 48).ok);

    // Hub row at stage 5: both copies of the gain at 7 survive.
    CHECK(row_set(*g.space, 3 * 5, 5) == std::set<Point>{0, 14, 15});
    CHECK(row_set(*g.space, 3 * 0, 5) == std::set<Point>{0, 8, 9, 14, 15});
    // Carving rows pick one copy each.
    CHECK(row_set(*g.space, 3 * 4 + 1, 5) == std::set<Point>{8});
    CHECK(row_set(*g.space, 3 * 4 + 2, 5) == std::set<Point>{9});
    CHECK(row_set(*g.space, 3 * 5 + 1, 5).empty());

    const auto stick = g.space->exact_isolated(0);
    REQUIRE(stick.verdict == Ternary::Yes);
    CHECK(*stick.witness == 3 * 8);
    CHECK(g.space->exact_isolated(14).verdict == Ternary::Yes);
    CHECK(*g.space->exact_isolated(15).witness == 3 * 7 + 2);

    auto endless = build_V_unit(infinite_w(), true);
    CHECK(validate(*endless.space, 64, 64).ok);
    CHECK(endless.space->exact_isolated(0).verdict == Ternary::No);
}

TEST_CASE("limit-point column space: x* escapes the sticks iff the tail is quiet") {
    SigmaFourPresentation sig;
    sig.rows = {finite_w(), infinite_w()};
    sig.tail = TailRule::AllFinite;

    auto g = build_sigma_unit(sig, false);
    CHECK(g.kind == GadgetKind::UUnit);
    CHECK(g.landmarks.at("x*") == 0);
    CHECK(g.landmarks.at("0_0") == 1 + pair_code(0, 0));
    CHECK(g.landmarks.at("0_1") == 1 + pair_code(1, 0));
    CHECK(validate(*g.space, 48, 48).ok);

    // The level-2 limit neighborhood dodges both materialized columns.
    const auto xstar = g.space->exact_isolated(0);
    REQUIRE(xstar.verdict == Ternary::Yes);
    CHECK(*xstar.witness == 2 * 2 + 1);
    CHECK(row_set(*g.space, *xstar.witness, 48) == std::set<Point>{0});

    // The level-0 limit neighborhood holds x* plus every gain of every column,
    // but no column stick.
    CHECK(g.space->member(1, 0));
    CHECK(g.space->member(1, 1 + pair_code(0, 4)));
    CHECK(g.space->member(1, 1 + pair_code(1, 12)));
    CHECK_FALSE(g.space->member(1, 1 + pair_code(0, 0)));
    CHECK_FALSE(g.space->member(1, 1 + pair_code(1, 0)));
    // The level-1 one skips column 0 entirely.
    CHECK_FALSE(g.space->member(2 * 1 + 1, 1 + pair_code(0, 4)));

    // Column sticks keep their local isolation story: finite column 0 ends,
    // infinite column 1 never does.
    CHECK(g.space->exact_isolated(1 + pair_code(0, 0)).verdict == Ternary::Yes);
    CHECK(g.space->exact_isolated(1 + pair_code(1, 0)).verdict == Ternary::No);
    // Image rows restrict to their own column.
    CHECK(row_set(*g.space, 2 * pair_code(0, 2 * 4 + 1), 48) ==
          std::set<Point>{1 + pair_code(0, 4)});

    sig.tail = TailRule::AllInfinite;
    auto bad = build_sigma_unit(sig, false);
    CHECK(validate(*bad.space, 48, 48).ok);
    CHECK(bad.space->exact_isolated(0).verdict == Ternary::No);
}

TEST_CASE("two-limit column space separates its limits through parity") {
    SigmaFourPresentation sig;
    sig.rows = {finite_w()};
    sig.tail = TailRule::AllFinite;

    auto g = build_sigma_unit(sig, true);
    CHECK(g.kind == GadgetKind::UxyUnit);
    CHECK(g.landmarks.at("x*") == 0);
    CHECK(g.landmarks.at("y*") == 1);
    CHECK(g.landmarks.at("0_0") == 2 + pair_code(0, 0));
    CHECK(validate(*g.space, 48, 48).ok);

    // Level-0 limit rows: x* with even copies, y* with odd copies.
    CHECK(g.space->member(1, 0));
    CHECK_FALSE(g.space->member(1, 1));
    CHECK(g.space->member(1, 2 + pair_code(0, 8)));
    CHECK_FALSE(g.space->member(1, 2 + pair_code(0, 9)));
    CHECK(g.space->member(3, 1));
    CHECK_FALSE(g.space->member(3, 0));
    CHECK(g.space->member(3, 2 + pair_code(0, 9)));
    CHECK_FALSE(g.space->member(3, 2 + pair_code(0, 8)));

    const auto xstar = g.space->exact_isolated(0);
    REQUIRE(xstar.verdict == Ternary::Yes);
    CHECK(*xstar.witness == 4 * 1 + 1);
    CHECK(row_set(*g.space, *xstar.witness, 48) == std::set<Point>{0});
    const auto ystar = g.space->exact_isolated(1);
    REQUIRE(ystar.verdict == Ternary::Yes);
    CHECK(*ystar.witness == 4 * 1 + 3);
    CHECK(row_set(*g.space, *ystar.witness, 48) == std::set<Point>{1});

    sig.tail = TailRule::InfiniteEvery;
    sig.tail_modulus = 2;
    auto bad = build_sigma_unit(sig, true);
    CHECK(validate(*bad.space, 48, 48).ok);
    CHECK(bad.space->exact_isolated(0).verdict == Ternary::No);
    CHECK(bad.space->exact_isolated(1).verdict == Ternary::No);
}

TEST_CASE("conjunct towers keep components apart and isolate limits per conjunct") {
    PiFivePresentation pi;
    pi.conjuncts.resize(2);
    pi.conjuncts[0].rows = {finite_w()};
    pi.conjuncts[1].rows = {infinite_w()};
    pi.tail_true = true;
    CHECK(pi.truth());

    auto g = build_regularity_tower(pi, TowerVariant::T3);
    CHECK(g.kind == GadgetKind::YTower);
    CHECK(g.landmarks.at("x*_0") == pair_code(0, 0));
    CHECK(g.landmarks.at("x*_1") == pair_code(1, 0));
    CHECK(g.landmarks.at("0_0_0") == pair_code(0, 1 + pair_code(0, 0)));
    CHECK(validate(*g.space, 48, 48).ok);

    // Both materialized conjuncts are all-finite-tailed, so their limits are
    // isolated; a default-region limit is isolated too (default conjunct true).
    CHECK(g.space->exact_isolated(pair_code(0, 0)).verdict == Ternary::Yes);
    CHECK(g.space->exact_isolated(pair_code(1, 0)).verdict == Ternary::Yes);
    CHECK(g.space->exact_isolated(pair_code(5, 0)).verdict == Ternary::Yes);

    PiFivePresentation liar = pi;
    liar.tail_true = false;
    CHECK_FALSE(liar.truth());
    auto h = build_regularity_tower(liar, TowerVariant::T3);
    CHECK(validate(*h.space, 48, 48).ok);
    // Materialized conjuncts unchanged; the default region now traps its limits.
    CHECK(h.space->exact_isolated(pair_code(0, 0)).verdict == Ternary::Yes);
    CHECK(h.space->exact_isolated(pair_code(7, 0)).verdict == Ternary::No);

    auto s = build_regularity_tower(pi, TowerVariant::T2Half);
    CHECK(s.kind == GadgetKind::YTower2Half);
    CHECK(s.landmarks.at("y*_0") == pair_code(0, 1));
    CHECK(validate(*s.space, 48, 48).ok);
    CHECK(s.space->exact_isolated(pair_code(0, 1)).verdict == Ternary::Yes);
}

TEST_CASE("coproduct of omega-plus-one rows keeps one top per row") {
    std::vector<OracleSpec> rows = {
        oracle_text("DEFAULT HALT-AT-SELF 1\n"),
        oracle_text("DEFAULT HALT-AT-SELF 1\n4 DIV\n"),
    };
    auto g = build_thalf_pi4(rows, oracle_text("DEFAULT HALT-AT-SELF 1\n"));
    CHECK(g.kind == GadgetKind::ThalfPi4);
    CHECK(g.landmarks.at("omega_0") == pair_code(0, 0));
    CHECK(g.landmarks.at("omega_1") == pair_code(1, 0));
    CHECK(validate(*g.space, 64, 64).ok);

    CHECK(g.space->exact_isolated(pair_code(0, 0)).verdict == Ternary::No);
    CHECK(g.space->exact_isolated(pair_code(0, 3)).verdict == Ternary::Yes);
    CHECK(g.space->exact_isolated(pair_code(1, 4 + 1)).verdict == Ternary::No);
    // Default-region components behave like the default row.
    CHECK(g.space->exact_isolated(pair_code(9, 2)).verdict == Ternary::Yes);
}

TEST_CASE("diagonal space is exactly as good as its oracle") {
    auto total = build_diag_csc(oracle_text("DEFAULT HALT-AT-SELF 0\n"));
    CHECK(validate(*total.space, 64, 64).ok);
    CHECK(total.space->exact_isolated(9).verdict == Ternary::Yes);
    CHECK(*total.space->exact_isolated(9).witness == 9);

    auto broken = build_diag_csc(oracle_text("DEFAULT HALT-AT-SELF 0\n5 DIV\n"));
    const auto rep = validate(*broken.space, 64, 64);
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.nontotal_point.has_value());
    CHECK(*rep.nontotal_point == 5);
    CHECK_FALSE(rep.budget_exceeded);

    auto opaque = build_diag_csc(oracle_text("OPAQUE 8\nDEFAULT HALT-AT-SELF 0\n"));
    const auto orep = validate(*opaque.space, 64, 64);
    CHECK_FALSE(orep.ok);
    REQUIRE(orep.nontotal_point.has_value());
    CHECK(*orep.nontotal_point == 9);  // first halt stage beyond fuel 8
    CHECK(orep.budget_exceeded);
}

TEST_CASE("gadget spec files: inline oracles, blocks, and kind discipline") {
    {
        std::istringstream in(
            "# closed separation over a near-universal oracle\n"
            "KIND T2\n"
            "ORACLE INLINE\n"
            "DEFAULT HALT-AT-SELF 1\n"
            "6 HALT 2 0\n"
            "END\n");
        const auto spec = parse_gadget_spec(in, "");
        CHECK(spec.kind == GadgetKind::T2Gadget);
        REQUIRE(spec.oracle.has_value());
        CHECK(spec.oracle->entries.count(6) == 1);
        auto g = build_gadget(spec);
        CHECK(validate(*g.space, 32, 32).ok);
    }
    {
        std::istringstream in(
            "KIND UUNIT\n"
            "W INLINE\n"
            "4 HALT 3 0\n"
            "END\n"
            "TAIL FINITE\n");
        const auto spec = parse_gadget_spec(in, "");
        CHECK(spec.sigma4.rows.size() == 1);
        CHECK(spec.sigma4.truth());
        auto g = build_gadget(spec);
        CHECK(g.kind == GadgetKind::UUnit);
        CHECK(validate(*g.space, 32, 32).ok);
    }
    {
        std::istringstream in(
            "KIND TOWER-T2HALF\n"
            "CONJUNCT\n"
            "W INLINE\n"
            "4 HALT 3 0\n"
            "END\n"
            "TAIL FINITE\n"
            "END\n"
            "CONJUNCT\n"
            "TAIL INFINITE-EVERY 2\n"
            "END\n"
            "DEFAULT-CONJUNCT TRUE\n");
        const auto spec = parse_gadget_spec(in, "");
        REQUIRE(spec.pi5.conjuncts.size() == 2);
        CHECK_FALSE(spec.pi5.truth());
        auto g = build_gadget(spec);
        CHECK(g.kind == GadgetKind::YTower2Half);
        CHECK(validate(*g.space, 32, 32).ok);
    }
    {
        std::istringstream in(
            "KIND THALF-PI4\n"
            "ROW INLINE\n"
            "DEFAULT HALT-AT-SELF 1\n"
            "END\n"
            "DEFAULT-ROW COFINITE\n");
        auto g = build_gadget(parse_gadget_spec(in, ""));
        CHECK(g.kind == GadgetKind::ThalfPi4);
        CHECK(validate(*g.space, 32, 32).ok);

        std::istringstream in2(
            "KIND THALF-PI4\n"
            "DEFAULT-ROW COINFINITE\n");
        auto h = build_gadget(parse_gadget_spec(in2, ""));
        StageFunction fn(h.pi4->default_row);
        CHECK_FALSE(fn.ones_cofinite());
    }
}

TEST_CASE("gadget spec files: malformed inputs fail with line numbers") {
    const auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            (void)parse_gadget_spec(in, "");
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;
    };

    CHECK(line_of("ORACLE INLINE\nEND\n") == 1);            // KIND must come first
    CHECK(line_of("KIND WRONG\n") == 1);
    CHECK(line_of("KIND T0\nKIND T1\n") == 2);
    CHECK(line_of("KIND T0\nWHAT now\n") == 2);
    CHECK(line_of("KIND T0\n") > 0);                        // missing ORACLE
    CHECK(line_of("KIND T0\nORACLE INLINE\n") == 2);        // unclosed block
    CHECK(line_of("KIND UUNIT\nW INLINE\nEND\n") > 0);      // missing TAIL
    CHECK(line_of("KIND UUNIT\nTAIL SOMETIMES\n") == 2);
    CHECK(line_of("KIND UUNIT\nTAIL INFINITE-EVERY 0\n") == 2);
    CHECK(line_of("KIND TOWER-T3\nCONJUNCT\nW INLINE\nEND\n") == 2);  // unclosed conjunct
    CHECK(line_of("KIND TOWER-T3\nCONJUNCT\nEND\n") == 2);  // conjunct without TAIL
    CHECK(line_of("KIND TOWER-T3\nDEFAULT-CONJUNCT MAYBE\n") == 2);
    CHECK(line_of("KIND TOWER-T3\nCONJUNCT\nTAIL FINITE\nEND\n") > 0);  // no default conjunct
    CHECK(line_of("KIND DIAG\nORACLE INLINE\nDEFAULT NOPE\nEND\n") == 3);  // inner line mapped
    CHECK(line_of("KIND T1\nORACLE INLINE\nDEFAULT DIV\nEND\nROW INLINE\nDEFAULT DIV\nEND\n") > 0);
}

TEST_CASE("gadget spec files resolve oracle paths against their own directory") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "csctop_gadget_spec_test";
    fs::create_directories(dir);
    {
        std::ofstream oracle(dir / "w.oracle");
        oracle << "4 HALT 3 0\n9 HALT 6 0\n";
        std::ofstream spec(dir / "unit.gadget");
        spec << "KIND VUNIT\nORACLE w.oracle\n";
    }
    const auto spec = parse_gadget_spec_file((dir / "unit.gadget").string());
    CHECK(spec.kind == GadgetKind::VUnit);
    auto g = build_gadget(spec);
    REQUIRE(g.space->point_count().has_value());
    CHECK(*g.space->point_count() == 3);

    CHECK_THROWS_AS((void)parse_gadget_spec_file((dir / "absent.gadget").string()), ParseError);
    fs::remove_all(dir);
}
