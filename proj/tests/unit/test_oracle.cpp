#include "doctest.h"

#include <sstream>

#include "csctop/oracle.hpp"

using namespace csctop;

namespace {

OracleSpec from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_oracle(in);
}

} // namespace

TEST_CASE("parse_oracle reads entries, defaults, and opacity") {
    const OracleSpec s = from_text(
        "# a comment\n"
        "DEFAULT HALT-AT-SELF 1\n"
        "3 HALT 7 0\n"
        "5 DIV\n");
    CHECK(s.rule.kind == DefaultRule::Kind::HaltAtSelf);
    CHECK(s.rule.value == 1);
    CHECK_FALSE(s.opaque);
    REQUIRE(s.entries.size() == 2);
    CHECK(s.entries.at(3).halts);
    CHECK(s.entries.at(3).stage == 7);
    CHECK(s.entries.at(3).value == 0);
    CHECK_FALSE(s.entries.at(5).halts);

    const OracleSpec m = from_text("DEFAULT MOD 3 HALT:1 DIV HALT:0\nOPAQUE 99\n");
    CHECK(m.rule.kind == DefaultRule::Kind::Modular);
    REQUIRE(m.rule.residues.size() == 3);
    CHECK(*m.rule.residues[0] == 1);
    CHECK_FALSE(m.rule.residues[1].has_value());
    CHECK(*m.rule.residues[2] == 0);
    CHECK(m.opaque);
    CHECK(m.budget == 99);

    CHECK(from_text("OPAQUE\n").budget == 1024);
    CHECK(from_text("").rule.kind == DefaultRule::Kind::Diverge);
}

TEST_CASE("parse_oracle rejects malformed and contradictory input") {
    CHECK_THROWS_AS(from_text("3 HALT 7\n"), ParseError);
    CHECK_THROWS_AS(from_text("3 WAT\n"), ParseError);
    CHECK_THROWS_AS(from_text("x HALT 1 1\n"), ParseError);
    CHECK_THROWS_AS(from_text("DEFAULT\n"), ParseError);
    CHECK_THROWS_AS(from_text("DEFAULT MOD 2 HALT:1\n"), ParseError);
    CHECK_THROWS_AS(from_text("DEFAULT MOD 0\n"), ParseError);
    CHECK_THROWS_AS(from_text("DEFAULT DIV\nDEFAULT DIV\n"), ParseError);
    CHECK_THROWS_AS(from_text("3 HALT 1 1\n3 DIV\n"), ParseError);
    CHECK_THROWS_AS(from_text("3 DIV\n3 DIV\n"), ParseError);
    try {
        from_text("DEFAULT DIV\n\n7 HALT\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("serialize_oracle round-trips through parse_oracle") {
    const std::string texts[] = {
        "DEFAULT DIV\n",
        "DEFAULT HALT-AT-SELF 1\n3 HALT 7 0\n5 DIV\n",
        "DEFAULT MOD 2 HALT:1 DIV\nOPAQUE 16\n0 HALT 3 1\n",
    };
    for (const std::string& t : texts) {
        const OracleSpec a = from_text(t);
        const std::string dumped = serialize_oracle(a);
        const OracleSpec b = from_text(dumped);
        CHECK(serialize_oracle(b) == dumped);
        CHECK(b.opaque == a.opaque);
        CHECK(b.entries.size() == a.entries.size());
        CHECK(b.rule.kind == a.rule.kind);
    }
}

TEST_CASE("halted_by is monotone and follows the stage data") {
    const StageFunction f(from_text("DEFAULT DIV\n2 HALT 5 1\n4 HALT 0 0\n"));
    CHECK(f.halted_by(2, 4) == Ternary::No);
    CHECK(f.halted_by(2, 5) == Ternary::Yes);
    CHECK(f.halted_by(2, 500) == Ternary::Yes);
    CHECK(f.halted_by(4, 0) == Ternary::Yes);
    CHECK(f.halted_by(9, 1000) == Ternary::No);
    CHECK(f.halted_with_value_by(2, 5, 1) == Ternary::Yes);
    CHECK(f.halted_with_value_by(2, 5, 0) == Ternary::No);
    CHECK(f.halted_with_value_by(2, 4, 1) == Ternary::No);

    const StageFunction g(from_text("DEFAULT HALT-AT-SELF 1\n"));
    CHECK(g.halted_by(7, 6) == Ternary::No);
    CHECK(g.halted_by(7, 7) == Ternary::Yes);

    const StageFunction m(from_text("DEFAULT MOD 2 HALT:1 DIV\n"));
    CHECK(m.halted_by(6, 6) == Ternary::Yes);
    CHECK(m.halted_by(7, 1000) == Ternary::No);
}

TEST_CASE("opaque stage functions answer Unknown only beyond the budget") {
    const StageFunction f(from_text("DEFAULT HALT-AT-SELF 1\nOPAQUE 10\n20 HALT 3 0\n30 DIV\n"));
    // Visible halt within the budget stays Yes even for large stage queries.
    CHECK(f.halted_by(20, 3) == Ternary::Yes);
    CHECK(f.halted_by(20, 1000) == Ternary::Yes);
    CHECK(f.halted_with_value_by(20, 1000, 0) == Ternary::Yes);
    CHECK(f.halted_with_value_by(20, 1000, 1) == Ternary::No);
    // Not yet halted, query within budget: definite No.
    CHECK(f.halted_by(7, 6) == Ternary::No);
    CHECK(f.halted_by(30, 10) == Ternary::No);
    // Beyond the budget, undetermined halts become Unknown.
    CHECK(f.halted_by(30, 11) == Ternary::Unknown);
    CHECK(f.halted_by(12, 11) == Ternary::Unknown);  // halts at 12 > budget
    CHECK(f.halted_by(12, 1000) == Ternary::Unknown);
    // Monotonicity: No at 10, never No again after.
    CHECK(f.halted_by(30, 10) == Ternary::No);
    for (std::uint64_t s = 11; s < 40; ++s) {
        CHECK(f.halted_by(30, s) == Ternary::Unknown);
    }
    // Metadata is off limits.
    CHECK_THROWS_AS(f.is_total(), std::logic_error);
    CHECK_THROWS_AS(f.domain_finite(), std::logic_error);
}

TEST_CASE("totality and first divergent input") {
    CHECK(StageFunction(from_text("DEFAULT HALT-AT-SELF 0\n")).is_total());
    CHECK_FALSE(StageFunction(from_text("DEFAULT DIV\n0 HALT 1 1\n")).is_total());
    CHECK_FALSE(StageFunction(from_text("DEFAULT HALT-AT-SELF 0\n6 DIV\n")).is_total());
    CHECK(StageFunction(from_text("DEFAULT MOD 2 HALT:0 HALT:1\n")).is_total());
    CHECK_FALSE(StageFunction(from_text("DEFAULT MOD 2 HALT:0 DIV\n")).is_total());

    CHECK(*StageFunction(from_text("DEFAULT DIV\n0 HALT 1 1\n1 HALT 2 1\n")).first_divergent() == 2);
    CHECK(*StageFunction(from_text("DEFAULT HALT-AT-SELF 0\n6 DIV\n")).first_divergent() == 6);
    CHECK(*StageFunction(from_text("DEFAULT MOD 2 HALT:0 DIV\n1 HALT 9 9\n")).first_divergent() == 3);
    CHECK_FALSE(StageFunction(from_text("DEFAULT HALT-AT-SELF 0\n")).first_divergent().has_value());
}

TEST_CASE("value-1 preimage classification") {
    const StageFunction cof(from_text("DEFAULT HALT-AT-SELF 1\n3 HALT 1 0\n8 DIV\n"));
    CHECK(cof.ones_cofinite());
    CHECK_FALSE(cof.ones_coinfinite());
    CHECK(cof.ones_threshold() == 9);
    CHECK_FALSE(cof.ones_universal());

    const StageFunction uni(from_text("DEFAULT HALT-AT-SELF 1\n3 HALT 1 1\n"));
    CHECK(uni.ones_universal());
    CHECK(uni.ones_threshold() == 0);

    const StageFunction coinf(from_text("DEFAULT MOD 2 HALT:1 HALT:0\n"));
    CHECK(coinf.ones_coinfinite());
    CHECK_FALSE(coinf.ones_cofinite());
    CHECK_THROWS_AS(coinf.ones_threshold(), std::logic_error);

    CHECK(StageFunction(from_text("DEFAULT DIV\n")).ones_coinfinite());
    CHECK(StageFunction(from_text("DEFAULT MOD 1 HALT:1\n")).ones_universal());
}

TEST_CASE("halting-set finiteness") {
    const StageFunction fin(from_text("DEFAULT DIV\n4 HALT 2 1\n9 HALT 5 0\n11 DIV\n"));
    CHECK(fin.domain_finite());
    CHECK(fin.domain_elements() == std::vector<std::uint64_t>{4, 9});
    CHECK_FALSE(StageFunction(from_text("DEFAULT HALT-AT-SELF 0\n")).domain_finite());
    CHECK_FALSE(StageFunction(from_text("DEFAULT MOD 3 DIV DIV HALT:0\n")).domain_finite());
    CHECK(StageFunction(from_text("DEFAULT MOD 2 DIV DIV\n5 HALT 1 1\n")).domain_finite());
}

TEST_CASE("CeSet validates one-element-per-stage") {
    CHECK_NOTHROW(CeSet(StageFunction(from_text("DEFAULT DIV\n4 HALT 2 1\n9 HALT 5 0\n"))));
    // Two explicit elements at the same stage.
    CHECK_THROWS_AS(CeSet(StageFunction(from_text("DEFAULT DIV\n4 HALT 2 1\n9 HALT 2 0\n"))),
                    std::invalid_argument);
    // Explicit element colliding with a default-ruled element's stage.
    CHECK_THROWS_AS(CeSet(StageFunction(from_text("DEFAULT HALT-AT-SELF 0\n40 HALT 6 1\n"))),
                    std::invalid_argument);
    // No collision when the would-be default element is explicitly divergent.
    CHECK_NOTHROW(CeSet(StageFunction(from_text("DEFAULT HALT-AT-SELF 0\n6 DIV\n40 HALT 6 1\n"))));
    // Element halting at its own index stage never collides with itself.
    CHECK_NOTHROW(CeSet(StageFunction(from_text("DEFAULT HALT-AT-SELF 0\n6 HALT 6 1\n"))));
}

TEST_CASE("CeSet appearance stages and queries") {
    // W = {4, 9} with stages 3 and 6.
    const CeSet w(StageFunction(from_text("DEFAULT DIV\n4 HALT 2 1\n9 HALT 5 0\n")));
    CHECK(w.gain_at(3));
    CHECK(w.gain_at(6));
    CHECK_FALSE(w.gain_at(0));
    CHECK_FALSE(w.gain_at(1));
    CHECK_FALSE(w.gain_at(4));
    CHECK(*w.element_at_stage(3) == 4);
    CHECK(*w.element_at_stage(6) == 9);
    CHECK_FALSE(w.element_at_stage(2).has_value());
    CHECK(*w.stage_of(4) == 3);
    CHECK(*w.stage_of(9) == 6);
    CHECK_FALSE(w.stage_of(5).has_value());
    CHECK(w.fresh_stages(0, 10) == std::vector<std::uint64_t>{3, 6});
    CHECK(w.fresh_stages(4, 10) == std::vector<std::uint64_t>{6});
    CHECK(w.count_by(2) == 0);
    CHECK(w.count_by(3) == 1);
    CHECK(w.count_by(100) == 2);
    CHECK(w.is_finite());

    // Infinite set: every input halts at its own stage.
    const CeSet inf(StageFunction(from_text("DEFAULT HALT-AT-SELF 0\n")));
    CHECK_FALSE(inf.is_finite());
    CHECK(inf.gain_at(1));
    CHECK(inf.gain_at(100));
    CHECK(*inf.element_at_stage(8) == 7);
    CHECK(inf.count_by(10) == 10);
}

TEST_CASE("CeSet bounded queries respect opacity") {
    const CeSet w(StageFunction(from_text("DEFAULT HALT-AT-SELF 0\nOPAQUE 10\n")));
    CHECK(w.gain_at_bounded(5) == Ternary::Yes);
    CHECK(w.gain_at_bounded(11) == Ternary::Yes);   // stage 10 = budget, visible
    CHECK(w.gain_at_bounded(12) == Ternary::Unknown);
    CHECK_THROWS_AS(w.gain_at(5), std::logic_error);
    CHECK_THROWS_AS(w.fresh_stages(0, 5), std::logic_error);
    CHECK_THROWS_AS(w.is_finite(), std::logic_error);
}
