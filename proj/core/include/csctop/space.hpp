#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "csctop/base.hpp"

namespace csctop {

struct IsolationAnswer {
    Ternary verdict = Ternary::Unknown;
    std::optional<BasisIndex> witness;  // basis row whose set is exactly {x}
};

// A countable space with an enumerated point set and a countable basis. Basis
// rows are total: every index i in omega names a (possibly empty) basic set
// U_i. The k operation returns, for x in U_i and U_j, a row with
// x in U_k <= U_i cap U_j; cover_witness returns some row containing x.
//
// Membership may throw EvalNontotal when the defining computation cannot be
// resolved (divergent defining oracle, or opaque budget exhausted).
class CscSpace {
public:
    virtual ~CscSpace() = default;

    virtual std::string describe() const = 0;

    // Number of points, or nullopt for infinitely many.
    virtual std::optional<std::uint64_t> point_count() const = 0;
    // n-th point of the canonical enumeration (0-based). Throws
    // std::out_of_range past the end of a finite space; may throw
    // EvalNontotal when enumeration needs unavailable oracle knowledge.
    virtual Point point_at(std::uint64_t n) const = 0;
    // Is this code one of the space's points?
    virtual bool contains(Point x) const = 0;

    virtual bool member(BasisIndex i, Point x) const = 0;
    // Requires x in U_i cap U_j.
    virtual BasisIndex k(BasisIndex i, BasisIndex j, Point x) const = 0;
    virtual BasisIndex cover_witness(Point x) const = 0;

    // Ground-truth isolation, when the space can certify it; Unknown when the
    // space cannot tell (e.g. opaque oracle data).
    virtual IsolationAnswer exact_isolated(Point x) const {
        (void)x;
        return {};
    }
};

using SpacePtr = std::shared_ptr<const CscSpace>;

// Raised when a cover witness cannot be produced for a point (bounded search
// in subbasis closure exhausted).
class CoverageFailure : public std::runtime_error {
public:
    CoverageFailure(Point point, const std::string& what)
        : std::runtime_error(what), point_(point) {}
    Point point() const { return point_; }

private:
    Point point_;
};

// Finite window onto a space: the first points of the enumeration against the
// first M basis rows, as a bit matrix.
struct SpacePresentation {
    std::vector<Point> points;            // enumeration-order prefix
    std::uint64_t basis_bound = 0;        // M
    std::vector<std::vector<bool>> rows;  // rows[i][n] = (points[n] in U_i), i < M
    std::string provenance;
    int derivative_stage = 0;             // number of isolated-point removals applied

    std::optional<std::size_t> index_of(Point x) const;
    std::vector<Point> row_points(BasisIndex i) const;  // sorted ascending
};

// First min(N, |X|) points x first M rows. Requires N, M >= 1. Propagates
// EvalNontotal from membership evaluation.
SpacePresentation truncate(const CscSpace& space, std::uint64_t N, std::uint64_t M);

struct ValidationReport {
    bool ok = true;
    std::string detail;                    // first counterexample when !ok
    std::optional<Point> nontotal_point;   // membership resolution failed here
    bool budget_exceeded = false;          // failure was an opaque budget, not a known divergence
};

// Checks, over points < N and row indices < M: the stored cover witness
// really covers each point, and every k(i,j,x) names a row containing x and
// contained in U_i cap U_j (containment judged on the truncated point set).
// Membership evaluation failures are reported, never swallowed.
ValidationReport validate(const CscSpace& space, std::uint64_t N, std::uint64_t M);

// S plus every presented point whose every presented row containing it meets
// S. Truncation-relative closure: extensive, monotone in S, idempotent.
std::set<Point> closure_of(const SpacePresentation& pres, const std::set<Point>& S);

// Three-valued isolation check at bounds (N, M): definitive answers come from
// the space's own certificate; otherwise a bounded singleton-row search runs,
// whose positive outcome is still only Unknown (a truncation-singleton row
// may contain unseen points).
IsolationAnswer is_isolated(const CscSpace& space, Point x, std::uint64_t N, std::uint64_t M);

// Renders "CSC N M" followed by one "U <i>: <sorted points>" line per row.
std::string dump_presentation(const SpacePresentation& pres);
// Renders "K <i> <j> <x> <kidx>" lines for every presented x in U_i cap U_j,
// i, j < M. May throw EvalNontotal.
std::string dump_k_block(const CscSpace& space, const SpacePresentation& pres);

// A space assembled from callbacks; used for hand-built finite examples and
// for planting defects in tests.
class HookSpace : public CscSpace {
public:
    struct Config {
        std::string name = "hook space";
        std::optional<std::uint64_t> count;
        std::function<Point(std::uint64_t)> point_at;
        std::function<bool(Point)> contains;
        std::function<bool(BasisIndex, Point)> member;
        std::function<BasisIndex(BasisIndex, BasisIndex, Point)> k;
        std::function<BasisIndex(Point)> cover;
        std::function<IsolationAnswer(Point)> isolated;  // optional
    };

    explicit HookSpace(Config cfg) : cfg_(std::move(cfg)) {}

    std::string describe() const override { return cfg_.name; }
    std::optional<std::uint64_t> point_count() const override { return cfg_.count; }
    Point point_at(std::uint64_t n) const override;
    bool contains(Point x) const override { return cfg_.contains(x); }
    bool member(BasisIndex i, Point x) const override { return cfg_.member(i, x); }
    BasisIndex k(BasisIndex i, BasisIndex j, Point x) const override { return cfg_.k(i, j, x); }
    BasisIndex cover_witness(Point x) const override { return cfg_.cover(x); }
    IsolationAnswer exact_isolated(Point x) const override {
        return cfg_.isolated ? cfg_.isolated(x) : IsolationAnswer{};
    }

private:
    Config cfg_;
};

// Coproduct of a countable family of spaces. Points and basis rows are pair
// codes (component, local); rows stay inside one component, so basic sets
// from different components never meet. The family is a finite prefix plus an
// optional generator for the remaining (infinitely many) components.
class DisjointUnionSpace : public CscSpace {
public:
    DisjointUnionSpace(std::string name, std::vector<SpacePtr> prefix,
                       std::function<SpacePtr(std::uint64_t)> rest = nullptr);

    std::string describe() const override { return name_; }
    std::optional<std::uint64_t> point_count() const override;
    Point point_at(std::uint64_t n) const override;
    bool contains(Point x) const override;
    bool member(BasisIndex i, Point x) const override;
    BasisIndex k(BasisIndex i, BasisIndex j, Point x) const override;
    BasisIndex cover_witness(Point x) const override;
    IsolationAnswer exact_isolated(Point x) const override;

    // nullopt when the family is infinite.
    std::optional<std::uint64_t> component_count() const;
    SpacePtr component(std::uint64_t c) const;

private:
    std::string name_;
    std::vector<SpacePtr> prefix_;
    std::function<SpacePtr(std::uint64_t)> rest_;
    mutable std::mutex mu_;
    mutable std::map<std::uint64_t, SpacePtr> memo_;
};

// Input to close_subbasis: enumerated points plus a total membership
// predicate for countably many subbasic sets, with no k and no cover data.
struct Subbasis {
    std::string name = "subbasis";
    std::optional<std::uint64_t> point_count;
    std::function<Point(std::uint64_t)> point_at;
    std::function<bool(Point)> contains;
    std::function<bool(BasisIndex, Point)> member;
    // How many subbasic sets the cover search may inspect per point.
    std::uint64_t cover_search_bound = 4096;
};

// Closes a subbasis under finite intersections. Basis index b decodes to a
// nonempty finite set of subbasis indices (see subbasis_list_of); the row is
// their intersection, possibly empty, so indexing stays total. k returns the
// code of the union of the two index sets. The cover witness for a point is
// the singleton code of the first subbasic set containing it; if none exists
// within cover_search_bound, CoverageFailure is thrown.
SpacePtr close_subbasis(Subbasis sb);

// The bijection between basis codes and nonempty strictly increasing lists of
// subbasis indices used by close_subbasis. Code order dovetails list length
// against index size: 0 -> [0], 1 -> [1], 2 -> [0,1], 3 -> [2], 4 -> [1,2], ...
std::vector<BasisIndex> subbasis_list_of(BasisIndex code);
BasisIndex subbasis_code_of(const std::vector<BasisIndex>& increasing_list);

} // namespace csctop
