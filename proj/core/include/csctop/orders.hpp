#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csctop/ordinal.hpp"
#include "csctop/space.hpp"

namespace csctop {

// ---------------------------------------------------------------------------
// Order terms
// ---------------------------------------------------------------------------

// Syntax tree for countable linear order types built from finite chains,
// ordinals below w^w, the integers, the dense order of the dyadic rationals,
// finite sums, and products. Product(a, b) means "one copy of a for every
// point of b", i.e. pairs ordered by the b-coordinate first; this matches
// ordinal multiplication, so w*2 is two copies of w and 2*w is omega.
enum class OrderKind { Finite, Ordinal, Integers, Dense, Sum, Product };

struct OrderTerm {
    OrderKind kind = OrderKind::Finite;
    std::uint64_t finite_size = 0;   // Finite
    Ordinal alpha;                   // Ordinal (nonzero; exponents finite)
    std::vector<OrderTerm> parts;    // Sum: two or more; Product: exactly two

    static OrderTerm finite(std::uint64_t n);
    static OrderTerm ordinal(const Ordinal& alpha);
    static OrderTerm integers();
    static OrderTerm dense();
    static OrderTerm sum(std::vector<OrderTerm> parts);
    static OrderTerm product(OrderTerm copies, OrderTerm layout);
};

// Canonical text: "w^2*(z+1+z)", "eta", "zeta", "fin(3)" prints as "3", etc.
std::string to_string(const OrderTerm& t);

// Grammar: sum := prod ('+' prod)*; prod := atom ('*' atom)*;
// atom := 'w' ['^' INT] | 'z' | 'zeta' | 'eta' | INT | 'fin' '(' INT ')'
//       | '(' sum ')'.  Throws std::invalid_argument on malformed input.
OrderTerm parse_order_term(const std::string& text);

// ---------------------------------------------------------------------------
// Concrete orders
// ---------------------------------------------------------------------------

// A computable presentation of a countable linear order. Point codes are the
// enumeration indices themselves: the points are 0, 1, 2, ... (below size()
// when finite), and all structural queries decode the index internally.
class ConcreteOrder {
public:
    virtual ~ConcreteOrder() = default;

    virtual std::string describe() const = 0;
    virtual std::optional<std::uint64_t> size() const = 0;

    // Strict order comparison of two point codes.
    virtual bool less(Point a, Point b) const = 0;

    virtual bool is_least(Point x) const = 0;
    virtual bool is_greatest(Point x) const = 0;
    virtual std::optional<Point> immediate_pred(Point x) const = 0;
    virtual std::optional<Point> immediate_succ(Point x) const = 0;

    // Whether only finitely many points lie strictly between a and b.
    virtual bool finitely_apart(Point a, Point b) const = 0;

    // Exact per-point rank: 0 for points isolated in the interval topology,
    // alpha for points that are (left or right) alpha-limits but not
    // (alpha+1)-limits, nullopt for points that are limits at every level.
    // Available when the rank rules cover the defining term; point_rank
    // throws RulesIncomplete otherwise.
    virtual bool has_rank_oracle() const = 0;
    virtual RankValue point_rank(Point x) const = 0;

    // Exclusive endpoints of the widest certified open interval around x in
    // which every other point has rank strictly below rank(x); a missing
    // endpoint means that side is unbounded. Returns nullopt when no such
    // interval exists (x has infinite rank). The default implementation
    // throws RulesIncomplete; orders with full rank support override it.
    virtual std::optional<std::pair<std::optional<Point>, std::optional<Point>>>
    rank_drop_bounds(Point x) const;
};

using OrderPtr = std::shared_ptr<const ConcreteOrder>;

// Builds the standard presentation of a term: dyadics for the dense order,
// zigzag-coded integers, grade-enumerated Cantor normal forms for ordinals,
// round-robin part interleaving for sums, density-aware pairing for products.
OrderPtr eval_term(const OrderTerm& t);

// ---------------------------------------------------------------------------
// Interval topology
// ---------------------------------------------------------------------------

// One basic open set: an interval with each end either a point of the order
// or unbounded. Row 0 is always the whole line.
struct IntervalRowView {
    bool left_unbounded = false;
    Point left = 0;
    bool right_unbounded = false;
    Point right = 0;
    // The point this row was emitted as a punctured neighborhood of, when any.
    std::optional<Point> owner;
};

// The interval topology of a concrete order as a CSC space. The basis
// enumerates, for each point in turn, the interval between its nearest
// already-enumerated neighbors; a maintenance stream re-emits such a
// neighborhood whenever a later point lands inside the previous one, so
// every point eventually gets a basic set separating it from any finite set
// of others. The k operation returns the exact intersection when that
// interval has already appeared as a row, and otherwise a sufficiently late
// neighborhood of the queried point.
class IntervalSpace : public CscSpace {
public:
    explicit IntervalSpace(OrderPtr order);
    ~IntervalSpace() override;

    std::string describe() const override;
    std::optional<std::uint64_t> point_count() const override;
    Point point_at(std::uint64_t n) const override;
    bool contains(Point x) const override;
    bool member(BasisIndex i, Point x) const override;
    BasisIndex k(BasisIndex i, BasisIndex j, Point x) const override;
    BasisIndex cover_witness(Point x) const override;
    IsolationAnswer exact_isolated(Point x) const override;

    const ConcreteOrder& order() const;
    IntervalRowView row_bounds(BasisIndex i) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::shared_ptr<const IntervalSpace> interval_topology(OrderPtr order);

// ---------------------------------------------------------------------------
// Ranks
// ---------------------------------------------------------------------------

// The rank of the whole order: the supremum of the per-point ranks (which
// need not be attained by any single point). Throws RulesIncomplete when the
// term falls outside the supported fragment; never guesses.
RankValue rk_symbolic(const OrderTerm& t);

// Condensation rank: the number of finite-distance quotients needed before
// the order collapses to finitely many points. Throws NotScattered for
// orders with a dense factor (no such rank exists).
RankValue hausdorff_rank_symbolic(const OrderTerm& t);

// Bounds for the limit-point probe below.
struct LimitProbe {
    std::uint64_t point_bound = 128;    // universal quantifiers range here
    std::uint64_t search_bound = 4096;  // witness searches range here
    bool use_rank_oracle = true;        // answer exactly via point ranks when possible
};

// Whether x is a (left or right) alpha-limit in L. Exact when the rank
// oracle applies; otherwise a bounded recursive search whose positive
// answers are sound but whose negative answers are only search-relative.
// The bounded path supports alpha <= 3 and throws beyond that.
bool alpha_limit(const ConcreteOrder& L, Point x, const Ordinal& alpha,
                 const LimitProbe& probe = {});

// ---------------------------------------------------------------------------
// Derivative steps
// ---------------------------------------------------------------------------

struct CbStepReport {
    SpacePresentation next;       // same window minus the removed points
    std::vector<Point> removed;   // certified-isolated points, ascending codes
    bool stalled = false;         // nothing removable but points remain
    std::string detail;
};

// Removes every presented point the callback certifies as isolated in the
// current derivative (stage pres.derivative_stage); Unknown and False stay.
CbStepReport cb_step(const SpacePresentation& pres,
                     const std::function<IsolationAnswer(Point)>& certified_isolated);

// Derivative step driven by exact point ranks: a point is isolated in the
// stage-d derivative exactly when its rank is an ordinal <= d.
CbStepReport cb_order_step(const ConcreteOrder& L, const SpacePresentation& pres);

struct CbRankReport {
    bool emptied = false;
    bool stalled = false;
    std::uint64_t steps = 0;                    // derivative steps applied
    RankValue rank;                             // steps - 1 when emptied
    std::vector<std::uint64_t> removed_per_step;
    std::string detail;
};

// Iterates cb_order_step on the (N, M) window of the given topology until the
// window empties or stalls.
CbRankReport cb_rank_by_steps(const ConcreteOrder& L, const CscSpace& topology,
                              std::uint64_t N, std::uint64_t M);

// ---------------------------------------------------------------------------
// Condensation
// ---------------------------------------------------------------------------

// Partitions the first point_bound points into maximal blocks of pairwise
// finitely-apart points. Blocks and their contents come back in order.
std::vector<std::vector<Point>> condense_finite(const ConcreteOrder& L,
                                                std::uint64_t point_bound);

} // namespace csctop
