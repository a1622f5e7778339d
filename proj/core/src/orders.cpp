#include "csctop/orders.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "csctop/pairing.hpp"

namespace csctop {

// ---------------------------------------------------------------------------
// Term construction and rendering
// ---------------------------------------------------------------------------

OrderTerm OrderTerm::finite(std::uint64_t n) {
    OrderTerm t;
    t.kind = OrderKind::Finite;
    t.finite_size = n;
    return t;
}

OrderTerm OrderTerm::ordinal(const Ordinal& alpha) {
    OrderTerm t;
    t.kind = OrderKind::Ordinal;
    t.alpha = alpha;
    return t;
}

OrderTerm OrderTerm::integers() {
    OrderTerm t;
    t.kind = OrderKind::Integers;
    return t;
}

OrderTerm OrderTerm::dense() {
    OrderTerm t;
    t.kind = OrderKind::Dense;
    return t;
}

OrderTerm OrderTerm::sum(std::vector<OrderTerm> parts) {
    if (parts.size() < 2) {
        throw std::invalid_argument("order term: a sum needs at least two parts");
    }
    OrderTerm t;
    t.kind = OrderKind::Sum;
    t.parts = std::move(parts);
    return t;
}

OrderTerm OrderTerm::product(OrderTerm copies, OrderTerm layout) {
    OrderTerm t;
    t.kind = OrderKind::Product;
    t.parts.push_back(std::move(copies));
    t.parts.push_back(std::move(layout));
    return t;
}

namespace {

// 0 = sum level, 1 = product level, 2 = atom.
int render_level(const OrderTerm& t, const std::string& rendered) {
    switch (t.kind) {
        case OrderKind::Sum: return 0;
        case OrderKind::Product: return 1;
        case OrderKind::Ordinal:
            if (rendered.find('+') != std::string::npos) return 0;
            if (rendered.find('*') != std::string::npos) return 1;
            return 2;
        default: return 2;
    }
}

std::string render(const OrderTerm& t, int min_level) {
    std::string s;
    switch (t.kind) {
        case OrderKind::Finite:
            s = std::to_string(t.finite_size);
            break;
        case OrderKind::Ordinal:
            s = t.alpha.to_string();
            break;
        case OrderKind::Integers:
            s = "z";
            break;
        case OrderKind::Dense:
            s = "eta";
            break;
        case OrderKind::Sum: {
            for (std::size_t i = 0; i < t.parts.size(); ++i) {
                if (i) s += "+";
                s += render(t.parts[i], 1);
            }
            break;
        }
        case OrderKind::Product: {
            s = render(t.parts[0], 2) + "*" + render(t.parts[1], 2);
            break;
        }
    }
    if (render_level(t, s) < min_level) return "(" + s + ")";
    return s;
}

} // namespace

std::string to_string(const OrderTerm& t) { return render(t, 0); }

// ---------------------------------------------------------------------------
// Term parser
// ---------------------------------------------------------------------------

namespace {

struct TermLexer {
    std::string text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("order term: " + msg + " at position " + std::to_string(pos));
    }
    bool eat(char c) {
        skip_space();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip_space();
        return pos < text.size() ? text[pos] : '\0';
    }
    std::uint64_t number() {
        skip_space();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
            fail("expected a number");
        }
        std::uint64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            if (v > 1000000) fail("number too large");
            ++pos;
        }
        return v;
    }
    std::string ident() {
        skip_space();
        std::string s;
        while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
            s += text[pos];
            ++pos;
        }
        return s;
    }
};

constexpr std::uint64_t kMaxOmegaExp = 8;

OrderTerm parse_sum(TermLexer& lx);

OrderTerm parse_atom(TermLexer& lx) {
    if (lx.eat('(')) {
        OrderTerm inner = parse_sum(lx);
        if (!lx.eat(')')) lx.fail("expected ')'");
        return inner;
    }
    char c = lx.peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
        return OrderTerm::finite(lx.number());
    }
    std::string id = lx.ident();
    if (id == "w") {
        std::uint64_t exp = 1;
        if (lx.eat('^')) exp = lx.number();
        if (exp > kMaxOmegaExp) lx.fail("omega exponent exceeds " + std::to_string(kMaxOmegaExp));
        if (exp == 0) return OrderTerm::finite(1);
        return OrderTerm::ordinal(Ordinal::omega_pow(Ordinal(exp)));
    }
    if (id == "z" || id == "zeta") return OrderTerm::integers();
    if (id == "eta") return OrderTerm::dense();
    if (id == "fin") {
        if (!lx.eat('(')) lx.fail("expected '(' after fin");
        std::uint64_t n = lx.number();
        if (!lx.eat(')')) lx.fail("expected ')' after fin size");
        return OrderTerm::finite(n);
    }
    lx.fail(id.empty() ? "expected a term" : "unknown name '" + id + "'");
}

OrderTerm parse_prod(TermLexer& lx) {
    OrderTerm acc = parse_atom(lx);
    while (lx.eat('*')) {
        acc = OrderTerm::product(std::move(acc), parse_atom(lx));
    }
    return acc;
}

OrderTerm parse_sum(TermLexer& lx) {
    std::vector<OrderTerm> parts;
    parts.push_back(parse_prod(lx));
    while (lx.eat('+')) {
        parts.push_back(parse_prod(lx));
    }
    if (parts.size() == 1) return std::move(parts.front());
    return OrderTerm::sum(std::move(parts));
}

} // namespace

OrderTerm parse_order_term(const std::string& text) {
    TermLexer lx{text, 0};
    OrderTerm t = parse_sum(lx);
    lx.skip_space();
    if (lx.pos != lx.text.size()) lx.fail("trailing input");
    return t;
}

// ---------------------------------------------------------------------------
// Rank bookkeeping helpers
// ---------------------------------------------------------------------------

namespace {

// Supremum of the point ranks over some set, with a flag for whether the
// supremum is attained by a point of the set. `some` is false for the empty
// set.
struct SupInfo {
    RankValue sup = RankValue(Ordinal());
    bool attained = true;
    bool some = false;
};

SupInfo sup_of(RankValue r) { return SupInfo{r, true, true}; }

SupInfo max_sup(const SupInfo& a, const SupInfo& b) {
    if (!a.some) return b;
    if (!b.some) return a;
    if (rank_less(a.sup, b.sup)) return b;
    if (rank_less(b.sup, a.sup)) return a;
    SupInfo out = a;
    out.attained = a.attained || b.attained;
    return out;
}

// Rank of a point approached (from one side) by a set with the given rank
// supremum: one more than an attained supremum, the supremum itself when it
// is only approached, infinity when the side is infinite.
RankValue approach_rank(const SupInfo& s) {
    if (!s.some) return RankValue(Ordinal());
    if (!s.sup.has_value()) return std::nullopt;
    if (s.attained) return RankValue(*s.sup + Ordinal(1));
    return s.sup;
}

RankValue rank_plus_finite(const RankValue& r, std::uint64_t k) {
    if (!r.has_value()) return std::nullopt;
    return RankValue(*r + Ordinal(k));
}

// A one-sided attachment effect: disengaged when a point attached on that
// side would have an immediate neighbor there (or nothing at all), engaged
// with the rank the attachment point would receive otherwise.
using Radiation = std::optional<RankValue>;

[[noreturn]] void rules_incomplete(const std::string& what) {
    throw RulesIncomplete("rank rules incomplete: " + what);
}

// ---------------------------------------------------------------------------
// Rank-drop search helpers
// ---------------------------------------------------------------------------

bool rank_at_least(const RankValue& r, const Ordinal& a) {
    return !r.has_value() || a <= *r;
}

// Sum of the first `count` Cantor normal form terms of v.
Ordinal ord_prefix(const Ordinal& v, std::size_t count) {
    Ordinal acc;
    const auto& ts = v.terms();
    for (std::size_t i = 0; i < count && i < ts.size(); ++i) {
        acc = acc + Ordinal::omega_pow(ts[i].exp, ts[i].coeff);
    }
    return acc;
}

// The terms of v with exponent at least min_exp.
Ordinal strip_small_terms(const Ordinal& v, const Ordinal& min_exp) {
    Ordinal acc;
    for (const auto& t : v.terms()) {
        if (!(t.exp < min_exp)) acc = acc + Ordinal::omega_pow(t.exp, t.coeff);
    }
    return acc;
}

// The unique delta with a + delta == b, defined when a <= b.
std::optional<Ordinal> left_subtract(const Ordinal& a, const Ordinal& b) {
    if (b < a) return std::nullopt;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    std::size_t i = 0;
    while (i < ta.size() && i < tb.size() && ta[i].exp == tb[i].exp &&
           ta[i].coeff == tb[i].coeff) {
        ++i;
    }
    Ordinal acc;
    if (i == ta.size()) {
        for (std::size_t j = i; j < tb.size(); ++j) {
            acc = acc + Ordinal::omega_pow(tb[j].exp, tb[j].coeff);
        }
        return acc;
    }
    if (i == tb.size()) return std::nullopt;
    if (ta[i].exp == tb[i].exp) {
        if (tb[i].coeff <= ta[i].coeff) return std::nullopt;
        acc = Ordinal::omega_pow(tb[i].exp, tb[i].coeff - ta[i].coeff);
    } else {
        acc = Ordinal::omega_pow(tb[i].exp, tb[i].coeff);
    }
    for (std::size_t j = i + 1; j < tb.size(); ++j) {
        acc = acc + Ordinal::omega_pow(tb[j].exp, tb[j].coeff);
    }
    return acc;
}

// Largest limit ordinal strictly below `bound` whose last exponent is at
// least `min_exp` (nonzero); Cofinal when such ordinals approach the bound.
struct OrdSearch {
    enum class Kind { None, At, Cofinal };
    Kind kind = Kind::None;
    Ordinal at;
};

OrdSearch largest_limit_below(const Ordinal& bound, const Ordinal& min_exp) {
    OrdSearch out;
    if (bound.is_zero()) return out;
    if (bound.is_limit() && min_exp < bound.last_exp()) {
        out.kind = OrdSearch::Kind::Cofinal;
        return out;
    }
    const auto& ts = bound.terms();
    std::size_t j = ts.size();
    while (j > 0 && ts[j - 1].exp < min_exp) --j;
    if (j == 0) return out;
    if (j < ts.size()) {
        out.kind = OrdSearch::Kind::At;
        out.at = ord_prefix(bound, j);
        return out;
    }
    // Every term has exponent >= min_exp, so bound is a limit whose last
    // exponent equals min_exp; step down inside the final term.
    if (ts.back().coeff >= 2) {
        out.kind = OrdSearch::Kind::At;
        out.at = ord_prefix(bound, ts.size() - 1) +
                 Ordinal::omega_pow(ts.back().exp, ts.back().coeff - 1);
        return out;
    }
    if (ts.size() >= 2) {
        out.kind = OrdSearch::Kind::At;
        out.at = ord_prefix(bound, ts.size() - 1);
        return out;
    }
    return out;
}

// One-edge summary of where the rank->=a points of a node end.
struct EdgeBound {
    enum class Kind { Clean, Bound, Cofinal };
    Kind kind = Kind::Clean;
    std::uint64_t at = 0;
    static EdgeBound clean() { return {}; }
    static EdgeBound bound(std::uint64_t p) { return {Kind::Bound, p}; }
    static EdgeBound cofinal() { return {Kind::Cofinal, 0}; }
};

// ---------------------------------------------------------------------------
// Order nodes
// ---------------------------------------------------------------------------

enum class NodeKind { Fin, Ord, Zeta, Eta, Sum, Prod };

struct Node {
    virtual ~Node() = default;
    virtual NodeKind nk() const = 0;
    virtual std::optional<std::uint64_t> size() const = 0;
    bool is_empty() const {
        auto s = size();
        return s.has_value() && *s == 0;
    }
    virtual int cmp(std::uint64_t a, std::uint64_t b) const = 0;
    virtual bool least(std::uint64_t n) const = 0;
    virtual bool greatest(std::uint64_t n) const = 0;
    virtual std::optional<std::uint64_t> least_point() const = 0;
    virtual std::optional<std::uint64_t> greatest_point() const = 0;
    virtual std::optional<std::uint64_t> ipred(std::uint64_t n) const = 0;
    virtual std::optional<std::uint64_t> isucc(std::uint64_t n) const = 0;
    virtual bool fin_apart(std::uint64_t a, std::uint64_t b) const = 0;
    virtual bool fin_above(std::uint64_t n) const = 0;
    virtual bool fin_below(std::uint64_t n) const = 0;
    // Whether some point has an immediate predecessor.
    virtual bool has_adjacent_pair() const = 0;

    virtual bool rank_supported() const = 0;
    virtual RankValue rank(std::uint64_t n) const = 0;
    virtual SupInfo rank_sup() const = 0;
    // Invariant: engaged exactly when the node is nonempty and lacks a
    // greatest (respectively least) point.
    virtual Radiation radiate_right() const = 0;
    virtual Radiation radiate_left() const = 0;

    // Rank-drop queries, defined for rank-supported nodes. For a point n with
    // a >= rank(n): a one-sided bound such that every in-node point strictly
    // between the bound and n has rank < a; disengaged when that whole side
    // of the node is already below a.
    virtual std::optional<std::uint64_t> drop_left(std::uint64_t n,
                                                   const Ordinal& a) const = 0;
    virtual std::optional<std::uint64_t> drop_right(std::uint64_t n,
                                                    const Ordinal& a) const = 0;
    // Where the rank->=a points of the node end toward each edge: Clean when
    // there are none, Bound(p) when every point strictly past p toward that
    // edge has rank < a, Cofinal when they approach the edge itself.
    virtual EdgeBound clean_above(const Ordinal& a) const = 0;
    virtual EdgeBound clean_below(const Ordinal& a) const = 0;
};

using NodePtr = std::unique_ptr<Node>;

// Any point of nd strictly below (above) point n, found by a bounded scan of
// the enumeration; anchors separator bounds next to points that sit at a
// limit from the searched side.
std::optional<std::uint64_t> some_point_below(const Node& nd, std::uint64_t n) {
    auto sz = nd.size();
    std::uint64_t cap = std::uint64_t{1} << 12;
    if (sz.has_value() && *sz < cap) cap = *sz;
    for (std::uint64_t c = 0; c < cap; ++c) {
        if (c != n && nd.cmp(c, n) < 0) return c;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> some_point_above(const Node& nd, std::uint64_t n) {
    auto sz = nd.size();
    std::uint64_t cap = std::uint64_t{1} << 12;
    if (sz.has_value() && *sz < cap) cap = *sz;
    for (std::uint64_t c = 0; c < cap; ++c) {
        if (c != n && nd.cmp(c, n) > 0) return c;
    }
    return std::nullopt;
}

// ----- finite chains -----

struct FinNode : Node {
    std::uint64_t n_;
    explicit FinNode(std::uint64_t n) : n_(n) {}

    NodeKind nk() const override { return NodeKind::Fin; }
    std::optional<std::uint64_t> size() const override { return n_; }
    int cmp(std::uint64_t a, std::uint64_t b) const override {
        check(a);
        check(b);
        return a < b ? -1 : (a > b ? 1 : 0);
    }
    bool least(std::uint64_t n) const override {
        check(n);
        return n == 0;
    }
    bool greatest(std::uint64_t n) const override {
        check(n);
        return n + 1 == n_;
    }
    std::optional<std::uint64_t> least_point() const override {
        if (n_ == 0) return std::nullopt;
        return 0;
    }
    std::optional<std::uint64_t> greatest_point() const override {
        if (n_ == 0) return std::nullopt;
        return n_ - 1;
    }
    std::optional<std::uint64_t> ipred(std::uint64_t n) const override {
        check(n);
        if (n == 0) return std::nullopt;
        return n - 1;
    }
    std::optional<std::uint64_t> isucc(std::uint64_t n) const override {
        check(n);
        if (n + 1 == n_) return std::nullopt;
        return n + 1;
    }
    bool fin_apart(std::uint64_t, std::uint64_t) const override { return true; }
    bool fin_above(std::uint64_t) const override { return true; }
    bool fin_below(std::uint64_t) const override { return true; }
    bool has_adjacent_pair() const override { return n_ >= 2; }

    bool rank_supported() const override { return true; }
    RankValue rank(std::uint64_t n) const override {
        check(n);
        return RankValue(Ordinal());
    }
    SupInfo rank_sup() const override { return SupInfo{RankValue(Ordinal()), true, n_ > 0}; }
    Radiation radiate_right() const override { return std::nullopt; }
    Radiation radiate_left() const override { return std::nullopt; }

    std::optional<std::uint64_t> drop_left(std::uint64_t n, const Ordinal& a) const override {
        check(n);
        if (!a.is_zero() || n == 0) return std::nullopt;
        return n - 1;
    }
    std::optional<std::uint64_t> drop_right(std::uint64_t n, const Ordinal& a) const override {
        check(n);
        if (!a.is_zero() || n + 1 >= n_) return std::nullopt;
        return n + 1;
    }
    EdgeBound clean_above(const Ordinal& a) const override {
        if (n_ == 0 || !a.is_zero()) return EdgeBound::clean();
        return EdgeBound::bound(n_ - 1);
    }
    EdgeBound clean_below(const Ordinal& a) const override {
        if (n_ == 0 || !a.is_zero()) return EdgeBound::clean();
        return EdgeBound::bound(0);
    }

    void check(std::uint64_t n) const {
        if (n >= n_) throw std::out_of_range("finite chain: point index out of range");
    }
};

// ----- ordinals below w^w -----

struct OrdNode : Node {
    Ordinal alpha_;
    mutable std::vector<Ordinal> points_;
    mutable std::map<Ordinal, std::uint64_t> index_;
    mutable std::uint64_t next_weight_ = 0;

    explicit OrdNode(const Ordinal& alpha) : alpha_(alpha) {
        for (const auto& term : alpha.terms()) {
            if (!term.exp.is_finite()) {
                throw std::invalid_argument(
                    "order term: ordinal order types need finite exponents (below w^w)");
            }
        }
    }

    NodeKind nk() const override { return NodeKind::Ord; }
    std::optional<std::uint64_t> size() const override {
        if (alpha_.is_finite()) return alpha_.finite_value();
        return std::nullopt;
    }

    static std::uint64_t weight_of(const Ordinal& b) {
        std::uint64_t w = 0;
        for (const auto& term : b.terms()) {
            w += term.coeff * (1 + term.exp.finite_value());
        }
        return w;
    }

    // Cantor normal forms of the given weight with lead exponent <= max_e,
    // pruning branches whose partial form already reaches the bound.
    void forms(std::uint64_t w, std::int64_t max_e, const Ordinal& acc,
               std::vector<Ordinal>& out) const {
        if (w == 0) {
            out.push_back(acc);
            return;
        }
        for (std::int64_t e = std::min<std::int64_t>(max_e, static_cast<std::int64_t>(w) - 1);
             e >= 0; --e) {
            const std::uint64_t unit = static_cast<std::uint64_t>(e) + 1;
            for (std::uint64_t c = 1; c * unit <= w; ++c) {
                Ordinal next =
                    acc + Ordinal::omega_pow(Ordinal(static_cast<std::uint64_t>(e)), c);
                if (!(next < alpha_)) break;  // larger c only grows further
                forms(w - c * unit, e - 1, next, out);
            }
        }
    }

    void grow_one_weight() const {
        std::vector<Ordinal> batch;
        forms(next_weight_, static_cast<std::int64_t>(next_weight_), Ordinal(), batch);
        ++next_weight_;
        std::sort(batch.begin(), batch.end());
        for (const auto& b : batch) {
            if (b < alpha_) {
                index_.emplace(b, points_.size());
                points_.push_back(b);
            }
        }
        if (next_weight_ > (1u << 16)) {
            throw std::logic_error("ordinal enumeration: weight growth cap exceeded");
        }
    }

    // By value: growing the enumeration may reallocate points_.
    Ordinal decode(std::uint64_t n) const {
        auto sz = size();
        if (sz.has_value() && n >= *sz) {
            throw std::out_of_range("ordinal order: point index out of range");
        }
        while (points_.size() <= n) grow_one_weight();
        return points_[n];
    }
    std::uint64_t encode(const Ordinal& b) const {
        const std::uint64_t w = weight_of(b);
        while (next_weight_ <= w) grow_one_weight();
        return index_.at(b);
    }

    int cmp(std::uint64_t a, std::uint64_t b) const override {
        const Ordinal da = decode(a), db = decode(b);
        return Ordinal::compare(da, db);
    }
    bool least(std::uint64_t n) const override { return decode(n).is_zero(); }
    bool greatest(std::uint64_t n) const override {
        return alpha_.is_successor() && decode(n) == alpha_.pred();
    }
    std::optional<std::uint64_t> least_point() const override {
        if (alpha_.is_zero()) return std::nullopt;
        return encode(Ordinal());
    }
    std::optional<std::uint64_t> greatest_point() const override {
        if (!alpha_.is_successor()) return std::nullopt;
        return encode(alpha_.pred());
    }
    std::optional<std::uint64_t> ipred(std::uint64_t n) const override {
        const Ordinal& b = decode(n);
        if (!b.is_successor()) return std::nullopt;
        return encode(b.pred());
    }
    std::optional<std::uint64_t> isucc(std::uint64_t n) const override {
        Ordinal s = decode(n).succ();
        if (!(s < alpha_)) return std::nullopt;
        return encode(s);
    }

    static Ordinal strip_finite(const Ordinal& b) {
        Ordinal acc;
        for (const auto& term : b.terms()) {
            if (term.exp.is_zero()) continue;
            acc = acc + Ordinal::omega_pow(term.exp, term.coeff);
        }
        return acc;
    }

    bool fin_apart(std::uint64_t a, std::uint64_t b) const override {
        return strip_finite(decode(a)) == strip_finite(decode(b));
    }
    bool fin_above(std::uint64_t n) const override {
        if (!alpha_.is_successor()) return false;
        return strip_finite(decode(n)) == strip_finite(alpha_.pred());
    }
    bool fin_below(std::uint64_t n) const override { return decode(n).is_finite(); }
    bool has_adjacent_pair() const override { return Ordinal(2) <= alpha_; }

    bool rank_supported() const override { return true; }
    RankValue rank(std::uint64_t n) const override {
        const Ordinal& b = decode(n);
        if (b.is_zero() || b.is_successor()) return RankValue(Ordinal());
        return RankValue(b.last_exp());
    }
    SupInfo rank_sup() const override {
        if (alpha_.is_zero()) return SupInfo{RankValue(Ordinal()), true, false};
        const Ordinal lead = alpha_.lead_exp();
        if (alpha_ == Ordinal::omega_pow(lead)) {
            // A pure power: points stay strictly below the lead exponent.
            if (lead.is_zero()) return sup_of(RankValue(Ordinal()));
            return sup_of(RankValue(Ordinal(lead.finite_value() - 1)));
        }
        return sup_of(RankValue(lead));
    }
    Radiation radiate_right() const override {
        if (alpha_.is_zero() || alpha_.is_successor()) return std::nullopt;
        return Radiation(RankValue(alpha_.last_exp()));
    }
    Radiation radiate_left() const override { return std::nullopt; }

    // Largest last-exponent among limit ordinals below alpha, when any.
    std::optional<std::uint64_t> limit_exp_sup() const {
        if (alpha_.is_zero() || alpha_.is_finite()) return std::nullopt;
        const std::uint64_t lead = alpha_.lead_exp().finite_value();
        if (alpha_ == Ordinal::omega_pow(Ordinal(lead))) {
            if (lead >= 2) return lead - 1;
            return std::nullopt;  // below omega itself there are no limits
        }
        return lead;
    }

    std::optional<std::uint64_t> drop_left(std::uint64_t n, const Ordinal& a) const override {
        const Ordinal v = decode(n);
        if (a.is_zero()) {
            if (v.is_zero()) return std::nullopt;
            if (v.is_successor()) return encode(v.pred());
            throw std::logic_error("rank drop: bound below the point's own rank");
        }
        auto ls = largest_limit_below(v, a);
        if (ls.kind == OrdSearch::Kind::None) return std::nullopt;
        if (ls.kind == OrdSearch::Kind::At) return encode(ls.at);
        throw std::logic_error("rank drop: bound below the point's own rank");
    }
    std::optional<std::uint64_t> drop_right(std::uint64_t n, const Ordinal& a) const override {
        const Ordinal v = decode(n);
        if (a.is_zero()) {
            const Ordinal s = v.succ();
            if (!(s < alpha_)) return std::nullopt;
            return encode(s);
        }
        const Ordinal y = strip_small_terms(v, a) + Ordinal::omega_pow(a);
        if (!(y < alpha_)) return std::nullopt;
        return encode(y);
    }
    EdgeBound clean_above(const Ordinal& a) const override {
        if (alpha_.is_zero()) return EdgeBound::clean();
        if (a.is_zero()) {
            if (alpha_.is_successor()) return EdgeBound::bound(encode(alpha_.pred()));
            return EdgeBound::cofinal();
        }
        auto ls = largest_limit_below(alpha_, a);
        if (ls.kind == OrdSearch::Kind::None) return EdgeBound::clean();
        if (ls.kind == OrdSearch::Kind::At) return EdgeBound::bound(encode(ls.at));
        return EdgeBound::cofinal();
    }
    EdgeBound clean_below(const Ordinal& a) const override {
        if (alpha_.is_zero()) return EdgeBound::clean();
        if (a.is_zero()) return EdgeBound::bound(encode(Ordinal()));
        const Ordinal w = Ordinal::omega_pow(a);
        if (w < alpha_) return EdgeBound::bound(encode(w));
        return EdgeBound::clean();
    }
};

// ----- the integers -----

struct ZetaNode : Node {
    NodeKind nk() const override { return NodeKind::Zeta; }
    std::optional<std::uint64_t> size() const override { return std::nullopt; }
    static std::int64_t val(std::uint64_t n) { return unzigzag_code(n); }
    int cmp(std::uint64_t a, std::uint64_t b) const override {
        const std::int64_t x = val(a), y = val(b);
        return x < y ? -1 : (x > y ? 1 : 0);
    }
    bool least(std::uint64_t) const override { return false; }
    bool greatest(std::uint64_t) const override { return false; }
    std::optional<std::uint64_t> least_point() const override { return std::nullopt; }
    std::optional<std::uint64_t> greatest_point() const override { return std::nullopt; }
    std::optional<std::uint64_t> ipred(std::uint64_t n) const override {
        return zigzag_code(val(n) - 1);
    }
    std::optional<std::uint64_t> isucc(std::uint64_t n) const override {
        return zigzag_code(val(n) + 1);
    }
    bool fin_apart(std::uint64_t, std::uint64_t) const override { return true; }
    bool fin_above(std::uint64_t) const override { return false; }
    bool fin_below(std::uint64_t) const override { return false; }
    bool has_adjacent_pair() const override { return true; }

    bool rank_supported() const override { return true; }
    RankValue rank(std::uint64_t) const override { return RankValue(Ordinal()); }
    SupInfo rank_sup() const override { return sup_of(RankValue(Ordinal())); }
    Radiation radiate_right() const override { return Radiation(RankValue(Ordinal(1))); }
    Radiation radiate_left() const override { return Radiation(RankValue(Ordinal(1))); }

    std::optional<std::uint64_t> drop_left(std::uint64_t n, const Ordinal& a) const override {
        if (!a.is_zero()) return std::nullopt;
        return zigzag_code(val(n) - 1);
    }
    std::optional<std::uint64_t> drop_right(std::uint64_t n, const Ordinal& a) const override {
        if (!a.is_zero()) return std::nullopt;
        return zigzag_code(val(n) + 1);
    }
    EdgeBound clean_above(const Ordinal& a) const override {
        return a.is_zero() ? EdgeBound::cofinal() : EdgeBound::clean();
    }
    EdgeBound clean_below(const Ordinal& a) const override {
        return a.is_zero() ? EdgeBound::cofinal() : EdgeBound::clean();
    }
};

// ----- the dyadic rationals -----

struct EtaNode : Node {
    // Point n < kPrefix is the integer n; the rest dovetails the remaining
    // dyadics in canonical-code order. The long ascending prefix keeps early
    // windows free of neighbor-invasions (see the interval basis).
    static constexpr std::uint64_t kPrefix = 64;

    struct Dy {
        std::int64_t num = 0;
        std::uint32_t k = 0;  // value = num / 2^k, reduced
    };

    mutable std::vector<Dy> tail_;
    mutable std::uint64_t cursor_ = 0;

    NodeKind nk() const override { return NodeKind::Eta; }
    std::optional<std::uint64_t> size() const override { return std::nullopt; }

    Dy decode(std::uint64_t n) const {
        if (n < kPrefix) return Dy{static_cast<std::int64_t>(n), 0};
        const std::uint64_t want = n - kPrefix;
        while (tail_.size() <= want) {
            const std::uint64_t code = cursor_++;
            if (cursor_ > (1u << 24)) {
                throw std::logic_error("dyadic enumeration: cursor cap exceeded");
            }
            const auto [kk, zz] = unpair_code(code);
            const std::int64_t num = unzigzag_code(zz);
            if (kk > 0 && num % 2 == 0) continue;  // not reduced
            if (kk == 0 && num >= 0 && num < static_cast<std::int64_t>(kPrefix)) {
                continue;  // already in the ascending prefix
            }
            tail_.push_back(Dy{num, static_cast<std::uint32_t>(kk)});
        }
        return tail_[want];
    }

    static int cmp_dy(const Dy& a, const Dy& b) {
        // Compare a.num * 2^b.k against b.num * 2^a.k.
        std::uint32_t sa = b.k, sb = a.k;
        const std::uint32_t common = std::min(sa, sb);
        sa -= common;
        sb -= common;
        auto shifted_cmp = [](std::int64_t x, std::uint32_t sh, std::int64_t y) {
            if (x == 0) return y > 0 ? -1 : (y < 0 ? 1 : 0);
            if (sh >= 50 || (x > 0 ? x > (INT64_MAX >> sh) : -x > (INT64_MAX >> sh))) {
                return x > 0 ? 1 : -1;  // the shifted side dominates
            }
            const std::int64_t xs = x << sh;
            return xs < y ? -1 : (xs > y ? 1 : 0);
        };
        if (sa > 0) return shifted_cmp(a.num, sa, b.num);
        if (sb > 0) return -shifted_cmp(b.num, sb, a.num);
        return a.num < b.num ? -1 : (a.num > b.num ? 1 : 0);
    }

    int cmp(std::uint64_t a, std::uint64_t b) const override {
        return cmp_dy(decode(a), decode(b));
    }
    bool least(std::uint64_t) const override { return false; }
    bool greatest(std::uint64_t) const override { return false; }
    std::optional<std::uint64_t> least_point() const override { return std::nullopt; }
    std::optional<std::uint64_t> greatest_point() const override { return std::nullopt; }
    std::optional<std::uint64_t> ipred(std::uint64_t) const override { return std::nullopt; }
    std::optional<std::uint64_t> isucc(std::uint64_t) const override { return std::nullopt; }
    bool fin_apart(std::uint64_t a, std::uint64_t b) const override {
        return cmp(a, b) == 0;
    }
    bool fin_above(std::uint64_t) const override { return false; }
    bool fin_below(std::uint64_t) const override { return false; }
    bool has_adjacent_pair() const override { return false; }

    bool rank_supported() const override { return true; }
    RankValue rank(std::uint64_t) const override { return std::nullopt; }
    SupInfo rank_sup() const override { return sup_of(std::nullopt); }
    Radiation radiate_right() const override { return Radiation(RankValue(std::nullopt)); }
    Radiation radiate_left() const override { return Radiation(RankValue(std::nullopt)); }

    std::optional<std::uint64_t> drop_left(std::uint64_t, const Ordinal&) const override {
        throw std::logic_error("rank drop: the point has infinite rank");
    }
    std::optional<std::uint64_t> drop_right(std::uint64_t, const Ordinal&) const override {
        throw std::logic_error("rank drop: the point has infinite rank");
    }
    EdgeBound clean_above(const Ordinal&) const override { return EdgeBound::cofinal(); }
    EdgeBound clean_below(const Ordinal&) const override { return EdgeBound::cofinal(); }
};

// ----- finite sums -----

struct SumNode : Node {
    std::vector<NodePtr> parts_;
    mutable std::vector<std::pair<std::uint32_t, std::uint64_t>> sched_;
    mutable std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint64_t> sched_index_;
    mutable std::vector<std::uint64_t> emitted_;
    mutable std::uint32_t rr_ = 0;

    explicit SumNode(std::vector<NodePtr> parts) : parts_(std::move(parts)) {
        emitted_.assign(parts_.size(), 0);
    }

    NodeKind nk() const override { return NodeKind::Sum; }
    std::optional<std::uint64_t> size() const override {
        std::uint64_t total = 0;
        for (const auto& p : parts_) {
            auto s = p->size();
            if (!s.has_value()) return std::nullopt;
            total += *s;
        }
        return total;
    }

    bool part_has_more(std::uint32_t p) const {
        auto s = parts_[p]->size();
        return !s.has_value() || emitted_[p] < *s;
    }

    bool grow_one() const {
        for (std::uint32_t tries = 0; tries < parts_.size(); ++tries) {
            std::uint32_t p = (rr_ + tries) % parts_.size();
            if (part_has_more(p)) {
                sched_index_.emplace(std::make_pair(p, emitted_[p]), sched_.size());
                sched_.push_back({p, emitted_[p]});
                ++emitted_[p];
                rr_ = (p + 1) % parts_.size();
                return true;
            }
        }
        return false;  // all parts exhausted
    }

    std::pair<std::uint32_t, std::uint64_t> decode(std::uint64_t n) const {
        while (sched_.size() <= n) {
            if (!grow_one()) throw std::out_of_range("sum order: point index out of range");
            if (sched_.size() > (1u << 22)) {
                throw std::logic_error("sum enumeration: schedule cap exceeded");
            }
        }
        return sched_[n];
    }
    std::uint64_t encode(std::uint32_t p, std::uint64_t local) const {
        auto key = std::make_pair(p, local);
        auto it = sched_index_.find(key);
        while (it == sched_index_.end()) {
            if (!grow_one()) throw std::logic_error("sum order: encoding an absent point");
            if (sched_.size() > (1u << 22)) {
                throw std::logic_error("sum enumeration: schedule cap exceeded");
            }
            it = sched_index_.find(key);
        }
        return it->second;
    }

    std::optional<std::uint32_t> first_nonempty() const {
        for (std::uint32_t p = 0; p < parts_.size(); ++p) {
            if (!parts_[p]->is_empty()) return p;
        }
        return std::nullopt;
    }
    std::optional<std::uint32_t> last_nonempty() const {
        for (std::uint32_t p = static_cast<std::uint32_t>(parts_.size()); p-- > 0;) {
            if (!parts_[p]->is_empty()) return p;
        }
        return std::nullopt;
    }
    std::optional<std::uint32_t> prev_nonempty(std::uint32_t p) const {
        for (std::uint32_t q = p; q-- > 0;) {
            if (!parts_[q]->is_empty()) return q;
        }
        return std::nullopt;
    }
    std::optional<std::uint32_t> next_nonempty(std::uint32_t p) const {
        for (std::uint32_t q = p + 1; q < parts_.size(); ++q) {
            if (!parts_[q]->is_empty()) return q;
        }
        return std::nullopt;
    }

    int cmp(std::uint64_t a, std::uint64_t b) const override {
        auto [pa, la] = decode(a);
        auto [pb, lb] = decode(b);
        if (pa != pb) return pa < pb ? -1 : 1;
        return parts_[pa]->cmp(la, lb);
    }
    bool least(std::uint64_t n) const override {
        auto [p, l] = decode(n);
        if (!parts_[p]->least(l)) return false;
        auto f = first_nonempty();
        return f.has_value() && *f == p;
    }
    bool greatest(std::uint64_t n) const override {
        auto [p, l] = decode(n);
        if (!parts_[p]->greatest(l)) return false;
        auto g = last_nonempty();
        return g.has_value() && *g == p;
    }
    std::optional<std::uint64_t> least_point() const override {
        auto f = first_nonempty();
        if (!f.has_value()) return std::nullopt;
        auto lp = parts_[*f]->least_point();
        if (!lp.has_value()) return std::nullopt;
        return encode(*f, *lp);
    }
    std::optional<std::uint64_t> greatest_point() const override {
        auto g = last_nonempty();
        if (!g.has_value()) return std::nullopt;
        auto gp = parts_[*g]->greatest_point();
        if (!gp.has_value()) return std::nullopt;
        return encode(*g, *gp);
    }
    std::optional<std::uint64_t> ipred(std::uint64_t n) const override {
        auto [p, l] = decode(n);
        if (auto c = parts_[p]->ipred(l)) return encode(p, *c);
        if (!parts_[p]->least(l)) return std::nullopt;
        auto q = prev_nonempty(p);
        if (!q.has_value()) return std::nullopt;
        auto g = parts_[*q]->greatest_point();
        if (!g.has_value()) return std::nullopt;
        return encode(*q, *g);
    }
    std::optional<std::uint64_t> isucc(std::uint64_t n) const override {
        auto [p, l] = decode(n);
        if (auto c = parts_[p]->isucc(l)) return encode(p, *c);
        if (!parts_[p]->greatest(l)) return std::nullopt;
        auto q = next_nonempty(p);
        if (!q.has_value()) return std::nullopt;
        auto lp = parts_[*q]->least_point();
        if (!lp.has_value()) return std::nullopt;
        return encode(*q, *lp);
    }
    bool fin_apart(std::uint64_t a, std::uint64_t b) const override {
        auto [pa, la] = decode(a);
        auto [pb, lb] = decode(b);
        if (pa == pb) return parts_[pa]->fin_apart(la, lb);
        if (pa > pb) {
            std::swap(pa, pb);
            std::swap(la, lb);
        }
        if (!parts_[pa]->fin_above(la) || !parts_[pb]->fin_below(lb)) return false;
        for (std::uint32_t q = pa + 1; q < pb; ++q) {
            if (!parts_[q]->size().has_value()) return false;
        }
        return true;
    }
    bool fin_above(std::uint64_t n) const override {
        auto [p, l] = decode(n);
        if (!parts_[p]->fin_above(l)) return false;
        for (std::uint32_t q = p + 1; q < parts_.size(); ++q) {
            if (!parts_[q]->size().has_value()) return false;
        }
        return true;
    }
    bool fin_below(std::uint64_t n) const override {
        auto [p, l] = decode(n);
        if (!parts_[p]->fin_below(l)) return false;
        for (std::uint32_t q = 0; q < p; ++q) {
            if (!parts_[q]->size().has_value()) return false;
        }
        return true;
    }
    bool has_adjacent_pair() const override {
        for (const auto& p : parts_) {
            if (p->has_adjacent_pair()) return true;
        }
        for (std::uint32_t p = 0; p < parts_.size(); ++p) {
            if (parts_[p]->is_empty()) continue;
            auto q = next_nonempty(p);
            if (q.has_value() && parts_[p]->greatest_point().has_value() &&
                parts_[*q]->least_point().has_value()) {
                return true;
            }
        }
        return false;
    }

    bool rank_supported() const override {
        for (const auto& p : parts_) {
            if (!p->rank_supported()) return false;
        }
        return true;
    }
    RankValue rank(std::uint64_t n) const override {
        auto [p, l] = decode(n);
        RankValue r = parts_[p]->rank(l);
        if (parts_[p]->least(l)) {
            if (auto q = prev_nonempty(p)) {
                if (auto rad = parts_[*q]->radiate_right()) r = rank_max(r, *rad);
            }
        }
        if (parts_[p]->greatest(l)) {
            if (auto q = next_nonempty(p)) {
                if (auto rad = parts_[*q]->radiate_left()) r = rank_max(r, *rad);
            }
        }
        return r;
    }
    SupInfo rank_sup() const override {
        SupInfo acc;
        for (const auto& p : parts_) {
            if (!p->is_empty()) acc = max_sup(acc, p->rank_sup());
        }
        for (std::uint32_t p = 0; p < parts_.size(); ++p) {
            if (parts_[p]->is_empty()) continue;
            if (auto q = prev_nonempty(p)) {
                auto lp = parts_[p]->least_point();
                auto rad = parts_[*q]->radiate_right();
                if (lp.has_value() && rad.has_value()) {
                    acc = max_sup(acc, sup_of(rank_max(parts_[p]->rank(*lp), *rad)));
                }
            }
            if (auto q = next_nonempty(p)) {
                auto gp = parts_[p]->greatest_point();
                auto rad = parts_[*q]->radiate_left();
                if (gp.has_value() && rad.has_value()) {
                    acc = max_sup(acc, sup_of(rank_max(parts_[p]->rank(*gp), *rad)));
                }
            }
        }
        return acc;
    }
    Radiation radiate_right() const override {
        auto q = last_nonempty();
        if (!q.has_value()) return std::nullopt;
        return parts_[*q]->radiate_right();
    }
    Radiation radiate_left() const override {
        auto q = first_nonempty();
        if (!q.has_value()) return std::nullopt;
        return parts_[*q]->radiate_left();
    }

    // --- rank-drop rules ---

    // Junction glue received by the least (greatest) point of part t.
    Radiation junction_left_glue(std::uint32_t t) const {
        auto q = prev_nonempty(t);
        if (!q.has_value()) return std::nullopt;
        return parts_[*q]->radiate_right();
    }
    Radiation junction_right_glue(std::uint32_t t) const {
        auto q = next_nonempty(t);
        if (!q.has_value()) return std::nullopt;
        return parts_[*q]->radiate_left();
    }
    // Any in-part point, preferring the extreme one; parts are nonempty here.
    std::uint64_t low_mark(std::uint32_t t) const {
        auto l = parts_[t]->least_point();
        return encode(t, l.has_value() ? *l : 0);
    }
    std::uint64_t high_mark(std::uint32_t t) const {
        auto g = parts_[t]->greatest_point();
        return encode(t, g.has_value() ? *g : 0);
    }

    // Scans parts [0, t_hi) downward for the highest point with rank >= a.
    // sep is a point with everything between it and the caller's context
    // already certified clean; it resolves parts whose high ranks pile up
    // against their top edge.
    EdgeBound scan_high(std::uint32_t t_hi, const Ordinal& a,
                        std::optional<std::uint64_t> sep) const {
        for (std::uint32_t t = t_hi; t-- > 0;) {
            const Node* part = parts_[t].get();
            if (part->is_empty()) continue;
            if (auto g = part->greatest_point()) {
                RankValue r = part->rank(*g);
                if (auto rad = junction_right_glue(t)) r = rank_max(r, *rad);
                if (rank_at_least(r, a)) return EdgeBound::bound(encode(t, *g));
            }
            EdgeBound eb = part->clean_above(a);
            if (eb.kind == EdgeBound::Kind::Bound) {
                return EdgeBound::bound(encode(t, eb.at));
            }
            if (eb.kind == EdgeBound::Kind::Cofinal) {
                if (sep.has_value()) return EdgeBound::bound(*sep);
                return EdgeBound::cofinal();
            }
            if (auto l = part->least_point()) {
                if (auto rad = junction_left_glue(t)) {
                    if (rank_at_least(*rad, a)) return EdgeBound::bound(encode(t, *l));
                }
            }
            sep = low_mark(t);
        }
        return EdgeBound::clean();
    }
    // Mirror: scans parts [t_from, end) upward for the lowest such point.
    EdgeBound scan_low(std::uint32_t t_from, const Ordinal& a,
                       std::optional<std::uint64_t> sep) const {
        for (std::uint32_t t = t_from; t < parts_.size(); ++t) {
            const Node* part = parts_[t].get();
            if (part->is_empty()) continue;
            if (auto l = part->least_point()) {
                RankValue r = part->rank(*l);
                if (auto rad = junction_left_glue(t)) r = rank_max(r, *rad);
                if (rank_at_least(r, a)) return EdgeBound::bound(encode(t, *l));
            }
            EdgeBound eb = part->clean_below(a);
            if (eb.kind == EdgeBound::Kind::Bound) {
                return EdgeBound::bound(encode(t, eb.at));
            }
            if (eb.kind == EdgeBound::Kind::Cofinal) {
                if (sep.has_value()) return EdgeBound::bound(*sep);
                return EdgeBound::cofinal();
            }
            if (auto g = part->greatest_point()) {
                if (auto rad = junction_right_glue(t)) {
                    if (rank_at_least(*rad, a)) return EdgeBound::bound(encode(t, *g));
                }
            }
            sep = high_mark(t);
        }
        return EdgeBound::clean();
    }

    std::optional<std::uint64_t> drop_left(std::uint64_t n, const Ordinal& a) const override {
        auto [j, l] = decode(n);
        if (auto p = parts_[j]->drop_left(l, a)) return encode(j, *p);
        auto lp = parts_[j]->least_point();
        if (lp.has_value() && *lp != l) {
            if (auto rad = junction_left_glue(j)) {
                if (rank_at_least(*rad, a)) return encode(j, *lp);
            }
        }
        std::optional<std::uint64_t> sep;
        if (lp.has_value() && *lp != l) {
            sep = encode(j, *lp);
        } else if (auto ip = parts_[j]->ipred(l)) {
            sep = encode(j, *ip);
        } else if (!lp.has_value()) {
            if (auto sp = some_point_below(*parts_[j], l)) sep = encode(j, *sp);
        }
        EdgeBound eb = scan_high(j, a, sep);
        if (eb.kind == EdgeBound::Kind::Clean) return std::nullopt;
        if (eb.kind == EdgeBound::Kind::Bound) return eb.at;
        throw std::logic_error("rank drop: cofinal high ranks beside a finite-rank point");
    }
    std::optional<std::uint64_t> drop_right(std::uint64_t n, const Ordinal& a) const override {
        auto [j, l] = decode(n);
        if (auto p = parts_[j]->drop_right(l, a)) return encode(j, *p);
        auto gp = parts_[j]->greatest_point();
        if (gp.has_value() && *gp != l) {
            if (auto rad = junction_right_glue(j)) {
                if (rank_at_least(*rad, a)) return encode(j, *gp);
            }
        }
        std::optional<std::uint64_t> sep;
        if (gp.has_value() && *gp != l) {
            sep = encode(j, *gp);
        } else if (auto is = parts_[j]->isucc(l)) {
            sep = encode(j, *is);
        } else if (!gp.has_value()) {
            if (auto sp = some_point_above(*parts_[j], l)) sep = encode(j, *sp);
        }
        EdgeBound eb = scan_low(j + 1, a, sep);
        if (eb.kind == EdgeBound::Kind::Clean) return std::nullopt;
        if (eb.kind == EdgeBound::Kind::Bound) return eb.at;
        throw std::logic_error("rank drop: cofinal high ranks beside a finite-rank point");
    }
    EdgeBound clean_above(const Ordinal& a) const override {
        return scan_high(static_cast<std::uint32_t>(parts_.size()), a, std::nullopt);
    }
    EdgeBound clean_below(const Ordinal& a) const override {
        return scan_low(0, a, std::nullopt);
    }
};

// ----- products: one copy of cp_ for every point of ly_ -----

struct ProdNode : Node {
    NodePtr cp_;  // the repeated order
    NodePtr ly_;  // the layout the copies run along

    ProdNode(NodePtr cp, NodePtr ly) : cp_(std::move(cp)), ly_(std::move(ly)) {}

    NodeKind nk() const override { return NodeKind::Prod; }
    std::optional<std::uint64_t> size() const override {
        auto a = cp_->size(), b = ly_->size();
        if ((a.has_value() && *a == 0) || (b.has_value() && *b == 0)) return std::uint64_t{0};
        if (a.has_value() && b.has_value()) return *a * *b;
        return std::nullopt;
    }

    std::pair<std::uint64_t, std::uint64_t> decode(std::uint64_t n) const {
        auto a = cp_->size(), b = ly_->size();
        auto sz = size();
        if (sz.has_value() && n >= *sz) {
            throw std::out_of_range("product order: point index out of range");
        }
        if (a.has_value() && b.has_value()) return {n % *a, n / *a};
        if (a.has_value()) return {n % *a, n / *a};
        if (b.has_value()) return {n / *b, n % *b};
        auto [u, v] = unpair_code(n);
        return {u, v};
    }
    std::uint64_t encode(std::uint64_t al, std::uint64_t bl) const {
        auto a = cp_->size(), b = ly_->size();
        if (a.has_value()) return bl * *a + al;
        if (b.has_value()) return al * *b + bl;
        return pair_code(al, bl);
    }

    int cmp(std::uint64_t x, std::uint64_t y) const override {
        auto [ax, bx] = decode(x);
        auto [ay, by] = decode(y);
        const int c = ly_->cmp(bx, by);
        if (c != 0) return c;
        return cp_->cmp(ax, ay);
    }
    bool least(std::uint64_t n) const override {
        auto [a, b] = decode(n);
        return cp_->least(a) && ly_->least(b);
    }
    bool greatest(std::uint64_t n) const override {
        auto [a, b] = decode(n);
        return cp_->greatest(a) && ly_->greatest(b);
    }
    std::optional<std::uint64_t> least_point() const override {
        if (is_empty()) return std::nullopt;
        auto a = cp_->least_point();
        auto b = ly_->least_point();
        if (!a.has_value() || !b.has_value()) return std::nullopt;
        return encode(*a, *b);
    }
    std::optional<std::uint64_t> greatest_point() const override {
        if (is_empty()) return std::nullopt;
        auto a = cp_->greatest_point();
        auto b = ly_->greatest_point();
        if (!a.has_value() || !b.has_value()) return std::nullopt;
        return encode(*a, *b);
    }
    std::optional<std::uint64_t> ipred(std::uint64_t n) const override {
        auto [a, b] = decode(n);
        if (auto pa = cp_->ipred(a)) return encode(*pa, b);
        if (!cp_->least(a)) return std::nullopt;
        auto pb = ly_->ipred(b);
        auto top = cp_->greatest_point();
        if (!pb.has_value() || !top.has_value()) return std::nullopt;
        return encode(*top, *pb);
    }
    std::optional<std::uint64_t> isucc(std::uint64_t n) const override {
        auto [a, b] = decode(n);
        if (auto sa = cp_->isucc(a)) return encode(*sa, b);
        if (!cp_->greatest(a)) return std::nullopt;
        auto sb = ly_->isucc(b);
        auto bot = cp_->least_point();
        if (!sb.has_value() || !bot.has_value()) return std::nullopt;
        return encode(*bot, *sb);
    }
    bool fin_apart(std::uint64_t x, std::uint64_t y) const override {
        auto [ax, bx] = decode(x);
        auto [ay, by] = decode(y);
        const int c = ly_->cmp(bx, by);
        if (c == 0) return cp_->fin_apart(ax, ay);
        if (c > 0) {
            std::swap(ax, ay);
            std::swap(bx, by);
        }
        if (!cp_->fin_above(ax) || !cp_->fin_below(ay)) return false;
        auto s = ly_->isucc(bx);
        const bool adjacent = s.has_value() && *s == by;
        return adjacent || (cp_->size().has_value() && ly_->fin_apart(bx, by));
    }
    bool fin_above(std::uint64_t n) const override {
        auto [a, b] = decode(n);
        if (!cp_->fin_above(a)) return false;
        return ly_->greatest(b) || (cp_->size().has_value() && ly_->fin_above(b));
    }
    bool fin_below(std::uint64_t n) const override {
        auto [a, b] = decode(n);
        if (!cp_->fin_below(a)) return false;
        return ly_->least(b) || (cp_->size().has_value() && ly_->fin_below(b));
    }
    bool has_adjacent_pair() const override {
        if (is_empty()) return false;
        if (cp_->has_adjacent_pair()) return true;
        return cp_->least_point().has_value() && cp_->greatest_point().has_value() &&
               ly_->has_adjacent_pair();
    }

    // --- rank rules ---

    static bool layout_shape_ok(const Node* ly) {
        switch (ly->nk()) {
            case NodeKind::Fin:
            case NodeKind::Ord:
            case NodeKind::Zeta:
            case NodeKind::Eta:
                return true;
            case NodeKind::Sum: {
                const auto* s = static_cast<const SumNode*>(ly);
                for (const auto& c : s->parts_) {
                    if (!layout_shape_ok(c.get())) return false;
                }
                return true;
            }
            case NodeKind::Prod:
                return false;
        }
        return false;
    }

    bool rank_supported() const override {
        return cp_->rank_supported() && ly_->rank_supported() && layout_shape_ok(ly_.get());
    }

    // Ranks occurring cofinally in any infinite stack of adjacent copies.
    SupInfo stack_sup() const {
        SupInfo s = cp_->rank_sup();
        const bool has_l = cp_->least_point().has_value();
        const bool has_g = cp_->greatest_point().has_value();
        if (has_l && !has_g) s = max_sup(s, sup_of(*cp_->radiate_right()));
        if (has_g && !has_l) s = max_sup(s, sup_of(*cp_->radiate_left()));
        return s;
    }

    // Rank induced at a position approached by copies across an
    // omega^e-limit of the layout (e >= 1).
    RankValue elevate(std::uint64_t e) const {
        RankValue base = approach_rank(stack_sup());
        return rank_plus_finite(base, e - 1);
    }

    // Radiation of the product onto a point attached just above copies laid
    // out along the given (sub)layout.
    Radiation radiate_over_right(const Node* ly) const {
        if (ly->is_empty() || cp_->is_empty()) return std::nullopt;
        if (ly->greatest_point().has_value()) {
            if (cp_->greatest_point().has_value()) return std::nullopt;
            return Radiation(*cp_->radiate_right());
        }
        switch (ly->nk()) {
            case NodeKind::Ord: {
                const auto* o = static_cast<const OrdNode*>(ly);
                return Radiation(elevate(o->alpha_.last_exp().finite_value()));
            }
            case NodeKind::Zeta:
                return Radiation(elevate(1));
            case NodeKind::Eta:
                if (cp_->least_point().has_value() || cp_->greatest_point().has_value()) {
                    return Radiation(RankValue(std::nullopt));
                }
                return Radiation(approach_rank(cp_->rank_sup()));
            case NodeKind::Sum: {
                const auto* s = static_cast<const SumNode*>(ly);
                auto q = s->last_nonempty();
                if (!q.has_value()) return std::nullopt;
                return radiate_over_right(s->parts_[*q].get());
            }
            default:
                rules_incomplete("product layout tail of this shape");
        }
    }
    Radiation radiate_over_left(const Node* ly) const {
        if (ly->is_empty() || cp_->is_empty()) return std::nullopt;
        if (ly->least_point().has_value()) {
            if (cp_->least_point().has_value()) return std::nullopt;
            return Radiation(*cp_->radiate_left());
        }
        switch (ly->nk()) {
            case NodeKind::Zeta:
                return Radiation(elevate(1));
            case NodeKind::Eta:
                if (cp_->least_point().has_value() || cp_->greatest_point().has_value()) {
                    return Radiation(RankValue(std::nullopt));
                }
                return Radiation(approach_rank(cp_->rank_sup()));
            case NodeKind::Sum: {
                const auto* s = static_cast<const SumNode*>(ly);
                auto q = s->first_nonempty();
                if (!q.has_value()) return std::nullopt;
                return radiate_over_left(s->parts_[*q].get());
            }
            default:
                // Ordinal layouts always have a least point, handled above.
                rules_incomplete("product layout head of this shape");
        }
    }

    Radiation radiate_right() const override { return radiate_over_right(ly_.get()); }
    Radiation radiate_left() const override { return radiate_over_left(ly_.get()); }

    // Glue received by the least point of copy b from everything before it.
    Radiation glue_left(const Node* ly, std::uint64_t b) const {
        if (ly->ipred(b).has_value()) {
            if (cp_->greatest_point().has_value()) return std::nullopt;
            return Radiation(*cp_->radiate_right());
        }
        if (ly->least(b)) return std::nullopt;
        switch (ly->nk()) {
            case NodeKind::Ord: {
                const auto* o = static_cast<const OrdNode*>(ly);
                return Radiation(elevate(o->decode(b).last_exp().finite_value()));
            }
            case NodeKind::Eta:
                return Radiation(RankValue(std::nullopt));
            case NodeKind::Sum: {
                const auto* s = static_cast<const SumNode*>(ly);
                auto [p, l] = s->decode(b);
                if (!s->parts_[p]->least(l)) return glue_left(s->parts_[p].get(), l);
                auto q = s->prev_nonempty(p);
                if (!q.has_value()) return std::nullopt;
                return radiate_over_right(s->parts_[*q].get());
            }
            default:
                rules_incomplete("product layout with a limit of this shape");
        }
    }
    Radiation glue_right(const Node* ly, std::uint64_t b) const {
        if (ly->isucc(b).has_value()) {
            if (cp_->least_point().has_value()) return std::nullopt;
            return Radiation(*cp_->radiate_left());
        }
        if (ly->greatest(b)) return std::nullopt;
        switch (ly->nk()) {
            case NodeKind::Eta:
                return Radiation(RankValue(std::nullopt));
            case NodeKind::Sum: {
                const auto* s = static_cast<const SumNode*>(ly);
                auto [p, l] = s->decode(b);
                if (!s->parts_[p]->greatest(l)) return glue_right(s->parts_[p].get(), l);
                auto q = s->next_nonempty(p);
                if (!q.has_value()) return std::nullopt;
                return radiate_over_left(s->parts_[*q].get());
            }
            default:
                // Ordinal and integer layouts have no interior right limits.
                rules_incomplete("product layout with a right limit of this shape");
        }
    }

    RankValue rank(std::uint64_t n) const override {
        auto [a, b] = decode(n);
        RankValue r = cp_->rank(a);
        if (cp_->least(a)) {
            if (auto g = glue_left(ly_.get(), b)) r = rank_max(r, *g);
        }
        if (cp_->greatest(a)) {
            if (auto g = glue_right(ly_.get(), b)) r = rank_max(r, *g);
        }
        return r;
    }

    // Supremum of the glue over the layout's interior left limits.
    SupInfo left_limit_glue_sup(const Node* ly) const {
        switch (ly->nk()) {
            case NodeKind::Fin:
            case NodeKind::Zeta:
                return SupInfo{};
            case NodeKind::Ord: {
                const auto* o = static_cast<const OrdNode*>(ly);
                auto e = o->limit_exp_sup();
                if (!e.has_value()) return SupInfo{};
                return sup_of(elevate(*e));
            }
            case NodeKind::Eta:
                return sup_of(RankValue(std::nullopt));
            case NodeKind::Sum: {
                const auto* s = static_cast<const SumNode*>(ly);
                SupInfo acc;
                for (std::uint32_t p = 0; p < s->parts_.size(); ++p) {
                    const Node* child = s->parts_[p].get();
                    if (child->is_empty()) continue;
                    acc = max_sup(acc, left_limit_glue_sup(child));
                    auto q = s->prev_nonempty(p);
                    if (q.has_value() && child->least_point().has_value() &&
                        !s->parts_[*q]->greatest_point().has_value()) {
                        auto rad = radiate_over_right(s->parts_[*q].get());
                        if (rad.has_value()) acc = max_sup(acc, sup_of(*rad));
                    }
                }
                return acc;
            }
            case NodeKind::Prod:
                rules_incomplete("nested product layout");
        }
        return SupInfo{};
    }
    SupInfo right_limit_glue_sup(const Node* ly) const {
        switch (ly->nk()) {
            case NodeKind::Fin:
            case NodeKind::Zeta:
            case NodeKind::Ord:
                return SupInfo{};
            case NodeKind::Eta:
                return sup_of(RankValue(std::nullopt));
            case NodeKind::Sum: {
                const auto* s = static_cast<const SumNode*>(ly);
                SupInfo acc;
                for (std::uint32_t p = 0; p < s->parts_.size(); ++p) {
                    const Node* child = s->parts_[p].get();
                    if (child->is_empty()) continue;
                    acc = max_sup(acc, right_limit_glue_sup(child));
                    auto q = s->next_nonempty(p);
                    if (q.has_value() && child->greatest_point().has_value() &&
                        !s->parts_[*q]->least_point().has_value()) {
                        auto rad = radiate_over_left(s->parts_[*q].get());
                        if (rad.has_value()) acc = max_sup(acc, sup_of(*rad));
                    }
                }
                return acc;
            }
            case NodeKind::Prod:
                rules_incomplete("nested product layout");
        }
        return SupInfo{};
    }

    SupInfo rank_sup() const override {
        if (is_empty()) return SupInfo{};
        SupInfo acc = cp_->rank_sup();
        if (cp_->least_point().has_value()) {
            if (!cp_->greatest_point().has_value() && ly_->has_adjacent_pair()) {
                acc = max_sup(acc, sup_of(*cp_->radiate_right()));
            }
            acc = max_sup(acc, left_limit_glue_sup(ly_.get()));
        }
        if (cp_->greatest_point().has_value()) {
            if (!cp_->least_point().has_value() && ly_->has_adjacent_pair()) {
                acc = max_sup(acc, sup_of(*cp_->radiate_left()));
            }
            acc = max_sup(acc, right_limit_glue_sup(ly_.get()));
        }
        return acc;
    }

    // --- rank-drop rules ---

    // One copy's edge summary under the boundary glue its extreme points
    // receive at a given layout position; Bound carries a copy-local code.
    EdgeBound copy_edge_above(const Ordinal& a, const Radiation& gl,
                              const Radiation& gr) const {
        if (auto g = cp_->greatest_point()) {
            RankValue r = cp_->rank(*g);
            if (gr.has_value()) r = rank_max(r, *gr);
            if (rank_at_least(r, a)) return EdgeBound::bound(*g);
        }
        EdgeBound eb = cp_->clean_above(a);
        if (eb.kind != EdgeBound::Kind::Clean) return eb;
        if (auto l = cp_->least_point()) {
            RankValue r = cp_->rank(*l);
            if (gl.has_value()) r = rank_max(r, *gl);
            if (rank_at_least(r, a)) return EdgeBound::bound(*l);
        }
        return EdgeBound::clean();
    }
    EdgeBound copy_edge_below(const Ordinal& a, const Radiation& gl,
                              const Radiation& gr) const {
        if (auto l = cp_->least_point()) {
            RankValue r = cp_->rank(*l);
            if (gl.has_value()) r = rank_max(r, *gl);
            if (rank_at_least(r, a)) return EdgeBound::bound(*l);
        }
        EdgeBound eb = cp_->clean_below(a);
        if (eb.kind != EdgeBound::Kind::Clean) return eb;
        if (auto g = cp_->greatest_point()) {
            RankValue r = cp_->rank(*g);
            if (gr.has_value()) r = rank_max(r, *gr);
            if (rank_at_least(r, a)) return EdgeBound::bound(*g);
        }
        return EdgeBound::clean();
    }
    // Whether the copy at an interior position (immediate neighbors on both
    // sides) holds any point of rank >= a.
    bool interior_copy_bad(const Ordinal& a) const {
        return copy_edge_below(a, cp_->radiate_right(), cp_->radiate_left()).kind !=
               EdgeBound::Kind::Clean;
    }

    EdgeBound visit_above(std::uint64_t pcode, const Ordinal& a) const {
        EdgeBound e = copy_edge_above(a, glue_left(ly_.get(), pcode),
                                      glue_right(ly_.get(), pcode));
        if (e.kind == EdgeBound::Kind::Bound) return EdgeBound::bound(encode(e.at, pcode));
        return e;
    }
    EdgeBound visit_below(std::uint64_t pcode, const Ordinal& a) const {
        EdgeBound e = copy_edge_below(a, glue_left(ly_.get(), pcode),
                                      glue_right(ly_.get(), pcode));
        if (e.kind == EdgeBound::Kind::Bound) return EdgeBound::bound(encode(e.at, pcode));
        return e;
    }

    std::uint64_t copy_low_mark(std::uint64_t pcode) const {
        auto l = cp_->least_point();
        return encode(l.has_value() ? *l : 0, pcode);
    }
    std::uint64_t copy_high_mark(std::uint64_t pcode) const {
        auto g = cp_->greatest_point();
        return encode(g.has_value() ? *g : 0, pcode);
    }

    static EdgeBound resolve_cofinal(const std::optional<std::uint64_t>& sep) {
        if (sep.has_value()) return EdgeBound::bound(*sep);
        return EdgeBound::cofinal();
    }

    // Least e >= 1 for which an omega^e layout limit glues rank >= a onto a
    // copy least point; disengaged when copies have no least point or no
    // finite elevation reaches a.
    std::optional<std::uint64_t> limit_glue_threshold(const Ordinal& a) const {
        if (!cp_->least_point().has_value()) return std::nullopt;
        RankValue base = approach_rank(stack_sup());
        if (!base.has_value()) return 1;
        if (a <= *base) return 1;
        auto d = left_subtract(*base, a);
        if (!d.has_value() || !d->is_finite()) return std::nullopt;
        return d->finite_value() + 1;
    }

    // Highest point with rank >= a among the copies at layout positions
    // strictly below `below` (from the top edge when disengaged).
    EdgeBound pos_scan_high(std::optional<std::uint64_t> below, const Ordinal& a,
                            std::optional<std::uint64_t> sep) const {
        if (cp_->is_empty() || ly_->is_empty()) return EdgeBound::clean();
        switch (ly_->nk()) {
            case NodeKind::Fin: {
                const std::uint64_t m = static_cast<const FinNode*>(ly_.get())->n_;
                std::uint64_t p = below.has_value() ? *below : m;
                while (p-- > 0) {
                    EdgeBound r = visit_above(p, a);
                    if (r.kind == EdgeBound::Kind::Bound) return r;
                    if (r.kind == EdgeBound::Kind::Cofinal) return resolve_cofinal(sep);
                    if (p >= 2 && p + 2 <= m) {
                        // Interior positions share one glue profile; jump them.
                        sep = copy_low_mark(1);
                        p = 1;
                    } else {
                        sep = copy_low_mark(p);
                    }
                }
                return EdgeBound::clean();
            }
            case NodeKind::Zeta: {
                if (below.has_value()) {
                    const std::int64_t v = unzigzag_code(*below);
                    EdgeBound r = visit_above(zigzag_code(v - 1), a);
                    if (r.kind == EdgeBound::Kind::Bound) return r;
                    if (r.kind == EdgeBound::Kind::Cofinal) return resolve_cofinal(sep);
                    return EdgeBound::clean();
                }
                EdgeBound r = visit_above(zigzag_code(0), a);
                if (r.kind == EdgeBound::Kind::Clean) return EdgeBound::clean();
                return resolve_cofinal(sep);
            }
            case NodeKind::Eta: {
                EdgeBound r = visit_above(below.value_or(0), a);
                if (r.kind == EdgeBound::Kind::Clean) return EdgeBound::clean();
                return resolve_cofinal(sep);
            }
            case NodeKind::Ord: {
                const auto* o = static_cast<const OrdNode*>(ly_.get());
                const bool sbad = interior_copy_bad(a);
                auto te = limit_glue_threshold(a);
                Ordinal d = below.has_value() ? o->decode(*below) : o->alpha_;
                while (true) {
                    if (d.is_zero()) return EdgeBound::clean();
                    if (sbad) {
                        if (d.is_limit()) return resolve_cofinal(sep);
                        const Ordinal c = d.pred();
                        EdgeBound r = visit_above(o->encode(c), a);
                        if (r.kind == EdgeBound::Kind::Bound) return r;
                        if (r.kind == EdgeBound::Kind::Cofinal) return resolve_cofinal(sep);
                        if (c.is_zero()) return EdgeBound::clean();
                        if (c.succ() < o->alpha_) {
                            throw std::logic_error("rank drop: inconsistent layout scan");
                        }
                        // c is the clean top position; keep searching below it.
                        sep = copy_low_mark(o->encode(c));
                        d = c;
                        continue;
                    }
                    if (!te.has_value()) return EdgeBound::clean();
                    auto ls = largest_limit_below(d, Ordinal(*te));
                    if (ls.kind == OrdSearch::Kind::None) return EdgeBound::clean();
                    if (ls.kind == OrdSearch::Kind::Cofinal) return resolve_cofinal(sep);
                    EdgeBound r = visit_above(o->encode(ls.at), a);
                    if (r.kind == EdgeBound::Kind::Bound) return r;
                    throw std::logic_error("rank drop: expected a glued limit copy");
                }
            }
            default:
                rules_incomplete("rank drop across a composite product layout");
        }
    }
    // Mirror: lowest such point among copies strictly above `above` (from
    // the bottom edge when disengaged).
    EdgeBound pos_scan_low(std::optional<std::uint64_t> above, const Ordinal& a,
                           std::optional<std::uint64_t> sep) const {
        if (cp_->is_empty() || ly_->is_empty()) return EdgeBound::clean();
        switch (ly_->nk()) {
            case NodeKind::Fin: {
                const std::uint64_t m = static_cast<const FinNode*>(ly_.get())->n_;
                for (std::uint64_t p = above.has_value() ? *above + 1 : 0; p < m; ++p) {
                    EdgeBound r = visit_below(p, a);
                    if (r.kind == EdgeBound::Kind::Bound) return r;
                    if (r.kind == EdgeBound::Kind::Cofinal) return resolve_cofinal(sep);
                    if (p >= 1 && p + 3 <= m) {
                        sep = copy_high_mark(m - 2);
                        p = m - 2;
                    } else {
                        sep = copy_high_mark(p);
                    }
                }
                return EdgeBound::clean();
            }
            case NodeKind::Zeta: {
                if (above.has_value()) {
                    const std::int64_t v = unzigzag_code(*above);
                    EdgeBound r = visit_below(zigzag_code(v + 1), a);
                    if (r.kind == EdgeBound::Kind::Bound) return r;
                    if (r.kind == EdgeBound::Kind::Cofinal) return resolve_cofinal(sep);
                    return EdgeBound::clean();
                }
                EdgeBound r = visit_below(zigzag_code(0), a);
                if (r.kind == EdgeBound::Kind::Clean) return EdgeBound::clean();
                return resolve_cofinal(sep);
            }
            case NodeKind::Eta: {
                EdgeBound r = visit_below(above.value_or(0), a);
                if (r.kind == EdgeBound::Kind::Clean) return EdgeBound::clean();
                return resolve_cofinal(sep);
            }
            case NodeKind::Ord: {
                const auto* o = static_cast<const OrdNode*>(ly_.get());
                const bool sbad = interior_copy_bad(a);
                auto te = limit_glue_threshold(a);
                Ordinal d;
                if (above.has_value()) {
                    d = o->decode(*above);
                } else {
                    EdgeBound r = visit_below(o->encode(Ordinal()), a);
                    if (r.kind == EdgeBound::Kind::Bound) return r;
                    if (r.kind == EdgeBound::Kind::Cofinal) return resolve_cofinal(sep);
                    sep = copy_high_mark(o->encode(Ordinal()));
                }
                if (sbad) {
                    const Ordinal nxt = d.succ();
                    if (!(nxt < o->alpha_)) return EdgeBound::clean();
                    EdgeBound r = visit_below(o->encode(nxt), a);
                    if (r.kind == EdgeBound::Kind::Bound) return r;
                    if (r.kind == EdgeBound::Kind::Cofinal) return resolve_cofinal(sep);
                    if (nxt.succ() < o->alpha_) {
                        throw std::logic_error("rank drop: inconsistent layout scan");
                    }
                    return EdgeBound::clean();  // the top position alone, and clean
                }
                if (!te.has_value()) return EdgeBound::clean();
                const Ordinal g = strip_small_terms(d, Ordinal(*te)) +
                                  Ordinal::omega_pow(Ordinal(*te));
                if (!(g < o->alpha_)) return EdgeBound::clean();
                EdgeBound r = visit_below(o->encode(g), a);
                if (r.kind == EdgeBound::Kind::Bound) return r;
                throw std::logic_error("rank drop: expected a glued limit copy");
            }
            default:
                rules_incomplete("rank drop across a composite product layout");
        }
    }

    std::optional<std::uint64_t> drop_left(std::uint64_t n, const Ordinal& a) const override {
        auto [al, b] = decode(n);
        if (auto p = cp_->drop_left(al, a)) return encode(*p, b);
        auto lp = cp_->least_point();
        if (lp.has_value() && *lp != al) {
            if (auto gl = glue_left(ly_.get(), b)) {
                if (rank_at_least(*gl, a)) return encode(*lp, b);
            }
        }
        std::optional<std::uint64_t> sep;
        if (lp.has_value() && *lp != al) {
            sep = encode(*lp, b);
        } else if (auto ip = cp_->ipred(al)) {
            sep = encode(*ip, b);
        } else if (!lp.has_value()) {
            if (auto sp = some_point_below(*cp_, al)) sep = encode(*sp, b);
        }
        EdgeBound eb = pos_scan_high(b, a, sep);
        if (eb.kind == EdgeBound::Kind::Clean) return std::nullopt;
        if (eb.kind == EdgeBound::Kind::Bound) return eb.at;
        throw std::logic_error("rank drop: cofinal high ranks beside a finite-rank point");
    }
    std::optional<std::uint64_t> drop_right(std::uint64_t n, const Ordinal& a) const override {
        auto [al, b] = decode(n);
        if (auto p = cp_->drop_right(al, a)) return encode(*p, b);
        auto gp = cp_->greatest_point();
        if (gp.has_value() && *gp != al) {
            if (auto gr = glue_right(ly_.get(), b)) {
                if (rank_at_least(*gr, a)) return encode(*gp, b);
            }
        }
        std::optional<std::uint64_t> sep;
        if (gp.has_value() && *gp != al) {
            sep = encode(*gp, b);
        } else if (auto is = cp_->isucc(al)) {
            sep = encode(*is, b);
        } else if (!gp.has_value()) {
            if (auto sp = some_point_above(*cp_, al)) sep = encode(*sp, b);
        }
        EdgeBound eb = pos_scan_low(b, a, sep);
        if (eb.kind == EdgeBound::Kind::Clean) return std::nullopt;
        if (eb.kind == EdgeBound::Kind::Bound) return eb.at;
        throw std::logic_error("rank drop: cofinal high ranks beside a finite-rank point");
    }
    EdgeBound clean_above(const Ordinal& a) const override {
        if (is_empty()) return EdgeBound::clean();
        return pos_scan_high(std::nullopt, a, std::nullopt);
    }
    EdgeBound clean_below(const Ordinal& a) const override {
        if (is_empty()) return EdgeBound::clean();
        return pos_scan_low(std::nullopt, a, std::nullopt);
    }
};

// ---------------------------------------------------------------------------
// Term evaluation
// ---------------------------------------------------------------------------

NodePtr build_node(const OrderTerm& t) {
    switch (t.kind) {
        case OrderKind::Finite:
            return std::make_unique<FinNode>(t.finite_size);
        case OrderKind::Ordinal:
            return std::make_unique<OrdNode>(t.alpha);
        case OrderKind::Integers:
            return std::make_unique<ZetaNode>();
        case OrderKind::Dense:
            return std::make_unique<EtaNode>();
        case OrderKind::Sum: {
            std::vector<NodePtr> parts;
            parts.reserve(t.parts.size());
            for (const auto& p : t.parts) parts.push_back(build_node(p));
            return std::make_unique<SumNode>(std::move(parts));
        }
        case OrderKind::Product:
            return std::make_unique<ProdNode>(build_node(t.parts[0]), build_node(t.parts[1]));
    }
    throw std::logic_error("order term: unknown kind");
}

class TermOrder : public ConcreteOrder {
public:
    explicit TermOrder(const OrderTerm& t) : text_(csctop::to_string(t)), root_(build_node(t)) {}

    std::string describe() const override { return text_; }
    std::optional<std::uint64_t> size() const override { return root_->size(); }
    bool less(Point a, Point b) const override {
        std::lock_guard<std::mutex> lock(mu_);
        return root_->cmp(a, b) < 0;
    }
    bool is_least(Point x) const override {
        std::lock_guard<std::mutex> lock(mu_);
        return root_->least(x);
    }
    bool is_greatest(Point x) const override {
        std::lock_guard<std::mutex> lock(mu_);
        return root_->greatest(x);
    }
    std::optional<Point> immediate_pred(Point x) const override {
        std::lock_guard<std::mutex> lock(mu_);
        return root_->ipred(x);
    }
    std::optional<Point> immediate_succ(Point x) const override {
        std::lock_guard<std::mutex> lock(mu_);
        return root_->isucc(x);
    }
    bool finitely_apart(Point a, Point b) const override {
        std::lock_guard<std::mutex> lock(mu_);
        if (a == b) return true;
        return root_->fin_apart(a, b);
    }
    bool has_rank_oracle() const override { return root_->rank_supported(); }
    RankValue point_rank(Point x) const override {
        std::lock_guard<std::mutex> lock(mu_);
        if (!root_->rank_supported()) {
            rules_incomplete("per-point ranks for " + text_);
        }
        return root_->rank(x);
    }
    std::optional<std::pair<std::optional<Point>, std::optional<Point>>>
    rank_drop_bounds(Point x) const override {
        std::lock_guard<std::mutex> lock(mu_);
        if (!root_->rank_supported()) {
            rules_incomplete("rank-drop bounds for " + text_);
        }
        RankValue r = root_->rank(x);
        if (!r.has_value()) return std::nullopt;
        return std::make_pair(root_->drop_left(x, *r), root_->drop_right(x, *r));
    }

    const Node* root() const { return root_.get(); }

private:
    std::string text_;
    NodePtr root_;
    mutable std::mutex mu_;
};

} // namespace

OrderPtr eval_term(const OrderTerm& t) { return std::make_shared<TermOrder>(t); }

std::optional<std::pair<std::optional<Point>, std::optional<Point>>>
ConcreteOrder::rank_drop_bounds(Point) const {
    rules_incomplete("rank-drop bounds for " + describe());
}

// ---------------------------------------------------------------------------
// Interval topology
// ---------------------------------------------------------------------------

namespace {

struct IntervalBound {
    int type = 0;  // -1 below everything, 0 a point, +1 above everything
    Point p = 0;
};

} // namespace

struct IntervalSpace::Impl {
    OrderPtr ord;
    std::optional<std::uint64_t> osize;

    struct Row {
        IntervalBound l, r;
        std::optional<Point> owner;
    };

    mutable std::mutex mu;
    mutable std::vector<Row> rows;
    mutable std::vector<char> dirty;
    mutable std::deque<Point> fifo;
    mutable std::vector<std::vector<BasisIndex>> halos;
    mutable std::map<std::tuple<int, Point, int, Point>, BasisIndex> exact;
    mutable std::uint64_t spare = 0;

    explicit Impl(OrderPtr o) : ord(std::move(o)), osize(ord->size()) {}

    static std::tuple<int, Point, int, Point> key(const IntervalBound& l, const IntervalBound& r) {
        return {l.type, l.type == 0 ? l.p : 0, r.type, r.type == 0 ? r.p : 0};
    }

    int bcmp(const IntervalBound& a, const IntervalBound& b) const {
        if (a.type != b.type) return a.type < b.type ? -1 : 1;
        if (a.type != 0) return 0;
        if (a.p == b.p) return 0;
        return ord->less(a.p, b.p) ? -1 : 1;
    }
    bool inside(const Row& row, Point x) const {
        const IntervalBound px{0, x};
        return bcmp(row.l, px) < 0 && bcmp(px, row.r) < 0;
    }

    std::uint64_t prefix_at(std::uint64_t n) const {
        const std::uint64_t want = n + 1;
        if (osize.has_value()) return std::min<std::uint64_t>(want, *osize);
        return want;
    }

    Row halo_of(Point t, std::uint64_t prefix) const {
        Row row;
        row.owner = t;
        row.l = IntervalBound{-1, 0};
        row.r = IntervalBound{+1, 0};
        bool have_l = false, have_r = false;
        for (Point p = 0; p < prefix; ++p) {
            if (p == t) continue;
            if (ord->less(p, t)) {
                if (!have_l || ord->less(row.l.p, p)) {
                    row.l = IntervalBound{0, p};
                    have_l = true;
                }
            } else if (ord->less(t, p)) {
                if (!have_r || ord->less(p, row.r.p)) {
                    row.r = IntervalBound{0, p};
                    have_r = true;
                }
            }
        }
        return row;
    }

    void emit(const Row& row) const {
        const BasisIndex idx = rows.size();
        rows.push_back(row);
        if (row.owner.has_value()) {
            if (halos.size() <= *row.owner) halos.resize(*row.owner + 1);
            halos[*row.owner].push_back(idx);
        }
        exact.emplace(key(row.l, row.r), idx);
    }

    void step() const {
        const std::uint64_t n = rows.size();
        const std::uint64_t avail = prefix_at(n);
        if (avail == 0) {
            emit(Row{IntervalBound{-1, 0}, IntervalBound{+1, 0}, std::nullopt});
            return;
        }
        // The point revealed at this step may invade previously emitted
        // neighborhoods; their owners then queue for a refresh.
        if (!osize.has_value() || n < *osize) {
            const Point m = n;
            for (Point o = 0; o < halos.size(); ++o) {
                if (o == m || halos[o].empty() || dirty.size() <= o || dirty[o]) continue;
                if (inside(rows[halos[o].back()], m)) {
                    dirty[o] = 1;
                    fifo.push_back(o);
                }
            }
        }
        if (dirty.size() < avail) dirty.resize(avail, 0);

        if (n == 0) {
            emit(Row{IntervalBound{-1, 0}, IntervalBound{+1, 0}, std::nullopt});
            return;
        }
        if (n % 3 != 0) {
            std::uint64_t s = 2 * ((n - 1) / 3) + (n % 3 == 2 ? 1 : 0);
            const Point t = s % avail;
            Row row = halo_of(t, avail);
            if (dirty.size() > t) dirty[t] = 0;
            emit(row);
            return;
        }
        while (!fifo.empty()) {
            const Point x = fifo.front();
            fifo.pop_front();
            if (dirty.size() > x && dirty[x]) {
                dirty[x] = 0;
                emit(halo_of(x, avail));
                return;
            }
        }
        const std::uint64_t c = spare++;
        const Point t = (c / 2) % avail;
        Row row;
        row.owner = std::nullopt;
        if (c % 2 == 0) {
            row.l = IntervalBound{-1, 0};
            row.r = IntervalBound{0, t};
        } else {
            row.l = IntervalBound{0, t};
            row.r = IntervalBound{+1, 0};
        }
        emit(row);
    }

    void ensure(std::uint64_t i) const {
        while (rows.size() <= i) {
            if (rows.size() > (1u << 21)) {
                throw std::logic_error("interval basis: row growth cap exceeded");
            }
            step();
        }
    }
};

IntervalSpace::IntervalSpace(OrderPtr order) : impl_(std::make_unique<Impl>(std::move(order))) {}
IntervalSpace::~IntervalSpace() = default;

std::string IntervalSpace::describe() const {
    return "interval topology of " + impl_->ord->describe();
}

std::optional<std::uint64_t> IntervalSpace::point_count() const { return impl_->osize; }

Point IntervalSpace::point_at(std::uint64_t n) const {
    if (impl_->osize.has_value() && n >= *impl_->osize) {
        throw std::out_of_range("interval topology: past the end of a finite order");
    }
    return n;
}

bool IntervalSpace::contains(Point x) const {
    return !impl_->osize.has_value() || x < *impl_->osize;
}

bool IntervalSpace::member(BasisIndex i, Point x) const {
    std::lock_guard<std::mutex> lock(impl_->mu);
    if (!(!impl_->osize.has_value() || x < *impl_->osize)) return false;
    impl_->ensure(i);
    return impl_->inside(impl_->rows[i], x);
}

BasisIndex IntervalSpace::k(BasisIndex i, BasisIndex j, Point x) const {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto& im = *impl_;
    im.ensure(i);
    im.ensure(j);
    const auto& A = im.rows[i];
    const auto& B = im.rows[j];
    const IntervalBound L = im.bcmp(A.l, B.l) >= 0 ? A.l : B.l;
    const IntervalBound R = im.bcmp(A.r, B.r) <= 0 ? A.r : B.r;
    const IntervalBound px{0, x};
    if (!(im.bcmp(L, px) < 0 && im.bcmp(px, R) < 0)) {
        throw std::invalid_argument("interval topology: k needs a point inside both basic sets");
    }
    auto hit = im.exact.find(Impl::key(L, R));
    if (hit != im.exact.end()) return hit->second;
    auto qualifies = [&](const Impl::Row& row) {
        return im.bcmp(row.l, L) >= 0 && im.bcmp(row.r, R) <= 0;
    };
    if (im.halos.size() > x) {
        for (BasisIndex idx : im.halos[x]) {
            if (qualifies(im.rows[idx])) return idx;
        }
    }
    // Grow the basis until a late enough neighborhood of x appears; the
    // refresh queue guarantees one once both cut points are enumerated.
    while (true) {
        if (im.rows.size() > (1u << 21)) {
            throw std::logic_error("interval basis: k search cap exceeded");
        }
        const BasisIndex idx = im.rows.size();
        im.step();
        const auto& row = im.rows[idx];
        if (row.owner.has_value() && *row.owner == x && qualifies(row)) return idx;
    }
}

BasisIndex IntervalSpace::cover_witness(Point) const {
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->ensure(0);
    return 0;
}

IsolationAnswer IntervalSpace::exact_isolated(Point x) const {
    auto& im = *impl_;
    const auto ip = im.ord->immediate_pred(x);
    const auto is = im.ord->immediate_succ(x);
    const bool left_ok = ip.has_value() || im.ord->is_least(x);
    const bool right_ok = is.has_value() || im.ord->is_greatest(x);
    if (!left_ok || !right_ok) return IsolationAnswer{Ternary::No, std::nullopt};

    std::lock_guard<std::mutex> lock(im.mu);
    IntervalBound wl = ip.has_value() ? IntervalBound{0, *ip} : IntervalBound{-1, 0};
    IntervalBound wr = is.has_value() ? IntervalBound{0, *is} : IntervalBound{+1, 0};
    auto hit = im.exact.find(Impl::key(wl, wr));
    if (hit != im.exact.end()) return IsolationAnswer{Ternary::Yes, hit->second};
    while (true) {
        if (im.rows.size() > (1u << 21)) {
            throw std::logic_error("interval basis: isolation witness cap exceeded");
        }
        const BasisIndex idx = im.rows.size();
        im.step();
        const auto& row = im.rows[idx];
        if (im.bcmp(row.l, wl) == 0 && im.bcmp(row.r, wr) == 0) {
            return IsolationAnswer{Ternary::Yes, idx};
        }
    }
}

const ConcreteOrder& IntervalSpace::order() const { return *impl_->ord; }

IntervalRowView IntervalSpace::row_bounds(BasisIndex i) const {
    std::lock_guard<std::mutex> lock(impl_->mu);
    impl_->ensure(i);
    const auto& row = impl_->rows[i];
    IntervalRowView v;
    v.left_unbounded = row.l.type < 0;
    v.left = row.l.type == 0 ? row.l.p : 0;
    v.right_unbounded = row.r.type > 0;
    v.right = row.r.type == 0 ? row.r.p : 0;
    v.owner = row.owner;
    return v;
}

std::shared_ptr<const IntervalSpace> interval_topology(OrderPtr order) {
    return std::make_shared<IntervalSpace>(std::move(order));
}

// ---------------------------------------------------------------------------
// Symbolic ranks
// ---------------------------------------------------------------------------

RankValue rk_symbolic(const OrderTerm& t) {
    const auto order = std::make_shared<TermOrder>(t);
    if (!order->has_rank_oracle()) {
        rules_incomplete("whole-order rank for " + to_string(t));
    }
    const SupInfo s = order->root()->rank_sup();
    if (!s.some) return RankValue(Ordinal());
    return s.sup;
}

namespace {

bool term_empty(const OrderTerm& t) {
    switch (t.kind) {
        case OrderKind::Finite: return t.finite_size == 0;
        case OrderKind::Ordinal: return t.alpha.is_zero();
        case OrderKind::Integers:
        case OrderKind::Dense: return false;
        case OrderKind::Sum: {
            for (const auto& p : t.parts) {
                if (!term_empty(p)) return false;
            }
            return true;
        }
        case OrderKind::Product:
            return term_empty(t.parts[0]) || term_empty(t.parts[1]);
    }
    return false;
}

Ordinal hausdorff_of(const OrderTerm& t) {
    if (term_empty(t)) return Ordinal();
    switch (t.kind) {
        case OrderKind::Finite: return Ordinal();
        case OrderKind::Ordinal: return t.alpha.lead_exp();
        case OrderKind::Integers: return Ordinal(1);
        case OrderKind::Dense:
            throw NotScattered("no condensation rank: the order embeds a dense suborder");
        case OrderKind::Sum: {
            Ordinal best;
            for (const auto& p : t.parts) {
                const Ordinal h = hausdorff_of(p);
                if (best < h) best = h;
            }
            return best;
        }
        case OrderKind::Product:
            return hausdorff_of(t.parts[0]) + hausdorff_of(t.parts[1]);
    }
    throw std::logic_error("order term: unknown kind");
}

} // namespace

RankValue hausdorff_rank_symbolic(const OrderTerm& t) {
    return RankValue(hausdorff_of(t));
}

// ---------------------------------------------------------------------------
// Limit probing
// ---------------------------------------------------------------------------

bool alpha_limit(const ConcreteOrder& L, Point x, const Ordinal& alpha,
                 const LimitProbe& probe) {
    const auto sz = L.size();
    if (sz.has_value() && x >= *sz) {
        throw std::out_of_range("alpha-limit: point index out of range");
    }
    if (alpha.is_zero()) return true;
    if (probe.use_rank_oracle && L.has_rank_oracle()) {
        const RankValue r = L.point_rank(x);
        return !r.has_value() || alpha <= *r;
    }
    if (!alpha.is_finite() || alpha.finite_value() > 3) {
        throw std::invalid_argument(
            "alpha-limit: the bounded search only supports alpha <= 3 (no rank oracle)");
    }
    const std::uint64_t level = alpha.finite_value();
    const std::uint64_t npts =
        sz.has_value() ? std::min<std::uint64_t>(*sz, probe.point_bound) : probe.point_bound;
    const std::uint64_t nsearch =
        sz.has_value() ? std::min<std::uint64_t>(*sz, probe.search_bound) : probe.search_bound;

    // The query point is probed against bounds from the presented window;
    // recursive witnesses, which may sit past that window, are probed
    // against bounds from the whole search region so that a witness cannot
    // be certified merely because the window stops short of it.
    std::map<std::pair<Point, std::uint64_t>, bool> memo;
    std::function<bool(Point, std::uint64_t, std::uint64_t)> lim =
        [&](Point p, std::uint64_t lv, std::uint64_t bound_window) -> bool {
        const bool cacheable = bound_window == nsearch;
        if (lv == 0) return true;
        if (cacheable) {
            auto it = memo.find({p, lv});
            if (it != memo.end()) return it->second;
        }
        const bool left_base = !L.is_least(p) && !L.immediate_pred(p).has_value();
        const bool right_base = !L.is_greatest(p) && !L.immediate_succ(p).has_value();
        bool ok = false;
        if (lv == 1) {
            ok = left_base || right_base;
        } else {
            auto side = [&](bool base, bool left) {
                if (!base) return false;
                bool any_bound = false;
                for (Point bnd = 0; bnd < bound_window; ++bnd) {
                    if (bnd == p) continue;
                    const bool below = L.less(bnd, p);
                    if (below != left) continue;
                    any_bound = true;
                    bool found = false;
                    for (Point y = 0; y < nsearch && !found; ++y) {
                        if (y == p || y == bnd) continue;
                        const bool between = left ? (L.less(bnd, y) && L.less(y, p))
                                                  : (L.less(p, y) && L.less(y, bnd));
                        if (between && lim(y, lv - 1, nsearch)) found = true;
                    }
                    if (!found) return false;
                }
                return any_bound;
            };
            ok = side(left_base, true) || side(right_base, false);
        }
        if (cacheable) memo[{p, lv}] = ok;
        return ok;
    };
    return lim(x, level, npts);
}

// ---------------------------------------------------------------------------
// Derivative steps
// ---------------------------------------------------------------------------

CbStepReport cb_step(const SpacePresentation& pres,
                     const std::function<IsolationAnswer(Point)>& certified_isolated) {
    CbStepReport rep;
    std::vector<bool> drop(pres.points.size(), false);
    for (std::size_t idx = 0; idx < pres.points.size(); ++idx) {
        if (certified_isolated(pres.points[idx]).verdict == Ternary::Yes) {
            drop[idx] = true;
            rep.removed.push_back(pres.points[idx]);
        }
    }
    std::sort(rep.removed.begin(), rep.removed.end());
    rep.next.basis_bound = pres.basis_bound;
    rep.next.provenance = pres.provenance;
    rep.next.derivative_stage = pres.derivative_stage + 1;
    for (std::size_t idx = 0; idx < pres.points.size(); ++idx) {
        if (!drop[idx]) rep.next.points.push_back(pres.points[idx]);
    }
    rep.next.rows.reserve(pres.rows.size());
    for (const auto& row : pres.rows) {
        std::vector<bool> kept;
        kept.reserve(rep.next.points.size());
        for (std::size_t idx = 0; idx < pres.points.size(); ++idx) {
            if (!drop[idx]) kept.push_back(row[idx]);
        }
        rep.next.rows.push_back(std::move(kept));
    }
    rep.stalled = rep.removed.empty() && !pres.points.empty();
    std::ostringstream os;
    os << "derivative stage " << pres.derivative_stage << ": removed " << rep.removed.size()
       << " of " << pres.points.size() << " points";
    if (rep.stalled) os << " (stalled: no certified isolated points)";
    rep.detail = os.str();
    return rep;
}

CbStepReport cb_order_step(const ConcreteOrder& L, const SpacePresentation& pres) {
    const Ordinal stage(static_cast<std::uint64_t>(pres.derivative_stage));
    return cb_step(pres, [&](Point p) {
        const RankValue r = L.point_rank(p);
        if (r.has_value() && *r <= stage) return IsolationAnswer{Ternary::Yes, std::nullopt};
        return IsolationAnswer{Ternary::No, std::nullopt};
    });
}

CbRankReport cb_rank_by_steps(const ConcreteOrder& L, const CscSpace& topology,
                              std::uint64_t N, std::uint64_t M) {
    CbRankReport rep;
    SpacePresentation pres = truncate(topology, N, M);
    const std::uint64_t max_steps = pres.points.size() + 2;
    while (true) {
        if (pres.points.empty()) {
            rep.emptied = true;
            rep.rank = RankValue(Ordinal(rep.steps == 0 ? 0 : rep.steps - 1));
            std::ostringstream os;
            os << "window emptied after " << rep.steps << " derivative steps";
            rep.detail = os.str();
            return rep;
        }
        if (rep.steps > max_steps) {
            throw std::logic_error("derivative iteration: step cap exceeded");
        }
        CbStepReport step = cb_order_step(L, pres);
        if (step.stalled) {
            rep.stalled = true;
            rep.detail = step.detail;
            return rep;
        }
        rep.removed_per_step.push_back(step.removed.size());
        pres = std::move(step.next);
        ++rep.steps;
    }
}

// ---------------------------------------------------------------------------
// Condensation
// ---------------------------------------------------------------------------

std::vector<std::vector<Point>> condense_finite(const ConcreteOrder& L,
                                                std::uint64_t point_bound) {
    const auto sz = L.size();
    const std::uint64_t n =
        sz.has_value() ? std::min<std::uint64_t>(*sz, point_bound) : point_bound;
    std::vector<Point> pts;
    pts.reserve(n);
    for (Point p = 0; p < n; ++p) pts.push_back(p);
    std::sort(pts.begin(), pts.end(), [&](Point a, Point b) { return L.less(a, b); });
    std::vector<std::vector<Point>> classes;
    for (Point p : pts) {
        if (!classes.empty() && L.finitely_apart(classes.back().back(), p)) {
            classes.back().push_back(p);
        } else {
            classes.push_back({p});
        }
    }
    return classes;
}

} // namespace csctop
