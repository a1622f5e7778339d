#include "csctop/choquet.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace csctop {

namespace {

// Bounded scans that look for witness points by code enumeration.
constexpr std::uint64_t kScanCap = std::uint64_t{1} << 16;

[[noreturn]] void turn_error(const char* msg) { throw std::logic_error(msg); }

[[noreturn]] void illegal(const std::string& msg) {
    throw std::invalid_argument(msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// Interval algebra
// ---------------------------------------------------------------------------

std::string interval_text(const OpenInterval& iv) {
    std::string out = "(";
    out += iv.left.has_value() ? std::to_string(*iv.left) : std::string("-inf");
    out += ",";
    out += iv.right.has_value() ? std::to_string(*iv.right) : std::string("+inf");
    out += ")";
    return out;
}

bool interval_contains(const ConcreteOrder& ord, const OpenInterval& iv, Point x) {
    if (iv.left.has_value() && !ord.less(*iv.left, x)) return false;
    if (iv.right.has_value() && !ord.less(x, *iv.right)) return false;
    return true;
}

bool interval_empty(const ConcreteOrder& ord, const OpenInterval& iv) {
    if (iv.left.has_value() && iv.right.has_value()) {
        if (!ord.less(*iv.left, *iv.right)) return true;
        std::optional<Point> succ = ord.immediate_succ(*iv.left);
        return succ.has_value() && *succ == *iv.right;
    }
    if (iv.left.has_value()) return ord.is_greatest(*iv.left);
    if (iv.right.has_value()) return ord.is_least(*iv.right);
    std::optional<std::uint64_t> n = ord.size();
    return n.has_value() && *n == 0;
}

bool interval_subset(const ConcreteOrder& ord, const OpenInterval& inner,
                     const OpenInterval& outer) {
    if (outer.left.has_value()) {
        if (!inner.left.has_value()) return false;
        if (*inner.left != *outer.left && !ord.less(*outer.left, *inner.left)) {
            return false;
        }
    }
    if (outer.right.has_value()) {
        if (!inner.right.has_value()) return false;
        if (*inner.right != *outer.right && !ord.less(*inner.right, *outer.right)) {
            return false;
        }
    }
    return true;
}

OpenInterval interval_meet(const ConcreteOrder& ord, const OpenInterval& a,
                           const OpenInterval& b) {
    OpenInterval out;
    if (a.left.has_value() && b.left.has_value()) {
        out.left = ord.less(*a.left, *b.left) ? *b.left : *a.left;
    } else {
        out.left = a.left.has_value() ? a.left : b.left;
    }
    if (a.right.has_value() && b.right.has_value()) {
        out.right = ord.less(*a.right, *b.right) ? *a.right : *b.right;
    } else {
        out.right = a.right.has_value() ? a.right : b.right;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Rank-drop intervals
// ---------------------------------------------------------------------------

OpenInterval rank_drop_interval(const ConcreteOrder& ord, Point x) {
    auto bounds = ord.rank_drop_bounds(x);
    if (!bounds.has_value()) {
        throw NoDropInterval("no rank-drop interval in " + ord.describe() +
                             " around point " + std::to_string(x) +
                             ": the point has infinite rank");
    }
    OpenInterval iv;
    iv.left = bounds->first;
    iv.right = bounds->second;
    return iv;
}

// ---------------------------------------------------------------------------
// The referee's move validation
// ---------------------------------------------------------------------------

void apply_move(GameState& s, const ChallengerMove& m) {
    if (!s.challenger_to_move()) turn_error("it is not the challenger's turn");
    const ConcreteOrder& ord = *s.order;
    if (interval_empty(ord, m.u)) illegal("challenger move: empty interval");
    if (!interval_contains(ord, m.u, m.x)) {
        illegal("challenger move: named point outside the interval");
    }
    const OpenInterval* prev = s.current_interval();
    if (prev != nullptr && !interval_subset(ord, m.u, *prev)) {
        illegal("challenger move: interval not nested in the previous reply");
    }
    s.challenger.push_back(m);
}

void apply_move(GameState& s, const DefenderMove& m) {
    if (s.challenger_to_move()) turn_error("it is not the defender's turn");
    const ConcreteOrder& ord = *s.order;
    if (interval_empty(ord, m.v)) illegal("defender move: empty interval");
    const ChallengerMove& last = s.challenger.back();
    if (!interval_contains(ord, m.v, last.x)) {
        illegal("defender move: the challenged point falls outside the reply");
    }
    if (!interval_subset(ord, m.v, last.u)) {
        illegal("defender move: reply not nested in the challenger's interval");
    }
    s.defender.push_back(m);
}

// ---------------------------------------------------------------------------
// Players
// ---------------------------------------------------------------------------

namespace {

class RankDefender final : public PlayerII {
public:
    DefenderMove move(const GameState& s) override {
        if (s.challenger_to_move() || s.challenger.empty()) {
            turn_error("rank defender consulted out of turn");
        }
        const ChallengerMove& last = s.challenger.back();
        OpenInterval drop = rank_drop_interval(*s.order, last.x);
        return {interval_meet(*s.order, last.u, drop)};
    }

    std::string describe() const override { return "rank defender"; }
};

// First code below the scan cap satisfying the predicate.
template <typename Pred>
std::optional<Point> first_code(const ConcreteOrder& ord, Pred&& pred) {
    std::uint64_t cap = kScanCap;
    if (std::optional<std::uint64_t> n = ord.size(); n.has_value()) {
        cap = std::min(cap, *n);
    }
    for (std::uint64_t c = 0; c < cap; ++c) {
        if (pred(static_cast<Point>(c))) return static_cast<Point>(c);
    }
    return std::nullopt;
}

class DiagonalChallenger final : public PlayerI {
public:
    explicit DiagonalChallenger(std::function<Point(std::size_t)> sigma)
        : sigma_(std::move(sigma)) {
        if (!sigma_) {
            sigma_ = [](std::size_t s) { return static_cast<Point>(s); };
        }
    }

    ChallengerMove move(const GameState& s) override {
        if (!s.challenger_to_move()) {
            turn_error("diagonal challenger consulted out of turn");
        }
        const ConcreteOrder& ord = *s.order;
        if (!ord.has_rank_oracle()) {
            turn_error("diagonal challenger needs a rank oracle to pick "
                       "infinite-rank points");
        }
        const std::size_t round = s.round();
        const Point target = sigma_(round);
        ChallengerMove m;
        if (round == 0) {
            x_ = pick_infinite(ord, nullptr, target);
            m.x = x_;
            if (ord.less(target, x_)) {
                m.u.left = target;
                m.u.right =
                    first_code(ord, [&](Point c) { return ord.less(x_, c); });
            } else {
                m.u.right = target;
                m.u.left =
                    first_code(ord, [&](Point c) { return ord.less(c, x_); });
            }
            return m;
        }
        const OpenInterval* prev = s.current_interval();
        if (target == x_) {
            x_ = pick_infinite(ord, prev, target);
        }
        m.x = x_;
        m.u = *prev;
        if (ord.less(target, x_)) {
            if (!m.u.left.has_value() || ord.less(*m.u.left, target)) {
                m.u.left = target;
            }
        } else {
            if (!m.u.right.has_value() || ord.less(target, *m.u.right)) {
                m.u.right = target;
            }
        }
        return m;
    }

    std::string describe() const override { return "diagonal challenger"; }

    std::optional<Point> excluded_target(std::size_t round) const override {
        return sigma_(round);
    }

private:
    // First infinite-rank point other than `avoid`, inside `within` when given.
    Point pick_infinite(const ConcreteOrder& ord, const OpenInterval* within,
                        Point avoid) const {
        std::optional<Point> found = first_code(ord, [&](Point c) {
            if (c == avoid) return false;
            if (within != nullptr && !interval_contains(ord, *within, c)) {
                return false;
            }
            return !ord.point_rank(c).has_value();
        });
        if (!found.has_value()) {
            turn_error("diagonal challenger: no infinite-rank point available");
        }
        return *found;
    }

    std::function<Point(std::size_t)> sigma_;
    Point x_ = 0;
};

class ScriptedChallenger final : public PlayerI {
public:
    explicit ScriptedChallenger(std::vector<ChallengerMove> moves)
        : moves_(std::move(moves)) {}

    ChallengerMove move(const GameState&) override {
        if (next_ >= moves_.size()) {
            throw std::out_of_range("scripted challenger: script exhausted");
        }
        return moves_[next_++];
    }

    std::string describe() const override { return "scripted challenger"; }

private:
    std::vector<ChallengerMove> moves_;
    std::size_t next_ = 0;
};

class ScriptedDefender final : public PlayerII {
public:
    explicit ScriptedDefender(std::vector<DefenderMove> moves)
        : moves_(std::move(moves)) {}

    DefenderMove move(const GameState&) override {
        if (next_ >= moves_.size()) {
            throw std::out_of_range("scripted defender: script exhausted");
        }
        return moves_[next_++];
    }

    std::string describe() const override { return "scripted defender"; }

private:
    std::vector<DefenderMove> moves_;
    std::size_t next_ = 0;
};

// Codes below the window (and the order size) inside the given interval.
std::vector<Point> window_codes(const ConcreteOrder& ord, std::uint64_t window,
                                const OpenInterval* within) {
    std::uint64_t cap = window;
    if (std::optional<std::uint64_t> n = ord.size(); n.has_value()) {
        cap = std::min(cap, *n);
    }
    std::vector<Point> out;
    for (std::uint64_t c = 0; c < cap; ++c) {
        Point p = static_cast<Point>(c);
        if (within == nullptr || interval_contains(ord, *within, p)) {
            out.push_back(p);
        }
    }
    return out;
}

class RandomChallenger final : public PlayerI {
public:
    RandomChallenger(std::uint64_t seed, std::uint64_t window)
        : rng_(seed), seed_(seed), window_(window) {}

    ChallengerMove move(const GameState& s) override {
        if (!s.challenger_to_move()) {
            turn_error("random challenger consulted out of turn");
        }
        const ConcreteOrder& ord = *s.order;
        const OpenInterval* prev = s.current_interval();
        std::vector<Point> cands = window_codes(ord, window_, prev);
        ChallengerMove m;
        if (!cands.empty()) {
            m.x = cands[rng_() % cands.size()];
        } else if (std::optional<Point> cp = s.current_point(); cp.has_value()) {
            // The previous reply still holds the old point even when no
            // window code landed inside it.
            m.x = *cp;
        } else {
            turn_error("random challenger: no candidate point in the window");
        }
        m.u = prev != nullptr ? *prev : OpenInterval::whole();
        std::vector<Point> lows;
        std::vector<Point> highs;
        for (Point c : cands) {
            if (c == m.x) continue;
            (ord.less(c, m.x) ? lows : highs).push_back(c);
        }
        // Either keep the inherited bound or tighten to an inside point.
        if (std::uint64_t pick = rng_() % (lows.size() + 1); pick > 0) {
            m.u.left = lows[pick - 1];
        }
        if (std::uint64_t pick = rng_() % (highs.size() + 1); pick > 0) {
            m.u.right = highs[pick - 1];
        }
        return m;
    }

    std::string describe() const override {
        return "random challenger (seed " + std::to_string(seed_) + ")";
    }

private:
    std::mt19937_64 rng_;
    std::uint64_t seed_;
    std::uint64_t window_;
};

class RandomDefender final : public PlayerII {
public:
    RandomDefender(std::uint64_t seed, std::uint64_t window)
        : rng_(seed), seed_(seed), window_(window) {}

    DefenderMove move(const GameState& s) override {
        if (s.challenger_to_move() || s.challenger.empty()) {
            turn_error("random defender consulted out of turn");
        }
        const ConcreteOrder& ord = *s.order;
        const ChallengerMove& last = s.challenger.back();
        DefenderMove m{last.u};
        std::vector<Point> lows;
        std::vector<Point> highs;
        for (Point c : window_codes(ord, window_, &last.u)) {
            if (c == last.x) continue;
            (ord.less(c, last.x) ? lows : highs).push_back(c);
        }
        if (std::uint64_t pick = rng_() % (lows.size() + 1); pick > 0) {
            m.v.left = lows[pick - 1];
        }
        if (std::uint64_t pick = rng_() % (highs.size() + 1); pick > 0) {
            m.v.right = highs[pick - 1];
        }
        return m;
    }

    std::string describe() const override {
        return "random defender (seed " + std::to_string(seed_) + ")";
    }

private:
    std::mt19937_64 rng_;
    std::uint64_t seed_;
    std::uint64_t window_;
};

}  // namespace

std::unique_ptr<PlayerII> make_rank_defender() {
    return std::make_unique<RankDefender>();
}

std::unique_ptr<PlayerI> make_diagonal_challenger(
    std::function<Point(std::size_t)> sigma) {
    return std::make_unique<DiagonalChallenger>(std::move(sigma));
}

std::unique_ptr<PlayerI> make_scripted_challenger(
    std::vector<ChallengerMove> moves) {
    return std::make_unique<ScriptedChallenger>(std::move(moves));
}

std::unique_ptr<PlayerII> make_scripted_defender(std::vector<DefenderMove> moves) {
    return std::make_unique<ScriptedDefender>(std::move(moves));
}

std::unique_ptr<PlayerI> make_random_challenger(std::uint64_t seed,
                                                std::uint64_t window) {
    return std::make_unique<RandomChallenger>(seed, window);
}

std::unique_ptr<PlayerII> make_random_defender(std::uint64_t seed,
                                               std::uint64_t window) {
    return std::make_unique<RandomDefender>(seed, window);
}

// ---------------------------------------------------------------------------
// The referee
// ---------------------------------------------------------------------------

namespace {

// Rank lookup tolerant of partially supported orders.
RankValue safe_rank(const ConcreteOrder& ord, Point x, bool& known) {
    try {
        RankValue r = ord.point_rank(x);
        known = true;
        return r;
    } catch (const RulesIncomplete&) {
        known = false;
        return RankValue{};
    }
}

std::string rank_suffix(bool known, const RankValue& r) {
    if (!known) return "";
    return " (rank " + rank_to_string(r) + ")";
}

}  // namespace

GameReport run_game(OrderPtr order, PlayerI& challenger, PlayerII& defender,
                    std::size_t rounds) {
    GameReport rep;
    rep.state.order = std::move(order);
    const ConcreteOrder& ord = *rep.state.order;

    for (std::size_t r = 0; r < rounds; ++r) {
        ChallengerMove cm = challenger.move(rep.state);
        try {
            apply_move(rep.state, cm);
        } catch (const std::invalid_argument& e) {
            rep.failure = "I " + std::to_string(r) + ": " + e.what();
            break;
        }
        rep.transcript.push_back("I " + std::to_string(r) + " x=" +
                                 std::to_string(cm.x) + " U=" +
                                 interval_text(cm.u));
        DefenderMove dm = defender.move(rep.state);
        try {
            apply_move(rep.state, dm);
        } catch (const std::invalid_argument& e) {
            rep.failure = "II " + std::to_string(r) + ": " + e.what();
            break;
        }
        rep.transcript.push_back("II " + std::to_string(r) + " V=" +
                                 interval_text(dm.v));
        rep.rounds_played = r + 1;
    }
    rep.completed = rep.failure.empty();

    const OpenInterval* cur = rep.state.current_interval();
    rep.final_interval = cur != nullptr ? *cur : OpenInterval::whole();
    rep.final_nonempty = !interval_empty(ord, rep.final_interval);

    const bool ranked = ord.has_rank_oracle();
    for (std::size_t i = 1; i < rep.state.challenger.size(); ++i) {
        Point from = rep.state.challenger[i - 1].x;
        Point to = rep.state.challenger[i].x;
        if (from == to) continue;
        PointChange pc;
        pc.round = i;
        pc.from = from;
        pc.to = to;
        if (ranked) {
            bool known_from = false;
            bool known_to = false;
            pc.from_rank = safe_rank(ord, from, known_from);
            pc.to_rank = safe_rank(ord, to, known_to);
            pc.ranks_known = known_from && known_to;
        }
        rep.point_changes.push_back(pc);
    }

    for (std::size_t i = 0; i < rep.state.challenger.size(); ++i) {
        std::optional<Point> target = challenger.excluded_target(i);
        if (!target.has_value()) continue;
        ExclusionEntry entry;
        entry.round = i;
        entry.target = *target;
        entry.excluded =
            !interval_contains(ord, rep.state.challenger[i].u, *target);
        rep.exclusions.push_back(entry);
    }

    rep.transcript.push_back("-- game: " + ord.describe() + " | I: " +
                             challenger.describe() + " | II: " +
                             defender.describe() + " | rounds: " +
                             std::to_string(rounds));
    rep.transcript.push_back(rep.completed
                                 ? std::string("-- result: completed")
                                 : "-- result: truncated (" + rep.failure + ")");
    rep.transcript.push_back("-- final: V=" + interval_text(rep.final_interval) +
                             (rep.final_nonempty ? " nonempty" : " empty"));
    rep.transcript.push_back("-- point changes: " +
                             std::to_string(rep.point_changes.size()));
    for (const PointChange& pc : rep.point_changes) {
        rep.transcript.push_back(
            "--   round " + std::to_string(pc.round) + ": " +
            std::to_string(pc.from) + rank_suffix(pc.ranks_known, pc.from_rank) +
            " -> " + std::to_string(pc.to) +
            rank_suffix(pc.ranks_known, pc.to_rank));
    }
    if (!rep.exclusions.empty()) {
        std::size_t ok = 0;
        const ExclusionEntry* bad = nullptr;
        for (const ExclusionEntry& e : rep.exclusions) {
            if (e.excluded) {
                ++ok;
            } else if (bad == nullptr) {
                bad = &e;
            }
        }
        if (bad == nullptr) {
            rep.transcript.push_back("-- exclusions: ok " + std::to_string(ok) +
                                     "/" + std::to_string(rep.exclusions.size()));
        } else {
            rep.transcript.push_back(
                "-- exclusions: VIOLATION at round " +
                std::to_string(bad->round) + " (target " +
                std::to_string(bad->target) + ")");
        }
    }
    return rep;
}

}  // namespace csctop
