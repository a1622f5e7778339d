#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "csctop/orders.hpp"

namespace csctop {

// ---------------------------------------------------------------------------
// Open intervals of a concrete order
// ---------------------------------------------------------------------------

// An open interval with exclusive endpoints; a disengaged endpoint is an
// unbounded ray on that side. Both disengaged is the whole line.
struct OpenInterval {
    std::optional<Point> left;
    std::optional<Point> right;

    static OpenInterval whole() { return {}; }
};

// Renders "(l,r)" with point codes, using -inf / +inf for unbounded sides.
std::string interval_text(const OpenInterval& iv);

bool interval_contains(const ConcreteOrder& ord, const OpenInterval& iv, Point x);

// Exact emptiness: a bounded side is empty when the ends touch or are
// immediate neighbors; a ray is empty when its endpoint is extreme.
bool interval_empty(const ConcreteOrder& ord, const OpenInterval& iv);

// Whether inner is contained in outer, for nonempty inner: endpoint-wise
// comparison, equal endpoints allowed.
bool interval_subset(const ConcreteOrder& ord, const OpenInterval& inner,
                     const OpenInterval& outer);

// The intersection: the tighter endpoint on each side.
OpenInterval interval_meet(const ConcreteOrder& ord, const OpenInterval& a,
                           const OpenInterval& b);

// ---------------------------------------------------------------------------
// Rank-drop intervals
// ---------------------------------------------------------------------------

// Raised when no rank-drop interval exists because the point has infinite
// rank: every interval around it holds another infinite-rank point.
class NoDropInterval : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An open interval around x in which every other point has rank strictly
// below rank(x); for rank-0 points it isolates x. Throws NoDropInterval for
// infinite-rank points and propagates RulesIncomplete from the order.
OpenInterval rank_drop_interval(const ConcreteOrder& ord, Point x);

// ---------------------------------------------------------------------------
// The strong Choquet game
// ---------------------------------------------------------------------------

// The challenger (player I) names a point inside an interval; the defender
// (player II) replies with a sub-interval still containing that point. Each
// interval must nest inside the previous reply, and the defender wins a
// bounded run when every interval along the way stays nonempty.

struct ChallengerMove {
    Point x = 0;
    OpenInterval u;
};

struct DefenderMove {
    OpenInterval v;
};

struct GameState {
    OrderPtr order;
    std::vector<ChallengerMove> challenger;
    std::vector<DefenderMove> defender;

    bool challenger_to_move() const { return challenger.size() == defender.size(); }
    // Round index of the next move (each round is one challenge plus one reply).
    std::size_t round() const {
        return challenger_to_move() ? challenger.size() : defender.size();
    }
    // The most recently played interval, if any.
    const OpenInterval* current_interval() const {
        if (!challenger_to_move()) return &challenger.back().u;
        if (!defender.empty()) return &defender.back().v;
        return nullptr;
    }
    // The challenger's most recently named point, if any.
    std::optional<Point> current_point() const {
        if (challenger.empty()) return std::nullopt;
        return challenger.back().x;
    }
};

// Validates and appends a move. Playing out of turn is a std::logic_error;
// an illegal move throws std::invalid_argument naming the violated clause
// (empty interval, point outside interval, or broken nesting).
void apply_move(GameState& s, const ChallengerMove& m);
void apply_move(GameState& s, const DefenderMove& m);

// ---------------------------------------------------------------------------
// Players
// ---------------------------------------------------------------------------

class PlayerI {
public:
    virtual ~PlayerI() = default;
    virtual ChallengerMove move(const GameState& s) = 0;
    virtual std::string describe() const = 0;
    // The enumerated point this player commits to excluding at the given
    // round, when it plays a diagonal strategy.
    virtual std::optional<Point> excluded_target(std::size_t round) const {
        (void)round;
        return std::nullopt;
    }
};

class PlayerII {
public:
    virtual ~PlayerII() = default;
    virtual DefenderMove move(const GameState& s) = 0;
    virtual std::string describe() const = 0;
};

// Replies with the challenge interval meet the rank-drop interval of the
// named point. Wins on orders whose every point has ordinal rank: each time
// the challenger changes points, the new point's rank strictly drops.
std::unique_ptr<PlayerII> make_rank_defender();

// The diagonalizing challenger: at round s it walls the enumerated point
// sigma(s) out of its own interval, keeping its named point of infinite rank;
// over a full enumeration the nested intervals then meet in nothing. The
// default enumeration is the identity on point codes.
std::unique_ptr<PlayerI> make_diagonal_challenger(
    std::function<Point(std::size_t)> sigma = {});

// Replay fixed move lists; running past the end throws std::out_of_range.
std::unique_ptr<PlayerI> make_scripted_challenger(std::vector<ChallengerMove> moves);
std::unique_ptr<PlayerII> make_scripted_defender(std::vector<DefenderMove> moves);

// Seeded random legal players; candidate points are drawn from codes below
// `window`. Identical seeds replay identical games.
std::unique_ptr<PlayerI> make_random_challenger(std::uint64_t seed,
                                                std::uint64_t window = 64);
std::unique_ptr<PlayerII> make_random_defender(std::uint64_t seed,
                                               std::uint64_t window = 64);

// ---------------------------------------------------------------------------
// The referee
// ---------------------------------------------------------------------------

struct PointChange {
    std::size_t round = 0;
    Point from = 0;
    Point to = 0;
    // Ranks of the two points when the order has a rank oracle.
    bool ranks_known = false;
    RankValue from_rank;
    RankValue to_rank;
};

struct ExclusionEntry {
    std::size_t round = 0;
    Point target = 0;
    bool excluded = false;
};

struct GameReport {
    GameState state;
    // One line per move in play order, then the verdict footer.
    std::vector<std::string> transcript;
    std::size_t rounds_played = 0;
    bool completed = false;
    // "I <round>: <reason>" when an illegal move truncated the run.
    std::string failure;
    OpenInterval final_interval;
    bool final_nonempty = false;
    std::vector<PointChange> point_changes;
    std::vector<ExclusionEntry> exclusions;
};

// Plays `rounds` full rounds, stopping early only when a player produces an
// illegal move (the transcript is then truncated with blame). Exceptions a
// strategy itself throws (NoDropInterval, RulesIncomplete, exhausted
// scripts) propagate to the caller.
GameReport run_game(OrderPtr order, PlayerI& challenger, PlayerII& defender,
                    std::size_t rounds);

}  // namespace csctop
