#include <cstdio>

#include "csctop/choquet.hpp"

using namespace csctop;

static void show(const GameReport& rep, int head) {
    int i = 0;
    for (const auto& line : rep.transcript) {
        if (line.rfind("--", 0) != 0 && ++i > head) continue;
        std::printf("%s\n", line.c_str());
    }
    std::printf("\n");
}

int main() {
    {
        OrderPtr w = eval_term(parse_order_term("w"));
        auto I = make_random_challenger(3);
        auto II = make_rank_defender();
        GameReport rep = run_game(w, *I, *II, 8);
        std::printf("=== w: random vs rank ===\n");
        show(rep, 8);
    }
    {
        OrderPtr o = eval_term(parse_order_term("w^2+1"));
        auto I = make_random_challenger(7);
        auto II = make_rank_defender();
        GameReport rep = run_game(o, *I, *II, 10);
        std::printf("=== w^2+1: random vs rank ===\n");
        show(rep, 10);
    }
    {
        OrderPtr eta = eval_term(parse_order_term("eta"));
        auto I = make_diagonal_challenger();
        auto II = make_random_defender(5);
        GameReport rep = run_game(eta, *I, *II, 10);
        std::printf("=== eta: diagonal vs random ===\n");
        show(rep, 10);
    }
    {
        // Scripted exchange on the integers: fixed transcript.
        OrderPtr z = eval_term(parse_order_term("z"));
        // codes: zigzag 0,1,2,3,4 -> 0,1,-1,2,-2
        std::vector<ChallengerMove> cs{{0, OpenInterval{}},
                                       {0, OpenInterval{{4}, {3}}}};
        std::vector<DefenderMove> ds{{OpenInterval{{4}, {3}}},
                                     {OpenInterval{{2}, {1}}}};
        auto I = make_scripted_challenger(cs);
        auto II = make_scripted_defender(ds);
        GameReport rep = run_game(z, *I, *II, 2);
        std::printf("=== z: scripted ===\n");
        for (const auto& line : rep.transcript) std::printf("%s\n", line.c_str());
        std::printf("\n");
    }
    {
        // Illegal scripted move: second challenge not nested.
        OrderPtr z = eval_term(parse_order_term("z"));
        std::vector<ChallengerMove> cs{{0, OpenInterval{}},
                                       {3, OpenInterval{{0}, std::nullopt}}};
        std::vector<DefenderMove> ds{{OpenInterval{{4}, {3}}}};
        auto I = make_scripted_challenger(cs);
        auto II = make_scripted_defender(ds);
        GameReport rep = run_game(z, *I, *II, 2);
        std::printf("=== z: illegal nesting ===\n");
        for (const auto& line : rep.transcript) std::printf("%s\n", line.c_str());
        std::printf("rounds_played=%zu completed=%d failure=[%s]\n\n",
                    rep.rounds_played, (int)rep.completed, rep.failure.c_str());
    }
    // Bulk: rank defender survives on the ordinal corpus.
    const char* corpus[] = {"fin(6)", "w",   "w+1",     "w^2", "w^2+1",
                            "w^3+1",  "w^4+1", "w^3+w+2", "w*2", "2*w"};
    for (const char* t : corpus) {
        OrderPtr o = eval_term(parse_order_term(t));
        int bad = 0;
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            auto I = make_random_challenger(seed);
            auto II = make_rank_defender();
            GameReport rep = run_game(o, *I, *II, 60);
            if (!rep.completed || !rep.final_nonempty) ++bad;
            for (const auto& pc : rep.point_changes) {
                if (!pc.ranks_known || !rank_less(pc.to_rank, pc.from_rank)) ++bad;
            }
        }
        std::printf("corpus %-8s bad=%d\n", t, bad);
    }
    // Diagonal on eta across seeds.
    {
        OrderPtr eta = eval_term(parse_order_term("eta"));
        int bad = 0;
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            auto I = make_diagonal_challenger();
            auto II = make_random_defender(seed);
            GameReport rep = run_game(eta, *I, *II, 60);
            if (!rep.completed || !rep.final_nonempty) ++bad;
            for (const auto& e : rep.exclusions) {
                if (!e.excluded) ++bad;
            }
        }
        std::printf("eta diagonal bad=%d\n", bad);
    }
    return 0;
}
