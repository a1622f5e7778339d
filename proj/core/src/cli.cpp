#include "csctop/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "csctop/choquet.hpp"
#include "csctop/gadgets.hpp"
#include "csctop/orders.hpp"
#include "csctop/separation.hpp"
#include "csctop/space.hpp"

namespace csctop {

namespace {

struct Bounds {
    std::uint64_t points = 32;
    std::uint64_t rows = 48;
};

std::uint64_t parse_u64_strict(const std::string& text, const char* what) {
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
        value = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.empty()) {
        throw std::invalid_argument(std::string(what) + ": expected a number, got '" +
                                    text + "'");
    }
    return value;
}

Bounds parse_bounds_text(const std::string& text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("--bounds expects N,M, got '" + text + "'");
    }
    Bounds b;
    b.points = parse_u64_strict(text.substr(0, comma), "--bounds");
    b.rows = parse_u64_strict(text.substr(comma + 1), "--bounds");
    if (b.points == 0 || b.rows == 0) {
        throw std::invalid_argument("--bounds expects positive N,M, got '" + text +
                                    "'");
    }
    return b;
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    return s;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

Axiom parse_axiom_name(const std::string& name) {
    std::optional<Axiom> ax = axiom_from(upper(name));
    if (!ax.has_value()) {
        throw std::invalid_argument("unknown axiom '" + name +
                                    "' (try T0, THALF, T1, T2, T2HALF, T3, "
                                    "DISCRETE)");
    }
    return *ax;
}

std::string dir_of(const std::string& path) {
    std::size_t slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

std::string join_path(const std::string& base, const std::string& rel) {
    if (!rel.empty() && rel.front() == '/') return rel;
    return base + "/" + rel;
}

// Applies a --stage-budget override to every opaque oracle in a parsed spec.
void apply_stage_budget(GadgetSpecFile& spec, std::uint64_t budget) {
    auto touch = [budget](OracleSpec& s) {
        if (s.opaque) s.budget = budget;
    };
    if (spec.oracle) touch(*spec.oracle);
    for (OracleSpec& s : spec.rows) touch(s);
    if (spec.default_row) touch(*spec.default_row);
    for (OracleSpec& s : spec.sigma4.rows) touch(s);
    for (SigmaFourPresentation& c : spec.pi5.conjuncts) {
        for (OracleSpec& s : c.rows) touch(s);
    }
}

GadgetSpace load_gadget(const std::string& path,
                        std::optional<std::uint64_t> stage_budget) {
    GadgetSpecFile spec = parse_gadget_spec_file(path);
    if (stage_budget) apply_stage_budget(spec, *stage_budget);
    return build_gadget(spec);
}

// --- game scripting -------------------------------------------------------

struct GameScript {
    std::vector<ChallengerMove> challenger;
    std::vector<DefenderMove> defender;
};

std::optional<Point> parse_endpoint(const std::string& tok, std::size_t line) {
    if (tok == "-inf" || tok == "+inf") return std::nullopt;
    std::size_t used = 0;
    std::uint64_t value = 0;
    try {
        value = std::stoull(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || tok.empty()) {
        throw ParseError(line, "expected a point code, -inf, or +inf, got '" +
                                   tok + "'");
    }
    return value;
}

// One move per line: `I <x> <l> <r>` or `II <l> <r>`; # starts a comment.
GameScript parse_game_script(std::istream& in) {
    GameScript script;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = raw.substr(0, raw.find('#'));
        std::istringstream ls(text);
        std::string head;
        if (!(ls >> head)) continue;
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (head == "I" && toks.size() == 3) {
            ChallengerMove m;
            m.x = parse_u64_strict(toks[0], "challenger point");
            m.u.left = parse_endpoint(toks[1], line);
            m.u.right = parse_endpoint(toks[2], line);
            script.challenger.push_back(m);
        } else if (head == "II" && toks.size() == 2) {
            DefenderMove m;
            m.v.left = parse_endpoint(toks[0], line);
            m.v.right = parse_endpoint(toks[1], line);
            script.defender.push_back(m);
        } else {
            throw ParseError(line, "expected 'I <x> <l> <r>' or 'II <l> <r>'");
        }
    }
    return script;
}

// --- corpus manifests -----------------------------------------------------

struct ManifestEntry {
    enum class Kind { Gadget, Order };
    Kind kind = Kind::Order;
    std::string path;  // gadget spec path as written in the manifest
    std::string term;
    AxiomProfile declared;          // gadget: declared axiom profile
    RankValue declared_rk;          // order
    std::optional<RankValue> declared_hr;
};

RankValue parse_rank_text(const std::string& text, std::size_t line) {
    std::optional<RankValue> r = rank_parse(text);
    if (!r.has_value()) {
        throw ParseError(line, "expected a rank (ordinal or inf), got '" + text +
                                   "'");
    }
    return *r;
}

// Manifest lines: `GADGET <spec-path> PROFILE <AXIOM>=<0|1>...` or
// `ORDER <term> RK <rank> [HR <rank>]`; # starts a comment.
std::vector<ManifestEntry> parse_manifest(std::istream& in) {
    std::vector<ManifestEntry> entries;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string text = raw.substr(0, raw.find('#'));
        std::istringstream ls(text);
        std::string head;
        if (!(ls >> head)) continue;
        ManifestEntry e;
        if (head == "GADGET") {
            e.kind = ManifestEntry::Kind::Gadget;
            std::string profile_kw;
            if (!(ls >> e.path >> profile_kw) || profile_kw != "PROFILE") {
                throw ParseError(line, "expected 'GADGET <path> PROFILE ...'");
            }
            std::string item;
            while (ls >> item) {
                std::size_t eq = item.find('=');
                if (eq == std::string::npos ||
                    (item.substr(eq + 1) != "0" && item.substr(eq + 1) != "1")) {
                    throw ParseError(line, "expected <AXIOM>=<0|1>, got '" + item +
                                               "'");
                }
                std::optional<Axiom> ax = axiom_from(upper(item.substr(0, eq)));
                if (!ax.has_value()) {
                    throw ParseError(line,
                                     "unknown axiom '" + item.substr(0, eq) + "'");
                }
                e.declared[*ax] = item.substr(eq + 1) == "1";
            }
            if (e.declared.empty()) {
                throw ParseError(line, "PROFILE needs at least one axiom");
            }
        } else if (head == "ORDER") {
            e.kind = ManifestEntry::Kind::Order;
            std::string rk_kw;
            std::string rk_text;
            if (!(ls >> e.term >> rk_kw >> rk_text) || rk_kw != "RK") {
                throw ParseError(line, "expected 'ORDER <term> RK <rank>'");
            }
            e.declared_rk = parse_rank_text(rk_text, line);
            std::string hr_kw;
            if (ls >> hr_kw) {
                std::string hr_text;
                if (hr_kw != "HR" || !(ls >> hr_text)) {
                    throw ParseError(line, "expected 'HR <rank>' after the rank");
                }
                e.declared_hr = parse_rank_text(hr_text, line);
            }
        } else {
            throw ParseError(line, "expected GADGET or ORDER, got '" + head + "'");
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

std::string render_profile(const AxiomProfile& profile) {
    std::string out;
    for (const auto& [axiom, value] : profile) {
        if (!out.empty()) out += " ";
        out += to_string(axiom) + "=" + (value ? "1" : "0");
    }
    return out;
}

// --- verb runners ---------------------------------------------------------

int cmd_gadget_build(const std::string& spec_path, bool dump,
                     const std::vector<std::uint64_t>& dump_vals, Bounds bounds,
                     std::optional<std::uint64_t> stage_budget,
                     std::ostream& out) {
    GadgetSpace g = load_gadget(spec_path, stage_budget);
    out << "gadget: " << to_string(g.kind) << "\n";
    out << "space: " << g.space->describe() << "\n";
    out << "transparent: " << (g.transparent ? "yes" : "no") << "\n";
    for (const auto& [name, point] : g.landmarks) {
        out << "landmark " << name << " = " << point << "\n";
    }
    if (dump) {
        Bounds b = bounds;
        if (dump_vals.size() == 2) {
            b.points = dump_vals[0];
            b.rows = dump_vals[1];
        }
        out << dump_presentation(truncate(*g.space, b.points, b.rows));
    }
    return 0;
}

int cmd_gadget_decide(const std::string& axiom_name, const std::string& spec_path,
                      std::optional<std::uint64_t> stage_budget,
                      std::ostream& out) {
    Axiom axiom = parse_axiom_name(axiom_name);
    GadgetSpace g = load_gadget(spec_path, stage_budget);
    Verdict v = decide_gadget_axiom(axiom, g);
    out << verdict_text(axiom, v);
    return verdict_exit_code(v);
}

SpacePtr resolve_space(const std::string& gadget_path, const std::string& term,
                       std::optional<std::uint64_t> stage_budget) {
    if (!gadget_path.empty()) {
        return load_gadget(gadget_path, stage_budget).space;
    }
    return interval_topology(eval_term(parse_order_term(term)));
}

int cmd_space_check(const std::string& axiom_name, const SpacePtr& space,
                    Bounds bounds, bool dump, std::ostream& out) {
    Axiom axiom = parse_axiom_name(axiom_name);
    SpacePresentation P = truncate(*space, bounds.points, bounds.rows);
    Verdict v = check_axiom(axiom, P, *space);
    out << verdict_text(axiom, v);
    if (dump) out << dump_presentation(P);
    return verdict_exit_code(v);
}

int print_validation(const CscSpace& space, Bounds bounds, std::ostream& out) {
    ValidationReport report = validate(space, bounds.points, bounds.rows);
    if (report.ok) {
        out << "validate: ok at (" << bounds.points << "," << bounds.rows
            << ")\n";
        return 0;
    }
    out << "validate: FAIL " << report.detail << "\n";
    if (report.nontotal_point) {
        out << "validate: nontotal point " << *report.nontotal_point
            << (report.budget_exceeded ? " (budget exceeded)" : " (divergent)")
            << "\n";
    }
    return 3;
}

int cmd_space_dump(const SpacePtr& space, Bounds bounds, bool with_k,
                   bool with_validate, std::ostream& out) {
    int code = 0;
    if (with_validate) {
        code = print_validation(*space, bounds, out);
        if (code != 0) return code;
    }
    SpacePresentation P = truncate(*space, bounds.points, bounds.rows);
    out << dump_presentation(P);
    if (with_k) out << dump_k_block(*space, P);
    return code;
}

int cmd_order_rank(const std::string& term_text, bool hausdorff,
                   std::ostream& out) {
    OrderTerm t = parse_order_term(term_text);
    RankValue r = hausdorff ? hausdorff_rank_symbolic(t) : rk_symbolic(t);
    out << rank_to_string(r) << "\n";
    return 0;
}

int cmd_order_topo(const std::string& term_text, bool dump,
                   const std::vector<std::uint64_t>& dump_vals, Bounds bounds,
                   const std::string& check_name, bool with_validate,
                   std::ostream& out) {
    auto topology = interval_topology(eval_term(parse_order_term(term_text)));
    out << "topology: " << topology->describe() << "\n";
    int code = 0;
    if (with_validate) {
        code = print_validation(*topology, bounds, out);
        if (code != 0) return code;
    }
    if (!check_name.empty()) {
        Axiom axiom = parse_axiom_name(check_name);
        SpacePresentation P = truncate(*topology, bounds.points, bounds.rows);
        Verdict v = check_axiom(axiom, P, *topology);
        out << verdict_text(axiom, v);
        code = verdict_exit_code(v);
    }
    if (dump) {
        Bounds b = bounds;
        if (dump_vals.size() == 2) {
            b.points = dump_vals[0];
            b.rows = dump_vals[1];
        }
        out << dump_presentation(truncate(*topology, b.points, b.rows));
    }
    return code;
}

int cmd_game_run(const std::string& term_text, const std::string& i_name,
                 const std::string& ii_name, std::uint64_t rounds,
                 const std::string& script_path, std::uint64_t seed,
                 std::uint64_t window, std::istream& in, std::ostream& out,
                 std::ostream& err) {
    OrderPtr order = eval_term(parse_order_term(term_text));

    const std::string i_kind = lower(i_name);
    const std::string ii_kind = lower(ii_name);
    const bool i_scripted = i_kind == "scripted" || i_kind == "script";
    const bool ii_scripted = ii_kind == "scripted" || ii_kind == "script";

    GameScript script;
    if (!script_path.empty()) {
        if (script_path == "-") {
            script = parse_game_script(in);
        } else {
            std::ifstream file(script_path);
            if (!file) {
                throw ParseError(0, "cannot open script file: " + script_path);
            }
            script = parse_game_script(file);
        }
    } else if (i_scripted || ii_scripted) {
        err << "error: scripted players need --script <file|->\n";
        return 1;
    }

    std::unique_ptr<PlayerI> challenger;
    if (i_kind == "diag" || i_kind == "idiag") {
        challenger = make_diagonal_challenger();
    } else if (i_kind == "random" || i_kind == "randomlegal") {
        challenger = make_random_challenger(seed, window);
    } else if (i_scripted) {
        challenger = make_scripted_challenger(script.challenger);
    } else {
        err << "error: unknown challenger strategy '" << i_name
            << "' (try diag, random, scripted)\n";
        return 1;
    }

    std::unique_ptr<PlayerII> defender;
    if (ii_kind == "rank" || ii_kind == "iirank") {
        defender = make_rank_defender();
    } else if (ii_kind == "random" || ii_kind == "randomlegal") {
        // Two random players get distinct streams from one seed.
        bool i_random = i_kind == "random" || i_kind == "randomlegal";
        defender = make_random_defender(i_random ? seed + 1 : seed, window);
    } else if (ii_scripted) {
        defender = make_scripted_defender(script.defender);
    } else {
        err << "error: unknown defender strategy '" << ii_name
            << "' (try rank, random, scripted)\n";
        return 1;
    }

    GameReport report;
    try {
        report = run_game(order, *challenger, *defender, rounds);
    } catch (const NoDropInterval& e) {
        err << "aborted: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "aborted: " << e.what() << "\n";
        return 2;
    }
    for (const std::string& line : report.transcript) {
        out << line << "\n";
    }
    return report.completed ? 0 : 3;
}

int cmd_corpus_verify(const std::string& manifest_path, std::ostream& out) {
    std::ifstream file(manifest_path);
    if (!file) {
        throw ParseError(0, "cannot open manifest: " + manifest_path);
    }
    std::vector<ManifestEntry> entries = parse_manifest(file);
    const std::string base = dir_of(manifest_path);

    out << "corpus-verify: " << manifest_path << "\n";
    std::size_t ok_count = 0;
    std::size_t bad_count = 0;
    for (const ManifestEntry& e : entries) {
        std::vector<std::string> complaints;
        std::string summary;
        try {
            if (e.kind == ManifestEntry::Kind::Gadget) {
                GadgetSpace g =
                    build_gadget(parse_gadget_spec_file(join_path(base, e.path)));
                AxiomProfile computed = expected_axiom_profile(g);
                for (const auto& [axiom, value] : e.declared) {
                    if (computed.at(axiom) != value) {
                        complaints.push_back("profile " + to_string(axiom) +
                                             " declared " + (value ? "1" : "0") +
                                             " computed " +
                                             (computed.at(axiom) ? "1" : "0"));
                    }
                }
                for (Axiom axiom : all_axioms()) {
                    Verdict v = decide_gadget_axiom(axiom, g);
                    if (v.status != Verdict::Status::Decided ||
                        v.value != computed.at(axiom)) {
                        complaints.push_back("decider disagrees on " +
                                             to_string(axiom));
                    }
                }
                summary = "GADGET " + e.path + " profile " +
                          render_profile(computed);
            } else {
                OrderTerm t = parse_order_term(e.term);
                RankValue rk = rk_symbolic(t);
                if (rk != e.declared_rk) {
                    complaints.push_back("RK expected " +
                                         rank_to_string(e.declared_rk) + " got " +
                                         rank_to_string(rk));
                }
                summary = "ORDER " + e.term + " RK " + rank_to_string(rk);
                if (e.declared_hr) {
                    RankValue hr = hausdorff_rank_symbolic(t);
                    if (hr != *e.declared_hr) {
                        complaints.push_back("HR expected " +
                                             rank_to_string(*e.declared_hr) +
                                             " got " + rank_to_string(hr));
                    }
                    if (rank_less(hr, rk)) {
                        complaints.push_back("rank inequality violated: RK " +
                                             rank_to_string(rk) + " > HR " +
                                             rank_to_string(hr));
                    }
                    summary += " HR " + rank_to_string(hr);
                }
            }
        } catch (const std::exception& ex) {
            std::string label = e.kind == ManifestEntry::Kind::Gadget
                                    ? "GADGET " + e.path
                                    : "ORDER " + e.term;
            out << "ERROR " << label << ": " << ex.what() << "\n";
            ++bad_count;
            continue;
        }
        if (complaints.empty()) {
            out << "ok " << summary << "\n";
            ++ok_count;
        } else {
            std::string label = e.kind == ManifestEntry::Kind::Gadget
                                    ? "GADGET " + e.path
                                    : "ORDER " + e.term;
            for (const std::string& c : complaints) {
                out << "MISMATCH " << label << ": " << c << "\n";
            }
            ++bad_count;
        }
    }
    if (entries.empty()) {
        out << "warning: empty manifest\n";
    }
    out << "summary: " << ok_count << " ok, " << bad_count << " mismatched, "
        << entries.size() << " total\n";
    return bad_count == 0 ? 0 : 3;
}

const char* kTwoWordVerbs[][2] = {
    {"gadget", "build"}, {"gadget", "decide"}, {"space", "check"},
    {"space", "dump"},   {"order", "rank"},    {"order", "topo"},
    {"game", "run"},     {"corpus", "verify"},
};

// Accepts `gadget build ...` as a spelling of `gadget-build ...`.
std::vector<std::string> normalize_verbs(std::vector<std::string> args) {
    if (args.size() >= 2) {
        for (const auto& pair : kTwoWordVerbs) {
            if (args[0] == pair[0] && args[1] == pair[1]) {
                args[0] = args[0] + "-" + args[1];
                args.erase(args.begin() + 1);
                break;
            }
        }
    }
    return args;
}

}  // namespace

int dispatch(const std::vector<std::string>& raw_args, std::istream& in,
             std::ostream& out, std::ostream& err) {
    CLI::App app{"stage-indexed countable topology workbench", "csctop"};
    app.require_subcommand(0, 1);

    std::string bounds_text = "32,48";
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> stage_budget;
    app.add_option("--bounds", bounds_text,
                   "window bounds N,M for truncations (default 32,48)");
    app.add_option("--seed", seed, "seed for random game strategies");
    app.add_option("--stage-budget", stage_budget,
                   "override the stage budget of opaque oracles");

    std::string gb_spec;
    std::vector<std::uint64_t> gb_dump_vals;
    CLI::App* gadget_build =
        app.add_subcommand("gadget-build", "build a space from a gadget spec");
    gadget_build->fallthrough();
    gadget_build->add_option("spec", gb_spec, "gadget spec file")->required();
    CLI::Option* gb_dump = gadget_build->add_option(
        "--dump", gb_dump_vals, "dump the presentation (optionally at N M)");
    gb_dump->expected(0, 2);

    std::string gd_axiom;
    std::string gd_spec;
    CLI::App* gadget_decide = app.add_subcommand(
        "gadget-decide", "decide an axiom exactly from gadget oracle data");
    gadget_decide->fallthrough();
    gadget_decide->add_option("axiom", gd_axiom, "separation axiom")->required();
    gadget_decide->add_option("spec", gd_spec, "gadget spec file")->required();

    std::string sc_axiom;
    std::string sc_gadget;
    std::string sc_order;
    bool sc_dump = false;
    CLI::App* space_check = app.add_subcommand(
        "space-check", "bounded witness search on a truncation window");
    space_check->fallthrough();
    space_check->add_option("axiom", sc_axiom, "separation axiom")->required();
    space_check->add_option("--gadget", sc_gadget, "gadget spec file");
    space_check->add_option("--order", sc_order, "order term");
    space_check->add_flag("--dump", sc_dump, "also dump the presentation");

    std::string sd_gadget;
    std::string sd_order;
    bool sd_k = false;
    bool sd_validate = false;
    CLI::App* space_dump =
        app.add_subcommand("space-dump", "print a truncation window");
    space_dump->fallthrough();
    space_dump->add_option("--gadget", sd_gadget, "gadget spec file");
    space_dump->add_option("--order", sd_order, "order term");
    space_dump->add_flag("--k", sd_k, "also dump the k-operation table");
    space_dump->add_flag("--validate", sd_validate,
                         "validate the space on the window first");

    std::string or_term;
    bool or_hausdorff = false;
    CLI::App* order_rank =
        app.add_subcommand("order-rank", "print the rank of an order term");
    order_rank->fallthrough();
    order_rank->add_option("term", or_term, "order term")->required();
    order_rank->add_flag("--hausdorff", or_hausdorff,
                         "print the condensation rank instead");

    std::string ot_term;
    std::vector<std::uint64_t> ot_dump_vals;
    std::string ot_check;
    bool ot_validate = false;
    CLI::App* order_topo = app.add_subcommand(
        "order-topo", "the interval topology of an order term");
    order_topo->fallthrough();
    order_topo->add_option("term", ot_term, "order term")->required();
    CLI::Option* ot_dump = order_topo->add_option(
        "--dump", ot_dump_vals, "dump the presentation (optionally at N M)");
    ot_dump->expected(0, 2);
    order_topo->add_option("--check", ot_check, "run a bounded axiom check");
    order_topo->add_flag("--validate", ot_validate,
                         "validate the topology on the window");

    std::string gr_term;
    std::string gr_i;
    std::string gr_ii;
    std::uint64_t gr_rounds = 0;
    std::string gr_script;
    std::uint64_t gr_window = 64;
    CLI::App* game_run =
        app.add_subcommand("game-run", "play the interval nesting game");
    game_run->fallthrough();
    game_run->add_option("--order", gr_term, "order term")->required();
    game_run->add_option("--I", gr_i, "challenger: diag | random | scripted")
        ->required();
    game_run->add_option("--II", gr_ii, "defender: rank | random | scripted")
        ->required();
    game_run->add_option("--rounds", gr_rounds, "rounds to play")->required();
    game_run->add_option("--script", gr_script,
                         "move script file ('-' for standard input)");
    game_run->add_option("--window", gr_window,
                         "point-code window for random strategies");

    std::string cv_manifest;
    CLI::App* corpus_verify = app.add_subcommand(
        "corpus-verify", "check a manifest of gadget profiles and order ranks");
    corpus_verify->fallthrough();
    corpus_verify->add_option("manifest", cv_manifest, "manifest file")
        ->required();

    std::vector<std::string> args = normalize_verbs(raw_args);
    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        Bounds bounds = parse_bounds_text(bounds_text);
        if (app.got_subcommand(gadget_build)) {
            if (gb_dump_vals.size() == 1) {
                throw std::invalid_argument(
                    "--dump expects zero or two values (N M)");
            }
            return cmd_gadget_build(gb_spec, gb_dump->count() > 0, gb_dump_vals,
                                    bounds, stage_budget, out);
        }
        if (app.got_subcommand(gadget_decide)) {
            return cmd_gadget_decide(gd_axiom, gd_spec, stage_budget, out);
        }
        if (app.got_subcommand(space_check) ||
            app.got_subcommand(space_dump)) {
            const bool check = app.got_subcommand(space_check);
            const std::string& gadget_path = check ? sc_gadget : sd_gadget;
            const std::string& order_term = check ? sc_order : sd_order;
            if (gadget_path.empty() == order_term.empty()) {
                err << "error: name the space with exactly one of --gadget or "
                       "--order\n";
                return 1;
            }
            SpacePtr space = resolve_space(gadget_path, order_term, stage_budget);
            return check ? cmd_space_check(sc_axiom, space, bounds, sc_dump, out)
                         : cmd_space_dump(space, bounds, sd_k, sd_validate, out);
        }
        if (app.got_subcommand(order_rank)) {
            return cmd_order_rank(or_term, or_hausdorff, out);
        }
        if (app.got_subcommand(order_topo)) {
            if (ot_dump_vals.size() == 1) {
                throw std::invalid_argument(
                    "--dump expects zero or two values (N M)");
            }
            return cmd_order_topo(ot_term, ot_dump->count() > 0, ot_dump_vals,
                                  bounds, ot_check, ot_validate, out);
        }
        if (app.got_subcommand(game_run)) {
            return cmd_game_run(gr_term, gr_i, gr_ii, gr_rounds, gr_script, seed,
                                gr_window, in, out, err);
        }
        if (app.got_subcommand(corpus_verify)) {
            return cmd_corpus_verify(cv_manifest, out);
        }
        out << app.help();
        return 1;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const NoDropInterval& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const EvalNontotal& e) {
        err << "error: " << e.what() << " (point " << e.point() << ")\n";
        return 2;
    } catch (const CoverageFailure& e) {
        err << "error: " << e.what() << " (point " << e.point() << ")\n";
        return 2;
    } catch (const RulesIncomplete& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotScattered& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace csctop
