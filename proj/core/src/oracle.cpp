#include "csctop/oracle.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace csctop {

namespace {

// Does the default rule halt on input x?
StageEntry default_resolution(const DefaultRule& rule, std::uint64_t x) {
    switch (rule.kind) {
        case DefaultRule::Kind::Diverge:
            return StageEntry{false, 0, 0};
        case DefaultRule::Kind::HaltAtSelf:
            return StageEntry{true, x, rule.value};
        case DefaultRule::Kind::Modular: {
            const auto& r = rule.residues[x % rule.residues.size()];
            if (!r.has_value()) return StageEntry{false, 0, 0};
            return StageEntry{true, x, *r};
        }
    }
    return StageEntry{false, 0, 0};
}

// Does the default rule halt on infinitely many inputs with value != 1, or
// diverge on infinitely many inputs? ("bad for value-1 cofiniteness")
bool default_spoils_ones(const DefaultRule& rule) {
    switch (rule.kind) {
        case DefaultRule::Kind::Diverge:
            return true;
        case DefaultRule::Kind::HaltAtSelf:
            return rule.value != 1;
        case DefaultRule::Kind::Modular:
            for (const auto& r : rule.residues) {
                if (!r.has_value() || *r != 1) return true;
            }
            return false;
    }
    return true;
}

bool default_halts_somewhere(const DefaultRule& rule) {
    switch (rule.kind) {
        case DefaultRule::Kind::Diverge:
            return false;
        case DefaultRule::Kind::HaltAtSelf:
            return true;
        case DefaultRule::Kind::Modular:
            for (const auto& r : rule.residues) {
                if (r.has_value()) return true;
            }
            return false;
    }
    return false;
}

bool default_halts_everywhere(const DefaultRule& rule) {
    switch (rule.kind) {
        case DefaultRule::Kind::Diverge:
            return false;
        case DefaultRule::Kind::HaltAtSelf:
            return true;
        case DefaultRule::Kind::Modular:
            for (const auto& r : rule.residues) {
                if (!r.has_value()) return false;
            }
            return true;
    }
    return false;
}

} // namespace

StageFunction::StageFunction(OracleSpec spec) : spec_(std::move(spec)) {
    if (spec_.rule.kind == DefaultRule::Kind::Modular) {
        if (spec_.rule.residues.empty()) {
            throw std::invalid_argument("modular default rule needs period >= 1");
        }
    } else if (!spec_.rule.residues.empty()) {
        throw std::invalid_argument("residue list only valid for a modular default rule");
    }
}

StageEntry StageFunction::default_entry(std::uint64_t x) const {
    return default_resolution(spec_.rule, x);
}

void StageFunction::require_transparent(const char* op) const {
    if (spec_.opaque) {
        throw std::logic_error(std::string(op) + " requires a transparent stage function");
    }
}

const StageEntry StageFunction::resolve(std::uint64_t x) const {
    require_transparent("resolve");
    auto it = spec_.entries.find(x);
    if (it != spec_.entries.end()) return it->second;
    return default_entry(x);
}

Ternary StageFunction::halted_by(std::uint64_t x, std::uint64_t s) const {
    auto it = spec_.entries.find(x);
    const StageEntry e = (it != spec_.entries.end()) ? it->second : default_entry(x);
    if (!spec_.opaque) {
        return (e.halts && e.stage <= s) ? Ternary::Yes : Ternary::No;
    }
    // Opaque: only behavior within the fuel budget is observable.
    if (e.halts && e.stage <= s && e.stage <= spec_.budget) return Ternary::Yes;
    if (s > spec_.budget) return Ternary::Unknown;
    return Ternary::No;
}

Ternary StageFunction::halted_with_value_by(std::uint64_t x, std::uint64_t s, std::uint64_t v) const {
    auto it = spec_.entries.find(x);
    const StageEntry e = (it != spec_.entries.end()) ? it->second : default_entry(x);
    if (!spec_.opaque) {
        return (e.halts && e.stage <= s && e.value == v) ? Ternary::Yes : Ternary::No;
    }
    if (e.halts && e.stage <= s && e.stage <= spec_.budget) {
        return e.value == v ? Ternary::Yes : Ternary::No;
    }
    if (s > spec_.budget) return Ternary::Unknown;
    return Ternary::No;
}

bool StageFunction::is_total() const {
    require_transparent("is_total");
    for (const auto& [x, e] : spec_.entries) {
        if (!e.halts) return false;
    }
    return default_halts_everywhere(spec_.rule);
}

std::optional<std::uint64_t> StageFunction::first_divergent() const {
    require_transparent("first_divergent");
    if (is_total()) return std::nullopt;
    const std::uint64_t max_explicit =
        spec_.entries.empty() ? 0 : spec_.entries.rbegin()->first;
    const std::uint64_t period =
        spec_.rule.kind == DefaultRule::Kind::Modular ? spec_.rule.residues.size() : 1;
    for (std::uint64_t x = 0; x <= max_explicit + period + 1; ++x) {
        auto it = spec_.entries.find(x);
        const StageEntry e = (it != spec_.entries.end()) ? it->second : default_entry(x);
        if (!e.halts) return x;
    }
    throw std::logic_error("first_divergent: inconsistent totality analysis");
}

bool StageFunction::ones_cofinite() const {
    require_transparent("ones_cofinite");
    return !default_spoils_ones(spec_.rule);
}

bool StageFunction::ones_coinfinite() const {
    require_transparent("ones_coinfinite");
    return default_spoils_ones(spec_.rule);
}

std::uint64_t StageFunction::ones_threshold() const {
    require_transparent("ones_threshold");
    if (!ones_cofinite()) {
        throw std::logic_error("ones_threshold: value-1 set is not cofinite");
    }
    std::uint64_t t = 0;
    for (const auto& [x, e] : spec_.entries) {
        if (!(e.halts && e.value == 1)) t = std::max(t, x + 1);
    }
    return t;
}

bool StageFunction::ones_universal() const {
    require_transparent("ones_universal");
    if (default_spoils_ones(spec_.rule)) return false;
    for (const auto& [x, e] : spec_.entries) {
        if (!(e.halts && e.value == 1)) return false;
    }
    return true;
}

bool StageFunction::domain_finite() const {
    require_transparent("domain_finite");
    return !default_halts_somewhere(spec_.rule);
}

std::vector<std::uint64_t> StageFunction::domain_elements() const {
    require_transparent("domain_elements");
    if (!domain_finite()) {
        throw std::logic_error("domain_elements: halting set is infinite");
    }
    std::vector<std::uint64_t> out;
    for (const auto& [x, e] : spec_.entries) {
        if (e.halts) out.push_back(x);
    }
    return out;
}

// --- file format ----------------------------------------------------------

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

std::uint64_t parse_nat(const std::string& tok, std::size_t line_no, const char* what) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError(line_no, std::string("expected a natural number for ") + what +
                                      ", got '" + tok + "'");
    }
    try {
        return std::stoull(tok);
    } catch (const std::exception&) {
        throw ParseError(line_no, std::string("number out of range for ") + what);
    }
}

} // namespace

OracleSpec parse_oracle(std::istream& in) {
    OracleSpec spec;
    bool saw_default = false;
    bool saw_opaque = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "DEFAULT") {
            if (saw_default) throw ParseError(line_no, "duplicate DEFAULT line");
            saw_default = true;
            if (toks.size() >= 2 && toks[1] == "DIV") {
                if (toks.size() != 2) throw ParseError(line_no, "DEFAULT DIV takes no arguments");
                spec.rule.kind = DefaultRule::Kind::Diverge;
            } else if (toks.size() >= 2 && toks[1] == "HALT-AT-SELF") {
                if (toks.size() != 3) {
                    throw ParseError(line_no, "DEFAULT HALT-AT-SELF needs exactly one value");
                }
                spec.rule.kind = DefaultRule::Kind::HaltAtSelf;
                spec.rule.value = parse_nat(toks[2], line_no, "default value");
            } else if (toks.size() >= 2 && toks[1] == "MOD") {
                if (toks.size() < 3) throw ParseError(line_no, "DEFAULT MOD needs a period");
                spec.rule.kind = DefaultRule::Kind::Modular;
                const std::uint64_t p = parse_nat(toks[2], line_no, "modular period");
                if (p == 0) throw ParseError(line_no, "modular period must be >= 1");
                if (toks.size() != 3 + p) {
                    throw ParseError(line_no, "DEFAULT MOD " + std::to_string(p) + " needs " +
                                                  std::to_string(p) + " residue behaviors");
                }
                for (std::uint64_t r = 0; r < p; ++r) {
                    const std::string& tok = toks[3 + r];
                    if (tok == "DIV") {
                        spec.rule.residues.push_back(std::nullopt);
                    } else if (tok.rfind("HALT:", 0) == 0) {
                        spec.rule.residues.push_back(
                            parse_nat(tok.substr(5), line_no, "residue value"));
                    } else {
                        throw ParseError(line_no, "residue behavior must be HALT:<v> or DIV");
                    }
                }
            } else {
                throw ParseError(line_no, "DEFAULT must be DIV, HALT-AT-SELF, or MOD");
            }
        } else if (toks[0] == "OPAQUE") {
            if (saw_opaque) throw ParseError(line_no, "duplicate OPAQUE line");
            saw_opaque = true;
            spec.opaque = true;
            if (toks.size() == 2) {
                spec.budget = parse_nat(toks[1], line_no, "budget");
            } else if (toks.size() != 1) {
                throw ParseError(line_no, "OPAQUE takes at most one budget argument");
            }
        } else {
            const std::uint64_t x = parse_nat(toks[0], line_no, "input");
            if (spec.entries.count(x)) {
                throw ParseError(line_no, "contradictory duplicate entry for input " +
                                              std::to_string(x));
            }
            if (toks.size() == 2 && toks[1] == "DIV") {
                spec.entries[x] = StageEntry{false, 0, 0};
            } else if (toks.size() == 4 && toks[1] == "HALT") {
                StageEntry e;
                e.halts = true;
                e.stage = parse_nat(toks[2], line_no, "stage");
                e.value = parse_nat(toks[3], line_no, "value");
                spec.entries[x] = e;
            } else {
                throw ParseError(line_no, "entry must be '<x> HALT <s> <v>' or '<x> DIV'");
            }
        }
    }
    return spec;
}

OracleSpec parse_oracle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open oracle file '" + path + "'");
    }
    try {
        return parse_oracle(in);
    } catch (const ParseError& e) {
        throw ParseError(e.line(), path + ": " + e.what());
    }
}

std::string serialize_oracle(const OracleSpec& spec) {
    std::ostringstream out;
    switch (spec.rule.kind) {
        case DefaultRule::Kind::Diverge:
            out << "DEFAULT DIV\n";
            break;
        case DefaultRule::Kind::HaltAtSelf:
            out << "DEFAULT HALT-AT-SELF " << spec.rule.value << "\n";
            break;
        case DefaultRule::Kind::Modular:
            out << "DEFAULT MOD " << spec.rule.residues.size();
            for (const auto& r : spec.rule.residues) {
                if (r.has_value()) {
                    out << " HALT:" << *r;
                } else {
                    out << " DIV";
                }
            }
            out << "\n";
            break;
    }
    if (spec.opaque) {
        out << "OPAQUE " << spec.budget << "\n";
    }
    for (const auto& [x, e] : spec.entries) {
        if (e.halts) {
            out << x << " HALT " << e.stage << " " << e.value << "\n";
        } else {
            out << x << " DIV\n";
        }
    }
    return out.str();
}

// --- c.e. sets ------------------------------------------------------------

CeSet::CeSet(StageFunction fn) : fn_(std::move(fn)) {
    // Reject presentations where two elements appear at the same stage. The
    // possible clashes are explicit/explicit and explicit/default; distinct
    // default-ruled inputs halt at their own (distinct) stages.
    const auto& spec = fn_.spec();
    std::map<std::uint64_t, std::uint64_t> stage_owner;
    for (const auto& [x, e] : spec.entries) {
        if (!e.halts) continue;
        auto [it, fresh] = stage_owner.emplace(e.stage, x);
        if (!fresh) {
            throw std::invalid_argument(
                "elements " + std::to_string(it->second) + " and " + std::to_string(x) +
                " would both appear at stage " + std::to_string(e.stage + 1));
        }
        if (!spec.entries.count(e.stage) && e.stage != x) {
            const StageEntry d = default_resolution(spec.rule, e.stage);
            if (d.halts) {
                throw std::invalid_argument(
                    "elements " + std::to_string(e.stage) + " and " + std::to_string(x) +
                    " would both appear at stage " + std::to_string(e.stage + 1));
            }
        }
    }
}

bool CeSet::gain_at(std::uint64_t t) const {
    if (fn_.opaque()) {
        throw std::logic_error("gain_at requires a transparent stage function");
    }
    return gain_at_bounded(t) == Ternary::Yes;
}

Ternary CeSet::gain_at_bounded(std::uint64_t t) const {
    if (t == 0) return Ternary::No;  // appearance stages start at 1
    const std::uint64_t s = t - 1;
    if (fn_.opaque() && s > fn_.budget()) return Ternary::Unknown;
    const auto& spec = fn_.spec();
    for (const auto& [x, e] : spec.entries) {
        if (e.halts && e.stage == s) return Ternary::Yes;
    }
    if (!spec.entries.count(s)) {
        const StageEntry d = default_resolution(spec.rule, s);
        if (d.halts && d.stage == s) return Ternary::Yes;
    }
    return Ternary::No;
}

std::optional<std::uint64_t> CeSet::element_at_stage(std::uint64_t t) const {
    if (fn_.opaque()) {
        throw std::logic_error("element_at_stage requires a transparent stage function");
    }
    if (t == 0) return std::nullopt;
    const std::uint64_t s = t - 1;
    const auto& spec = fn_.spec();
    for (const auto& [x, e] : spec.entries) {
        if (e.halts && e.stage == s) return x;
    }
    if (!spec.entries.count(s)) {
        const StageEntry d = default_resolution(spec.rule, s);
        if (d.halts) return s;
    }
    return std::nullopt;
}

std::optional<std::uint64_t> CeSet::stage_of(std::uint64_t x) const {
    const StageEntry e = fn_.resolve(x);
    if (!e.halts) return std::nullopt;
    return e.stage + 1;
}

std::vector<std::uint64_t> CeSet::fresh_stages(std::uint64_t lo, std::uint64_t hi) const {
    if (fn_.opaque()) {
        throw std::logic_error("fresh_stages requires a transparent stage function");
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t t = std::max<std::uint64_t>(lo, 1); t <= hi; ++t) {
        if (gain_at(t)) out.push_back(t);
    }
    return out;
}

std::uint64_t CeSet::count_by(std::uint64_t s) const {
    if (fn_.opaque()) {
        throw std::logic_error("count_by requires a transparent stage function");
    }
    std::uint64_t c = 0;
    for (std::uint64_t t = 1; t <= s; ++t) {
        if (gain_at(t)) ++c;
    }
    return c;
}

bool CeSet::is_finite() const {
    return fn_.domain_finite();
}

} // namespace csctop
