#include "csctop/space.hpp"

#include <algorithm>
#include <sstream>

#include "csctop/pairing.hpp"

namespace csctop {

std::optional<std::size_t> SpacePresentation::index_of(Point x) const {
    for (std::size_t n = 0; n < points.size(); ++n) {
        if (points[n] == x) return n;
    }
    return std::nullopt;
}

std::vector<Point> SpacePresentation::row_points(BasisIndex i) const {
    std::vector<Point> out;
    if (i < rows.size()) {
        for (std::size_t n = 0; n < points.size(); ++n) {
            if (rows[i][n]) out.push_back(points[n]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

SpacePresentation truncate(const CscSpace& space, std::uint64_t N, std::uint64_t M) {
    if (N == 0 || M == 0) {
        throw std::invalid_argument("truncate requires N, M >= 1");
    }
    SpacePresentation pres;
    const std::optional<std::uint64_t> count = space.point_count();
    const std::uint64_t n_points = count.has_value() ? std::min<std::uint64_t>(N, *count) : N;
    for (std::uint64_t n = 0; n < n_points; ++n) {
        pres.points.push_back(space.point_at(n));
    }
    pres.basis_bound = M;
    pres.rows.assign(M, std::vector<bool>(pres.points.size(), false));
    for (std::uint64_t i = 0; i < M; ++i) {
        for (std::size_t n = 0; n < pres.points.size(); ++n) {
            pres.rows[i][n] = space.member(i, pres.points[n]);
        }
    }
    std::ostringstream prov;
    prov << space.describe() << " truncated to N=" << N << " M=" << M;
    pres.provenance = prov.str();
    return pres;
}

ValidationReport validate(const CscSpace& space, std::uint64_t N, std::uint64_t M) {
    ValidationReport rep;
    SpacePresentation pres;
    try {
        pres = truncate(space, N, M);
    } catch (const EvalNontotal& e) {
        rep.ok = false;
        rep.nontotal_point = e.point();
        rep.budget_exceeded = e.budget_exceeded();
        rep.detail = std::string("membership evaluation non-total: ") + e.what();
        return rep;
    }

    // Rows beyond the presented M that k may point at, evaluated on demand.
    std::map<BasisIndex, std::vector<bool>> extra_rows;
    const auto row_of = [&](BasisIndex idx) -> const std::vector<bool>& {
        if (idx < M) return pres.rows[idx];
        auto it = extra_rows.find(idx);
        if (it != extra_rows.end()) return it->second;
        std::vector<bool> row(pres.points.size(), false);
        for (std::size_t n = 0; n < pres.points.size(); ++n) {
            row[n] = space.member(idx, pres.points[n]);
        }
        return extra_rows.emplace(idx, std::move(row)).first->second;
    };

    try {
        for (std::size_t n = 0; n < pres.points.size(); ++n) {
            const Point x = pres.points[n];
            const BasisIndex cw = space.cover_witness(x);
            if (!space.member(cw, x)) {
                rep.ok = false;
                std::ostringstream os;
                os << "coverage violated: coverWitness(" << x << ") = " << cw
                   << " but point " << x << " is not in U_" << cw;
                rep.detail = os.str();
                return rep;
            }
        }
        for (BasisIndex i = 0; i < M; ++i) {
            for (BasisIndex j = 0; j < M; ++j) {
                for (std::size_t n = 0; n < pres.points.size(); ++n) {
                    if (!pres.rows[i][n] || !pres.rows[j][n]) continue;
                    const Point x = pres.points[n];
                    const BasisIndex kk = space.k(i, j, x);
                    const std::vector<bool>& krow = row_of(kk);
                    if (!krow[n]) {
                        rep.ok = false;
                        std::ostringstream os;
                        os << "k(" << i << "," << j << "," << x << ") = " << kk
                           << " but point " << x << " is not in U_" << kk;
                        rep.detail = os.str();
                        return rep;
                    }
                    for (std::size_t q = 0; q < pres.points.size(); ++q) {
                        if (krow[q] && !(pres.rows[i][q] && pres.rows[j][q])) {
                            rep.ok = false;
                            std::ostringstream os;
                            os << "k(" << i << "," << j << "," << x << ") = " << kk
                               << " but U_" << kk << " contains point " << pres.points[q]
                               << " outside U_" << i << " cap U_" << j;
                            rep.detail = os.str();
                            return rep;
                        }
                    }
                }
            }
        }
    } catch (const EvalNontotal& e) {
        rep.ok = false;
        rep.nontotal_point = e.point();
        rep.budget_exceeded = e.budget_exceeded();
        rep.detail = std::string("membership evaluation non-total: ") + e.what();
        return rep;
    } catch (const CoverageFailure& e) {
        rep.ok = false;
        rep.detail = e.what();
        return rep;
    }
    rep.detail = "ok";
    return rep;
}

std::set<Point> closure_of(const SpacePresentation& pres, const std::set<Point>& S) {
    // Which presented rows meet S?
    std::vector<bool> row_meets_S(pres.rows.size(), false);
    for (std::size_t i = 0; i < pres.rows.size(); ++i) {
        for (std::size_t n = 0; n < pres.points.size(); ++n) {
            if (pres.rows[i][n] && S.count(pres.points[n])) {
                row_meets_S[i] = true;
                break;
            }
        }
    }
    std::set<Point> out = S;
    for (std::size_t n = 0; n < pres.points.size(); ++n) {
        bool in_closure = true;
        for (std::size_t i = 0; i < pres.rows.size(); ++i) {
            if (pres.rows[i][n] && !row_meets_S[i]) {
                in_closure = false;
                break;
            }
        }
        if (in_closure) out.insert(pres.points[n]);
    }
    return out;
}

IsolationAnswer is_isolated(const CscSpace& space, Point x, std::uint64_t N, std::uint64_t M) {
    IsolationAnswer exact = space.exact_isolated(x);
    if (exact.verdict == Ternary::Yes || exact.verdict == Ternary::No) {
        return exact;
    }
    // No certificate from the space: search the truncation for a candidate
    // singleton row. Finding one is evidence, not proof.
    IsolationAnswer out;
    SpacePresentation pres;
    try {
        pres = truncate(space, N, M);
    } catch (const EvalNontotal&) {
        return out;
    }
    const std::optional<std::size_t> xi = pres.index_of(x);
    if (!xi.has_value()) return out;
    for (std::size_t i = 0; i < pres.rows.size(); ++i) {
        bool singleton = pres.rows[i][*xi];
        if (!singleton) continue;
        for (std::size_t n = 0; singleton && n < pres.points.size(); ++n) {
            if (n != *xi && pres.rows[i][n]) singleton = false;
        }
        if (singleton) {
            out.witness = i;
            break;
        }
    }
    return out;
}

std::string dump_presentation(const SpacePresentation& pres) {
    std::ostringstream out;
    out << "CSC " << pres.points.size() << " " << pres.basis_bound << "\n";
    for (std::size_t i = 0; i < pres.rows.size(); ++i) {
        out << "U " << i << ":";
        for (Point p : pres.row_points(i)) {
            out << " " << p;
        }
        out << "\n";
    }
    return out.str();
}

std::string dump_k_block(const CscSpace& space, const SpacePresentation& pres) {
    std::ostringstream out;
    for (std::size_t i = 0; i < pres.rows.size(); ++i) {
        for (std::size_t j = 0; j < pres.rows.size(); ++j) {
            for (std::size_t n = 0; n < pres.points.size(); ++n) {
                if (pres.rows[i][n] && pres.rows[j][n]) {
                    out << "K " << i << " " << j << " " << pres.points[n] << " "
                        << space.k(i, j, pres.points[n]) << "\n";
                }
            }
        }
    }
    return out.str();
}

Point HookSpace::point_at(std::uint64_t n) const {
    if (cfg_.count.has_value() && n >= *cfg_.count) {
        throw std::out_of_range("point_at beyond the end of a finite space");
    }
    return cfg_.point_at(n);
}

// --- disjoint unions ------------------------------------------------------

DisjointUnionSpace::DisjointUnionSpace(std::string name, std::vector<SpacePtr> prefix,
                                       std::function<SpacePtr(std::uint64_t)> rest)
    : name_(std::move(name)), prefix_(std::move(prefix)), rest_(std::move(rest)) {
    if (prefix_.empty() && !rest_) {
        throw std::invalid_argument("disjoint union needs at least one component");
    }
    for (const auto& c : prefix_) {
        if (!c) throw std::invalid_argument("disjoint union component is null");
    }
}

std::optional<std::uint64_t> DisjointUnionSpace::component_count() const {
    if (rest_) return std::nullopt;
    return prefix_.size();
}

SpacePtr DisjointUnionSpace::component(std::uint64_t c) const {
    if (c < prefix_.size()) return prefix_[c];
    if (!rest_) {
        throw std::out_of_range("component index beyond a finite family");
    }
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(c);
    if (it != memo_.end()) return it->second;
    SpacePtr built = rest_(c);
    if (!built) throw std::logic_error("component generator returned null");
    memo_.emplace(c, built);
    return built;
}

std::optional<std::uint64_t> DisjointUnionSpace::point_count() const {
    if (rest_) return std::nullopt;
    std::uint64_t total = 0;
    for (const auto& c : prefix_) {
        const auto n = c->point_count();
        if (!n.has_value()) return std::nullopt;
        total += *n;
    }
    return total;
}

Point DisjointUnionSpace::point_at(std::uint64_t n) const {
    const std::optional<std::uint64_t> total = point_count();
    if (total.has_value() && n >= *total) {
        throw std::out_of_range("point_at beyond the end of a finite disjoint union");
    }
    // Dovetail over pair codes (component, local enumeration index), skipping
    // slots past the end of finite components.
    const std::optional<std::uint64_t> comps = component_count();
    std::uint64_t seen = 0;
    for (std::uint64_t z = 0;; ++z) {
        const auto [c, m] = unpair_code(z);
        if (comps.has_value() && c >= *comps) continue;
        const SpacePtr comp = component(c);
        const auto local_count = comp->point_count();
        if (local_count.has_value() && m >= *local_count) continue;
        if (seen == n) {
            return pair_code(c, comp->point_at(m));
        }
        ++seen;
    }
}

bool DisjointUnionSpace::contains(Point x) const {
    const auto [c, local] = unpair_code(x);
    const std::optional<std::uint64_t> comps = component_count();
    if (comps.has_value() && c >= *comps) return false;
    return component(c)->contains(local);
}

bool DisjointUnionSpace::member(BasisIndex i, Point x) const {
    const auto [ci, li] = unpair_code(i);
    const auto [cx, lx] = unpair_code(x);
    if (ci != cx) return false;
    const std::optional<std::uint64_t> comps = component_count();
    if (comps.has_value() && ci >= *comps) return false;
    return component(ci)->member(li, lx);
}

BasisIndex DisjointUnionSpace::k(BasisIndex i, BasisIndex j, Point x) const {
    const auto [ci, li] = unpair_code(i);
    const auto [cj, lj] = unpair_code(j);
    const auto [cx, lx] = unpair_code(x);
    if (ci != cj || ci != cx) {
        throw std::logic_error("k queried across disjoint components");
    }
    return pair_code(ci, component(ci)->k(li, lj, lx));
}

BasisIndex DisjointUnionSpace::cover_witness(Point x) const {
    const auto [c, local] = unpair_code(x);
    return pair_code(c, component(c)->cover_witness(local));
}

IsolationAnswer DisjointUnionSpace::exact_isolated(Point x) const {
    const auto [c, local] = unpair_code(x);
    const std::optional<std::uint64_t> comps = component_count();
    if (comps.has_value() && c >= *comps) return {};
    IsolationAnswer a = component(c)->exact_isolated(local);
    if (a.witness.has_value()) {
        a.witness = pair_code(c, *a.witness);
    }
    return a;
}

// --- subbasis closure -----------------------------------------------------

std::vector<BasisIndex> subbasis_list_of(BasisIndex code) {
    std::vector<BasisIndex> out;
    std::uint64_t base = 0;
    std::uint64_t cur = code;
    for (;;) {
        const auto [d, r] = unpair_code(cur);
        const BasisIndex idx = base + d;
        out.push_back(idx);
        if (r == 0) break;
        base = idx + 1;
        cur = r - 1;
    }
    return out;
}

BasisIndex subbasis_code_of(const std::vector<BasisIndex>& list) {
    if (list.empty()) {
        throw std::invalid_argument("subbasis code of an empty list");
    }
    for (std::size_t t = 1; t < list.size(); ++t) {
        if (list[t] <= list[t - 1]) {
            throw std::invalid_argument("subbasis index list must be strictly increasing");
        }
    }
    // Build from the tail: rest-code 0 marks the end of the list.
    std::uint64_t cur = 0;
    for (std::size_t t = list.size(); t-- > 0;) {
        const std::uint64_t base = (t == 0) ? 0 : list[t - 1] + 1;
        const std::uint64_t rest = (t + 1 == list.size()) ? 0 : cur + 1;
        cur = pair_code(list[t] - base, rest);
    }
    return cur;
}

namespace {

class SubbasisClosureSpace : public CscSpace {
public:
    explicit SubbasisClosureSpace(Subbasis sb) : sb_(std::move(sb)) {}

    std::string describe() const override { return sb_.name + " (intersection-closed)"; }
    std::optional<std::uint64_t> point_count() const override { return sb_.point_count; }
    Point point_at(std::uint64_t n) const override {
        if (sb_.point_count.has_value() && n >= *sb_.point_count) {
            throw std::out_of_range("point_at beyond the end of a finite space");
        }
        return sb_.point_at(n);
    }
    bool contains(Point x) const override { return sb_.contains(x); }

    bool member(BasisIndex i, Point x) const override {
        for (BasisIndex s : subbasis_list_of(i)) {
            if (!sb_.member(s, x)) return false;
        }
        return true;
    }

    BasisIndex k(BasisIndex i, BasisIndex j, Point x) const override {
        (void)x;
        std::vector<BasisIndex> a = subbasis_list_of(i);
        const std::vector<BasisIndex> b = subbasis_list_of(j);
        a.insert(a.end(), b.begin(), b.end());
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        return subbasis_code_of(a);
    }

    BasisIndex cover_witness(Point x) const override {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cover_memo_.find(x);
            if (it != cover_memo_.end()) return it->second;
        }
        for (BasisIndex s = 0; s < sb_.cover_search_bound; ++s) {
            if (sb_.member(s, x)) {
                const BasisIndex code = subbasis_code_of({s});
                std::lock_guard<std::mutex> lock(mu_);
                cover_memo_.emplace(x, code);
                return code;
            }
        }
        throw CoverageFailure(
            x, "coverage failure: point " + std::to_string(x) + " lies in none of the first " +
                   std::to_string(sb_.cover_search_bound) + " subbasic sets");
    }

private:
    Subbasis sb_;
    mutable std::mutex mu_;
    mutable std::map<Point, BasisIndex> cover_memo_;
};

} // namespace

SpacePtr close_subbasis(Subbasis sb) {
    return std::make_shared<SubbasisClosureSpace>(std::move(sb));
}

} // namespace csctop
