#include "csctop/ordinal.hpp"

#include <cctype>
#include <stdexcept>

namespace csctop {

Ordinal::Ordinal(std::uint64_t n) {
    if (n > 0) {
        terms_.push_back(Term{Ordinal(), n});
    }
}

Ordinal Ordinal::omega() {
    return omega_pow(Ordinal(1), 1);
}

Ordinal Ordinal::omega_pow(const Ordinal& exp, std::uint64_t coeff) {
    Ordinal r;
    if (coeff > 0) {
        r.terms_.push_back(Term{exp, coeff});
    }
    return r;
}

bool Ordinal::is_finite() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exp.is_zero());
}

std::uint64_t Ordinal::finite_value() const {
    if (!is_finite()) {
        throw std::logic_error("finite_value called on an infinite ordinal");
    }
    return terms_.empty() ? 0 : terms_[0].coeff;
}

bool Ordinal::is_successor() const {
    return !terms_.empty() && terms_.back().exp.is_zero();
}

bool Ordinal::is_limit() const {
    return !terms_.empty() && !terms_.back().exp.is_zero();
}

Ordinal Ordinal::lead_exp() const {
    if (terms_.empty()) {
        throw std::logic_error("lead_exp of zero");
    }
    return terms_.front().exp;
}

std::uint64_t Ordinal::lead_coeff() const {
    if (terms_.empty()) {
        throw std::logic_error("lead_coeff of zero");
    }
    return terms_.front().coeff;
}

Ordinal Ordinal::last_exp() const {
    if (terms_.empty()) {
        throw std::logic_error("last_exp of zero");
    }
    return terms_.back().exp;
}

Ordinal Ordinal::succ() const {
    return *this + Ordinal(1);
}

Ordinal Ordinal::pred() const {
    if (!is_successor()) {
        throw std::logic_error("pred of a non-successor ordinal");
    }
    Ordinal r = *this;
    if (r.terms_.back().coeff > 1) {
        r.terms_.back().coeff -= 1;
    } else {
        r.terms_.pop_back();
    }
    return r;
}

int Ordinal::compare(const Ordinal& a, const Ordinal& b) {
    const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (std::size_t i = 0; i < n; ++i) {
        const int ce = compare(a.terms_[i].exp, b.terms_[i].exp);
        if (ce != 0) return ce;
        if (a.terms_[i].coeff != b.terms_[i].coeff) {
            return a.terms_[i].coeff < b.terms_[i].coeff ? -1 : 1;
        }
    }
    if (a.terms_.size() != b.terms_.size()) {
        return a.terms_.size() < b.terms_.size() ? -1 : 1;
    }
    return 0;
}

Ordinal Ordinal::operator+(const Ordinal& rhs) const {
    if (rhs.is_zero()) return *this;
    if (is_zero()) return rhs;
    const Ordinal& e = rhs.terms_.front().exp;
    Ordinal r;
    std::size_t i = 0;
    while (i < terms_.size() && compare(terms_[i].exp, e) > 0) {
        r.terms_.push_back(terms_[i]);
        ++i;
    }
    if (i < terms_.size() && compare(terms_[i].exp, e) == 0) {
        r.terms_.push_back(Term{e, terms_[i].coeff + rhs.terms_.front().coeff});
    } else {
        r.terms_.push_back(rhs.terms_.front());
    }
    for (std::size_t j = 1; j < rhs.terms_.size(); ++j) {
        r.terms_.push_back(rhs.terms_[j]);
    }
    return r;
}

Ordinal Ordinal::operator*(const Ordinal& rhs) const {
    if (is_zero() || rhs.is_zero()) return Ordinal();
    Ordinal acc;
    for (const Term& t : rhs.terms_) {
        Ordinal piece;
        if (t.exp.is_zero()) {
            // Multiply by the finite coefficient: scale the lead term only.
            piece.terms_ = terms_;
            piece.terms_.front().coeff *= t.coeff;
        } else {
            piece.terms_.push_back(Term{terms_.front().exp + t.exp, t.coeff});
        }
        acc = acc + piece;
    }
    return acc;
}

namespace {

std::string exp_to_string(const Ordinal& e) {
    if (e == Ordinal(1)) return "w";
    if (e.is_finite()) return "w^" + std::to_string(e.finite_value());
    return "w^(" + e.to_string() + ")";
}

} // namespace

std::string Ordinal::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) out += "+";
        const Term& t = terms_[i];
        if (t.exp.is_zero()) {
            out += std::to_string(t.coeff);
        } else {
            out += exp_to_string(t.exp);
            if (t.coeff > 1) {
                out += "*" + std::to_string(t.coeff);
            }
        }
    }
    return out;
}

namespace {

// Recursive-descent parser for ordinal expressions:
//   sum     := product ('+' product)*
//   product := factor ('*' factor)*
//   factor  := 'w' ('^' factor)? | number | '(' sum ')'
// Products and sums are evaluated with ordinal arithmetic, so any expression
// in this syntax denotes a well-defined ordinal.
struct OrdinalParser {
    const std::string& text;
    std::size_t pos = 0;
    bool failed = false;

    explicit OrdinalParser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    Ordinal parse_sum() {
        Ordinal acc = parse_product();
        while (!failed && eat('+')) {
            acc = acc + parse_product();
        }
        return acc;
    }

    Ordinal parse_product() {
        Ordinal acc = parse_factor();
        while (!failed && eat('*')) {
            acc = acc * parse_factor();
        }
        return acc;
    }

    Ordinal parse_factor() {
        skip_ws();
        if (pos >= text.size()) {
            failed = true;
            return Ordinal();
        }
        const char c = text[pos];
        if (c == 'w') {
            ++pos;
            if (eat('^')) {
                return Ordinal::omega_pow(parse_factor());
            }
            return Ordinal::omega();
        }
        if (c == '(') {
            ++pos;
            Ordinal inner = parse_sum();
            if (!eat(')')) failed = true;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::uint64_t v = 0;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
                ++pos;
            }
            return Ordinal(v);
        }
        failed = true;
        return Ordinal();
    }
};

} // namespace

std::optional<Ordinal> Ordinal::parse(const std::string& text) {
    OrdinalParser p(text);
    Ordinal r = p.parse_sum();
    p.skip_ws();
    if (p.failed || p.pos != text.size()) {
        return std::nullopt;
    }
    return r;
}

std::string rank_to_string(const RankValue& r) {
    return r.has_value() ? r->to_string() : "inf";
}

std::optional<RankValue> rank_parse(const std::string& text) {
    std::string trimmed;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    }
    if (trimmed == "inf") {
        return RankValue(std::nullopt);
    }
    std::optional<Ordinal> o = Ordinal::parse(trimmed);
    if (!o.has_value()) {
        return std::nullopt;
    }
    return RankValue(*o);
}

RankValue rank_max(const RankValue& a, const RankValue& b) {
    if (!a.has_value() || !b.has_value()) return std::nullopt;
    return *a < *b ? b : a;
}

bool rank_less(const RankValue& a, const RankValue& b) {
    if (!a.has_value()) return false;          // infinite is never below anything
    if (!b.has_value()) return true;           // finite ordinal below infinite
    return *a < *b;
}

} // namespace csctop
