#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace csctop {

// Ordinals below epsilon_0 in Cantor normal form:
//   w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck   with e1 > e2 > ... > ek, ci >= 1.
// Exponents are themselves Ordinals; the zero ordinal has an empty term list.
class Ordinal {
public:
    struct Term;

    Ordinal() = default;                       // zero
    explicit Ordinal(std::uint64_t n);         // finite ordinal
    static Ordinal omega();
    static Ordinal omega_pow(const Ordinal& exp, std::uint64_t coeff = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_finite() const;
    std::uint64_t finite_value() const;        // throws unless is_finite()
    bool is_successor() const;                 // last exponent is zero
    bool is_limit() const;                     // nonzero and last exponent nonzero

    const std::vector<Term>& terms() const { return terms_; }
    Ordinal lead_exp() const;                  // exponent of the largest term
    std::uint64_t lead_coeff() const;
    Ordinal last_exp() const;                  // exponent of the smallest term
    Ordinal succ() const;
    Ordinal pred() const;                      // throws unless is_successor()

    Ordinal operator+(const Ordinal& rhs) const;
    Ordinal operator*(const Ordinal& rhs) const;

    // Three-way comparison: negative, zero, or positive like strcmp.
    static int compare(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b) { return compare(a, b) == 0; }
    friend bool operator!=(const Ordinal& a, const Ordinal& b) { return compare(a, b) != 0; }
    friend bool operator<(const Ordinal& a, const Ordinal& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Ordinal& a, const Ordinal& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Ordinal& a, const Ordinal& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Ordinal& a, const Ordinal& b) { return compare(a, b) >= 0; }

    // Renders as e.g. "0", "4", "w", "w^2*3+w+4", "w^(w+1)*2+1".
    std::string to_string() const;

    // Parses the syntax produced by to_string (sums/products of w-powers and
    // numerals, with parentheses). Returns nullopt on malformed input.
    static std::optional<Ordinal> parse(const std::string& text);

private:
    std::vector<Term> terms_;  // strictly decreasing exponents
};

struct Ordinal::Term {
    Ordinal exp;
    std::uint64_t coeff = 1;
};

// Rank values: a concrete ordinal, or "infinite" encoded as nullopt.
using RankValue = std::optional<Ordinal>;

std::string rank_to_string(const RankValue& r);
std::optional<RankValue> rank_parse(const std::string& text);

// Max of two rank values, treating nullopt as the top element.
RankValue rank_max(const RankValue& a, const RankValue& b);
bool rank_less(const RankValue& a, const RankValue& b);

} // namespace csctop
