// ordltl/ordinal.hpp
//
// Ordinals below w^w in Cantor normal form: a strictly decreasing sequence of
// (exponent, coefficient) terms, coefficient >= 1. The empty sequence is 0.
// Canonical form is unique, so equality is term-wise.
//
// Text form: "0", "5", "w", "w^2", "w^2*3+w*2+7".

#ifndef ORDLTL_ORDINAL_HPP
#define ORDLTL_ORDINAL_HPP

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ordltl {

/// Exponent or coefficient would not fit a machine natural.
class OrdinalOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

class Ordinal {
public:
    struct Term {
        std::uint64_t exponent;
        std::uint64_t coefficient;
        friend bool operator==(const Term&, const Term&) = default;
    };

    Ordinal() = default;
    /// Throws std::invalid_argument unless `terms` is canonical.
    explicit Ordinal(std::vector<Term> terms);

    static Ordinal zero() { return {}; }
    static Ordinal finite(std::uint64_t n);
    /// w^e
    static Ordinal omega_power(std::uint64_t e);

    const std::vector<Term>& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_limit() const noexcept { return !terms_.empty() && terms_.back().exponent > 0; }
    bool is_successor() const noexcept { return !terms_.empty() && terms_.back().exponent == 0; }
    bool is_finite() const noexcept { return terms_.empty() || terms_.front().exponent == 0; }
    /// Exponent of the leading term; 0 for zero.
    std::uint64_t leading_exponent() const noexcept
    {
        return terms_.empty() ? 0 : terms_.front().exponent;
    }
    /// Value of a finite ordinal; throws std::domain_error otherwise.
    std::uint64_t finite_value() const;

    friend bool operator==(const Ordinal&, const Ordinal&) = default;
    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) noexcept;

private:
    std::vector<Term> terms_;
};

enum class Cmp { LT, EQ, GT };

Cmp compare(const Ordinal& a, const Ordinal& b) noexcept;
Ordinal add(const Ordinal& a, const Ordinal& b);
/// The unique b with add(a, b) == c. Throws std::domain_error if a > c.
Ordinal left_subtract(const Ordinal& a, const Ordinal& c);
Ordinal succ(const Ordinal& a);
inline bool is_limit(const Ordinal& a) noexcept { return a.is_limit(); }
inline bool is_zero(const Ordinal& a) noexcept { return a.is_zero(); }
/// b * w, which is w^(e+1) for leading exponent e. Throws on zero.
Ordinal times_omega(const Ordinal& b);
/// b * n for a natural n.
Ordinal times_natural(const Ordinal& b, std::uint64_t n);

/// Largest n with b*n <= p together with the remainder r, p = b*n + r,
/// r < b. Requires b > 0 and p < b*w.
struct Division {
    std::uint64_t quotient;
    Ordinal remainder;
};
Division divide_below_omega_multiple(const Ordinal& p, const Ordinal& b);

std::string to_string(const Ordinal& a);
/// Throws std::invalid_argument on malformed text.
Ordinal parse_ordinal(std::string_view text);

}  // namespace ordltl

#endif  // ORDLTL_ORDINAL_HPP
