#include "ordltl/ordinal.hpp"

#include <cctype>
#include <charconv>
#include <limits>

namespace ordltl {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    if (a > std::numeric_limits<std::uint64_t>::max() - b)
        throw OrdinalOverflow("ordinal coefficient overflow");
    return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw OrdinalOverflow("ordinal coefficient overflow");
    return a * b;
}

}  // namespace

Ordinal::Ordinal(std::vector<Term> terms) : terms_(std::move(terms))
{
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coefficient == 0)
            throw std::invalid_argument("ordinal term with zero coefficient");
        if (i > 0 && terms_[i - 1].exponent <= terms_[i].exponent)
            throw std::invalid_argument("ordinal exponents must strictly decrease");
    }
}

Ordinal Ordinal::finite(std::uint64_t n)
{
    if (n == 0) return {};
    return Ordinal{{{0, n}}};
}

Ordinal Ordinal::omega_power(std::uint64_t e) { return Ordinal{{{e, 1}}}; }

std::uint64_t Ordinal::finite_value() const
{
    if (!is_finite()) throw std::domain_error("ordinal " + to_string(*this) + " is infinite");
    return terms_.empty() ? 0 : terms_.front().coefficient;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) noexcept
{
    const auto& x = a.terms();
    const auto& y = b.terms();
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (auto c = x[i].exponent <=> y[i].exponent; c != 0) return c;
        if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
    }
    return x.size() <=> y.size();
}

Cmp compare(const Ordinal& a, const Ordinal& b) noexcept
{
    const auto c = a <=> b;
    if (c < 0) return Cmp::LT;
    if (c > 0) return Cmp::GT;
    return Cmp::EQ;
}

Ordinal add(const Ordinal& a, const Ordinal& b)
{
    if (b.is_zero()) return a;
    const auto& bt = b.terms();
    const std::uint64_t lead = bt.front().exponent;
    std::vector<Ordinal::Term> out;
    for (const auto& t : a.terms()) {
        if (t.exponent < lead) break;
        out.push_back(t);
    }
    std::size_t from = 0;
    if (!out.empty() && out.back().exponent == lead) {
        out.back().coefficient = checked_add(out.back().coefficient, bt.front().coefficient);
        from = 1;
    }
    out.insert(out.end(), bt.begin() + static_cast<std::ptrdiff_t>(from), bt.end());
    return Ordinal{std::move(out)};
}

Ordinal left_subtract(const Ordinal& a, const Ordinal& c)
{
    if (a > c)
        throw std::domain_error("left_subtract: " + to_string(a) + " exceeds " + to_string(c));
    const auto& at = a.terms();
    const auto& ct = c.terms();
    std::size_t i = 0;
    while (i < at.size() && at[i] == ct[i]) ++i;
    if (i == at.size()) return Ordinal{{ct.begin() + static_cast<std::ptrdiff_t>(i), ct.end()}};
    // a < c and they first differ at term i: c's term dominates. Either the
    // exponent is larger, or the exponents match and c has more copies.
    std::vector<Ordinal::Term> out;
    if (ct[i].exponent == at[i].exponent)
        out.push_back({ct[i].exponent, ct[i].coefficient - at[i].coefficient});
    else
        out.push_back(ct[i]);
    out.insert(out.end(), ct.begin() + static_cast<std::ptrdiff_t>(i) + 1, ct.end());
    return Ordinal{std::move(out)};
}

Ordinal succ(const Ordinal& a) { return add(a, Ordinal::finite(1)); }

Ordinal times_omega(const Ordinal& b)
{
    if (b.is_zero()) throw std::domain_error("times_omega of zero");
    return Ordinal::omega_power(checked_add(b.leading_exponent(), 1));
}

Ordinal times_natural(const Ordinal& b, std::uint64_t n)
{
    if (n == 0 || b.is_zero()) return {};
    auto terms = b.terms();
    terms.front().coefficient = checked_mul(terms.front().coefficient, n);
    return Ordinal{std::move(terms)};
}

Division divide_below_omega_multiple(const Ordinal& p, const Ordinal& b)
{
    if (b.is_zero()) throw std::domain_error("division by zero ordinal");
    const std::uint64_t e = b.leading_exponent();
    if (!p.is_zero() && p.leading_exponent() > e)
        throw std::domain_error("position " + to_string(p) + " is not below " + to_string(b) + "*w");
    if (p < b) return {0, p};
    // b*n = w^e*(c*n) + tail(b), so n is bounded by the ratio of leading
    // coefficients; step down at most once.
    const std::uint64_t c = b.terms().front().coefficient;
    std::uint64_t n = p.terms().front().coefficient / c;
    Ordinal bn = times_natural(b, n);
    if (bn > p) bn = times_natural(b, --n);
    return {n, left_subtract(bn, p)};
}

std::string to_string(const Ordinal& a)
{
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& t : a.terms()) {
        if (!out.empty()) out += '+';
        if (t.exponent == 0) {
            out += std::to_string(t.coefficient);
            continue;
        }
        out += 'w';
        if (t.exponent > 1) out += '^' + std::to_string(t.exponent);
        if (t.coefficient > 1) out += '*' + std::to_string(t.coefficient);
    }
    return out;
}

namespace {

class OrdinalReader {
public:
    explicit OrdinalReader(std::string_view s) : s_(s) {}

    Ordinal read()
    {
        skip();
        if (at_end()) fail("empty ordinal");
        std::vector<Ordinal::Term> terms;
        for (;;) {
            Ordinal::Term t = term();
            if (t.coefficient != 0) terms.push_back(t);
            skip();
            if (at_end()) break;
            expect('+');
        }
        return Ordinal{std::move(terms)};
    }

private:
    Ordinal::Term term()
    {
        skip();
        if (!at_end() && s_[i_] == 'w') {
            ++i_;
            std::uint64_t e = 1, c = 1;
            skip();
            if (!at_end() && s_[i_] == '^') {
                ++i_;
                e = number();
                skip();
            }
            if (!at_end() && s_[i_] == '*') {
                ++i_;
                c = number();
                if (c == 0) fail("zero coefficient");
            }
            return {e, c};
        }
        return {0, number()};
    }

    std::uint64_t number()
    {
        skip();
        std::uint64_t v = 0;
        const char* first = s_.data() + i_;
        const char* last = s_.data() + s_.size();
        auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec == std::errc::result_out_of_range) throw OrdinalOverflow("ordinal literal overflow");
        if (ec != std::errc{}) fail("expected a number");
        i_ += static_cast<std::size_t>(ptr - first);
        return v;
    }

    void expect(char c)
    {
        skip();
        if (at_end() || s_[i_] != c) fail(std::string("expected '") + c + "'");
        ++i_;
    }

    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool at_end() const { return i_ >= s_.size(); }
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("bad ordinal '" + std::string(s_) + "' at offset " +
                                    std::to_string(i_ + 1) + ": " + what);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalReader{text}.read(); }

}  // namespace ordltl
