// ordltl/formula.hpp
//
// Future-time LTL formulas over atomic propositions.
//
// Core syntax has six constructors: T, atoms, !, &, X and strict U. Every
// other surface operator (F, G, R, |, ->, <->, WX, the constant F) is
// rewritten by the parser into the core. Formulas are immutable and share
// structure; equality and ordering are structural.
//
// Double negation never survives construction: negate(!a) yields a. This
// keeps the closure's complement pairing an involution.

#ifndef ORDLTL_FORMULA_HPP
#define ORDLTL_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ordltl {

/// Atomic proposition name, `[a-z][a-z0-9_]*`.
class Proposition {
public:
    explicit Proposition(std::string name);

    const std::string& name() const noexcept { return name_; }

    static bool valid_name(std::string_view name) noexcept;

    friend bool operator==(const Proposition&, const Proposition&) = default;
    friend auto operator<=>(const Proposition&, const Proposition&) = default;

private:
    std::string name_;
};

enum class Op : std::uint8_t { True, Atom, Not, And, Next, Until };

class Formula {
public:
    static Formula top();
    static Formula atom(const Proposition& p);
    static Formula atom(std::string name) { return atom(Proposition{std::move(name)}); }
    static Formula negate(const Formula& a);
    static Formula conj(const Formula& a, const Formula& b);
    static Formula next(const Formula& a);
    static Formula until(const Formula& a, const Formula& b);

    // Derived forms; the results are core formulas.
    static Formula bottom();
    static Formula disj(const Formula& a, const Formula& b);
    static Formula implies(const Formula& a, const Formula& b);
    static Formula iff(const Formula& a, const Formula& b);
    static Formula eventually(const Formula& a);
    static Formula always(const Formula& a);
    static Formula release(const Formula& a, const Formula& b);
    static Formula weak_next(const Formula& a);

    Op op() const noexcept;
    /// Name of an atom; empty for every other constructor.
    const std::string& name() const noexcept;
    /// Operand of !, X and the left operand of & and U.
    const Formula& lhs() const;
    /// Right operand of & and U.
    const Formula& rhs() const;

    /// Number of AST nodes.
    std::size_t size() const noexcept;
    std::size_t hash() const noexcept;

    bool is(Op o) const noexcept { return op() == o; }

    friend bool operator==(const Formula& a, const Formula& b) noexcept;
    /// Total order: by size first, so subformulas sort before their parents.
    friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Op op, std::string name, const Formula* a, const Formula* b);

    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Op op;
    std::string name;
    std::vector<Formula> kids;
    std::size_t size;
    std::size_t hash;
};

inline Op Formula::op() const noexcept { return node_->op; }
inline const std::string& Formula::name() const noexcept { return node_->name; }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline std::size_t Formula::hash() const noexcept { return node_->hash; }

struct FormulaHash {
    std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

/// Parse failure. `position()` is the 1-based character offset of the
/// offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t position, const std::string& what);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

Formula parse(std::string_view text);
std::string render(const Formula& f);

/// Complement with double-negation elimination.
inline Formula complement(const Formula& f) { return Formula::negate(f); }

/// The least set containing `f` and closed under immediate subterms.
std::set<Formula> subformulas(const Formula& f);

/// Propositions occurring in `f`, sorted by name.
std::vector<Proposition> propositions(const Formula& f);

/// Set of propositions true at one position.
using Letter = std::set<Proposition>;

/// Closure of a formula: subformulas, their complements and the T / !T pair.
///
/// Members are kept in Formula order, which places every formula after all
/// of its subformulas; evaluators rely on that to compute a valuation in one
/// forward sweep.
class Closure {
public:
    explicit Closure(const Formula& root);

    const Formula& root() const noexcept { return root_; }
    const std::vector<Formula>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    std::size_t pair_count() const noexcept { return members_.size() / 2; }

    const Formula& at(std::size_t i) const { return members_.at(i); }
    /// Index of `f`; throws std::out_of_range when `f` is not a member.
    std::size_t index_of(const Formula& f) const;
    bool contains(const Formula& f) const;
    /// Index of the complement of member `i`.
    std::size_t complement_of(std::size_t i) const { return complement_.at(i); }

    /// Operand indices of member `i` (lhs, rhs); npos where absent.
    std::size_t lhs_of(std::size_t i) const { return lhs_.at(i); }
    std::size_t rhs_of(std::size_t i) const { return rhs_.at(i); }

    /// Members that are not negations, in closure order. Exactly one per pair.
    const std::vector<std::size_t>& positives() const noexcept { return positives_; }
    const std::vector<std::size_t>& untils() const noexcept { return untils_; }
    const std::vector<std::size_t>& nexts() const noexcept { return nexts_; }
    const std::vector<std::size_t>& atoms() const noexcept { return atoms_; }
    std::size_t top_index() const noexcept { return top_; }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    Formula root_;
    std::vector<Formula> members_;
    std::vector<std::size_t> complement_, lhs_, rhs_;
    std::vector<std::size_t> positives_, untils_, nexts_, atoms_;
    std::size_t top_ = npos;
};

/// Maximal consistent subset of a closure with at most 64 members, stored as
/// a bit mask over closure indices.
class MaxConsSet {
public:
    using Mask = std::uint64_t;

    MaxConsSet() = default;
    explicit MaxConsSet(Mask bits) : bits_(bits) {}

    Mask bits() const noexcept { return bits_; }
    bool has(std::size_t i) const noexcept { return (bits_ >> i) & 1u; }

    friend bool operator==(MaxConsSet, MaxConsSet) = default;

private:
    Mask bits_ = 0;
};

/// Largest closure the bit-mask state representation supports.
inline constexpr std::size_t kMaxMaskClosure = 64;

/// True iff `bits` satisfies the maximal-consistency conditions over `c`.
bool is_maxcons(const Closure& c, MaxConsSet::Mask bits);

/// All maximal consistent sets, in binary counting order over the free
/// positive members (atoms, X and U formulas) taken in closure order.
std::vector<MaxConsSet> enumerate_maxcons(const Closure& c);

Letter letter_of(const Closure& c, MaxConsSet s);

std::string render_letter(const Letter& l);

}  // namespace ordltl

#endif  // ORDLTL_FORMULA_HPP
