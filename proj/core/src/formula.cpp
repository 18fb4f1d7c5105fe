#include "ordltl/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <optional>
#include <sstream>
#include <unordered_map>

namespace ordltl {

// ---------------------------------------------------------------------------
// Proposition

bool Proposition::valid_name(std::string_view name) noexcept
{
    if (name.empty() || !(name[0] >= 'a' && name[0] <= 'z')) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    });
}

Proposition::Proposition(std::string name) : name_(std::move(name))
{
    if (!valid_name(name_))
        throw std::invalid_argument("invalid proposition name '" + name_ + "'");
}

// ---------------------------------------------------------------------------
// Formula construction

namespace {

std::size_t mix(std::size_t h, std::size_t v)
{
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

}  // namespace

Formula Formula::make(Op op, std::string name, const Formula* a, const Formula* b)
{
    Node n;
    n.op = op;
    n.name = std::move(name);
    n.size = 1;
    n.hash = mix(static_cast<std::size_t>(op) + 1, std::hash<std::string>{}(n.name));
    for (const Formula* k : {a, b}) {
        if (k == nullptr) continue;
        n.size += k->size();
        n.hash = mix(n.hash, k->hash());
        n.kids.push_back(*k);
    }
    return Formula{std::make_shared<const Node>(std::move(n))};
}

Formula Formula::top()
{
    static const Formula t = make(Op::True, {}, nullptr, nullptr);
    return t;
}

Formula Formula::atom(const Proposition& p) { return make(Op::Atom, p.name(), nullptr, nullptr); }

Formula Formula::negate(const Formula& a)
{
    if (a.is(Op::Not)) return a.lhs();
    return make(Op::Not, {}, &a, nullptr);
}

Formula Formula::conj(const Formula& a, const Formula& b) { return make(Op::And, {}, &a, &b); }
Formula Formula::next(const Formula& a) { return make(Op::Next, {}, &a, nullptr); }
Formula Formula::until(const Formula& a, const Formula& b) { return make(Op::Until, {}, &a, &b); }

Formula Formula::bottom() { return negate(top()); }

Formula Formula::disj(const Formula& a, const Formula& b)
{
    return negate(conj(negate(a), negate(b)));
}

Formula Formula::implies(const Formula& a, const Formula& b) { return negate(conj(a, negate(b))); }

Formula Formula::iff(const Formula& a, const Formula& b)
{
    return conj(implies(a, b), implies(b, a));
}

Formula Formula::eventually(const Formula& a) { return disj(a, until(top(), a)); }
Formula Formula::always(const Formula& a) { return negate(eventually(negate(a))); }

Formula Formula::release(const Formula& a, const Formula& b)
{
    return negate(until(negate(a), negate(b)));
}

// X a would claim a successor exists; the weak form holds at the last position.
Formula Formula::weak_next(const Formula& a) { return disj(negate(next(top())), next(a)); }

const Formula& Formula::lhs() const
{
    if (node_->kids.empty()) throw std::logic_error("formula has no operand");
    return node_->kids[0];
}

const Formula& Formula::rhs() const
{
    if (node_->kids.size() < 2) throw std::logic_error("formula has no right operand");
    return node_->kids[1];
}

bool operator==(const Formula& a, const Formula& b) noexcept
{
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash() || a.size() != b.size() || a.op() != b.op() || a.name() != b.name())
        return false;
    const auto& ka = a.node_->kids;
    const auto& kb = b.node_->kids;
    return std::equal(ka.begin(), ka.end(), kb.begin(), kb.end());
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept
{
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    if (auto c = a.op() <=> b.op(); c != 0) return c;
    if (auto c = a.name() <=> b.name(); c != 0) return c;
    const auto& ka = a.node_->kids;
    const auto& kb = b.node_->kids;
    for (std::size_t i = 0; i < ka.size() && i < kb.size(); ++i)
        if (auto c = ka[i] <=> kb[i]; c != 0) return c;
    return ka.size() <=> kb.size();
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(std::size_t position, const std::string& what)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + what),
      position_(position)
{
}

namespace {

enum class Tok {
    Ident, True, FalseOrF, G, X, WX, U, R, Not, And, Or, Implies, Iff, LParen, RParen, End
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;  // 1-based
};

std::vector<Token> tokenize(std::string_view s)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        const std::size_t pos = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i + 1;
            while (j < s.size() && ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= '0' && s[j] <= '9') ||
                                    s[j] == '_'))
                ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), pos});
            i = j;
            continue;
        }
        auto single = [&](Tok k) {
            out.push_back({k, std::string(1, c), pos});
            ++i;
        };
        switch (c) {
        case 'T': single(Tok::True); continue;
        case 'F': single(Tok::FalseOrF); continue;
        case 'G': single(Tok::G); continue;
        case 'X': single(Tok::X); continue;
        case 'U': single(Tok::U); continue;
        case 'R': single(Tok::R); continue;
        case '!': single(Tok::Not); continue;
        case '&': single(Tok::And); continue;
        case '|': single(Tok::Or); continue;
        case '(': single(Tok::LParen); continue;
        case ')': single(Tok::RParen); continue;
        default: break;
        }
        if (s.substr(i, 2) == "WX") {
            out.push_back({Tok::WX, "WX", pos});
            i += 2;
        } else if (s.substr(i, 2) == "->") {
            out.push_back({Tok::Implies, "->", pos});
            i += 2;
        } else if (s.substr(i, 3) == "<->") {
            out.push_back({Tok::Iff, "<->", pos});
            i += 3;
        } else {
            std::size_t j = i + 1;
            while (j < s.size() && std::isalnum(static_cast<unsigned char>(s[j])) &&
                   std::isupper(static_cast<unsigned char>(c)))
                ++j;
            throw ParseError(pos, "unknown operator '" + std::string(s.substr(i, j - i)) + "'");
        }
    }
    out.push_back({Tok::End, {}, s.size() + 1});
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

    Formula run()
    {
        Formula f = iff();
        if (peek().kind == Tok::RParen) throw ParseError(peek().pos, "unbalanced ')'");
        if (peek().kind != Tok::End)
            throw ParseError(peek().pos, "unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        return toks_[std::min(at_ + ahead, toks_.size() - 1)];
    }
    const Token& take() { return toks_[at_ < toks_.size() - 1 ? at_++ : at_]; }
    bool accept(Tok k)
    {
        if (peek().kind != k) return false;
        ++at_;
        return true;
    }

    Formula iff()
    {
        Formula f = impl();
        while (accept(Tok::Iff)) f = Formula::iff(f, impl());
        return f;
    }

    Formula impl()
    {
        Formula f = disj();
        while (accept(Tok::Implies)) f = Formula::implies(f, disj());
        return f;
    }

    Formula disj()
    {
        Formula f = conj();
        while (accept(Tok::Or)) f = Formula::disj(f, conj());
        return f;
    }

    Formula conj()
    {
        Formula f = until();
        while (accept(Tok::And)) f = Formula::conj(f, until());
        return f;
    }

    Formula until()
    {
        Formula left = unary();
        if (peek().kind == Tok::U) {
            take();
            return Formula::until(left, until());
        }
        if (peek().kind == Tok::R) {
            take();
            return Formula::release(left, until());
        }
        return left;
    }

    static bool starts_unary(Tok k)
    {
        switch (k) {
        case Tok::Ident: case Tok::True: case Tok::FalseOrF: case Tok::G: case Tok::X:
        case Tok::WX: case Tok::Not: case Tok::LParen:
            return true;
        default:
            return false;
        }
    }

    Formula unary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Not: take(); return Formula::negate(unary());
        case Tok::X: take(); return Formula::next(unary());
        case Tok::G: take(); return Formula::always(unary());
        case Tok::WX: take(); return Formula::weak_next(unary());
        case Tok::FalseOrF:
            take();
            if (starts_unary(peek().kind)) return Formula::eventually(unary());
            return Formula::bottom();
        default: return atom();
        }
    }

    Formula atom()
    {
        const Token t = take();
        switch (t.kind) {
        case Tok::True: return Formula::top();
        case Tok::Ident: return Formula::atom(t.text);
        case Tok::LParen: {
            Formula f = iff();
            if (peek().kind != Tok::RParen)
                throw ParseError(peek().pos, peek().kind == Tok::End
                                                 ? "unbalanced '(' opened at position " +
                                                       std::to_string(t.pos)
                                                 : "expected ')' but found '" + peek().text + "'");
            take();
            return f;
        }
        case Tok::End: throw ParseError(t.pos, "unexpected end of input");
        case Tok::RParen: throw ParseError(t.pos, "unbalanced ')'");
        default: throw ParseError(t.pos, "unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
};

bool is_unary_level(const Formula& f)
{
    return f.is(Op::True) || f.is(Op::Atom) || f.is(Op::Not) || f.is(Op::Next);
}

void render_into(std::string& out, const Formula& f);

void render_paren(std::string& out, const Formula& f, bool paren)
{
    if (paren) out += '(';
    render_into(out, f);
    if (paren) out += ')';
}

void render_into(std::string& out, const Formula& f)
{
    switch (f.op()) {
    case Op::True: out += 'T'; break;
    case Op::Atom: out += f.name(); break;
    case Op::Not:
        out += '!';
        render_paren(out, f.lhs(), !is_unary_level(f.lhs()));
        break;
    case Op::Next:
        out += "X ";
        render_paren(out, f.lhs(), !is_unary_level(f.lhs()));
        break;
    case Op::And:
        render_paren(out, f.lhs(), false);
        out += " & ";
        render_paren(out, f.rhs(), f.rhs().is(Op::And));
        break;
    case Op::Until:
        render_paren(out, f.lhs(), !is_unary_level(f.lhs()));
        out += " U ";
        render_paren(out, f.rhs(), f.rhs().is(Op::And));
        break;
    }
}

}  // namespace

Formula parse(std::string_view text) { return Parser{text}.run(); }

std::string render(const Formula& f)
{
    std::string out;
    render_into(out, f);
    return out;
}

// ---------------------------------------------------------------------------
// Subformulas and closure

std::set<Formula> subformulas(const Formula& f)
{
    std::set<Formula> out;
    std::vector<Formula> todo{f};
    while (!todo.empty()) {
        Formula g = todo.back();
        todo.pop_back();
        if (!out.insert(g).second) continue;
        if (g.is(Op::Not) || g.is(Op::Next)) todo.push_back(g.lhs());
        if (g.is(Op::And) || g.is(Op::Until)) {
            todo.push_back(g.lhs());
            todo.push_back(g.rhs());
        }
    }
    return out;
}

std::vector<Proposition> propositions(const Formula& f)
{
    std::set<Proposition> props;
    for (const Formula& g : subformulas(f))
        if (g.is(Op::Atom)) props.insert(Proposition{g.name()});
    return {props.begin(), props.end()};
}

Closure::Closure(const Formula& root) : root_(root)
{
    std::set<Formula> all = subformulas(root);
    all.insert(Formula::top());
    std::vector<Formula> base(all.begin(), all.end());
    for (const Formula& g : base) all.insert(complement(g));
    members_.assign(all.begin(), all.end());

    std::unordered_map<Formula, std::size_t, FormulaHash> index;
    for (std::size_t i = 0; i < members_.size(); ++i) index.emplace(members_[i], i);

    const std::size_t n = members_.size();
    complement_.resize(n);
    lhs_.assign(n, npos);
    rhs_.assign(n, npos);
    for (std::size_t i = 0; i < n; ++i) {
        const Formula& g = members_[i];
        complement_[i] = index.at(complement(g));
        switch (g.op()) {
        case Op::Not:
            lhs_[i] = index.at(g.lhs());
            break;
        case Op::Next:
            lhs_[i] = index.at(g.lhs());
            nexts_.push_back(i);
            break;
        case Op::And:
            lhs_[i] = index.at(g.lhs());
            rhs_[i] = index.at(g.rhs());
            break;
        case Op::Until:
            lhs_[i] = index.at(g.lhs());
            rhs_[i] = index.at(g.rhs());
            untils_.push_back(i);
            break;
        case Op::Atom: atoms_.push_back(i); break;
        case Op::True: top_ = i; break;
        }
        if (!g.is(Op::Not)) positives_.push_back(i);
    }
}

std::size_t Closure::index_of(const Formula& f) const
{
    auto it = std::lower_bound(members_.begin(), members_.end(), f);
    if (it == members_.end() || *it != f)
        throw std::out_of_range("formula '" + render(f) + "' is not in the closure");
    return static_cast<std::size_t>(it - members_.begin());
}

bool Closure::contains(const Formula& f) const
{
    return std::binary_search(members_.begin(), members_.end(), f);
}

// ---------------------------------------------------------------------------
// Maximal consistent sets

bool is_maxcons(const Closure& c, MaxConsSet::Mask bits)
{
    if (c.size() > kMaxMaskClosure) return false;
    if (c.size() < kMaxMaskClosure && (bits >> c.size()) != 0) return false;
    const MaxConsSet s{bits};
    for (std::size_t i : c.positives())
        if (s.has(i) == s.has(c.complement_of(i))) return false;
    if (!s.has(c.top_index())) return false;
    for (std::size_t i : c.positives())
        if (c.at(i).is(Op::And) && s.has(i) != (s.has(c.lhs_of(i)) && s.has(c.rhs_of(i))))
            return false;
    return true;
}

std::vector<MaxConsSet> enumerate_maxcons(const Closure& c)
{
    if (c.size() > kMaxMaskClosure)
        throw std::length_error("closure of " + std::to_string(c.size()) +
                                " members exceeds the supported 64");
    std::vector<std::size_t> free;
    for (std::size_t i : c.positives()) {
        const Op op = c.at(i).op();
        if (op == Op::Atom || op == Op::Next || op == Op::Until) free.push_back(i);
    }
    if (free.size() >= 32)
        throw std::length_error("too many free closure members to enumerate");

    std::vector<MaxConsSet> out;
    out.reserve(std::size_t{1} << free.size());
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << free.size()); ++k) {
        MaxConsSet::Mask bits = 0;
        auto set = [&](std::size_t i) { bits |= MaxConsSet::Mask{1} << i; };
        auto has = [&](std::size_t i) { return ((bits >> i) & 1u) != 0; };
        std::size_t next_free = 0;
        for (std::size_t i = 0; i < c.size(); ++i) {
            bool v = false;
            switch (c.at(i).op()) {
            case Op::True: v = true; break;
            case Op::Not: v = !has(c.lhs_of(i)); break;
            case Op::And: v = has(c.lhs_of(i)) && has(c.rhs_of(i)); break;
            default: v = ((k >> next_free++) & 1u) != 0; break;
            }
            if (v) set(i);
        }
        out.emplace_back(bits);
    }
    return out;
}

Letter letter_of(const Closure& c, MaxConsSet s)
{
    Letter l;
    for (std::size_t i : c.atoms())
        if (s.has(i)) l.insert(Proposition{c.at(i).name()});
    return l;
}

std::string render_letter(const Letter& l)
{
    std::string out = "{";
    bool first = true;
    for (const Proposition& p : l) {
        if (!first) out += ",";
        out += p.name();
        first = false;
    }
    return out + "}";
}

}  // namespace ordltl
