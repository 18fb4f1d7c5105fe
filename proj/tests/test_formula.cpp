#include "ordltl/formula.hpp"
#include "ordltl/testkit.hpp"

#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

using namespace ordltl;

namespace {

using Mask = MaxConsSet::Mask;

Formula A(const char* n) { return Formula::atom(n); }

Formula N(const Formula& a) { return Formula::negate(a); }

std::set<Formula> without_top(const Closure& c)
{
    std::set<Formula> out(c.members().begin(), c.members().end());
    out.erase(Formula::top());
    out.erase(N(Formula::top()));
    return out;
}

// Reference filter: every subset of the closure, kept when it picks exactly
// one member per complement pair, contains T and is coherent on conjunction.
std::set<Mask> brute_force_maxcons(const Closure& c)
{
    std::set<Mask> out;
    const std::size_t n = c.size();
    for (Mask bits = 0; bits < (Mask{1} << n); ++bits) {
        auto in = [&](const Formula& f) { return ((bits >> c.index_of(f)) & 1u) != 0; };
        bool ok = true;
        for (const Formula& f : c.members()) {
            if (in(f) == in(N(f))) ok = false;
            if (f.is(Op::True) && !in(f)) ok = false;
            if (f.is(Op::And) && in(f) != (in(f.lhs()) && in(f.rhs()))) ok = false;
        }
        if (ok) out.insert(bits);
    }
    return out;
}

}  // namespace

TEST_CASE("parse maps surface syntax to core constructors")
{
    CHECK(parse("p") == A("p"));
    CHECK(parse("p U (q & !p)") == Formula::until(A("p"), Formula::conj(A("q"), N(A("p")))));
    CHECK(parse("T") == Formula::top());
    CHECK(parse("F") == N(Formula::top()));
    CHECK(parse("X X p") == Formula::next(Formula::next(A("p"))));
}

TEST_CASE("derived operators desugar by hand")
{
    const Formula p = A("p");
    const Formula q = A("q");
    const Formula T = Formula::top();
    // F p = p | (T U p) = !(!p & !(T U p))
    CHECK(parse("F p") == N(Formula::conj(N(p), N(Formula::until(T, p)))));
    CHECK(parse("G p") == N(parse("F !p")));
    CHECK(parse("p | q") == N(Formula::conj(N(p), N(q))));
    CHECK(parse("p -> q") == N(Formula::conj(p, N(q))));
    CHECK(parse("p R q") == N(Formula::until(N(p), N(q))));
    CHECK(parse("WX p") == parse("!X T | X p"));
    CHECK(parse("p <-> q") == parse("(p -> q) & (q -> p)"));
    CHECK(parse("!!p") == p);
}

TEST_CASE("precedence and associativity")
{
    CHECK(parse("p U q U r") == parse("p U (q U r)"));
    CHECK(parse("p R q R r") == parse("p R (q R r)"));
    CHECK(parse("!p U q") == parse("(!p) U q"));
    CHECK(parse("p & q U r") == parse("p & (q U r)"));
    CHECK(parse("p | q & r") == parse("p | (q & r)"));
    CHECK(parse("p -> q | r") == parse("p -> (q | r)"));
    CHECK(parse("p <-> q -> r") == parse("p <-> (q -> r)"));
    CHECK(parse("X p U q") == parse("(X p) U q"));
    CHECK(parse("  p\t&\nq ") == parse("p&q"));
}

TEST_CASE("render")
{
    CHECK(render(A("p")) == "p");
    CHECK(render(Formula::until(Formula::top(), A("p"))) == "T U p");
    CHECK(render(parse("!p")) == "!p");
    CHECK(render(parse("(p U q) U r")) == "(p U q) U r");
    CHECK(render(parse("p U (q U r)")) == "p U q U r");
}

TEST_CASE("render and parse round-trip on 1000 random formulas")
{
    testkit::GenConfig cfg;
    cfg.max_size = 20;
    cfg.seed = 7;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Formula f = testkit::gen_formula(cfg, i);
        CHECK(f.size() <= 20);
        const std::string text = render(f);
        REQUIRE(parse(text) == f);
        CHECK(render(parse(text)) == text);
    }
}

TEST_CASE("parse errors carry a 1-based position")
{
    auto position_of = [](const char* text) -> std::size_t {
        try {
            (void)parse(text);
        } catch (const ParseError& e) {
            return e.position();
        }
        return 0;
    };
    CHECK(position_of("p U") == 4);
    CHECK(position_of("(p & q") == 7);
    CHECK(position_of("p q") == 3);
    CHECK(position_of("p $ q") == 3);
    CHECK(position_of("") == 1);
    CHECK(position_of("p)") == 2);
    CHECK(position_of("Pq") == 1);
}

TEST_CASE("proposition names are validated")
{
    CHECK(Proposition::valid_name("p"));
    CHECK(Proposition::valid_name("req_1"));
    CHECK_FALSE(Proposition::valid_name(""));
    CHECK_FALSE(Proposition::valid_name("1p"));
    CHECK_FALSE(Proposition::valid_name("P"));
    CHECK_THROWS_AS(Proposition{"Bad"}, std::invalid_argument);
}

TEST_CASE("subformulas")
{
    const Formula p = A("p");
    const Formula q = A("q");
    CHECK(subformulas(parse("p U q")) == std::set<Formula>{parse("p U q"), p, q});
    const Formula xq = Formula::next(q);
    const Formula pxq = Formula::conj(p, xq);
    CHECK(subformulas(N(pxq)) == std::set<Formula>{N(pxq), pxq, p, xq, q});

    testkit::GenConfig cfg;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Formula f = testkit::gen_formula(cfg, i);
        CHECK(subformulas(f).size() <= f.size());
    }
}

TEST_CASE("closure examples, taken without the T pair")
{
    const Formula p = A("p");
    const Formula q = A("q");
    CHECK(without_top(Closure(p)) == std::set<Formula>{p, N(p)});
    const Formula u = parse("p U q");
    CHECK(without_top(Closure(u)) == std::set<Formula>{u, N(u), p, N(p), q, N(q)});
    CHECK(Closure(u).size() == 8);
    CHECK(Closure(u).contains(Formula::top()));
}

TEST_CASE("closure pairing is an involution and closure is monotone")
{
    testkit::GenConfig cfg;
    cfg.seed = 3;
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Formula f = testkit::gen_formula(cfg, i);
        const Closure c(f);
        CHECK(c.size() % 2 == 0);
        for (std::size_t k = 0; k < c.size(); ++k) {
            CHECK(c.complement_of(c.complement_of(k)) == k);
            CHECK(c.complement_of(k) != k);
            CHECK(c.at(c.complement_of(k)) == complement(c.at(k)));
            CHECK(complement(complement(c.at(k))) == c.at(k));
        }
        for (const Formula& s : subformulas(f)) {
            CHECK(c.contains(s));
            const Closure sc(s);
            for (const Formula& m : sc.members()) CHECK(c.contains(m));
        }
        // children precede parents
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c.lhs_of(k) != Closure::npos) CHECK(c.lhs_of(k) < k);
            if (c.rhs_of(k) != Closure::npos) CHECK(c.rhs_of(k) < k);
        }
    }
}

TEST_CASE("enumerate_maxcons examples")
{
    CHECK(enumerate_maxcons(Closure(A("p"))).size() == 2);

    const Closure pq(parse("p & q"));
    const auto sets = enumerate_maxcons(pq);
    REQUIRE(sets.size() == 4);
    const Formula conj = parse("p & q");
    std::set<std::pair<bool, std::pair<bool, bool>>> rows;
    for (MaxConsSet s : sets) {
        rows.insert({s.has(pq.index_of(conj)),
                     {s.has(pq.index_of(A("p"))), s.has(pq.index_of(A("q")))}});
    }
    CHECK(rows == std::set<std::pair<bool, std::pair<bool, bool>>>{
                      {true, {true, true}},
                      {false, {true, false}},
                      {false, {false, true}},
                      {false, {false, false}},
                  });

    CHECK(enumerate_maxcons(Closure(parse("p U q"))).size() == 8);
}

TEST_CASE("enumerate_maxcons equals brute-force filtering for small closures")
{
    testkit::GenConfig cfg;
    cfg.seed = 11;
    cfg.max_size = 8;
    std::size_t checked = 0;
    for (std::uint64_t i = 0; i < 400; ++i) {
        const Formula f = testkit::gen_formula(cfg, i);
        const Closure c(f);
        if (c.size() > 12) continue;
        ++checked;
        std::set<Mask> got;
        for (MaxConsSet s : enumerate_maxcons(c)) {
            CHECK(is_maxcons(c, s.bits()));
            got.insert(s.bits());
        }
        CHECK(got == brute_force_maxcons(c));
        CHECK(got.size() <= (std::size_t{1} << (c.size() / 2)));
    }
    CHECK(checked >= 100);
}

TEST_CASE("letter_of reads the atom members")
{
    const Closure c(parse("p & !q"));
    for (MaxConsSet s : enumerate_maxcons(c)) {
        const Letter l = letter_of(c, s);
        for (const char* name : {"p", "q"})
            CHECK((l.count(Proposition{name}) == 1) == s.has(c.index_of(A(name))));
    }
    const Closure top(parse("X T"));
    for (MaxConsSet s : enumerate_maxcons(top)) CHECK(letter_of(top, s).empty());
    CHECK(render_letter({Proposition{"p"}, Proposition{"q"}}) == "{p,q}");
    CHECK(render_letter({}) == "{}");
}
