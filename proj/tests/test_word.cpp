#include "ordltl/testkit.hpp"
#include "ordltl/word.hpp"

#include <doctest.h>

#include <random>

using namespace ordltl;

namespace {

Letter L(std::initializer_list<const char*> names)
{
    Letter l;
    for (const char* n : names) l.insert(Proposition{n});
    return l;
}

Word S(std::initializer_list<const char*> names) { return Word::single(L(names)); }

const Ordinal w = Ordinal::omega_power(1);

// Letters of a finite word by direct traversal.
void spell(const Word& x, std::vector<Letter>& out)
{
    switch (x.kind()) {
    case Word::Kind::Single: out.push_back(x.letter()); break;
    case Word::Kind::Cat:
        for (const Word& p : x.parts()) spell(p, out);
        break;
    case Word::Kind::OmegaPow: FAIL("not finite"); break;
    }
}

// Random ordinal below `bound`, by rejection.
Ordinal random_below(const Ordinal& bound, std::mt19937_64& rng)
{
    const std::uint64_t top = bound.leading_exponent();
    for (;;) {
        std::vector<Ordinal::Term> terms;
        for (std::uint64_t e = top + 1; e-- > 0;)
            if (rng() % 2) terms.push_back({e, 1 + rng() % 4});
        Ordinal o(terms);
        if (o < bound) return o;
    }
}

}  // namespace

TEST_CASE("length")
{
    CHECK(Word::cat({S({"p"}), S({"q"})}).length() == Ordinal::finite(2));
    CHECK(Word::omega(S({"q"})).length() == w);
    const Word nested = Word::omega(Word::cat({S({"p"}), Word::omega(S({"q"}))}));
    CHECK(nested.length() == Ordinal::omega_power(2));
    CHECK(nested.level() == 2);
    CHECK(Word::omega(Word::omega(S({}))).length() == Ordinal::omega_power(2));
    CHECK(Word::cat({Word::omega(S({})), S({"p"})}).length() == add(w, Ordinal::finite(1)));
}

TEST_CASE("normalization")
{
    const Word a = S({"p"});
    const Word b = S({"q"});
    CHECK(Word::cat({a}) == a);
    CHECK(Word::cat({a, Word::cat({b, a})}) == Word::cat({a, b, a}));
    CHECK(Word::cat({a, b}).parts().size() == 2);
    CHECK_THROWS_AS(Word::cat({}), std::invalid_argument);
    CHECK_FALSE(Word::cat({a, b}) == Word::cat({b, a}));
}

TEST_CASE("letter_at examples")
{
    CHECK(letter_at(Word::cat({S({"p"}), S({"q"})}), Ordinal::finite(1)) == L({"q"}));
    const Word nested = Word::omega(Word::cat({S({"p"}), Word::omega(S({"q"}))}));
    CHECK(letter_at(nested, w) == L({"p"}));
    CHECK(letter_at(nested, Ordinal::finite(3)) == L({"q"}));
    CHECK(letter_at(nested, add(w, Ordinal::finite(1))) == L({"q"}));
    CHECK(letter_at(nested, Ordinal::zero()) == L({"p"}));
}

TEST_CASE("letter_at agrees with spelled-out finite words")
{
    testkit::GenConfig cfg;
    cfg.max_level = 0;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const Word x = testkit::gen_word(cfg, i);
        std::vector<Letter> letters;
        spell(x, letters);
        REQUIRE(Ordinal::finite(letters.size()) == x.length());
        for (std::size_t k = 0; k < letters.size(); ++k)
            CHECK(letter_at(x, Ordinal::finite(k)) == letters[k]);
    }
}

TEST_CASE("letter_at is total below the length and fails beyond it")
{
    testkit::GenConfig cfg;
    cfg.max_level = 2;
    std::mt19937_64 rng(17);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Word x = testkit::gen_word(cfg, i);
        for (int k = 0; k < 100; ++k) {
            const Ordinal pos = random_below(x.length(), rng);
            CHECK_NOTHROW((void)letter_at(x, pos));
        }
        CHECK_THROWS_AS((void)letter_at(x, x.length()), PositionOutOfRange);
        CHECK_THROWS_AS((void)letter_at(x, succ(x.length())), PositionOutOfRange);
        CHECK_THROWS_AS((void)suffix_from(x, x.length()), PositionOutOfRange);
    }
}

TEST_CASE("first letter is the leftmost single")
{
    testkit::GenConfig cfg;
    for (std::uint64_t i = 0; i < 500; ++i) {
        const Word x = testkit::gen_word(cfg, i);
        Word leftmost = x;
        while (leftmost.kind() != Word::Kind::Single)
            leftmost = leftmost.kind() == Word::Kind::Cat ? leftmost.parts().front()
                                                          : leftmost.body();
        CHECK(letter_at(x, Ordinal::zero()) == leftmost.letter());
    }
}

TEST_CASE("suffix_from")
{
    CHECK(suffix_from(Word::cat({S({"p"}), S({"q"})}), Ordinal::finite(1)) == S({"q"}));
    const Word v = Word::cat({S({"p"}), Word::omega(S({"q"})), S({})});
    const Word loop = Word::omega(v);
    const Ordinal beta = v.length();
    for (std::uint64_t n = 0; n < 6; ++n)
        CHECK(suffix_from(loop, times_natural(beta, n)) == loop);
    CHECK(suffix_from(S({"p"}), Ordinal::zero()) == S({"p"}));
}

TEST_CASE("tail invariance of w-powers")
{
    testkit::GenConfig cfg;
    cfg.max_level = 1;
    std::mt19937_64 rng(23);
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Word v = testkit::gen_word(cfg, i);
        const Word loop = Word::omega(v);
        const Ordinal beta = v.length();
        for (int k = 0; k < 20; ++k) {
            const Ordinal rho = random_below(beta, rng);
            const std::uint64_t n = rng() % 5;
            CHECK(letter_at(loop, add(times_natural(beta, n), rho)) == letter_at(loop, rho));
        }
    }
}

TEST_CASE("suffix length is the left difference")
{
    testkit::GenConfig cfg;
    cfg.max_level = 2;
    std::mt19937_64 rng(29);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const Word x = testkit::gen_word(cfg, i);
        const Ordinal pos = random_below(x.length(), rng);
        const Word tail = suffix_from(x, pos);
        CHECK(tail.length() == left_subtract(pos, x.length()));
        CHECK(add(pos, tail.length()) == x.length());
        CHECK(letter_at(tail, Ordinal::zero()) == letter_at(x, pos));
    }
}

TEST_CASE("text form")
{
    CHECK(to_string(Word::cat({S({"p"}), S({}), Word::omega(S({"q"}))})) == "{p}{}({q})^w");
}
