#include "ordltl/word.hpp"

#include <algorithm>

namespace ordltl {

Word Word::single(Letter letter)
{
    Node n;
    n.kind = Kind::Single;
    n.letter = std::move(letter);
    n.length = Ordinal::finite(1);
    n.letters = 1;
    return Word{std::make_shared<const Node>(std::move(n))};
}

Word Word::cat(const std::vector<Word>& parts)
{
    if (parts.empty()) throw std::invalid_argument("concatenation of no words");
    std::vector<Word> flat;
    for (const Word& w : parts) {
        if (w.kind() == Kind::Cat)
            flat.insert(flat.end(), w.parts().begin(), w.parts().end());
        else
            flat.push_back(w);
    }
    if (flat.size() == 1) return flat.front();
    Node n;
    n.kind = Kind::Cat;
    for (const Word& w : flat) {
        n.length = add(n.length, w.length());
        n.level = std::max(n.level, w.level());
        n.letters += w.letter_count();
    }
    n.kids = std::move(flat);
    return Word{std::make_shared<const Node>(std::move(n))};
}

Word Word::omega(const Word& body)
{
    Node n;
    n.kind = Kind::OmegaPow;
    n.length = times_omega(body.length());
    n.level = body.level() + 1;
    n.letters = body.letter_count();
    n.kids.push_back(body);
    return Word{std::make_shared<const Node>(std::move(n))};
}

const Letter& Word::letter() const
{
    if (kind() != Kind::Single) throw std::logic_error("word is not a single letter");
    return node_->letter;
}

const std::vector<Word>& Word::parts() const
{
    if (kind() != Kind::Cat) throw std::logic_error("word is not a concatenation");
    return node_->kids;
}

const Word& Word::body() const
{
    if (kind() != Kind::OmegaPow) throw std::logic_error("word is not an w-power");
    return node_->kids.front();
}

bool operator==(const Word& a, const Word& b) noexcept
{
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.length() != b.length()) return false;
    if (a.kind() == Word::Kind::Single) return a.node_->letter == b.node_->letter;
    return a.node_->kids == b.node_->kids;
}

namespace {

void check_position(const Word& w, const Ordinal& pos)
{
    if (!(pos < w.length()))
        throw PositionOutOfRange("position " + to_string(pos) + " is outside a word of length " +
                                 to_string(w.length()));
}

}  // namespace

Letter letter_at(const Word& w, const Ordinal& pos)
{
    check_position(w, pos);
    const Word* cur = &w;
    Ordinal p = pos;
    for (;;) {
        switch (cur->kind()) {
        case Word::Kind::Single:
            return cur->letter();
        case Word::Kind::Cat:
            for (const Word& part : cur->parts()) {
                if (p < part.length()) {
                    cur = &part;
                    break;
                }
                p = left_subtract(part.length(), p);
            }
            break;
        case Word::Kind::OmegaPow:
            p = divide_below_omega_multiple(p, cur->body().length()).remainder;
            cur = &cur->body();
            break;
        }
    }
}

Word suffix_from(const Word& w, const Ordinal& pos)
{
    check_position(w, pos);
    switch (w.kind()) {
    case Word::Kind::Single:
        return w;
    case Word::Kind::Cat: {
        Ordinal p = pos;
        const auto& parts = w.parts();
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (p < parts[i].length()) {
                std::vector<Word> rest{suffix_from(parts[i], p)};
                rest.insert(rest.end(), parts.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                            parts.end());
                return Word::cat(rest);
            }
            p = left_subtract(parts[i].length(), p);
        }
        throw std::logic_error("suffix_from: position walk overran a checked word");
    }
    case Word::Kind::OmegaPow: {
        const Ordinal rho = divide_below_omega_multiple(pos, w.body().length()).remainder;
        if (rho.is_zero()) return w;
        return Word::cat({suffix_from(w.body(), rho), w});
    }
    }
    throw std::logic_error("unreachable");
}

std::string to_string(const Word& w)
{
    switch (w.kind()) {
    case Word::Kind::Single:
        return render_letter(w.letter());
    case Word::Kind::Cat: {
        std::string out;
        for (const Word& p : w.parts()) out += to_string(p);
        return out;
    }
    case Word::Kind::OmegaPow:
        return "(" + to_string(w.body()) + ")^w";
    }
    return {};
}

}  // namespace ordltl
