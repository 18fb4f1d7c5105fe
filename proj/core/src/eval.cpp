#include "ordltl/eval.hpp"

#include <functional>
#include <string>

namespace ordltl {

std::size_t Evaluator::MemoKeyHash::operator()(const MemoKey& k) const noexcept
{
    std::size_t h = std::hash<const void*>{}(k.word);
    h ^= std::hash<Valuation>{}(k.after) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h ^ static_cast<std::size_t>(k.has_after);
}

Evaluator::Evaluator(const Formula& f) : closure_(f)
{
    atom_of_.resize(closure_.size());
    for (std::size_t i : closure_.atoms()) atom_of_[i].emplace(closure_.at(i).name());
}

Valuation Evaluator::step(const Letter& letter, const std::optional<Valuation>& after) const
{
    const std::size_t n = closure_.size();
    Valuation v(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = closure_.lhs_of(i);
        const std::size_t b = closure_.rhs_of(i);
        switch (closure_.at(i).op()) {
        case Op::True: v[i] = true; break;
        case Op::Atom: v[i] = letter.count(*atom_of_[i]) != 0; break;
        case Op::Not: v[i] = !v[a]; break;
        case Op::And: v[i] = v[a] && v[b]; break;
        case Op::Next: v[i] = after && (*after)[a]; break;
        case Op::Until: v[i] = after && ((*after)[b] || ((*after)[a] && (*after)[i])); break;
        }
    }
    return v;
}

Valuation Evaluator::transfer(const Word& segment, const std::optional<Valuation>& after)
{
    switch (segment.kind()) {
    case Word::Kind::Single:
        return step(segment.letter(), after);
    case Word::Kind::Cat: {
        std::optional<Valuation> cur = after;
        const auto& parts = segment.parts();
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) cur = transfer(*it, cur);
        return *cur;
    }
    case Word::Kind::OmegaPow:
        break;
    }

    MemoKey key{segment.id(), after.has_value(), after.value_or(Valuation{})};
    if (auto it = memo_.find(key); it != memo_.end()) {
        ++stats_.memo_hits;
        return it->second.value;
    }
    Valuation v = fix_loop(segment.body(), after);
    memo_.emplace(std::move(key), MemoEntry{segment, v});
    return v;
}

bool Evaluator::limit_justified(std::size_t u, const std::optional<Valuation>& after_limit) const
{
    if (!after_limit) return false;
    const Valuation& at = *after_limit;
    return at[closure_.rhs_of(u)] || (at[closure_.lhs_of(u)] && at[u]);
}

Valuation Evaluator::fix_loop(const Word& body, const std::optional<Valuation>& after_limit)
{
    ++stats_.fix_loop_calls;
    const std::size_t n = closure_.size();
    ClosureAssignment cut(n, TruthValue3::Unknown);
    std::size_t unresolved = n;

    auto resolved = [&](std::size_t i) {
        return i == Closure::npos || cut[i] != TruthValue3::Unknown;
    };

    // Each round runs the body under both extremes of the unknown members.
    // A member whose operands are all resolved gets its exact value from
    // either run, unless it is an until whose value follows its own guess at
    // the cut; that happens exactly when the obligation is carried through
    // the whole body, and the limit position decides it.
    std::size_t rounds = 0;
    while (unresolved > 0) {
        ++rounds;
        Valuation lo(n), hi(n);
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = cut[i] == TruthValue3::True;
            hi[i] = cut[i] != TruthValue3::False;
        }
        const Valuation from_lo = transfer(body, lo);
        const Valuation from_hi = transfer(body, hi);

        std::vector<std::pair<std::size_t, bool>> decided;
        for (std::size_t i = 0; i < n; ++i) {
            if (resolved(i)) continue;
            if (!resolved(closure_.lhs_of(i)) || !resolved(closure_.rhs_of(i))) continue;
            bool value = from_lo[i];
            if (from_lo[i] != from_hi[i]) {
                if (!closure_.at(i).is(Op::Until))
                    throw InternalInconsistency("member '" + render(closure_.at(i)) +
                                                "' depends on an unresolved operand");
                value = limit_justified(i, after_limit);
            }
            decided.emplace_back(i, value);
        }
        if (decided.empty())
            throw InternalInconsistency("w-power refinement made no progress");
        for (auto [i, value] : decided) {
            cut[i] = value ? TruthValue3::True : TruthValue3::False;
            --unresolved;
        }
    }
    if (rounds > stats_.max_fix_rounds) stats_.max_fix_rounds = rounds;

    Valuation loop_start(n);
    for (std::size_t i = 0; i < n; ++i) loop_start[i] = cut[i] == TruthValue3::True;
    if (transfer(body, loop_start) != loop_start)
        throw InternalInconsistency("w-power valuation for '" + render(closure_.root()) +
                                    "' is not a fixed point");
    return loop_start;
}

bool Evaluator::eval(const Word& w)
{
    const Valuation v = transfer(w, std::nullopt);
    return v[closure_.index_of(closure_.root())];
}

bool eval(const Formula& f, const Word& w) { return Evaluator{f}.eval(w); }

// ---------------------------------------------------------------------------
// Naive finite evaluation

namespace {

void spell(const Word& w, std::vector<const Letter*>& out)
{
    switch (w.kind()) {
    case Word::Kind::Single: out.push_back(&w.letter()); return;
    case Word::Kind::Cat:
        for (const Word& p : w.parts()) spell(p, out);
        return;
    case Word::Kind::OmegaPow:
        throw std::invalid_argument("eval_naive_finite needs a finite word");
    }
}

bool holds(const Formula& f, const std::vector<const Letter*>& word, std::size_t pos)
{
    switch (f.op()) {
    case Op::True: return true;
    case Op::Atom: return word[pos]->count(Proposition{f.name()}) != 0;
    case Op::Not: return !holds(f.lhs(), word, pos);
    case Op::And: return holds(f.lhs(), word, pos) && holds(f.rhs(), word, pos);
    case Op::Next: return pos + 1 < word.size() && holds(f.lhs(), word, pos + 1);
    case Op::Until:
        for (std::size_t later = pos + 1; later < word.size(); ++later) {
            if (holds(f.rhs(), word, later)) return true;
            if (!holds(f.lhs(), word, later)) return false;
        }
        return false;
    }
    return false;
}

}  // namespace

bool eval_naive_finite(const Formula& f, const Word& w, std::uint64_t pos)
{
    std::vector<const Letter*> letters;
    spell(w, letters);
    if (pos >= letters.size())
        throw PositionOutOfRange("position " + std::to_string(pos) + " outside a word of length " +
                                 std::to_string(letters.size()));
    return holds(f, letters, static_cast<std::size_t>(pos));
}

}  // namespace ordltl
