#include "ordltl/automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ordltl {

namespace {

constexpr Mask bit(std::size_t i) { return Mask{1} << i; }

struct NodeKey {
    StateId state;
    Mask mask;
    friend bool operator==(const NodeKey&, const NodeKey&) = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const noexcept
    {
        return std::hash<Mask>{}(k.mask * 0x9e3779b97f4a7c15ull ^ k.state);
    }
};

struct FactKey {
    StateId source;
    StateId target;
    Mask visited;
    friend bool operator==(const FactKey&, const FactKey&) = default;
};

struct FactKeyHash {
    std::size_t operator()(const FactKey& k) const noexcept
    {
        return std::hash<Mask>{}(k.visited * 0x9e3779b97f4a7c15ull ^
                                 (std::uint64_t{k.source} << 32 | k.target));
    }
};

}  // namespace

OrdinalAutomaton OrdinalAutomaton::build(const Formula& f, const AutomatonOptions& opts)
{
    auto closure = std::make_shared<const Closure>(f);
    if (closure->pair_count() > opts.max_pairs)
        throw StateExplosion("closure has " + std::to_string(closure->pair_count()) +
                             " complement pairs; the bound is " + std::to_string(opts.max_pairs));
    if (closure->size() > kMaxMaskClosure)
        throw StateExplosion("closure has " + std::to_string(closure->size()) +
                             " members; at most 64 are supported");

    OrdinalAutomaton a;
    a.opts_ = opts;
    a.closure_ = closure;
    a.states_ = enumerate_maxcons(*closure);
    if (closure->pair_count() < 63 && a.states_.size() > (std::size_t{1} << closure->pair_count()))
        throw std::logic_error("state count exceeds 2^(|closure|/2)");

    const std::size_t root = closure->index_of(f);
    for (StateId s = 0; s < a.states_.size(); ++s)
        if (a.states_[s].has(root)) a.initial_.push_back(s);

    a.succ_.resize(a.states_.size());
    for (StateId s = 0; s < a.states_.size(); ++s)
        for (StateId t = 0; t < a.states_.size(); ++t)
            if (a.succ_allowed(a.states_[s], a.states_[t])) a.succ_[s].push_back(t);

    for (std::size_t u : closure->untils()) {
        const std::size_t l = closure->lhs_of(u), r = closure->rhs_of(u);
        a.relevant_ |= bit(u) | bit(closure->complement_of(u)) | bit(l) |
                       bit(closure->complement_of(l)) | bit(r);
    }
    return a;
}

std::size_t OrdinalAutomaton::edge_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& v : succ_) n += v.size();
    return n;
}

bool OrdinalAutomaton::succ_allowed(MaxConsSet s, MaxConsSet t) const
{
    const Closure& c = *closure_;
    for (std::size_t x : c.nexts())
        if (s.has(x) != t.has(c.lhs_of(x))) return false;
    for (std::size_t u : c.untils()) {
        const bool carried = t.has(c.rhs_of(u)) || (t.has(c.lhs_of(u)) && t.has(u));
        if (s.has(u) != carried) return false;
    }
    return true;
}

bool OrdinalAutomaton::end_consistent(MaxConsSet s) const
{
    const Closure& c = *closure_;
    for (std::size_t x : c.nexts())
        if (s.has(x)) return false;
    for (std::size_t u : c.untils())
        if (s.has(u)) return false;
    return true;
}

bool OrdinalAutomaton::limit_allowed_union(Mask any, MaxConsSet t) const
{
    const Closure& c = *closure_;
    auto some = [&](std::size_t i) { return (any & bit(i)) != 0; };
    auto every = [&](std::size_t i) { return !some(c.complement_of(i)); };

    for (std::size_t u : c.untils()) {
        const std::size_t l = c.lhs_of(u), r = c.rhs_of(u);
        const bool continues = t.has(r) || (t.has(l) && t.has(u));

        // (a) an obligation never fulfilled cofinally passes through the limit
        if (some(u) && !some(r)) {
            bool through = every(u) && every(l) && continues;
            if (opts_.mutate_limit_rule_a) through = !through;
            if (!through) return false;
        }
        // (b) truth forced from below
        if (every(l) && (some(r) || continues) && !every(u)) return false;
        // (c) falsity must be justified
        if (!every(u) && !some(r) && every(l) && continues) return false;
    }
    return true;
}

bool OrdinalAutomaton::limit_end_accepting_union(Mask any) const
{
    const Closure& c = *closure_;
    for (std::size_t u : c.untils())
        if ((any & bit(u)) && !(any & bit(c.rhs_of(u)))) return false;
    return true;
}

namespace {

Mask union_of(std::span<const MaxConsSet> states)
{
    if (states.empty()) throw std::invalid_argument("cofinal state set must be nonempty");
    Mask m = 0;
    for (MaxConsSet s : states) m |= s.bits();
    return m;
}

}  // namespace

bool OrdinalAutomaton::limit_allowed(std::span<const MaxConsSet> cofinal, MaxConsSet t) const
{
    return limit_allowed_union(union_of(cofinal), t);
}

bool OrdinalAutomaton::limit_end_accepting(std::span<const MaxConsSet> cofinal) const
{
    return limit_end_accepting_union(union_of(cofinal));
}

// ---------------------------------------------------------------------------
// Emptiness

namespace {

struct Cycle {
    Mask visited;
    std::vector<FactId> walk;
};

class Workspace {
public:
    explicit Workspace(const OrdinalAutomaton& a) : a_(a), out_(a.states().size()) {}

    Mask mask_of(StateId s) const { return a_.states()[s].bits() & a_.limit_relevant(); }

    bool add(StateId source, StateId target, Mask visited, std::uint32_t level,
             std::vector<FactId> cycle)
    {
        if (!seen_.insert({source, target, visited}).second) return false;
        const auto id = static_cast<FactId>(facts_->size());
        facts_->push_back({source, target, visited, level, std::move(cycle)});
        out_[source].push_back(id);
        return true;
    }

    /// Closed walks at `m` over facts of level <= max_level, one per distinct
    /// visited union, in breadth-first discovery order.
    std::vector<Cycle> cycles_at(StateId m, std::uint32_t max_level) const
    {
        struct Visit {
            NodeKey key;
            std::size_t parent;  // index into visits, npos for first step
            FactId via;
        };
        constexpr std::size_t none = static_cast<std::size_t>(-1);
        std::vector<Visit> visits;
        std::unordered_map<NodeKey, std::size_t, NodeKeyHash> index;
        std::deque<std::size_t> queue;

        auto expand = [&](StateId from, Mask mask, std::size_t parent) {
            for (FactId f : out_[from]) {
                const Fact& fact = (*facts_)[f];
                if (fact.level > max_level) continue;
                NodeKey key{fact.target, mask | fact.visited};
                if (index.contains(key)) continue;
                index.emplace(key, visits.size());
                queue.push_back(visits.size());
                visits.push_back({key, parent, f});
            }
        };

        expand(m, mask_of(m), none);
        std::vector<Cycle> cycles;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            const NodeKey key = visits[v].key;
            if (key.state == m) {
                Cycle c{key.mask, {}};
                for (std::size_t x = v; x != none; x = visits[x].parent) c.walk.push_back(visits[x].via);
                std::reverse(c.walk.begin(), c.walk.end());
                cycles.push_back(std::move(c));
            }
            expand(key.state, key.mask, v);
        }
        return cycles;
    }

    /// States reachable from the initial states over facts of level <= max_level.
    std::vector<bool> reachable(std::uint32_t max_level) const
    {
        std::vector<bool> seen(a_.states().size(), false);
        std::deque<StateId> queue;
        for (StateId i : a_.initial()) {
            seen[i] = true;
            queue.push_back(i);
        }
        while (!queue.empty()) {
            const StateId s = queue.front();
            queue.pop_front();
            for (FactId f : out_[s]) {
                const Fact& fact = (*facts_)[f];
                if (fact.level > max_level || seen[fact.target]) continue;
                seen[fact.target] = true;
                queue.push_back(fact.target);
            }
        }
        return seen;
    }

    /// Breadth-first search from the initial states; the first state that
    /// ends a word (end-consistent, or owning an accepting closed walk) wins.
    std::optional<RunSkeleton> accept(std::uint32_t level,
                                      const std::vector<std::optional<Cycle>>& final_cycles) const
    {
        const std::size_t n = a_.states().size();
        constexpr FactId no_fact = static_cast<FactId>(-1);
        std::vector<bool> seen(n, false);
        std::vector<FactId> via(n, no_fact);
        std::vector<StateId> root(n, 0);
        std::deque<StateId> queue;
        for (StateId i : a_.initial()) {
            seen[i] = true;
            root[i] = i;
            queue.push_back(i);
        }
        while (!queue.empty()) {
            const StateId s = queue.front();
            queue.pop_front();
            const bool ends_here = a_.end_consistent(a_.states()[s]);
            const bool loops_here = !ends_here && final_cycles[s].has_value();
            if (ends_here || loops_here) {
                RunSkeleton r;
                r.facts = facts_;
                r.initial = root[s];
                for (StateId x = s; via[x] != no_fact; x = (*facts_)[via[x]].source)
                    r.prefix.push_back(via[x]);
                std::reverse(r.prefix.begin(), r.prefix.end());
                if (ends_here)
                    r.last = s;
                else
                    r.final_cycle = final_cycles[s]->walk;
                r.level = level;
                return r;
            }
            for (FactId f : out_[s]) {
                const Fact& fact = (*facts_)[f];
                if (fact.level > level || seen[fact.target]) continue;
                seen[fact.target] = true;
                via[fact.target] = f;
                root[fact.target] = root[s];
                queue.push_back(fact.target);
            }
        }
        return std::nullopt;
    }

    std::size_t size() const { return facts_->size(); }
    std::shared_ptr<std::vector<Fact>> facts() const { return facts_; }

private:
    const OrdinalAutomaton& a_;
    std::shared_ptr<std::vector<Fact>> facts_ = std::make_shared<std::vector<Fact>>();
    std::vector<std::vector<FactId>> out_;
    std::unordered_set<FactKey, FactKeyHash> seen_;
};

}  // namespace

EmptinessResult OrdinalAutomaton::emptiness(std::uint32_t max_level) const
{
    Workspace ws(*this);
    const std::size_t n = states_.size();
    for (StateId s = 0; s < n; ++s)
        for (StateId t : succ_[s]) ws.add(s, t, ws.mask_of(s) | ws.mask_of(t), 0, {});

    std::vector<std::optional<Cycle>> final_cycles(n);
    for (std::uint32_t level = 0; level <= max_level; ++level) {
        if (level > 0) {
            // Closed walks over facts below this level: each one, iterated w
            // times, either enters a limit state (a new fact) or ends the word.
            // Only states reachable from an initial state matter; the new
            // facts can reach further, so repeat until the live set settles.
            std::vector<bool> done(n, false);
            for (bool grew = true; grew;) {
                grew = false;
                const std::vector<bool> live = ws.reachable(level);
                for (StateId m = 0; m < n; ++m) {
                    if (!live[m] || done[m]) continue;
                    done[m] = true;
                    grew = true;
                    for (const Cycle& c : ws.cycles_at(m, level - 1)) {
                        if (!final_cycles[m] && limit_end_accepting_union(c.visited))
                            final_cycles[m] = c;
                        for (StateId q = 0; q < n; ++q)
                            if (limit_allowed_union(c.visited, states_[q]))
                                ws.add(m, q, c.visited | ws.mask_of(q), level, c.walk);
                    }
                }
            }
        }
        if (auto run = ws.accept(level, final_cycles))
            return {std::move(run), ws.size()};
    }
    return {std::nullopt, ws.size()};
}

// ---------------------------------------------------------------------------
// Witnesses

namespace {

class WitnessBuilder {
public:
    WitnessBuilder(const OrdinalAutomaton& a, const std::vector<Fact>& facts) : a_(a), facts_(facts) {}

    Word fact_word(FactId id, std::size_t depth = 0)
    {
        if (id >= facts_.size()) throw MalformedSkeleton("fact id out of range");
        if (depth > 64) throw MalformedSkeleton("fact nesting too deep");
        if (auto it = memo_.find(id); it != memo_.end()) return it->second;
        const Fact& f = facts_[id];
        if (f.source >= a_.states().size() || f.target >= a_.states().size())
            throw MalformedSkeleton("fact refers to an unknown state");
        Word w = Word::single(a_.letter(f.source));
        if (f.level > 0) w = Word::omega(walk_word(f.cycle, f.source, f.source, depth + 1));
        memo_.emplace(id, w);
        return w;
    }

    /// Concatenation along a walk from `from`, checking it ends in `to`.
    Word walk_word(const std::vector<FactId>& walk, StateId from, std::optional<StateId> to,
                   std::size_t depth = 0)
    {
        if (walk.empty()) throw MalformedSkeleton("empty walk");
        std::vector<Word> parts;
        StateId at = from;
        for (FactId id : walk) {
            if (id >= facts_.size()) throw MalformedSkeleton("fact id out of range");
            if (facts_[id].source != at) throw MalformedSkeleton("walk is not connected");
            parts.push_back(fact_word(id, depth));
            at = facts_[id].target;
        }
        if (to && at != *to) throw MalformedSkeleton("closed walk does not return");
        end_ = at;
        return Word::cat(parts);
    }

    StateId end() const { return end_; }

private:
    const OrdinalAutomaton& a_;
    const std::vector<Fact>& facts_;
    std::unordered_map<FactId, Word> memo_;
    StateId end_ = 0;
};

}  // namespace

Word extract_witness(const OrdinalAutomaton& a, const RunSkeleton& r)
{
    if (!r.facts) throw MalformedSkeleton("skeleton has no fact table");
    if (r.last.has_value() == !r.final_cycle.empty())
        throw MalformedSkeleton("skeleton must end in exactly one of a state or a cycle");
    if (r.initial >= a.states().size()) throw MalformedSkeleton("unknown initial state");

    WitnessBuilder b(a, *r.facts);
    std::vector<Word> parts;
    StateId at = r.initial;
    if (!r.prefix.empty()) {
        parts.push_back(b.walk_word(r.prefix, r.initial, std::nullopt));
        at = b.end();
    }
    if (r.last) {
        if (*r.last != at) throw MalformedSkeleton("prefix does not end in the last state");
        parts.push_back(Word::single(a.letter(at)));
    } else {
        parts.push_back(Word::omega(b.walk_word(r.final_cycle, at, at)));
    }
    return Word::cat(parts);
}

// ---------------------------------------------------------------------------
// DOT

std::string OrdinalAutomaton::to_dot() const
{
    const Closure& c = *closure_;
    std::ostringstream out;
    out << "digraph automaton {\n";
    out << "  rankdir=LR;\n";
    if (initial_.empty()) out << "  label=\"no initial states\";\n";
    for (StateId s = 0; s < states_.size(); ++s) {
        const bool init = std::find(initial_.begin(), initial_.end(), s) != initial_.end();
        std::string label = "s" + std::to_string(s) + "\\n";
        bool first = true;
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (!states_[s].has(i) || c.at(i).is(Op::True)) continue;
            if (!first) label += ", ";
            std::string text = render(c.at(i));
            for (char ch : text) {
                if (ch == '"' || ch == '\\') label += '\\';
                label += ch;
            }
            first = false;
        }
        out << "  s" << s << " [label=\"" << label << "\", shape="
            << (init ? "doublecircle" : "circle");
        if (end_consistent(states_[s])) out << ", style=filled, fillcolor=lightgray";
        out << "];\n";
    }
    for (StateId s = 0; s < states_.size(); ++s)
        for (StateId t : succ_[s]) out << "  s" << s << " -> s" << t << ";\n";
    out << "}\n";
    return out.str();
}

}  // namespace ordltl
