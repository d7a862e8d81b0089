#include "wad/oracle.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>

namespace wad {

State ExplicitNfa::add_state(bool accept) {
    accepting.push_back(accept ? 1 : 0);
    delta.resize(accepting.size() * letters);
    return static_cast<State>(accepting.size() - 1);
}

void ExplicitNfa::add(State from, Letter a, State to) {
    auto& v = delta.at(from * letters + a);
    auto it = std::lower_bound(v.begin(), v.end(), to);
    if (it == v.end() || *it != to) {
        v.insert(it, to);
    }
}

bool ExplicitNfa::accepts(const Word& w) const {
    std::vector<State> cur = initial;
    std::sort(cur.begin(), cur.end());
    for (Letter a : w) {
        std::vector<State> nxt;
        for (State s : cur) {
            const auto& t = next(s, a);
            nxt.insert(nxt.end(), t.begin(), t.end());
        }
        std::sort(nxt.begin(), nxt.end());
        nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
        cur = std::move(nxt);
    }
    return std::any_of(cur.begin(), cur.end(), [&](State s) { return accepting[s] != 0; });
}

State ExplicitDfa::add_state(bool accept) {
    accepting.push_back(accept ? 1 : 0);
    delta.resize(accepting.size() * letters, 0);
    return static_cast<State>(accepting.size() - 1);
}

bool ExplicitDfa::accepts(const Word& w) const {
    State s = initial;
    for (Letter a : w) {
        s = next(s, a);
    }
    return accepting[s] != 0;
}

ExplicitNfa as_nfa(const ExplicitDfa& d) {
    ExplicitNfa n(d.letters);
    for (State s = 0; s < d.size(); ++s) {
        n.add_state(d.accepting[s] != 0);
    }
    for (State s = 0; s < d.size(); ++s) {
        for (Letter a = 0; a < d.letters; ++a) {
            n.add(s, a, d.next(s, a));
        }
    }
    n.initial = {d.initial};
    return n;
}

ExplicitDfa determinize(const ExplicitNfa& n) {
    ExplicitDfa d(n.letters);
    std::map<std::vector<State>, State> index;
    std::deque<std::vector<State>> work;
    auto intern = [&](std::vector<State> set) {
        auto it = index.find(set);
        if (it != index.end()) {
            return it->second;
        }
        bool acc = std::any_of(set.begin(), set.end(), [&](State s) { return n.accepting[s] != 0; });
        State id = d.add_state(acc);
        index.emplace(set, id);
        work.push_back(std::move(set));
        return id;
    };
    std::vector<State> start = n.initial;
    std::sort(start.begin(), start.end());
    start.erase(std::unique(start.begin(), start.end()), start.end());
    d.initial = intern(start);
    while (!work.empty()) {
        std::vector<State> set = std::move(work.front());
        work.pop_front();
        const State from = index.at(set);
        for (Letter a = 0; a < n.letters; ++a) {
            std::vector<State> to;
            for (State s : set) {
                const auto& t = n.next(s, a);
                to.insert(to.end(), t.begin(), t.end());
            }
            std::sort(to.begin(), to.end());
            to.erase(std::unique(to.begin(), to.end()), to.end());
            const State id = intern(std::move(to));
            d.set(from, a, id);
        }
    }
    return d;
}

ExplicitDfa minimize(const ExplicitDfa& d) {
    // Accessible part.
    std::vector<State> order{d.initial};
    std::vector<std::int64_t> seen(d.size(), -1);
    seen[d.initial] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Letter a = 0; a < d.letters; ++a) {
            State t = d.next(order[i], a);
            if (seen[t] < 0) {
                seen[t] = static_cast<std::int64_t>(order.size());
                order.push_back(t);
            }
        }
    }
    const std::size_t n = order.size();
    std::vector<std::size_t> cls(n);
    for (std::size_t i = 0; i < n; ++i) {
        cls[i] = d.accepting[order[i]] ? 1 : 0;
    }
    std::size_t classes = 0;
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> sig_index;
        std::vector<std::size_t> next(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::size_t> sig{cls[i]};
            for (Letter a = 0; a < d.letters; ++a) {
                sig.push_back(cls[static_cast<std::size_t>(seen[d.next(order[i], a)])]);
            }
            next[i] = sig_index.emplace(std::move(sig), sig_index.size()).first->second;
        }
        const bool stable = sig_index.size() == classes;
        classes = sig_index.size();
        cls = std::move(next);
        if (stable) {
            break;
        }
    }
    // Canonical breadth-first numbering of the classes.
    std::vector<std::int64_t> number(classes, -1);
    std::vector<std::size_t> rep(classes);
    for (std::size_t i = n; i-- > 0;) {
        rep[cls[i]] = i;
    }
    ExplicitDfa m(d.letters);
    std::vector<std::size_t> queue{cls[0]};
    number[cls[0]] = 0;
    m.add_state(d.accepting[order[0]] != 0);
    for (std::size_t k = 0; k < queue.size(); ++k) {
        const std::size_t c = queue[k];
        const State src = order[rep[c]];
        for (Letter a = 0; a < d.letters; ++a) {
            const std::size_t tc = cls[static_cast<std::size_t>(seen[d.next(src, a)])];
            if (number[tc] < 0) {
                number[tc] = static_cast<std::int64_t>(queue.size());
                queue.push_back(tc);
                m.add_state(d.accepting[order[rep[tc]]] != 0);
            }
            m.set(static_cast<State>(k), a, static_cast<State>(number[tc]));
        }
    }
    return m;
}

namespace {

// Tarjan's algorithm, iterative; returns the SCC index of every state.
std::vector<std::size_t> scc_of(std::size_t n, const std::function<std::vector<State>(State)>& succ,
                                std::size_t& count) {
    std::vector<std::int64_t> index(n, -1), low(n, 0);
    std::vector<std::uint8_t> on_stack(n, 0);
    std::vector<std::size_t> comp(n, 0);
    std::vector<State> stack;
    std::int64_t counter = 0;
    count = 0;
    struct Frame {
        State s;
        std::vector<State> next;
        std::size_t i;
    };
    for (State root = 0; root < n; ++root) {
        if (index[root] >= 0) {
            continue;
        }
        std::vector<Frame> call{{root, succ(root), 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.i < f.next.size()) {
                const State t = f.next[f.i++];
                if (index[t] < 0) {
                    index[t] = low[t] = counter++;
                    stack.push_back(t);
                    on_stack[t] = 1;
                    call.push_back({t, succ(t), 0});
                } else if (on_stack[t]) {
                    low[f.s] = std::min(low[f.s], index[t]);
                }
                continue;
            }
            const State s = f.s;
            call.pop_back();
            if (!call.empty()) {
                low[call.back().s] = std::min(low[call.back().s], low[s]);
            }
            if (low[s] == index[s]) {
                while (true) {
                    State x = stack.back();
                    stack.pop_back();
                    on_stack[x] = 0;
                    comp[x] = count;
                    if (x == s) {
                        break;
                    }
                }
                ++count;
            }
        }
    }
    return comp;
}

std::vector<State> dfa_succ(const ExplicitDfa& d, State s) {
    std::vector<State> out;
    for (Letter a = 0; a < d.letters; ++a) {
        out.push_back(d.next(s, a));
    }
    return out;
}

bool all_singletons(const std::vector<std::size_t>& comp, std::size_t count) {
    return count == comp.size();
}

}  // namespace

bool is_weakly_acyclic(const ExplicitDfa& d) {
    std::size_t count = 0;
    auto comp = scc_of(d.size(), [&](State s) { return dfa_succ(d, s); }, count);
    return all_singletons(comp, count);
}

bool is_weakly_acyclic(const ExplicitNfa& n) {
    for (State s = 0; s < n.size(); ++s) {
        for (Letter a = 0; a < n.letters; ++a) {
            const auto& t = n.next(s, a);
            if (std::binary_search(t.begin(), t.end(), s) && t.size() != 1) {
                return false;
            }
        }
    }
    std::size_t count = 0;
    auto comp = scc_of(
        n.size(),
        [&](State s) {
            std::vector<State> out;
            for (Letter a = 0; a < n.letters; ++a) {
                const auto& t = n.next(s, a);
                out.insert(out.end(), t.begin(), t.end());
            }
            return out;
        },
        count);
    return all_singletons(comp, count);
}

std::optional<std::vector<State>> find_cycle(const ExplicitDfa& d) {
    std::size_t count = 0;
    auto comp = scc_of(d.size(), [&](State s) { return dfa_succ(d, s); }, count);
    std::vector<std::size_t> sizes(count, 0);
    for (auto c : comp) {
        ++sizes[c];
    }
    for (State s = 0; s < d.size(); ++s) {
        if (sizes[comp[s]] < 2) {
            continue;
        }
        // Breadth-first search inside the component for a way back to s.
        std::vector<std::int64_t> parent(d.size(), -1);
        std::deque<State> queue{s};
        parent[s] = s;
        while (!queue.empty()) {
            const State u = queue.front();
            queue.pop_front();
            for (Letter a = 0; a < d.letters; ++a) {
                const State t = d.next(u, a);
                if (comp[t] != comp[s] || t == u) {
                    continue;
                }
                if (t == s) {
                    std::vector<State> cycle;
                    for (State x = u; x != s; x = static_cast<State>(parent[x])) {
                        cycle.push_back(x);
                    }
                    cycle.push_back(s);
                    std::reverse(cycle.begin(), cycle.end());
                    return cycle;
                }
                if (parent[t] < 0) {
                    parent[t] = u;
                    queue.push_back(t);
                }
            }
        }
    }
    return std::nullopt;
}

bool equivalent(const ExplicitDfa& a, const ExplicitDfa& b) {
    if (a.letters != b.letters) {
        return false;
    }
    std::map<std::pair<State, State>, bool> seen;
    std::deque<std::pair<State, State>> queue{{a.initial, b.initial}};
    seen[{a.initial, b.initial}] = true;
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        if ((a.accepting[x] != 0) != (b.accepting[y] != 0)) {
            return false;
        }
        for (Letter l = 0; l < a.letters; ++l) {
            std::pair<State, State> n{a.next(x, l), b.next(y, l)};
            if (seen.emplace(n, true).second) {
                queue.push_back(n);
            }
        }
    }
    return true;
}

ExplicitDfa complement_dfa(const ExplicitDfa& d) {
    ExplicitDfa c = d;
    for (auto& f : c.accepting) {
        f = f ? 0 : 1;
    }
    return c;
}

ExplicitDfa product_dfa(const ExplicitDfa& a, const ExplicitDfa& b, bool conjunction) {
    if (a.letters != b.letters) {
        throw AlphabetMismatch("product of DFAs over different alphabets");
    }
    ExplicitDfa p(a.letters);
    std::map<std::pair<State, State>, State> index;
    std::deque<std::pair<State, State>> queue;
    auto intern = [&](State x, State y) {
        auto [it, fresh] = index.emplace(std::make_pair(x, y), static_cast<State>(p.size()));
        if (fresh) {
            const bool fa = a.accepting[x] != 0;
            const bool fb = b.accepting[y] != 0;
            p.add_state(conjunction ? (fa && fb) : (fa || fb));
            queue.emplace_back(x, y);
        }
        return it->second;
    };
    p.initial = intern(a.initial, b.initial);
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        const State from = index.at({x, y});
        for (Letter l = 0; l < a.letters; ++l) {
            const State to = intern(a.next(x, l), b.next(y, l));
            p.set(from, l, to);
        }
    }
    return p;
}

NodeId wad_from_dfa(DiagramTable& table, const ExplicitDfa& d) {
    if (d.letters != table.letters()) {
        throw AlphabetMismatch("DFA alphabet size differs from the table alphabet");
    }
    const ExplicitDfa m = minimize(d);
    if (auto cycle = find_cycle(m)) {
        throw NotWeaklyAcyclic("the minimal DFA has a cycle through " + std::to_string(cycle->size()) + " states",
                               *cycle);
    }
    // Post-order over the DAG left after dropping self-loops.
    std::vector<NodeId> node(m.size(), kSelf);
    std::vector<std::pair<State, Letter>> stack{{m.initial, 0}};
    std::vector<std::uint8_t> entered(m.size(), 0);
    entered[m.initial] = 1;
    while (!stack.empty()) {
        auto& [s, a] = stack.back();
        if (a < m.letters) {
            const State t = m.next(s, a++);
            if (t != s && !entered[t]) {
                entered[t] = 1;
                stack.emplace_back(t, 0);
            }
            continue;
        }
        SuccessorTuple tuple(m.letters);
        for (Letter l = 0; l < m.letters; ++l) {
            const State t = m.next(s, l);
            tuple[l] = t == s ? kSelf : node[t];
        }
        node[s] = table.make(tuple, m.accepting[s] != 0);
        stack.pop_back();
    }
    return node[m.initial];
}

ExplicitDfa dfa_from_wad(const DiagramTable& table, NodeId q) {
    const std::vector<NodeId> nodes = table.reachable(q);
    std::map<NodeId, State> index;
    ExplicitDfa d(table.letters());
    for (NodeId x : nodes) {
        index[x] = d.add_state(table.flag(x));
    }
    for (NodeId x : nodes) {
        for (Letter a = 0; a < table.letters(); ++a) {
            d.set(index[x], a, index.at(table.successor(x, a)));
        }
    }
    d.initial = index.at(q);
    return d;
}

namespace {

std::vector<State> build_expr(const WaExpression& e, ExplicitNfa& n) {
    switch (e.kind) {
        case WaExpression::Kind::Empty:
            return {n.add_state(false)};
        case WaExpression::Kind::Star: {
            const State s = n.add_state(true);
            for (Letter a : e.letters) {
                n.add(s, a, s);
            }
            return {s};
        }
        case WaExpression::Kind::Chain: {
            const std::vector<State> rest = build_expr(*e.left, n);
            const State s = n.add_state(false);
            for (Letter a : e.letters) {
                n.add(s, a, s);
            }
            for (State r : rest) {
                n.add(s, e.letter, r);
            }
            return {s};
        }
        case WaExpression::Kind::Union: {
            std::vector<State> l = build_expr(*e.left, n);
            std::vector<State> r = build_expr(*e.right, n);
            l.insert(l.end(), r.begin(), r.end());
            return l;
        }
    }
    return {};
}

}  // namespace

ExplicitNfa nfa_from_expr(const WaExpression& e, std::size_t letters) {
    ExplicitNfa n(letters);
    n.initial = build_expr(e, n);
    return n;
}

ExplicitNfa nfa_from_transducer(const TransducerNfa& t) {
    const std::size_t m = t.base_alphabet().size();
    ExplicitNfa n(m * m);
    for (StateId p = 0; p < t.state_count(); ++p) {
        n.add_state(t.is_accepting(p));
    }
    for (const auto& tr : t.transitions()) {
        n.add(tr.from, pair_letter(tr.in, tr.out, m), tr.to);
    }
    n.initial = {t.initial()};
    return n;
}

NodeId relation_from_transducer(DiagramTable& relation_table, const TransducerNfa& t) {
    if (!(relation_table.alphabet() == Alphabet::product(t.base_alphabet()))) {
        throw AlphabetMismatch("relation table is not over the transducer's pair alphabet");
    }
    return wad_from_dfa(relation_table, determinize(nfa_from_transducer(t)));
}

ExplicitDfa pre_oracle(const TransducerNfa& t, const ExplicitDfa& d) {
    const std::size_t m = t.base_alphabet().size();
    if (d.letters != m) {
        throw AlphabetMismatch("DFA alphabet size differs from the transducer alphabet");
    }
    ExplicitNfa n(m);
    std::map<std::pair<StateId, State>, State> index;
    std::deque<std::pair<StateId, State>> queue;
    auto intern = [&](StateId p, State s) {
        auto [it, fresh] = index.emplace(std::make_pair(p, s), static_cast<State>(n.size()));
        if (fresh) {
            n.add_state(t.is_accepting(p) && d.accepting[s] != 0);
            queue.emplace_back(p, s);
        }
        return it->second;
    };
    n.initial = {intern(t.initial(), d.initial)};
    while (!queue.empty()) {
        auto [p, s] = queue.front();
        queue.pop_front();
        const State from = index.at({p, s});
        for (Letter a = 0; a < m; ++a) {
            for (const auto& mv : t.moves(p, a)) {
                n.add(from, a, intern(mv.to, d.next(s, mv.out)));
            }
        }
    }
    return minimize(determinize(n));
}

ExplicitDfa post_oracle(const TransducerNfa& t, const ExplicitDfa& d) {
    return pre_oracle(transpose_transducer(t), d);
}

ExplicitNfa random_wa_nfa(std::size_t letters, std::size_t max_states, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t n = 1 + rng() % std::max<std::size_t>(max_states, 1);
    ExplicitNfa nfa(letters);
    for (std::size_t i = 0; i < n; ++i) {
        nfa.add_state(rng() % 3 == 0);
    }
    for (State s = 0; s < n; ++s) {
        for (Letter a = 0; a < letters; ++a) {
            const auto mode = rng() % 4;
            if (mode == 0) {
                nfa.add(s, a, s);
            } else if (mode >= 2 && s + 1 < n) {
                const auto k = 1 + rng() % 2;
                for (std::size_t j = 0; j < k; ++j) {
                    nfa.add(s, a, static_cast<State>(s + 1 + rng() % (n - s - 1)));
                }
            }
        }
    }
    nfa.initial = {0};
    return nfa;
}

WaExpression nfa_to_expr(const ExplicitNfa& n) {
    if (!is_weakly_acyclic(n)) {
        throw InputError("nfa_to_expr needs a weakly acyclic NFA");
    }
    auto loops = [&](State s) {
        std::vector<Letter> out;
        for (Letter a = 0; a < n.letters; ++a) {
            const auto& t = n.next(s, a);
            if (std::binary_search(t.begin(), t.end(), s)) {
                out.push_back(a);
            }
        }
        return out;
    };
    // expr(s) = union over exits of Λ(s)* a expr(t), plus Λ(s)* when s accepts.
    std::map<State, std::optional<WaExpression>> memo;
    std::function<std::optional<WaExpression>(State)> from = [&](State s) -> std::optional<WaExpression> {
        if (auto it = memo.find(s); it != memo.end()) {
            return it->second;
        }
        std::optional<WaExpression> acc;
        auto add = [&](WaExpression e) {
            acc = acc ? WaExpression::unite(std::move(*acc), std::move(e)) : std::move(e);
        };
        const std::vector<Letter> lambda = loops(s);
        if (n.accepting[s]) {
            add(WaExpression::star(lambda));
        }
        for (Letter a = 0; a < n.letters; ++a) {
            for (State t : n.next(s, a)) {
                if (t == s) {
                    continue;
                }
                if (auto rest = from(t)) {
                    add(WaExpression::chain(lambda, a, *rest));
                }
            }
        }
        memo[s] = acc;
        return acc;
    };
    std::optional<WaExpression> result;
    for (State s : n.initial) {
        if (auto e = from(s)) {
            result = result ? WaExpression::unite(std::move(*result), std::move(*e)) : std::move(*e);
        }
    }
    return result ? *result : WaExpression::empty();
}

namespace {

bool leq(const Marking& a, const Marking& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool pn_cover_oracle(const PetriNet& net, const Marking& init, const std::vector<Marking>& targets) {
    std::vector<Marking> basis;
    std::deque<Marking> work;
    auto insert = [&](const Marking& m) {
        for (const auto& b : basis) {
            if (leq(b, m)) {
                return;
            }
        }
        std::erase_if(basis, [&](const Marking& b) { return leq(m, b); });
        basis.push_back(m);
        work.push_back(m);
    };
    for (const auto& t : targets) {
        if (t.size() != net.places.size()) {
            throw InputError("target marking does not match the number of places");
        }
        insert(t);
    }
    while (!work.empty()) {
        const Marking m = work.front();
        work.pop_front();
        if (std::find(basis.begin(), basis.end(), m) == basis.end()) {
            continue;
        }
        if (leq(m, init)) {
            return true;
        }
        for (const auto& t : net.transitions) {
            Marking p(m.size());
            for (std::size_t i = 0; i < m.size(); ++i) {
                p[i] = (m[i] > t.produce[i] ? m[i] - t.produce[i] : 0) + t.consume[i];
            }
            insert(p);
        }
    }
    return std::any_of(basis.begin(), basis.end(), [&](const Marking& b) { return leq(b, init); });
}

}  // namespace wad
