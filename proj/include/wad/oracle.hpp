#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wad/error.hpp"
#include "wad/expr.hpp"
#include "wad/models.hpp"
#include "wad/table.hpp"
#include "wad/transducer.hpp"

// Explicit automata used as ground truth. Nothing here calls into the
// diagram operations except the two conversion functions.

namespace wad {

using State = std::uint32_t;

struct ExplicitNfa {
    std::size_t letters = 0;
    std::vector<State> initial;
    std::vector<std::uint8_t> accepting;
    /// delta[s * letters + a]: sorted successor list
    std::vector<std::vector<State>> delta;

    explicit ExplicitNfa(std::size_t letters = 0) : letters(letters) {}

    std::size_t size() const noexcept { return accepting.size(); }
    State add_state(bool accept = false);
    void add(State from, Letter a, State to);
    const std::vector<State>& next(State s, Letter a) const { return delta[s * letters + a]; }
    bool accepts(const Word& w) const;
};

/// Total DFA; state 0 is initial unless stated otherwise.
struct ExplicitDfa {
    std::size_t letters = 0;
    State initial = 0;
    std::vector<std::uint8_t> accepting;
    std::vector<State> delta;  ///< delta[s * letters + a]

    explicit ExplicitDfa(std::size_t letters = 0) : letters(letters) {}

    std::size_t size() const noexcept { return accepting.size(); }
    State add_state(bool accept = false);
    State next(State s, Letter a) const { return delta[s * letters + a]; }
    void set(State s, Letter a, State t) { delta[s * letters + a] = t; }
    bool accepts(const Word& w) const;
};

/// Raised by wad_from_dfa; `cycle` lists the states of a non-trivial cycle.
class NotWeaklyAcyclic : public InputError {
public:
    NotWeaklyAcyclic(const std::string& msg, std::vector<State> cycle) : InputError(msg), cycle(std::move(cycle)) {}
    std::vector<State> cycle;
};

ExplicitNfa as_nfa(const ExplicitDfa& d);

/// Accessible powerset construction, completed with a sink when needed.
ExplicitDfa determinize(const ExplicitNfa& n);

/// Moore partition refinement over the accessible part. States of the result
/// are numbered in breadth-first order from the initial state, so equal
/// languages give identical DFAs.
ExplicitDfa minimize(const ExplicitDfa& d);

bool is_weakly_acyclic(const ExplicitDfa& d);
/// Also requires that a state with an a-self-loop has no other a-successor.
bool is_weakly_acyclic(const ExplicitNfa& n);

/// A cycle through at least two distinct states, if any.
std::optional<std::vector<State>> find_cycle(const ExplicitDfa& d);

bool equivalent(const ExplicitDfa& a, const ExplicitDfa& b);

ExplicitDfa complement_dfa(const ExplicitDfa& d);
ExplicitDfa product_dfa(const ExplicitDfa& a, const ExplicitDfa& b, bool conjunction);

/// Minimizes d and builds its diagram bottom-up; SELF for self-loops.
/// Throws NotWeaklyAcyclic with a witness cycle otherwise.
NodeId wad_from_dfa(DiagramTable& table, const ExplicitDfa& d);
/// Total DFA whose states are the nodes reachable from q.
ExplicitDfa dfa_from_wad(const DiagramTable& table, NodeId q);

ExplicitNfa nfa_from_expr(const WaExpression& e, std::size_t letters);

/// The transducer as an NFA over the pair alphabet.
ExplicitNfa nfa_from_transducer(const TransducerNfa& t);
/// Relation diagram of t in a table over the product alphabet.
NodeId relation_from_transducer(DiagramTable& relation_table, const TransducerNfa& t);

/// Product of t (input side) with d (output side), determinized and minimized.
ExplicitDfa pre_oracle(const TransducerNfa& t, const ExplicitDfa& d);
ExplicitDfa post_oracle(const TransducerNfa& t, const ExplicitDfa& d);

/// Random weakly acyclic NFA: states are topologically ordered, and each
/// (state, letter) either self-loops only or moves to larger states.
ExplicitNfa random_wa_nfa(std::size_t letters, std::size_t max_states, std::uint64_t seed);

/// Union over accepting paths of Λ1* a1 ⋯ Λn* an Γ*, read off a weakly
/// acyclic NFA (Λ and Γ are the self-loop letters along the path).
WaExpression nfa_to_expr(const ExplicitNfa& n);

/// Coverability by backward search over minimal bases of markings.
bool pn_cover_oracle(const PetriNet& net, const Marking& init, const std::vector<Marking>& targets);

}  // namespace wad
