#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wad/alphabet.hpp"

namespace wad {

using StateId = std::uint32_t;

/// Finite automaton over the pair alphabet Σ×Σ, read as a length-preserving
/// relation: it accepts (u, v) when |u| = |v| and the letter pairs
/// (u_1, v_1) … (u_n, v_n) spell an accepted word.
class TransducerNfa {
public:
    struct Move {
        Letter out;
        StateId to;
        bool operator==(const Move&) const = default;
    };
    struct Transition {
        StateId from;
        Letter in;
        Letter out;
        StateId to;
        auto operator<=>(const Transition&) const = default;
    };

    /// Creates a transducer with a single non-accepting initial state 0.
    explicit TransducerNfa(Alphabet base);

    const Alphabet& base_alphabet() const noexcept { return base_; }
    std::size_t state_count() const noexcept { return accepting_.size(); }
    StateId initial() const noexcept { return initial_; }
    bool is_accepting(StateId p) const { return accepting_.at(p) != 0; }

    StateId add_state(bool accepting = false);
    void set_initial(StateId p);
    void set_accepting(StateId p, bool accepting = true);
    void add_transition(StateId from, Letter in, Letter out, StateId to);
    void add_transition(StateId from, std::string_view in, std::string_view out, StateId to);

    /// Moves from p reading input letter `in`, in insertion order.
    std::span<const Move> moves(StateId p, Letter in) const { return moves_[p * base_.size() + in]; }
    /// All transitions, sorted.
    std::vector<Transition> transitions() const;

    /// Whether (input, output) is in the relation.
    bool accepts(const Word& input, const Word& output) const;

    /// Changes whenever the transducer is modified; used as a memo key.
    std::uint64_t uid() const noexcept { return uid_; }

    /// Deterministic textual form: a state line followed by one line per
    /// transition, e.g. "0 -(a,b)-> 1".
    std::string dump() const;

private:
    void touch();

    Alphabet base_;
    StateId initial_ = 0;
    std::vector<std::uint8_t> accepting_;
    std::vector<std::vector<Move>> moves_;
    std::uint64_t uid_ = 0;
};

/// {(v, u) : (u, v) ∈ L(t)}.
TransducerNfa transpose_transducer(const TransducerNfa& t);

/// The identity relation {(w, w)} as a one-state transducer.
TransducerNfa identity_transducer(const Alphabet& base);

/// Union of relations over the same alphabet, via a fresh initial state.
TransducerNfa union_transducers(std::span<const TransducerNfa> parts);

}  // namespace wad
