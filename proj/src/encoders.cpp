#include "wad/encoders.hpp"

#include <string>

#include "wad/error.hpp"

namespace wad {

namespace {

struct LcsLetters {
    std::size_t states;
    std::size_t messages;
    Letter state(std::uint32_t s) const { return s; }
    Letter message(std::uint32_t m) const { return static_cast<Letter>(states + m); }
    Letter delim() const { return static_cast<Letter>(states + messages); }
    Letter pad() const { return static_cast<Letter>(states + messages + 1); }
};

LcsLetters lcs_letters(const LcsModel& m) { return {m.states.size(), m.messages.size()}; }

// Petri letters: • = 0, ◦ = 1, # = 2.
constexpr Letter kTok = 0;
constexpr Letter kPad = 1;
constexpr Letter kDelim = 2;

NodeId epsilon_node(DiagramTable& table) {
    return table.make(SuccessorTuple(table.letters(), kEmpty), true);
}

NodeId step(DiagramTable& table, Letter a, NodeId next) {
    SuccessorTuple s(table.letters(), kEmpty);
    s[a] = next;
    return table.make(s, false);
}

void require_alphabet(const DiagramTable& table, const SystemModel& model) {
    if (!(table.alphabet() == encoding_alphabet(model))) {
        throw AlphabetMismatch("table alphabet is not the encoding alphabet of the model");
    }
}

// Builds the encoding right to left. `channel` receives the node reached
// after the segment's closing delimiter and returns the segment's entry node.
template <class ChannelFn>
NodeId build_lcs(DiagramTable& table, const LcsModel& model, const LcsConfig& c, ChannelFn channel) {
    const LcsLetters L = lcs_letters(model);
    NodeId next = epsilon_node(table);
    for (std::size_t i = c.channels.size(); i-- > 0;) {
        next = channel(c.channels[i], next);
    }
    next = step(table, L.delim(), next);
    for (std::size_t i = c.processes.size(); i-- > 0;) {
        if (!c.alternatives.empty()) {
            SuccessorTuple s(table.letters(), kEmpty);
            for (auto q : c.alternatives[i]) {
                s[L.state(q)] = next;
            }
            next = table.make(s, false);
        } else {
            next = step(table, L.state(c.processes[i]), next);
        }
    }
    return next;
}

template <class PlaceFn>
NodeId build_pn(DiagramTable& table, const Marking& m, PlaceFn place) {
    NodeId next = epsilon_node(table);
    for (std::size_t i = m.size(); i-- > 0;) {
        next = place(m[i], next);
    }
    return next;
}

// ◦* # next
NodeId pad_tail(DiagramTable& table, NodeId next) {
    SuccessorTuple s(table.letters(), kEmpty);
    s[kPad] = kSelf;
    s[kDelim] = next;
    return table.make(s, false);
}

NodeId token_chain(DiagramTable& table, std::uint32_t n, NodeId next) {
    for (std::uint32_t i = 0; i < n; ++i) {
        next = step(table, kTok, next);
    }
    return next;
}

}  // namespace

Alphabet encoding_alphabet(const SystemModel& model) {
    if (const auto* lcs = std::get_if<LcsModel>(&model)) {
        std::vector<std::string> tokens = lcs->states;
        tokens.insert(tokens.end(), lcs->messages.begin(), lcs->messages.end());
        tokens.emplace_back(kLcsDelim);
        tokens.emplace_back(kLcsPad);
        return Alphabet(std::move(tokens));
    }
    if (std::holds_alternative<PetriNet>(model)) {
        return Alphabet({kPnToken, kPnPad, kPnDelim});
    }
    return Alphabet(std::get<BroadcastProtocol>(model).states);
}

Word encode_config_word(const SystemModel& model, const Config& config) {
    return encode_padded_word(model, config, 0);
}

Word encode_padded_word(const SystemModel& model, const Config& config, std::size_t pads) {
    validate_config(model, config);
    Word w;
    if (const auto* lcs = std::get_if<LcsModel>(&model)) {
        const LcsLetters L = lcs_letters(*lcs);
        const auto& c = std::get<LcsConfig>(config);
        for (auto s : c.processes) {
            w.push_back(L.state(s));
        }
        w.push_back(L.delim());
        for (const auto& ch : c.channels) {
            for (auto m : ch) {
                w.push_back(L.message(m));
            }
            w.insert(w.end(), pads, L.pad());
            w.push_back(L.delim());
        }
    } else if (std::holds_alternative<PetriNet>(model)) {
        for (auto n : std::get<Marking>(config)) {
            w.insert(w.end(), n, kTok);
            w.insert(w.end(), pads, kPad);
            w.push_back(kDelim);
        }
    } else {
        for (auto s : std::get<BpConfig>(config)) {
            w.push_back(s);
        }
    }
    return w;
}

NodeId word_node(DiagramTable& table, const Word& w) {
    NodeId next = epsilon_node(table);
    for (std::size_t i = w.size(); i-- > 0;) {
        if (w[i] >= table.letters()) {
            throw InputError("letter outside the table alphabet");
        }
        next = step(table, w[i], next);
    }
    return next;
}

NodeId encode_upward(DiagramTable& table, const SystemModel& model, const Config& config) {
    require_alphabet(table, model);
    validate_config(model, config, true);
    if (const auto* lcs = std::get_if<LcsModel>(&model)) {
        const LcsLetters L = lcs_letters(*lcs);
        // ∏ ((Γ ∪ X) \ a)* a, then (Γ ∪ X)* #
        return build_lcs(table, *lcs, std::get<LcsConfig>(config), [&](const auto& ch, NodeId next) {
            SuccessorTuple s(table.letters(), kEmpty);
            for (std::uint32_t m = 0; m < L.messages; ++m) {
                s[L.message(m)] = kSelf;
            }
            s[L.pad()] = kSelf;
            s[L.delim()] = next;
            NodeId node = table.make(s, false);
            for (std::size_t j = ch.size(); j-- > 0;) {
                SuccessorTuple t(table.letters(), kEmpty);
                for (std::uint32_t m = 0; m < L.messages; ++m) {
                    t[L.message(m)] = kSelf;
                }
                t[L.pad()] = kSelf;
                t[L.message(ch[j])] = node;
                node = table.make(t, false);
            }
            return node;
        });
    }
    if (std::holds_alternative<PetriNet>(model)) {
        // •^n •* ◦* #
        return build_pn(table, std::get<Marking>(config), [&](std::uint32_t n, NodeId next) {
            SuccessorTuple s(table.letters(), kEmpty);
            s[kTok] = kSelf;
            s[kPad] = pad_tail(table, next);
            s[kDelim] = next;
            return token_chain(table, n, table.make(s, false));
        });
    }
    return word_node(table, encode_config_word(model, config));
}

NodeId encode_padded(DiagramTable& table, const SystemModel& model, const Config& config) {
    require_alphabet(table, model);
    validate_config(model, config);
    if (const auto* lcs = std::get_if<LcsModel>(&model)) {
        const LcsLetters L = lcs_letters(*lcs);
        // X* c1 X* … X* ck X* #
        return build_lcs(table, *lcs, std::get<LcsConfig>(config), [&](const auto& ch, NodeId next) {
            SuccessorTuple s(table.letters(), kEmpty);
            s[L.pad()] = kSelf;
            s[L.delim()] = next;
            NodeId node = table.make(s, false);
            for (std::size_t j = ch.size(); j-- > 0;) {
                SuccessorTuple t(table.letters(), kEmpty);
                t[L.pad()] = kSelf;
                t[L.message(ch[j])] = node;
                node = table.make(t, false);
            }
            return node;
        });
    }
    return encode_initial(table, model, config);
}

NodeId encode_initial(DiagramTable& table, const SystemModel& model, const Config& config) {
    require_alphabet(table, model);
    validate_config(model, config);
    if (const auto* lcs = std::get_if<LcsModel>(&model)) {
        const LcsLetters L = lcs_letters(*lcs);
        return build_lcs(table, *lcs, std::get<LcsConfig>(config), [&](const auto& ch, NodeId next) {
            SuccessorTuple s(table.letters(), kEmpty);
            s[L.pad()] = kSelf;
            s[L.delim()] = next;
            NodeId node = table.make(s, false);
            for (std::size_t j = ch.size(); j-- > 0;) {
                node = step(table, L.message(ch[j]), node);
            }
            return node;
        });
    }
    if (std::holds_alternative<PetriNet>(model)) {
        return build_pn(table, std::get<Marking>(config), [&](std::uint32_t n, NodeId next) {
            return token_chain(table, n, pad_tail(table, next));
        });
    }
    return word_node(table, encode_config_word(model, config));
}

std::vector<NamedTransducer> lcs_transition_transducers(const LcsModel& model) {
    validate_model(model);
    const LcsLetters L = lcs_letters(model);
    const Alphabet alphabet = encoding_alphabet(model);
    std::vector<NamedTransducer> out;
    for (const auto& r : model.rules) {
        TransducerNfa t(alphabet);
        // State vector: rewrite one occurrence of src.
        const StateId s0 = t.initial();
        const StateId s1 = t.add_state();
        for (std::uint32_t s = 0; s < L.states; ++s) {
            t.add_transition(s0, L.state(s), L.state(s), s0);
            t.add_transition(s1, L.state(s), L.state(s), s1);
        }
        t.add_transition(s0, L.state(r.src), L.state(r.dst), s1);
        StateId at = t.add_state();
        t.add_transition(s1, L.delim(), L.delim(), at);

        auto copy_loop = [&](StateId p) {
            for (std::uint32_t m = 0; m < L.messages; ++m) {
                t.add_transition(p, L.message(m), L.message(m), p);
            }
            t.add_transition(p, L.pad(), L.pad(), p);
        };
        auto drop_loop = [&](StateId p) {
            for (std::uint32_t m = 0; m < L.messages; ++m) {
                t.add_transition(p, L.message(m), L.pad(), p);
            }
            t.add_transition(p, L.pad(), L.pad(), p);
        };

        for (std::uint32_t i = 0; i < model.channels; ++i) {
            const StateId next = t.add_state();
            const bool touched = r.kind != LcsRule::Kind::Nop && r.channel == i;
            if (!touched) {
                copy_loop(at);
                t.add_transition(at, L.delim(), L.delim(), next);
            } else if (r.kind == LcsRule::Kind::Recv) {
                // Lose a prefix, consume one a, keep the rest.
                const StateId rest = t.add_state();
                drop_loop(at);
                t.add_transition(at, L.message(r.message), L.pad(), rest);
                copy_loop(rest);
                t.add_transition(rest, L.delim(), L.delim(), next);
            } else {
                // Keep a prefix, write b into a free slot, lose the rest.
                const StateId rest = t.add_state();
                copy_loop(at);
                t.add_transition(at, L.pad(), L.message(r.message), rest);
                drop_loop(rest);
                t.add_transition(rest, L.delim(), L.delim(), next);
            }
            at = next;
        }
        t.set_accepting(at);

        std::string name = model.states[r.src] + " -> " + model.states[r.dst];
        switch (r.kind) {
            case LcsRule::Kind::Recv:
                name += " recv " + std::to_string(r.channel + 1) + " " + model.messages[r.message];
                break;
            case LcsRule::Kind::Send:
                name += " send " + std::to_string(r.channel + 1) + " " + model.messages[r.message];
                break;
            case LcsRule::Kind::Nop:
                name += " nop";
                break;
        }
        out.push_back({std::move(name), std::move(t)});
    }
    return out;
}

std::vector<NamedTransducer> pn_transition_transducers(const PetriNet& net) {
    validate_model(net);
    const Alphabet alphabet = encoding_alphabet(net);
    std::vector<NamedTransducer> out;
    for (const auto& tr : net.transitions) {
        TransducerNfa t(alphabet);
        StateId at = t.initial();
        for (std::size_t p = 0; p < net.places.size(); ++p) {
            const std::uint32_t c = tr.consume[p];
            const std::uint32_t r = tr.produce[p];
            for (std::uint32_t i = 0; i < std::min(c, r); ++i) {
                const StateId n = t.add_state();
                t.add_transition(at, kTok, kTok, n);
                at = n;
            }
            t.add_transition(at, kTok, kTok, at);
            // Tokens turn into pads (c > r) or pads into tokens (r > c).
            const Letter in = c > r ? kTok : kPad;
            const Letter outl = c > r ? kPad : kTok;
            for (std::uint32_t i = 0; i < (c > r ? c - r : r - c); ++i) {
                const StateId n = t.add_state();
                t.add_transition(at, in, outl, n);
                at = n;
            }
            const StateId pads = t.add_state();
            const StateId next = t.add_state();
            t.add_transition(at, kPad, kPad, pads);
            t.add_transition(pads, kPad, kPad, pads);
            t.add_transition(at, kDelim, kDelim, next);
            t.add_transition(pads, kDelim, kDelim, next);
            at = next;
        }
        t.set_accepting(at);
        out.push_back({tr.name, std::move(t)});
    }
    return out;
}

std::vector<NamedTransducer> bp_transition_transducers(const BroadcastProtocol& bp) {
    validate_model(bp);
    const Alphabet alphabet = encoding_alphabet(bp);
    const auto n = static_cast<std::uint32_t>(bp.states.size());
    std::vector<NamedTransducer> out;
    for (const auto& a : bp.actions) {
        TransducerNfa t(alphabet);
        const StateId q0 = t.initial();
        const StateId fin = t.add_state(true);
        auto identity_loop = [&](StateId p) {
            for (std::uint32_t s = 0; s < n; ++s) {
                t.add_transition(p, s, s, p);
            }
        };
        switch (a.kind) {
            case BpAction::Kind::Local:
                identity_loop(q0);
                identity_loop(fin);
                for (const auto& e : a.send) {
                    t.add_transition(q0, e.src, e.dst, fin);
                }
                break;
            case BpAction::Kind::Rendezvous:
                identity_loop(q0);
                identity_loop(fin);
                for (const auto& s : a.send) {
                    for (const auto& r : a.recv) {
                        const StateId sender_first = t.add_state();
                        const StateId receiver_first = t.add_state();
                        identity_loop(sender_first);
                        identity_loop(receiver_first);
                        t.add_transition(q0, s.src, s.dst, sender_first);
                        t.add_transition(sender_first, r.src, r.dst, fin);
                        t.add_transition(q0, r.src, r.dst, receiver_first);
                        t.add_transition(receiver_first, s.src, s.dst, fin);
                    }
                }
                break;
            case BpAction::Kind::Broadcast: {
                std::vector<std::vector<std::uint32_t>> targets(n);
                for (const auto& r : a.recv) {
                    targets[r.src].push_back(r.dst);
                }
                for (std::uint32_t s = 0; s < n; ++s) {
                    if (targets[s].empty()) {
                        targets[s].push_back(s);
                    }
                    for (auto d : targets[s]) {
                        t.add_transition(q0, s, d, q0);
                        t.add_transition(fin, s, d, fin);
                    }
                }
                for (const auto& e : a.send) {
                    t.add_transition(q0, e.src, e.dst, fin);
                }
                break;
            }
        }
        out.push_back({a.name, std::move(t)});
    }
    return out;
}

std::vector<NamedTransducer> transition_transducers(const SystemModel& model) {
    if (const auto* lcs = std::get_if<LcsModel>(&model)) {
        return lcs_transition_transducers(*lcs);
    }
    if (const auto* net = std::get_if<PetriNet>(&model)) {
        return pn_transition_transducers(*net);
    }
    return bp_transition_transducers(std::get<BroadcastProtocol>(model));
}

std::optional<Letter> closure_pad(const SystemModel& model) {
    if (const auto* lcs = std::get_if<LcsModel>(&model)) {
        return lcs_letters(*lcs).pad();
    }
    return std::nullopt;
}

}  // namespace wad
