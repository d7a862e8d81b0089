#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wad/alphabet.hpp"
#include "wad/models.hpp"
#include "wad/table.hpp"
#include "wad/transducer.hpp"

namespace wad {

// Encodings of configurations as words:
//   LCS        p1 … pm # w1 # … # wk #  over P ∪ Γ ∪ {#, X}
//   Petri net  •^n1 # … •^nk #           over {•, ◦, #}
//   broadcast  p1 … pm                   over P
// X and ◦ are pad letters. An X inside a channel is a free slot and is
// ignored by the subword order; ◦ may only trail the tokens of a place.

inline constexpr const char* kLcsDelim = "#";
inline constexpr const char* kLcsPad = "X";
inline constexpr const char* kPnToken = "•";
inline constexpr const char* kPnPad = "◦";
inline constexpr const char* kPnDelim = "#";

Alphabet encoding_alphabet(const SystemModel& model);

/// The encoding word without pads.
Word encode_config_word(const SystemModel& model, const Config& config);

/// The encoding with `pads` trailing pad letters in every channel or place
/// segment (no effect for broadcast protocols).
Word encode_padded_word(const SystemModel& model, const Config& config, std::size_t pads);

/// Enc(↑config), closed under pads: subword order on LCS channels with X
/// ignored, token-count order on Petri places with trailing ◦*. Broadcast
/// configurations denote just their own word.
NodeId encode_upward(DiagramTable& table, const SystemModel& model, const Config& config);

/// Every padded encoding of exactly this configuration: X anywhere in LCS
/// channels, trailing ◦* in Petri places, the plain word for broadcast.
NodeId encode_padded(DiagramTable& table, const SystemModel& model, const Config& config);

/// The padded initial set used by the checker: trailing X* per LCS channel,
/// trailing ◦* per place, the plain word for broadcast.
NodeId encode_initial(DiagramTable& table, const SystemModel& model, const Config& config);

/// The pad letter whose position never matters: X for an LCS, none otherwise.
std::optional<Letter> closure_pad(const SystemModel& model);

/// Node accepting exactly one word.
NodeId word_node(DiagramTable& table, const Word& w);

struct NamedTransducer {
    std::string name;
    TransducerNfa transducer;
};

std::vector<NamedTransducer> lcs_transition_transducers(const LcsModel& model);
std::vector<NamedTransducer> pn_transition_transducers(const PetriNet& net);
std::vector<NamedTransducer> bp_transition_transducers(const BroadcastProtocol& bp);
std::vector<NamedTransducer> transition_transducers(const SystemModel& model);

}  // namespace wad
