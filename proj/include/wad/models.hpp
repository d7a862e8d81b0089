#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wad {

/// Lossy channel system. States and messages are indices into the name
/// lists; channels are numbered 0..channels-1 internally.
struct LcsRule {
    enum class Kind { Recv, Send, Nop };
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    Kind kind = Kind::Nop;
    std::uint32_t channel = 0;
    std::uint32_t message = 0;

    bool operator==(const LcsRule&) const = default;
};

struct LcsModel {
    std::vector<std::string> states;
    std::vector<std::string> messages;
    std::uint32_t channels = 1;
    std::vector<LcsRule> rules;

    bool operator==(const LcsModel&) const = default;
};

struct LcsConfig {
    std::vector<std::uint32_t> processes;
    std::vector<std::vector<std::uint32_t>> channels;
    /// Target bases only: when non-empty, position i matches any state in
    /// alternatives[i], and processes[i] is its first entry.
    std::vector<std::vector<std::uint32_t>> alternatives;

    bool operator==(const LcsConfig&) const = default;
};

struct PetriTransition {
    std::string name;
    std::vector<std::uint32_t> consume;  ///< F(p, t), one entry per place
    std::vector<std::uint32_t> produce;  ///< F(t, p)

    bool operator==(const PetriTransition&) const = default;
};

struct PetriNet {
    std::vector<std::string> places;
    std::vector<PetriTransition> transitions;

    bool operator==(const PetriNet&) const = default;
};

using Marking = std::vector<std::uint32_t>;

struct BpEdge {
    std::uint32_t src = 0;
    std::uint32_t dst = 0;

    bool operator==(const BpEdge&) const = default;
};

/// Actions of a broadcast protocol: a local action has one send edge and no
/// receive edges; rendezvous pairs one b! edge with one b? edge; broadcast
/// moves one c!! sender and every process with a c?? edge.
struct BpAction {
    enum class Kind { Local, Rendezvous, Broadcast };
    Kind kind = Kind::Local;
    std::string name;
    std::vector<BpEdge> send;
    std::vector<BpEdge> recv;

    bool operator==(const BpAction&) const = default;
};

struct BroadcastProtocol {
    std::vector<std::string> states;
    std::vector<BpAction> actions;

    bool operator==(const BroadcastProtocol&) const = default;
};

/// Process states, one per process; a distinct type from Marking.
struct BpConfig : std::vector<std::uint32_t> {
    using std::vector<std::uint32_t>::vector;
};

using SystemModel = std::variant<LcsModel, PetriNet, BroadcastProtocol>;
using Config = std::variant<LcsConfig, Marking, BpConfig>;

/// A target is either a basis configuration (upward closure for LCS and
/// Petri nets, exact word for broadcast) or an expression over the encoding
/// alphabet.
struct TargetSpec {
    std::optional<std::string> expr;
    Config basis;

    bool operator==(const TargetSpec&) const = default;
};

struct SafetyQuery {
    Config init;
    std::vector<TargetSpec> targets;

    bool operator==(const SafetyQuery&) const = default;
};

/// Throws InputError when the configuration does not fit the model.
void validate_config(const SystemModel& model, const Config& config, bool target = false);
/// Throws InputError on out-of-range indices or clashing names.
void validate_model(const SystemModel& model);

// Direct semantics, independent of any automaton. Successors are listed
// without duplicates, in no particular order.

/// One step of rule r under the lossy semantics used by the encoding: a
/// receive of a may drop any prefix ending in an a, a send of b may drop any
/// suffix before appending b. Any process in state src may move.
std::vector<LcsConfig> lcs_successors(const LcsModel& model, const LcsRule& r, const LcsConfig& c);

std::optional<Marking> pn_fire(const PetriNet& net, const PetriTransition& t, const Marking& m);

std::vector<BpConfig> bp_successors(const BroadcastProtocol& bp, const BpAction& a, const BpConfig& c);

}  // namespace wad
