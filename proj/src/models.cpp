#include "wad/models.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

#include "wad/error.hpp"

namespace wad {

namespace {

void check_names(const std::vector<std::string>& names, const char* what, std::set<std::string>& seen) {
    for (const auto& n : names) {
        if (n.empty()) {
            throw InputError(std::string("empty ") + what + " name");
        }
        if (n.find_first_of(",| \t") != std::string::npos) {
            throw InputError(std::string(what) + " name '" + n + "' contains a reserved character");
        }
        if (!seen.insert(n).second) {
            throw InputError(std::string("duplicate name '") + n + "'");
        }
    }
}

void check_index(std::uint32_t i, std::size_t n, const char* what) {
    if (i >= n) {
        throw InputError(std::string(what) + " index " + std::to_string(i) + " out of range");
    }
}

template <class T>
void dedupe(std::vector<T>& v) {
    std::sort(v.begin(), v.end(), [](const T& a, const T& b) {
        if constexpr (std::is_same_v<T, LcsConfig>) {
            return std::tie(a.processes, a.channels) < std::tie(b.processes, b.channels);
        } else {
            return a < b;
        }
    });
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

void validate_model(const SystemModel& model) {
    std::set<std::string> seen;
    if (const auto* lcs = std::get_if<LcsModel>(&model)) {
        seen = {"#", "X", "-"};
        check_names(lcs->states, "state", seen);
        check_names(lcs->messages, "message", seen);
        if (lcs->states.empty()) {
            throw InputError("an LCS needs at least one state");
        }
        if (lcs->channels == 0) {
            throw InputError("an LCS needs at least one channel");
        }
        for (const auto& r : lcs->rules) {
            check_index(r.src, lcs->states.size(), "state");
            check_index(r.dst, lcs->states.size(), "state");
            if (r.kind != LcsRule::Kind::Nop) {
                check_index(r.channel, lcs->channels, "channel");
                check_index(r.message, lcs->messages.size(), "message");
            }
        }
    } else if (const auto* net = std::get_if<PetriNet>(&model)) {
        check_names(net->places, "place", seen);
        if (net->places.empty()) {
            throw InputError("a Petri net needs at least one place");
        }
        std::set<std::string> tnames;
        for (const auto& t : net->transitions) {
            if (!tnames.insert(t.name).second) {
                throw InputError("duplicate transition '" + t.name + "'");
            }
            if (t.consume.size() != net->places.size() || t.produce.size() != net->places.size()) {
                throw InputError("transition '" + t.name + "' has a flow vector of the wrong size");
            }
        }
    } else {
        const auto& bp = std::get<BroadcastProtocol>(model);
        check_names(bp.states, "state", seen);
        if (bp.states.empty()) {
            throw InputError("a broadcast protocol needs at least one state");
        }
        std::set<std::string> anames;
        for (const auto& a : bp.actions) {
            if (!anames.insert(a.name).second) {
                throw InputError("duplicate action '" + a.name + "'");
            }
            for (const auto& e : a.send) {
                check_index(e.src, bp.states.size(), "state");
                check_index(e.dst, bp.states.size(), "state");
            }
            for (const auto& e : a.recv) {
                check_index(e.src, bp.states.size(), "state");
                check_index(e.dst, bp.states.size(), "state");
            }
            if (a.send.empty()) {
                throw InputError("action '" + a.name + "' has no sending edge");
            }
            if (a.kind == BpAction::Kind::Local && !a.recv.empty()) {
                throw InputError("local action '" + a.name + "' cannot have receive edges");
            }
            if (a.kind == BpAction::Kind::Rendezvous && a.recv.empty()) {
                throw InputError("rendezvous '" + a.name + "' has no receive edge");
            }
        }
    }
}

void validate_config(const SystemModel& model, const Config& config, bool target) {
    if (const auto* lcs = std::get_if<LcsModel>(&model)) {
        const auto* c = std::get_if<LcsConfig>(&config);
        if (c == nullptr) {
            throw InputError("configuration is not an LCS configuration");
        }
        if (c->channels.size() != lcs->channels) {
            throw InputError("configuration has " + std::to_string(c->channels.size()) + " channels, expected " +
                             std::to_string(lcs->channels));
        }
        for (auto s : c->processes) {
            check_index(s, lcs->states.size(), "state");
        }
        if (!c->alternatives.empty()) {
            if (!target) {
                throw InputError("state alternatives are only allowed in targets");
            }
            if (c->alternatives.size() != c->processes.size()) {
                throw InputError("state alternatives do not match the process count");
            }
            for (std::size_t i = 0; i < c->alternatives.size(); ++i) {
                const auto& alt = c->alternatives[i];
                if (alt.empty() || alt.front() != c->processes[i]) {
                    throw InputError("state alternatives must start with the process state");
                }
                for (auto s : alt) {
                    check_index(s, lcs->states.size(), "state");
                }
            }
        }
        for (const auto& ch : c->channels) {
            for (auto m : ch) {
                check_index(m, lcs->messages.size(), "message");
            }
        }
    } else if (const auto* net = std::get_if<PetriNet>(&model)) {
        const auto* m = std::get_if<Marking>(&config);
        if (m == nullptr || m->size() != net->places.size()) {
            throw InputError("marking does not match the number of places");
        }
    } else {
        const auto& bp = std::get<BroadcastProtocol>(model);
        const auto* c = std::get_if<BpConfig>(&config);
        if (c == nullptr) {
            throw InputError("configuration is not a broadcast configuration");
        }
        for (auto s : *c) {
            check_index(s, bp.states.size(), "state");
        }
    }
}

std::vector<LcsConfig> lcs_successors(const LcsModel&, const LcsRule& r, const LcsConfig& c) {
    std::vector<LcsConfig> out;
    for (std::size_t i = 0; i < c.processes.size(); ++i) {
        if (c.processes[i] != r.src) {
            continue;
        }
        LcsConfig base = c;
        base.processes[i] = r.dst;
        switch (r.kind) {
            case LcsRule::Kind::Nop:
                out.push_back(base);
                break;
            case LcsRule::Kind::Recv: {
                const auto& w = c.channels[r.channel];
                for (std::size_t j = 0; j < w.size(); ++j) {
                    if (w[j] == r.message) {
                        LcsConfig next = base;
                        next.channels[r.channel].assign(w.begin() + static_cast<std::ptrdiff_t>(j) + 1, w.end());
                        out.push_back(std::move(next));
                    }
                }
                break;
            }
            case LcsRule::Kind::Send: {
                const auto& w = c.channels[r.channel];
                for (std::size_t j = 0; j <= w.size(); ++j) {
                    LcsConfig next = base;
                    next.channels[r.channel].assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
                    next.channels[r.channel].push_back(r.message);
                    out.push_back(std::move(next));
                }
                break;
            }
        }
    }
    dedupe(out);
    return out;
}

std::optional<Marking> pn_fire(const PetriNet&, const PetriTransition& t, const Marking& m) {
    Marking out = m;
    for (std::size_t p = 0; p < m.size(); ++p) {
        if (m[p] < t.consume[p]) {
            return std::nullopt;
        }
        out[p] = m[p] - t.consume[p] + t.produce[p];
    }
    return out;
}

std::vector<BpConfig> bp_successors(const BroadcastProtocol& bp, const BpAction& a, const BpConfig& c) {
    std::vector<BpConfig> out;
    const std::size_t n = c.size();
    switch (a.kind) {
        case BpAction::Kind::Local:
            for (const auto& e : a.send) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (c[i] == e.src) {
                        BpConfig next = c;
                        next[i] = e.dst;
                        out.push_back(std::move(next));
                    }
                }
            }
            break;
        case BpAction::Kind::Rendezvous:
            for (const auto& s : a.send) {
                for (const auto& r : a.recv) {
                    for (std::size_t i = 0; i < n; ++i) {
                        for (std::size_t j = 0; j < n; ++j) {
                            if (i != j && c[i] == s.src && c[j] == r.src) {
                                BpConfig next = c;
                                next[i] = s.dst;
                                next[j] = r.dst;
                                out.push_back(std::move(next));
                            }
                        }
                    }
                }
            }
            break;
        case BpAction::Kind::Broadcast: {
            std::vector<std::vector<std::uint32_t>> targets(bp.states.size());
            for (const auto& r : a.recv) {
                targets[r.src].push_back(r.dst);
            }
            for (std::uint32_t s = 0; s < targets.size(); ++s) {
                if (targets[s].empty()) {
                    targets[s].push_back(s);
                }
            }
            for (const auto& e : a.send) {
                for (std::size_t i = 0; i < n; ++i) {
                    if (c[i] != e.src) {
                        continue;
                    }
                    std::vector<BpConfig> partial{BpConfig{}};
                    for (std::size_t j = 0; j < n; ++j) {
                        std::vector<BpConfig> grown;
                        for (const auto& pre : partial) {
                            if (j == i) {
                                grown.push_back(pre);
                                grown.back().push_back(e.dst);
                                continue;
                            }
                            for (auto d : targets[c[j]]) {
                                grown.push_back(pre);
                                grown.back().push_back(d);
                            }
                        }
                        partial = std::move(grown);
                    }
                    out.insert(out.end(), partial.begin(), partial.end());
                }
            }
            break;
        }
    }
    dedupe(out);
    return out;
}

}  // namespace wad
