#include "wad/model_file.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "wad/encoders.hpp"
#include "wad/error.hpp"
#include "wad/expr.hpp"
#include "wad/ops.hpp"

namespace wad {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') {
            ++j;
        }
        if (j > i) {
            out.emplace_back(s.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

std::string join(const std::vector<std::string>& v, std::size_t from = 0, const char* sep = " ") {
    std::string out;
    for (std::size_t i = from; i < v.size(); ++i) {
        if (i > from) {
            out += sep;
        }
        out += v[i];
    }
    return out;
}

std::size_t utf8_length(unsigned char c) {
    return c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : 4;
}

class ModelParser {
public:
    explicit ModelParser(std::string_view text) {
        std::size_t line = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) {
                end = text.size();
            }
            ++line;
            std::string_view raw = text.substr(pos, end - pos);
            auto words = split_ws(raw);
            if (!words.empty() && words[0][0] != '#') {
                lines_.push_back({line, std::move(words)});
            }
            pos = end + 1;
        }
    }

    ModelFile parse() {
        if (lines_.empty()) {
            throw ParseError("empty model file", 1, 0);
        }
        const auto& head = lines_[0];
        if (head.words.size() != 1) {
            fail(head, "the first line must be one of 'lcs', 'petri', 'broadcast'");
        }
        ModelFile m;
        if (head.words[0] == "lcs") {
            parse_lcs(m);
        } else if (head.words[0] == "petri") {
            parse_petri(m);
        } else if (head.words[0] == "broadcast") {
            parse_broadcast(m);
        } else {
            fail(head, "unknown model kind '" + head.words[0] + "'");
        }
        return m;
    }

private:
    struct Line {
        std::size_t number;
        std::vector<std::string> words;
    };

    [[noreturn]] static void fail(const Line& l, const std::string& msg) { throw ParseError(msg, l.number, 0); }

    static std::uint32_t lookup(const Line& l, const std::vector<std::string>& names, const std::string& name,
                                const char* what) {
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == name) {
                return static_cast<std::uint32_t>(i);
            }
        }
        fail(l, std::string("unknown ") + what + " '" + name + "'");
    }

    static std::uint32_t number(const Line& l, const std::string& s) {
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9) {
            fail(l, "expected a number, found '" + s + "'");
        }
        return static_cast<std::uint32_t>(std::stoul(s));
    }

    void once(const Line& l, const std::string& key) {
        if (!seen_.insert(key).second) {
            fail(l, "duplicate '" + key + "' declaration");
        }
    }

    void require(const std::string& key, const char* what) {
        if (!seen_.contains(key)) {
            throw ParseError(std::string("missing '") + what + "' line", lines_.back().number, 0);
        }
    }

    static void check_validity(const Line& l, const SystemModel& model, const Config& c, bool target = false) {
        try {
            validate_config(model, c, target);
        } catch (const InputError& e) {
            fail(l, e.what());
        }
    }

    void finish(ModelFile& m) {
        require("init", "init");
        if (m.query.targets.empty()) {
            throw ParseError("missing 'target' line", lines_.back().number, 0);
        }
        try {
            validate_model(m.model);
        } catch (const InputError& e) {
            throw ParseError(e.what(), lines_[0].number, 0);
        }
    }

    // Channel contents: whitespace-separated messages; an unknown token is
    // read as a run of one-character messages; '-' is the empty channel.
    static std::vector<std::uint32_t> channel(const Line& l, const LcsModel& lcs, const std::string& text) {
        std::vector<std::uint32_t> out;
        for (const auto& tok : split_ws(text)) {
            if (tok == "-") {
                continue;
            }
            bool found = false;
            for (std::size_t i = 0; i < lcs.messages.size(); ++i) {
                if (lcs.messages[i] == tok) {
                    out.push_back(static_cast<std::uint32_t>(i));
                    found = true;
                }
            }
            if (found) {
                continue;
            }
            for (std::size_t i = 0; i < tok.size();) {
                const std::size_t n = utf8_length(static_cast<unsigned char>(tok[i]));
                out.push_back(lookup(l, lcs.messages, tok.substr(i, n), "message"));
                i += n;
            }
        }
        return out;
    }

    static LcsConfig lcs_config(const Line& l, const LcsModel& lcs) {
        const std::string rest = join(l.words, 1);
        std::vector<std::string> parts;
        std::size_t pos = 0;
        while (true) {
            std::size_t bar = rest.find('|', pos);
            parts.push_back(rest.substr(pos, bar == std::string::npos ? std::string::npos : bar - pos));
            if (bar == std::string::npos) {
                break;
            }
            pos = bar + 1;
        }
        LcsConfig c;
        for (const auto& s : split_ws(parts[0])) {
            std::vector<std::uint32_t> alt;
            std::size_t from = 0;
            while (true) {
                const std::size_t comma = s.find(',', from);
                alt.push_back(lookup(l, lcs.states, s.substr(from, comma == std::string::npos ? comma : comma - from),
                                     "state"));
                if (comma == std::string::npos) {
                    break;
                }
                from = comma + 1;
            }
            c.processes.push_back(alt.front());
            c.alternatives.push_back(std::move(alt));
        }
        for (std::size_t i = 1; i < parts.size(); ++i) {
            c.channels.push_back(channel(l, lcs, parts[i]));
        }
        if (std::all_of(c.alternatives.begin(), c.alternatives.end(), [](const auto& a) { return a.size() == 1; })) {
            c.alternatives.clear();
        }
        return c;
    }

    bool target_expr(const Line& l, ModelFile& m) {
        if (l.words.size() >= 2 && l.words[1] == "expr") {
            if (l.words.size() == 2) {
                fail(l, "empty target expression");
            }
            TargetSpec t;
            t.expr = join(l.words, 2);
            try {
                (void)parse_expr(*t.expr, encoding_alphabet(m.model));
            } catch (const ParseError& e) {
                fail(l, std::string("target expression: ") + e.what());
            }
            if (std::holds_alternative<LcsModel>(m.model)) {
                t.basis = LcsConfig{};
            } else if (std::holds_alternative<PetriNet>(m.model)) {
                t.basis = Marking{};
            } else {
                t.basis = BpConfig{};
            }
            m.query.targets.push_back(std::move(t));
            return true;
        }
        return false;
    }

    void parse_lcs(ModelFile& m) {
        LcsModel lcs;
        bool have_channels = false;
        m.model = lcs;
        for (std::size_t i = 1; i < lines_.size(); ++i) {
            const Line& l = lines_[i];
            const std::string& key = l.words[0];
            if (key == "states") {
                once(l, key);
                lcs.states.assign(l.words.begin() + 1, l.words.end());
            } else if (key == "messages") {
                once(l, key);
                lcs.messages.assign(l.words.begin() + 1, l.words.end());
            } else if (key == "channels") {
                once(l, key);
                if (l.words.size() != 2) {
                    fail(l, "expected 'channels <count>'");
                }
                lcs.channels = number(l, l.words[1]);
                have_channels = true;
            } else if (key == "rule") {
                // rule p -> q recv 1 a | send 2 b | nop
                if (l.words.size() < 5 || l.words[2] != "->") {
                    fail(l, "expected 'rule <src> -> <dst> <action>'");
                }
                LcsRule r;
                r.src = lookup(l, lcs.states, l.words[1], "state");
                r.dst = lookup(l, lcs.states, l.words[3], "state");
                const std::string& act = l.words[4];
                if (act == "nop" && l.words.size() == 5) {
                    r.kind = LcsRule::Kind::Nop;
                } else if ((act == "recv" || act == "send") && l.words.size() == 7) {
                    r.kind = act == "recv" ? LcsRule::Kind::Recv : LcsRule::Kind::Send;
                    const std::uint32_t ch = number(l, l.words[5]);
                    if (ch == 0 || (have_channels && ch > lcs.channels)) {
                        fail(l, "channel " + l.words[5] + " out of range");
                    }
                    r.channel = ch - 1;
                    r.message = lookup(l, lcs.messages, l.words[6], "message");
                } else {
                    fail(l, "expected 'nop', 'recv <channel> <message>' or 'send <channel> <message>'");
                }
                lcs.rules.push_back(r);
            } else if (key == "init") {
                once(l, key);
                m.model = lcs;
                m.query.init = lcs_config(l, lcs);
                check_validity(l, m.model, m.query.init);
            } else if (key == "target") {
                m.model = lcs;
                if (!target_expr(l, m)) {
                    TargetSpec t;
                    t.basis = lcs_config(l, lcs);
                    check_validity(l, m.model, t.basis, true);
                    m.query.targets.push_back(std::move(t));
                }
            } else {
                fail(l, "unknown keyword '" + key + "'");
            }
        }
        m.model = lcs;
        finish(m);
    }

    void parse_petri(ModelFile& m) {
        PetriNet net;
        m.model = net;
        PetriTransition* current = nullptr;
        auto marking = [&](const Line& l) {
            if (l.words.size() % 2 != 1) {
                fail(l, "expected '<place> <count>' pairs");
            }
            Marking mk(net.places.size(), 0);
            std::set<std::uint32_t> given;
            for (std::size_t j = 1; j + 1 < l.words.size(); j += 2) {
                const auto p = lookup(l, net.places, l.words[j], "place");
                if (!given.insert(p).second) {
                    fail(l, "place '" + l.words[j] + "' given twice");
                }
                mk[p] = number(l, l.words[j + 1]);
            }
            return mk;
        };
        for (std::size_t i = 1; i < lines_.size(); ++i) {
            const Line& l = lines_[i];
            const std::string& key = l.words[0];
            if (key == "places") {
                once(l, key);
                net.places.assign(l.words.begin() + 1, l.words.end());
            } else if (key == "transition") {
                if (l.words.size() != 2) {
                    fail(l, "expected 'transition <name>'");
                }
                if (!seen_.contains("places")) {
                    fail(l, "'places' must precede transitions");
                }
                for (const auto& t : net.transitions) {
                    if (t.name == l.words[1]) {
                        fail(l, "duplicate transition '" + l.words[1] + "'");
                    }
                }
                net.transitions.push_back({l.words[1], Marking(net.places.size(), 0), Marking(net.places.size(), 0)});
                current = &net.transitions.back();
            } else if (key == "consume" || key == "produce") {
                if (current == nullptr || l.words.size() != 3) {
                    fail(l, "expected '" + key + " <place> <count>' inside a transition");
                }
                const auto p = lookup(l, net.places, l.words[1], "place");
                auto& vec = key == "consume" ? current->consume : current->produce;
                vec[p] += number(l, l.words[2]);
            } else if (key == "init") {
                once(l, key);
                current = nullptr;
                m.query.init = marking(l);
            } else if (key == "target") {
                current = nullptr;
                m.model = net;
                if (!target_expr(l, m)) {
                    TargetSpec t;
                    t.basis = marking(l);
                    m.query.targets.push_back(std::move(t));
                }
            } else {
                fail(l, "unknown keyword '" + key + "'");
            }
        }
        m.model = net;
        finish(m);
    }

    void parse_broadcast(ModelFile& m) {
        BroadcastProtocol bp;
        m.model = bp;
        auto edges = [&](const Line& l, std::size_t from, BpAction& a) {
            // (send|recv) <src> -> <dst>, repeated
            std::size_t j = from;
            while (j < l.words.size()) {
                if (j + 4 > l.words.size() || l.words[j + 2] != "->" ||
                    (l.words[j] != "send" && l.words[j] != "recv")) {
                    fail(l, "expected 'send <src> -> <dst>' or 'recv <src> -> <dst>'");
                }
                BpEdge e{lookup(l, bp.states, l.words[j + 1], "state"), lookup(l, bp.states, l.words[j + 3], "state")};
                (l.words[j] == "send" ? a.send : a.recv).push_back(e);
                j += 4;
            }
        };
        for (std::size_t i = 1; i < lines_.size(); ++i) {
            const Line& l = lines_[i];
            const std::string& key = l.words[0];
            if (key == "states") {
                once(l, key);
                bp.states.assign(l.words.begin() + 1, l.words.end());
            } else if (key == "local" || key == "rendezvous" || key == "broadcast") {
                if (l.words.size() < 2) {
                    fail(l, "missing action name");
                }
                for (const auto& a : bp.actions) {
                    if (a.name == l.words[1]) {
                        fail(l, "duplicate action '" + l.words[1] + "'");
                    }
                }
                BpAction a;
                a.name = l.words[1];
                if (key == "local") {
                    // local d p -> q
                    if (l.words.size() != 5 || l.words[3] != "->") {
                        fail(l, "expected 'local <name> <src> -> <dst>'");
                    }
                    a.kind = BpAction::Kind::Local;
                    a.send.push_back({lookup(l, bp.states, l.words[2], "state"), lookup(l, bp.states, l.words[4], "state")});
                } else {
                    a.kind = key == "rendezvous" ? BpAction::Kind::Rendezvous : BpAction::Kind::Broadcast;
                    edges(l, 2, a);
                    if (a.send.empty()) {
                        fail(l, "action '" + a.name + "' needs a send edge");
                    }
                    if (a.kind == BpAction::Kind::Rendezvous && a.recv.empty()) {
                        fail(l, "rendezvous '" + a.name + "' needs a recv edge");
                    }
                }
                bp.actions.push_back(std::move(a));
            } else if (key == "init") {
                once(l, key);
                BpConfig c;
                for (std::size_t j = 1; j < l.words.size(); ++j) {
                    c.push_back(lookup(l, bp.states, l.words[j], "state"));
                }
                m.query.init = c;
            } else if (key == "target") {
                m.model = bp;
                if (!target_expr(l, m)) {
                    BpConfig c;
                    for (std::size_t j = 1; j < l.words.size(); ++j) {
                        c.push_back(lookup(l, bp.states, l.words[j], "state"));
                    }
                    TargetSpec t;
                    t.basis = c;
                    m.query.targets.push_back(std::move(t));
                }
            } else {
                fail(l, "unknown keyword '" + key + "'");
            }
        }
        m.model = bp;
        finish(m);
    }

    std::vector<Line> lines_;
    std::set<std::string> seen_;
};

std::string lcs_config_text(const LcsModel& lcs, const LcsConfig& c) {
    std::vector<std::string> procs;
    for (std::size_t i = 0; i < c.processes.size(); ++i) {
        if (c.alternatives.empty()) {
            procs.push_back(lcs.states[c.processes[i]]);
            continue;
        }
        std::string alt;
        for (auto s : c.alternatives[i]) {
            alt += (alt.empty() ? "" : ",") + lcs.states[s];
        }
        procs.push_back(alt);
    }
    std::string out = join(procs);
    for (const auto& ch : c.channels) {
        std::vector<std::string> msgs;
        for (auto x : ch) {
            msgs.push_back(lcs.messages[x]);
        }
        out += " | " + (msgs.empty() ? std::string("-") : join(msgs));
    }
    return out;
}

}  // namespace

ModelFile parse_model(std::string_view text) { return ModelParser(text).parse(); }

ModelFile load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string print_model(const ModelFile& m) {
    std::ostringstream out;
    auto targets = [&](auto&& basis_text) {
        for (const auto& t : m.query.targets) {
            if (t.expr) {
                out << "target expr " << *t.expr << '\n';
            } else {
                out << "target " << basis_text(t.basis) << '\n';
            }
        }
    };
    if (const auto* lcs = std::get_if<LcsModel>(&m.model)) {
        out << "lcs\nstates " << join(lcs->states) << "\nmessages " << join(lcs->messages) << "\nchannels "
            << lcs->channels << '\n';
        for (const auto& r : lcs->rules) {
            out << "rule " << lcs->states[r.src] << " -> " << lcs->states[r.dst];
            switch (r.kind) {
                case LcsRule::Kind::Nop:
                    out << " nop\n";
                    break;
                case LcsRule::Kind::Recv:
                    out << " recv " << r.channel + 1 << ' ' << lcs->messages[r.message] << '\n';
                    break;
                case LcsRule::Kind::Send:
                    out << " send " << r.channel + 1 << ' ' << lcs->messages[r.message] << '\n';
                    break;
            }
        }
        out << "init " << lcs_config_text(*lcs, std::get<LcsConfig>(m.query.init)) << '\n';
        targets([&](const Config& c) { return lcs_config_text(*lcs, std::get<LcsConfig>(c)); });
    } else if (const auto* net = std::get_if<PetriNet>(&m.model)) {
        out << "petri\nplaces " << join(net->places) << '\n';
        for (const auto& t : net->transitions) {
            out << "transition " << t.name << '\n';
            for (std::size_t p = 0; p < net->places.size(); ++p) {
                if (t.consume[p] != 0) {
                    out << "  consume " << net->places[p] << ' ' << t.consume[p] << '\n';
                }
            }
            for (std::size_t p = 0; p < net->places.size(); ++p) {
                if (t.produce[p] != 0) {
                    out << "  produce " << net->places[p] << ' ' << t.produce[p] << '\n';
                }
            }
        }
        auto marking = [&](const Config& c) {
            const auto& mk = std::get<Marking>(c);
            std::string s;
            for (std::size_t p = 0; p < mk.size(); ++p) {
                s += (p ? " " : "") + net->places[p] + " " + std::to_string(mk[p]);
            }
            return s;
        };
        out << "init " << marking(m.query.init) << '\n';
        targets(marking);
    } else {
        const auto& bp = std::get<BroadcastProtocol>(m.model);
        out << "broadcast\nstates " << join(bp.states) << '\n';
        for (const auto& a : bp.actions) {
            switch (a.kind) {
                case BpAction::Kind::Local:
                    out << "local " << a.name << ' ' << bp.states[a.send[0].src] << " -> "
                        << bp.states[a.send[0].dst] << '\n';
                    continue;
                case BpAction::Kind::Rendezvous:
                    out << "rendezvous " << a.name;
                    break;
                case BpAction::Kind::Broadcast:
                    out << "broadcast " << a.name;
                    break;
            }
            for (const auto& e : a.send) {
                out << " send " << bp.states[e.src] << " -> " << bp.states[e.dst];
            }
            for (const auto& e : a.recv) {
                out << " recv " << bp.states[e.src] << " -> " << bp.states[e.dst];
            }
            out << '\n';
        }
        auto config = [&](const Config& c) {
            std::vector<std::string> names;
            for (auto s : std::get<BpConfig>(c)) {
                names.push_back(bp.states[s]);
            }
            return join(names);
        };
        out << "init " << config(m.query.init) << '\n';
        targets(config);
    }
    return out.str();
}

Instance build_instance(const ModelFile& m) {
    Instance inst(encoding_alphabet(m.model));
    for (auto& nt : transition_transducers(m.model)) {
        inst.transition_names.push_back(std::move(nt.name));
        inst.transducers.push_back(std::move(nt.transducer));
    }
    NodeId target = kEmpty;
    for (const auto& t : m.query.targets) {
        const NodeId node = t.expr ? compile_expr(inst.table, parse_expr(*t.expr, inst.table.alphabet()))
                                   : encode_upward(inst.table, m.model, t.basis);
        target = unite(inst.table, target, node);
    }
    inst.target = target;
    inst.initial = encode_initial(inst.table, m.model, m.query.init);
    inst.pad_closure = closure_pad(m.model);
    return inst;
}

}  // namespace wad
