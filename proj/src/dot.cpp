#include "wad/dot.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace wad {

std::string node_name(NodeId q) {
    if (q == kEmpty) {
        return "q∅";
    }
    if (q == kUniversal) {
        return "q_all";
    }
    return "q" + std::to_string(q.value);
}

namespace {

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string to_dot(const DiagramTable& table, std::span<const NodeId> roots) {
    std::set<NodeId> nodes;
    for (NodeId r : roots) {
        for (NodeId x : table.reachable(r)) {
            nodes.insert(x);
        }
    }
    const Alphabet& alphabet = table.alphabet();
    std::string out = "digraph wad {\n  rankdir=LR;\n";
    for (NodeId x : nodes) {
        out += "  " + quoted(node_name(x)) + " [shape=" + (table.flag(x) ? "doublecircle" : "circle") + "];\n";
    }
    for (NodeId x : nodes) {
        std::map<NodeId, std::vector<Letter>> groups;
        for (Letter a = 0; a < table.letters(); ++a) {
            groups[table.successor(x, a)].push_back(a);
        }
        for (const auto& [to, letters] : groups) {
            std::string label;
            if (letters.size() == table.letters()) {
                label = "Σ";
            } else {
                for (std::size_t i = 0; i < letters.size(); ++i) {
                    label += (i ? ", " : "") + alphabet.token(letters[i]);
                }
            }
            out += "  " + quoted(node_name(x)) + " -> " + quoted(node_name(to)) + " [label=" + quoted(label) + "];\n";
        }
    }
    out += "}\n";
    return out;
}

}  // namespace wad
