#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wad/models.hpp"
#include "wad/table.hpp"
#include "wad/transducer.hpp"

namespace wad {

/// A parsed model file: the system and its safety query.
struct ModelFile {
    SystemModel model;
    SafetyQuery query;

    bool operator==(const ModelFile&) const = default;
};

/// Parses the line-oriented format. Lines whose first non-blank character
/// is '#' are comments. Throws ParseError with the offending line number.
ModelFile parse_model(std::string_view text);
ModelFile load_model(const std::string& path);

/// Canonical text form; parse_model(print_model(m)) == m.
std::string print_model(const ModelFile& m);

/// Everything the checker needs, in one table.
struct Instance {
    explicit Instance(Alphabet alphabet) : table(std::move(alphabet)) {}

    DiagramTable table;
    std::vector<std::string> transition_names;
    std::vector<TransducerNfa> transducers;
    NodeId target = kEmpty;
    NodeId initial = kEmpty;
    std::optional<Letter> pad_closure;
};

/// Builds the encoding: the union of all targets and the padded initial set.
Instance build_instance(const ModelFile& m);

}  // namespace wad
