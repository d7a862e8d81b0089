#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "wad/alphabet.hpp"
#include "wad/error.hpp"
#include "wad/table.hpp"

namespace wad {

/// AST of weakly acyclic expressions r ::= 0 | [Γ]* | [Λ]* a r | r + r.
/// Letter sets are kept sorted and duplicate-free.
struct WaExpression {
    enum class Kind { Empty, Star, Chain, Union };

    Kind kind = Kind::Empty;
    std::vector<Letter> letters;  ///< Γ for Star, Λ for Chain
    Letter letter = 0;            ///< a for Chain
    std::shared_ptr<const WaExpression> left;   ///< rest of a Chain, left operand of a Union
    std::shared_ptr<const WaExpression> right;  ///< right operand of a Union

    static WaExpression empty();
    static WaExpression star(std::vector<Letter> gamma);
    /// Throws SideConditionError when a ∈ Λ.
    static WaExpression chain(std::vector<Letter> lambda, Letter a, WaExpression rest);
    static WaExpression unite(WaExpression l, WaExpression r);

    bool operator==(const WaExpression& other) const;
};

/// The grammar side condition a ∉ Λ is violated.
class SideConditionError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Parses the concrete syntax: terms joined by '+'; a term is '0', '[t …]*'
/// or '[t …]* tok tail' with tail a term or a parenthesized expression.
WaExpression parse_expr(std::string_view text, const Alphabet& alphabet);

std::string to_string(const WaExpression& e, const Alphabet& alphabet);

NodeId compile_expr(DiagramTable& table, const WaExpression& e);

/// Deterministic random grammar-valid expression of nesting depth ≤ depth.
WaExpression random_expr(const Alphabet& alphabet, unsigned depth, std::uint64_t seed);

/// Direct membership test on the AST.
bool expr_accepts(const WaExpression& e, const Word& w);

}  // namespace wad
