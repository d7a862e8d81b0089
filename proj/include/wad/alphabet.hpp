#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wad {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

/// Ordered set of distinct letter tokens. Letters are referred to by their
/// position in declaration order.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> tokens);

    /// Alphabet of pairs over `base`; pair (i, j) sits at index i * m + j and
    /// is spelled "(a,b)".
    static Alphabet product(const Alphabet& base);

    std::size_t size() const noexcept { return tokens_.size(); }
    const std::string& token(Letter l) const { return tokens_.at(l); }
    const std::vector<std::string>& tokens() const noexcept { return tokens_; }

    std::optional<Letter> find(std::string_view token) const;
    /// Like find() but throws InputError for unknown tokens.
    Letter index(std::string_view token) const;

    /// Parses whitespace-separated tokens into a word.
    Word parse_word(std::string_view text) const;
    Word parse_word(const std::vector<std::string>& tokens) const;
    /// Space-separated rendering; the empty word renders as "ε".
    std::string render(const Word& w) const;
    /// Compact rendering: tokens concatenated when every token is one
    /// character, joined by '.' otherwise. Never contains a space.
    std::string render_compact(const Word& w) const;

    bool operator==(const Alphabet& other) const { return tokens_ == other.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, Letter> index_;
};

inline Letter pair_letter(Letter a, Letter b, std::size_t base_size) {
    return static_cast<Letter>(a * base_size + b);
}

}  // namespace wad
