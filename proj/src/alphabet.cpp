#include "wad/alphabet.hpp"

#include <sstream>

#include "wad/error.hpp"

namespace wad {

namespace {

std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s) {
        if ((c & 0xC0) != 0x80) {
            ++n;
        }
    }
    return n;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) {
        throw InputError("alphabet must contain at least one letter");
    }
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (tokens_[i].empty()) {
            throw InputError("empty letter token");
        }
        auto [it, inserted] = index_.emplace(tokens_[i], static_cast<Letter>(i));
        if (!inserted) {
            throw InputError("duplicate letter '" + tokens_[i] + "'");
        }
    }
}

Alphabet Alphabet::product(const Alphabet& base) {
    std::vector<std::string> pairs;
    pairs.reserve(base.size() * base.size());
    for (const auto& a : base.tokens()) {
        for (const auto& b : base.tokens()) {
            pairs.push_back("(" + a + "," + b + ")");
        }
    }
    return Alphabet(std::move(pairs));
}

std::optional<Letter> Alphabet::find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

Letter Alphabet::index(std::string_view token) const {
    if (auto l = find(token)) {
        return *l;
    }
    throw InputError("unknown letter '" + std::string(token) + "'");
}

Word Alphabet::parse_word(std::string_view text) const {
    std::istringstream in{std::string(text)};
    std::vector<std::string> toks;
    for (std::string t; in >> t;) {
        toks.push_back(t);
    }
    return parse_word(toks);
}

Word Alphabet::parse_word(const std::vector<std::string>& tokens) const {
    Word w;
    w.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (t == "ε") {
            continue;
        }
        w.push_back(index(t));
    }
    return w;
}

std::string Alphabet::render(const Word& w) const {
    if (w.empty()) {
        return "ε";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i != 0) {
            out += ' ';
        }
        out += token(w[i]);
    }
    return out;
}

std::string Alphabet::render_compact(const Word& w) const {
    if (w.empty()) {
        return "ε";
    }
    bool single = true;
    for (Letter l : w) {
        single = single && utf8_length(token(l)) == 1;
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!single && i > 0) {
            out += '.';
        }
        out += token(w[i]);
    }
    return out;
}

}  // namespace wad
