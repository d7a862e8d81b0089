#include "wad/expr.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "wad/error.hpp"

namespace wad {

namespace {

std::vector<Letter> normalized(std::vector<Letter> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool contains(const std::vector<Letter>& set, Letter a) {
    return std::binary_search(set.begin(), set.end(), a);
}

struct Token {
    enum class Kind { Open, Close, Star, Plus, LParen, RParen, Word, End };
    Kind kind;
    std::string text;
    std::size_t column;
};

bool is_punct(char c) {
    return c == '[' || c == ']' || c == '*' || c == '+' || c == '(' || c == ')';
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        const std::size_t column = i + 1;
        if (is_punct(c)) {
            Token::Kind k = c == '[' ? Token::Kind::Open
                          : c == ']' ? Token::Kind::Close
                          : c == '*' ? Token::Kind::Star
                          : c == '+' ? Token::Kind::Plus
                          : c == '(' ? Token::Kind::LParen
                                     : Token::Kind::RParen;
            out.push_back({k, std::string(1, c), column});
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && !is_punct(text[j]) && text[j] != ' ' && text[j] != '\t' && text[j] != '\r' &&
               text[j] != '\n') {
            ++j;
        }
        out.push_back({Token::Kind::Word, std::string(text.substr(i, j - i)), column});
        i = j;
    }
    out.push_back({Token::Kind::End, "", text.size() + 1});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, const Alphabet& alphabet) : tokens_(tokenize(text)), alphabet_(alphabet) {}

    WaExpression parse() {
        WaExpression e = expr();
        if (peek().kind != Token::Kind::End) {
            fail("unexpected '" + peek().text + "'");
        }
        return e;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, peek().column); }

    void expect(Token::Kind k, const char* what) {
        if (peek().kind != k) {
            fail(std::string("expected ") + what + (peek().kind == Token::Kind::End ? " at end of input"
                                                                                     : ", found '" + peek().text + "'"));
        }
        ++pos_;
    }

    Letter letter(const Token& t) const {
        auto l = alphabet_.find(t.text);
        if (!l) {
            throw ParseError("unknown letter '" + t.text + "'", 1, t.column);
        }
        return *l;
    }

    WaExpression expr() {
        WaExpression e = term();
        while (peek().kind == Token::Kind::Plus) {
            ++pos_;
            e = WaExpression::unite(std::move(e), term());
        }
        return e;
    }

    WaExpression term() {
        if (peek().kind == Token::Kind::Word && peek().text == "0") {
            ++pos_;
            return WaExpression::empty();
        }
        expect(Token::Kind::Open, "'0' or '['");
        std::vector<Letter> set;
        while (peek().kind == Token::Kind::Word) {
            set.push_back(letter(take()));
        }
        expect(Token::Kind::Close, "a letter or ']'");
        expect(Token::Kind::Star, "'*' after ']'");
        if (peek().kind != Token::Kind::Word) {
            return WaExpression::star(std::move(set));
        }
        const Token& at = take();
        const Letter a = letter(at);
        set = normalized(std::move(set));
        if (contains(set, a)) {
            throw SideConditionError("letter '" + at.text + "' occurs in the preceding starred set", 1, at.column);
        }
        WaExpression rest;
        if (peek().kind == Token::Kind::LParen) {
            ++pos_;
            rest = expr();
            expect(Token::Kind::RParen, "')'");
        } else {
            rest = term();
        }
        return WaExpression::chain(std::move(set), a, std::move(rest));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    const Alphabet& alphabet_;
};

void print(const WaExpression& e, const Alphabet& alphabet, std::string& out) {
    auto set = [&](const std::vector<Letter>& letters) {
        out += '[';
        for (std::size_t i = 0; i < letters.size(); ++i) {
            if (i > 0) {
                out += ' ';
            }
            out += alphabet.token(letters[i]);
        }
        out += "]*";
    };
    switch (e.kind) {
        case WaExpression::Kind::Empty:
            out += '0';
            break;
        case WaExpression::Kind::Star:
            set(e.letters);
            break;
        case WaExpression::Kind::Chain:
            set(e.letters);
            out += ' ';
            out += alphabet.token(e.letter);
            out += ' ';
            if (e.left->kind == WaExpression::Kind::Union) {
                out += '(';
                print(*e.left, alphabet, out);
                out += ')';
            } else {
                print(*e.left, alphabet, out);
            }
            break;
        case WaExpression::Kind::Union:
            print(*e.left, alphabet, out);
            out += " + ";
            print(*e.right, alphabet, out);
            break;
    }
}

std::vector<Letter> random_subset(std::mt19937_64& rng, std::size_t m) {
    std::vector<Letter> out;
    for (Letter a = 0; a < m; ++a) {
        if (rng() % 2 == 0) {
            out.push_back(a);
        }
    }
    return out;
}

WaExpression random_rec(std::mt19937_64& rng, std::size_t m, unsigned depth) {
    if (depth == 0) {
        if (rng() % 4 == 0) {
            return WaExpression::empty();
        }
        return WaExpression::star(random_subset(rng, m));
    }
    switch (rng() % 8) {
        case 0:
            return WaExpression::empty();
        case 1:
            return WaExpression::star(random_subset(rng, m));
        case 2:
        case 3:
        case 4: {
            const Letter a = static_cast<Letter>(rng() % m);
            std::vector<Letter> lambda = random_subset(rng, m);
            std::erase(lambda, a);
            return WaExpression::chain(std::move(lambda), a, random_rec(rng, m, depth - 1));
        }
        default: {
            WaExpression l = random_rec(rng, m, depth - 1);
            return WaExpression::unite(std::move(l), random_rec(rng, m, depth - 1));
        }
    }
}

bool accepts_from(const WaExpression& e, const Word& w, std::size_t i) {
    switch (e.kind) {
        case WaExpression::Kind::Empty:
            return false;
        case WaExpression::Kind::Star:
            return std::all_of(w.begin() + static_cast<std::ptrdiff_t>(i), w.end(),
                               [&](Letter a) { return contains(e.letters, a); });
        case WaExpression::Kind::Chain:
            while (i < w.size() && contains(e.letters, w[i])) {
                ++i;
            }
            return i < w.size() && w[i] == e.letter && accepts_from(*e.left, w, i + 1);
        case WaExpression::Kind::Union:
            return accepts_from(*e.left, w, i) || accepts_from(*e.right, w, i);
    }
    return false;
}

}  // namespace

WaExpression WaExpression::empty() { return {}; }

WaExpression WaExpression::star(std::vector<Letter> gamma) {
    WaExpression e;
    e.kind = Kind::Star;
    e.letters = normalized(std::move(gamma));
    return e;
}

WaExpression WaExpression::chain(std::vector<Letter> lambda, Letter a, WaExpression rest) {
    WaExpression e;
    e.kind = Kind::Chain;
    e.letters = normalized(std::move(lambda));
    if (contains(e.letters, a)) {
        throw SideConditionError("chain letter occurs in its starred set", 1, 0);
    }
    e.letter = a;
    e.left = std::make_shared<const WaExpression>(std::move(rest));
    return e;
}

WaExpression WaExpression::unite(WaExpression l, WaExpression r) {
    WaExpression e;
    e.kind = Kind::Union;
    e.left = std::make_shared<const WaExpression>(std::move(l));
    e.right = std::make_shared<const WaExpression>(std::move(r));
    return e;
}

bool WaExpression::operator==(const WaExpression& o) const {
    if (kind != o.kind || letters != o.letters) {
        return false;
    }
    switch (kind) {
        case Kind::Empty:
        case Kind::Star:
            return true;
        case Kind::Chain:
            return letter == o.letter && *left == *o.left;
        case Kind::Union:
            return *left == *o.left && *right == *o.right;
    }
    return false;
}

WaExpression parse_expr(std::string_view text, const Alphabet& alphabet) {
    return Parser(text, alphabet).parse();
}

std::string to_string(const WaExpression& e, const Alphabet& alphabet) {
    std::string out;
    print(e, alphabet, out);
    return out;
}

namespace {

using Position = const WaExpression*;

// Builds the node of a set of Star/Chain positions, one node per residual.
class Compiler {
public:
    explicit Compiler(DiagramTable& table) : table_(table), m_(table.letters()) {}

    void add(Position e, std::vector<Position>& out) const {
        switch (e->kind) {
            case WaExpression::Kind::Empty:
                return;
            case WaExpression::Kind::Union:
                add(e->left.get(), out);
                add(e->right.get(), out);
                return;
            case WaExpression::Kind::Chain:
                check(e->letter);
                [[fallthrough]];
            case WaExpression::Kind::Star:
                for (Letter a : e->letters) {
                    check(a);
                }
                out.push_back(e);
                return;
        }
    }

    NodeId build(std::vector<Position> set) {
        std::sort(set.begin(), set.end());
        set.erase(std::unique(set.begin(), set.end()), set.end());
        if (set.empty()) {
            return kEmpty;
        }
        if (auto it = memo_.find(set); it != memo_.end()) {
            return it->second;
        }
        SuccessorTuple s(m_, kEmpty);
        bool flag = false;
        for (Position e : set) {
            flag = flag || e->kind == WaExpression::Kind::Star;
        }
        for (Letter a = 0; a < m_; ++a) {
            std::vector<Position> next;
            for (Position e : set) {
                if (contains(e->letters, a)) {
                    next.push_back(e);
                } else if (e->kind == WaExpression::Kind::Chain && e->letter == a) {
                    add(e->left.get(), next);
                }
            }
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            s[a] = next == set ? kSelf : build(std::move(next));
        }
        const NodeId q = table_.make(s, flag);
        memo_.emplace(std::move(set), q);
        return q;
    }

private:
    void check(Letter a) const {
        if (a >= m_) {
            throw InputError("expression letter outside the table alphabet");
        }
    }

    DiagramTable& table_;
    std::size_t m_;
    std::map<std::vector<Position>, NodeId> memo_;
};

}  // namespace

NodeId compile_expr(DiagramTable& table, const WaExpression& e) {
    Compiler c(table);
    std::vector<Position> start;
    c.add(&e, start);
    return c.build(std::move(start));
}

WaExpression random_expr(const Alphabet& alphabet, unsigned depth, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return random_rec(rng, alphabet.size(), depth);
}

bool expr_accepts(const WaExpression& e, const Word& w) { return accepts_from(e, w, 0); }

}  // namespace wad
