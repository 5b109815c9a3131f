#include "chilab/word.hpp"

#include <cctype>
#include <sstream>

#include "chilab/errors.hpp"

namespace chilab {

namespace {

std::vector<WordLetter> reduce(const std::vector<WordLetter>& in) {
    std::vector<WordLetter> out;
    for (const auto& l : in) {
        if (l.exponent == 0) continue;
        if (!out.empty() && out.back().index == l.index) {
            out.back().exponent += l.exponent;
            if (out.back().exponent == 0) out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return out;
}

struct Parser {
    const std::string& text;
    size_t pos = 0;
    u32 max_arity;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool at_end() {
        skip_ws();
        return pos == text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(msg, pos); }

    i64 parse_int() {
        skip_ws();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected integer");
        i64 v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            if (v > 1'000'000) fail("exponent too large");
            ++pos;
        }
        if (v == 0) fail("exponent must be nonzero");
        return neg ? -v : v;
    }

    std::vector<WordLetter> parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("expected atom");
        char c = text[pos];
        if (c == 'x' || c == 'y' || c == 'z') {
            ++pos;
            u32 idx = c == 'x' ? 1 : (c == 'y' ? 2 : 3);
            if (idx > max_arity) throw ArityExceeded("letter exceeds allowed arity");
            return {WordLetter{idx, 1}};
        }
        if (c == 'g') {
            ++pos;
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail("expected digit after 'g'");
            u32 idx = u32(text[pos] - '0');
            ++pos;
            if (idx < 1 || idx > 9) fail("letter index must be in 1..9");
            if (idx > max_arity) throw ArityExceeded("letter exceeds allowed arity");
            return {WordLetter{idx, 1}};
        }
        if (c == '(') {
            ++pos;
            auto inner = parse_word();
            if (peek() != ')') fail("expected ')'");
            ++pos;
            return inner;
        }
        if (c == '[') {
            ++pos;
            auto lhs = parse_word();
            if (peek() != ',') fail("expected ',' in commutator");
            ++pos;
            auto rhs = parse_word();
            if (peek() != ']') fail("expected ']'");
            ++pos;
            // [w1, w2] = w1 w2 w1^-1 w2^-1
            std::vector<WordLetter> out = lhs;
            out.insert(out.end(), rhs.begin(), rhs.end());
            for (auto it = lhs.rbegin(); it != lhs.rend(); ++it) out.push_back({it->index, -it->exponent});
            for (auto it = rhs.rbegin(); it != rhs.rend(); ++it) out.push_back({it->index, -it->exponent});
            return reduce(out);
        }
        fail("expected letter, '(' or '['");
    }

    std::vector<WordLetter> parse_term() {
        auto atom = parse_atom();
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            i64 e = parse_int();
            std::vector<WordLetter> out;
            std::vector<WordLetter> block = atom;
            if (e < 0) {
                std::vector<WordLetter> inv;
                for (auto it = block.rbegin(); it != block.rend(); ++it) inv.push_back({it->index, -it->exponent});
                block = inv;
                e = -e;
            }
            for (i64 k = 0; k < e; ++k) out.insert(out.end(), block.begin(), block.end());
            return reduce(out);
        }
        return atom;
    }

    std::vector<WordLetter> parse_word() {
        std::vector<WordLetter> out;
        while (true) {
            skip_ws();
            if (pos >= text.size()) break;
            char c = text[pos];
            if (c == ')' || c == ']' || c == ',') break;
            if (c == '*') {
                ++pos;
                continue;
            }
            auto t = parse_term();
            out.insert(out.end(), t.begin(), t.end());
        }
        return reduce(out);
    }
};

}  // namespace

Word Word::parse(const std::string& text, u32 max_arity) {
    Parser p{text, 0, max_arity};
    auto letters = p.parse_word();
    if (!p.at_end()) throw SyntaxError("unexpected trailing input", p.pos);
    return from_letters(letters);
}

Word Word::from_letters(const std::vector<WordLetter>& letters) {
    Word w;
    w.letters_ = reduce(letters);
    for (const auto& l : w.letters_) {
        if (l.index < 1 || l.index > 9) throw ArityExceeded("letter index must be in 1..9");
        w.arity_ = std::max(w.arity_, l.index);
    }
    return w;
}

u64 Word::total_length() const {
    u64 n = 0;
    for (const auto& l : letters_) n += u64(l.exponent < 0 ? -l.exponent : l.exponent);
    return n;
}

Word Word::inverse() const {
    std::vector<WordLetter> out;
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back({it->index, -it->exponent});
    return from_letters(out);
}

Word Word::operator*(const Word& o) const {
    std::vector<WordLetter> out = letters_;
    out.insert(out.end(), o.letters_.begin(), o.letters_.end());
    return from_letters(out);
}

Word Word::pow(i64 e) const {
    Word base = e < 0 ? inverse() : *this;
    u64 k = u64(e < 0 ? -e : e);
    std::vector<WordLetter> out;
    for (u64 i = 0; i < k; ++i) out.insert(out.end(), base.letters_.begin(), base.letters_.end());
    return from_letters(out);
}

std::string Word::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& l : letters_) {
        if (!first) os << "*";
        if (l.index == 1)
            os << "x";
        else if (l.index == 2)
            os << "y";
        else if (l.index == 3)
            os << "z";
        else
            os << "g" << l.index;
        if (l.exponent != 1) os << "^" << l.exponent;
        first = false;
    }
    return os.str();
}

}  // namespace chilab
