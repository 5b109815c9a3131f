#pragma once

#include <string>
#include <vector>

#include "chilab/field.hpp"

namespace chilab {

// A letter with its (nonzero) exponent; letter indices are 1-based.
struct WordLetter {
    u32 index;
    i64 exponent;
    bool operator==(const WordLetter&) const = default;
};

// Freely reduced word in a free group of rank <= 9. Letters 1..3 print as
// x, y, z; higher letters as g4..g9 (g1..g3 parse as x, y, z).
class Word {
public:
    Word() = default;

    // Grammar: word := term {("*"|e) term}; term := atom ["^" int];
    // atom := letter | "(" word ")" | "[" word "," word "]".
    // Whitespace is insignificant; empty input is the empty word.
    static Word parse(const std::string& text, u32 max_arity = 9);
    static Word from_letters(const std::vector<WordLetter>& letters);

    u32 arity() const { return arity_; }
    const std::vector<WordLetter>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    u64 total_length() const;

    Word inverse() const;
    Word operator*(const Word& o) const;
    Word pow(i64 e) const;
    bool operator==(const Word& o) const { return letters_ == o.letters_; }

    std::string str() const;

private:
    u32 arity_ = 0;
    std::vector<WordLetter> letters_;
};

}  // namespace chilab
