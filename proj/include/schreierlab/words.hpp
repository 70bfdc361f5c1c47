#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "schreierlab/errors.hpp"

namespace schreierlab {

enum class GroupKind { FreeGroup, FreeProductC2 };

// One of the two group families used here: F_rank = <g_1,...,g_rank> free, or
// the n-fold free product of C2 where every generator has order 2.
class Presentation {
public:
    static Presentation free_group(const std::vector<std::string>& names);
    static Presentation free_product_c2(const std::vector<std::string>& names);

    // The shipped defaults: F2 = <s,t> and C2*C2*C2*C2 = <A,B,C,D>.
    static Presentation f2() { return free_group({"s", "t"}); }
    static Presentation c2_star(int n);

    GroupKind kind() const { return kind_; }
    int rank() const { return (int)names_.size(); }
    const std::vector<std::string>& generator_names() const { return names_; }
    const std::string& name(int gen) const { return names_.at(gen); }
    int index_of(const std::string& name) const; // -1 if absent
    bool involutive() const { return kind_ == GroupKind::FreeProductC2; }

    // Symbols of the symmetric generating set in enumeration order:
    // FreeGroup: g1, g1^-1, g2, g2^-1, ...   FreeProductC2: g1, g2, ...
    std::vector<std::string> symmetric_symbols() const;

    bool operator==(const Presentation& o) const {
        return kind_ == o.kind_ && names_ == o.names_;
    }

private:
    Presentation(GroupKind k, std::vector<std::string> names);
    GroupKind kind_;
    std::vector<std::string> names_;
};

struct Letter {
    int gen;      // index into the presentation's generator names
    int exponent; // +1 or -1; always +1 for FreeProductC2

    bool operator==(const Letter& o) const { return gen == o.gen && exponent == o.exponent; }
};

// A reduced word. Constructors normalize, so every Word in flight is reduced.
class Word {
public:
    Word() = default; // empty word over an unspecified presentation is fine as identity
    Word(const Presentation& p, std::vector<Letter> raw);

    const std::vector<Letter>& letters() const { return letters_; }
    std::size_t length() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }

    Word inverse(const Presentation& p) const;
    static Word concat(const Presentation& p, const Word& a, const Word& b);

    std::string str(const Presentation& p) const;        // "s t^-1 s", "A B C"
    static Word parse(const Presentation& p, const std::string& text);

    bool operator==(const Word& o) const { return letters_ == o.letters_; }
    bool operator!=(const Word& o) const { return !(*this == o); }

private:
    friend Word reduce(const std::vector<Letter>&, const Presentation&);
    friend std::vector<Word> enumerate_reduced(const Presentation&, int);
    static Word from_reduced(std::vector<Letter> letters) {
        Word w;
        w.letters_ = std::move(letters);
        return w;
    }

    std::vector<Letter> letters_;
};

// Free reduction: cancel (g,+1)(g,-1) pairs in a free group, adjacent equal
// letters in a C2 free product. Confluent, so a single stack pass suffices.
Word reduce(const std::vector<Letter>& raw, const Presentation& p);

// All reduced words of length <= max_length, sorted by (length, lex); the
// empty word comes first. Lex order of letters follows the generator-name
// sequence, with exponent +1 before -1.
std::vector<Word> enumerate_reduced(const Presentation& p, int max_length);

// 1 + sum_{k=1..L} 2r·(2r-1)^{k-1} for free groups of rank r (with 2r -> n,
// 2r-1 -> n-1 for C2*...*C2 on n generators).
std::uint64_t count_reduced(const Presentation& p, int max_length);

} // namespace schreierlab
