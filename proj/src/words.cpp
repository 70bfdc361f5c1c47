#include "schreierlab/words.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace schreierlab {

Presentation::Presentation(GroupKind k, std::vector<std::string> names)
    : kind_(k), names_(std::move(names)) {
    if (names_.empty())
        throw error(errc::malformed_input, "presentation needs at least one generator");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size())
        throw error(errc::malformed_input, "generator names must be distinct");
}

Presentation Presentation::free_group(const std::vector<std::string>& names) {
    return Presentation(GroupKind::FreeGroup, names);
}

Presentation Presentation::free_product_c2(const std::vector<std::string>& names) {
    return Presentation(GroupKind::FreeProductC2, names);
}

Presentation Presentation::c2_star(int n) {
    if (n == 4) return free_product_c2({"A", "B", "C", "D"});
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i + 1));
    return free_product_c2(names);
}

int Presentation::index_of(const std::string& name) const {
    for (int i = 0; i < (int)names_.size(); ++i)
        if (names_[i] == name) return i;
    return -1;
}

std::vector<std::string> Presentation::symmetric_symbols() const {
    std::vector<std::string> out;
    for (const auto& n : names_) {
        out.push_back(n);
        if (kind_ == GroupKind::FreeGroup) out.push_back(n + "^-1");
    }
    return out;
}

Word reduce(const std::vector<Letter>& raw, const Presentation& p) {
    std::vector<Letter> stack;
    for (const Letter& l : raw) {
        if (l.gen < 0 || l.gen >= p.rank())
            throw error(errc::malformed_input,
                        "letter references generator index " + std::to_string(l.gen) +
                            " outside presentation of rank " + std::to_string(p.rank()));
        Letter cur = l;
        if (p.involutive()) {
            if (cur.exponent != 1 && cur.exponent != -1)
                throw error(errc::malformed_input, "letter exponent must be +1 or -1");
            cur.exponent = 1; // order-2 generators: g = g^-1
            if (!stack.empty() && stack.back().gen == cur.gen) {
                stack.pop_back();
                continue;
            }
        } else {
            if (cur.exponent != 1 && cur.exponent != -1)
                throw error(errc::malformed_input, "letter exponent must be +1 or -1");
            if (!stack.empty() && stack.back().gen == cur.gen &&
                stack.back().exponent == -cur.exponent) {
                stack.pop_back();
                continue;
            }
        }
        stack.push_back(cur);
    }
    return Word::from_reduced(std::move(stack));
}

Word::Word(const Presentation& p, std::vector<Letter> raw) { *this = reduce(raw, p); }

Word Word::inverse(const Presentation& p) const {
    std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
    if (!p.involutive())
        for (Letter& l : rev) l.exponent = -l.exponent;
    return Word(p, std::move(rev));
}

Word Word::concat(const Presentation& p, const Word& a, const Word& b) {
    std::vector<Letter> all = a.letters_;
    all.insert(all.end(), b.letters_.begin(), b.letters_.end());
    return Word(p, std::move(all));
}

std::string Word::str(const Presentation& p) const {
    if (letters_.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) out += ' ';
        out += p.name(letters_[i].gen);
        if (letters_[i].exponent == -1) out += "^-1";
    }
    return out;
}

Word Word::parse(const Presentation& p, const std::string& text) {
    std::istringstream in(text);
    std::vector<Letter> raw;
    std::string tok;
    while (in >> tok) {
        if (tok == "e" || tok == "1") continue;
        int exponent = 1;
        auto caret = tok.find('^');
        std::string base = tok;
        if (caret != std::string::npos) {
            base = tok.substr(0, caret);
            std::string e = tok.substr(caret + 1);
            if (e == "-1")
                exponent = -1;
            else if (e == "1" || e == "+1")
                exponent = 1;
            else
                throw error(errc::malformed_input, "only exponents 1 and -1 accepted: " + tok);
        }
        int gen = p.index_of(base);
        if (gen < 0) throw error(errc::malformed_input, "unknown generator \"" + base + "\"");
        raw.push_back({gen, exponent});
    }
    return Word(p, std::move(raw));
}

namespace {

// Lex rank of a letter: generator order, +1 before -1.
int letter_rank(const Letter& l) { return l.gen * 2 + (l.exponent == -1 ? 1 : 0); }

bool may_follow(const Presentation& p, const Letter& prev, const Letter& next) {
    if (p.involutive()) return prev.gen != next.gen;
    return !(prev.gen == next.gen && prev.exponent == -next.exponent);
}

} // namespace

std::vector<Word> enumerate_reduced(const Presentation& p, int max_length) {
    if (max_length < 0) throw error(errc::precondition, "max_length must be >= 0");
    std::vector<Letter> alphabet;
    for (int g = 0; g < p.rank(); ++g) {
        alphabet.push_back({g, 1});
        if (!p.involutive()) alphabet.push_back({g, -1});
    }
    std::sort(alphabet.begin(), alphabet.end(),
              [](const Letter& a, const Letter& b) { return letter_rank(a) < letter_rank(b); });

    std::vector<Word> out;
    out.emplace_back(); // empty word
    std::vector<std::vector<Letter>> layer{{}};
    for (int len = 1; len <= max_length; ++len) {
        std::vector<std::vector<Letter>> next;
        for (const auto& seq : layer) {
            for (const Letter& l : alphabet) {
                if (!seq.empty() && !may_follow(p, seq.back(), l)) continue;
                auto ext = seq;
                ext.push_back(l);
                next.push_back(std::move(ext));
            }
        }
        for (auto& seq : next) out.push_back(Word::from_reduced(seq));
        layer = std::move(next);
    }
    return out;
}

std::uint64_t count_reduced(const Presentation& p, int max_length) {
    std::uint64_t a = p.involutive() ? (std::uint64_t)p.rank() : 2 * (std::uint64_t)p.rank();
    std::uint64_t total = 1, cur = 1;
    for (int k = 1; k <= max_length; ++k) {
        cur = (k == 1) ? a : cur * (a - 1);
        total += cur;
    }
    return total;
}

} // namespace schreierlab
