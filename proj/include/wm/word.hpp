#pragma once

#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wm {

// freely reduced word in F_r; letters in {±1, ..., ±r}
struct Word {
    std::vector<int> letters;
    int rank = 0;

    int length() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }

    Word inverse() const {
        Word r;
        r.rank = rank;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back(-*it);
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (int l : letters) {
            char c = static_cast<char>('a' + std::abs(l) - 1);
            s += l > 0 ? c : static_cast<char>(std::toupper(c));
        }
        return s.empty() ? "1" : s;
    }

    friend bool operator==(const Word& a, const Word& b) {
        return a.rank == b.rank && a.letters == b.letters;
    }
};

inline std::vector<int> free_reduce(const std::vector<int>& in) {
    std::vector<int> out;
    for (int l : in) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

inline Word make_word(std::vector<int> letters, int rank) {
    Word w;
    w.rank = rank;
    w.letters = free_reduce(letters);
    for (int l : w.letters)
        if (l == 0 || std::abs(l) > rank) throw std::invalid_argument("word: letter out of rank");
    return w;
}

namespace detail {

struct WordParser {
    const std::string& text;
    size_t pos = 0;
    int rank;

    WordParser(const std::string& t, int r) : text(t), rank(r) {}

    [[noreturn]] void fail(const std::string& msg) {
        throw std::invalid_argument("word parse error at position " + std::to_string(pos) + ": " +
                                    msg);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool peek_is(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    std::vector<int> parse_expr() {
        std::vector<int> out;
        while (true) {
            skip_ws();
            if (pos >= text.size()) break;
            char c = text[pos];
            if (c == ')' || c == ',' || c == ']') break;
            auto factor = parse_factor();
            out.insert(out.end(), factor.begin(), factor.end());
        }
        return out;
    }

    std::vector<int> parse_factor() {
        std::vector<int> atom = parse_atom();
        skip_ws();
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            long e = parse_int();
            std::vector<int> out;
            std::vector<int> base = atom;
            if (e < 0) {
                std::vector<int> inv;
                for (auto it = base.rbegin(); it != base.rend(); ++it) inv.push_back(-*it);
                base = inv;
                e = -e;
            }
            for (long i = 0; i < e; ++i) out.insert(out.end(), base.begin(), base.end());
            return out;
        }
        return atom;
    }

    std::vector<int> parse_atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of input");
        char c = text[pos];
        if (c == '(') {
            ++pos;
            auto e = parse_expr();
            if (!peek_is(')')) fail("expected ')'");
            ++pos;
            return e;
        }
        if (c == '[') {
            ++pos;
            auto x = parse_expr();
            if (!peek_is(',')) fail("expected ',' in commutator");
            ++pos;
            auto y = parse_expr();
            if (!peek_is(']')) fail("expected ']'");
            ++pos;
            // [x, y] = x y x^-1 y^-1
            std::vector<int> out = x;
            out.insert(out.end(), y.begin(), y.end());
            for (auto it = x.rbegin(); it != x.rend(); ++it) out.push_back(-*it);
            for (auto it = y.rbegin(); it != y.rend(); ++it) out.push_back(-*it);
            return out;
        }
        if (c >= 'a' && c <= 'z') {
            ++pos;
            int l = c - 'a' + 1;
            if (l > rank) fail("letter out of rank");
            return {l};
        }
        if (c >= 'A' && c <= 'Z') {
            ++pos;
            int l = c - 'A' + 1;
            if (l > rank) fail("letter out of rank");
            return {-l};
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    long parse_int() {
        skip_ws();
        bool neg = false;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
            neg = text[pos] == '-';
            ++pos;
        }
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
            fail("expected integer");
        long v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        return neg ? -v : v;
    }
};

}  // namespace detail

inline Word parse_word(const std::string& text, int rank) {
    detail::WordParser p(text, rank);
    auto letters = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return make_word(std::move(letters), rank);
}

// w = conjugator * core * conjugator^-1 with core cyclically reduced
inline std::pair<Word, Word> cyclic_reduce(const Word& w) {
    std::vector<int> core = w.letters;
    std::vector<int> conj;
    while (core.size() >= 2 && core.front() == -core.back()) {
        conj.push_back(core.front());
        core.erase(core.begin());
        core.pop_back();
    }
    Word cw, gw;
    cw.rank = gw.rank = w.rank;
    cw.letters = std::move(core);
    gw.letters = std::move(conj);
    return {cw, gw};
}

inline bool is_cyclically_reduced(const Word& w) {
    return w.length() < 2 || w.letters.front() != -w.letters.back();
}

// maximal k with w = u^k; w must be cyclically reduced and nonempty
inline std::pair<Word, int> power_decompose(const Word& w) {
    if (w.empty()) throw std::invalid_argument("power_decompose: empty word");
    int L = w.length();
    for (int d = 1; d <= L; ++d) {
        if (L % d != 0) continue;
        bool periodic = true;
        for (int i = d; i < L && periodic; ++i) periodic = w.letters[i] == w.letters[i - d];
        if (periodic) {
            Word u;
            u.rank = w.rank;
            u.letters.assign(w.letters.begin(), w.letters.begin() + d);
            return {u, L / d};
        }
    }
    return {w, 1};
}

inline std::vector<long> abelian_counts(const Word& w) {
    std::vector<long> nu(w.rank, 0);
    for (int l : w.letters) nu[std::abs(l) - 1] += l > 0 ? 1 : -1;
    return nu;
}

}  // namespace wm
