#pragma once

#include "group_io.hpp"
#include "stable.hpp"

#include <cctype>
#include <cstring>

namespace wm {

// text syntax for stable functions:
//   Ind(phi0), Ind(phi1)^(3), a[t,c], sInd{phi0:[2,1]; phi1:[1]},
//   products with '*', sums with '+'/'-', rational scalars like 3/2,
//   and 'z' for zeta_N with N the conductor of the group's character table
namespace detail {

class FnParser {
public:
    FnParser(const std::string& text, const LoadedGroup& G) : s_(text), G_(G) {}

    StableFunction parse() {
        StableFunction f = expr();
        skip_ws();
        if (pos_ < s_.size()) fail("trailing input");
        return f;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("stable function parse error at position " +
                                    std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool eat_word(const char* w) {
        skip_ws();
        size_t len = std::strlen(w);
        if (s_.compare(pos_, len, w) == 0) {
            pos_ += len;
            return true;
        }
        return false;
    }

    long long integer() {
        skip_ws();
        bool neg = eat('-');
        skip_ws();
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
            fail("expected integer");
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            v = v * 10 + (s_[pos_++] - '0');
        return neg ? -v : v;
    }

    int phi_index() {
        if (!eat_word("phi")) fail("expected a character name phiK");
        long long idx = integer();
        if (idx < 0 || idx >= static_cast<long long>(G_.chars.irreducibles.size()))
            fail("character row out of range");
        return static_cast<int>(idx);
    }

    std::vector<int> partition_literal() {  // [2,1]
        if (!eat('[')) fail("expected '['");
        std::vector<int> parts;
        if (!eat(']')) {
            do {
                long long p = integer();
                if (p < 1) fail("partition parts must be positive");
                parts.push_back(static_cast<int>(p));
            } while (eat(','));
            if (!eat(']')) fail("expected ']'");
        }
        return parts;
    }

    StableFunction as_sInd(const StableFunction& f) { return to_sInd_basis(G_, f); }

    StableFunction combine_mul(const StableFunction& a, const StableFunction& b) {
        if (a.basis == b.basis || a.is_zero() || b.is_zero()) return a * b;
        return as_sInd(a) * as_sInd(b);
    }

    StableFunction combine_add(const StableFunction& a, const StableFunction& b) {
        if (a.basis == b.basis || a.is_zero() || b.is_zero()) return a + b;
        return as_sInd(a) + as_sInd(b);
    }

    StableFunction expr() {
        StableFunction f = term();
        while (true) {
            skip_ws();
            if (eat('+'))
                f = combine_add(f, term());
            else if (eat('-'))
                f = combine_add(f, term().scaled(CycloNumber(-1)));
            else
                return f;
        }
    }

    StableFunction term() {
        StableFunction f = factor();
        while (eat('*')) f = combine_mul(f, factor());
        return f;
    }

    StableFunction factor() {
        StableFunction f = primary();
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            if (!eat('(')) fail("expected '(' after '^'");
            long long k = integer();
            if (k < 1) fail("power twist exponent must be positive");
            if (!eat(')')) fail("expected ')'");
            f = power_twist(as_sInd(f), static_cast<int>(k));
        }
        return f;
    }

    StableFunction primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        if (eat_word("sInd")) {
            if (!eat('{')) fail("expected '{'");
            MultiPartition lam;
            if (!eat('}')) {
                do {
                    int phi = phi_index();
                    if (!eat(':')) fail("expected ':'");
                    auto parts = partition_literal();
                    auto& dst = lam.parts[phi];
                    dst.insert(dst.end(), parts.begin(), parts.end());
                } while (eat(';'));
                if (!eat('}')) fail("expected '}'");
            }
            lam.normalize();
            return StableFunction::sInd_monomial(lam);
        }
        if (eat_word("Ind")) {
            if (!eat('(')) fail("expected '('");
            int phi = phi_index();
            if (!eat(')')) fail("expected ')'");
            return StableFunction::sInd_monomial(MultiPartition::single(phi, 1));
        }
        if (eat_word("a[")) {
            long long t = integer();
            if (t < 1) fail("a[t,c] needs t >= 1");
            if (!eat(',')) fail("expected ','");
            long long c = integer();
            if (c < 0 || c >= G_.table.num_classes()) fail("conjugacy class out of range");
            if (!eat(']')) fail("expected ']'");
            return StableFunction::a_monomial(
                AMonomial::single(static_cast<int>(t), static_cast<int>(c)));
        }
        if (eat('(')) {
            StableFunction f = expr();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        skip_ws();
        if (s_[pos_] == 'z') {
            ++pos_;
            CycloNumber v = CycloNumber::zeta(std::max(G_.table.exponent(), 1L));
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                long long e = integer();
                if (e < 0) fail("z exponent must be nonnegative");
                v = v.pow(e);
            }
            return StableFunction::constant(v);
        }
        if (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-') {
            long long num = integer();
            long long den = 1;
            if (eat('/')) {
                den = integer();
                if (den == 0) fail("zero denominator");
            }
            return StableFunction::constant(CycloNumber(Rational(num, den)));
        }
        fail("expected a function term");
    }

    std::string s_;
    size_t pos_ = 0;
    const LoadedGroup& G_;
};

}  // namespace detail

inline StableFunction parse_stable_function(const std::string& text, const LoadedGroup& G) {
    return detail::FnParser(text, G).parse();
}

// readable text form (coefficients use the scalar's own notation)
inline std::string stable_to_string(const StableFunction& f) {
    if (f.is_zero()) return "0";
    std::string out;
    auto emit = [&](const std::string& mono, const CycloNumber& c) {
        if (!out.empty()) out += " + ";
        if (!(c == CycloNumber(1)) || mono.empty())
            out += "(" + c.to_string() + ")" + (mono.empty() ? "" : "*");
        out += mono;
    };
    for (const auto& [lam, c] : f.sTerms) {
        std::string mono;
        if (!lam.empty()) {
            mono = "sInd{";
            bool first = true;
            for (const auto& [phi, parts] : lam.parts) {
                if (!first) mono += "; ";
                first = false;
                mono += "phi" + std::to_string(phi) + ":[";
                for (size_t i = 0; i < parts.size(); ++i)
                    mono += (i ? "," : "") + std::to_string(parts[i]);
                mono += "]";
            }
            mono += "}";
        }
        emit(mono, c);
    }
    for (const auto& [m, c] : f.aTerms) {
        std::string mono;
        for (const auto& [tc, e] : m.factors)
            for (int i = 0; i < e; ++i)
                mono += (mono.empty() ? "" : "*") + std::string("a[") +
                        std::to_string(tc.first) + "," + std::to_string(tc.second) + "]";
        emit(mono, c);
    }
    return out;
}

}  // namespace wm
