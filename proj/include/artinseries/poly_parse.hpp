/// Text grammar for polynomial input: terms like `3/2*Y^2*Z0 - 1`, `^` for
/// powers, `*` optional between factors, variables `[A-Za-z][A-Za-z0-9_]*`.
#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "artinseries/errors.hpp"
#include "artinseries/polynomial.hpp"

namespace artin {

namespace detail {

struct PolyLexer {
    explicit PolyLexer(const std::string& s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool done() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    char get() {
        skip_ws();
        return s_[pos_++];
    }
    bool at_name_or_number() {
        const char c = peek();
        return std::isalpha(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
    }

    BigInt read_integer() {
        skip_ws();
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            digits += s_[pos_++];
        if (digits.empty()) throw ParseError("expected an integer at '" + rest() + "'");
        return BigInt(digits);
    }

    std::string read_name() {
        skip_ws();
        std::string name;
        if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_])))
            throw ParseError("expected a name at '" + rest() + "'");
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            name += s_[pos_++];
        return name;
    }

    std::string rest() const { return s_.substr(pos_); }

    const std::string& s_;
    std::size_t pos_ = 0;
};

inline int resolve_symbol(const std::string& name, const std::vector<std::string>& vars) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return static_cast<int>(i);
    // case-insensitive fallback so quotient images can be written lowercase
    int hit = -1;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].size() != name.size()) continue;
        bool eq = true;
        for (std::size_t k = 0; k < name.size(); ++k)
            if (std::tolower(static_cast<unsigned char>(vars[i][k])) !=
                std::tolower(static_cast<unsigned char>(name[k]))) {
                eq = false;
                break;
            }
        if (eq) {
            if (hit >= 0) return -1;  // ambiguous
            hit = static_cast<int>(i);
        }
    }
    return hit;
}

}  // namespace detail

/// Parse `text` as a polynomial in the given variables.
template <typename K>
Polynomial<K> parse_polynomial(const std::string& text, const std::vector<std::string>& vars,
                               const FieldContext<K>& field) {
    detail::PolyLexer lex(text);
    const std::size_t n = vars.size();
    std::vector<typename Polynomial<K>::Term> terms;

    bool first = true;
    while (!lex.done()) {
        int sign = 1;
        char c = lex.peek();
        if (c == '+' || c == '-') {
            lex.get();
            sign = (c == '-') ? -1 : 1;
        } else if (!first) {
            throw ParseError("expected '+' or '-' before '" + lex.rest() + "'");
        }
        first = false;

        Rational coeff(sign);
        Monomial mono(n);
        bool saw_factor = false;
        for (;;) {
            if (lex.done()) break;
            c = lex.peek();
            if (c == '*') {
                lex.get();
                continue;
            }
            if (c == '+' || c == '-') break;
            if (std::isdigit(static_cast<unsigned char>(c))) {
                BigInt num = lex.read_integer();
                if (lex.peek() == '/') {
                    lex.get();
                    BigInt den = lex.read_integer();
                    if (den == 0) throw ParseError("zero denominator");
                    coeff *= Rational(num, den);
                } else {
                    coeff *= Rational(num);
                }
                saw_factor = true;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::string name = lex.read_name();
                int idx = detail::resolve_symbol(name, vars);
                if (idx < 0) throw ParseError("unknown variable '" + name + "'");
                int power = 1;
                if (lex.peek() == '^') {
                    lex.get();
                    power = static_cast<int>(lex.read_integer());
                    if (power < 0) throw ParseError("negative exponent");
                }
                mono[static_cast<std::size_t>(idx)] += power;
                saw_factor = true;
                continue;
            }
            throw ParseError(std::string("unexpected character '") + c + "'");
        }
        if (!saw_factor) throw ParseError("empty term in polynomial text");
        terms.emplace_back(std::move(mono), field.from_rational(coeff));
    }
    return Polynomial<K>::from_terms(n, std::move(terms));
}

}  // namespace artin
