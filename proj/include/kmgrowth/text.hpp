#pragma once

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kmgrowth/pbw.hpp"

namespace kmgrowth {

class ParseError : public std::invalid_argument {
public:
    ParseError(std::size_t pos, const std::string& expected, std::string_view input)
        : std::invalid_argument("parse error at position " + std::to_string(pos) + ": expected " + expected + " in '" +
                                std::string(input) + "'"),
          position(pos) {}
    std::size_t position;
};

inline std::string format_letter(const Letter& l) {
    if (l.is_d()) return "d";
    return "b" + std::to_string(l.idx + 1) + "@t^" + std::to_string(l.exp);
}

inline std::string format_monomial(const Monomial& m) {
    if (m.empty()) return "1";
    std::string s;
    for (const Letter& l : m) {
        if (!s.empty()) s += "*";
        s += format_letter(l);
    }
    return s;
}

inline std::string format_term(const Monomial& m, const Scalar& c) {
    if (m.empty()) return c.str();
    return c.str() + "*" + format_monomial(m);
}

// Terms in descending order under <, joined by " + ".
inline std::string format_element(const Element& e) {
    if (e.is_zero()) return "0";
    std::string s;
    for (const auto& [m, c] : sorted_terms(e)) {
        if (!s.empty()) s += " + ";
        s += format_term(m, c);
    }
    return s;
}

// A parsed term: a coefficient times a word of letters (not necessarily in normal order).
struct WordTerm {
    Scalar coef;
    Monomial word;
};

class ElementParser {
public:
    explicit ElementParser(std::string_view text) : s_(text) {}

    std::vector<WordTerm> parse_sum() {
        std::vector<WordTerm> out;
        skip();
        out.push_back(term());
        skip();
        while (p_ < s_.size()) {
            if (s_[p_] != '+') throw ParseError(p_, "'+' or end of input", s_);
            ++p_;
            skip();
            out.push_back(term());
            skip();
        }
        return out;
    }

    Letter parse_single_letter() {
        skip();
        Letter l = letter();
        skip();
        if (p_ != s_.size()) throw ParseError(p_, "end of input", s_);
        return l;
    }

private:
    void skip() {
        while (p_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[p_]))) ++p_;
    }

    bool at_letter() const { return p_ < s_.size() && (s_[p_] == 'b' || s_[p_] == 'd'); }

    WordTerm term() {
        WordTerm t{Scalar(1), {}};
        if (at_letter()) {
            t.word.push_back(letter());
        } else {
            Scalar c;
            std::size_t n = Scalar::parse_prefix(s_.substr(p_), c);
            if (n == 0) throw ParseError(p_, "scalar or letter", s_);
            p_ += n;
            t.coef = c;
        }
        skip();
        while (p_ < s_.size() && s_[p_] == '*') {
            ++p_;
            skip();
            t.word.push_back(letter());
            skip();
        }
        return t;
    }

    Letter letter() {
        if (p_ < s_.size() && s_[p_] == 'd') {
            ++p_;
            return Letter::derivation();
        }
        if (p_ >= s_.size() || s_[p_] != 'b') throw ParseError(p_, "letter 'b<k>@t^<n>' or 'd'", s_);
        ++p_;
        long k = number(false);
        if (k < 1 || k >= Letter::kDerivation) throw ParseError(p_, "basis index >= 1", s_);
        if (s_.substr(p_, 3) != "@t^") throw ParseError(p_, "'@t^'", s_);
        p_ += 3;
        long n = number(true);
        return Letter::loop(static_cast<int>(k - 1), static_cast<int>(n));
    }

    long number(bool allow_sign) {
        std::size_t start = p_;
        bool neg = false;
        if (allow_sign && p_ < s_.size() && (s_[p_] == '-' || s_[p_] == '+')) neg = s_[p_++] == '-';
        std::size_t digits = p_;
        long v = 0;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) {
            v = v * 10 + (s_[p_++] - '0');
            if (v > 1000000000L) throw ParseError(start, "integer of moderate size", s_);
        }
        if (p_ == digits) throw ParseError(p_, "integer", s_);
        return neg ? -v : v;
    }

    std::string_view s_;
    std::size_t p_ = 0;
};

inline void check_indices(const AlgebraSpec& spec, const std::vector<WordTerm>& terms) {
    for (const auto& t : terms) {
        if (!t.coef.is_rational() && spec.order() != 3)
            throw std::domain_error("coefficient " + t.coef.str() + " needs r = 3");
        for (const Letter& l : t.word) spec.check(l);
    }
}

// Element of S: the letters of every term commute and are simply sorted.
inline Element parse_element_s(const AlgebraSpec& spec, std::string_view text) {
    auto terms = ElementParser(text).parse_sum();
    check_indices(spec, terms);
    Element out;
    for (auto& t : terms) {
        std::sort(t.word.begin(), t.word.end());
        out.add(std::move(t.word), t.coef);
    }
    return out;
}

// Element of U: every term is a word that gets straightened.
inline Element parse_element_u(const AlgebraSpec& spec, std::string_view text) {
    auto terms = ElementParser(text).parse_sum();
    check_indices(spec, terms);
    Element out;
    for (auto& t : terms) out.add(straighten(spec, t.word), t.coef);
    return out;
}

// A single standard monomial (coefficient must be 1 if present).
inline Monomial parse_monomial(const AlgebraSpec& spec, std::string_view text) {
    auto terms = ElementParser(text).parse_sum();
    if (terms.size() != 1 || terms[0].coef != Scalar(1)) throw ParseError(0, "a single monomial", text);
    check_indices(spec, terms);
    Monomial m = terms[0].word;
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace kmgrowth
