#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <stdexcept>
#include <vector>

#include "kmgrowth/loop_algebra.hpp"

namespace kmgrowth {

// Lex: length, degree, then letters compared from the left.
// RevLex: length, degree, then letters compared from the right.
enum class MonomialOrder { Lex, RevLex };

inline std::strong_ordering compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
    if (auto c = len(a) <=> len(b); c != 0) return c;
    if (auto c = deg(a) <=> deg(b); c != 0) return c;
    if (order == MonomialOrder::Lex) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (auto c = a[i] <=> b[i]; c != 0) return c;
    } else {
        for (std::size_t i = a.size(); i-- > 0;)
            if (auto c = a[i] <=> b[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

inline bool less(const Monomial& a, const Monomial& b, MonomialOrder order = MonomialOrder::Lex) {
    return compare(a, b, order) < 0;
}

inline Monomial leading_term(const Element& f, MonomialOrder order = MonomialOrder::Lex) {
    if (f.is_zero()) throw std::domain_error("leading term of the zero element");
    const Monomial* best = nullptr;
    for (const auto& [m, c] : f.terms())
        if (best == nullptr || compare(*best, m, order) < 0) best = &m;
    return *best;
}

// Terms sorted in descending order.
inline std::vector<std::pair<Monomial, Scalar>> sorted_terms(const Element& f, MonomialOrder order = MonomialOrder::Lex) {
    std::vector<std::pair<Monomial, Scalar>> out(f.terms().begin(), f.terms().end());
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) { return compare(y.first, x.first, order) < 0; });
    return out;
}

// Top-length homogeneous part.
inline Element gr_len(const Element& f) {
    Element out;
    int top = f.max_len();
    for (const auto& [m, c] : f.terms())
        if (len(m) == top) out.add(m, c);
    return out;
}

inline std::vector<int> congruence_class(const Monomial& m) {
    std::vector<int> out;
    for (const Letter& l : m) {
        if (l.is_d()) throw std::domain_error("congruence class of a monomial containing d");
        out.push_back(l.idx);
    }
    return out;
}

inline bool is_standard(const Monomial& m) { return std::is_sorted(m.begin(), m.end()); }

inline Monomial merge(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline Monomial insert_letter(const Monomial& a, const Letter& l) {
    Monomial out;
    out.reserve(a.size() + 1);
    auto pos = std::upper_bound(a.begin(), a.end(), l);
    out.insert(out.end(), a.begin(), pos);
    out.push_back(l);
    out.insert(out.end(), pos, a.end());
    return out;
}

// ---- S: commutative product -------------------------------------------------------------

inline Element multiply_s(const Element& f, const Element& g) {
    Element out;
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) out.add(merge(a, b), ca * cb);
    return out;
}

// ---- U: straightening ---------------------------------------------------------------------

namespace detail {
struct WordOrder {
    bool operator()(const Monomial& a, const Monomial& b) const {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    }
};
}  // namespace detail

// PBW expansion of an arbitrary combination of letter words, rewriting the leftmost
// out-of-order adjacent pair first.
inline Element straighten_words(const AlgebraSpec& spec, std::map<Monomial, Scalar, detail::WordOrder> pending) {
    Element out;
    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        Monomial w = std::move(node.key());
        Scalar c = std::move(node.mapped());
        if (c.is_zero()) continue;
        std::size_t i = 0;
        while (i + 1 < w.size() && !(w[i + 1] < w[i])) ++i;
        if (i + 1 >= w.size()) {
            out.add(std::move(w), c);
            continue;
        }
        auto push = [&](Monomial&& word, const Scalar& coef) {
            if (coef.is_zero()) return;
            auto [it, fresh] = pending.try_emplace(std::move(word), coef);
            if (!fresh) it->second += coef;
        };
        LieResult br = spec.letter_bracket(w[i], w[i + 1]);
        for (const auto& [l, v] : br.letters) {
            Monomial nw;
            nw.reserve(w.size() - 1);
            nw.insert(nw.end(), w.begin(), w.begin() + static_cast<long>(i));
            nw.push_back(l);
            nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 2, w.end());
            push(std::move(nw), c * v);
        }
        if (!br.scalar.is_zero()) {
            Monomial nw;
            nw.insert(nw.end(), w.begin(), w.begin() + static_cast<long>(i));
            nw.insert(nw.end(), w.begin() + static_cast<long>(i) + 2, w.end());
            push(std::move(nw), c * br.scalar);
        }
        std::swap(w[i], w[i + 1]);
        push(std::move(w), c);
    }
    return out;
}

inline Element straighten(const AlgebraSpec& spec, const Monomial& word) {
    for (const Letter& l : word) spec.check(l);
    std::map<Monomial, Scalar, detail::WordOrder> pending;
    pending.emplace(word, Scalar(1));
    return straighten_words(spec, std::move(pending));
}

inline Element multiply_u(const AlgebraSpec& spec, const Element& f, const Element& g) {
    std::map<Monomial, Scalar, detail::WordOrder> pending;
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) {
            Monomial w = a;
            w.insert(w.end(), b.begin(), b.end());
            Scalar c = ca * cb;
            auto [it, fresh] = pending.try_emplace(std::move(w), c);
            if (!fresh) it->second += c;
        }
    return straighten_words(spec, std::move(pending));
}

inline Element commutator_u(const AlgebraSpec& spec, const Element& f, const Element& g) {
    std::map<Monomial, Scalar, detail::WordOrder> pending;
    auto put = [&](Monomial&& w, const Scalar& c) {
        auto [it, fresh] = pending.try_emplace(std::move(w), c);
        if (!fresh) it->second += c;
    };
    for (const auto& [a, ca] : f.terms())
        for (const auto& [b, cb] : g.terms()) {
            Scalar c = ca * cb;
            Monomial ab = a, ba = b;
            ab.insert(ab.end(), b.begin(), b.end());
            ba.insert(ba.end(), a.begin(), a.end());
            put(std::move(ab), c);
            put(std::move(ba), -c);
        }
    return straighten_words(spec, std::move(pending));
}

// ---- Poisson brackets ---------------------------------------------------------------------

enum class PoissonMode { SLambda, GrMd };

inline LieResult poisson_letters(const AlgebraSpec& spec, PoissonMode mode, const Letter& x, const Letter& y) {
    if (mode == PoissonMode::GrMd) {
        if (!x.is_d() && !y.is_d() && static_cast<long>(x.exp) * y.exp < 0) return {};
        return spec.letter_bracket(x, y, false);
    }
    return spec.letter_bracket(x, y, true);
}

namespace detail {
inline bool is_linear_in_letters(const Element& f) {
    for (const auto& [m, c] : f.terms())
        if (m.size() != 1 || m[0].is_d()) return false;
    return true;
}

// {x, g} for x a combination of loop letters and g free of d: the hot path of the reduction engine.
inline Element poisson_linear(const AlgebraSpec& spec, PoissonMode mode, const Element& f, const Element& g) {
    const EquivariantBasis& basis = spec.basis();
    const bool cocycle = mode == PoissonMode::SLambda && spec.is_affine() && !spec.level().is_zero();
    Element out;
    out.reserve(g.size() * 2);
    Monomial w;
    for (const auto& [a, ca] : f.terms()) {
        const Letter x = a[0];
        for (const auto& [b, cb] : g.terms()) {
            const Scalar cab = ca * cb;
            for (std::size_t j = 0; j < b.size();) {
                std::size_t je = j;
                while (je < b.size() && b[je] == b[j]) ++je;
                const Letter y = b[j];
                const long mult = static_cast<long>(je - j);
                j = je;
                if (mode == PoissonMode::GrMd && static_cast<long>(x.exp) * y.exp < 0) continue;
                const int e = x.exp + y.exp;
                const auto& br = basis.bracket(x.idx, y.idx);
                Scalar c = mult == 1 ? cab : cab * Scalar(mult);
                for (const auto& [k, v] : br) {
                    // remove one copy of y, insert the new letter in sorted position
                    const Letter nl = Letter::loop(k, e);
                    w.clear();
                    w.reserve(b.size());
                    bool placed = false, removed = false;
                    for (const Letter& l : b) {
                        if (!removed && l == y) {
                            removed = true;
                            continue;
                        }
                        if (!placed && nl < l) {
                            w.push_back(nl);
                            placed = true;
                        }
                        w.push_back(l);
                    }
                    if (!placed) w.push_back(nl);
                    out.add(w, c * v);
                }
                if (cocycle && e == 0 && x.exp != 0) {
                    const Scalar& kap = basis.killing(x.idx, y.idx);
                    if (!kap.is_zero()) {
                        w.clear();
                        bool removed = false;
                        for (const Letter& l : b) {
                            if (!removed && l == y) {
                                removed = true;
                                continue;
                            }
                            w.push_back(l);
                        }
                        out.add(w, c * Scalar(x.exp) * kap * spec.level());
                    }
                }
            }
        }
    }
    return out;
}
}  // namespace detail

// Biderivation extension of the letter bracket to S.
inline Element poisson_bracket(const AlgebraSpec& spec, PoissonMode mode, const Element& f, const Element& g) {
    if (detail::is_linear_in_letters(f) && !g.has_d()) return detail::poisson_linear(spec, mode, f, g);
    Element out;
    Monomial rest_a, rest_b;
    for (const auto& [a, ca] : f.terms()) {
        for (const auto& [b, cb] : g.terms()) {
            Scalar cab = ca * cb;
            for (std::size_t i = 0; i < a.size();) {
                std::size_t ie = i;
                while (ie < a.size() && a[ie] == a[i]) ++ie;
                const long mult_a = static_cast<long>(ie - i);
                rest_a.assign(a.begin(), a.begin() + static_cast<long>(i));
                rest_a.insert(rest_a.end(), a.begin() + static_cast<long>(i) + 1, a.end());
                for (std::size_t j = 0; j < b.size();) {
                    std::size_t je = j;
                    while (je < b.size() && b[je] == b[j]) ++je;
                    const long mult_b = static_cast<long>(je - j);
                    LieResult br = poisson_letters(spec, mode, a[i], b[j]);
                    if (!br.is_zero()) {
                        rest_b.assign(b.begin(), b.begin() + static_cast<long>(j));
                        rest_b.insert(rest_b.end(), b.begin() + static_cast<long>(j) + 1, b.end());
                        Monomial base = merge(rest_a, rest_b);
                        Scalar c = cab * Scalar(mult_a * mult_b);
                        for (const auto& [l, v] : br.letters) out.add(insert_letter(base, l), c * v);
                        if (!br.scalar.is_zero()) out.add(base, c * br.scalar);
                    }
                    j = je;
                }
                i = ie;
            }
        }
    }
    return out;
}

}  // namespace kmgrowth
