#pragma once

#include <algorithm>
#include <climits>
#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "kmgrowth/twist.hpp"

namespace kmgrowth {

class InadmissibleLetter : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// b_idx t^exp, or the derivation d. The derived ordering (exponent, then index) is the letter
// order: d is stored as (-1, kDerivation) so that it sits after every exponent -1 letter and
// before every exponent 0 letter.
struct Letter {
    static constexpr std::uint16_t kDerivation = 0xFFFF;

    std::int32_t exp = 0;
    std::uint16_t idx = 0;

    static Letter loop(int index, int exponent) { return Letter{exponent, static_cast<std::uint16_t>(index)}; }
    static Letter derivation() { return Letter{-1, kDerivation}; }

    bool is_d() const { return idx == kDerivation; }
    int degree() const { return is_d() ? 0 : exp; }
    int md() const { return is_d() ? 1 : (exp < 0 ? -exp : exp) + 1; }

    friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Monomial = boost::container::small_vector<Letter, 6>;

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (const Letter& l : m) {
            std::uint64_t v = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(l.exp)) << 16) ^ l.idx;
            h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};

inline int len(const Monomial& m) { return static_cast<int>(m.size()); }
inline int deg(const Monomial& m) {
    int s = 0;
    for (const Letter& l : m) s += l.degree();
    return s;
}
inline int md(const Monomial& m) {
    int s = 0;
    for (const Letter& l : m) s += l.md();
    return s;
}

// Exact linear combination of standard monomials. Whether products are taken in U or in S is
// decided by the operation applied, not stored here.
class Element {
public:
    using Map = std::unordered_map<Monomial, Scalar, MonomialHash>;

    Element() = default;
    static Element constant(const Scalar& c) {
        Element e;
        e.add(Monomial{}, c);
        return e;
    }
    static Element monomial(Monomial m, const Scalar& c = Scalar(1)) {
        Element e;
        e.add(std::move(m), c);
        return e;
    }
    static Element letter(Letter l, const Scalar& c = Scalar(1)) { return monomial(Monomial{l}, c); }

    void add(const Monomial& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add(Monomial&& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    void add(const Element& o, const Scalar& c = Scalar(1)) {
        if (c.is_zero()) return;
        for (const auto& [m, v] : o.terms_) add(m, v * c);
    }

    Element& operator+=(const Element& o) {
        add(o);
        return *this;
    }
    Element& operator-=(const Element& o) {
        add(o, Scalar(-1));
        return *this;
    }
    Element& operator*=(const Scalar& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend Element operator+(Element x, const Element& y) { return x += y; }
    friend Element operator-(Element x, const Element& y) { return x -= y; }
    friend Element operator*(Element x, const Scalar& c) { return x *= c; }
    friend Element operator*(const Scalar& c, Element x) { return x *= c; }
    friend bool operator==(const Element& x, const Element& y) { return x.terms_ == y.terms_; }
    friend bool operator!=(const Element& x, const Element& y) { return !(x == y); }

    void reserve(std::size_t n) { terms_.reserve(n); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Map& terms() const { return terms_; }
    Scalar coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    int max_len() const {
        int v = -1;
        for (const auto& [m, c] : terms_) v = std::max(v, len(m));
        return v;
    }
    int max_md() const {
        int v = -1;
        for (const auto& [m, c] : terms_) v = std::max(v, md(m));
        return v;
    }
    // Minimum t-exponent over all loop letters (d ignored); INT32_MAX if there are none.
    int min_exponent() const {
        int v = INT32_MAX;
        for (const auto& [m, c] : terms_)
            for (const Letter& l : m)
                if (!l.is_d()) v = std::min(v, l.exp);
        return v;
    }
    bool has_d() const {
        for (const auto& [m, c] : terms_)
            for (const Letter& l : m)
                if (l.is_d()) return true;
        return false;
    }

private:
    Map terms_;
};

enum class Flavor { Loop, Current, PosCurrent, AffineDerived, Affine };

inline std::string flavor_name(Flavor f) {
    switch (f) {
        case Flavor::Loop: return "loop";
        case Flavor::Current: return "current";
        case Flavor::PosCurrent: return "poscurrent";
        case Flavor::AffineDerived: return "affine-derived";
        case Flavor::Affine: return "affine";
    }
    return "?";
}

inline Flavor parse_flavor(const std::string& s) {
    if (s == "loop") return Flavor::Loop;
    if (s == "current") return Flavor::Current;
    if (s == "poscurrent") return Flavor::PosCurrent;
    if (s == "affine-derived") return Flavor::AffineDerived;
    if (s == "affine") return Flavor::Affine;
    throw std::invalid_argument("unknown flavor '" + s + "'");
}

// Result of a Lie bracket of two letters: a combination of letters plus a scalar (the cocycle value).
struct LieResult {
    std::vector<std::pair<Letter, Scalar>> letters;
    Scalar scalar{0};
    bool is_zero() const { return letters.empty() && scalar.is_zero(); }
};

class AlgebraSpec {
public:
    AlgebraSpec(std::shared_ptr<const EquivariantBasis> basis, Flavor flavor, Scalar level = Scalar(0))
        : basis_(std::move(basis)), flavor_(flavor), level_(std::move(level)) {
        if (!is_affine() && !level_.is_zero()) throw std::invalid_argument("a central level requires an affine flavor");
    }

    static std::shared_ptr<const AlgebraSpec> make(const std::string& label, Flavor f, Scalar level = Scalar(0)) {
        return std::make_shared<const AlgebraSpec>(EquivariantBasis::from_label(label), f, std::move(level));
    }

    const EquivariantBasis& basis() const { return *basis_; }
    std::shared_ptr<const EquivariantBasis> basis_ptr() const { return basis_; }
    Flavor flavor() const { return flavor_; }
    const Scalar& level() const { return level_; }
    int order() const { return basis_->order(); }
    bool is_affine() const { return flavor_ == Flavor::Affine || flavor_ == Flavor::AffineDerived; }
    bool has_d() const { return flavor_ == Flavor::Affine; }

    AlgebraSpec with_flavor(Flavor f, Scalar level = Scalar(0)) const { return AlgebraSpec(basis_, f, std::move(level)); }

    bool admissible(const Letter& l) const {
        if (l.is_d()) return has_d();
        if (l.idx >= basis_->dim()) return false;
        int r = order();
        if (((l.exp % r) + r) % r != (*basis_)[l.idx].weight) return false;
        if (flavor_ == Flavor::Current && l.exp < 0) return false;
        if (flavor_ == Flavor::PosCurrent && l.exp < 1) return false;
        return true;
    }
    void check(const Letter& l) const {
        if (!admissible(l)) {
            std::string what = l.is_d() ? std::string("d") : "b" + std::to_string(l.idx + 1) + "@t^" + std::to_string(l.exp);
            throw InadmissibleLetter("letter " + what + " is not admissible for flavor " + flavor_name(flavor_) +
                                     " of " + basis_->twist().label());
        }
    }
    void check(const Element& e) const {
        for (const auto& [m, c] : e.terms())
            for (const Letter& l : m) check(l);
    }

    // Smallest exponent >= lo that is congruent to s mod r.
    int next_exponent(int s, int lo) const {
        int r = order();
        int e = lo;
        while (((e % r) + r) % r != s) ++e;
        return e;
    }

    LieResult letter_bracket(const Letter& x, const Letter& y, bool cocycle = true) const {
        LieResult out;
        if (x.is_d() && y.is_d()) return out;
        if (x.is_d()) {
            if (y.exp != 0) out.letters.emplace_back(y, Scalar(y.exp));
            return out;
        }
        if (y.is_d()) {
            if (x.exp != 0) out.letters.emplace_back(x, Scalar(-x.exp));
            return out;
        }
        const int e = x.exp + y.exp;
        for (const auto& [k, c] : basis_->bracket(x.idx, y.idx)) out.letters.emplace_back(Letter::loop(k, e), c);
        if (cocycle && is_affine() && e == 0 && x.exp != 0 && !level_.is_zero()) {
            const Scalar& kap = basis_->killing(x.idx, y.idx);
            if (!kap.is_zero()) out.scalar = Scalar(x.exp) * kap * level_;
        }
        return out;
    }

private:
    std::shared_ptr<const EquivariantBasis> basis_;
    Flavor flavor_;
    Scalar level_;
};

}  // namespace kmgrowth
