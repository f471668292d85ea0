#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmgrowth/reduction.hpp"

namespace kmgrowth {

// Incremental row echelon form; rows are normalized so the pivot coefficient is 1.
class Echelon {
public:
    // Returns true if v was independent of the rows already present.
    bool insert(Element v) {
        while (!v.is_zero()) {
            Monomial lt = leading_term(v);
            auto it = rows_.find(lt);
            if (it == rows_.end()) {
                Scalar c = v.coefficient(lt).inv();
                v *= c;
                rows_.emplace(std::move(lt), std::move(v));
                return true;
            }
            v.add(it->second, -v.coefficient(lt));
        }
        return false;
    }
    std::size_t rank() const { return rows_.size(); }

private:
    struct LexLess {
        bool operator()(const Monomial& a, const Monomial& b) const { return less(a, b); }
    };
    std::map<Monomial, Element, LexLess> rows_;
};

// Letters usable by the saturation: all admissible letters with exponent <= max_exp.
inline std::vector<Letter> letters_up_to(const AlgebraSpec& spec, int max_exp) {
    std::vector<Letter> out;
    for (int a = 0; a <= max_exp; ++a)
        for (int i = 0; i < spec.basis().dim(); ++i) {
            Letter l = Letter::loop(i, a);
            if (spec.admissible(l)) out.push_back(l);
        }
    return out;
}

struct IdealVector {
    Element value;
    int md = 0;
    std::vector<long> piece;
    int parent = -1;  // index of the vector this one was derived from; -1 for a generator
    int generator = -1;
    TraceStep step;
};

// Saturation of an md-homogeneous Poisson ideal of S(g[t]^sigma) inside the md <= j_max piece.
// Pieces are graded by (length, degree, h0-weight) when every generator is homogeneous for that
// grading, otherwise by md alone.
class IdealSaturation {
public:
    IdealSaturation(const AlgebraSpec& spec, std::vector<Element> gens, int j_max,
                    std::optional<unsigned> shuffle_seed = std::nullopt)
        : spec_(spec), gens_(std::move(gens)), j_max_(j_max) {
        if (spec_.flavor() != Flavor::Current && spec_.flavor() != Flavor::PosCurrent)
            throw std::invalid_argument("the growth harness needs the current or poscurrent flavor");
        if (j_max < 0) throw std::invalid_argument("j must be nonnegative");
        for (const Element& g : gens_) {
            if (g.has_d()) throw std::invalid_argument("generators must not contain d");
            spec_.check(g);
        }
        gens_.erase(std::remove_if(gens_.begin(), gens_.end(), [](const Element& g) { return g.is_zero(); }), gens_.end());
        fine_ = true;
        for (const Element& g : gens_) {
            auto mds = md_values(g);
            if (mds.size() != 1) throw std::invalid_argument("generators must be md-homogeneous");
            if (keys_of(g, true).size() != 1) fine_ = false;
        }
        letters_ = letters_up_to(spec_, j_max_);
        if (shuffle_seed) rng_.seed(*shuffle_seed);
        count_pieces();
        run(shuffle_seed.has_value());
    }

    bool fine_grading() const { return fine_; }
    int max_j() const { return j_max_; }
    const std::vector<IdealVector>& basis() const { return vecs_; }
    const std::vector<Element>& generators() const { return gens_; }

    long dim_ideal(int j) const {
        long n = 0;
        for (const auto& v : vecs_)
            if (v.md <= j) ++n;
        return n;
    }
    mpz_class dim_full(int j) const {
        mpz_class n = 0;
        for (const auto& [key, c] : piece_size_)
            if (key_md(key) <= j) n += c;
        return n;
    }

    ReductionTrace trace_of(std::size_t i) const {
        std::vector<TraceStep> rev;
        int cur = static_cast<int>(i);
        while (vecs_[cur].parent >= 0) {
            rev.push_back(vecs_[cur].step);
            cur = vecs_[cur].parent;
        }
        ReductionTrace t;
        t.generator = gens_[vecs_[cur].generator];
        t.steps.assign(rev.rbegin(), rev.rend());
        return t;
    }

private:
    int key_md(const std::vector<long>& key) const { return fine_ ? static_cast<int>(key[0] + key[1]) : static_cast<int>(key[0]); }

    std::vector<long> letter_key(const Letter& l, bool fine) const {
        if (!fine) return {l.md()};
        std::vector<long> k{1, l.exp};
        const auto& w = spec_.basis()[l.idx].h0_weight;
        k.insert(k.end(), w.begin(), w.end());
        return k;
    }
    std::vector<long> letter_key(const Letter& l) const { return letter_key(l, fine_); }
    std::vector<long> zero_key(bool fine) const {
        if (!fine) return {0};
        return std::vector<long>(2 + spec_.basis()[0].h0_weight.size(), 0);
    }
    static std::vector<long> add_keys(std::vector<long> a, const std::vector<long>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return a;
    }
    // Key change under a bracket with a letter: the letter's contribution without its length.
    std::vector<long> bracket_shift(const Letter& l) const {
        auto k = letter_key(l);
        if (fine_) k[0] = 0;
        else k[0] -= 1;
        return k;
    }

    std::vector<long> monomial_key(const Monomial& m, bool fine) const {
        std::vector<long> k = zero_key(fine);
        for (const Letter& l : m) k = add_keys(k, letter_key(l, fine));
        return k;
    }
    std::vector<std::vector<long>> keys_of(const Element& e, bool fine) const {
        std::vector<std::vector<long>> out;
        for (const auto& [m, c] : e.terms()) {
            auto k = monomial_key(m, fine);
            if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
        }
        return out;
    }
    static std::vector<int> md_values(const Element& e) {
        std::vector<int> out;
        for (const auto& [m, c] : e.terms()) {
            int v = md(m);
            if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
        }
        return out;
    }

    // Number of monomials in each piece with md <= j_max (unbounded knapsack over letters).
    void count_pieces() {
        piece_size_.clear();
        piece_size_[zero_key(fine_)] = 1;
        for (const Letter& l : letters_) {
            const auto lk = letter_key(l);
            for (int level = 0; level + l.md() <= j_max_; ++level) {
                std::vector<std::pair<std::vector<long>, mpz_class>> at;
                for (const auto& [k, c] : piece_size_)
                    if (key_md(k) == level) at.emplace_back(k, c);
                for (const auto& [k, c] : at) piece_size_[add_keys(k, lk)] += c;
            }
        }
    }

    bool full(const std::vector<long>& key) const {
        auto it = piece_size_.find(key);
        std::size_t have = 0;
        auto pit = pieces_.find(key);
        if (pit != pieces_.end()) have = pit->second.rank();
        if (it == piece_size_.end()) return true;  // no monomials at all
        return mpz_class(static_cast<unsigned long>(have)) >= it->second;
    }

    bool offer(Element cand, int md_level, std::vector<long> key, int parent, int generator, TraceStep step) {
        if (cand.is_zero()) return false;
        if (!pieces_[key].insert(cand)) return false;
        vecs_.push_back({std::move(cand), md_level, std::move(key), parent, generator, std::move(step)});
        return true;
    }

    void run(bool shuffle) {
        std::vector<int> by_md_start(j_max_ + 2, 0);
        std::vector<Letter> letters = letters_;
        for (int level = 0; level <= j_max_; ++level) {
            if (shuffle) std::shuffle(letters.begin(), letters.end(), rng_);
            const std::size_t level_begin = vecs_.size();
            for (std::size_t g = 0; g < gens_.size(); ++g) {
                if (gens_[g].max_md() != level) continue;
                for (const auto& key : keys_of(gens_[g], fine_))
                    offer(gens_[g], level, key, -1, static_cast<int>(g), {});
            }
            std::vector<int> order;
            for (std::size_t i = 0; i < level_begin; ++i) order.push_back(static_cast<int>(i));
            if (shuffle) std::shuffle(order.begin(), order.end(), rng_);
            for (int vi : order) {
                const int gap = level - vecs_[vi].md;
                for (const Letter& l : letters) {
                    if (l.md() == gap) {
                        auto key = add_keys(vecs_[vi].piece, letter_key(l));
                        if (!full(key)) {
                            Element x = Element::letter(l);
                            offer(multiply_s(x, vecs_[vi].value), level, key, vi, -1, {TraceStep::Kind::Multiply, x});
                        }
                    }
                    if (l.exp == gap && gap >= 1) bracket_into(vi, l, level);
                }
            }
            // closure under exponent-0 letters, which keep md fixed
            for (std::size_t i = level_begin; i < vecs_.size(); ++i)
                for (const Letter& l : letters)
                    if (l.exp == 0) bracket_into(static_cast<int>(i), l, level);
        }
    }

    void bracket_into(int vi, const Letter& l, int level) {
        auto key = add_keys(vecs_[vi].piece, bracket_shift(l));
        if (full(key)) return;
        Element x = Element::letter(l);
        offer(poisson_bracket(spec_, PoissonMode::SLambda, x, vecs_[vi].value), level, key, vi, -1,
              {TraceStep::Kind::Bracket, x});
    }

    AlgebraSpec spec_;
    std::vector<Element> gens_;
    int j_max_;
    bool fine_ = true;
    std::vector<Letter> letters_;
    std::mt19937 rng_;
    std::map<std::vector<long>, mpz_class> piece_size_;
    std::map<std::vector<long>, Echelon> pieces_;
    std::vector<IdealVector> vecs_;
};

inline long filtered_ideal_dimension(const AlgebraSpec& spec, const std::vector<Element>& gens, int j) {
    return IdealSaturation(spec, gens, j).dim_ideal(j);
}

struct GrowthPoint {
    int j = 0;
    mpz_class dim_full;
    mpz_class dim_ideal;
    mpz_class dim_quotient;
    std::optional<mpz_class> bound;
};

struct DimensionSeries {
    std::string algebra;
    std::vector<std::string> generators;
    int max_j = 0;
    std::vector<GrowthPoint> points;

    std::vector<mpz_class> quotient() const {
        std::vector<mpz_class> v;
        for (const auto& p : points) v.push_back(p.dim_quotient);
        return v;
    }
    std::vector<mpz_class> full() const {
        std::vector<mpz_class> v;
        for (const auto& p : points) v.push_back(p.dim_full);
        return v;
    }
};

inline DimensionSeries quotient_dimension_series(const AlgebraSpec& spec, const std::vector<Element>& gens, int J) {
    IdealSaturation sat(spec, gens, J);
    DimensionSeries s;
    s.algebra = spec.basis().twist().label();
    s.max_j = J;
    for (int j = 0; j <= J; ++j) {
        GrowthPoint p;
        p.j = j;
        p.dim_full = sat.dim_full(j);
        p.dim_ideal = sat.dim_ideal(j);
        p.dim_quotient = p.dim_full - p.dim_ideal;
        s.points.push_back(std::move(p));
    }
    return s;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

// Normal-word bound b(j) * c(j). Small letters have |exponent| < n (one side, or both sides when
// negative_side is set, plus d when with_d is set); at most m - 1 letters per side exceed that.
inline mpz_class count_normal_words(int dim_g, int m, int n, int j, bool with_d = false, bool negative_side = false) {
    if (dim_g < 1 || m < 1 || n < 0 || j < 0) throw std::invalid_argument("count_normal_words: parameters out of range");
    long small = negative_side ? static_cast<long>(dim_g) * std::max(0, 2 * n - 1) : static_cast<long>(dim_g) * n;
    if (with_d) small += 1;
    mpz_class b = binomial(static_cast<unsigned long>(small + j), static_cast<unsigned long>(j));
    mpz_class c;
    mpz_class base = 1 + static_cast<long>(j) * dim_g;
    mpz_pow_ui(c.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>((m - 1) * (negative_side ? 2 : 1)));
    return b * c;
}

struct GrowthClass {
    bool polynomial = false;
    int degree = 0;                     // meaningful when polynomial
    double last_slope = 0, previous_slope = 0;
    std::optional<bool> within_bound;  // set when a bound series was supplied
    static constexpr const char* kNote = "heuristic: log-log slope over trailing windows of 5, drift threshold 0.25";
};

namespace detail {
inline double window_slope(const std::vector<double>& x, const std::vector<double>& y, std::size_t end) {
    const std::size_t w = 5, begin = end - w;
    double mx = 0, my = 0;
    for (std::size_t i = begin; i < end; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= w;
    my /= w;
    double sxy = 0, sxx = 0;
    for (std::size_t i = begin; i < end; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}
}  // namespace detail

// Heuristic growth classification of a series indexed by j = 0, 1, 2, ...
inline GrowthClass classify_growth(const std::vector<mpz_class>& series, const std::vector<mpz_class>* bound = nullptr) {
    if (series.size() < 8) throw std::invalid_argument("classify_growth needs at least 8 terms");
    std::vector<double> x, y;
    for (std::size_t j = 0; j < series.size(); ++j) {
        x.push_back(std::log(static_cast<double>(j + 1)));
        mpz_class v = series[j] < 1 ? mpz_class(1) : series[j];
        long e = 0;
        double d = mpz_get_d_2exp(&e, v.get_mpz_t());
        y.push_back(std::log(d) + static_cast<double>(e) * std::log(2.0));
    }
    GrowthClass out;
    const std::size_t n = series.size();
    out.last_slope = detail::window_slope(x, y, n);
    out.previous_slope = detail::window_slope(x, y, n - 3);
    out.polynomial = std::abs(out.last_slope - out.previous_slope) < 0.25;
    out.degree = out.polynomial ? std::max(0, static_cast<int>(std::ceil(out.last_slope - 1e-9))) : 0;
    if (bound) {
        if (bound->size() != n) throw std::invalid_argument("bound series length differs");
        bool ok = true;
        for (std::size_t j = 0; j < n; ++j) ok = ok && series[j] <= (*bound)[j];
        out.within_bound = ok;
    }
    return out;
}

}  // namespace kmgrowth
