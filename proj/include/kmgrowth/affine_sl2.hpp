#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kmgrowth/pbw.hpp"

namespace kmgrowth {

// Affine sl2 inside an affine algebra: e' t^{k+rn}, f' t^{-k+rn}, h t^{rn} with h = [e', f'], plus d.
struct Sl2HatFamily {
    int index = 0;
    int k = 0;
    int r = 1;
    int e_prime = -1, f_prime = -1;  // B indices
    SparseVec h;                     // [e', f'] in B coordinates
    Scalar e_eigen, f_eigen;         // [h, e'] = e_eigen e', [h, f'] = f_eigen f'
    Scalar kappa;                    // kappa(e', f')
    Scalar kappa_representative;     // kappa(e_beta, f_beta) for one root beta of the orbit
    int orbit_size = 1;
    Scalar central_scalar;  // r * kappa(e', f'): the image of the standard central element per unit of level
    int window = 0;
    std::vector<std::string> failures;
    bool closed() const { return failures.empty(); }
};

class DegenerateSubalgebra : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Positive root elements of B_0 that are not brackets of two positive B_0 elements.
inline std::vector<int> degree_zero_simple_roots(const EquivariantBasis& b) {
    std::vector<int> pos;
    for (int i : b.component(0))
        if (b[i].positivity == Positivity::Positive) pos.push_back(i);
    std::vector<int> out;
    for (int i : pos) {
        bool decomposable = false;
        for (int x : pos)
            for (int y : pos)
                for (const auto& [kk, c] : b.bracket(x, y))
                    if (kk == i) decomposable = true;
        if (!decomposable) out.push_back(i);
    }
    std::sort(out.begin(), out.end(), [&](int x, int y) { return b[x].orbit_rep < b[y].orbit_rep || (b[x].orbit_rep == b[y].orbit_rep && x < y); });
    return out;
}

inline int affine_node_count(const EquivariantBasis& b) { return static_cast<int>(degree_zero_simple_roots(b).size()) + 1; }

namespace detail {
// Root element of B_{1 mod r} annihilated by every negative root element of B_0.
inline int lowest_degree_one_vector(const EquivariantBasis& b) {
    const int s = 1 % b.order();
    int found = -1;
    for (int i : b.component(s)) {
        if (b[i].positivity == Positivity::Cartan) continue;
        bool lowest = true;
        for (int y : b.component(0))
            if (b[y].positivity == Positivity::Negative && !b.bracket(y, i).empty()) lowest = false;
        if (lowest) {
            if (found >= 0) throw std::logic_error("lowest weight vector of degree one is not unique");
            found = i;
        }
    }
    if (found < 0) throw std::logic_error("no lowest weight vector of degree one");
    return found;
}

inline Element line(const SparseVec& v, int exp) {
    Element e;
    for (const auto& [kk, c] : v) e.add(Monomial{Letter::loop(kk, exp)}, c);
    return e;
}
}  // namespace detail

inline Sl2HatFamily subalgebra_sl2hat(const AlgebraSpec& spec, int i, int window = 3) {
    if (spec.flavor() != Flavor::Affine) throw std::invalid_argument("subalgebra_sl2hat needs the affine flavor");
    const EquivariantBasis& b = spec.basis();
    const RootSystem& rs = b.roots();
    const int nodes = affine_node_count(b);
    if (i < 0 || i >= nodes) throw std::invalid_argument("affine Chevalley index must lie in [0, " + std::to_string(nodes - 1) + "]");

    Sl2HatFamily out;
    out.index = i;
    out.r = spec.order();
    out.window = window;
    if (i == 0) {
        out.e_prime = detail::lowest_degree_one_vector(b);
        out.k = 1;
    } else {
        out.e_prime = degree_zero_simple_roots(b)[i - 1];
        out.k = 0;
    }
    out.f_prime = b[out.e_prime].opposite;
    out.h = b.bracket(SparseVec{{out.e_prime, Scalar(1)}}, SparseVec{{out.f_prime, Scalar(1)}});
    out.kappa = b.killing(out.e_prime, out.f_prime);
    if (out.kappa.is_zero()) throw DegenerateSubalgebra("kappa(e', f') vanishes");
    out.central_scalar = Scalar(out.r) * out.kappa;

    const Root& rep = b[out.e_prime].rep_root;
    Root neg = rep;
    for (int& x : neg) x = -x;
    out.kappa_representative = Scalar(rs.killing_basis(rs.index_of_root(rep), rs.index_of_root(neg)));
    out.orbit_size = static_cast<int>(b[out.e_prime].chev.size());

    auto eigen = [&](int target) {
        SparseVec br = b.bracket(out.h, SparseVec{{target, Scalar(1)}});
        if (br.size() != 1 || br.begin()->first != target) throw std::logic_error("h does not act diagonally on the family");
        return br.begin()->second;
    };
    out.e_eigen = eigen(out.e_prime);
    out.f_eigen = eigen(out.f_prime);

    const int r = out.r, k = out.k;
    const Scalar& lambda = spec.level();
    const Scalar khh = b.killing(out.h, out.h);
    auto E = [&](int n) { return Element::letter(Letter::loop(out.e_prime, k + r * n)); };
    auto F = [&](int n) { return Element::letter(Letter::loop(out.f_prime, -k + r * n)); };
    auto H = [&](int n) { return detail::line(out.h, r * n); };
    auto br = [&](const Element& x, const Element& y) { return poisson_bracket(spec, PoissonMode::SLambda, x, y); };
    auto expect = [&](const std::string& what, const Element& got, const Element& want) {
        if (got != want) out.failures.push_back(what);
    };
    const Element d = Element::letter(Letter::derivation());
    for (int n = -window; n <= window; ++n) {
        expect("[d,E" + std::to_string(n) + "]", br(d, E(n)), E(n) * Scalar(k + r * n));
        expect("[d,F" + std::to_string(n) + "]", br(d, F(n)), F(n) * Scalar(-k + r * n));
        for (int m = -window; m <= window; ++m) {
            const std::string tag = std::to_string(n) + "," + std::to_string(m);
            Element ef = H(n + m);
            if (n + m == 0) ef.add(Monomial{}, Scalar(k + r * n) * out.kappa * lambda);
            expect("[E,F](" + tag + ")", br(E(n), F(m)), ef);
            expect("[H,E](" + tag + ")", br(H(n), E(m)), E(n + m) * out.e_eigen);
            expect("[H,F](" + tag + ")", br(H(n), F(m)), F(n + m) * out.f_eigen);
            Element hh;
            if (n + m == 0) hh.add(Monomial{}, Scalar(r * n) * khh * lambda);
            expect("[H,H](" + tag + ")", br(H(n), H(m)), hh);
            expect("[E,E](" + tag + ")", br(E(n), E(m)), Element());
            expect("[F,F](" + tag + ")", br(F(n), F(m)), Element());
        }
    }
    return out;
}

}  // namespace kmgrowth
