#pragma once

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmgrowth/root_system.hpp"

namespace kmgrowth {

class InadmissibleTwist : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Diagram automorphism sigma of order r, extended to a Lie algebra automorphism of g.
class Twist {
public:
    Twist(std::shared_ptr<const RootSystem> rs, int r) : rs_(std::move(rs)), r_(r) {
        perm_ = default_permutation(*rs_, r_);
        build_images();
    }

    static std::shared_ptr<const Twist> from_label(const std::string& label) {
        auto colon = label.find(':');
        std::string base = label.substr(0, colon);
        int r = 1;
        if (colon != std::string::npos) {
            std::string suffix = label.substr(colon + 1);
            if (suffix == "r1") r = 1;
            else if (suffix == "r2") r = 2;
            else if (suffix == "r3") r = 3;
            else throw InadmissibleTwist("bad twist suffix '" + suffix + "'");
        }
        return std::make_shared<const Twist>(RootSystem::from_label(base), r);
    }

    const RootSystem& roots() const { return *rs_; }
    std::shared_ptr<const RootSystem> roots_ptr() const { return rs_; }
    int order() const { return r_; }
    int perm(int i) const { return perm_[i]; }
    const std::vector<int>& permutation() const { return perm_; }
    std::string label() const { return rs_->label() + ":r" + std::to_string(r_); }

    Root apply_root(const Root& beta) const {
        Root out(beta.size(), 0);
        for (std::size_t i = 0; i < beta.size(); ++i) out[perm_[i]] = beta[i];
        return out;
    }

    const SparseVec& image(int idx) const { return images_[idx]; }

    ChevalleyElement apply(const ChevalleyElement& x) const {
        ChevalleyElement out{rs_.get(), {}};
        for (const auto& [k, c] : x.coeffs) axpy(out.coeffs, c, images_[k]);
        return out;
    }

private:
    static std::vector<int> default_permutation(const RootSystem& rs, int r) {
        const int n = rs.rank();
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        if (r == 1) return p;
        if (r == 2) {
            switch (rs.type()) {
                case CartanType::A:
                    if (n < 2) break;
                    for (int i = 0; i < n; ++i) p[i] = n - 1 - i;
                    return p;
                case CartanType::D:
                    std::swap(p[n - 2], p[n - 1]);
                    return p;
                case CartanType::E:
                    p = {4, 3, 2, 1, 0, 5};
                    return p;
            }
        }
        if (r == 3 && rs.type() == CartanType::D && n == 4) {
            // 1 -> 4 -> 3 -> 1, node 2 fixed
            p = {3, 1, 0, 2};
            return p;
        }
        throw InadmissibleTwist("inadmissible twist (" + rs.label() + ", r=" + std::to_string(r) + ")");
    }

    void build_images() {
        const RootSystem& rs = *rs_;
        const int n = rs.rank();
        images_.assign(rs.dim(), {});
        for (int i = 0; i < n; ++i) {
            images_[rs.cartan_index(i)] = SparseVec{{rs.cartan_index(perm_[i]), Scalar(1)}};
            images_[rs.simple_positive(i)] = SparseVec{{rs.simple_positive(perm_[i]), Scalar(1)}};
            images_[rs.simple_negative(i)] = SparseVec{{rs.simple_negative(perm_[i]), Scalar(1)}};
        }
        for (int p = 0; p < rs.num_positive(); ++p) {
            const Root& beta = rs.positive_roots()[p];
            if (RootSystem::height(beta) == 1) continue;
            for (int i = 0; i < n; ++i) {
                Root rest = beta;
                rest[i] -= 1;
                int k = rs.index_of_root(rest);
                if (rest[i] < 0 || k < 0) continue;
                for (int sgn : {1, -1}) {
                    int a = sgn > 0 ? k : rs.index_of_root(negate(rest));
                    int b = sgn > 0 ? rs.simple_positive(i) : rs.simple_negative(i);
                    int target = sgn > 0 ? rs.positive_index(p) : rs.negative_index(p);
                    const auto& br = rs.basis_bracket(a, b);
                    // [g_a, g_b] = N g_target with N = +-1, so g_target = N [g_a, g_b]
                    int nval = br.at(0).second;
                    ChevalleyElement ia{rs_.get(), images_[a]}, ib{rs_.get(), images_[b]};
                    images_[target] = scaled(rs.bracket(ia, ib).coeffs, Scalar(nval));
                }
                break;
            }
        }
    }

    static Root negate(Root r) {
        for (int& c : r) c = -c;
        return r;
    }

    std::shared_ptr<const RootSystem> rs_;
    int r_;
    std::vector<int> perm_;
    std::vector<SparseVec> images_;
};

enum class Positivity { Negative = -1, Cartan = 0, Positive = 1 };

struct BasisElement {
    SparseVec chev;                // coordinates in the Chevalley basis
    int weight = 0;                // sigma-weight s, sigma(b) = w^s b
    Positivity positivity = Positivity::Cartan;
    int key = 0;                   // LT_C, the order key inside B_s
    std::vector<long> h0_weight;   // values of the h_0-weight on the Cartan part of B_0
    Root rep_root;                 // orbit representative (signed), zero for Cartan
    int height = 0;                // signed height of rep_root
    int orbit_rep = -1;            // for Cartan elements: smallest simple index of the orbit
    int opposite = -1;             // root elements: index of the partner of opposite weight
};

struct Sl2Partner {
    int gprime;         // index in B_Delta
    SparseVec gsecond;  // B-coordinates, weight-homogeneous
    int gsecond_weight;
    Scalar coefficient; // [g'', g'] = coefficient * g
};

// sigma-equivariant basis B of g, ordered by (sigma-weight, LT_C).
class EquivariantBasis {
public:
    explicit EquivariantBasis(std::shared_ptr<const Twist> tw) : tw_(std::move(tw)) {
        build();
        build_tables();
    }

    static std::shared_ptr<const EquivariantBasis> from_label(const std::string& label) {
        return std::make_shared<const EquivariantBasis>(Twist::from_label(label));
    }

    const Twist& twist() const { return *tw_; }
    const RootSystem& roots() const { return tw_->roots(); }
    int order() const { return tw_->order(); }
    int dim() const { return static_cast<int>(elems_.size()); }
    const BasisElement& operator[](int i) const { return elems_[i]; }
    const std::vector<BasisElement>& elements() const { return elems_; }
    const std::vector<int>& component(int s) const { return by_weight_[s]; }
    int theta() const { return theta_; }
    int minus_theta() const { return minus_theta_; }
    int theta_weight() const { return elems_[theta_].weight; }
    int theta_height() const { return RootSystem::height(roots().highest_root()); }
    bool is_root_element(int i) const { return elems_[i].positivity != Positivity::Cartan; }

    // [b_i, b_j] in B-coordinates.
    const std::vector<std::pair<int, Scalar>>& bracket(int i, int j) const { return table_[i * dim() + j]; }
    const Scalar& killing(int i, int j) const { return killing_[i * dim() + j]; }

    SparseVec bracket(const SparseVec& x, const SparseVec& y) const {
        SparseVec out;
        for (const auto& [i, ci] : x)
            for (const auto& [j, cj] : y) {
                const auto& br = bracket(i, j);
                if (br.empty()) continue;
                Scalar c = ci * cj;
                for (const auto& [k, v] : br) add_term(out, k, c * v);
            }
        return out;
    }
    Scalar killing(const SparseVec& x, const SparseVec& y) const {
        Scalar s(0);
        for (const auto& [i, ci] : x)
            for (const auto& [j, cj] : y) {
                const Scalar& k = killing(i, j);
                if (!k.is_zero()) s += ci * cj * k;
            }
        return s;
    }

    ChevalleyElement to_chevalley(const SparseVec& bcoords) const {
        ChevalleyElement out{&roots(), {}};
        for (const auto& [i, c] : bcoords) axpy(out.coeffs, c, elems_[i].chev);
        return out;
    }
    SparseVec to_basis(const ChevalleyElement& x) const {
        SparseVec out;
        for (int k = 0; k < dim(); ++k) {
            Scalar s(0);
            for (const auto& [c, v] : x.coeffs) {
                const Scalar& m = inverse_[k][c];
                if (!m.is_zero()) s += m * v;
            }
            if (!s.is_zero()) out.emplace(k, s);
        }
        return out;
    }

    // Weight of a homogeneous B-vector (its common sigma-weight).
    int weight_of(const SparseVec& v) const {
        if (v.empty()) throw std::domain_error("weight of zero vector");
        int w = elems_[v.begin()->first].weight;
        for (const auto& [k, c] : v)
            if (elems_[k].weight != w) throw std::domain_error("vector is not sigma-homogeneous");
        return w;
    }

    Sl2Partner sl2_partner(int g) const {
        const BasisElement& e = elems_[g];
        Sl2Partner out{};
        if (e.positivity != Positivity::Cartan) {
            out.gprime = g;
            out.gsecond = bracket(SparseVec{{g, Scalar(1)}}, SparseVec{{e.opposite, Scalar(1)}});
            out.gsecond_weight = 0;
        } else {
            // orbit-phased simple root vectors of the orbit of alpha_i
            out.gprime = simple_orbit_element(e.orbit_rep, e.weight, Positivity::Positive);
            out.gsecond = SparseVec{{simple_orbit_element(e.orbit_rep, 0, Positivity::Negative), Scalar(1)}};
            out.gsecond_weight = 0;
        }
        SparseVec br = bracket(out.gsecond, SparseVec{{out.gprime, Scalar(1)}});
        if (br.size() != 1 || br.begin()->first != g) throw std::logic_error("sl2 partner does not reproduce g");
        out.coefficient = br.begin()->second;
        return out;
    }

    // Breadth-first search for y_1..y_p in B of sign opposite to the start line g_{+-theta} with
    // [y_p, ... [y_1, g_{+-theta}]] a nonzero multiple of b_target. The start defaults to the sign of the target.
    std::vector<int> opposite_chain(int target, std::optional<Positivity> start = std::nullopt) const {
        Positivity tp = elems_[target].positivity;
        if (tp == Positivity::Cartan) throw std::invalid_argument("opposite_chain target must be a root element");
        Positivity sp = start.value_or(tp);
        int from = sp == Positivity::Positive ? theta_ : minus_theta_;
        Positivity step = sp == Positivity::Positive ? Positivity::Negative : Positivity::Positive;
        std::vector<int> parent(dim(), -2), via(dim(), -1);
        std::deque<int> q{from};
        parent[from] = -1;
        while (!q.empty()) {
            int cur = q.front();
            q.pop_front();
            if (cur == target) break;
            for (int y = 0; y < dim(); ++y) {
                if (elems_[y].positivity != step) continue;
                const auto& br = bracket(y, cur);
                if (br.size() != 1) continue;
                int nxt = br.front().first;
                if (parent[nxt] != -2) continue;
                parent[nxt] = cur;
                via[nxt] = y;
                q.push_back(nxt);
            }
        }
        if (parent[target] == -2) throw std::logic_error("no opposite chain reaches the target weight line");
        std::vector<int> chain;
        for (int cur = target; parent[cur] != -1; cur = parent[cur]) chain.push_back(via[cur]);
        std::reverse(chain.begin(), chain.end());
        return chain;
    }

    bool check_g0_generates(int a) const {
        int s = ((a % order()) + order()) % order();
        std::vector<SparseVec> rows;
        for (int x : by_weight_[0])
            for (int y : by_weight_[s]) {
                SparseVec v;
                for (const auto& [k, c] : bracket(x, y)) v.emplace(k, c);
                rows.push_back(std::move(v));
            }
        return static_cast<int>(rank_of(rows)) == static_cast<int>(by_weight_[s].size());
    }

    // Exact rank of a list of sparse vectors.
    static std::size_t rank_of(std::vector<SparseVec> rows) {
        std::map<int, SparseVec> pivots;
        for (auto& v : rows) {
            while (!v.empty()) {
                int lead = v.rbegin()->first;
                auto it = pivots.find(lead);
                if (it == pivots.end()) {
                    Scalar c = v.rbegin()->second.inv();
                    pivots.emplace(lead, scaled(v, c));
                    break;
                }
                axpy(v, -v.rbegin()->second, it->second);
            }
        }
        return pivots.size();
    }

    std::string describe(int i) const {
        const BasisElement& e = elems_[i];
        std::string s;
        for (auto it = e.chev.rbegin(); it != e.chev.rend(); ++it) {
            if (!s.empty()) s += " + ";
            s += "(" + it->second.str() + ")" + roots().basis_name(it->first);
        }
        return s;
    }

private:
    int simple_orbit_element(int i, int weight, Positivity p) const {
        const RootSystem& rs = roots();
        Root target = rs.unit(i);
        if (p == Positivity::Negative)
            for (int& c : target) c = -c;
        for (int k = 0; k < dim(); ++k)
            if (elems_[k].positivity == p && elems_[k].weight == weight && elems_[k].rep_root == target) return k;
        throw std::logic_error("simple orbit element not found");
    }

    void add(SparseVec chev, int weight, Positivity p, Root rep, int orbit_rep = -1) {
        BasisElement b;
        b.chev = std::move(chev);
        b.weight = weight;
        b.positivity = p;
        b.key = b.chev.rbegin()->first;
        b.height = RootSystem::height(rep);
        b.rep_root = std::move(rep);
        b.orbit_rep = orbit_rep;
        elems_.push_back(std::move(b));
    }

    void build() {
        const RootSystem& rs = roots();
        const int r = order();
        std::vector<int> partner_of;  // parallel to elems_ during construction
        std::vector<bool> visited(rs.num_positive(), false);
        for (int p = rs.num_positive() - 1; p >= 0; --p) {
            if (visited[p]) continue;
            std::vector<Root> orbit{rs.positive_roots()[p]};
            while (true) {
                Root nxt = tw_->apply_root(orbit.back());
                if (nxt == orbit.front()) break;
                orbit.push_back(nxt);
            }
            Root rep = orbit.front();
            for (const Root& o : orbit) {
                visited[rs.index_of_root(o) - rs.num_positive() - rs.rank()] = true;
                if (RootSystem::root_order_less(rep, o)) rep = o;
            }
            Root neg = rep;
            for (int& c : neg) c = -c;
            const int e = rs.index_of_root(rep), f = rs.index_of_root(neg);
            const int rp = static_cast<int>(orbit.size());
            if (rp == 1) {
                const SparseVec& img = tw_->image(e);
                Scalar chi = img.at(e);
                int s = -1;
                for (int t = 0; t < r; ++t)
                    if (Scalar::eta_pow(r, t) == chi) s = t;
                if (s < 0) throw std::logic_error("sigma eigenvalue is not a power of w");
                add(SparseVec{{e, Scalar(1)}}, s, Positivity::Positive, rep);
                add(SparseVec{{f, Scalar(1)}}, (r - s) % r, Positivity::Negative, neg);
            } else {
                if (rp != r) throw std::logic_error("orbit length differs from twist order");
                for (int s = 0; s < r; ++s) {
                    ChevalleyElement ce = rs.basis(e), cf = rs.basis(f);
                    SparseVec vp, vn;
                    for (int j = 0; j < r; ++j) {
                        axpy(vp, Scalar::eta_pow(r, -s * j), ce.coeffs);
                        axpy(vn, Scalar::eta_pow(r, s * j), cf.coeffs);
                        ce = tw_->apply(ce);
                        cf = tw_->apply(cf);
                    }
                    add(std::move(vp), s, Positivity::Positive, rep);
                    add(std::move(vn), (r - s) % r, Positivity::Negative, neg);
                }
            }
        }
        std::vector<bool> seen(rs.rank(), false);
        for (int i = 0; i < rs.rank(); ++i) {
            if (seen[i]) continue;
            std::vector<int> orbit{i};
            while (tw_->perm(orbit.back()) != i) orbit.push_back(tw_->perm(orbit.back()));
            for (int o : orbit) seen[o] = true;
            const int rp = static_cast<int>(orbit.size());
            if (rp == 1) {
                add(SparseVec{{rs.cartan_index(i), Scalar(1)}}, 0, Positivity::Cartan, Root(rs.rank(), 0), i);
                continue;
            }
            for (int s = 0; s < r; ++s) {
                SparseVec v;
                for (int j = 0; j < rp; ++j) add_term(v, rs.cartan_index(orbit[j]), Scalar::eta_pow(r, -s * j));
                add(std::move(v), s, Positivity::Cartan, Root(rs.rank(), 0), i);
            }
        }

        // sigma-equivariance
        for (const auto& b : elems_) {
            ChevalleyElement x{&rs, b.chev};
            if (tw_->apply(x).coeffs != scaled(b.chev, Scalar::eta_pow(r, b.weight)))
                throw std::logic_error("basis element is not sigma-equivariant");
        }

        std::stable_sort(elems_.begin(), elems_.end(), [](const BasisElement& x, const BasisElement& y) {
            if (x.weight != y.weight) return x.weight < y.weight;
            if (x.key != y.key) return x.key < y.key;
            return guard_less(x.chev, y.chev);
        });
        by_weight_.assign(r, {});
        for (int k = 0; k < dim(); ++k) {
            by_weight_[elems_[k].weight].push_back(k);
            if (k > 0 && elems_[k].weight == elems_[k - 1].weight && elems_[k].key == elems_[k - 1].key)
                throw std::logic_error("order keys inside a component are not distinct");
        }
        theta_ = minus_theta_ = -1;
        Root th = rs.highest_root(), mth = th;
        for (int& c : mth) c = -c;
        for (int k = 0; k < dim(); ++k) {
            if (elems_[k].rep_root == th && elems_[k].positivity == Positivity::Positive) theta_ = k;
            if (elems_[k].rep_root == mth && elems_[k].positivity == Positivity::Negative) minus_theta_ = k;
        }
    }

    static bool guard_less(const SparseVec& x, const SparseVec& y) {
        auto ix = x.rbegin(), iy = y.rbegin();
        for (; ix != x.rend() && iy != y.rend(); ++ix, ++iy) {
            if (ix->first != iy->first) return ix->first < iy->first;
            if (ix->second != iy->second) return ix->second.str() < iy->second.str();
        }
        return iy != y.rend();
    }

    void build_tables() {
        const RootSystem& rs = roots();
        const int n = dim();
        // inverse of the change-of-basis matrix (columns = B in C-coordinates)
        std::vector<std::vector<Scalar>> m(n, std::vector<Scalar>(2 * n, Scalar(0)));
        for (int k = 0; k < n; ++k) {
            for (const auto& [c, v] : elems_[k].chev) m[c][k] = v;
            m[k][n + k] = Scalar(1);
        }
        for (int col = 0; col < n; ++col) {
            int piv = col;
            while (piv < n && m[piv][col].is_zero()) ++piv;
            if (piv == n) throw std::logic_error("equivariant basis is singular");
            std::swap(m[piv], m[col]);
            Scalar inv = m[col][col].inv();
            for (auto& x : m[col]) x *= inv;
            for (int row = 0; row < n; ++row) {
                if (row == col || m[row][col].is_zero()) continue;
                Scalar f = m[row][col];
                for (int k = col; k < 2 * n; ++k)
                    if (!m[col][k].is_zero()) m[row][k] -= f * m[col][k];
            }
        }
        inverse_.assign(n, std::vector<Scalar>(n, Scalar(0)));
        for (int k = 0; k < n; ++k)
            for (int c = 0; c < n; ++c) inverse_[k][c] = m[k][n + c];

        std::vector<long> h0_pairings;
        std::vector<int> h0 = by_weight_[0];
        h0.erase(std::remove_if(h0.begin(), h0.end(), [&](int k) { return elems_[k].positivity != Positivity::Cartan; }),
                 h0.end());
        for (auto& b : elems_) {
            b.h0_weight.clear();
            for (int h : h0) {
                long v = 0;
                for (const auto& [c, coef] : elems_[h].chev) {
                    int i = c - rs.num_positive();
                    long pair = 0;
                    for (int j = 0; j < rs.rank(); ++j) pair += static_cast<long>(rs.cartan(i, j)) * b.rep_root[j];
                    v += coef.a().get_num().get_si() * pair;
                }
                b.h0_weight.push_back(v);
            }
        }

        table_.assign(static_cast<std::size_t>(n) * n, {});
        killing_.assign(static_cast<std::size_t>(n) * n, Scalar(0));
        for (int i = 0; i < n; ++i) {
            ChevalleyElement x{&rs, elems_[i].chev};
            for (int j = 0; j < n; ++j) {
                ChevalleyElement y{&rs, elems_[j].chev};
                ChevalleyElement br = rs.bracket(x, y);
                if (!br.is_zero())
                    for (auto& [k, c] : to_basis(br)) table_[i * n + j].emplace_back(k, c);
                killing_[i * n + j] = rs.killing(x, y);
            }
        }

        for (int i = 0; i < n; ++i) {
            auto& b = elems_[i];
            if (b.positivity == Positivity::Cartan) continue;
            Root neg = b.rep_root;
            for (int& c : neg) c = -c;
            int want = (order() - b.weight) % order();
            for (int j = 0; j < n; ++j)
                if (elems_[j].rep_root == neg && elems_[j].weight == want) b.opposite = j;
            if (b.opposite < 0) throw std::logic_error("missing opposite basis element");
        }
    }

    std::shared_ptr<const Twist> tw_;
    std::vector<BasisElement> elems_;
    std::vector<std::vector<int>> by_weight_;
    std::vector<std::vector<Scalar>> inverse_;
    std::vector<std::vector<std::pair<int, Scalar>>> table_;
    std::vector<Scalar> killing_;
    int theta_ = -1, minus_theta_ = -1;
};

}  // namespace kmgrowth
