#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kmgrowth/scalar.hpp"

namespace kmgrowth {

using Root = std::vector<int>;  // coordinates in the simple-root basis

enum class CartanType { A, D, E };

// Sparse vector of scalars keyed by basis index.
using SparseVec = std::map<int, Scalar>;

inline void axpy(SparseVec& y, const Scalar& c, const SparseVec& x) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : x) {
        auto [it, fresh] = y.try_emplace(k, c * v);
        if (!fresh) {
            it->second += c * v;
            if (it->second.is_zero()) y.erase(it);
        }
    }
}

inline void add_term(SparseVec& y, int k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = y.try_emplace(k, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) y.erase(it);
    }
}

inline SparseVec scaled(const SparseVec& x, const Scalar& c) {
    SparseVec out;
    if (c.is_zero()) return out;
    for (const auto& [k, v] : x) out.emplace(k, v * c);
    return out;
}

class RootSystem;

// Element of g in the Chevalley basis C. Index order is the total order on C:
// negative root vectors, then h_1..h_n, then positive root vectors.
struct ChevalleyElement {
    const RootSystem* system = nullptr;
    SparseVec coeffs;

    bool is_zero() const { return coeffs.empty(); }
    int leading_index() const {
        if (coeffs.empty()) throw std::domain_error("leading term of zero element");
        return coeffs.rbegin()->first;
    }
    friend bool operator==(const ChevalleyElement& x, const ChevalleyElement& y) { return x.coeffs == y.coeffs; }
};

class RootSystem {
public:
    RootSystem(CartanType type, int rank) : type_(type), rank_(rank) {
        validate();
        build_cartan();
        build_orientation();
        build_roots();
        build_structure_constants();
        build_killing();
    }

    static std::shared_ptr<const RootSystem> from_label(const std::string& label) {
        if (label.size() < 2) throw std::invalid_argument("bad algebra label '" + label + "'");
        CartanType t;
        switch (label[0]) {
            case 'A': t = CartanType::A; break;
            case 'D': t = CartanType::D; break;
            case 'E': t = CartanType::E; break;
            default: throw std::invalid_argument("unsupported type in label '" + label + "'");
        }
        int n = 0;
        for (std::size_t i = 1; i < label.size(); ++i) {
            if (label[i] < '0' || label[i] > '9') throw std::invalid_argument("bad rank in label '" + label + "'");
            n = n * 10 + (label[i] - '0');
            if (n > 64) throw std::invalid_argument("rank too large in label '" + label + "'");
        }
        return std::make_shared<const RootSystem>(t, n);
    }

    CartanType type() const { return type_; }
    int rank() const { return rank_; }
    std::string label() const {
        const char c = type_ == CartanType::A ? 'A' : type_ == CartanType::D ? 'D' : 'E';
        return std::string(1, c) + std::to_string(rank_);
    }
    int cartan(int i, int j) const { return cartan_[i][j]; }
    const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }

    // Positive roots in increasing root order (beta_1 < ... < beta_l).
    const std::vector<Root>& positive_roots() const { return positive_; }
    int num_positive() const { return static_cast<int>(positive_.size()); }
    int dim() const { return 2 * num_positive() + rank_; }
    const Root& highest_root() const { return positive_.back(); }

    static int height(const Root& r) {
        int h = 0;
        for (int c : r) h += c;
        return h;
    }

    static bool root_order_less(const Root& x, const Root& y) {
        int hx = height(x), hy = height(y);
        if (hx != hy) return hx < hy;
        return x < y;
    }

    int inner(const Root& x, const Root& y) const {
        int s = 0;
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j) s += x[i] * cartan_[i][j] * y[j];
        return s;
    }

    // Asymmetry function on the root lattice: bimultiplicative extension of the simple-root table.
    int epsilon(const Root& x, const Root& y) const {
        long parity = 0;
        for (int i = 0; i < rank_; ++i)
            for (int j = 0; j < rank_; ++j)
                if (eps_neg_[i][j]) parity += static_cast<long>(x[i]) * y[j];
        return (parity % 2 == 0) ? 1 : -1;
    }

    // Chevalley index layout.
    int negative_index(int pos) const { return num_positive() - 1 - pos; }  // g_{-beta_pos}
    int cartan_index(int i) const { return num_positive() + i; }
    int positive_index(int pos) const { return num_positive() + rank_ + pos; }
    bool is_cartan(int idx) const { return idx >= num_positive() && idx < num_positive() + rank_; }
    bool is_positive(int idx) const { return idx >= num_positive() + rank_; }
    bool is_negative(int idx) const { return idx < num_positive(); }

    // Root of a root-vector index (negative for f's); zero vector for Cartan indices.
    Root root_of(int idx) const {
        if (is_positive(idx)) return positive_[idx - num_positive() - rank_];
        if (is_negative(idx)) {
            Root r = positive_[num_positive() - 1 - idx];
            for (int& c : r) c = -c;
            return r;
        }
        return Root(rank_, 0);
    }

    // Index of g_beta for a nonzero root beta, -1 if beta is not a root.
    int index_of_root(const Root& beta) const {
        bool neg = false;
        for (int c : beta) {
            if (c < 0) neg = true;
        }
        Root p = beta;
        if (neg)
            for (int& c : p) c = -c;
        auto it = pos_lookup_.find(p);
        if (it == pos_lookup_.end()) return -1;
        return neg ? negative_index(it->second) : positive_index(it->second);
    }

    int simple_positive(int i) const { return positive_index(pos_lookup_.at(unit(i))); }
    int simple_negative(int i) const { return negative_index(pos_lookup_.at(unit(i))); }
    int theta_index() const { return positive_index(num_positive() - 1); }

    Root unit(int i) const {
        Root r(rank_, 0);
        r[i] = 1;
        return r;
    }

    // [C_a, C_b] with integer structure constants.
    const std::vector<std::pair<int, int>>& basis_bracket(int a, int b) const { return table_[a * dim() + b]; }

    ChevalleyElement basis(int idx) const {
        ChevalleyElement e{this, {}};
        e.coeffs.emplace(idx, Scalar(1));
        return e;
    }
    ChevalleyElement element(SparseVec v) const { return ChevalleyElement{this, std::move(v)}; }

    ChevalleyElement bracket(const ChevalleyElement& x, const ChevalleyElement& y) const {
        check_same(x);
        check_same(y);
        ChevalleyElement out{this, {}};
        for (const auto& [a, ca] : x.coeffs)
            for (const auto& [b, cb] : y.coeffs) {
                const auto& br = basis_bracket(a, b);
                if (br.empty()) continue;
                Scalar c = ca * cb;
                for (const auto& [k, n] : br) add_term(out.coeffs, k, c * Scalar(n));
            }
        return out;
    }

    Scalar killing(const ChevalleyElement& x, const ChevalleyElement& y) const {
        check_same(x);
        check_same(y);
        Scalar s(0);
        for (const auto& [a, ca] : x.coeffs)
            for (const auto& [b, cb] : y.coeffs) {
                long k = killing_[a * dim() + b];
                if (k != 0) s += ca * cb * Scalar(k);
            }
        return s;
    }
    long killing_basis(int a, int b) const { return killing_[a * dim() + b]; }

    // Root order comparisons on C basis indices coincide with integer comparison.
    static bool chevalley_order_less(int x, int y) { return x < y; }

    std::string basis_name(int idx) const {
        if (is_cartan(idx)) return "h" + std::to_string(idx - num_positive() + 1);
        Root r = root_of(idx);
        std::string s = is_positive(idx) ? "e[" : "f[";
        for (int i = 0; i < rank_; ++i) s += std::to_string(std::abs(r[i]));
        return s + "]";
    }

private:
    void validate() const {
        bool ok = false;
        switch (type_) {
            case CartanType::A: ok = rank_ >= 1; break;
            case CartanType::D: ok = rank_ >= 4; break;
            case CartanType::E: ok = rank_ == 6; break;
        }
        if (!ok) throw std::invalid_argument("unsupported simply-laced type");
    }

    void edge(int i, int j) {
        cartan_[i][j] = cartan_[j][i] = -1;
    }

    void build_cartan() {
        cartan_.assign(rank_, std::vector<int>(rank_, 0));
        for (int i = 0; i < rank_; ++i) cartan_[i][i] = 2;
        switch (type_) {
            case CartanType::A:
                for (int i = 0; i + 1 < rank_; ++i) edge(i, i + 1);
                break;
            case CartanType::D:
                for (int i = 0; i + 3 < rank_; ++i) edge(i, i + 1);
                edge(rank_ - 3, rank_ - 2);
                edge(rank_ - 3, rank_ - 1);
                break;
            case CartanType::E:
                for (int i = 0; i < 4; ++i) edge(i, i + 1);
                edge(2, 5);
                break;
        }
    }

    // Orientation chosen to be invariant under the diagram automorphisms in use
    // (edges point toward the middle of A_n, toward the branch node of D_n and E_6).
    void build_orientation() {
        eps_neg_.assign(rank_, std::vector<bool>(rank_, false));
        for (int i = 0; i < rank_; ++i) eps_neg_[i][i] = true;
        auto arrow = [&](int from, int to) { eps_neg_[from][to] = true; };
        switch (type_) {
            case CartanType::A:
                for (int i = 0; i + 1 < rank_; ++i) {
                    if (2 * (i + 1) < rank_ + 1) arrow(i, i + 1);
                    else arrow(i + 1, i);
                }
                break;
            case CartanType::D:
                for (int i = 0; i + 3 < rank_; ++i) arrow(i, i + 1);
                arrow(rank_ - 2, rank_ - 3);
                arrow(rank_ - 1, rank_ - 3);
                break;
            case CartanType::E:
                arrow(0, 1);
                arrow(1, 2);
                arrow(4, 3);
                arrow(3, 2);
                arrow(5, 2);
                break;
        }
    }

    void build_roots() {
        std::vector<Root> found;
        std::map<Root, int> seen;
        for (int i = 0; i < rank_; ++i) {
            found.push_back(unit(i));
            seen[unit(i)] = 1;
        }
        for (std::size_t k = 0; k < found.size(); ++k) {
            for (int i = 0; i < rank_; ++i) {
                if (inner(found[k], unit(i)) != -1) continue;
                Root next = found[k];
                next[i] += 1;
                if (seen.emplace(next, 1).second) found.push_back(next);
            }
        }
        std::sort(found.begin(), found.end(), root_order_less);
        positive_ = found;
        for (int p = 0; p < num_positive(); ++p) pos_lookup_[positive_[p]] = p;
    }

    int sign_of(int idx) const { return is_positive(idx) ? 1 : -1; }

    void build_structure_constants() {
        const int n = dim();
        table_.assign(static_cast<std::size_t>(n) * n, {});
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                auto& out = table_[a * n + b];
                bool ca = is_cartan(a), cb = is_cartan(b);
                if (ca && cb) continue;
                if (ca) {
                    int v = 0;
                    Root beta = root_of(b);
                    for (int j = 0; j < rank_; ++j) v += cartan_[a - num_positive()][j] * beta[j];
                    if (v != 0) out.emplace_back(b, v);
                    continue;
                }
                if (cb) {
                    int v = 0;
                    Root beta = root_of(a);
                    for (int j = 0; j < rank_; ++j) v += cartan_[b - num_positive()][j] * beta[j];
                    if (v != 0) out.emplace_back(a, -v);
                    continue;
                }
                Root x = root_of(a), y = root_of(b);
                Root s(rank_);
                bool zero = true;
                for (int i = 0; i < rank_; ++i) {
                    s[i] = x[i] + y[i];
                    if (s[i] != 0) zero = false;
                }
                if (zero) {
                    // [e_b, f_b] = h_b = sum c_i h_i for simply-laced types; [f_b, e_b] = -h_b
                    for (int i = 0; i < rank_; ++i)
                        if (x[i] != 0) out.emplace_back(cartan_index(i), x[i]);
                    continue;
                }
                int k = index_of_root(s);
                if (k < 0) continue;
                // g_b = sign(b) E_b with [E_x, E_y] = eps(x,y) E_{x+y}
                int v = sign_of(a) * sign_of(b) * sign_of(k) * epsilon(x, y);
                out.emplace_back(k, v);
            }
        }
    }

    void build_killing() {
        const int n = dim();
        killing_.assign(static_cast<std::size_t>(n) * n, 0);
        for (int a = 0; a < n; ++a) {
            for (int b = a; b < n; ++b) {
                // weights must cancel
                Root x = root_of(a), y = root_of(b);
                bool opposite = true;
                for (int i = 0; i < rank_; ++i) opposite = opposite && (x[i] + y[i] == 0);
                if (!opposite) continue;
                long tr = 0;
                for (int c = 0; c < n; ++c) {
                    for (const auto& [d, v1] : basis_bracket(b, c)) {
                        for (const auto& [e, v2] : basis_bracket(a, d)) {
                            if (e == c) tr += static_cast<long>(v1) * v2;
                        }
                    }
                }
                killing_[a * n + b] = killing_[b * n + a] = tr;
            }
        }
    }

    void check_same(const ChevalleyElement& x) const {
        if (x.system != nullptr && x.system != this) throw std::invalid_argument("mismatched root systems");
    }

    CartanType type_;
    int rank_;
    std::vector<std::vector<int>> cartan_;
    std::vector<std::vector<bool>> eps_neg_;
    std::vector<Root> positive_;
    std::map<Root, int> pos_lookup_;
    std::vector<std::vector<std::pair<int, int>>> table_;
    std::vector<long> killing_;
};

}  // namespace kmgrowth
