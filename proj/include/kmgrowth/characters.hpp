#pragma once

#include <gmpxx.h>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmgrowth {

// Truncated power series c_0 + c_1 s + ... + c_N s^N with integer coefficients.
class PowerSeries {
public:
    explicit PowerSeries(int n, long constant = 1) : c_(static_cast<std::size_t>(n) + 1, 0) {
        if (n < 0) throw std::invalid_argument("truncation order must be nonnegative");
        c_[0] = constant;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const mpz_class& operator[](int n) const { return c_.at(static_cast<std::size_t>(n)); }
    const std::vector<mpz_class>& coefficients() const { return c_; }

    // Multiplies by 1/(1 - s^j) (times > 0) or (1 - s^j) (times < 0), |times| times.
    void euler_factor(int j, long times) {
        if (j < 1) throw std::invalid_argument("exponent must be positive");
        const int n = order();
        for (long t = 0; t < times; ++t)
            for (int i = j; i <= n; ++i) c_[i] += c_[i - j];
        for (long t = 0; t < -times; ++t)
            for (int i = n; i >= j; --i) c_[i] -= c_[i - j];
    }
    // Multiplies by (1 + s^j).
    void plus_factor(int j) {
        for (int i = order(); i >= j; --i) c_[i] += c_[i - j];
    }

    bool dominates(const PowerSeries& o) const {
        if (o.order() != order()) throw std::invalid_argument("series orders differ");
        for (int i = 0; i <= order(); ++i)
            if (c_[i] < o.c_[i]) return false;
        return true;
    }
    bool nonnegative() const {
        for (const auto& v : c_)
            if (v < 0) return false;
        return true;
    }
    friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<mpz_class> c_;
};

// prod_j (1 - s^j)^(-b_j), truncated at s^N.
inline PowerSeries euler_product(const std::map<int, long>& b, int n) {
    PowerSeries out(n);
    for (const auto& [j, bj] : b)
        if (j >= 1 && j <= n && bj != 0) out.euler_factor(j, bj);
    return out;
}

inline std::map<int, long> integrable_exponents(int k, int n) {
    if (k < 1) throw std::invalid_argument("level must be positive");
    std::map<int, long> b;
    const int k1 = k + 1;
    for (int j = 1; j <= n; ++j) {
        long v;
        if (k % 2 == 0) {
            if (j % k1 == 0) v = 0;
            else v = j % 2 == 1 ? 2 : 1;
        } else {
            if (j % (2 * k1) == 0) v = 0;
            else if (j % k1 == 0) v = -1;
            else v = j % 2 == 1 ? 2 : 1;
        }
        b[j] = v;
    }
    return b;
}

struct HilbertSeries {
    PowerSeries series;
    bool exact = false;  // false: a coefficientwise lower bound
};

// Principal-gradation Hilbert series of the integrable module with weights (k1, k2).
inline HilbertSeries hilb_integrable(int k1, int k2, int n) {
    if (k1 < 0 || k2 < 0) throw std::invalid_argument("weights must be nonnegative");
    if (k1 == 0 && k2 == 0) throw std::invalid_argument("the trivial module (0,0) is excluded");
    if (k1 == k2) return {euler_product(integrable_exponents(k1, n), n), true};
    std::map<int, long> odd;
    for (int j = 1; j <= n; j += 2) odd[j] = 1;
    return {euler_product(odd, n), false};
}

// prod_{j>=0} 1/(1 - s^{(k+1)j+1}): partitions into parts congruent to 1 mod k+1.
inline PowerSeries congruent_part_series(int k, int n) {
    std::map<int, long> b;
    for (int j = 1; j <= n; j += k + 1) b[j] = 1;
    return euler_product(b, n);
}

// For odd k, the rearranged product of the odd case and the intermediate bound with the
// (1 + s^{(k+1)(2j+1)/2}) numerators.
struct OddCaseProducts {
    PowerSeries rearranged;
    PowerSeries intermediate;
};

inline OddCaseProducts odd_case_products(int k, int n) {
    if (k < 1 || k % 2 == 0) throw std::invalid_argument("k must be odd and positive");
    const int k1 = k + 1;
    PowerSeries rearranged(n), intermediate(n);
    for (int j = 0; (k1 * j) + 1 <= n; ++j) {
        for (int i = 1; i <= k1 / 2; ++i)
            if (k1 * j + 2 * i - 1 <= n) rearranged.euler_factor(k1 * j + 2 * i - 1, 2);
        for (int i = 1; i <= (k - 1) / 2; ++i)
            if (k1 * j + 2 * i <= n) rearranged.euler_factor(k1 * j + 2 * i, 1);
        intermediate.euler_factor(k1 * j + 1, 1);
    }
    for (int j = 0; k1 * (2 * j + 1) <= n; ++j) rearranged.euler_factor(k1 * (2 * j + 1), -1);
    for (int j = 0; k1 * (2 * j + 1) / 2 <= n; ++j) intermediate.plus_factor(k1 * (2 * j + 1) / 2);
    return {rearranged, intermediate};
}

struct PartPredicate {
    enum class Kind { Unrestricted, Odd, Mod };
    Kind kind = Kind::Unrestricted;
    int modulus = 1, residue = 0;

    static PartPredicate unrestricted() { return {}; }
    static PartPredicate odd() { return {Kind::Odd, 2, 1}; }
    static PartPredicate mod(int m, int rho) {
        if (m < 1) throw std::invalid_argument("modulus must be positive");
        return {Kind::Mod, m, ((rho % m) + m) % m};
    }
    bool allows(int part) const {
        switch (kind) {
            case Kind::Unrestricted: return true;
            case Kind::Odd: return part % 2 == 1;
            case Kind::Mod: return part % modulus == residue;
        }
        return false;
    }
};

// Partition counts 0..n with parts restricted by the predicate.
inline std::vector<mpz_class> partition_table(int n, const PartPredicate& p) {
    if (n < 0) throw std::invalid_argument("n must be nonnegative");
    std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1, 0);
    c[0] = 1;
    for (int part = 1; part <= n; ++part) {
        if (!p.allows(part)) continue;
        for (int i = part; i <= n; ++i) c[i] += c[i - part];
    }
    return c;
}

inline mpz_class count_partitions(int n, const PartPredicate& p = PartPredicate::unrestricted()) {
    return partition_table(n, p).back();
}

// Partitions into distinct parts, counted by a 0/1 knapsack.
inline std::vector<mpz_class> distinct_partition_table(int n) {
    std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1, 0);
    c[0] = 1;
    for (int part = 1; part <= n; ++part)
        for (int i = n; i >= part; --i) c[i] += c[i - part];
    return c;
}

struct AsymptoticResult {
    mpz_class exact;
    std::string formula;            // decimal value of the stated formula
    double ratio = 0;               // exact / stated formula
    std::string corrected_formula;  // decimal value of the standard asymptotic for distinct partitions
    double corrected_ratio = 0;
};

// Odd-part partition count r_n against exp(pi L)/(2 * 24^(1/4) * L^(3/2)), L = sqrt(n - 1/24),
// and against exp(pi L / sqrt 3)/(4 * 3^(1/4) * L^(3/2)).
inline AsymptoticResult asymptotic_check(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    using Real = boost::multiprecision::cpp_dec_float_50;
    AsymptoticResult out;
    out.exact = count_partitions(n, PartPredicate::odd());
    const Real exact(out.exact.get_str());
    const Real pi = boost::math::constants::pi<Real>();
    const Real lam = sqrt(Real(n) - Real(1) / 24);
    const Real stated = exp(pi * lam) / (2 * pow(Real(24), Real(0.25)) * pow(lam, Real(1.5)));
    const Real corrected = exp(pi * lam / sqrt(Real(3))) / (4 * pow(Real(3), Real(0.25)) * pow(lam, Real(1.5)));
    out.formula = stated.str(20, std::ios_base::scientific);
    out.ratio = Real(exact / stated).convert_to<double>();
    out.corrected_formula = corrected.str(20, std::ios_base::scientific);
    out.corrected_ratio = Real(exact / corrected).convert_to<double>();
    return out;
}

struct WitnessEntry {
    int degree = 0;
    std::optional<int> n;  // smallest n >= 1 with c_n > n^degree, if reached
};

inline std::vector<WitnessEntry> superpoly_witness(const std::vector<mpz_class>& series, const std::vector<int>& degrees) {
    std::vector<WitnessEntry> out;
    for (int c : degrees) {
        WitnessEntry e{c, std::nullopt};
        for (std::size_t n = 1; n < series.size(); ++n) {
            mpz_class p;
            mpz_ui_pow_ui(p.get_mpz_t(), n, static_cast<unsigned long>(c));
            if (series[n] > p) {
                e.n = static_cast<int>(n);
                break;
            }
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace kmgrowth
