#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kmgrowth {

class DivisionByZero : public std::domain_error {
public:
    DivisionByZero() : std::domain_error("inversion of zero scalar") {}
};

namespace detail {

// Exact rational with an int64 fast path; spills to GMP when a numerator or denominator overflows.
class Rational {
public:
    Rational() = default;
    Rational(long v) : n_(v) {  // NOLINT(google-explicit-constructor)
        if (v == INT64_MIN) big_ = std::make_unique<mpq_class>(v);
    }
    explicit Rational(const mpq_class& q) { assign(q); }
    Rational(const Rational& o) : n_(o.n_), d_(o.d_), big_(o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr) {}
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            n_ = o.n_;
            d_ = o.d_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    int sign() const { return big_ ? sgn(*big_) : (n_ > 0) - (n_ < 0); }
    mpq_class to_mpq() const {
        if (big_) return *big_;
        mpq_class q;
        mpq_set_si(q.get_mpq_t(), n_, static_cast<unsigned long>(d_));
        return q;
    }
    std::string str() const {
        if (big_) return big_->get_str();
        return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
    }

    Rational operator-() const {
        if (big_) return Rational(mpq_class(-*big_));
        Rational r;
        r.n_ = -n_;
        r.d_ = d_;
        return r;
    }
    Rational& operator+=(const Rational& o) { return add(o, false); }
    Rational& operator-=(const Rational& o) { return add(o, true); }
    Rational& operator*=(const Rational& o) {
        if (!big_ && !o.big_ && d_ == 1 && o.d_ == 1) {
            std::int64_t n;
            if (!__builtin_mul_overflow(n_, o.n_, &n) && n != INT64_MIN) {
                n_ = n;
                return *this;
            }
        } else if (!big_ && !o.big_) {
            std::int64_t g1 = std::gcd(n_, o.d_), g2 = std::gcd(o.n_, d_);
            if (g1 == 0) g1 = 1;
            if (g2 == 0) g2 = 1;
            std::int64_t n, d;
            if (!__builtin_mul_overflow(n_ / g1, o.n_ / g2, &n) && !__builtin_mul_overflow(d_ / g2, o.d_ / g1, &d) &&
                n != INT64_MIN) {
                n_ = n;
                d_ = n == 0 ? 1 : d;
                return *this;
            }
        }
        assign(to_mpq() * o.to_mpq());
        return *this;
    }
    Rational inv() const { return Rational(mpq_class(1 / to_mpq())); }
    Rational& operator/=(const Rational& o) {
        assign(to_mpq() / o.to_mpq());
        return *this;
    }

    friend Rational operator+(Rational x, const Rational& y) { return x += y; }
    friend Rational operator-(Rational x, const Rational& y) { return x -= y; }
    friend Rational operator*(Rational x, const Rational& y) { return x *= y; }
    friend Rational operator/(Rational x, const Rational& y) { return x /= y; }
    friend bool operator==(const Rational& x, const Rational& y) {
        if (!x.big_ && !y.big_) return x.n_ == y.n_ && x.d_ == y.d_;
        return x.to_mpq() == y.to_mpq();
    }

private:
    Rational& add(const Rational& o, bool minus) {
        if (!big_ && !o.big_) {
            std::int64_t on = minus ? -o.n_ : o.n_;
            std::int64_t n;
            if (d_ == 1 && o.d_ == 1) {
                if (!__builtin_add_overflow(n_, on, &n) && n != INT64_MIN) {
                    n_ = n;
                    return *this;
                }
            } else {
                std::int64_t x, y, d;
                if (!__builtin_mul_overflow(n_, o.d_, &x) && !__builtin_mul_overflow(on, d_, &y) &&
                    !__builtin_add_overflow(x, y, &n) && !__builtin_mul_overflow(d_, o.d_, &d) && n != INT64_MIN) {
                    std::int64_t g = std::gcd(n, d);
                    n_ = n / g;
                    d_ = d / g;
                    return *this;
                }
            }
        }
        mpq_class r = to_mpq();
        if (minus) r -= o.to_mpq();
        else r += o.to_mpq();
        assign(r);
        return *this;
    }

    // Stores q, dropping back to the int64 form whenever it fits.
    void assign(const mpq_class& q) {
        if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() && q.get_num() != LONG_MIN) {
            n_ = q.get_num().get_si();
            d_ = q.get_den().get_si();
            big_.reset();
        } else {
            big_ = std::make_unique<mpq_class>(q);
            n_ = 0;
            d_ = 1;
        }
    }

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;  // > 0, coprime to n_
    std::unique_ptr<mpq_class> big_;
};

}  // namespace detail

// Element a + b*w of Q(w), w a primitive r-th root of unity.
// For r in {1,2} w is rational, so b is always zero; for r = 3, w^2 = -1 - w.
class Scalar {
    using Q = detail::Rational;

public:
    Scalar() = default;
    Scalar(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
    explicit Scalar(const mpq_class& a, int order = 1) : a_(canonical(a)), order_(static_cast<std::uint8_t>(order)) {}
    Scalar(const mpq_class& a, const mpq_class& b, int order)
        : a_(canonical(a)), b_(canonical(b)), order_(static_cast<std::uint8_t>(order)) {
        if (order_ != 3 && b_.sign() != 0) throw std::invalid_argument("w-coefficient requires r = 3");
    }

    static Scalar rational(long p, long q = 1) { return Scalar(mpq_class(p, q)); }

    // w^k for a primitive r-th root of unity w.
    static Scalar eta_pow(int r, long k) {
        if (r < 1 || r > 3) throw std::invalid_argument("order must be 1, 2 or 3");
        long e = ((k % r) + r) % r;
        if (r == 1 || e == 0) return Scalar(mpq_class(1), r);
        if (r == 2) return Scalar(mpq_class(-1), 2);
        if (e == 1) return Scalar(mpq_class(0), mpq_class(1), 3);
        return Scalar(mpq_class(-1), mpq_class(-1), 3);
    }

    mpq_class a() const { return a_.to_mpq(); }
    mpq_class b() const { return b_.to_mpq(); }
    int order() const { return order_; }
    bool is_zero() const { return a_.sign() == 0 && b_.sign() == 0; }
    bool is_rational() const { return b_.sign() == 0; }

    Scalar operator-() const {
        Scalar s = *this;
        s.a_ = -s.a_;
        if (s.b_.sign() != 0) s.b_ = -s.b_;
        return s;
    }
    Scalar& operator+=(const Scalar& o) {
        a_ += o.a_;
        if (o.b_.sign() != 0) b_ += o.b_;
        order_ = merge_order(order_, o.order_);
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        a_ -= o.a_;
        if (o.b_.sign() != 0) b_ -= o.b_;
        order_ = merge_order(order_, o.order_);
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        if (b_.sign() == 0 && o.b_.sign() == 0) {
            a_ *= o.a_;
        } else {
            // (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
            Q bd = b_ * o.b_;
            Q na = a_ * o.a_ - bd;
            Q nb = a_ * o.b_ + b_ * o.a_ - bd;
            a_ = std::move(na);
            b_ = std::move(nb);
        }
        order_ = merge_order(order_, o.order_);
        return *this;
    }
    Scalar inv() const {
        if (is_zero()) throw DivisionByZero();
        Scalar s;
        s.order_ = order_;
        if (b_.sign() == 0) {
            s.a_ = a_.inv();
            return s;
        }
        // norm(a + bw) = a^2 - ab + b^2, conjugate = (a - b) - bw
        Q n = a_ * a_ - a_ * b_ + b_ * b_;
        s.a_ = (a_ - b_) / n;
        s.b_ = -b_ / n;
        return s;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inv(); }

    friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
    friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
    friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
    friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }
    friend bool operator==(const Scalar& x, const Scalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }

    std::string str() const {
        if (b_.sign() == 0) return a_.str();
        std::string bs = b_.str() + "w";
        if (a_.sign() == 0) return bs;
        if (b_.sign() > 0) return a_.str() + "+" + bs;
        return a_.str() + bs;
    }

    // Parses p, p/q, p/q+p'/q'w, p/q-p'/q'w, p'/q'w, w, -w. Returns the number of characters consumed, 0 on failure.
    static std::size_t parse_prefix(std::string_view s, Scalar& out) {
        std::size_t pos = 0;
        mpq_class first;
        std::size_t n1 = parse_rational(s, pos, first);
        if (n1 == 0) {
            // bare w / -w / +w
            std::size_t p = 0;
            long sign = 1;
            if (p < s.size() && (s[p] == '-' || s[p] == '+')) sign = s[p++] == '-' ? -1 : 1;
            if (p < s.size() && s[p] == 'w') {
                out = Scalar(mpq_class(0), mpq_class(sign), 3);
                return p + 1;
            }
            return 0;
        }
        pos = n1;
        if (pos < s.size() && s[pos] == 'w') {
            out = Scalar(mpq_class(0), first, 3);
            return pos + 1;
        }
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            std::size_t p = pos;
            mpq_class second;
            std::size_t n2 = parse_rational(s, p, second);
            if (n2 != 0 && p + n2 < s.size() && s[p + n2] == 'w') {
                out = Scalar(first, second, 3);
                return p + n2 + 1;
            }
            if (p + 1 < s.size() && s[p + 1] == 'w') {
                out = Scalar(first, mpq_class(s[p] == '-' ? -1 : 1), 3);
                return p + 2;
            }
        }
        out = Scalar(first);
        return pos;
    }

    static Scalar parse(std::string_view s) {
        Scalar out;
        std::size_t n = parse_prefix(s, out);
        if (n == 0 || n != s.size()) throw std::invalid_argument("malformed scalar '" + std::string(s) + "'");
        return out;
    }

    std::size_t hash() const {
        return std::hash<std::string>{}(str());
    }

private:
    static Q canonical(mpq_class q) {
        q.canonicalize();
        return Q(q);
    }

    static std::uint8_t merge_order(std::uint8_t x, std::uint8_t y) { return x > y ? x : y; }

    // optional sign, digits, optional /digits
    static std::size_t parse_rational(std::string_view s, std::size_t start, mpq_class& out) {
        std::size_t p = start;
        std::string txt;
        if (p < s.size() && (s[p] == '-' || s[p] == '+')) {
            if (s[p] == '-') txt.push_back('-');
            ++p;
        }
        std::size_t digits = p;
        while (p < s.size() && s[p] >= '0' && s[p] <= '9') txt.push_back(s[p++]);
        if (p == digits) return 0;
        if (p + 1 < s.size() && s[p] == '/' && s[p + 1] >= '0' && s[p + 1] <= '9') {
            txt.push_back(s[p++]);
            bool nonzero = false;
            while (p < s.size() && s[p] >= '0' && s[p] <= '9') {
                nonzero = nonzero || s[p] != '0';
                txt.push_back(s[p++]);
            }
            if (!nonzero) return 0;
        }
        mpq_class q(txt, 10);
        q.canonicalize();
        out = q;
        return p - start;
    }

    Q a_;
    Q b_;
    std::uint8_t order_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace kmgrowth
