#pragma once

/// Exact arbitrary-precision integers and rationals, backed by GMP.
///
/// BigRational keeps gcd(|num|, den) = 1 and den >= 1 at all times;
/// mpq_class does not canonicalize on its own, so every constructor here
/// does it explicitly.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lzeta {

using BigInt = mpz_class;

class BigRational {
public:
    BigRational() : q_(0) {}
    BigRational(long n) : q_(n) {}
    BigRational(const BigInt& n) : q_(n) {}
    BigRational(const BigInt& num, const BigInt& den) : q_(num, den) {
        if (den == 0) throw std::domain_error("BigRational: zero denominator");
        q_.canonicalize();
    }
    BigRational(long num, long den) : BigRational(BigInt(num), BigInt(den)) {}

    const mpq_class& raw() const { return q_; }
    BigInt num() const { return q_.get_num(); }
    BigInt den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    BigRational operator-() const { return BigRational(mpq_class(-q_)); }
    BigRational& operator+=(const BigRational& o) { q_ += o.q_; return *this; }
    BigRational& operator-=(const BigRational& o) { q_ -= o.q_; return *this; }
    BigRational& operator*=(const BigRational& o) { q_ *= o.q_; return *this; }
    BigRational& operator/=(const BigRational& o) {
        if (o.is_zero()) throw std::domain_error("BigRational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
    friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
    friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
    friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

    friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const BigRational& a, const BigRational& b) { return a.q_ != b.q_; }
    friend bool operator<(const BigRational& a, const BigRational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const BigRational& a, const BigRational& b) { return a.q_ <= b.q_; }

    /// "num/den", the canonical serialized form ("3/1" for integers).
    std::string to_fraction_string() const {
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }
    /// Shorter human form: omits "/1".
    std::string to_string() const {
        if (is_integer()) return q_.get_num().get_str();
        return to_fraction_string();
    }

private:
    explicit BigRational(mpq_class q) : q_(std::move(q)) {}
    mpq_class q_;
};

inline BigInt int_pow(const BigInt& base, unsigned long e) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline BigInt int_pow(unsigned long base, unsigned long e) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

/// p-adic valuation of a nonzero integer; throws on 0.
inline unsigned long p_valuation(const BigInt& x, const BigInt& p) {
    if (x == 0) throw std::domain_error("p_valuation of zero");
    BigInt a = abs(x);
    unsigned long v = 0;
    while (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t())) {
        a /= p;
        ++v;
    }
    return v;
}

}  // namespace lzeta
