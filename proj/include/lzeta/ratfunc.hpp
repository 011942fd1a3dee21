#pragma once

/// Exact multivariate rational functions num/den over LaurentPoly.
///
/// Values are never reduced to lowest terms; equality is defined by
/// cross-multiplication (a/b = c/d iff a*d = c*b as Laurent polynomials).

#include <lzeta/laurent.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lzeta {

class RationalFunction {
public:
    RationalFunction() : num_(), den_(LaurentPoly::constant(BigRational(1))) {}
    RationalFunction(LaurentPoly num, LaurentPoly den);
    static RationalFunction from_poly(const LaurentPoly& p) {
        return RationalFunction(p, LaurentPoly::constant(BigRational(1), p.vars()));
    }
    static RationalFunction constant(const BigRational& c, std::vector<std::string> vars = {}) {
        return from_poly(LaurentPoly::constant(c, std::move(vars)));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFunction operator-() const { return RationalFunction(-num_, den_); }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    RationalFunction scaled(const BigRational& c) const {
        return RationalFunction(num_.scaled(c), den_);
    }

    /// Substitutes each variable by a monomial over a new universe; throws if
    /// the denominator collapses to zero.
    RationalFunction substitute_monomials(const std::vector<std::string>& new_vars,
                                          const std::vector<ExpVec>& images) const;

    std::string to_string() const;

private:
    LaurentPoly num_, den_;
};

/// True iff f.num*g.den = g.num*f.den.
bool rf_equal(const RationalFunction& f, const RationalFunction& g);

/// Replaces every variable in `vars` by its inverse, then clears negative
/// exponents from the denominator by scaling num and den with a common
/// monomial.
RationalFunction substitute_inverse(const RationalFunction& f,
                                    const std::vector<std::string>& vars);

/// If inv(f)/f is +-(monomial), returns (a, b-exponents); a = 1 for sign -1.
/// Exponents are reported over f's variable universe.
struct MonomialRatio {
    int sign_parity = 0;  // 0: +, 1: -
    ExpVec exponents;
};
std::optional<MonomialRatio> monomial_ratio(const RationalFunction& num,
                                            const RationalFunction& den);

/// Coefficients of var^0..var^order of the power series of f in `var`.
/// Requires the denominator, viewed as a series in var, to have a monomial
/// (hence invertible) constant term and f itself to have no negative powers
/// of var; otherwise throws std::domain_error.
std::vector<LaurentPoly> series_expand(const RationalFunction& f, const std::string& var,
                                       int order);

}  // namespace lzeta
