#pragma once

/// Multivariate Laurent polynomials with exact rational coefficients.
///
/// Exponents are bounded machine integers (all objects in this domain have
/// tiny exponents); coefficients are unbounded.  Each polynomial carries an
/// ordered list of variable names.  Binary operations unify the two lists by
/// name: variables common to both operands must appear in the same relative
/// order, otherwise the operation throws.  Terms are kept in a std::map
/// keyed by exponent vector, so iteration order (and hence serialization)
/// is canonical.

#include <lzeta/rational.hpp>

#include <map>
#include <string>
#include <vector>

namespace lzeta {

using ExpVec = std::vector<int>;

class LaurentPoly {
public:
    LaurentPoly() = default;
    explicit LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static LaurentPoly constant(const BigRational& c, std::vector<std::string> vars = {});
    static LaurentPoly monomial(std::vector<std::string> vars, const ExpVec& exps,
                                const BigRational& c = BigRational(1));
    /// The variable `name` inside the universe `vars`.
    static LaurentPoly variable(const std::vector<std::string>& vars, const std::string& name);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::map<ExpVec, BigRational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// True iff the polynomial is a single term (a unit of the Laurent ring).
    bool is_monomial() const { return terms_.size() == 1; }
    BigRational constant_value() const;  // throws unless constant

    void add_term(const ExpVec& exps, const BigRational& c);

    LaurentPoly operator-() const;
    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    LaurentPoly& operator+=(const LaurentPoly& o) { return *this = *this + o; }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this = *this - o; }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

    LaurentPoly scaled(const BigRational& c) const;
    /// Divides by a single-term polynomial (always exact in the Laurent ring).
    LaurentPoly divided_by_monomial(const LaurentPoly& mono) const;

    /// Replaces every variable in `names` by its inverse.
    LaurentPoly invert_vars(const std::vector<std::string>& names) const;

    /// Substitutes each variable by a monomial in a new variable universe.
    /// `images` maps old variable index -> exponent vector over `new_vars`.
    LaurentPoly substitute_monomials(const std::vector<std::string>& new_vars,
                                     const std::vector<ExpVec>& images) const;

    /// Extends the polynomial to a larger variable universe.
    LaurentPoly embedded(const std::vector<std::string>& universe) const;

    BigRational evaluate(const std::vector<BigRational>& values) const;

    /// Smallest exponent of variable `v` over all terms (0 if poly is zero).
    int min_exponent(size_t v) const;
    int max_exponent(size_t v) const;

    /// Views the polynomial as a univariate polynomial in vars()[v]: returns
    /// the map exponent-of-v -> coefficient (a Laurent polynomial in the
    /// remaining variables, expressed in the full universe with v-exponent 0).
    std::map<int, LaurentPoly> coefficients_in(size_t v) const;

    /// Canonical text: terms sorted lexicographically by exponent vector,
    /// coefficients as "num/den".
    std::string to_string() const;

    /// Merged variable universe; throws if the operands order common
    /// variables inconsistently.
    static std::vector<std::string> unify_vars(const std::vector<std::string>& a,
                                               const std::vector<std::string>& b);

private:
    std::vector<std::string> vars_;
    std::map<ExpVec, BigRational> terms_;  // no zero coefficients stored
};

/// Parses "1 - 3*q^2 + q*t" over the given universe. Supports + - * ^ ( ),
/// integer literals and variable names; ^ takes an integer (possibly
/// negative) literal exponent.
LaurentPoly parse_poly(const std::string& text, const std::vector<std::string>& vars);

}  // namespace lzeta
