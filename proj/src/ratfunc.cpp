#include <lzeta/ratfunc.hpp>

#include <algorithm>
#include <stdexcept>

namespace lzeta {

RationalFunction::RationalFunction(LaurentPoly num, LaurentPoly den) {
    if (den.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
    auto uni = LaurentPoly::unify_vars(num.vars(), den.vars());
    num_ = num.embedded(uni);
    den_ = den.embedded(uni);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.num_.is_zero()) return b;
    if (b.num_.is_zero()) return a;
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num_.is_zero()) throw std::domain_error("RationalFunction: division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction RationalFunction::substitute_monomials(
    const std::vector<std::string>& new_vars, const std::vector<ExpVec>& images) const {
    LaurentPoly n = num_.substitute_monomials(new_vars, images);
    LaurentPoly d = den_.substitute_monomials(new_vars, images);
    if (d.is_zero())
        throw std::domain_error("RationalFunction: substitution collapses denominator to zero");
    return RationalFunction(n, d);
}

std::string RationalFunction::to_string() const {
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

bool rf_equal(const RationalFunction& f, const RationalFunction& g) {
    return f.num() * g.den() == g.num() * f.den();
}

RationalFunction substitute_inverse(const RationalFunction& f,
                                    const std::vector<std::string>& vars) {
    LaurentPoly n = f.num().invert_vars(vars);
    LaurentPoly d = f.den().invert_vars(vars);
    // Clear negative exponents in the denominator (and keep the numerator a
    // Laurent polynomial, which it stays by construction).
    const auto& uni = d.vars();
    ExpVec shift(uni.size(), 0);
    for (size_t v = 0; v < uni.size(); ++v) {
        int m = std::min(d.is_zero() ? 0 : d.min_exponent(v), 0);
        shift[v] = -m;
    }
    LaurentPoly mono = LaurentPoly::monomial(uni, shift);
    return RationalFunction(n.embedded(uni) * mono, d * mono);
}

std::optional<MonomialRatio> monomial_ratio(const RationalFunction& a,
                                            const RationalFunction& b) {
    // a/b = c * X^delta ?  Cross-multiplied: a.num*b.den = c X^delta b.num*a.den.
    LaurentPoly lhs = a.num() * b.den();
    LaurentPoly rhs = b.num() * a.den();
    if (rhs.is_zero() || lhs.is_zero()) return std::nullopt;
    const auto& lt = *lhs.terms().begin();
    const auto& rt = *rhs.terms().begin();
    size_t nv = lhs.vars().size();
    ExpVec delta(nv);
    for (size_t i = 0; i < nv; ++i) delta[i] = lt.first[i] - rt.first[i];
    BigRational c = lt.second / rt.second;
    if (!(c == BigRational(1) || c == BigRational(-1))) return std::nullopt;
    LaurentPoly mono = LaurentPoly::monomial(lhs.vars(), delta, c);
    if (!(lhs == rhs * mono)) return std::nullopt;
    MonomialRatio out;
    out.sign_parity = (c == BigRational(-1)) ? 1 : 0;
    out.exponents = delta;
    return out;
}

std::vector<LaurentPoly> series_expand(const RationalFunction& f, const std::string& var,
                                       int order) {
    if (order < 0) throw std::invalid_argument("series_expand: negative order");
    const auto& uni = f.den().vars();
    auto it = std::find(uni.begin(), uni.end(), var);
    if (it == uni.end()) throw std::invalid_argument("series_expand: unknown variable " + var);
    size_t v = size_t(it - uni.begin());

    LaurentPoly num = f.num().embedded(uni);
    LaurentPoly den = f.den();
    // Normalize so den has var-valuation 0.
    int dval = den.min_exponent(v);
    if (dval != 0) {
        ExpVec sh(uni.size(), 0);
        sh[v] = -dval;
        LaurentPoly mono = LaurentPoly::monomial(uni, sh);
        num = num * mono;
        den = den * mono;
    }
    auto dcoeffs = den.coefficients_in(v);
    auto d0 = dcoeffs.find(0);
    if (d0 == dcoeffs.end() || !d0->second.is_monomial())
        throw std::domain_error("series_expand: denominator constant term is not invertible");
    const LaurentPoly& unit = d0->second;

    auto ncoeffs = num.coefficients_in(v);
    if (!ncoeffs.empty() && ncoeffs.begin()->first < 0)
        throw std::domain_error("series_expand: negative powers of " + var);

    std::vector<LaurentPoly> out;
    out.reserve(size_t(order) + 1);
    for (int k = 0; k <= order; ++k) {
        LaurentPoly rhs(uni);
        auto nk = ncoeffs.find(k);
        if (nk != ncoeffs.end()) rhs = nk->second;
        for (int j = 0; j < k; ++j) {
            auto dj = dcoeffs.find(k - j);
            if (dj != dcoeffs.end()) rhs -= out[size_t(j)] * dj->second;
        }
        out.push_back(rhs.divided_by_monomial(unit));
    }
    return out;
}

}  // namespace lzeta
