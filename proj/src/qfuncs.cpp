#include <lzeta/qfuncs.hpp>

#include <stdexcept>

namespace lzeta {

LaurentPoly gaussian_binomial(int a, int b, const std::string& var) {
    if (a < 0 || b < 0 || a < b)
        throw std::domain_error("gaussian_binomial: requires a >= b >= 0");
    std::vector<std::string> vars{var};
    // q-Pascal: binom(a,b) = binom(a-1,b-1) + X^b binom(a-1,b); exact, no
    // polynomial division needed.
    std::vector<LaurentPoly> row(1, LaurentPoly::constant(BigRational(1), vars));
    for (int n = 1; n <= a; ++n) {
        std::vector<LaurentPoly> next(size_t(n) + 1, LaurentPoly(vars));
        for (int k = 0; k <= n; ++k) {
            if (k == 0 || k == n) {
                next[size_t(k)] = LaurentPoly::constant(BigRational(1), vars);
                continue;
            }
            LaurentPoly xb = LaurentPoly::monomial(vars, ExpVec{k});
            next[size_t(k)] = row[size_t(k) - 1] + xb * row[size_t(k)];
        }
        row = std::move(next);
    }
    return row[size_t(b)];
}

LaurentPoly flag_binomial(int n, const std::set<int>& I, const std::string& var) {
    if (n < 1) throw std::domain_error("flag_binomial: n must be positive");
    for (int i : I)
        if (i < 1 || i > n - 1)
            throw std::domain_error("flag_binomial: index " + std::to_string(i) +
                                    " outside [1, n-1]");
    LaurentPoly out = LaurentPoly::constant(BigRational(1), {var});
    int upper = n;
    for (auto it = I.rbegin(); it != I.rend(); ++it) {
        out *= gaussian_binomial(upper, *it, var);
        upper = *it;
    }
    return out;
}

}  // namespace lzeta
