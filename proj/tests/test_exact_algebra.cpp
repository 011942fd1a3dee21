#include <doctest.h>

#include <lzeta/laurent.hpp>
#include <lzeta/qfuncs.hpp>
#include <lzeta/ratfunc.hpp>

#include <random>
#include <set>

using namespace lzeta;

namespace {

const std::vector<std::string> QT{"Q", "T"};

RationalFunction geom(const std::string& var, const std::vector<std::string>& uni) {
    // 1/(1 - var)
    LaurentPoly one = LaurentPoly::constant(BigRational(1), uni);
    return RationalFunction(one, one - LaurentPoly::variable(uni, var));
}

// 1 - Q^a T^b
LaurentPoly qt_factor(int a, int b) {
    return LaurentPoly::constant(BigRational(1), QT) -
           LaurentPoly::monomial(QT, ExpVec{a, b});
}

// Small-field arithmetic for the subspace-count oracle.  q in {2,3,4,5};
// GF(4) is realized as F_2[x]/(x^2+x+1) on symbols {0,1,2,3}.
struct SmallField {
    int q;
    int add(int a, int b) const {
        if (q == 4) return a ^ b;
        return (a + b) % q;
    }
    int mul(int a, int b) const {
        if (q != 4) return (a * b) % q;
        static const int t[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
        return t[a][b];
    }
};

using FVec = std::vector<int>;

// Span of a subspace (given by its full point set) and one more vector:
// closes in a single pass since sp is already closed.
std::set<FVec> extend_span(const SmallField& F, const std::set<FVec>& sp, const FVec& w) {
    std::set<FVec> out;
    for (int c = 0; c < F.q; ++c) {
        FVec cw(w.size());
        for (size_t i = 0; i < w.size(); ++i) cw[i] = F.mul(c, w[i]);
        for (const auto& v : sp) {
            FVec u(w.size());
            for (size_t i = 0; i < w.size(); ++i) u[i] = F.add(v[i], cw[i]);
            out.insert(u);
        }
    }
    return out;
}

// Counts b-dimensional subspaces of F_q^a by breadth-first span closure.
long count_subspaces(int q, int a, int b) {
    SmallField F{q};
    std::vector<FVec> all;
    FVec v(size_t(a), 0);
    for (;;) {
        all.push_back(v);
        int i = 0;
        while (i < a && v[size_t(i)] == q - 1) v[size_t(i++)] = 0;
        if (i == a) break;
        ++v[size_t(i)];
    }
    std::set<std::set<FVec>> current{{FVec(size_t(a), 0)}};
    for (int d = 0; d < b; ++d) {
        std::set<std::set<FVec>> next;
        for (const auto& sp : current)
            for (const auto& w : all) {
                if (sp.count(w)) continue;
                next.insert(extend_span(F, sp, w));
            }
        current = std::move(next);
    }
    return long(current.size());
}

}  // namespace

TEST_CASE("BigRational canonical form") {
    CHECK(BigRational(2, 6) == BigRational(1, 3));
    CHECK(BigRational(-2, -6) == BigRational(1, 3));
    CHECK(BigRational(2, -6).den() == BigInt(3));
    CHECK(BigRational(2, -6).num() == BigInt(-1));
    CHECK(BigRational(0, 7).to_fraction_string() == "0/1");
    CHECK_THROWS_AS(BigRational(1, 0), std::domain_error);
}

TEST_CASE("LaurentPoly arithmetic and variable unification") {
    auto x = LaurentPoly::variable({"X", "Y"}, "X");
    auto y = LaurentPoly::variable({"Y"}, "Y");
    auto p = (x + y) * (x - y);
    auto x2 = LaurentPoly::monomial({"X", "Y"}, ExpVec{2, 0});
    auto y2 = LaurentPoly::monomial({"X", "Y"}, ExpVec{0, 2});
    CHECK(p == x2 - y2);

    // Common variables declared in different orders must be rejected.
    auto a = LaurentPoly::variable({"X", "Y"}, "X");
    auto b = LaurentPoly::variable({"Y", "X"}, "Y");
    CHECK_THROWS_AS(a + b, std::invalid_argument);

    CHECK(parse_poly("(1+q)*(1+q+q^2)", {"q"}) ==
          parse_poly("1 + 2q + 2q^2 + q^3", {"q"}));
    CHECK(parse_poly("q^-1 + 1", {"q"}).min_exponent(0) == -1);
}

TEST_CASE("rf_equal by cross-multiplication") {
    std::vector<std::string> X{"X"};
    auto one = LaurentPoly::constant(BigRational(1), X);
    auto x = LaurentPoly::variable(X, "X");
    // (1-X^2)/(1-X) = (1+X)/1
    RationalFunction f(one - x * x, one - x);
    RationalFunction g(one + x, one);
    CHECK(rf_equal(f, g));
    // X/(1-X) != 1/(1-X)
    CHECK_FALSE(rf_equal(RationalFunction(x, one - x), RationalFunction(one, one - x)));
}

TEST_CASE("rf_equal agrees with randomized evaluation on 100 pairs") {
    std::mt19937_64 rng(20260811);
    std::vector<std::string> uni{"X", "Y"};
    auto random_poly = [&](bool nonzero) {
        LaurentPoly p(uni);
        std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
        for (int t = 0; t < 4; ++t) p.add_term(ExpVec{e(rng), e(rng)}, BigRational(c(rng)));
        if (nonzero && p.is_zero()) p.add_term(ExpVec{0, 0}, BigRational(1));
        return p;
    };
    int checked = 0;
    while (checked < 100) {
        LaurentPoly n = random_poly(false), d = random_poly(true);
        RationalFunction f(n, d);
        bool make_equal = checked % 2 == 0;
        LaurentPoly h = random_poly(true);
        RationalFunction g = make_equal
                                 ? RationalFunction(n * h, d * h)
                                 : RationalFunction(n * h + d * h, d * h);  // f + 1
        bool eq = rf_equal(f, g);
        CHECK(eq == make_equal);
        // Evaluation verdict over sample points (skipping vanishing dens).
        bool all_equal = true;
        std::uniform_int_distribution<int> pt(2, 11);
        int samples = 0;
        while (samples < 8) {
            std::vector<BigRational> vals{BigRational(pt(rng)), BigRational(pt(rng))};
            if (f.den().evaluate(vals).is_zero() || g.den().evaluate(vals).is_zero()) continue;
            ++samples;
            auto lhs = f.num().evaluate(vals) * g.den().evaluate(vals);
            auto rhs = g.num().evaluate(vals) * f.den().evaluate(vals);
            if (!(lhs == rhs)) all_equal = false;
        }
        CHECK(all_equal == eq);
        ++checked;
    }
}

TEST_CASE("substitute_inverse basics") {
    std::vector<std::string> X{"X"};
    auto one = LaurentPoly::constant(BigRational(1), X);
    auto x = LaurentPoly::variable(X, "X");
    // 1/(1-X) -> -X/(1-X)
    auto f = RationalFunction(one, one - x);
    auto fi = substitute_inverse(f, {"X"});
    CHECK(rf_equal(fi, RationalFunction(-x, one - x)));

    // prod_{i=0}^{1} 1/(1-Q^i T) inverts to Q T^2 times itself.
    auto oneqt = LaurentPoly::constant(BigRational(1), QT);
    RationalFunction g(oneqt, qt_factor(0, 1) * qt_factor(1, 1));
    auto gi = substitute_inverse(g, QT);
    auto expected = g * RationalFunction::from_poly(LaurentPoly::monomial(QT, ExpVec{1, 2}));
    CHECK(rf_equal(gi, expected));

    // Heisenberg representation zeta: (1-T)/(1-QT) inverts to Q times itself.
    RationalFunction h(qt_factor(0, 1), qt_factor(1, 1));
    CHECK(rf_equal(substitute_inverse(h, QT),
                   h * RationalFunction::from_poly(LaurentPoly::monomial(QT, ExpVec{1, 0}))));
}

TEST_CASE("substitute_inverse is an involution") {
    std::mt19937_64 rng(7);
    std::vector<std::string> uni{"Q", "T"};
    std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
    for (int trial = 0; trial < 25; ++trial) {
        LaurentPoly n(uni), d(uni);
        for (int t = 0; t < 3; ++t) {
            n.add_term(ExpVec{e(rng), e(rng)}, BigRational(c(rng)));
            d.add_term(ExpVec{e(rng), e(rng)}, BigRational(c(rng)));
        }
        if (d.is_zero()) d.add_term(ExpVec{0, 0}, BigRational(1));
        RationalFunction f(n, d);
        auto ff = substitute_inverse(substitute_inverse(f, uni), uni);
        CHECK(rf_equal(f, ff));
    }
}

TEST_CASE("gaussian_binomial values and brute-force subspace counts") {
    CHECK(gaussian_binomial(1, 0) == LaurentPoly::constant(BigRational(1), {"X"}));
    CHECK(gaussian_binomial(2, 1) == parse_poly("1 + X", {"X"}));
    CHECK(gaussian_binomial(4, 2) == parse_poly("1 + X + 2*X^2 + X^3 + X^4", {"X"}));
    CHECK_THROWS_AS(gaussian_binomial(1, 2), std::domain_error);

    for (int q : {2, 3, 4, 5})
        for (int a = 1; a <= 4; ++a)
            for (int b = 0; b <= a; ++b) {
                // Keep the enumeration at a few million set-inserts.
                long states = 1;
                for (int i = 0; i < a; ++i) states *= q;
                long work = states;  // vectors to try per level
                for (int i = 0; i < b; ++i) work *= states;
                if (work > 300000000L) continue;
                auto val = gaussian_binomial(a, b).evaluate({BigRational(q)});
                CHECK(val == BigRational(count_subspaces(q, a, b)));
            }
}

TEST_CASE("flag_binomial") {
    CHECK(flag_binomial(3, {}) == LaurentPoly::constant(BigRational(1), {"X"}));
    CHECK(flag_binomial(2, {1}) == parse_poly("1 + X", {"X"}));
    // Full flags in F_2^3: brute-force count is 21.
    CHECK(flag_binomial(3, {1, 2}).evaluate({BigRational(2)}) == BigRational(21));
    CHECK_THROWS_AS(flag_binomial(3, {3}), std::domain_error);
}

TEST_CASE("series_expand") {
    auto one = LaurentPoly::constant(BigRational(1), QT);
    auto q = LaurentPoly::variable(QT, "Q");

    // 1/(1-QT) in T: geometric series 1, Q, Q^2, Q^3.
    auto f = RationalFunction(one, qt_factor(1, 1));
    auto coeffs = series_expand(f, "T", 3);
    REQUIRE(coeffs.size() == 4);
    CHECK(coeffs[0] == one);
    CHECK(coeffs[1] == q);
    CHECK(coeffs[2] == q * q);
    CHECK(coeffs[3] == q * q * q);

    // (1-T)/(1-QT): Euler totient coefficients 1, Q-1, Q^2-Q.
    auto g = RationalFunction(qt_factor(0, 1), qt_factor(1, 1));
    auto gc = series_expand(g, "T", 2);
    CHECK(gc[0] == one);
    CHECK(gc[1] == q - one);
    CHECK(gc[2] == q * q - q);

    // 1/((1-T)(1-QT)): 1, 1+Q, 1+Q+Q^2.
    auto h = RationalFunction(one, qt_factor(0, 1) * qt_factor(1, 1));
    auto hc = series_expand(h, "T", 2);
    CHECK(hc[1] == one + q);
    CHECK(hc[2] == one + q + q * q);

    // Constant T-term 1+Q is not a unit of the Laurent ring.
    CHECK_THROWS_AS(
        series_expand(RationalFunction(one, one + q + LaurentPoly::variable(QT, "T")), "T", 2),
        std::domain_error);
}

TEST_CASE("series_expand of a product is the convolution of series") {
    auto one = LaurentPoly::constant(BigRational(1), QT);
    RationalFunction f(one + LaurentPoly::monomial(QT, ExpVec{2, 1}), qt_factor(1, 1));
    RationalFunction g(qt_factor(0, 1), qt_factor(2, 2));
    int order = 6;
    auto cf = series_expand(f, "T", order);
    auto cg = series_expand(g, "T", order);
    auto cfg = series_expand(f * g, "T", order);
    for (int k = 0; k <= order; ++k) {
        LaurentPoly conv(QT);
        for (int j = 0; j <= k; ++j) conv += cf[size_t(j)] * cg[size_t(k - j)];
        CHECK(cfg[size_t(k)] == conv);
    }
}

TEST_CASE("monomial_ratio discovery") {
    auto one = LaurentPoly::constant(BigRational(1), QT);
    RationalFunction f(one, qt_factor(1, 1));  // 1/(1-QT)
    auto fi = substitute_inverse(f, QT);
    auto r = monomial_ratio(fi, f);
    REQUIRE(r.has_value());
    CHECK(r->sign_parity == 1);
    CHECK(r->exponents == ExpVec{1, 1});

    // 1+T is palindromic: ratio T^-1.
    RationalFunction g = RationalFunction::from_poly(one + LaurentPoly::variable(QT, "T"));
    auto gi = substitute_inverse(g, QT);
    auto rg = monomial_ratio(gi, g);
    REQUIRE(rg.has_value());
    CHECK(rg->sign_parity == 0);
    CHECK(rg->exponents == ExpVec{0, -1});

    // 1 + T + T^3 has no monomial functional equation.
    LaurentPoly p = one + LaurentPoly::monomial(QT, ExpVec{0, 1}) +
                    LaurentPoly::monomial(QT, ExpVec{0, 3});
    RationalFunction h = RationalFunction::from_poly(p);
    CHECK_FALSE(monomial_ratio(substitute_inverse(h, QT), h).has_value());
}
