#include <doctest.h>

#include <lzeta/census.hpp>
#include <lzeta/qfuncs.hpp>
#include <lzeta/ratfunc.hpp>

using namespace lzeta;

#ifndef LZETA_TEST_DATA
#define LZETA_TEST_DATA "tests/data"
#endif

static std::string data(const std::string& name) {
    return std::string(LZETA_TEST_DATA) + "/" + name;
}

namespace {

const std::vector<std::string> QT{"Q", "T"};

LaurentPoly qt_one() { return LaurentPoly::constant(BigRational(1), QT); }
LaurentPoly qt_factor(int a, int b) {
    return qt_one() - LaurentPoly::monomial(QT, ExpVec{a, b});
}

// Coefficients of prod 1/(1 - Q^{a_i} T^{b_i}) at Q = p, to order kmax.
std::vector<BigRational> euler_coeffs(const std::vector<std::pair<int, int>>& factors, long p,
                                      unsigned long kmax) {
    RationalFunction f = RationalFunction::from_poly(qt_one());
    for (auto [a, b] : factors) f = f * RationalFunction(qt_one(), qt_factor(a, b));
    auto series = series_expand(f, "T", int(kmax));
    std::vector<BigRational> out;
    for (const auto& c : series) out.push_back(c.evaluate({BigRational(p), BigRational(0)}));
    return out;
}

long count_cells(int n, long p, unsigned long k) {
    long c = 0;
    enumerate_sublattices(n, p, k, [&](const std::vector<i64>&) { ++c; });
    return c;
}

}  // namespace

TEST_CASE("enumerate_sublattices counts match the Z^n zeta function") {
    CHECK(count_cells(2, 2, 0) == 1);
    CHECK(count_cells(2, 2, 1) == 3);
    // n=3, p=3, k=2: coefficient of 1/((1-T)(1-QT)(1-Q^2 T)) at Q=3 is 130.
    auto expect = euler_coeffs({{0, 1}, {1, 1}, {2, 1}}, 3, 2);
    CHECK(BigRational(count_cells(3, 3, 2)) == expect[2]);
    // Cells are distinct lattices: spot-check determinant and shape.
    enumerate_sublattices(2, 2, 2, [&](const std::vector<i64>& cell) {
        CHECK(cell[1] == 0);
        CHECK(cell[0] * cell[3] == 4);
        CHECK(cell[2] < cell[0]);
    });
}

TEST_CASE("is_subring examples") {
    auto heis = parse_ring_file(data("heisenberg.ring"));
    auto triv = parse_ring_file(data("trivial2.ring"));
    BigInt p(2);

    auto pid = IntegerMatrix::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
    CHECK(is_subring(pid, heis, p));

    CHECK(is_subring(IntegerMatrix::from_rows({{2, 0}, {0, 2}}), triv, p));

    // Dropping index p from the central coordinate loses [x1,x2] = y.
    auto bad = IntegerMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    CHECK_FALSE(is_subring(bad, heis, p));
    // ... but scaling the whole lattice is fine.
    auto good = IntegerMatrix::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 4}});
    CHECK(is_subring(good, heis, p));
}

TEST_CASE("is_ideal examples") {
    auto heis = parse_ring_file(data("heisenberg.ring"));
    BigInt p(2);
    CHECK_FALSE(is_ideal(IntegerMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}), heis, p));
    CHECK(is_ideal(IntegerMatrix::from_rows({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}), heis, p));
    // For the trivial ring, ideal == sublattice.
    auto triv = parse_ring_file(data("trivial2.ring"));
    enumerate_sublattices(2, 2, 2, [&](const std::vector<i64>& cell) {
        IntegerMatrix m(2, 2);
        for (size_t i = 0; i < 2; ++i)
            for (size_t j = 0; j < 2; ++j) m.at(i, j) = long(cell[i * 2 + j]);
        CHECK(is_ideal(m, triv, p));
    });
}

TEST_CASE("normalizer_weight basics and brute force") {
    auto heis = parse_ring_file(data("heisenberg.ring"));
    auto triv = parse_ring_file(data("trivial3.ring"));
    CHECK(normalizer_weight(IntegerMatrix::identity(3), heis, BigInt(5)) == 0);
    CHECK(normalizer_weight(IntegerMatrix::from_rows({{3, 0, 0}, {0, 3, 0}, {0, 0, 3}}), triv,
                            BigInt(3)) == 0);

    for (long p : {2L, 3L}) {
        auto m = IntegerMatrix::from_rows({{p, 0, 0}, {0, p, 0}, {0, 0, 1}});
        REQUIRE(is_subring(m, heis, BigInt(p)));
        unsigned long e = normalizer_weight(m, heis, BigInt(p));
        // Brute force: x mod p^2 with [x, row_i] in Lambda for all i.
        unsigned long N = 2;  // v_p(det)
        long mod = p * p;
        long solutions = 0;
        for (long x0 = 0; x0 < mod; ++x0)
            for (long x1 = 0; x1 < mod; ++x1)
                for (long x2 = 0; x2 < mod; ++x2) {
                    std::vector<BigInt> x{BigInt(x0), BigInt(x1), BigInt(x2)};
                    bool ok = true;
                    for (size_t i = 0; i < 3 && ok; ++i) {
                        auto prod = heis.product(x, m.row(i));
                        // [x, M_i] in Lambda mod p^N: solve membership of
                        // prod + p^N * anything; membership is linear, so
                        // test all p^N-translates via the exact test on a
                        // representative plus lattice reduction.
                        std::vector<BigInt> probe = prod;
                        ok = false;
                        // x determines [x, M_i] exactly (bilinear), so the
                        // membership of the representative decides it as
                        // long as p^N Z^3 is inside Lambda, which holds
                        // since det = p^N.
                        ok = membership_test(probe, m, BigInt(p));
                    }
                    if (ok) ++solutions;
                }
        // |(Z/p^2)^3| / |N(Lambda) mod p^2| = p^e
        CHECK(BigInt(solutions) * int_pow(static_cast<unsigned long>(p), e) ==
              int_pow(static_cast<unsigned long>(p), 3 * N));
    }
}

TEST_CASE("census kernel agrees with the public predicates cell by cell") {
    for (const char* name : {"heisenberg.ring", "sl2.ring"}) {
        auto spec = parse_ring_file(data(name));
        for (long p : {2L, 3L}) {
            unsigned long kmax = 3;
            auto sub = census(spec, CensusKind::subring, p, kmax, 1);
            auto idl = census(spec, CensusKind::ideal, p, kmax, 1);
            std::vector<long> sub_ref(kmax + 1, 0), idl_ref(kmax + 1, 0);
            sub_ref[0] = idl_ref[0] = 1;
            for (unsigned long k = 1; k <= kmax; ++k)
                enumerate_sublattices(spec.rank, p, k, [&](const std::vector<i64>& cell) {
                    IntegerMatrix m(size_t(spec.rank), size_t(spec.rank));
                    for (size_t i = 0; i < m.rows(); ++i)
                        for (size_t j = 0; j < m.cols(); ++j)
                            m.at(i, j) = long(cell[i * m.cols() + j]);
                    if (is_subring(m, spec, BigInt(p))) ++sub_ref[k];
                    if (is_ideal(m, spec, BigInt(p))) ++idl_ref[k];
                });
            for (unsigned long k = 0; k <= kmax; ++k) {
                CHECK(sub.coeffs[k] == BigRational(sub_ref[k]));
                CHECK(idl.coeffs[k] == BigRational(idl_ref[k]));
            }
        }
    }
}

TEST_CASE("census: trivial rank-2 baseline") {
    auto triv = parse_ring_file(data("trivial2.ring"));
    auto t = census(triv, CensusKind::subring, 2, 3);
    REQUIRE(t.coeffs.size() == 4);
    CHECK(t.coeffs[0] == BigRational(1));
    CHECK(t.coeffs[1] == BigRational(3));
    CHECK(t.coeffs[2] == BigRational(7));
    CHECK(t.coeffs[3] == BigRational(15));
}

TEST_CASE("census: heisenberg subring and ideal tables") {
    auto heis = parse_ring_file(data("heisenberg.ring"));
    auto sub2 = census(heis, CensusKind::subring, 2, 3);
    CHECK(sub2.coeffs[1] == BigRational(3));  // 1 + p index-p subalgebras

    // Ideal tables match zeta_p(s) zeta_p(s-1) zeta_p(3s-2) across primes.
    for (long p : {2L, 3L, 5L}) {
        auto idl = census(heis, CensusKind::ideal, p, 3);
        auto expect = euler_coeffs({{0, 1}, {1, 1}, {2, 3}}, p, 3);
        for (size_t k = 0; k < idl.coeffs.size(); ++k) CHECK(idl.coeffs[k] == expect[k]);
    }
}

TEST_CASE("census: monotonicity and conjugacy bounds") {
    auto heis = parse_ring_file(data("heisenberg.ring"));
    for (long p : {2L, 3L}) {
        unsigned long kmax = 3;
        auto sub = census(heis, CensusKind::subring, p, kmax);
        auto idl = census(heis, CensusKind::ideal, p, kmax);
        auto cc = census(heis, CensusKind::conjugacy, p, kmax);
        for (unsigned long k = 0; k <= kmax; ++k) {
            CHECK(idl.coeffs[k] <= sub.coeffs[k]);
            CHECK(cc.coeffs[k] <= sub.coeffs[k]);
            CHECK(sub.coeffs[k] <= BigRational(count_cells(3, p, k)));
            // Conjugacy denominators are p-powers.
            BigInt den = cc.coeffs[k].den();
            while (den % p == 0) den /= p;
            CHECK(den == 1);
        }
    }
}

TEST_CASE("census: conjugacy kind rejected for non-lie rings") {
    RingSpec spec = parse_ring("rank 2\nbracket 1 1 -> 2 : 1\n");
    CHECK_THROWS_AS(census(spec, CensusKind::conjugacy, 3, 2), std::domain_error);
    CHECK(census(spec, CensusKind::subring, 3, 1).coeffs.size() == 2);
}

TEST_CASE("census: scaled structure constants make shallow lattices subrings") {
    for (long p : {2L, 3L}) {
        std::string text = "rank 3\nflags lie\nbracket 1 2 -> 3 : " + std::to_string(p) + "\n";
        auto scaled = parse_ring(text);
        for (unsigned long k = 1; k <= 3; ++k)
            enumerate_sublattices(3, p, k, [&](const std::vector<i64>& cell) {
                IntegerMatrix m(3, 3);
                for (size_t i = 0; i < 3; ++i)
                    for (size_t j = 0; j < 3; ++j) m.at(i, j) = long(cell[i * 3 + j]);
                bool contains_pL = true;
                for (size_t r = 0; r < 3 && contains_pL; ++r) {
                    std::vector<BigInt> pe(3, BigInt(0));
                    pe[r] = p;
                    contains_pL = membership_test(pe, m, BigInt(p));
                }
                if (contains_pL) CHECK(is_subring(m, scaled, BigInt(p)));
            });
    }
}

TEST_CASE("census_by_class equals census on small instances") {
    for (const char* name :
         {"trivial2.ring", "trivial3.ring", "heisenberg.ring", "sl2.ring"}) {
        auto spec = parse_ring_file(data(name));
        for (long p : {2L, 3L}) {
            unsigned long kmax = 3;
            auto direct = census(spec, CensusKind::subring, p, kmax);
            auto byclass = census_by_class(spec, p, kmax);
            for (unsigned long k = 0; k <= kmax; ++k)
                CHECK(direct.coeffs[k] == byclass.coeffs[k]);
        }
    }
}

TEST_CASE("maximal class types satisfy the index formula") {
    for (int n : {2, 3})
        for (long p : {2L, 3L}) {
            // Enumerate types (I, r) with sum r <= 3 and check the count of
            // classes of that type against binom(n, I)_{p^-1} p^{sum r i(n-i)}.
            // Collect histograms for every needed maximal index K.
            std::map<unsigned long, std::map<std::vector<unsigned long>, BigInt>> hist;
            auto histogram_for = [&](unsigned long K) {
                auto it = hist.find(K);
                if (it == hist.end()) it = hist.emplace(K, maximal_class_type_census(n, p, K)).first;
                return it->second;
            };
            // All subsets I of [n-1] with positive r vectors.
            std::vector<int> positions;
            for (int i = 1; i < n; ++i) positions.push_back(i);
            size_t subsets = size_t(1) << positions.size();
            for (size_t mask = 0; mask < subsets; ++mask) {
                std::vector<int> I;
                for (size_t b = 0; b < positions.size(); ++b)
                    if (mask & (size_t(1) << b)) I.push_back(positions[b]);
                // r vectors with entries >= 1 and total <= 3.
                std::vector<std::vector<int>> rvecs;
                std::function<void(size_t, int, std::vector<int>)> rec =
                    [&](size_t pos, int left, std::vector<int> cur) {
                        if (pos == I.size()) {
                            rvecs.push_back(cur);
                            return;
                        }
                        for (int v = 1; v <= left - int(I.size() - pos - 1); ++v) {
                            cur.push_back(v);
                            rec(pos + 1, left - v, cur);
                            cur.pop_back();
                        }
                    };
                rec(0, 3, {});
                for (const auto& r : rvecs) {
                    // Descending Smith exponent key of D(I, r).
                    std::vector<unsigned long> desc(size_t(n), 0);
                    unsigned long K = 0;
                    for (int row = 0; row < n; ++row) {
                        unsigned long e = 0;
                        for (size_t t = 0; t < I.size(); ++t)
                            if (row < I[t]) e += static_cast<unsigned long>(r[t]);
                        desc[size_t(row)] = e;
                        K += e;
                    }
                    // Expected: flag count at X = 1/p times p^{sum r i(n-i)}.
                    std::set<int> Iset(I.begin(), I.end());
                    BigRational expect =
                        flag_binomial(n, Iset).evaluate({BigRational(1, p)});
                    unsigned long exp_pow = 0;
                    for (size_t t = 0; t < I.size(); ++t)
                        exp_pow += static_cast<unsigned long>(r[t]) *
                                   static_cast<unsigned long>(I[t] * (n - I[t]));
                    expect *= BigRational(int_pow(static_cast<unsigned long>(p), exp_pow));
                    auto h = histogram_for(K);
                    auto it = h.find(desc);
                    BigRational got = it == h.end() ? BigRational(0) : BigRational(it->second);
                    CHECK(got == expect);
                }
            }
        }
}

TEST_CASE("census determinism across thread counts") {
    auto heis = parse_ring_file(data("heisenberg.ring"));
    auto a = census(heis, CensusKind::subring, 2, 4, 1);
    auto b = census(heis, CensusKind::subring, 2, 4, 2);
    auto c = census(heis, CensusKind::subring, 2, 4, 8);
    for (size_t k = 0; k < a.coeffs.size(); ++k) {
        CHECK(a.coeffs[k] == b.coeffs[k]);
        CHECK(a.coeffs[k] == c.coeffs[k]);
    }
}

TEST_CASE("coefficient table serialization") {
    CoefficientTable t;
    t.kind = "subring";
    t.prime = 2;
    t.coeffs = {BigRational(1), BigRational(3), BigRational(7, 2)};
    CHECK(t.to_json() ==
          "{\"kind\":\"subring\",\"prime\":2,\"coefficients\":[[\"1\",\"1\"],[\"3\",\"1\"],"
          "[\"7\",\"2\"]]}");
    CHECK(t.to_tsv() == "0\t1\t1\n1\t3\t1\n2\t7\t2\n");
}
