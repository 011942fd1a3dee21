#include <doctest.h>

#include <lzeta/ring.hpp>

#include <random>

using namespace lzeta;

#ifndef LZETA_TEST_DATA
#define LZETA_TEST_DATA "tests/data"
#endif

static std::string data(const std::string& name) {
    return std::string(LZETA_TEST_DATA) + "/" + name;
}

TEST_CASE("parse heisenberg") {
    auto spec = parse_ring_file(data("heisenberg.ring"));
    CHECK(spec.rank == 3);
    CHECK(spec.lie);
    CHECK(spec.declared_class == 2);
    CHECK(spec.labels == std::vector<std::string>{"x1", "x2", "y"});
    CHECK(spec.structure_constant(0, 1, 2) == 1);
    CHECK(spec.structure_constant(1, 0, 2) == -1);  // antisymmetric completion
    CHECK(spec.nilpotency_class() == 2);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_WITH_AS(parse_ring("rank 2\nbracket 1 1 -> 2 : 1\nflags lie\n"),
                         doctest::Contains("lambda(1,1,2)"), RingError);
    try {
        parse_ring("rank 2\nbroken line\n");
        FAIL("expected syntax error");
    } catch (const RingError& e) {
        CHECK(e.code == "syntax");
        CHECK(e.line == 2);
    }
    try {
        parse_ring("basis a b\n");
        FAIL("expected rank-first error");
    } catch (const RingError& e) {
        CHECK(e.line == 1);
    }
    // Jacobi violation: [1,2]=3, [1,3]=1 fails.
    CHECK_THROWS_WITH_AS(
        parse_ring("rank 3\nflags lie\nbracket 1 2 -> 3 : 1\nbracket 1 3 -> 1 : 1\n"),
        doctest::Contains("Jacobi"), RingError);
}

TEST_CASE("sl2 is a valid non-nilpotent Lie ring") {
    auto spec = parse_ring_file(data("sl2.ring"));
    CHECK(spec.lie);
    CHECK_FALSE(spec.nilpotency_class().has_value());
    CHECK_THROWS_AS(build_representation_data(spec), RingError);
}

TEST_CASE("commutator matrix") {
    auto triv = parse_ring_file(data("trivial2.ring"));
    auto rt = commutator_matrix(triv);
    CHECK(rt.generic_rank() == 0);

    auto heis = parse_ring_file(data("heisenberg.ring"));
    auto rh = commutator_matrix(heis);
    CHECK(rh.at(0, 1) == std::vector<long>{0, 0, 1});
    CHECK(rh.at(1, 0) == std::vector<long>{0, 0, -1});
    CHECK(rh.at(2, 2) == std::vector<long>{0, 0, 0});
    // Evaluated at y = (0,0,1): rank 2; at (1,0,0): rank 0.
    auto m1 = rh.evaluate({BigInt(0), BigInt(0), BigInt(1)});
    auto d1 = smith_divisors(m1);
    int nz = 0;
    for (auto& x : d1)
        if (x != 0) ++nz;
    CHECK(nz == 2);
    auto m0 = rh.evaluate({BigInt(1), BigInt(0), BigInt(0)});
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = 0; j < 3; ++j) CHECK(m0.at(i, j) == 0);

    auto sl2 = parse_ring_file(data("sl2.ring"));
    auto rs = commutator_matrix(sl2);
    CHECK(rs.at(2, 0) == std::vector<long>{2, 0, 0});   // [h,e] = 2e
    CHECK(rs.at(2, 1) == std::vector<long>{0, -2, 0});  // [h,f] = -2f
    CHECK(rs.at(0, 1) == std::vector<long>{0, 0, 1});   // [e,f] = h
    CHECK(rs.generic_rank() == 2);  // odd antisymmetric: determinant vanishes identically
}

TEST_CASE("commutator matrix evaluations are antisymmetric for lie specs") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> c(-4, 4);
    for (const char* name : {"heisenberg.ring", "sl2.ring", "heis_z.ring"}) {
        auto spec = parse_ring_file(data(name));
        auto r = commutator_matrix(spec);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<BigInt> y(size_t(spec.rank));
            for (auto& v : y) v = c(rng);
            auto m = r.evaluate(y);
            for (size_t i = 0; i < m.rows(); ++i)
                for (size_t j = 0; j < m.cols(); ++j) CHECK(m.at(i, j) == -m.at(j, i));
        }
    }
}

TEST_CASE("derived subring and centre") {
    auto heis = parse_ring_file(data("heisenberg.ring"));
    auto dc = derived_and_centre(heis);
    REQUIRE(dc.derived.rows() == 1);
    CHECK(dc.derived.at(0, 0) == 0);
    CHECK(dc.derived.at(0, 1) == 0);
    CHECK(dc.derived.at(0, 2) == 1);
    REQUIRE(dc.centre.rows() == 1);
    CHECK(dc.centre.at(0, 2) == 1);
    CHECK(dc.derived_was_saturated);

    auto triv = parse_ring_file(data("trivial3.ring"));
    auto dt = derived_and_centre(triv);
    CHECK(dt.derived.rows() == 0);
    CHECK(dt.centre.rows() == 3);

    auto sl2 = parse_ring_file(data("sl2.ring"));
    auto ds = derived_and_centre(sl2);
    CHECK(ds.derived.rows() == 3);  // saturation of span{2e, 2f, h}
    CHECK(ds.derived == IntegerMatrix::identity(3));
    CHECK_FALSE(ds.derived_was_saturated);
    CHECK(ds.centre.rows() == 0);
}

TEST_CASE("derived/centre bases are saturated") {
    for (const char* name : {"heisenberg.ring", "sl2.ring", "heis_z.ring", "trivial2.ring"}) {
        auto spec = parse_ring_file(data(name));
        auto dc = derived_and_centre(spec);
        for (const IntegerMatrix* b : {&dc.derived, &dc.centre}) {
            if (b->rows() == 0) continue;
            auto div = smith_divisors(*b);
            for (const auto& d : div) CHECK(d == 1);
        }
    }
}

TEST_CASE("representation data: heisenberg") {
    auto spec = parse_ring_file(data("heisenberg.ring"));
    auto rd = build_representation_data(spec);
    CHECK(rd.d == 2);
    CHECK(rd.m == 0);
    CHECK(rd.n == 1);
    CHECK(rd.derived_index == 1);
    CHECK(rd.excluded_primes == std::set<long>{2});
    REQUIRE(rd.R.rows() == 2);
    REQUIRE(rd.R.nvars() == 1);
    CHECK(rd.R.at(0, 1) == std::vector<long>{1});
    CHECK(rd.R.at(1, 0) == std::vector<long>{-1});
    CHECK(rd.S.cols() == 0);
}

TEST_CASE("representation data: trivial and heisenberg x Z") {
    auto triv = parse_ring_file(data("trivial3.ring"));
    auto rt = build_representation_data(triv);
    CHECK(rt.d == 3);
    CHECK(rt.m == 0);
    CHECK(rt.n == 0);
    CHECK(rt.R.rows() == 3);

    auto hz = parse_ring_file(data("heis_z.ring"));
    auto rh = build_representation_data(hz);
    CHECK(rh.d == 3);
    CHECK(rh.m == 0);
    CHECK(rh.n == 1);
    REQUIRE(rh.R.rows() == 3);
    CHECK(rh.R.generic_rank() == 2);
}

TEST_CASE("representation data: bracket identity in the adapted basis") {
    for (const char* name : {"heisenberg.ring", "heis_z.ring"}) {
        auto spec = parse_ring_file(data(name));
        auto rd = build_representation_data(spec);
        size_t dm = size_t(rd.d + rd.m);
        for (size_t i = 0; i < dm; ++i)
            for (size_t j = 0; j < dm; ++j) {
                auto lhs = spec.product(rd.basis_change.row(i), rd.basis_change.row(j));
                std::vector<BigInt> rhs(size_t(spec.rank), BigInt(0));
                for (size_t k = 0; k < size_t(rd.n); ++k) {
                    auto yrow = rd.basis_change.row(size_t(rd.d + rd.m) + k);
                    for (size_t t = 0; t < rhs.size(); ++t)
                        rhs[t] += BigInt(rd.R.at(i, j)[k]) * yrow[t];
                }
                CHECK(lhs == rhs);
            }
    }
}
