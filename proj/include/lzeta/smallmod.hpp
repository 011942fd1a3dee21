#pragma once

/// int64 arithmetic mod p^N for the enumeration hot paths.  Everything here
/// is a fast path: the mpz implementations in intmatrix.hpp are the
/// reference semantics, and the test suite checks agreement.

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace lzeta {

using i64 = long long;

/// p^e with an overflow guard.
i64 checked_pow(i64 p, unsigned long e, i64 limit);

/// Capped elementary divisor exponents of an r x c int64 matrix mod p^N
/// (entries are taken mod p^N; exponents are min(N, v_p(divisor))).
/// The matrix is passed as row-major data; it is consumed.
std::vector<unsigned long> small_edt(std::vector<i64>& a, size_t rows, size_t cols, i64 p,
                                     unsigned long N);

struct SmallModContext {
    i64 p = 0;
    unsigned long N = 0;
    i64 mod = 0;  // p^N

    SmallModContext() = default;
    SmallModContext(i64 p_, unsigned long N_);
    i64 reduce(i64 x) const {
        i64 r = x % mod;
        return r < 0 ? r + mod : r;
    }
};

}  // namespace lzeta
