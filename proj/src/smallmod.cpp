#include <lzeta/smallmod.hpp>

namespace lzeta {

i64 checked_pow(i64 p, unsigned long e, i64 limit) {
    i64 r = 1;
    for (unsigned long i = 0; i < e; ++i) {
        if (r > limit / p) throw std::overflow_error("checked_pow: modulus exceeds int64 budget");
        r *= p;
    }
    return r;
}

SmallModContext::SmallModContext(i64 p_, unsigned long N_) : p(p_), N(N_) {
    mod = checked_pow(p, N, (i64(1) << 62) - 1);
}

namespace {

unsigned long val_mod(i64 x, i64 p, unsigned long cap) {
    if (x == 0) return cap;
    unsigned long v = 0;
    while (v < cap && x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

// Inverse of a unit mod m by extended Euclid.
i64 inv_mod(i64 a, i64 m) {
    i64 t = 0, newt = 1, r = m, newr = a % m;
    if (newr < 0) newr += m;
    while (newr != 0) {
        i64 q = r / newr;
        i64 tmp = t - q * newt;
        t = newt;
        newt = tmp;
        tmp = r - q * newr;
        r = newr;
        newr = tmp;
    }
    if (r != 1) throw std::domain_error("inv_mod: not a unit");
    return t < 0 ? t + m : t;
}

}  // namespace

std::vector<unsigned long> small_edt(std::vector<i64>& a, size_t rows, size_t cols, i64 p,
                                     unsigned long N) {
    i64 mod = checked_pow(p, N, (i64(1) << 31) - 1);
    auto at = [&](size_t i, size_t j) -> i64& { return a[i * cols + j]; };
    for (auto& x : a) {
        x %= mod;
        if (x < 0) x += mod;
    }
    size_t lim = rows < cols ? rows : cols;
    std::vector<unsigned long> out;
    out.reserve(lim);
    size_t t = 0;
    for (; t < lim; ++t) {
        // Minimal-valuation pivot in the trailing block.
        unsigned long best = N;
        size_t pi = t, pj = t;
        for (size_t i = t; i < rows && best > 0; ++i)
            for (size_t j = t; j < cols; ++j) {
                unsigned long v = val_mod(at(i, j), p, N);
                if (v < best) {
                    best = v;
                    pi = i;
                    pj = j;
                    if (best == 0) break;
                }
            }
        if (best >= N) break;  // remaining block is zero mod p^N
        out.push_back(best);
        if (pi != t)
            for (size_t j = t; j < cols; ++j) std::swap(at(t, j), at(pi, j));
        if (pj != t)
            for (size_t i = t; i < rows; ++i) std::swap(at(i, t), at(i, pj));
        i64 pv = checked_pow(p, best, mod);
        i64 unit = at(t, t) / pv;  // unit mod p^{N-best}
        i64 unit_inv = inv_mod(unit % (mod / pv), mod / pv);
        for (size_t i = t + 1; i < rows; ++i) {
            if (at(i, t) == 0) continue;
            // at(i,t) = c * p^best with p^best | at(i,t); multiplier
            // m = c * unit_inv clears the entry mod p^N.
            i64 c = at(i, t) / pv;
            i64 mult = i64((__int128(c) * unit_inv) % (mod / pv));
            for (size_t j = t; j < cols; ++j) {
                i64 v = i64((at(i, j) - __int128(mult) * at(t, j)) % mod);
                at(i, j) = v < 0 ? v + mod : v;
            }
        }
        // Clearing row t via column ops touches no other row: every entry
        // below the pivot in column t is already zero.
        for (size_t j = t + 1; j < cols; ++j) at(t, j) = 0;
    }
    while (out.size() < lim) out.push_back(N);
    return out;
}

}  // namespace lzeta
