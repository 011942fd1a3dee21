#pragma once

/// Representation zeta coefficients via coadjoint-orbit counting: joint
/// elementary-divisor statistics of the commutator matrices R, S over
/// primitive vectors mod p^N, and the generating-function data for P_{R,S}.

#include <lzeta/ring.hpp>
#include <lzeta/smallmod.hpp>

#include <map>
#include <set>
#include <vector>

namespace lzeta {

struct EdtKey {
    std::vector<unsigned long> m;  // R-type
    std::vector<unsigned long> n;  // S-type
    bool operator<(const EdtKey& o) const { return std::tie(m, n) < std::tie(o.m, o.n); }
    bool operator==(const EdtKey& o) const = default;
};

struct EdtCountTable {
    long prime = 0;
    unsigned long level = 0;  // N
    std::map<EdtKey, BigInt> counts;

    BigInt total() const {
        BigInt t(0);
        for (const auto& [k, c] : counts) t += c;
        return t;
    }
};

/// Tabulates (nu(R(l)), nu(S(l))) over primitive l in (Z/p^N)^v, N >= 1.
EdtCountTable edt_census(const LinearFormMatrix& R, const LinearFormMatrix& S, long p,
                         unsigned long N, int threads = 0);

struct PSeriesTable {
    long prime = 0;
    size_t k = 0;  // generic rank of R: surviving r-variables
    size_t l = 0;  // generic rank of S
    std::vector<EdtCountTable> levels;  // index N-1 holds level N, keys reduced to (k, l)
};

/// Levels 1..Nmax of the reduced counts N_{N,m,n}; divisor entries beyond
/// the generic ranks are checked to be N and absorbed.
PSeriesTable p_series_table(const LinearFormMatrix& R, const LinearFormMatrix& S, long p,
                            unsigned long Nmax, int threads = 0);

struct RepCoefficientTable {
    long prime = 0;
    std::vector<BigInt> coeffs;  // a_{p^k}, k = 0..kmax
    std::set<long> excluded_primes;
};

/// a_{p^k} by Howe's formula: sum over N in [1, 2k] and primitive l mod p^N
/// with (1/2) sum_i (N - m_i(l)) = k of p^{- sum_j (N - n_j(l))}.
/// Rejects p = 2 and the excluded primes of the representation data.
RepCoefficientTable rep_zeta_coeffs(const RepresentationData& data, long p,
                                    unsigned long kmax, int threads = 0);

}  // namespace lzeta
