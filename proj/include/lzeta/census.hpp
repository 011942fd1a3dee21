#pragma once

/// Exact enumeration of finite-index subrings, ideals and conjugacy-weighted
/// subalgebras of L (x) Z_p via canonical Hermite-form sublattice cells,
/// plus the independent homothety-class oracle.

#include <lzeta/intmatrix.hpp>
#include <lzeta/ring.hpp>
#include <lzeta/smallmod.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lzeta {

enum class CensusKind { subring, ideal, conjugacy };

std::string to_string(CensusKind k);
CensusKind census_kind_from_string(const std::string& s);

struct CoefficientTable {
    std::string kind;  // "subring", "ideal", "conjugacy", "irr"
    long prime = 0;
    std::vector<BigRational> coeffs;  // a_{p^k}, k = 0..kmax

    unsigned long kmax() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    std::string to_json() const;  // {kind, prime, coefficients: [["num","den"],...]}
    std::string to_tsv() const;   // lines "k<TAB>num<TAB>den"
};

/// Streams every index-p^k sublattice of Z^n exactly once as a
/// lower-triangular HNF cell with diagonal p^{a_1..a_n}.  Deterministic
/// order: diagonal exponent compositions lexicographically, then
/// off-diagonal entries in mixed-radix counter order.
/// The visitor receives the row-major n x n cell.
void enumerate_sublattices(int n, i64 p, unsigned long k,
                           const std::function<void(const std::vector<i64>&)>& visit);

bool is_subring(const IntegerMatrix& M, const RingSpec& spec, const BigInt& p);
bool is_ideal(const IntegerMatrix& M, const RingSpec& spec, const BigInt& p);

/// |L_p : N_{L_p}(Lambda)| = p^e for a subring cell; requires the lie flag
/// and is_subring(M).
unsigned long normalizer_weight(const IntegerMatrix& M, const RingSpec& spec, const BigInt& p);

/// a_{p^k} for k <= kmax by filtered HNF enumeration; conjugacy weights are
/// p^{-e}.  Deterministic for every thread count.
CoefficientTable census(const RingSpec& spec, CensusKind kind, long p, unsigned long kmax,
                        int threads = 0);

/// Independent subring oracle through homothety classes: maximal cells,
/// minimal m with p^m Lambda a subring, assembled with the geometric factor
/// (1 - p^{-ns})^{-1}.
CoefficientTable census_by_class(const RingSpec& spec, long p, unsigned long kmax,
                                 int threads = 0);

/// Number of homothety classes of each type (I, r) among classes whose
/// maximal representative has index p^K, keyed by the descending vector of
/// Smith exponents of the maximal cell.  Pure lattice combinatorics.
std::map<std::vector<unsigned long>, BigInt> maximal_class_type_census(int n, long p,
                                                                       unsigned long K);

}  // namespace lzeta
