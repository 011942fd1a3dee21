#pragma once

/// Exact integer-matrix algorithms: Hermite and Smith normal forms,
/// adjugates, kernels, capped elementary-divisor types mod p^N and the
/// indices of linear congruence systems.
///
/// HNF convention (fixed project-wide): row operations only, result
/// lower-triangular in the square nonsingular case, positive pivots,
/// entries below a pivot reduced into [0, pivot).  Rows of a matrix are
/// lattice generators throughout.

#include <lzeta/rational.hpp>

#include <vector>

namespace lzeta {

class IntegerMatrix {
public:
    IntegerMatrix() : rows_(0), cols_(0) {}
    IntegerMatrix(size_t rows, size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols, BigInt(0)) {}
    static IntegerMatrix identity(size_t n);
    static IntegerMatrix from_rows(const std::vector<std::vector<long>>& rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    BigInt& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const BigInt& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    IntegerMatrix transposed() const;
    IntegerMatrix operator*(const IntegerMatrix& o) const;
    bool operator==(const IntegerMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }

    std::vector<BigInt> row(size_t i) const;
    void set_row(size_t i, const std::vector<BigInt>& v);

    std::string to_string() const;

private:
    size_t rows_, cols_;
    std::vector<BigInt> e_;
};

/// Determinant by fraction-free (Bareiss) elimination.
BigInt determinant(const IntegerMatrix& m);

/// Adjugate matrix: m * adjugate(m) = det(m) * I.
IntegerMatrix adjugate(const IntegerMatrix& m);

/// Hermite normal form of a square nonsingular matrix: the unique
/// lower-triangular H = U*m (U unimodular) with H_ii > 0 and
/// 0 <= H_ij < H_jj for j < i.  Throws std::domain_error if det m = 0.
IntegerMatrix hnf(const IntegerMatrix& m);

/// HNF basis of the row span of an arbitrary matrix: one row per pivot,
/// pivot columns strictly increasing, positive pivots, entries in a pivot
/// column below the pivot row reduced into [0, pivot).
IntegerMatrix hnf_rowspan_basis(const IntegerMatrix& m);

/// Basis (as rows) of the saturation Q-span(rows) intersected with Z^n.
IntegerMatrix saturation_basis(const IntegerMatrix& m);

/// Basis (as rows) of the right kernel {v : m v = 0} intersected with Z^n;
/// kernels are automatically saturated.
IntegerMatrix kernel_basis(const IntegerMatrix& m);

/// Smith normal form divisors d_1 | d_2 | ... (non-negative; zeros last).
std::vector<BigInt> smith_divisors(const IntegerMatrix& m);

/// Smith form with transforms: fills U (rows x rows) and Vinv (cols x cols),
/// both unimodular, such that rowspan(m) = rowspan(D * Vinv) where D is the
/// returned diagonal; the first r rows of Vinv scaled by the divisors
/// generate the row span, i.e. U * m = D * Vinv.
std::vector<BigInt> smith_with_transforms(const IntegerMatrix& m, IntegerMatrix& U,
                                          IntegerMatrix& Vinv);

struct ElementaryDivisorType {
    unsigned long level = 0;          // N
    std::vector<unsigned long> exps;  // non-decreasing, each in [0, N]

    bool operator==(const ElementaryDivisorType& o) const = default;
    bool operator<(const ElementaryDivisorType& o) const {
        if (level != o.level) return level < o.level;
        return exps < o.exps;
    }
};

/// Capped elementary divisor exponents min(N, v_p(d_i)) of the Smith
/// divisors; rectangular input is oriented so rows >= cols first (the type
/// is transpose-invariant).  Zero divisors cap at N.
ElementaryDivisorType elementary_divisor_type(const IntegerMatrix& m, const BigInt& p,
                                              unsigned long N);

/// The solution lattice {x in Z_p^d : x A == 0 mod p^N} has index p^e in
/// Z_p^d; returns e = sum_j (N - m_j) over the capped divisor exponents.
unsigned long congruence_solution_index(const IntegerMatrix& A, const BigInt& p,
                                        unsigned long N);

/// True iff x lies in the Z_p-row-span of the nonsingular matrix m,
/// i.e. x * adj(m) == 0 mod p^{v_p(det m)}.
bool membership_test(const std::vector<BigInt>& x, const IntegerMatrix& m, const BigInt& p);

/// Solves y * m = x exactly over the rationals (m square nonsingular).
std::vector<BigRational> solve_left(const IntegerMatrix& m, const std::vector<BigInt>& x);

}  // namespace lzeta
