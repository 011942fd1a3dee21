#include <lzeta/intmatrix.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lzeta {

IntegerMatrix IntegerMatrix::identity(size_t n) {
    IntegerMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    if (rows.empty()) return IntegerMatrix(0, 0);
    IntegerMatrix m(rows.size(), rows[0].size());
    for (size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size())
            throw std::invalid_argument("IntegerMatrix::from_rows: ragged rows");
        for (size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntegerMatrix IntegerMatrix::transposed() const {
    IntegerMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntegerMatrix: dimension mismatch");
    IntegerMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            if (at(i, k) == 0) continue;
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

std::vector<BigInt> IntegerMatrix::row(size_t i) const {
    std::vector<BigInt> v(cols_);
    for (size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
    return v;
}

void IntegerMatrix::set_row(size_t i, const std::vector<BigInt>& v) {
    for (size_t j = 0; j < cols_; ++j) at(i, j) = v[j];
}

std::string IntegerMatrix::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "[");
        for (size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << at(i, j).get_str();
    }
    os << "]";
    return os.str();
}

BigInt determinant(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: non-square matrix");
    size_t n = m.rows();
    if (n == 0) return BigInt(1);
    IntegerMatrix a = m;
    BigInt prev(1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            size_t piv = k + 1;
            while (piv < n && a.at(piv, k) == 0) ++piv;
            if (piv == n) return BigInt(0);
            for (size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(piv, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                BigInt v = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                a.at(i, j) = v / prev;  // Bareiss division is exact
            }
        prev = a.at(k, k);
    }
    BigInt d = a.at(n - 1, n - 1);
    return sign < 0 ? BigInt(-d) : d;
}

IntegerMatrix adjugate(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("adjugate: non-square matrix");
    size_t n = m.rows();
    IntegerMatrix adj(n, n);
    if (n == 0) return adj;
    if (n == 1) {
        adj.at(0, 0) = 1;
        return adj;
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            IntegerMatrix minor(n - 1, n - 1);
            for (size_t r = 0, mr = 0; r < n; ++r) {
                if (r == i) continue;
                for (size_t c = 0, mc = 0; c < n; ++c) {
                    if (c == j) continue;
                    minor.at(mr, mc) = m.at(r, c);
                    ++mc;
                }
                ++mr;
            }
            BigInt cof = determinant(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            adj.at(j, i) = cof;  // transpose of the cofactor matrix
        }
    return adj;
}

namespace {

// Row-span HNF with optional transform tracking.  Pivot rows come out
// ordered by increasing pivot column; pivot = rightmost nonzero of its row.
// Returns the pivot columns.
std::vector<size_t> hnf_engine(IntegerMatrix& a, IntegerMatrix* u) {
    size_t rows = a.rows(), cols = a.cols();
    if (u) *u = IntegerMatrix::identity(rows);
    auto row_sub = [&](size_t dst, size_t src, const BigInt& q) {
        if (q == 0) return;
        for (size_t j = 0; j < cols; ++j) a.at(dst, j) -= q * a.at(src, j);
        if (u)
            for (size_t j = 0; j < rows; ++j) u->at(dst, j) -= q * u->at(src, j);
    };
    auto row_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t c = 0; c < cols; ++c) std::swap(a.at(i, c), a.at(j, c));
        if (u)
            for (size_t c = 0; c < rows; ++c) std::swap(u->at(i, c), u->at(j, c));
    };
    auto row_neg = [&](size_t i) {
        for (size_t c = 0; c < cols; ++c) a.at(i, c) = -a.at(i, c);
        if (u)
            for (size_t c = 0; c < rows; ++c) u->at(i, c) = -u->at(i, c);
    };

    std::vector<size_t> pivot_cols;
    size_t active_end = rows;  // rows [0, active_end) are not yet pivots
    for (size_t cc = cols; cc-- > 0 && active_end > 0;) {
        // Euclid over the active rows' entries in column cc.
        for (;;) {
            size_t best = active_end;
            for (size_t i = 0; i < active_end; ++i) {
                if (a.at(i, cc) == 0) continue;
                if (best == active_end ||
                    mpz_cmpabs(a.at(i, cc).get_mpz_t(), a.at(best, cc).get_mpz_t()) < 0)
                    best = i;
            }
            if (best == active_end) break;  // column is clear among active rows
            row_swap(best, active_end - 1);
            size_t p = active_end - 1;
            bool others = false;
            for (size_t i = 0; i < p; ++i) {
                if (a.at(i, cc) == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(i, cc).get_mpz_t(), a.at(p, cc).get_mpz_t());
                row_sub(i, p, q);
                if (a.at(i, cc) != 0) others = true;
            }
            if (!others) {
                if (a.at(p, cc) < 0) row_neg(p);
                pivot_cols.push_back(cc);
                --active_end;
                break;
            }
        }
    }
    // Rows now: [0, active_end) span zero... they are the non-pivot leftovers
    // (all zero), then pivots in decreasing pivot-column order.  Reorder to
    // increasing pivot column, zero rows last.
    std::reverse(pivot_cols.begin(), pivot_cols.end());
    size_t r = pivot_cols.size();
    IntegerMatrix b(rows, cols);
    IntegerMatrix ub(rows, rows);
    for (size_t k = 0; k < r; ++k) {
        size_t src = rows - 1 - k;  // pivots were parked from the bottom up
        size_t dst = r - 1 - k;
        for (size_t c = 0; c < cols; ++c) b.at(dst, c) = a.at(src, c);
        if (u)
            for (size_t c = 0; c < rows; ++c) ub.at(dst, c) = u->at(src, c);
    }
    for (size_t k = 0; k < active_end; ++k) {
        for (size_t c = 0; c < cols; ++c) b.at(r + k, c) = a.at(k, c);
        if (u)
            for (size_t c = 0; c < rows; ++c) ub.at(r + k, c) = u->at(k, c);
    }
    a = std::move(b);
    if (u) *u = std::move(ub);

    // Reduce entries below each pivot into [0, pivot).  Rightmost pivot
    // columns first, so later subtractions (which only touch columns to the
    // left) cannot disturb an already-reduced entry.
    for (size_t k = r; k-- > 0;) {
        size_t pc = pivot_cols[k];
        for (size_t i = k + 1; i < r; ++i) {
            BigInt q;
            mpz_fdiv_q(q.get_mpz_t(), a.at(i, pc).get_mpz_t(), a.at(k, pc).get_mpz_t());
            row_sub(i, k, q);
        }
    }
    return pivot_cols;
}

}  // namespace

IntegerMatrix hnf(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hnf: non-square matrix");
    IntegerMatrix a = m;
    auto pivots = hnf_engine(a, nullptr);
    if (pivots.size() != m.rows()) throw std::domain_error("hnf: singular matrix");
    return a;
}

IntegerMatrix hnf_rowspan_basis(const IntegerMatrix& m) {
    IntegerMatrix a = m;
    auto pivots = hnf_engine(a, nullptr);
    IntegerMatrix basis(pivots.size(), m.cols());
    for (size_t i = 0; i < pivots.size(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) basis.at(i, j) = a.at(i, j);
    return basis;
}

IntegerMatrix kernel_basis(const IntegerMatrix& m) {
    // Left kernel of m^T equals the right kernel of m; rows of U opposite
    // zero rows of the HNF give a (saturated) basis.
    IntegerMatrix a = m.transposed();
    IntegerMatrix u;
    auto pivots = hnf_engine(a, &u);
    size_t r = pivots.size();
    IntegerMatrix ker(a.rows() - r, a.rows());
    for (size_t i = r; i < a.rows(); ++i)
        for (size_t j = 0; j < a.rows(); ++j) ker.at(i - r, j) = u.at(i, j);
    return hnf_rowspan_basis(ker);
}

IntegerMatrix saturation_basis(const IntegerMatrix& m) {
    // Double kernel: x in Q-span(rows m) iff x is orthogonal to the right
    // kernel of m (rows act by dot product).
    IntegerMatrix k = kernel_basis(m);
    if (k.rows() == 0) return IntegerMatrix::identity(m.cols());
    return kernel_basis(k);
}

namespace {

void smith_engine(IntegerMatrix& a, IntegerMatrix* u, IntegerMatrix* vinv) {
    size_t rows = a.rows(), cols = a.cols();
    if (u) *u = IntegerMatrix::identity(rows);
    if (vinv) *vinv = IntegerMatrix::identity(cols);
    auto row_sub = [&](size_t dst, size_t src, const BigInt& q) {
        if (q == 0) return;
        for (size_t j = 0; j < cols; ++j) a.at(dst, j) -= q * a.at(src, j);
        if (u)
            for (size_t j = 0; j < rows; ++j) u->at(dst, j) -= q * u->at(src, j);
    };
    auto col_sub = [&](size_t dst, size_t src, const BigInt& q) {
        // col_dst -= q * col_src; on Vinv this is row_src += q * row_dst.
        if (q == 0) return;
        for (size_t i = 0; i < rows; ++i) a.at(i, dst) -= q * a.at(i, src);
        if (vinv)
            for (size_t j = 0; j < cols; ++j) vinv->at(src, j) += q * vinv->at(dst, j);
    };
    auto row_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t c = 0; c < cols; ++c) std::swap(a.at(i, c), a.at(j, c));
        if (u)
            for (size_t c = 0; c < rows; ++c) std::swap(u->at(i, c), u->at(j, c));
    };
    auto col_swap = [&](size_t i, size_t j) {
        if (i == j) return;
        for (size_t r = 0; r < rows; ++r) std::swap(a.at(r, i), a.at(r, j));
        if (vinv)
            for (size_t c = 0; c < cols; ++c) std::swap(vinv->at(i, c), vinv->at(j, c));
    };
    auto col_neg = [&](size_t j) {
        for (size_t i = 0; i < rows; ++i) a.at(i, j) = -a.at(i, j);
        if (vinv)
            for (size_t c = 0; c < cols; ++c) vinv->at(j, c) = -vinv->at(j, c);
    };

    size_t t = 0;
    size_t lim = std::min(rows, cols);
    for (; t < lim; ++t) {
        // Find a pivot: smallest absolute nonzero in the t.. submatrix.
        size_t pi = rows, pj = cols;
        for (size_t i = t; i < rows; ++i)
            for (size_t j = t; j < cols; ++j) {
                if (a.at(i, j) == 0) continue;
                if (pi == rows ||
                    mpz_cmpabs(a.at(i, j).get_mpz_t(), a.at(pi, pj).get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == rows) break;  // remaining block is zero
        row_swap(t, pi);
        col_swap(t, pj);
        for (;;) {
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i) {
                if (a.at(i, t) == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(i, t).get_mpz_t(), a.at(t, t).get_mpz_t());
                row_sub(i, t, q);
                if (a.at(i, t) != 0) {
                    row_swap(t, i);  // smaller remainder becomes the pivot
                    clean = false;
                }
            }
            for (size_t j = t + 1; j < cols; ++j) {
                if (a.at(t, j) == 0) continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a.at(t, j).get_mpz_t(), a.at(t, t).get_mpz_t());
                col_sub(j, t, q);
                if (a.at(t, j) != 0) {
                    col_swap(t, j);
                    clean = false;
                }
            }
            if (clean) break;
        }
        if (a.at(t, t) < 0) col_neg(t);
    }
    // Enforce the divisibility chain d_i | d_{i+1}.
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t i = 0; i + 1 < t; ++i) {
            if (a.at(i + 1, i + 1) % a.at(i, i) == 0) continue;
            changed = true;
            // Fold d_{i+1} into position (i, i) via gcd steps.
            col_sub(i, i + 1, BigInt(-1));  // col_i += col_{i+1}
            for (;;) {
                bool clean = true;
                if (a.at(i + 1, i) != 0) {
                    BigInt q;
                    mpz_fdiv_q(q.get_mpz_t(), a.at(i + 1, i).get_mpz_t(),
                               a.at(i, i).get_mpz_t());
                    row_sub(i + 1, i, q);
                    if (a.at(i + 1, i) != 0) {
                        row_swap(i, i + 1);
                        clean = false;
                    }
                }
                if (a.at(i, i + 1) != 0) {
                    BigInt q;
                    mpz_fdiv_q(q.get_mpz_t(), a.at(i, i + 1).get_mpz_t(),
                               a.at(i, i).get_mpz_t());
                    col_sub(i + 1, i, q);
                    if (a.at(i, i + 1) != 0) {
                        col_swap(i, i + 1);
                        clean = false;
                    }
                }
                if (clean) break;
            }
            if (a.at(i, i) < 0) col_neg(i);
            if (a.at(i + 1, i + 1) < 0) col_neg(i + 1);
        }
    }
}

}  // namespace

std::vector<BigInt> smith_divisors(const IntegerMatrix& m) {
    IntegerMatrix a = m;
    smith_engine(a, nullptr, nullptr);
    size_t lim = std::min(m.rows(), m.cols());
    std::vector<BigInt> d(lim);
    for (size_t i = 0; i < lim; ++i) d[i] = a.at(i, i);
    return d;
}

std::vector<BigInt> smith_with_transforms(const IntegerMatrix& m, IntegerMatrix& U,
                                          IntegerMatrix& Vinv) {
    IntegerMatrix a = m;
    smith_engine(a, &U, &Vinv);
    size_t lim = std::min(m.rows(), m.cols());
    std::vector<BigInt> d(lim);
    for (size_t i = 0; i < lim; ++i) d[i] = a.at(i, i);
    return d;
}

ElementaryDivisorType elementary_divisor_type(const IntegerMatrix& m, const BigInt& p,
                                              unsigned long N) {
    IntegerMatrix a = (m.rows() >= m.cols()) ? m : m.transposed();
    auto d = smith_divisors(a);
    ElementaryDivisorType t;
    t.level = N;
    t.exps.reserve(d.size());
    for (const auto& di : d) {
        if (di == 0) {
            t.exps.push_back(N);
        } else {
            unsigned long v = p_valuation(di, p);
            t.exps.push_back(std::min<unsigned long>(v, N));
        }
    }
    return t;
}

unsigned long congruence_solution_index(const IntegerMatrix& A, const BigInt& p,
                                        unsigned long N) {
    auto t = elementary_divisor_type(A, p, N);
    unsigned long e = 0;
    for (auto m : t.exps) e += N - m;
    return e;
}

bool membership_test(const std::vector<BigInt>& x, const IntegerMatrix& m, const BigInt& p) {
    if (m.rows() != m.cols()) throw std::invalid_argument("membership_test: non-square matrix");
    if (x.size() != m.cols()) throw std::invalid_argument("membership_test: arity mismatch");
    BigInt det = determinant(m);
    if (det == 0) throw std::domain_error("membership_test: singular matrix");
    unsigned long N = p_valuation(det, p);
    if (N == 0) return true;
    BigInt mod = int_pow(p, N);
    IntegerMatrix adj = adjugate(m);
    for (size_t j = 0; j < m.cols(); ++j) {
        BigInt s(0);
        for (size_t i = 0; i < m.cols(); ++i) s += x[i] * adj.at(i, j);
        if (s % mod != 0) return false;
    }
    return true;
}

std::vector<BigRational> solve_left(const IntegerMatrix& m, const std::vector<BigInt>& x) {
    BigInt det = determinant(m);
    if (det == 0) throw std::domain_error("solve_left: singular matrix");
    IntegerMatrix adj = adjugate(m);
    std::vector<BigRational> y(m.cols());
    for (size_t j = 0; j < m.cols(); ++j) {
        BigInt s(0);
        for (size_t i = 0; i < m.cols(); ++i) s += x[i] * adj.at(i, j);
        y[j] = BigRational(s, det);
    }
    return y;
}

}  // namespace lzeta
