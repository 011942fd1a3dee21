#include <lzeta/census.hpp>

#include <lzeta/parallel.hpp>

#include <cmath>
#include <mutex>
#include <sstream>

namespace lzeta {

std::string to_string(CensusKind k) {
    switch (k) {
        case CensusKind::subring: return "subring";
        case CensusKind::ideal: return "ideal";
        case CensusKind::conjugacy: return "conjugacy";
    }
    return "?";
}

CensusKind census_kind_from_string(const std::string& s) {
    if (s == "subring") return CensusKind::subring;
    if (s == "ideal") return CensusKind::ideal;
    if (s == "conjugacy") return CensusKind::conjugacy;
    throw std::invalid_argument("unknown census kind: " + s);
}

std::string CoefficientTable::to_json() const {
    std::ostringstream os;
    os << "{\"kind\":\"" << kind << "\",\"prime\":" << prime << ",\"coefficients\":[";
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (k) os << ",";
        os << "[\"" << coeffs[k].num().get_str() << "\",\"" << coeffs[k].den().get_str()
           << "\"]";
    }
    os << "]}";
    return os.str();
}

std::string CoefficientTable::to_tsv() const {
    std::ostringstream os;
    for (size_t k = 0; k < coeffs.size(); ++k)
        os << k << "\t" << coeffs[k].num().get_str() << "\t" << coeffs[k].den().get_str()
           << "\n";
    return os.str();
}

namespace {

// Compositions (a_1..a_n) of k, lexicographic.
std::vector<std::vector<unsigned long>> compositions(int n, unsigned long k) {
    std::vector<std::vector<unsigned long>> out;
    std::vector<unsigned long> cur(size_t(n), 0);
    std::function<void(int, unsigned long)> rec = [&](int pos, unsigned long left) {
        if (pos == n - 1) {
            cur[size_t(pos)] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned long a = 0; a <= left; ++a) {
            cur[size_t(pos)] = a;
            rec(pos + 1, left - a);
        }
    };
    if (n > 0) rec(0, k);
    return out;
}

// Streams the off-diagonal odometer for a fixed diagonal into the visitor.
void visit_cells_for_diagonal(int n, i64 p, const std::vector<unsigned long>& diag,
                              const std::function<void(const std::vector<i64>&)>& visit) {
    size_t nn = size_t(n);
    std::vector<i64> cell(nn * nn, 0);
    std::vector<i64> pk(diag.size());
    for (size_t j = 0; j < diag.size(); ++j)
        pk[j] = checked_pow(p, diag[j], (i64(1) << 62) - 1);
    for (size_t i = 0; i < nn; ++i) cell[i * nn + i] = pk[i];
    // Odometer over entries (i, j), j < i, each in [0, p^{a_j}).
    std::vector<std::pair<size_t, size_t>> slots;
    for (size_t i = 0; i < nn; ++i)
        for (size_t j = 0; j < i; ++j)
            if (pk[j] > 1) slots.emplace_back(i, j);
    for (;;) {
        visit(cell);
        size_t s = 0;
        while (s < slots.size()) {
            auto [i, j] = slots[s];
            if (cell[i * nn + j] + 1 < pk[j]) {
                ++cell[i * nn + j];
                break;
            }
            cell[i * nn + j] = 0;
            ++s;
        }
        if (s == slots.size()) break;
    }
}

struct SparseLambda {
    struct Entry {
        int i, j, k;
        long c;
    };
    std::vector<Entry> entries;
    int n = 0;
    bool lie = false;

    explicit SparseLambda(const RingSpec& spec) : n(spec.rank), lie(spec.lie) {
        for (const auto& [ijk, c] : spec.lambda)
            entries.push_back({ijk[0], ijk[1], ijk[2], c});
    }
};

// Per-cell integer kernel: adjugate of the lower-triangular cell reduced
// mod p^k, membership via x adj(M) == 0 mod p^k.
struct CellChecker {
    const SparseLambda& lam;
    i64 p;
    i64 pk = 0;  // p^k for the current cell
    size_t n;
    std::vector<i64> adj;      // adjugate mod p^k
    std::vector<i64> prodbuf;  // product vector mod p^k

    CellChecker(const SparseLambda& l, i64 p_) : lam(l), p(p_), n(size_t(l.n)) {
        adj.resize(n * n);
        prodbuf.resize(n);
    }

    void load(const std::vector<i64>& cell, unsigned long k) {
        pk = checked_pow(p, k, (i64(1) << 31) - 1);
        // adj = det * M^{-1} by exact forward substitution, column-wise.
        std::vector<__int128> col(n);
        __int128 det = 1;
        for (size_t i = 0; i < n; ++i) det *= cell[i * n + i];
        for (size_t c = 0; c < n; ++c) {
            for (size_t i = 0; i < n; ++i) {
                __int128 rhs = (i == c) ? det : 0;
                for (size_t j = 0; j < i; ++j) rhs -= __int128(cell[i * n + j]) * col[j];
                col[i] = rhs / cell[i * n + i];  // exact: adjugate is integral
            }
            for (size_t i = 0; i < n; ++i) {
                i64 v = i64(col[i] % pk);
                adj[i * n + c] = v < 0 ? v + pk : v;
            }
        }
    }

    // product (x o y) mod p^k into prodbuf.
    void product_mod(const i64* x, const i64* y) {
        for (size_t t = 0; t < n; ++t) prodbuf[t] = 0;
        for (const auto& e : lam.entries) {
            __int128 v = __int128(x[e.i]) * y[e.j] % pk * e.c + prodbuf[size_t(e.k)];
            i64 r = i64(v % pk);
            prodbuf[size_t(e.k)] = r < 0 ? r + pk : r;
        }
    }

    bool member(const i64* x) const {
        for (size_t c = 0; c < n; ++c) {
            __int128 s = 0;
            for (size_t i = 0; i < n; ++i) s += __int128(x[i]) * adj[i * n + c];
            if (s % pk != 0) return false;
        }
        return true;
    }

    bool member_scaled(const i64* x, i64 scale) {
        for (size_t c = 0; c < n; ++c) {
            __int128 s = 0;
            for (size_t i = 0; i < n; ++i) s += __int128(x[i]) * adj[i * n + c];
            if (s * scale % pk != 0) return false;
        }
        return true;
    }

    bool subring(const std::vector<i64>& cell, i64 scale = 1) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = lam.lie ? i + 1 : 0; j < n; ++j) {
                product_mod(&cell[i * n], &cell[j * n]);
                bool ok = scale == 1 ? member(prodbuf.data())
                                     : member_scaled(prodbuf.data(), scale);
                if (!ok) return false;
            }
        return true;
    }

    bool ideal(const std::vector<i64>& cell) {
        std::vector<i64> basis(n, 0);
        for (size_t r = 0; r < n; ++r) {
            for (size_t t = 0; t < n; ++t) basis[t] = (t == r) ? 1 : 0;
            for (size_t j = 0; j < n; ++j) {
                product_mod(basis.data(), &cell[j * n]);
                if (!member(prodbuf.data())) return false;
                if (!lam.lie) {
                    product_mod(&cell[j * n], basis.data());
                    if (!member(prodbuf.data())) return false;
                }
            }
        }
        return true;
    }
};

IntegerMatrix cell_to_matrix(const std::vector<i64>& cell, size_t n) {
    IntegerMatrix m(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) m.at(i, j) = long(cell[i * n + j]);
    return m;
}

void check_budget(int n, i64 p, unsigned long kmax) {
    // The kernel needs p^kmax < 2^31 and the exact adjugate recursion needs
    // (n-1) * kmax * log2(p) within the __int128 budget.
    checked_pow(p, kmax, (i64(1) << 31) - 1);
    double bits = double(n - 1) * double(kmax) * std::log2(double(p));
    if (bits > 110)
        throw std::overflow_error("census: rank/prime/kmax combination exceeds the budget");
}

}  // namespace

void enumerate_sublattices(int n, i64 p, unsigned long k,
                           const std::function<void(const std::vector<i64>&)>& visit) {
    if (n < 1) throw std::invalid_argument("enumerate_sublattices: n must be positive");
    for (const auto& diag : compositions(n, k)) visit_cells_for_diagonal(n, p, diag, visit);
}

bool is_subring(const IntegerMatrix& M, const RingSpec& spec, const BigInt& p) {
    size_t n = size_t(spec.rank);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = spec.lie ? i + 1 : 0; j < n; ++j) {
            auto prod = spec.product(M.row(i), M.row(j));
            if (!membership_test(prod, M, p)) return false;
        }
    return true;
}

bool is_ideal(const IntegerMatrix& M, const RingSpec& spec, const BigInt& p) {
    size_t n = size_t(spec.rank);
    for (size_t r = 0; r < n; ++r) {
        std::vector<BigInt> basis(n, BigInt(0));
        basis[r] = 1;
        for (size_t j = 0; j < n; ++j) {
            if (!membership_test(spec.product(basis, M.row(j)), M, p)) return false;
            if (!spec.lie && !membership_test(spec.product(M.row(j), basis), M, p))
                return false;
        }
    }
    return true;
}

unsigned long normalizer_weight(const IntegerMatrix& M, const RingSpec& spec, const BigInt& p) {
    if (!spec.lie)
        throw std::domain_error("normalizer_weight: requires a Lie ring");
    if (!is_subring(M, spec, p))
        throw std::domain_error("normalizer_weight: lattice is not a subring");
    BigInt det = determinant(M);
    unsigned long N = p_valuation(det, p);
    if (N == 0) return 0;
    size_t n = size_t(spec.rank);
    IntegerMatrix adj = adjugate(M);
    BigInt mod = int_pow(p, N);
    IntegerMatrix stacked(n, n * n);
    for (size_t i = 0; i < n; ++i) {
        IntegerMatrix Bi = spec.right_mult_by(M.row(i)) * adj;
        for (size_t r = 0; r < n; ++r)
            for (size_t s = 0; s < n; ++s) {
                BigInt v = Bi.at(r, s) % mod;
                if (v < 0) v += mod;
                stacked.at(r, i * n + s) = v;
            }
    }
    return congruence_solution_index(stacked, p, N);
}

CoefficientTable census(const RingSpec& spec, CensusKind kind, long p, unsigned long kmax,
                        int threads) {
    if (kind == CensusKind::conjugacy && !spec.lie)
        throw std::domain_error("census: conjugacy kind requires a Lie ring");
    check_budget(spec.rank, p, kmax);
    int n = spec.rank;
    SparseLambda lam(spec);

    struct Task {
        unsigned long k;
        std::vector<unsigned long> diag;
    };
    std::vector<Task> tasks;
    for (unsigned long k = 1; k <= kmax; ++k)
        for (auto& d : compositions(n, k)) tasks.push_back({k, std::move(d)});

    std::function<BigRational(size_t)> run = [&](size_t idx) -> BigRational {
        const Task& task = tasks[idx];
        CellChecker chk(lam, p);
        BigRational acc(0);
        long count = 0;
        std::map<unsigned long, long> weight_counts;  // e -> count (conjugacy)
        visit_cells_for_diagonal(n, p, task.diag, [&](const std::vector<i64>& cell) {
            chk.load(cell, task.k);
            switch (kind) {
                case CensusKind::subring:
                    if (chk.subring(cell)) ++count;
                    break;
                case CensusKind::ideal:
                    if (chk.ideal(cell)) ++count;
                    break;
                case CensusKind::conjugacy:
                    if (chk.subring(cell)) {
                        auto m = cell_to_matrix(cell, size_t(n));
                        ++weight_counts[normalizer_weight(m, spec, BigInt(p))];
                    }
                    break;
            }
        });
        if (kind == CensusKind::conjugacy) {
            for (const auto& [e, c] : weight_counts)
                acc += BigRational(BigInt(c), int_pow(static_cast<unsigned long>(p), e));
        } else {
            acc = BigRational(count);
        }
        return acc;
    };
    auto partials = parallel_map<BigRational>(tasks.size(), threads, run);

    CoefficientTable out;
    out.kind = to_string(kind);
    out.prime = p;
    out.coeffs.assign(kmax + 1, BigRational(0));
    out.coeffs[0] = BigRational(1);
    for (size_t i = 0; i < tasks.size(); ++i) out.coeffs[tasks[i].k] += partials[i];
    return out;
}

CoefficientTable census_by_class(const RingSpec& spec, long p, unsigned long kmax,
                                 int threads) {
    check_budget(spec.rank, p, kmax);
    int n = spec.rank;
    SparseLambda lam(spec);

    struct Task {
        unsigned long k;
        std::vector<unsigned long> diag;
    };
    std::vector<Task> tasks;
    for (unsigned long k = 0; k <= kmax; ++k)
        for (auto& d : compositions(n, k)) tasks.push_back({k, std::move(d)});

    // partial[j] = number of classes whose largest subring has index p^j.
    std::function<std::vector<long>(size_t)> run = [&](size_t idx) -> std::vector<long> {
        const Task& task = tasks[idx];
        CellChecker chk(lam, p);
        std::vector<long> partial(kmax + 1, 0);
        visit_cells_for_diagonal(n, p, task.diag, [&](const std::vector<i64>& cell) {
            // Maximal in its homothety class: some entry is a p-unit.
            bool maximal = false;
            for (i64 v : cell)
                if (v % p != 0) {
                    maximal = true;
                    break;
                }
            if (!maximal) return;
            chk.load(cell, task.k);
            for (unsigned long m = 0;; ++m) {
                unsigned long total = task.k + m * static_cast<unsigned long>(n);
                if (total > kmax) break;
                i64 scale = checked_pow(p, m, (i64(1) << 31) - 1);
                if (chk.subring(cell, scale)) {
                    ++partial[total];
                    break;
                }
            }
        });
        return partial;
    };
    auto partials = parallel_map<std::vector<long>>(tasks.size(), threads, run);

    std::vector<BigRational> largest(kmax + 1, BigRational(0));
    for (const auto& part : partials)
        for (size_t j = 0; j <= kmax; ++j) largest[j] += BigRational(part[j]);

    // Multiply by the expansion of (1 - p^{-ns})^{-1}: repeat with period n.
    CoefficientTable out;
    out.kind = "subring";
    out.prime = p;
    out.coeffs.assign(kmax + 1, BigRational(0));
    for (unsigned long k = 0; k <= kmax; ++k)
        for (unsigned long t = 0; t * static_cast<unsigned long>(n) <= k; ++t)
            out.coeffs[k] += largest[k - t * static_cast<unsigned long>(n)];
    return out;
}

std::map<std::vector<unsigned long>, BigInt> maximal_class_type_census(int n, long p,
                                                                       unsigned long K) {
    std::map<std::vector<unsigned long>, BigInt> out;
    for (const auto& diag : compositions(n, K))
        visit_cells_for_diagonal(n, p, diag, [&](const std::vector<i64>& cell) {
            bool maximal = false;
            for (i64 v : cell)
                if (v % p != 0) {
                    maximal = true;
                    break;
                }
            if (!maximal) return;
            auto copy = cell;
            auto exps = small_edt(copy, size_t(n), size_t(n), p, K + 1);
            std::vector<unsigned long> desc(exps.rbegin(), exps.rend());
            out[desc] += 1;
        });
    return out;
}

}  // namespace lzeta
