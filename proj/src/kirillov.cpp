#include <lzeta/kirillov.hpp>

#include <lzeta/parallel.hpp>

#include <sstream>

namespace lzeta {

namespace {

struct FlatForms {
    size_t rows, cols, v;
    std::vector<long> coef;  // [(i*cols+j)*v + t]

    explicit FlatForms(const LinearFormMatrix& m)
        : rows(m.rows()), cols(m.cols()), v(m.nvars()), coef(rows * cols * v) {
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                for (size_t t = 0; t < v; ++t) coef[(i * cols + j) * v + t] = m.at(i, j)[t];
    }

    void eval_mod(const std::vector<i64>& ell, i64 mod, std::vector<i64>& out) const {
        out.assign(rows * cols, 0);
        for (size_t e = 0; e < rows * cols; ++e) {
            __int128 s = 0;
            const long* c = &coef[e * v];
            for (size_t t = 0; t < v; ++t) s += __int128(c[t]) * ell[t];
            i64 r = i64(s % mod);
            out[e] = r < 0 ? r + mod : r;
        }
    }
};

// Enumerates primitive vectors mod p^N whose first p-unit coordinate is at
// position `shard`, calling fn(ell).
void enumerate_primitive_shard(size_t v, i64 p, i64 mod, size_t shard,
                               const std::function<void(const std::vector<i64>&)>& fn) {
    // Coordinates < shard run over multiples of p, coordinate `shard` over
    // units, the rest over everything.
    std::vector<i64> ell(v, 0);
    std::vector<i64> limits(v);
    for (size_t i = 0; i < v; ++i) limits[i] = (i < shard) ? mod / p : mod;
    ell[shard] = 1;  // first unit value
    for (;;) {
        fn(ell);
        // Odometer: coordinate `shard` steps over units, others plainly.
        size_t pos = 0;
        for (; pos < v; ++pos) {
            if (pos < shard) {
                // stored value is the multiple index; recover lazily below
                i64 idx = ell[pos] / p;
                if (idx + 1 < limits[pos]) {
                    ell[pos] = (idx + 1) * p;
                    break;
                }
                ell[pos] = 0;
            } else if (pos == shard) {
                i64 next = ell[pos] + 1;
                while (next < mod && next % p == 0) ++next;
                if (next < mod) {
                    ell[pos] = next;
                    break;
                }
                ell[pos] = 1;
            } else {
                if (ell[pos] + 1 < mod) {
                    ++ell[pos];
                    break;
                }
                ell[pos] = 0;
            }
        }
        if (pos == v) break;
    }
}

}  // namespace

EdtCountTable edt_census(const LinearFormMatrix& R, const LinearFormMatrix& S, long p,
                         unsigned long N, int threads) {
    if (N < 1) throw std::invalid_argument("edt_census: N must be >= 1");
    if (S.nvars() != R.nvars() && S.cols() != 0)
        throw std::invalid_argument("edt_census: S must share R's variables");
    size_t v = R.nvars();
    EdtCountTable out;
    out.prime = p;
    out.level = N;
    if (v == 0) return out;  // no primitive vectors
    i64 mod = checked_pow(p, N, (i64(1) << 31) - 1);
    FlatForms fr(R), fs(S);

    std::function<std::map<EdtKey, BigInt>(size_t)> run =
        [&](size_t shard) -> std::map<EdtKey, BigInt> {
        std::map<EdtKey, long> local;
        std::vector<i64> bufR, bufS;
        enumerate_primitive_shard(v, p, mod, shard, [&](const std::vector<i64>& ell) {
            fr.eval_mod(ell, mod, bufR);
            EdtKey key;
            key.m = small_edt(bufR, fr.rows, fr.cols, p, N);
            if (fs.cols > 0) {
                fs.eval_mod(ell, mod, bufS);
                key.n = small_edt(bufS, fs.rows, fs.cols, p, N);
            }
            ++local[key];
        });
        std::map<EdtKey, BigInt> big;
        for (const auto& [k, c] : local) big[k] = c;
        return big;
    };
    auto shards = parallel_map<std::map<EdtKey, BigInt>>(v, threads, run);
    for (const auto& sh : shards)
        for (const auto& [k, c] : sh) out.counts[k] += c;
    return out;
}

PSeriesTable p_series_table(const LinearFormMatrix& R, const LinearFormMatrix& S, long p,
                            unsigned long Nmax, int threads) {
    if (Nmax < 1) throw std::invalid_argument("p_series_table: Nmax must be >= 1");
    PSeriesTable out;
    out.prime = p;
    out.k = R.generic_rank();
    out.l = S.cols() == 0 ? 0 : S.generic_rank();
    for (unsigned long N = 1; N <= Nmax; ++N) {
        EdtCountTable full = edt_census(R, S, p, N, threads);
        EdtCountTable reduced;
        reduced.prime = p;
        reduced.level = N;
        for (const auto& [key, c] : full.counts) {
            for (size_t i = out.k; i < key.m.size(); ++i)
                if (key.m[i] != N)
                    throw std::logic_error("p_series_table: divisor beyond generic rank");
            for (size_t j = out.l; j < key.n.size(); ++j)
                if (key.n[j] != N)
                    throw std::logic_error("p_series_table: S divisor beyond generic rank");
            EdtKey rk;
            rk.m.assign(key.m.begin(), key.m.begin() + long(out.k));
            rk.n.assign(key.n.begin(), key.n.begin() + long(out.l));
            reduced.counts[rk] += c;
        }
        out.levels.push_back(std::move(reduced));
    }
    return out;
}

RepCoefficientTable rep_zeta_coeffs(const RepresentationData& data, long p,
                                    unsigned long kmax, int threads) {
    if (p == 2) throw std::domain_error("rep_zeta_coeffs: p = 2 is outside Howe's setting");
    if (data.excluded_primes.count(p))
        throw std::domain_error("rep_zeta_coeffs: prime " + std::to_string(p) +
                                " is in the excluded set");
    RepCoefficientTable out;
    out.prime = p;
    out.excluded_primes = data.excluded_primes;
    out.coeffs.assign(kmax + 1, BigInt(0));
    out.coeffs[0] = 1;  // the trivial character
    size_t v = size_t(data.n);
    if (v == 0 || kmax == 0) return out;

    size_t dm = size_t(data.d + data.m);
    FlatForms fr(data.R), fs(data.S);
    // a_{p^k} accumulates contributions p^{-wexp}; integer counts are kept
    // per (k, wexp) and combined once every level is in.
    using Acc = std::map<std::pair<unsigned long, unsigned long>, BigInt>;
    Acc grand;

    for (unsigned long N = 1; N <= 2 * kmax; ++N) {
        i64 mod = checked_pow(p, N, (i64(1) << 31) - 1);
        std::function<Acc(size_t)> run = [&](size_t shard) -> Acc {
            std::map<std::pair<unsigned long, unsigned long>, long> local;
            std::vector<i64> bufR, bufS;
            enumerate_primitive_shard(v, p, mod, shard, [&](const std::vector<i64>& ell) {
                fr.eval_mod(ell, mod, bufR);
                auto mtype = small_edt(bufR, dm, dm, p, N);
                if (!mtype.empty() && mtype[0] != 0) {
                    std::ostringstream os;
                    os << "rep_zeta_coeffs: R(l) vanishes mod " << p
                       << " at a primitive vector (l =";
                    for (i64 x : ell) os << " " << x;
                    os << "); the prime must be excluded";
                    throw std::domain_error(os.str());
                }
                unsigned long ksum = 0;
                for (auto mi : mtype) ksum += N - mi;
                if (ksum % 2 != 0) {
                    std::ostringstream os;
                    os << "rep_zeta_coeffs: odd radical index exponent at l =";
                    for (i64 x : ell) os << " " << x;
                    throw std::logic_error(os.str());
                }
                unsigned long k = ksum / 2;
                if (k == 0 || k > kmax) return;
                unsigned long wexp = 0;
                if (fs.cols > 0) {
                    fs.eval_mod(ell, mod, bufS);
                    auto ntype = small_edt(bufS, fs.rows, fs.cols, p, N);
                    for (auto nj : ntype) wexp += N - nj;
                }
                ++local[{k, wexp}];
            });
            Acc big;
            for (const auto& [key, c] : local) big[key] = c;
            return big;
        };
        auto shards = parallel_map<Acc>(v, threads, run);
        for (const auto& sh : shards)
            for (const auto& [key, c] : sh) grand[key] += c;
    }
    std::vector<BigRational> acc(kmax + 1, BigRational(0));
    for (const auto& [key, count] : grand) {
        auto [k, wexp] = key;
        acc[k] += BigRational(count, int_pow(static_cast<unsigned long>(p), wexp));
    }
    for (unsigned long k = 1; k <= kmax; ++k) {
        if (!acc[k].is_integer())
            throw std::logic_error("rep_zeta_coeffs: non-integral coefficient a_{p^" +
                                   std::to_string(k) + "} = " + acc[k].to_string());
        out.coeffs[k] = acc[k].num();
    }
    return out;
}

}  // namespace lzeta
