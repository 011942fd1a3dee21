#include <lzeta/ring.hpp>

#include <array>
#include <fstream>
#include <sstream>

namespace lzeta {

std::vector<BigInt> RingSpec::product(const std::vector<BigInt>& x,
                                      const std::vector<BigInt>& y) const {
    std::vector<BigInt> out(size_t(rank), BigInt(0));
    for (const auto& [ijk, c] : lambda) {
        if (c == 0) continue;
        out[size_t(ijk[2])] += BigInt(c) * x[size_t(ijk[0])] * y[size_t(ijk[1])];
    }
    return out;
}

IntegerMatrix RingSpec::right_mult_matrix(int r) const {
    IntegerMatrix c{size_t(rank), size_t(rank)};
    for (int j = 0; j < rank; ++j)
        for (int k = 0; k < rank; ++k) c.at(size_t(j), size_t(k)) = structure_constant(j, r, k);
    return c;
}

IntegerMatrix RingSpec::left_mult_matrix(int r) const {
    IntegerMatrix d{size_t(rank), size_t(rank)};
    for (int j = 0; j < rank; ++j)
        for (int k = 0; k < rank; ++k) d.at(size_t(j), size_t(k)) = structure_constant(r, j, k);
    return d;
}

IntegerMatrix RingSpec::right_mult_by(const std::vector<BigInt>& v) const {
    IntegerMatrix c{size_t(rank), size_t(rank)};
    for (const auto& [ijk, lam] : lambda)
        c.at(size_t(ijk[0]), size_t(ijk[2])) += BigInt(lam) * v[size_t(ijk[1])];
    return c;
}

std::optional<int> RingSpec::nilpotency_class() const {
    // Lower central series of Q-spans; terminates iff nilpotent.
    IntegerMatrix current = IntegerMatrix::identity(size_t(rank));
    int c = 0;
    while (current.rows() > 0) {
        ++c;
        if (c > rank + 1) return std::nullopt;  // rank strictly drops when nilpotent
        IntegerMatrix prods(current.rows() * size_t(rank), size_t(rank));
        for (size_t i = 0; i < current.rows(); ++i)
            for (int r = 0; r < rank; ++r) {
                std::vector<BigInt> er(size_t(rank), BigInt(0));
                er[size_t(r)] = 1;
                auto pr = product(current.row(i), er);
                prods.set_row(i * size_t(rank) + size_t(r), pr);
            }
        IntegerMatrix next = prods.rows() == 0 ? IntegerMatrix(0, size_t(rank))
                                               : saturation_basis(prods);
        if (next.rows() >= current.rows() && current.rows() > 0 && c > 1) return std::nullopt;
        if (next.rows() == 0) return c;
        current = next;
    }
    return c;
}

void RingSpec::validate() const {
    for (const auto& [ijk, c] : lambda) {
        for (int x : ijk)
            if (x < 0 || x >= rank)
                throw RingError("validation", 0, "structure constant index out of range");
        (void)c;
    }
    if (!lie) return;
    for (int i = 0; i < rank; ++i)
        for (int k = 0; k < rank; ++k)
            if (structure_constant(i, i, k) != 0)
                throw RingError("antisymmetry", 0,
                                "lambda(" + std::to_string(i + 1) + "," + std::to_string(i + 1) +
                                    "," + std::to_string(k + 1) + ") must vanish");
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j)
            for (int k = 0; k < rank; ++k)
                if (structure_constant(i, j, k) != -structure_constant(j, i, k))
                    throw RingError("antisymmetry", 0,
                                    "antisymmetry fails at (" + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + "," + std::to_string(k + 1) + ")");
    // Jacobi: [[i,j],k] + [[j,k],i] + [[k,i],j] = 0, exactly.
    auto basis_vec = [&](int r) {
        std::vector<BigInt> v(size_t(rank), BigInt(0));
        v[size_t(r)] = 1;
        return v;
    };
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
            for (int k = j + 1; k < rank; ++k) {
                std::vector<BigInt> total(size_t(rank), BigInt(0));
                auto add3 = [&](int a, int b, int c) {
                    auto inner = product(basis_vec(a), basis_vec(b));
                    auto outer = product(inner, basis_vec(c));
                    for (int t = 0; t < rank; ++t) total[size_t(t)] += outer[size_t(t)];
                };
                add3(i, j, k);
                add3(j, k, i);
                add3(k, i, j);
                for (int t = 0; t < rank; ++t)
                    if (total[size_t(t)] != 0)
                        throw RingError("jacobi", 0,
                                        "Jacobi identity fails at (" + std::to_string(i + 1) +
                                            "," + std::to_string(j + 1) + "," +
                                            std::to_string(k + 1) + ")");
            }
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

long parse_long(const std::string& s, int lineno, const char* what) {
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw RingError("syntax", lineno, std::string("expected ") + what + ", got '" + s + "'");
    }
}

}  // namespace

RingSpec parse_ring(const std::string& text) {
    RingSpec spec;
    bool have_rank = false;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string& cmd = toks[0];
        if (cmd == "rank") {
            if (have_rank) throw RingError("syntax", lineno, "duplicate rank directive");
            if (toks.size() != 2) throw RingError("syntax", lineno, "rank expects one argument");
            long n = parse_long(toks[1], lineno, "rank");
            if (n < 1) throw RingError("syntax", lineno, "rank must be positive");
            spec.rank = int(n);
            have_rank = true;
            continue;
        }
        if (!have_rank) throw RingError("syntax", lineno, "rank must be the first directive");
        if (cmd == "basis") {
            if (toks.size() != size_t(spec.rank) + 1)
                throw RingError("syntax", lineno, "basis expects rank-many labels");
            spec.labels.assign(toks.begin() + 1, toks.end());
        } else if (cmd == "flags") {
            if (toks.size() >= 2 && toks[1] == "lie" && toks.size() == 2) {
                spec.lie = true;
            } else if (toks.size() == 3 && toks[1] == "nilpotent") {
                long c = parse_long(toks[2], lineno, "nilpotency class");
                if (c < 1) throw RingError("syntax", lineno, "nilpotency class must be positive");
                spec.declared_class = int(c);
            } else {
                throw RingError("syntax", lineno, "unknown flags directive");
            }
        } else if (cmd == "bracket") {
            // bracket <i> <j> -> <k> : <integer>
            if (toks.size() != 7 || toks[3] != "->" || toks[5] != ":")
                throw RingError("syntax", lineno, "expected: bracket i j -> k : c");
            long i = parse_long(toks[1], lineno, "index");
            long j = parse_long(toks[2], lineno, "index");
            long k = parse_long(toks[4], lineno, "index");
            long c = parse_long(toks[6], lineno, "integer");
            for (long x : {i, j, k})
                if (x < 1 || x > spec.rank)
                    throw RingError("syntax", lineno, "index out of range [1, rank]");
            if (c != 0) {
                auto key = std::array<int, 3>{int(i - 1), int(j - 1), int(k - 1)};
                if (spec.lambda.count(key))
                    throw RingError("syntax", lineno, "duplicate structure constant");
                spec.lambda[key] = c;
            }
        } else {
            throw RingError("syntax", lineno, "unknown directive '" + cmd + "'");
        }
    }
    if (!have_rank) throw RingError("syntax", 0, "missing rank directive");
    if (spec.lie) {
        // Antisymmetric completion: only i < j entries are required.
        auto given = spec.lambda;
        for (const auto& [ijk, c] : given) {
            if (ijk[0] == ijk[1]) continue;  // validate() reports diagonal entries
            auto mirror = std::array<int, 3>{ijk[1], ijk[0], ijk[2]};
            auto it = spec.lambda.find(mirror);
            if (it == spec.lambda.end()) {
                spec.lambda[mirror] = -c;
            } else if (it->second != -c) {
                throw RingError("antisymmetry", 0,
                                "inconsistent pair at (" + std::to_string(ijk[0] + 1) + "," +
                                    std::to_string(ijk[1] + 1) + "," + std::to_string(ijk[2] + 1) +
                                    ")");
            }
        }
    }
    spec.validate();
    return spec;
}

RingSpec parse_ring_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw RingError("io", 0, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_ring(ss.str());
}

IntegerMatrix LinearFormMatrix::evaluate(const std::vector<BigInt>& y) const {
    if (y.size() != nvars_) throw std::invalid_argument("LinearFormMatrix: arity mismatch");
    IntegerMatrix m(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            BigInt s(0);
            const auto& form = at(i, j);
            for (size_t k = 0; k < nvars_; ++k)
                if (form[k] != 0) s += BigInt(form[k]) * y[k];
            m.at(i, j) = s;
        }
    return m;
}

LinearFormMatrix LinearFormMatrix::column_submatrix(size_t first, size_t count) const {
    LinearFormMatrix s(rows_, count, nvars_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < count; ++j) s.at(i, j) = at(i, first + j);
    return s;
}

LaurentPoly LinearFormMatrix::entry_poly(size_t i, size_t j,
                                         const std::vector<std::string>& vars) const {
    LaurentPoly p(vars);
    const auto& form = at(i, j);
    for (size_t k = 0; k < nvars_; ++k) {
        if (form[k] == 0) continue;
        ExpVec e(vars.size(), 0);
        e[k] = 1;
        p.add_term(e, BigRational(form[k]));
    }
    return p;
}

namespace {

LaurentPoly poly_det(const std::vector<std::vector<LaurentPoly>>& m,
                     const std::vector<std::string>& vars) {
    size_t n = m.size();
    if (n == 0) return LaurentPoly::constant(BigRational(1), vars);
    if (n == 1) return m[0][0];
    LaurentPoly acc(vars);
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<LaurentPoly>> minor(n - 1);
        for (size_t r = 1; r < n; ++r)
            for (size_t c = 0; c < n; ++c)
                if (c != j) minor[r - 1].push_back(m[r][c]);
        LaurentPoly term = m[0][j] * poly_det(minor, vars);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

}  // namespace

size_t LinearFormMatrix::generic_rank() const {
    std::vector<std::string> vars;
    for (size_t k = 0; k < nvars_; ++k) vars.push_back("Y" + std::to_string(k + 1));
    size_t lim = std::min(rows_, cols_);
    for (size_t sz = lim; sz >= 1; --sz) {
        // Search for one non-vanishing sz-minor.
        std::vector<size_t> rsel(sz), csel(sz);
        for (size_t i = 0; i < sz; ++i) rsel[i] = i;
        auto next_comb = [](std::vector<size_t>& sel, size_t limit) {
            size_t k = sel.size();
            for (size_t i = k; i-- > 0;) {
                if (sel[i] + (k - i) <= limit) {
                    ++sel[i];
                    for (size_t j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
                    return true;
                }
            }
            return false;
        };
        for (bool more_r = true; more_r; more_r = next_comb(rsel, rows_ - 1)) {
            for (size_t i = 0; i < sz; ++i) csel[i] = i;
            for (bool more_c = true; more_c; more_c = next_comb(csel, cols_ - 1)) {
                std::vector<std::vector<LaurentPoly>> sub(sz);
                for (size_t i = 0; i < sz; ++i)
                    for (size_t j = 0; j < sz; ++j)
                        sub[i].push_back(entry_poly(rsel[i], csel[j], vars));
                if (!poly_det(sub, vars).is_zero()) return sz;
            }
        }
    }
    return 0;
}

LinearFormMatrix commutator_matrix(const RingSpec& spec) {
    size_t n = size_t(spec.rank);
    LinearFormMatrix r(n, n, n);
    for (const auto& [ijk, c] : spec.lambda)
        r.at(size_t(ijk[0]), size_t(ijk[1]))[size_t(ijk[2])] = c;
    return r;
}

DerivedAndCentre derived_and_centre(const RingSpec& spec) {
    size_t n = size_t(spec.rank);
    DerivedAndCentre out;
    // Derived subring: span of all pairwise basis products.
    std::vector<std::vector<long>> prods;
    for (int i = 0; i < spec.rank; ++i)
        for (int j = 0; j < spec.rank; ++j) {
            std::vector<long> row(n, 0);
            bool nonzero = false;
            for (int k = 0; k < spec.rank; ++k) {
                long c = spec.structure_constant(i, j, k);
                row[size_t(k)] = c;
                nonzero = nonzero || c != 0;
            }
            if (nonzero) prods.push_back(row);
        }
    if (prods.empty()) {
        out.derived = IntegerMatrix(0, n);
        out.derived_was_saturated = true;
    } else {
        IntegerMatrix raw = hnf_rowspan_basis(IntegerMatrix::from_rows(prods));
        out.derived = saturation_basis(IntegerMatrix::from_rows(prods));
        if (out.derived.rows() == n) out.derived = IntegerMatrix::identity(n);
        out.derived_was_saturated = (raw == out.derived);
    }
    // Centre: two-sided annihilator, the left kernel of [C_1..C_n D_1..D_n].
    IntegerMatrix stack(n, 2 * n * n);
    for (int r = 0; r < spec.rank; ++r) {
        auto c = spec.right_mult_matrix(r);
        auto d = spec.left_mult_matrix(r);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                stack.at(i, size_t(r) * n + j) = c.at(i, j);
                stack.at(i, (n + size_t(r)) * n + j) = d.at(i, j);
            }
    }
    out.centre = kernel_basis(stack.transposed());
    return out;
}

namespace {

// Rows of `sub` lie in the row span of `basis` (full row rank); returns the
// integral coordinates.  Throws if a coordinate is non-integral.
IntegerMatrix coordinates_in(const IntegerMatrix& sub, const IntegerMatrix& basis) {
    size_t r = basis.rows();
    // Select r independent pivot columns of the basis (rightmost nonzeros of
    // an HNF basis are strictly increasing, but accept any basis here).
    std::vector<size_t> cols;
    {
        IntegerMatrix probe(r, 0);
        std::vector<size_t> chosen;
        for (size_t c = 0; c < basis.cols() && chosen.size() < r; ++c) {
            std::vector<size_t> cand = chosen;
            cand.push_back(c);
            IntegerMatrix test(r, cand.size());
            for (size_t i = 0; i < r; ++i)
                for (size_t j = 0; j < cand.size(); ++j) test.at(i, j) = basis.at(i, cand[j]);
            // Full column rank iff some cand-sized minor is nonzero; use the
            // rank of the Smith form.
            auto div = smith_divisors(test);
            size_t rank = 0;
            for (const auto& d : div)
                if (d != 0) ++rank;
            if (rank == cand.size()) chosen = cand;
        }
        if (chosen.size() != r)
            throw std::domain_error("coordinates_in: basis is not full row rank");
        cols = chosen;
    }
    IntegerMatrix square(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) square.at(i, j) = basis.at(i, cols[j]);
    IntegerMatrix out(sub.rows(), r);
    for (size_t i = 0; i < sub.rows(); ++i) {
        std::vector<BigInt> x(r);
        for (size_t j = 0; j < r; ++j) x[j] = sub.at(i, cols[j]);
        auto y = solve_left(square, x);
        std::vector<BigInt> yz(r);
        for (size_t j = 0; j < r; ++j) {
            if (!y[j].is_integer())
                throw std::domain_error("coordinates_in: non-integral coordinate");
            yz[j] = y[j].num();
        }
        // Verify the full row, not only the pivot columns.
        for (size_t c = 0; c < basis.cols(); ++c) {
            BigInt s(0);
            for (size_t j = 0; j < r; ++j) s += yz[j] * basis.at(j, c);
            if (s != sub.at(i, c))
                throw std::domain_error("coordinates_in: row outside the span");
        }
        out.set_row(i, yz);
    }
    return out;
}

// Complement rows extending the saturated lattice W (rows in Z^c) to Z^c.
// Prefers standard basis vectors on the non-pivot columns of the HNF basis
// (smallest index first); falls back to a Smith-form complement.
IntegerMatrix complement_rows(const IntegerMatrix& w) {
    size_t c = w.cols(), r = w.rows();
    IntegerMatrix h = hnf_rowspan_basis(w);
    std::vector<bool> pivot(c, false);
    for (size_t i = 0; i < h.rows(); ++i)
        for (size_t j = c; j-- > 0;)
            if (h.at(i, j) != 0) {
                pivot[j] = true;
                break;
            }
    IntegerMatrix candidate(c - r, c);
    size_t k = 0;
    for (size_t j = 0; j < c; ++j)
        if (!pivot[j] && k < c - r) candidate.at(k++, j) = 1;
    if (k == c - r) {
        IntegerMatrix full(c, c);
        for (size_t i = 0; i < r; ++i) full.set_row(i, w.row(i));
        for (size_t i = 0; i < c - r; ++i) full.set_row(r + i, candidate.row(i));
        BigInt det = determinant(full);
        if (det == 1 || det == -1) return candidate;
    }
    IntegerMatrix U, Vinv;
    auto d = smith_with_transforms(w, U, Vinv);
    for (const auto& di : d)
        if (!(di == 1))
            throw std::domain_error("complement_rows: lattice is not saturated");
    IntegerMatrix out(c - r, c);
    for (size_t i = r; i < c; ++i)
        for (size_t j = 0; j < c; ++j) out.at(i - r, j) = Vinv.at(i, j);
    return out;
}

}  // namespace

RepresentationData build_representation_data(const RingSpec& spec) {
    if (!spec.lie) throw RingError("validation", 0, "representation data requires the lie flag");
    auto cls = spec.nilpotency_class();
    if (!cls) throw RingError("validation", 0, "ring is not nilpotent");
    size_t n_full = size_t(spec.rank);

    auto dc = derived_and_centre(spec);
    const IntegerMatrix& dsat = dc.derived;  // L'_s
    size_t nL = dsat.rows();

    // [L'_s : L'] from the unsaturated product span.
    BigInt index(1);
    {
        std::vector<std::vector<long>> prods;
        for (int i = 0; i < spec.rank; ++i)
            for (int j = 0; j < spec.rank; ++j) {
                std::vector<long> row(n_full, 0);
                bool nonzero = false;
                for (int k = 0; k < spec.rank; ++k) {
                    long c = spec.structure_constant(i, j, k);
                    row[size_t(k)] = c;
                    nonzero = nonzero || c != 0;
                }
                if (nonzero) prods.push_back(row);
            }
        if (!prods.empty()) {
            auto raw = hnf_rowspan_basis(IntegerMatrix::from_rows(prods));
            auto coords = coordinates_in(raw, dsat);
            index = abs(determinant(coords));
        }
    }

    // L'_s /\ Z(L): solve a b1 = b b2 via the left kernel of [b1; -b2].
    IntegerMatrix zinter(0, n_full);
    if (nL > 0 && dc.centre.rows() > 0) {
        size_t r1 = nL, r2 = dc.centre.rows();
        IntegerMatrix stacked(r1 + r2, n_full);
        for (size_t i = 0; i < r1; ++i)
            for (size_t j = 0; j < n_full; ++j) stacked.at(i, j) = dsat.at(i, j);
        for (size_t i = 0; i < r2; ++i)
            for (size_t j = 0; j < n_full; ++j) stacked.at(r1 + i, j) = -dc.centre.at(i, j);
        IntegerMatrix lk = kernel_basis(stacked.transposed());
        IntegerMatrix rows(lk.rows(), n_full);
        for (size_t i = 0; i < lk.rows(); ++i)
            for (size_t j = 0; j < n_full; ++j) {
                BigInt s(0);
                for (size_t a = 0; a < r1; ++a) s += lk.at(i, a) * dsat.at(a, j);
                rows.at(i, j) = s;
            }
        if (rows.rows() > 0) zinter = hnf_rowspan_basis(rows);
    }
    size_t zrank = zinter.rows();
    size_t m = nL - zrank;
    size_t d = n_full - nL;

    // Adapted basis: complete centre part -> derived -> full, in coordinates.
    // Mid part: complement of zinter inside L'_s.
    IntegerMatrix mid(0, n_full);
    if (m > 0) {
        IntegerMatrix zin_coords =
            zrank > 0 ? coordinates_in(zinter, dsat) : IntegerMatrix(0, nL);
        IntegerMatrix comp =
            zrank > 0 ? complement_rows(zin_coords) : IntegerMatrix::identity(nL);
        mid = IntegerMatrix(m, n_full);
        for (size_t i = 0; i < m; ++i)
            for (size_t j = 0; j < n_full; ++j) {
                BigInt s(0);
                for (size_t a = 0; a < nL; ++a) s += comp.at(i, a) * dsat.at(a, j);
                mid.at(i, j) = s;
            }
    }
    // Top part: complement of L'_s inside Z^n.
    IntegerMatrix top =
        nL > 0 ? complement_rows(dsat) : IntegerMatrix::identity(n_full);

    RepresentationData out;
    out.d = int(d);
    out.m = int(m);
    out.n = int(nL);
    out.derived_index = index;
    out.basis_change = IntegerMatrix(n_full, n_full);
    for (size_t i = 0; i < d; ++i) out.basis_change.set_row(i, top.row(i));
    for (size_t i = 0; i < m; ++i) out.basis_change.set_row(d + i, mid.row(i));
    for (size_t i = 0; i < zrank; ++i) out.basis_change.set_row(d + m + i, zinter.row(i));
    BigInt bdet = determinant(out.basis_change);
    if (!(bdet == 1 || bdet == -1))
        throw std::logic_error("build_representation_data: basis change not unimodular");

    // Derived part of the adapted basis (rows d .. d+nL-1), the Y-frame.
    IntegerMatrix dframe(nL, n_full);
    for (size_t i = 0; i < nL; ++i) dframe.set_row(i, out.basis_change.row(d + i));

    out.R = LinearFormMatrix(d + m, d + m, nL);
    for (size_t i = 0; i < d + m; ++i)
        for (size_t j = 0; j < d + m; ++j) {
            auto br = spec.product(out.basis_change.row(i), out.basis_change.row(j));
            if (nL == 0) {
                for (const auto& v : br)
                    if (v != 0) throw std::logic_error("bracket outside derived subring");
                continue;
            }
            IntegerMatrix one_row(1, n_full);
            one_row.set_row(0, br);
            auto y = coordinates_in(one_row, dframe);
            for (size_t k = 0; k < nL; ++k) {
                if (!y.at(0, k).fits_slong_p())
                    throw std::logic_error("representation data: coefficient overflow");
                out.R.at(i, j)[k] = y.at(0, k).get_si();
            }
        }
    // Antisymmetry of R as a matrix of forms.
    for (size_t i = 0; i < d + m; ++i)
        for (size_t j = 0; j < d + m; ++j)
            for (size_t k = 0; k < nL; ++k)
                if (out.R.at(i, j)[k] != -out.R.at(j, i)[k])
                    throw std::logic_error("representation data: R is not antisymmetric");

    out.S = out.R.column_submatrix(d, m);
    out.excluded_primes.insert(2);
    BigInt idx = index;
    for (long p = 2; idx > 1 && p <= 1000000; ++p)
        if (idx % p == 0) {
            out.excluded_primes.insert(p);
            while (idx % p == 0) idx /= p;
        }
    return out;
}

}  // namespace lzeta
