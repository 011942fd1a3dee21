#include <lzeta/funeq.hpp>

#include <lzeta/kirillov.hpp>
#include <lzeta/parallel.hpp>

#include <algorithm>
#include <sstream>

namespace lzeta {

namespace {
const std::vector<std::string> QT{"Q", "T"};
}

DenominatorAnsatz DenominatorAnsatz::parse(const std::string& text) {
    DenominatorAnsatz out;
    std::istringstream is(text);
    std::string part;
    while (std::getline(is, part, ';')) {
        if (part.empty()) continue;
        auto comma = part.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("ansatz: expected 'a,b' in '" + part + "'");
        int a = std::stoi(part.substr(0, comma));
        int b = std::stoi(part.substr(comma + 1));
        if (a < 0 || b < 0) throw std::invalid_argument("ansatz: exponents must be >= 0");
        out.factors.emplace_back(a, b);
    }
    if (out.factors.empty()) throw std::invalid_argument("ansatz: no factors");
    return out;
}

LaurentPoly DenominatorAnsatz::poly() const {
    LaurentPoly d = LaurentPoly::constant(BigRational(1), QT);
    for (auto [a, b] : factors)
        d *= LaurentPoly::constant(BigRational(1), QT) -
             LaurentPoly::monomial(QT, ExpVec{a, b});
    return d;
}

std::string DenominatorAnsatz::to_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << ";";
        os << factors[i].first << "," << factors[i].second;
    }
    return os.str();
}

bool ExactLinearSolver::add_equation(const std::vector<BigRational>& coeffs,
                                     const BigRational& rhs) {
    if (coeffs.size() != unknowns_)
        throw std::invalid_argument("ExactLinearSolver: arity mismatch");
    std::vector<BigRational> row = coeffs;
    row.push_back(rhs);
    for (size_t r = 0; r < rows_.size(); ++r) {
        const BigRational& f = row[pivots_[r]];
        if (f.is_zero()) continue;
        for (size_t c = 0; c <= unknowns_; ++c) row[c] -= f * rows_[r][c];
    }
    size_t pivot = unknowns_;
    for (size_t c = 0; c < unknowns_; ++c)
        if (!row[c].is_zero()) {
            pivot = c;
            break;
        }
    if (pivot == unknowns_) return row[unknowns_].is_zero();
    BigRational inv = BigRational(1) / row[pivot];
    for (size_t c = 0; c <= unknowns_; ++c) row[c] *= inv;
    for (size_t r = 0; r < rows_.size(); ++r) {
        const BigRational& f = rows_[r][pivot];
        if (f.is_zero()) continue;
        for (size_t c = 0; c <= unknowns_; ++c) rows_[r][c] -= f * row[c];
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(pivot);
    return true;
}

std::optional<std::vector<BigRational>> ExactLinearSolver::solve() const {
    if (rows_.size() < unknowns_) return std::nullopt;
    std::vector<BigRational> x(unknowns_);
    for (size_t r = 0; r < rows_.size(); ++r) x[pivots_[r]] = rows_[r][unknowns_];
    return x;
}

RationalFunction fit_rational(const std::vector<CoefficientTable>& tables,
                              const DenominatorAnsatz& ansatz, int dQ, int dT) {
    if (tables.size() < 2)
        throw FitError(FitError::Kind::insufficient_data,
                       "fit_rational: need tables for at least two primes");
    for (size_t i = 1; i < tables.size(); ++i)
        if (tables[i].kind != tables[0].kind)
            throw std::invalid_argument("fit_rational: mixed table kinds");

    size_t unknowns = size_t(dQ + 1) * size_t(dT + 1);
    size_t equations = 0;
    for (const auto& t : tables) equations += t.coeffs.size();
    if (5 * equations < 6 * unknowns)  // >= 20% overdetermination
        throw FitError(FitError::Kind::insufficient_data,
                       "fit_rational: system is not overdetermined by 20% (" +
                           std::to_string(equations) + " equations, " +
                           std::to_string(unknowns) + " unknowns)");

    LaurentPoly den = ansatz.poly();
    auto dcoeffs = den.coefficients_in(1);  // index 1 = T in {Q, T}

    // Insert equations by descending prime: small primes are the usual
    // uniformity offenders, so they arrive last and get named in the error.
    std::vector<size_t> order(tables.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return tables[a].prime > tables[b].prime; });

    ExactLinearSolver solver(unknowns);
    for (size_t oi : order) {
        const auto& table = tables[oi];
        BigRational p(table.prime);
        std::vector<BigRational> ppow(size_t(dQ) + 1, BigRational(1));
        for (int i = 1; i <= dQ; ++i) ppow[size_t(i)] = ppow[size_t(i) - 1] * p;
        for (unsigned long k = 0; k < table.coeffs.size(); ++k) {
            // rhs = [T^k] (D(p, T) * sum a_{p^j} T^j)
            BigRational rhs(0);
            for (const auto& [t, dpoly] : dcoeffs) {
                if (t < 0 || static_cast<unsigned long>(t) > k) continue;
                rhs += dpoly.evaluate({p, BigRational(0)}) *
                       table.coeffs[k - static_cast<unsigned long>(t)];
            }
            std::vector<BigRational> row(unknowns, BigRational(0));
            if (k <= static_cast<unsigned long>(dT))
                for (int i = 0; i <= dQ; ++i)
                    row[size_t(i) * size_t(dT + 1) + k] = ppow[size_t(i)];
            if (!solver.add_equation(row, rhs))
                throw FitError(FitError::Kind::not_uniform,
                               "fit_rational: tables are not uniform w.r.t. the ansatz; "
                               "first mismatch at (p, k) = (" +
                                   std::to_string(table.prime) + ", " + std::to_string(k) +
                                   ")",
                               table.prime, k);
        }
    }
    auto sol = solver.solve();
    if (!sol)
        throw FitError(FitError::Kind::underdetermined,
                       "fit_rational: underdetermined system (nullity " +
                           std::to_string(unknowns - solver.rank()) + ")",
                       0, 0, unknowns - solver.rank());
    LaurentPoly num(QT);
    for (int i = 0; i <= dQ; ++i)
        for (int j = 0; j <= dT; ++j)
            num.add_term(ExpVec{i, j}, (*sol)[size_t(i) * size_t(dT + 1) + size_t(j)]);
    return RationalFunction(num, den);
}

FuneqReport check_funeq(const RationalFunction& W, int a, long b, long c) {
    RationalFunction inv = substitute_inverse(W, QT);
    LaurentPoly mono = LaurentPoly::monomial(
        QT, ExpVec{int(b), int(c)}, (a % 2 == 0) ? BigRational(1) : BigRational(-1));
    RationalFunction target = W * RationalFunction::from_poly(mono);
    FuneqReport rep;
    rep.sign_parity = ((a % 2) + 2) % 2;
    rep.b = b;
    rep.c = c;
    rep.residual = inv - target;
    rep.holds = rep.residual.num().is_zero();
    return rep;
}

std::optional<std::tuple<int, long, long>> discover_funeq(const RationalFunction& W) {
    if (W.is_zero()) return std::nullopt;
    RationalFunction inv = substitute_inverse(W, QT);
    auto ratio = monomial_ratio(inv, W);
    if (!ratio) return std::nullopt;
    const auto& vars = W.num().vars();
    long b = 0, c = 0;
    for (size_t i = 0; i < vars.size(); ++i) {
        if (vars[i] == "Q") b = ratio->exponents[i];
        if (vars[i] == "T") c = ratio->exponents[i];
    }
    return std::make_tuple(ratio->sign_parity, b, c);
}

PipelineResult funeq_pipeline(const RingSpec& spec, const std::string& kind,
                              const std::vector<long>& primes, unsigned long kmax,
                              const DenominatorAnsatz& ansatz, int dQ, int dT, int threads) {
    PipelineResult out;
    int n = spec.rank;
    long binom2 = long(n) * (n - 1) / 2;

    if (kind == "irr") {
        auto rd = build_representation_data(spec);
        for (long p : primes) {
            auto rt = rep_zeta_coeffs(rd, p, kmax, threads);
            CoefficientTable t;
            t.kind = "irr";
            t.prime = p;
            for (const auto& c : rt.coeffs) t.coeffs.emplace_back(c);
            out.tables.push_back(std::move(t));
        }
        auto dc = derived_and_centre(spec);
        out.expected_a = 0;
        out.expected_b = long(dc.derived.rows());
        out.expected_c = 0;
    } else {
        CensusKind ck = census_kind_from_string(kind);
        std::function<CoefficientTable(size_t)> run = [&](size_t i) {
            return census(spec, ck, primes[i], kmax, 1);
        };
        out.tables = parallel_map<CoefficientTable>(primes.size(), threads, run);
        if (kind == "ideal") {
            auto dc = derived_and_centre(spec);
            long d = n - long(dc.centre.rows());
            out.expected_a = n;
            out.expected_b = binom2;
            out.expected_c = d + n;
            auto cls = spec.nilpotency_class();
            if (!spec.lie || !cls || *cls > 2) {
                out.theorem_applicable = false;
                out.note =
                    "ideal functional equation is only guaranteed for class-2 Lie rings; "
                    "check performed informationally";
            }
        } else {
            out.expected_a = n;
            out.expected_b = binom2;
            out.expected_c = n;
        }
    }

    out.W = fit_rational(out.tables, ansatz, dQ, dT);
    out.report = check_funeq(out.W, out.expected_a, out.expected_b, out.expected_c);
    return out;
}

}  // namespace lzeta
