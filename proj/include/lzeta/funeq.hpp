#pragma once

/// Reconstruction of local zeta functions as bivariate rational functions
/// W(Q, T) from multi-prime coefficient tables under a denominator ansatz,
/// and verification/discovery of functional equations under Q,T -> inverse.

#include <lzeta/census.hpp>
#include <lzeta/ratfunc.hpp>
#include <lzeta/ring.hpp>

#include <optional>
#include <string>
#include <vector>

namespace lzeta {

/// Product of factors (1 - Q^{a_i} T^{b_i}); multiplicities allowed.
struct DenominatorAnsatz {
    std::vector<std::pair<int, int>> factors;

    /// Parses "a1,b1;a2,b2;...".
    static DenominatorAnsatz parse(const std::string& text);
    LaurentPoly poly() const;
    std::string to_string() const;
};

struct FitError : std::runtime_error {
    enum class Kind { not_uniform, underdetermined, insufficient_data };
    FitError(Kind k, const std::string& msg, long prime_ = 0, unsigned long kk = 0,
             size_t nullity_ = 0)
        : std::runtime_error(msg), kind(k), prime(prime_), k(kk), nullity(nullity_) {}
    Kind kind;
    long prime;       // witnessing prime (not_uniform)
    unsigned long k;  // witnessing coefficient index (not_uniform)
    size_t nullity;   // underdetermined
};

/// Exact interpolation: finds the unique numerator (degree <= dQ in Q and
/// <= dT in T) with num/ansatz matching every table through its kmax.
/// Requires >= 20% overdetermination; never guesses.
RationalFunction fit_rational(const std::vector<CoefficientTable>& tables,
                              const DenominatorAnsatz& ansatz, int dQ, int dT);

struct FuneqReport {
    bool holds = false;
    int sign_parity = 0;  // a mod 2; the factor is (-1)^a Q^b T^c
    long b = 0, c = 0;
    RationalFunction residual;  // inv(W) - (-1)^a Q^b T^c W, zero iff holds
};

/// Checks W|_{Q,T -> inverse} = (-1)^a Q^b T^c W exactly.
FuneqReport check_funeq(const RationalFunction& W, int a, long b, long c);

/// Searches for (a, b, c) with inv(W)/W = (-1)^a Q^b T^c.
std::optional<std::tuple<int, long, long>> discover_funeq(const RationalFunction& W);

struct PipelineResult {
    std::vector<CoefficientTable> tables;
    RationalFunction W;
    int expected_a = 0;
    long expected_b = 0, expected_c = 0;
    FuneqReport report;
    bool theorem_applicable = true;  // false: check is informational only
    std::string note;
};

/// census (or rep zeta) per prime -> fit -> check against the
/// theorem-dictated exponents: subring/conjugacy (n, n(n-1)/2, n), ideal
/// for class<=2 Lie rings (n, n(n-1)/2, d+n) with d = rank(L/Z(L)),
/// representation (0, h(L'), 0).  kind is one of
/// "subring", "ideal", "conjugacy", "irr".
PipelineResult funeq_pipeline(const RingSpec& spec, const std::string& kind,
                              const std::vector<long>& primes, unsigned long kmax,
                              const DenominatorAnsatz& ansatz, int dQ, int dT,
                              int threads = 0);

/// Incremental exact linear solver over the rationals (reduced row echelon
/// form).  Tags identify equations for inconsistency reports.
class ExactLinearSolver {
public:
    explicit ExactLinearSolver(size_t unknowns) : unknowns_(unknowns) {}

    /// Returns false if the equation contradicts the current system.
    bool add_equation(const std::vector<BigRational>& coeffs, const BigRational& rhs);

    size_t rank() const { return rows_.size(); }
    size_t unknowns() const { return unknowns_; }

    /// Unique solution, or nullopt when underdetermined.
    std::optional<std::vector<BigRational>> solve() const;

private:
    size_t unknowns_;
    std::vector<std::vector<BigRational>> rows_;  // [coeffs | rhs], RREF
    std::vector<size_t> pivots_;
};

}  // namespace lzeta
