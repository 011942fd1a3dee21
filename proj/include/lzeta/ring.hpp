#pragma once

/// Rings given by structure constants on Z^n, their derived subrings and
/// centres, commutator matrices of linear forms, and the basis adapted to
/// L' and L' /\ Z(L) that drives the representation-zeta machinery.

#include <lzeta/intmatrix.hpp>
#include <lzeta/laurent.hpp>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lzeta {

/// Parse/validation failure for ring files; carries a machine-readable code
/// and 1-based line number (0 when not tied to a line).
struct RingError : std::runtime_error {
    RingError(std::string code_, int line_, const std::string& msg)
        : std::runtime_error(msg), code(std::move(code_)), line(line_) {}
    std::string code;
    int line;
};

class RingSpec {
public:
    int rank = 0;
    bool lie = false;
    std::optional<int> declared_class;
    std::vector<std::string> labels;
    // lambda[(i,j,k)] with 0-based indices; omitted entries are zero.
    std::map<std::array<int, 3>, long> lambda;

    long structure_constant(int i, int j, int k) const {
        auto it = lambda.find({i, j, k});
        return it == lambda.end() ? 0 : it->second;
    }

    bool is_trivial() const { return lambda.empty(); }

    /// Product of elements given by coordinate vectors.
    std::vector<BigInt> product(const std::vector<BigInt>& x,
                                const std::vector<BigInt>& y) const;

    /// Matrix of right multiplication by basis element r: x*l_r = x*C_r.
    IntegerMatrix right_mult_matrix(int r) const;
    /// Matrix of left multiplication by basis element r: l_r*x = x*D_r.
    IntegerMatrix left_mult_matrix(int r) const;
    /// Matrix of right multiplication by the element with coordinates v.
    IntegerMatrix right_mult_by(const std::vector<BigInt>& v) const;

    /// Nilpotency class of the lower central series over Q; nullopt if the
    /// series does not terminate.
    std::optional<int> nilpotency_class() const;

    void validate() const;  // throws RingError on antisymmetry/Jacobi failure
};

RingSpec parse_ring(const std::string& text);
RingSpec parse_ring_file(const std::string& path);

/// Matrix of homogeneous linear forms in v variables; entry (i,j) is the
/// coefficient vector of the form.
class LinearFormMatrix {
public:
    LinearFormMatrix() : rows_(0), cols_(0), nvars_(0) {}
    LinearFormMatrix(size_t rows, size_t cols, size_t nvars)
        : rows_(rows), cols_(cols), nvars_(nvars),
          e_(rows * cols, std::vector<long>(nvars, 0)) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    size_t nvars() const { return nvars_; }
    std::vector<long>& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const std::vector<long>& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }

    IntegerMatrix evaluate(const std::vector<BigInt>& y) const;
    LinearFormMatrix column_submatrix(size_t first, size_t count) const;

    /// Entry (i,j) as a polynomial in the given variable names.
    LaurentPoly entry_poly(size_t i, size_t j, const std::vector<std::string>& vars) const;

    /// Largest minor size with a not-identically-zero determinant.
    size_t generic_rank() const;

private:
    size_t rows_, cols_, nvars_;
    std::vector<std::vector<long>> e_;
};

/// R(y) = (L_ij(y)) with L_ij(y) = sum_k lambda_ijk y_k.
LinearFormMatrix commutator_matrix(const RingSpec& spec);

struct DerivedAndCentre {
    IntegerMatrix derived;  // saturated HNF basis of Q-span(l_i l_j) /\ Z^n
    IntegerMatrix centre;   // saturated basis of the two-sided annihilator
    bool derived_was_saturated = true;
};
DerivedAndCentre derived_and_centre(const RingSpec& spec);

struct RepresentationData {
    int d = 0;   // rank of L / L'_s
    int m = 0;   // rank of L'_s / (L'_s /\ Z(L))
    int n = 0;   // rank of L'_s
    IntegerMatrix basis_change;  // rows: adapted basis in original coordinates
    LinearFormMatrix R;          // (d+m) x (d+m) forms in n variables
    LinearFormMatrix S;          // last m columns of R
    BigInt derived_index = 1;    // [L'_s : L']
    std::set<long> excluded_primes;  // 2 and the primes dividing derived_index
};

/// Builds the adapted basis of a nilpotent Lie ring; throws RingError for
/// non-lie or non-nilpotent input.
RepresentationData build_representation_data(const RingSpec& spec);

}  // namespace lzeta
