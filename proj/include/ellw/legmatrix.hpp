#ifndef ELLW_LEGMATRIX_HPP
#define ELLW_LEGMATRIX_HPP

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "ellw/types.hpp"

namespace ellw {

// Dense complex matrix on an ordered tensor product of `legs` N-dimensional
// legs. Multi-index convention (fixed): leg 1 is the slowest-varying index,
// i.e. flat = a_1 N^{s-1} + a_2 N^{s-2} + ... + a_s. tensor(A, B) therefore
// puts A's legs before B's.
struct LegMatrix {
    int dim = 0;   // per-leg dimension N
    int legs = 0;  // number of legs s
    Eigen::MatrixXcd mat;

    LegMatrix() = default;
    LegMatrix(int dim_, int legs_, Eigen::MatrixXcd m) : dim(dim_), legs(legs_), mat(std::move(m)) {}

    int size() const { return static_cast<int>(mat.rows()); }

    static LegMatrix identity(int dim, int legs);
    static LegMatrix zero(int dim, int legs);

    // Digit of a flat index on a given leg (1-based).
    int digit(int flat, int leg) const;
};

LegMatrix operator*(const LegMatrix& a, const LegMatrix& b);
LegMatrix operator*(cplx s, const LegMatrix& m);
LegMatrix operator+(const LegMatrix& a, const LegMatrix& b);
LegMatrix operator-(const LegMatrix& a, const LegMatrix& b);

// Kronecker product; legs concatenate (A's legs first).
LegMatrix tensor(const LegMatrix& a, const LegMatrix& b);

// Transpose the row/column indices of one leg only (1-based); involution.
LegMatrix partial_transpose(const LegMatrix& m, int leg);

// Operator swapping legs i and j (1 <= i < j <= s) on the s-fold product.
LegMatrix permutation_op(int s, int i, int j, int N);

// Place the first leg of a two-leg matrix on slot i and the second on slot j
// of an s-fold product, identity elsewhere. i != j, slots 1-based.
LegMatrix embed(const LegMatrix& two_leg, int s, int i, int j);

// Trace out one leg, leaving an (s-1)-leg matrix on the remaining slots in
// their original order.
LegMatrix partial_trace(const LegMatrix& m, int leg);

// Dense inverse via LU with partial pivoting. Refuses when the reciprocal
// condition estimate indicates cond > cond_limit; the estimate is written to
// cond_out when non-null (also on success).
LegMatrix inverse(const LegMatrix& m, double cond_limit = 1e10, double* cond_out = nullptr);

// Integer matrix power (negative exponents via inverse()).
LegMatrix matrix_power(const LegMatrix& m, int k, double cond_limit = 1e10);

double max_abs(const LegMatrix& m);

// residual = max-abs-entry(L - R) / max(1, max-abs-entry(L)).
double scaled_residual(const LegMatrix& lhs, const LegMatrix& rhs, double* scale_out = nullptr);

// Text dump, one "row col re im" line per entry (1-based indices), preceded by
// a "%" comment line with the dimensions, for cross-tool comparison.
void dump_matrix(const LegMatrix& m, std::ostream& os);

}  // namespace ellw

#endif
