#include "ellw/legmatrix.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

namespace ellw {

namespace {

int ipow(int b, int e) {
    int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

void check_shape(const LegMatrix& a, const LegMatrix& b, const char* op) {
    if (a.dim != b.dim || a.legs != b.legs)
        throw DomainError(std::string(op) + ": leg shape mismatch");
}

}  // namespace

LegMatrix LegMatrix::identity(int dim, int legs) {
    const int n = ipow(dim, legs);
    return {dim, legs, Eigen::MatrixXcd::Identity(n, n)};
}

LegMatrix LegMatrix::zero(int dim, int legs) {
    const int n = ipow(dim, legs);
    return {dim, legs, Eigen::MatrixXcd::Zero(n, n)};
}

int LegMatrix::digit(int flat, int leg) const {
    return (flat / ipow(dim, legs - leg)) % dim;
}

LegMatrix operator*(const LegMatrix& a, const LegMatrix& b) {
    check_shape(a, b, "operator*");
    return {a.dim, a.legs, a.mat * b.mat};
}

LegMatrix operator*(cplx s, const LegMatrix& m) { return {m.dim, m.legs, s * m.mat}; }

LegMatrix operator+(const LegMatrix& a, const LegMatrix& b) {
    check_shape(a, b, "operator+");
    return {a.dim, a.legs, a.mat + b.mat};
}

LegMatrix operator-(const LegMatrix& a, const LegMatrix& b) {
    check_shape(a, b, "operator-");
    return {a.dim, a.legs, a.mat - b.mat};
}

LegMatrix tensor(const LegMatrix& a, const LegMatrix& b) {
    if (a.dim != b.dim) throw DomainError("tensor: per-leg dimensions differ");
    const int na = a.size(), nb = b.size();
    Eigen::MatrixXcd out(na * nb, na * nb);
    for (int ra = 0; ra < na; ++ra)
        for (int ca = 0; ca < na; ++ca)
            out.block(ra * nb, ca * nb, nb, nb) = a.mat(ra, ca) * b.mat;
    return {a.dim, a.legs + b.legs, std::move(out)};
}

LegMatrix partial_transpose(const LegMatrix& m, int leg) {
    if (leg < 1 || leg > m.legs) throw DomainError("partial_transpose: leg out of range");
    const int n = m.size();
    const int stride = ipow(m.dim, m.legs - leg);
    Eigen::MatrixXcd out(n, n);
    for (int r = 0; r < n; ++r) {
        const int rd = m.digit(r, leg);
        for (int c = 0; c < n; ++c) {
            const int cd = m.digit(c, leg);
            const int r2 = r + (cd - rd) * stride;
            const int c2 = c + (rd - cd) * stride;
            out(r, c) = m.mat(r2, c2);
        }
    }
    return {m.dim, m.legs, std::move(out)};
}

LegMatrix permutation_op(int s, int i, int j, int N) {
    if (i < 1 || j <= i || j > s) throw DomainError("permutation_op: needs 1 <= i < j <= s");
    LegMatrix out = LegMatrix::zero(N, s);
    const int n = out.size();
    const int si = ipow(N, s - i), sj = ipow(N, s - j);
    for (int c = 0; c < n; ++c) {
        const int di = out.digit(c, i), dj = out.digit(c, j);
        const int r = c + (dj - di) * si + (di - dj) * sj;
        out.mat(r, c) = 1.0;
    }
    return out;
}

LegMatrix embed(const LegMatrix& two_leg, int s, int i, int j) {
    if (two_leg.legs != 2) throw DomainError("embed: source must have exactly 2 legs");
    if (i < 1 || j < 1 || i > s || j > s || i == j) throw DomainError("embed: bad slots");
    const int N = two_leg.dim;
    LegMatrix out = LegMatrix::zero(N, s);
    const int n = out.size();
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            bool diag = true;
            for (int l = 1; l <= s && diag; ++l)
                if (l != i && l != j && out.digit(r, l) != out.digit(c, l)) diag = false;
            if (!diag) continue;
            const int rr = out.digit(r, i) * N + out.digit(r, j);
            const int cc = out.digit(c, i) * N + out.digit(c, j);
            out.mat(r, c) = two_leg.mat(rr, cc);
        }
    }
    return out;
}

LegMatrix partial_trace(const LegMatrix& m, int leg) {
    if (leg < 1 || leg > m.legs) throw DomainError("partial_trace: leg out of range");
    if (m.legs == 1) {
        Eigen::MatrixXcd tr(1, 1);
        tr(0, 0) = m.mat.trace();
        return {1, 1, std::move(tr)};
    }
    const int N = m.dim;
    const int n_out = ipow(N, m.legs - 1);
    const int stride = ipow(N, m.legs - leg);
    // Map reduced flat index -> full flat index with 0 on the traced leg.
    auto expand = [&](int red) {
        const int hi = red / stride;  // digits before the traced leg
        const int lo = red % stride;
        return hi * stride * N + lo;
    };
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_out, n_out);
    for (int r = 0; r < n_out; ++r)
        for (int c = 0; c < n_out; ++c)
            for (int a = 0; a < N; ++a)
                out(r, c) += m.mat(expand(r) + a * stride, expand(c) + a * stride);
    return {N, m.legs - 1, std::move(out)};
}

LegMatrix inverse(const LegMatrix& m, double cond_limit, double* cond_out) {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m.mat);
    const double rc = lu.rcond();
    if (cond_out) *cond_out = (rc > 0.0) ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(rc > 1.0 / cond_limit)) {
        std::ostringstream os;
        os << "inverse: condition estimate " << (rc > 0 ? 1.0 / rc : INFINITY) << " exceeds limit "
           << cond_limit << "; check refused";
        throw SingularMatrixError(os.str());
    }
    return {m.dim, m.legs, lu.inverse()};
}

LegMatrix matrix_power(const LegMatrix& m, int k, double cond_limit) {
    LegMatrix base = (k >= 0) ? m : inverse(m, cond_limit);
    LegMatrix out = LegMatrix::identity(m.dim, m.legs);
    for (int i = 0; i < std::abs(k); ++i) out = out * base;
    return out;
}

double max_abs(const LegMatrix& m) { return m.mat.cwiseAbs().maxCoeff(); }

double scaled_residual(const LegMatrix& lhs, const LegMatrix& rhs, double* scale_out) {
    check_shape(lhs, rhs, "scaled_residual");
    const double scale = std::max(1.0, max_abs(lhs));
    if (scale_out) *scale_out = scale;
    return (lhs.mat - rhs.mat).cwiseAbs().maxCoeff() / scale;
}

void dump_matrix(const LegMatrix& m, std::ostream& os) {
    os << "% legmatrix dim " << m.dim << " legs " << m.legs << " rows " << m.size() << " cols "
       << m.size() << "\n";
    os.precision(17);
    for (int r = 0; r < m.size(); ++r)
        for (int c = 0; c < m.size(); ++c)
            os << r + 1 << " " << c + 1 << " " << m.mat(r, c).real() << " " << m.mat(r, c).imag()
               << "\n";
}

}  // namespace ellw
