#include "githeight/linalg.hpp"

#include <Eigen/QR>

#include "githeight/errors.hpp"
#include "githeight/field.hpp"

namespace githeight {

RatMat RatMat::identity(int n) {
    RatMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMat RatMat::from_columns(const std::vector<RatVec>& cols) {
    if (cols.empty()) return RatMat();
    RatMat m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols; ++j) {
        if (static_cast<int>(cols[j].size()) != m.rows)
            throw Error("from_columns: ragged column lengths");
        for (int i = 0; i < m.rows; ++i) m.at(i, j) = cols[j][i];
    }
    return m;
}

RatVec RatMat::column(int j) const {
    RatVec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = at(i, j);
    return v;
}

namespace {

// Integer matrix with per-row denominators cleared; scale[i] is the factor
// row i was multiplied by.
struct IntRows {
    int rows, cols;
    std::vector<Int> a;
    std::vector<Int> scale;
    Int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
};

IntRows clear_denominators(const RatMat& m) {
    IntRows w{m.rows, m.cols, {}, {}};
    w.a.resize(static_cast<std::size_t>(m.rows) * m.cols);
    w.scale.resize(m.rows);
    for (int i = 0; i < m.rows; ++i) {
        Int l(1);
        for (int j = 0; j < m.cols; ++j)
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m.at(i, j).get_den().get_mpz_t());
        w.scale[i] = l;
        for (int j = 0; j < m.cols; ++j) {
            const Rat& q = m.at(i, j);
            w.at(i, j) = q.get_num() * (l / q.get_den());
        }
    }
    return w;
}

// Fraction-free elimination. Returns (rank, sign, last pivot); `want_det`
// aborts early with sign 0 when a pivot cannot be found in a square step.
struct BareissResult {
    int rank;
    int sign;
    Int last_pivot;
};

BareissResult bareiss(IntRows& w) {
    BareissResult res{0, 1, Int(1)};
    Int prev(1);
    const int steps = std::min(w.rows, w.cols);
    int r = 0;
    for (int k = 0; k < steps && r < w.rows; ++k) {
        // find pivot in column-major order among remaining block
        int pi = -1, pj = -1;
        for (int j = k; j < w.cols && pi < 0; ++j)
            for (int i = r; i < w.rows; ++i)
                if (w.at(i, j) != 0) { pi = i; pj = j; break; }
        if (pi < 0) break;
        if (pi != r) {
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(pi, j), w.at(r, j));
            res.sign = -res.sign;
        }
        if (pj != k) {
            for (int i = 0; i < w.rows; ++i) std::swap(w.at(i, pj), w.at(i, k));
            res.sign = -res.sign;
        }
        for (int i = r + 1; i < w.rows; ++i) {
            for (int j = k + 1; j < w.cols; ++j) {
                Int num = w.at(r, k) * w.at(i, j) - w.at(i, k) * w.at(r, j);
                mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                w.at(i, j) = num;
            }
            w.at(i, k) = 0;
        }
        prev = w.at(r, k);
        res.last_pivot = prev;
        ++r;
        res.rank = r;
    }
    return res;
}

} // namespace

int rank(const RatMat& m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    IntRows w = clear_denominators(m);
    return bareiss(w).rank;
}

Rat det(const RatMat& m) {
    if (m.rows != m.cols) throw Error("det: matrix is not square");
    if (m.rows == 0) return Rat(1);
    IntRows w = clear_denominators(m);
    BareissResult r = bareiss(w);
    if (r.rank < m.rows) return Rat(0);
    Rat d(r.last_pivot);
    if (r.sign < 0) d = -d;
    for (const Int& s : w.scale) d /= Rat(s);
    return d;
}

bool span_membership(const RatVec& v, const std::vector<RatVec>& basis) {
    for (const RatVec& b : basis)
        if (b.size() != v.size()) throw Error("span_membership: dimension mismatch");
    QField f;
    return in_span(f, echelon_basis(f, basis), v);
}

std::vector<RatVec> solve_columns(const RatMat& m, const std::vector<RatVec>& rhs) {
    // Gauss-Jordan on [M | B] over Q.
    const int nb = static_cast<int>(rhs.size());
    RatMat aug(m.rows, m.cols + nb);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        for (int b = 0; b < nb; ++b) aug.at(i, m.cols + b) = rhs[b][i];
    }
    std::vector<int> pivot_row_of_col(m.cols, -1);
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int pr = -1;
        for (int i = r; i < m.rows; ++i)
            if (sgn(aug.at(i, c)) != 0) { pr = i; break; }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < aug.cols; ++j) std::swap(aug.at(pr, j), aug.at(r, j));
        const Rat lead = aug.at(r, c);
        for (int j = 0; j < aug.cols; ++j) aug.at(r, j) /= lead;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r) continue;
            const Rat f = aug.at(i, c);
            if (sgn(f) == 0) continue;
            for (int j = 0; j < aug.cols; ++j) aug.at(i, j) -= f * aug.at(r, j);
        }
        pivot_row_of_col[c] = r;
        ++r;
    }
    // consistency: rows beyond rank must be zero in the B block
    for (int i = r; i < m.rows; ++i)
        for (int b = 0; b < nb; ++b)
            if (sgn(aug.at(i, m.cols + b)) != 0) return {};
    std::vector<RatVec> out(nb, RatVec(m.cols, Rat(0)));
    for (int c = 0; c < m.cols; ++c)
        if (pivot_row_of_col[c] >= 0)
            for (int b = 0; b < nb; ++b) out[b][c] = aug.at(pivot_row_of_col[c], m.cols + b);
    return out;
}

ComplexMatrix complex_qr_orthogonalize(const ComplexMatrix& m) {
    if (m.rows() < m.cols()) throw Error("complex_qr_orthogonalize: more columns than rows");
    Eigen::ColPivHouseholderQR<ComplexMatrix> qr(m);
    qr.setThreshold(1e-12);
    if (qr.rank() < m.cols()) throw Error("complex_qr_orthogonalize: rank-deficient input");
    Eigen::HouseholderQR<ComplexMatrix> plain(m);
    ComplexMatrix q = plain.householderQ() * ComplexMatrix::Identity(m.rows(), m.cols());
    return q;
}

} // namespace githeight
