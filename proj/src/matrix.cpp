#include "dbga/matrix.hpp"

namespace dbga {

ExactMatrix ExactMatrix::identity(Field f, int n) {
    ExactMatrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
    return m;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (cols_ != o.rows_) throw err_pre("ShapeMismatch", "matrix product shape mismatch");
    ExactMatrix r(f_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Scalar& x = at(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Scalar& y = o.at(k, j);
                if (!y.is_zero()) r.add_at(i, j, x * y);
            }
        }
    return r;
}

bool ExactMatrix::is_zero() const {
    for (const auto& v : a_)
        if (!v.is_zero()) return false;
    return true;
}

ExactMatrix::Rref ExactMatrix::rref() const {
    Rref out{*this, {}};
    ExactMatrix& m = out.mat;
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
        // Pivot row: sparsest candidate below r, ties broken by row index.
        int best = -1, best_nnz = -1;
        for (int i = r; i < rows_; ++i) {
            if (m.at(i, c).is_zero()) continue;
            int nnz = 0;
            for (int j = c; j < cols_; ++j)
                if (!m.at(i, j).is_zero()) ++nnz;
            if (best == -1 || nnz < best_nnz) { best = i; best_nnz = nnz; }
        }
        if (best == -1) continue;
        if (best != r)
            for (int j = 0; j < cols_; ++j) {
                Scalar t = m.at(r, j);
                m.set(r, j, m.at(best, j));
                m.set(best, j, t);
            }
        Scalar inv = m.at(r, c).inverse();
        for (int j = c; j < cols_; ++j) m.set(r, j, m.at(r, j) * inv);
        for (int i = 0; i < rows_; ++i) {
            if (i == r) continue;
            Scalar f = m.at(i, c);
            if (f.is_zero()) continue;
            for (int j = c; j < cols_; ++j) m.set(i, j, m.at(i, j) - f * m.at(r, j));
        }
        out.pivot_cols.push_back(c);
        ++r;
    }
    return out;
}

int ExactMatrix::rank() const { return (int)rref().pivot_cols.size(); }

std::vector<std::vector<Scalar>> ExactMatrix::kernel_basis() const {
    Rref rr = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (int fc = 0; fc < cols_; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Scalar> v(cols_, Scalar::zero(f_));
        v[fc] = Scalar::one(f_);
        for (size_t k = 0; k < rr.pivot_cols.size(); ++k)
            v[rr.pivot_cols[k]] = -rr.mat.at((int)k, fc);
        basis.push_back(std::move(v));
    }
    return basis;
}

int cohomology_dim(const ExactMatrix& d_in, const ExactMatrix& d_out) {
    if (d_in.rows() != d_out.cols())
        throw err_pre("ShapeMismatch", "middle space dimension disagrees between differentials");
    if (d_in.cols() > 0 && d_out.rows() > 0 && !(d_out * d_in).is_zero())
        throw err_pre("CompositionNotZero", "d_out composed with d_in is nonzero");
    int rk_in = d_in.rank();
    int dim_ker = d_out.cols() - d_out.rank();
    return dim_ker - rk_in;
}

}  // namespace dbga
