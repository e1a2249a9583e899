#pragma once

#include "dbga/scalar.hpp"

namespace dbga {

// Dense exact matrix. Sizes in this engine stay at desk scale, so a dense
// layout with sparsity-aware pivot selection is the whole story.
class ExactMatrix {
  public:
    ExactMatrix() = default;
    ExactMatrix(Field f, int rows, int cols)
        : f_(f), rows_(rows), cols_(cols), a_((size_t)rows * cols, Scalar::zero(f)) {
        if (rows < 0 || cols < 0) throw err_pre("ShapeMismatch", "negative matrix dimension");
    }
    static ExactMatrix identity(Field f, int n);

    Field field() const { return f_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Scalar& at(int r, int c) const {
        check(r, c);
        return a_[(size_t)r * cols_ + c];
    }
    void set(int r, int c, const Scalar& v) {
        check(r, c);
        a_[(size_t)r * cols_ + c] = v;
    }
    void add_at(int r, int c, const Scalar& v) {
        check(r, c);
        auto& e = a_[(size_t)r * cols_ + c];
        e = e + v;
    }

    ExactMatrix operator*(const ExactMatrix& o) const;
    bool is_zero() const;

    struct Rref;
    // The RREF is unique, hence deterministic; pivot rows are chosen by
    // fewest nonzeros with (row index) tie-break.
    Rref rref() const;

    int rank() const;
    // Basis of the right kernel in reduced echelon form, one vector per
    // free column in ascending column order.
    std::vector<std::vector<Scalar>> kernel_basis() const;

  private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw err_pre("IndexOutOfRange", "matrix entry access out of bounds");
    }
    Field f_{0};
    int rows_ = 0, cols_ = 0;
    std::vector<Scalar> a_;
};

struct ExactMatrix::Rref {
    ExactMatrix mat;              // reduced row echelon form
    std::vector<int> pivot_cols;  // ascending
};

// dim ker(d_out) - rank(d_in) for a three-term piece of a complex.
// d_in lands in the middle space (rows of d_in = cols of d_out).
int cohomology_dim(const ExactMatrix& d_in, const ExactMatrix& d_out);

}  // namespace dbga
