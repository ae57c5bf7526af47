#pragma once

#include "sdphom/mpoly.hpp"
#include "sdphom/qmatrix.hpp"

#include <vector>

namespace sdphom {

// Dense matrix of multivariate polynomials over a shared context.
class PolyMatrix {
public:
    PolyMatrix(CtxPtr ctx, size_t rows, size_t cols)
        : ctx_(std::move(ctx)), r_(rows), c_(cols), a_(rows * cols, MPoly(ctx_)) {}

    static PolyMatrix from_qmatrix(const CtxPtr& ctx, const QMatrix& q) {
        PolyMatrix m(ctx, q.rows(), q.cols());
        for (size_t i = 0; i < q.rows(); ++i)
            for (size_t j = 0; j < q.cols(); ++j) m.at(i, j) = MPoly::constant(ctx, q.at(i, j));
        return m;
    }

    const CtxPtr& ctx() const { return ctx_; }
    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    MPoly& at(size_t i, size_t j) { return a_.at(i * c_ + j); }
    const MPoly& at(size_t i, size_t j) const { return a_.at(i * c_ + j); }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.c_ != b.r_) throw Error("matrix shape mismatch");
        PolyMatrix m(a.ctx_, a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (size_t j = 0; j < b.c_; ++j) m.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return m;
    }
    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw Error("matrix shape mismatch");
        PolyMatrix m = a;
        for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
        return m;
    }

    PolyMatrix submatrix(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const {
        PolyMatrix m(ctx_, rows.size(), cols.size());
        for (size_t i = 0; i < rows.size(); ++i)
            for (size_t j = 0; j < cols.size(); ++j) m.at(i, j) = at(rows[i], cols[j]);
        return m;
    }

private:
    CtxPtr ctx_;
    size_t r_ = 0, c_ = 0;
    std::vector<MPoly> a_;
};

// Determinant of a polynomial matrix: cofactor expansion up to size 4,
// fraction-free Bareiss (whose interior divisions are exact) beyond.
MPoly determinant(const PolyMatrix& m);

// Jacobian of the map f with respect to the listed variables: row i is the
// gradient of f[i].
PolyMatrix jacobian(const std::vector<MPoly>& f, const std::vector<VarId>& vars);

}  // namespace sdphom
