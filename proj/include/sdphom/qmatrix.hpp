#pragma once

#include "sdphom/upoly.hpp"

#include <optional>
#include <vector>

namespace sdphom {

// Dense matrix over Q.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t rows, size_t cols) : r_(rows), c_(cols), a_(rows * cols, Rational(0)) {}
    static QMatrix identity(size_t n) {
        QMatrix m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
        return m;
    }
    static QMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.c_) throw Error("ragged matrix rows");
            for (size_t j = 0; j < m.c_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    size_t rows() const { return r_; }
    size_t cols() const { return c_; }
    Rational& at(size_t i, size_t j) { return a_.at(i * c_ + j); }
    const Rational& at(size_t i, size_t j) const { return a_.at(i * c_ + j); }

    bool is_symmetric() const {
        if (r_ != c_) return false;
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = i + 1; j < c_; ++j)
                if (!(at(i, j) == at(j, i))) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }

    QMatrix transpose() const {
        QMatrix m(c_, r_);
        for (size_t i = 0; i < r_; ++i)
            for (size_t j = 0; j < c_; ++j) m.at(j, i) = at(i, j);
        return m;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.c_ != b.r_) throw Error("matrix shape mismatch");
        QMatrix m(a.r_, b.c_);
        for (size_t i = 0; i < a.r_; ++i)
            for (size_t k = 0; k < a.c_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (size_t j = 0; j < b.c_; ++j) m.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return m;
    }
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b) {
        if (a.r_ != b.r_ || a.c_ != b.c_) throw Error("matrix shape mismatch");
        QMatrix m = a;
        for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += b.a_[i];
        return m;
    }
    QMatrix scaled(const Rational& s) const {
        QMatrix m = *this;
        for (auto& x : m.a_) x *= s;
        return m;
    }
    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    Rational trace() const {
        Rational t(0);
        for (size_t i = 0; i < std::min(r_, c_); ++i) t += at(i, i);
        return t;
    }

    // det(tI - A) by Faddeev-LeVerrier; needs only divisions by integers.
    UPoly char_poly() const {
        if (r_ != c_) throw Error("characteristic polynomial of non-square matrix");
        size_t n = r_;
        std::vector<Rational> c(n + 1, Rational(0));
        c[n] = Rational(1);
        QMatrix mk(n, n);  // M_0 = 0
        for (size_t k = 1; k <= n; ++k) {
            for (size_t i = 0; i < n; ++i) mk.at(i, i) += c[n - k + 1];
            mk = (*this) * mk;
            c[n - k] = -(mk.trace() / Rational(static_cast<long>(k)));
        }
        return UPoly::from_coeffs(std::move(c));
    }

    Rational det() const {
        UPoly p = char_poly();
        Rational c0 = p.coeff(0);
        return (r_ % 2 == 0) ? c0 : -c0;
    }

private:
    size_t r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

// One solution of Ax = b if the system is consistent (free variables set to
// zero), nullopt otherwise.
inline std::optional<std::vector<Rational>> solve_linear(QMatrix a, std::vector<Rational> b) {
    size_t rows = a.rows(), cols = a.cols();
    if (b.size() != rows) throw Error("linear system shape mismatch");
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t p = rank;
        while (p < rows && a.at(p, col).is_zero()) ++p;
        if (p == rows) continue;
        for (size_t j = 0; j < cols; ++j) std::swap(a.at(p, j), a.at(rank, j));
        std::swap(b[p], b[rank]);
        Rational inv = a.at(rank, col).inv();
        for (size_t j = col; j < cols; ++j) a.at(rank, j) *= inv;
        b[rank] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || a.at(i, col).is_zero()) continue;
            Rational f = a.at(i, col);
            for (size_t j = col; j < cols; ++j) a.at(i, j) -= f * a.at(rank, j);
            b[i] -= f * b[rank];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (size_t i = rank; i < rows; ++i)
        if (!b[i].is_zero()) return std::nullopt;
    std::vector<Rational> x(cols, Rational(0));
    for (size_t i = 0; i < rank; ++i) x[pivot_col[i]] = b[i];
    return x;
}

}  // namespace sdphom
