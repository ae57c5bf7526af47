#include "sdphom/polymatrix.hpp"

namespace sdphom {

namespace {

MPoly cofactor_det(const PolyMatrix& m, std::vector<size_t> rows, std::vector<size_t> cols) {
    if (rows.size() == 1) return m.at(rows[0], cols[0]);
    MPoly acc(m.ctx());
    std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < cols.size(); ++j) {
        const MPoly& pivot = m.at(rows[0], cols[j]);
        if (pivot.is_zero()) continue;
        std::vector<size_t> sub_cols;
        for (size_t k = 0; k < cols.size(); ++k)
            if (k != j) sub_cols.push_back(cols[k]);
        MPoly minor = cofactor_det(m, sub_rows, sub_cols);
        acc += (j % 2 == 0) ? pivot * minor : -(pivot * minor);
    }
    return acc;
}

MPoly bareiss_det(const PolyMatrix& m) {
    size_t n = m.rows();
    std::vector<std::vector<MPoly>> a(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i].push_back(m.at(i, j));
    MPoly prev = MPoly::constant(m.ctx(), 1);
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return MPoly(m.ctx());  // structurally singular column
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                MPoly num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                auto q = num.divide_exact(prev);
                if (!q) throw Error("Bareiss exact division failed");
                a[i][j] = std::move(*q);
            }
            a[i][k] = MPoly(m.ctx());
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : -a[n - 1][n - 1];
}

}  // namespace

MPoly determinant(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
    if (m.rows() == 0) return MPoly::constant(m.ctx(), 1);
    if (m.rows() <= 4) {
        std::vector<size_t> idx(m.rows());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        return cofactor_det(m, idx, idx);
    }
    return bareiss_det(m);
}

PolyMatrix jacobian(const std::vector<MPoly>& f, const std::vector<VarId>& vars) {
    if (f.empty()) throw Error("jacobian of empty system");
    PolyMatrix m(f[0].ctx(), f.size(), vars.size());
    for (size_t i = 0; i < f.size(); ++i)
        for (size_t j = 0; j < vars.size(); ++j) m.at(i, j) = f[i].derivative(vars[j]);
    return m;
}

}  // namespace sdphom
