#include "orbitslp/dense.hpp"

#include <stdexcept>
#include <utility>

namespace orbitslp {

DenseMatrix::DenseMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<FieldElement> data)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix data does not match its shape");
}

DenseMatrix DenseMatrix::identity(FieldSpec field, std::size_t n) {
    DenseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
    return m;
}

DenseMatrix DenseMatrix::from_ints(FieldSpec field, const std::vector<std::vector<long>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    DenseMatrix m(field, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged matrix literal");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = field.from_int(rows[i][j]);
    }
    return m;
}

bool DenseMatrix::row_is_zero(std::size_t i) const {
    for (std::size_t j = 0; j < cols_; ++j) {
        if (!at(i, j).is_zero()) return false;
    }
    return true;
}

DenseMatrix rref(DenseMatrix a, std::vector<std::size_t>* pivots) {
    if (pivots) pivots->clear();
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && a.at(sel, col).is_zero()) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a.at(sel, j), a.at(row, j));
        }
        const FieldElement inv = quasi_inverse(a.at(row, col));
        for (std::size_t j = col; j < a.cols(); ++j) a.at(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a.at(i, col).is_zero()) continue;
            const FieldElement f = a.at(i, col);
            for (std::size_t j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(row, j);
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return a;
}

std::size_t rank(const DenseMatrix& a) {
    std::vector<std::size_t> pivots;
    rref(a, &pivots);
    return pivots.size();
}

std::vector<std::vector<FieldElement>> nullspace_basis(const DenseMatrix& a) {
    std::vector<std::size_t> pivots;
    const DenseMatrix r = rref(a, &pivots);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<FieldElement>> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElement> v(a.cols(), a.field().zero());
        v[free] = a.field().one();
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

DenseMatrix place_pivot_rows(const DenseMatrix& rref_form, const std::vector<std::size_t>& pivots) {
    const std::size_t n = rref_form.cols();
    DenseMatrix out(rref_form.field(), n, n);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) out.at(pivots[i], j) = rref_form.at(i, j);
    }
    return out;
}

}  // namespace orbitslp
