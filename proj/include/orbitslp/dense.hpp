#pragma once

#include <cstddef>
#include <vector>

#include "orbitslp/field.hpp"

namespace orbitslp {

/// Dense row-major matrix of exact scalars, used for classical (branching) elimination.
class DenseMatrix {
public:
    DenseMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}
    DenseMatrix(FieldSpec field, std::size_t rows, std::size_t cols, std::vector<FieldElement> data);

    static DenseMatrix identity(FieldSpec field, std::size_t n);
    /// Builds from integer rows; every row must have the same length.
    static DenseMatrix from_ints(FieldSpec field, const std::vector<std::vector<long>>& rows);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    FieldElement& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const FieldElement& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    const std::vector<FieldElement>& data() const { return data_; }
    bool row_is_zero(std::size_t i) const;

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    FieldSpec field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<FieldElement> data_;
};

/// Classical Gauss-Jordan elimination. `pivots`, when given, receives the pivot columns in row order.
DenseMatrix rref(DenseMatrix a, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const DenseMatrix& a);

/// Canonical kernel basis: one vector per non-pivot column j, with x_j = 1, the other
/// free variables 0, and each pivot variable read off its RREF row.
std::vector<std::vector<FieldElement>> nullspace_basis(const DenseMatrix& a);

/// n x n matrix whose row j is the RREF row with its pivot in column j, or zero.
DenseMatrix place_pivot_rows(const DenseMatrix& rref_form, const std::vector<std::size_t>& pivots);

}  // namespace orbitslp
