#include "orbitslp/slp_linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

namespace orbitslp {

MatrixShape::MatrixShape(std::size_t r, std::size_t c) : rows(r), cols(c) {
    if (r == 0 || c == 0) throw std::invalid_argument("matrix shape must be at least 1 x 1");
}

namespace {

CellMatrix input_matrix(const ProgramBuilder& b, std::size_t first_input, std::size_t rows, std::size_t cols) {
    CellMatrix x;
    x.rows = rows;
    x.cols = cols;
    x.cells.reserve(rows * cols);
    for (std::size_t t = 0; t < rows * cols; ++t) x.cells.push_back(b.input(first_input + t));
    return x;
}

std::string shape_text(std::size_t r, std::size_t c) { return std::to_string(r) + "x" + std::to_string(c); }

}  // namespace

CellMatrix emit_row_exchange(ProgramBuilder& b, const CellMatrix& x, std::size_t i) {
    if (i == 0 || i >= x.rows) throw std::out_of_range("row exchange index out of range");
    CellMatrix y = x;
    const Cell x11 = x.at(0, 0);
    const Cell q = b.qinv(x11);
    const Cell e = b.mul(x11, q);
    const Cell ne = b.sub(b.one(), e);

    // y_i1 = x_i1 * e; y_11 = x_11 + (1 - e) x_i1, written as x_11 + (x_i1 - y_i1).
    const Cell yi1 = b.mul(x.at(i, 0), e);
    y.at(0, 0) = b.add(x11, b.sub(x.at(i, 0), yi1));
    y.at(i, 0) = yi1;
    for (std::size_t j = 1; j < x.cols; ++j) {
        const Cell d = b.sub(x.at(i, j), x.at(0, j));
        y.at(0, j) = b.add(x.at(0, j), b.mul(ne, d));
        y.at(i, j) = b.add(x.at(0, j), b.mul(e, d));
    }
    return y;
}

CellMatrix emit_exchange_cascade(ProgramBuilder& b, CellMatrix x) {
    for (std::size_t i = 1; i < x.rows; ++i) x = emit_row_exchange(b, x, i);
    return x;
}

CellMatrix emit_trref(ProgramBuilder& b, const CellMatrix& input) {
    const std::size_t m = input.rows;
    const std::size_t n = input.cols;
    if (m == 0 || n == 0) throw std::invalid_argument("empty matrix");

    // Step 1: bring a nonzero entry of column 0 to the top, if there is one.
    const CellMatrix a = m >= 2 ? emit_exchange_cascade(b, input) : input;

    // Step 2: e = a11{a11} in {0,1}; divide row 0 by a11 when a11 != 0.
    const Cell a11 = a.at(0, 0);
    const Cell q = b.qinv(a11);
    const Cell e = b.mul(a11, q);
    CellMatrix r(n, n, b.zero());
    r.at(0, 0) = e;
    if (n == 1) return r;

    const Cell one_minus_e = b.sub(b.one(), e);
    const Cell scale = b.add(one_minus_e, q);
    std::vector<Cell> row1(n);
    for (std::size_t j = 1; j < n; ++j) row1[j] = b.mul(a.at(0, j), scale);

    // Step 3: clear column 0 below the pivot. When e = 0 column 0 is already zero.
    CellMatrix y(m, n, b.zero());
    for (std::size_t i = 1; i < m; ++i) {
        for (std::size_t j = 1; j < n; ++j) y.at(i, j) = b.sub(a.at(i, j), b.mul(row1[j], a.at(i, 0)));
    }

    // Steps 4-5: B = (1 - e) A' + e A0''.
    CellMatrix sub_matrix(m, n - 1, b.zero());
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const Cell a_prime = i == 0 ? row1[j + 1] : y.at(i, j + 1);
            const Cell a_zero = i + 1 < m ? y.at(i + 1, j + 1) : b.zero();
            sub_matrix.at(i, j) = b.add(b.mul(one_minus_e, a_prime), b.mul(e, a_zero));
        }
    }

    // Step 6.
    const CellMatrix rb = emit_trref(b, sub_matrix);

    // Step 7.
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t j = 1; j < n; ++j) r.at(k, j) = rb.at(k - 1, j - 1);
    }

    // Step 8: reduce row 0 against the pivot rows below it. running[k] is the
    // row-0 entry in column k just before row k is subtracted. Row 0 is scaled by
    // e so it vanishes when column 0 has no pivot.
    std::vector<Cell> running(n);
    for (std::size_t j = 1; j < n; ++j) {
        Cell acc = b.mul(e, row1[j]);
        for (std::size_t k = 1; k < j; ++k) {
            acc = b.sub(acc, b.mul(b.mul(r.at(k, k), running[k]), r.at(k, j)));
        }
        running[j] = acc;
        r.at(0, j) = b.mul(b.sub(b.one(), r.at(j, j)), acc);
    }
    return r;
}

CellMatrix emit_collect(ProgramBuilder& b, std::span<const Cell> indicator, const CellMatrix& x,
                        std::size_t rows_wanted) {
    const std::size_t m = x.rows;
    const std::size_t n = x.cols;
    if (indicator.size() != m) throw std::invalid_argument("indicator length must equal the row count");

    CellMatrix work(m, n + 1, b.zero());
    for (std::size_t i = 0; i < m; ++i) {
        work.at(i, 0) = indicator[i];
        for (std::size_t j = 0; j < n; ++j) work.at(i, j + 1) = x.at(i, j);
    }

    CellMatrix out(rows_wanted, n, b.zero());
    const std::size_t steps = std::min(rows_wanted, m);
    for (std::size_t t = 0; t < steps; ++t) {
        if (m - t >= 2) {
            CellMatrix tail(m - t, n + 1, b.zero());
            std::copy(work.cells.begin() + static_cast<std::ptrdiff_t>(t * (n + 1)), work.cells.end(),
                      tail.cells.begin());
            tail = emit_exchange_cascade(b, std::move(tail));
            std::copy(tail.cells.begin(), tail.cells.end(),
                      work.cells.begin() + static_cast<std::ptrdiff_t>(t * (n + 1)));
        }
        const Cell flag = work.at(t, 0);
        for (std::size_t j = 0; j < n; ++j) out.at(t, j) = b.mul(flag, work.at(t, j + 1));
    }
    return out;
}

CellMatrix emit_kernel(ProgramBuilder& b, const CellMatrix& r, std::size_t first, std::size_t count) {
    const std::size_t n = r.rows;
    if (r.cols != n) throw std::invalid_argument("kernel input must be square");
    if (first + count > n) throw std::out_of_range("kernel entry range out of bounds");
    CellMatrix phi(n, count, b.zero());
    for (std::size_t j = 0; j < n; ++j) {
        const Cell rjj = r.at(j, j);
        const Cell free = b.sub(b.one(), rjj);
        const Cell neg_free = b.sub(rjj, b.one());
        for (std::size_t t = 0; t < count; ++t) {
            const std::size_t k = first + t;
            phi.at(j, t) = k == j ? free : b.mul(neg_free, r.at(k, j));
        }
    }
    return phi;
}

CellMatrix emit_kernel(ProgramBuilder& b, const CellMatrix& r) { return emit_kernel(b, r, 0, r.cols); }

Program build_row_exchange(std::size_t i, MatrixShape shape, FieldSpec field) {
    if (i < 2 || i > shape.rows) throw std::out_of_range("row exchange index must satisfy 2 <= i <= m");
    ProgramBuilder b(field, shape.size());
    const CellMatrix y = emit_row_exchange(b, input_matrix(b, 0, shape.rows, shape.cols), i - 1);
    return std::move(b).finish(y.cells).with_layout("in: " + shape_text(shape.rows, shape.cols) +
                                                     " row-major; out: same shape, rows 1 and " +
                                                     std::to_string(i) + " exchanged when a11 = 0");
}

Program build_exchange_cascade(MatrixShape shape, FieldSpec field) {
    ProgramBuilder b(field, shape.size());
    const CellMatrix y = emit_exchange_cascade(b, input_matrix(b, 0, shape.rows, shape.cols));
    return std::move(b).finish(y.cells).with_layout("in: " + shape_text(shape.rows, shape.cols) +
                                                     " row-major; out: same shape after E_2..E_m");
}

Program build_trref(MatrixShape shape, FieldSpec field) {
    ProgramBuilder b(field, shape.size());
    const CellMatrix r = emit_trref(b, input_matrix(b, 0, shape.rows, shape.cols));
    return std::move(b).finish(r.cells).with_layout("in: " + shape_text(shape.rows, shape.cols) +
                                                     " row-major; out: " + shape_text(shape.cols, shape.cols) +
                                                     " tRREF row-major");
}

Program build_collect(MatrixShape shape, FieldSpec field) {
    ProgramBuilder b(field, shape.rows + shape.size());
    std::vector<Cell> v;
    for (std::size_t i = 0; i < shape.rows; ++i) v.push_back(b.input(i));
    const CellMatrix out = emit_collect(b, v, input_matrix(b, shape.rows, shape.rows, shape.cols), shape.rows);
    return std::move(b).finish(out.cells).with_layout(
        "in: indicator (" + std::to_string(shape.rows) + ") then " + shape_text(shape.rows, shape.cols) +
        " row-major; out: " + shape_text(shape.rows, shape.cols) + " indicated rows first, then zero rows");
}

Program build_rref(MatrixShape shape, FieldSpec field) {
    ProgramBuilder b(field, shape.size());
    const CellMatrix r = emit_trref(b, input_matrix(b, 0, shape.rows, shape.cols));
    std::vector<Cell> diag;
    for (std::size_t j = 0; j < shape.cols; ++j) diag.push_back(r.at(j, j));
    const CellMatrix collected = emit_collect(b, diag, r, std::min(shape.rows, shape.cols));
    std::vector<Cell> outputs(shape.size(), b.zero());
    std::copy(collected.cells.begin(), collected.cells.end(), outputs.begin());
    return std::move(b).finish(outputs).with_layout("in: " + shape_text(shape.rows, shape.cols) +
                                                    " row-major; out: " + shape_text(shape.rows, shape.cols) +
                                                    " classical RREF row-major");
}

Program build_kernel(std::size_t n, FieldSpec field) {
    if (n == 0) throw std::invalid_argument("kernel size must be positive");
    ProgramBuilder b(field, n * n);
    const CellMatrix phi = emit_kernel(b, input_matrix(b, 0, n, n));
    return std::move(b).finish(phi.cells).with_layout("in: " + shape_text(n, n) + " tRREF row-major; out: rows phi_1..phi_" +
                                                      std::to_string(n));
}

DenseMatrix oracle_rref(const DenseMatrix& a) { return rref(a); }

std::vector<std::vector<FieldElement>> oracle_nullspace(const DenseMatrix& a) { return nullspace_basis(a); }

DenseMatrix oracle_trref(const DenseMatrix& a) {
    std::vector<std::size_t> pivots;
    const DenseMatrix r = rref(a, &pivots);
    return place_pivot_rows(r, pivots);
}

DenseMatrix run_on_matrix(const Program& prog, const DenseMatrix& a, std::size_t out_rows, std::size_t out_cols) {
    auto out = execute(prog, a.data());
    return DenseMatrix(a.field(), out_rows, out_cols, std::move(out));
}

}  // namespace orbitslp
