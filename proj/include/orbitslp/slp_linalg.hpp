#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "orbitslp/dense.hpp"
#include "orbitslp/program_builder.hpp"
#include "orbitslp/slp.hpp"

namespace orbitslp {

/// Matrix dimensions. Both must be at least 1.
struct MatrixShape {
    std::size_t rows;
    std::size_t cols;

    MatrixShape(std::size_t r, std::size_t c);
    std::size_t size() const { return rows * cols; }
};

// --- Emitters -------------------------------------------------------------
// These append instructions to an existing builder and return the cells that
// hold the result, so larger programs can inline them without recall traffic.

/// E_i: if x(0,0) == 0, swap row 0 with row `i` (0-based, i >= 1). Uses one
/// quasi-inverse, 2n multiplications and 3n additions/subtractions.
CellMatrix emit_row_exchange(ProgramBuilder& b, const CellMatrix& x, std::size_t i);

/// Gamma^E: E_1, ..., E_{m-1} in sequence. Afterwards x(0,0) != 0 unless column 0 is zero.
CellMatrix emit_exchange_cascade(ProgramBuilder& b, CellMatrix x);

/// Gamma^tR: the n x n triangular RREF of an m x n matrix.
CellMatrix emit_trref(ProgramBuilder& b, const CellMatrix& a);

/// Sigma: rows of `x` whose indicator is 1, in their original order, followed by
/// zero rows; `rows_wanted` rows are produced (extra rows are zero).
CellMatrix emit_collect(ProgramBuilder& b, std::span<const Cell> indicator, const CellMatrix& x,
                        std::size_t rows_wanted);

/// Gamma^K on an n x n tRREF: row j is phi_j = (1 - r_jj) * (-r_1j, ..., 1, ..., -r_nj),
/// restricted to the entries [first, first + count).
CellMatrix emit_kernel(ProgramBuilder& b, const CellMatrix& r, std::size_t first, std::size_t count);
CellMatrix emit_kernel(ProgramBuilder& b, const CellMatrix& r);

// --- Standalone programs --------------------------------------------------
// Matrices are read and written row-major. Each program records its tape layout
// in Program::layout().

/// Input mn, output mn. `i` is the 1-based row exchanged with row 1 (2 <= i <= m).
Program build_row_exchange(std::size_t i, MatrixShape shape, FieldSpec field);
/// Input mn, output mn.
Program build_exchange_cascade(MatrixShape shape, FieldSpec field);
/// Input mn, output n^2.
Program build_trref(MatrixShape shape, FieldSpec field);
/// Input m indicator entries followed by the mn matrix; output mn.
Program build_collect(MatrixShape shape, FieldSpec field);
/// Input mn, output mn: the classical RREF (rank rows then zero rows).
Program build_rref(MatrixShape shape, FieldSpec field);
/// Input n^2 (a tRREF), output n^2: rows phi_1..phi_n.
Program build_kernel(std::size_t n, FieldSpec field);

// --- Classical oracles ----------------------------------------------------

DenseMatrix oracle_rref(const DenseMatrix& a);
std::vector<std::vector<FieldElement>> oracle_nullspace(const DenseMatrix& a);
/// tRREF computed classically: oracle RREF rows placed at their pivot columns.
DenseMatrix oracle_trref(const DenseMatrix& a);

/// Runs a program on a row-major matrix and reshapes the output.
DenseMatrix run_on_matrix(const Program& prog, const DenseMatrix& a, std::size_t out_rows, std::size_t out_cols);

}  // namespace orbitslp
