#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orbitslp/field.hpp"
#include "orbitslp/slp.hpp"

namespace orbitslp {

/// Absolute tape position of a value being built. Inputs are -m..-1.
struct Cell {
    std::int64_t pos;
    friend bool operator==(Cell, Cell) = default;
};

/// Row-major grid of cells; the unit the linear-algebra emitters work on.
struct CellMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Cell> cells;

    CellMatrix() = default;
    CellMatrix(std::size_t r, std::size_t c, Cell fill) : rows(r), cols(c), cells(r * c, fill) {}

    Cell& at(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
    Cell at(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
};

/// Emits instructions against absolute cells and converts them to backward
/// offsets. The constants 0 and 1 (and any other constant) are materialized once
/// per builder; arithmetic on the cached zero/one cells is folded at build time,
/// which depends only on program structure, never on input values.
class ProgramBuilder {
public:
    ProgramBuilder(FieldSpec field, std::size_t input_arity);

    const FieldSpec& field() const { return field_; }
    std::size_t input_arity() const { return input_arity_; }
    /// Index the next emitted instruction will get.
    std::size_t position() const { return code_.size(); }

    Cell input(std::size_t t) const;
    std::vector<Cell> inputs() const;

    Cell add(Cell a, Cell b);
    Cell sub(Cell a, Cell b);
    Cell mul(Cell a, Cell b);
    Cell qinv(Cell a);
    Cell recall(Cell a);
    Cell constant(const FieldElement& c);
    Cell zero();
    Cell one();

    bool is_zero(Cell c) const { return zero_ && *zero_ == c; }
    bool is_one(Cell c) const { return one_ && *one_ == c; }

    /// Appends a Recall for every output so they form the tail of the tape.
    Program finish(std::span<const Cell> outputs) &&;
    /// Finishes without recalls; the outputs are the last `output_arity` cells as they stand.
    Program finish_raw(std::size_t output_arity) &&;

private:
    Cell emit(Instruction ins);
    std::uint32_t offset_to(Cell c) const;

    FieldSpec field_;
    std::size_t input_arity_;
    std::vector<Instruction> code_;
    std::vector<FieldElement> pool_;
    std::map<std::string, Cell> constant_cells_;
    std::optional<Cell> zero_;
    std::optional<Cell> one_;
};

}  // namespace orbitslp
