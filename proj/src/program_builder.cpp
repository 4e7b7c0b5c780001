#include "orbitslp/program_builder.hpp"

#include <limits>
#include <utility>

namespace orbitslp {

ProgramBuilder::ProgramBuilder(FieldSpec field, std::size_t input_arity) : field_(field), input_arity_(input_arity) {}

Cell ProgramBuilder::input(std::size_t t) const {
    if (t >= input_arity_) throw ArityError("input index " + std::to_string(t) + " out of range");
    return Cell{static_cast<std::int64_t>(t) - static_cast<std::int64_t>(input_arity_)};
}

std::vector<Cell> ProgramBuilder::inputs() const {
    std::vector<Cell> out;
    out.reserve(input_arity_);
    for (std::size_t t = 0; t < input_arity_; ++t) out.push_back(input(t));
    return out;
}

std::uint32_t ProgramBuilder::offset_to(Cell c) const {
    const auto here = static_cast<std::int64_t>(code_.size());
    const std::int64_t off = here - c.pos;
    if (off <= 0 || off > std::numeric_limits<std::uint32_t>::max() ||
        c.pos < -static_cast<std::int64_t>(input_arity_)) {
        throw MalformedProgram("builder referenced cell " + std::to_string(c.pos) + " from position " +
                               std::to_string(here));
    }
    return static_cast<std::uint32_t>(off);
}

Cell ProgramBuilder::emit(Instruction ins) {
    code_.push_back(ins);
    return Cell{static_cast<std::int64_t>(code_.size()) - 1};
}

Cell ProgramBuilder::add(Cell a, Cell b) {
    if (is_zero(a)) return b;
    if (is_zero(b)) return a;
    return emit(Instruction::binary(Opcode::Add, offset_to(a), offset_to(b)));
}

Cell ProgramBuilder::sub(Cell a, Cell b) {
    if (is_zero(b)) return a;
    return emit(Instruction::binary(Opcode::Sub, offset_to(a), offset_to(b)));
}

Cell ProgramBuilder::mul(Cell a, Cell b) {
    if (is_zero(a) || is_zero(b)) return zero();
    if (is_one(a)) return b;
    if (is_one(b)) return a;
    return emit(Instruction::binary(Opcode::Mul, offset_to(a), offset_to(b)));
}

Cell ProgramBuilder::qinv(Cell a) {
    if (is_zero(a) || is_one(a)) return a;
    return emit(Instruction::qinv(offset_to(a)));
}

Cell ProgramBuilder::recall(Cell a) { return emit(Instruction::recall(offset_to(a))); }

Cell ProgramBuilder::constant(const FieldElement& c) {
    if (!(c.field() == field_)) {
        throw ConfigError("constant over " + c.field().describe() + " in a program over " + field_.describe());
    }
    const std::string key = c.to_string();
    if (auto it = constant_cells_.find(key); it != constant_cells_.end()) return it->second;
    pool_.push_back(c);
    Cell cell = emit(Instruction::constant(static_cast<std::uint32_t>(pool_.size() - 1)));
    constant_cells_.emplace(key, cell);
    if (c.is_zero()) zero_ = cell;
    if (c.is_one()) one_ = cell;
    return cell;
}

Cell ProgramBuilder::zero() { return zero_ ? *zero_ : constant(field_.zero()); }
Cell ProgramBuilder::one() { return one_ ? *one_ : constant(field_.one()); }

Program ProgramBuilder::finish(std::span<const Cell> outputs) && {
    for (Cell c : outputs) recall(c);
    return Program(field_, input_arity_, outputs.size(), std::move(code_), std::move(pool_));
}

Program ProgramBuilder::finish_raw(std::size_t output_arity) && {
    return Program(field_, input_arity_, output_arity, std::move(code_), std::move(pool_));
}

}  // namespace orbitslp
