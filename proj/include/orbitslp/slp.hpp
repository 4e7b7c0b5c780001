#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orbitslp/field.hpp"

namespace orbitslp {

/// Stable numeric opcodes; these values are the serialized form.
enum class Opcode : std::uint8_t { Add = 0, Sub = 1, Mul = 2, QInv = 3, Const = 4, Recall = 5 };

inline constexpr std::size_t kOpcodeCount = 6;

const char* opcode_name(Opcode op);

/// One tape instruction. `j` and `k` are backward offsets (cell i reads i-j and i-k).
/// For Const, `j` indexes the program's constant pool and `k` is unused.
struct Instruction {
    Opcode op;
    std::uint32_t j = 0;
    std::uint32_t k = 0;

    static Instruction binary(Opcode op, std::uint32_t j, std::uint32_t k) { return {op, j, k}; }
    static Instruction qinv(std::uint32_t j) { return {Opcode::QInv, j, 0}; }
    static Instruction recall(std::uint32_t j) { return {Opcode::Recall, j, 0}; }
    static Instruction constant(std::uint32_t pool_index) { return {Opcode::Const, pool_index, 0}; }

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

class MalformedProgram : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Checks offsets, pool indices, constant fields and output arity.
/// Returns a description of the first defect, or nullopt when the parts form a valid program.
std::optional<std::string> validate(const FieldSpec& field, std::size_t input_arity, std::size_t output_arity,
                                    std::span<const Instruction> code, std::span<const FieldElement> constants);

/// A validated straight-line program. Inputs occupy cells -m..-1, instruction i
/// writes cell i, and the outputs are the last `output_arity` cells.
class Program {
public:
    /// Throws MalformedProgram if the parts do not validate.
    Program(FieldSpec field, std::size_t input_arity, std::size_t output_arity, std::vector<Instruction> code,
            std::vector<FieldElement> constants);

    const FieldSpec& field() const { return field_; }
    std::size_t input_arity() const { return input_arity_; }
    std::size_t output_arity() const { return output_arity_; }
    std::size_t length() const { return code_.size(); }
    std::span<const Instruction> code() const { return code_; }
    std::span<const FieldElement> constants() const { return constants_; }

    /// Free-text description of the input/output tape layout.
    const std::string& layout() const { return layout_; }
    Program&& with_layout(std::string text) && {
        layout_ = std::move(text);
        return std::move(*this);
    }

    friend bool operator==(const Program&, const Program&) = default;

private:
    FieldSpec field_;
    std::size_t input_arity_;
    std::size_t output_arity_;
    std::vector<Instruction> code_;
    std::vector<FieldElement> constants_;
    std::string layout_;
};

inline std::optional<std::string> validate(const Program&) { return std::nullopt; }

/// Records what the interpreter touched at each step: instruction index and the
/// absolute cells it read. Used to check that control flow never depends on data.
struct ExecutionTrace {
    struct Step {
        std::int64_t ip;
        std::int64_t first;
        std::int64_t second;
        friend bool operator==(const Step&, const Step&) = default;
    };
    std::vector<Step> steps;
};

/// Runs the program; returns the last output_arity cells. Throws ArityError on a
/// wrong input count and ConfigError if an input is over a different field.
std::vector<FieldElement> execute(const Program& prog, std::span<const FieldElement> inputs,
                                  ExecutionTrace* trace = nullptr);

/// outer ∘ Out_d(inner): concatenation with outer's inputs bound to inner's last d cells.
/// Relative offsets make the concatenation offset-preserving.
Program compose(const Program& outer, const Program& inner, std::size_t d);

struct Census {
    std::array<std::size_t, kOpcodeCount> by_opcode{};
    std::size_t total = 0;

    std::size_t operator[](Opcode op) const { return by_opcode[static_cast<std::size_t>(op)]; }
    std::size_t arithmetic() const { return (*this)[Opcode::Add] + (*this)[Opcode::Sub] + (*this)[Opcode::Mul]; }
    Census& operator+=(const Census& o);
    friend bool operator==(const Census&, const Census&) = default;
};

Census census(const Program& prog);
Census census(std::span<const Instruction> code);

}  // namespace orbitslp
