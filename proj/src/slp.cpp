#include "orbitslp/slp.hpp"

#include <utility>

namespace orbitslp {

const char* opcode_name(Opcode op) {
    switch (op) {
        case Opcode::Add: return "add";
        case Opcode::Sub: return "sub";
        case Opcode::Mul: return "mul";
        case Opcode::QInv: return "qinv";
        case Opcode::Const: return "const";
        case Opcode::Recall: return "recall";
    }
    return "?";
}

std::optional<std::string> validate(const FieldSpec& field, std::size_t input_arity, std::size_t output_arity,
                                    std::span<const Instruction> code, std::span<const FieldElement> constants) {
    if (output_arity > code.size()) {
        return "output arity " + std::to_string(output_arity) + " exceeds program length " +
               std::to_string(code.size());
    }
    for (std::size_t c = 0; c < constants.size(); ++c) {
        if (!(constants[c].field() == field)) {
            return "constant " + std::to_string(c) + " is over " + constants[c].field().describe() +
                   ", program is over " + field.describe();
        }
    }
    const auto m = static_cast<std::int64_t>(input_arity);
    auto check_offset = [&](std::size_t i, std::uint32_t off) -> std::optional<std::string> {
        if (off == 0) return "instruction " + std::to_string(i) + ": offsets must be positive";
        if (static_cast<std::int64_t>(i) - static_cast<std::int64_t>(off) < -m) {
            return "instruction " + std::to_string(i) + ": offset " + std::to_string(off) + " reaches cell " +
                   std::to_string(static_cast<std::int64_t>(i) - off) + " before input cell " + std::to_string(-m);
        }
        return std::nullopt;
    };
    for (std::size_t i = 0; i < code.size(); ++i) {
        const Instruction& ins = code[i];
        switch (ins.op) {
            case Opcode::Add:
            case Opcode::Sub:
            case Opcode::Mul:
                if (auto e = check_offset(i, ins.j)) return e;
                if (auto e = check_offset(i, ins.k)) return e;
                break;
            case Opcode::QInv:
            case Opcode::Recall:
                if (auto e = check_offset(i, ins.j)) return e;
                break;
            case Opcode::Const:
                if (ins.j >= constants.size()) {
                    return "instruction " + std::to_string(i) + ": constant pool index " + std::to_string(ins.j) +
                           " out of range";
                }
                break;
            default:
                return "instruction " + std::to_string(i) + ": unknown opcode " +
                       std::to_string(static_cast<int>(ins.op));
        }
    }
    return std::nullopt;
}

Program::Program(FieldSpec field, std::size_t input_arity, std::size_t output_arity, std::vector<Instruction> code,
                 std::vector<FieldElement> constants)
    : field_(field),
      input_arity_(input_arity),
      output_arity_(output_arity),
      code_(std::move(code)),
      constants_(std::move(constants)) {
    if (auto defect = orbitslp::validate(field_, input_arity_, output_arity_, code_, constants_)) {
        throw MalformedProgram(*defect);
    }
}

std::vector<FieldElement> execute(const Program& prog, std::span<const FieldElement> inputs, ExecutionTrace* trace) {
    const std::size_t m = prog.input_arity();
    if (inputs.size() != m) {
        throw ArityError("program expects " + std::to_string(m) + " inputs, got " + std::to_string(inputs.size()));
    }
    for (const auto& x : inputs) {
        if (!(x.field() == prog.field())) {
            throw ConfigError("input over " + x.field().describe() + " fed to a program over " +
                              prog.field().describe());
        }
    }
    // tape[t] holds cell t - m.
    std::vector<FieldElement> tape;
    tape.reserve(m + prog.length());
    tape.assign(inputs.begin(), inputs.end());
    const auto code = prog.code();
    const auto pool = prog.constants();
    if (trace) trace->steps.reserve(trace->steps.size() + code.size());
    for (std::size_t i = 0; i < code.size(); ++i) {
        const Instruction& ins = code[i];
        const std::size_t at = m + i;
        const std::size_t a = at - ins.j;
        const std::size_t b = at - ins.k;
        if (trace) {
            auto cell = [&](std::size_t t) { return static_cast<std::int64_t>(t) - static_cast<std::int64_t>(m); };
            switch (ins.op) {
                case Opcode::Const: trace->steps.push_back({static_cast<std::int64_t>(i), -1, -1}); break;
                case Opcode::QInv:
                case Opcode::Recall: trace->steps.push_back({static_cast<std::int64_t>(i), cell(a), -1}); break;
                default: trace->steps.push_back({static_cast<std::int64_t>(i), cell(a), cell(b)}); break;
            }
        }
        switch (ins.op) {
            case Opcode::Add: tape.push_back(tape[a] + tape[b]); break;
            case Opcode::Sub: tape.push_back(tape[a] - tape[b]); break;
            case Opcode::Mul: tape.push_back(tape[a] * tape[b]); break;
            case Opcode::QInv: tape.push_back(quasi_inverse(tape[a])); break;
            case Opcode::Const: tape.push_back(pool[ins.j]); break;
            case Opcode::Recall: {
                FieldElement v = tape[a];
                tape.push_back(std::move(v));
                break;
            }
        }
    }
    return {tape.end() - static_cast<std::ptrdiff_t>(prog.output_arity()), tape.end()};
}

Program compose(const Program& outer, const Program& inner, std::size_t d) {
    if (outer.input_arity() != d) {
        throw ArityError("outer program takes " + std::to_string(outer.input_arity()) + " inputs, composition arity is " +
                         std::to_string(d));
    }
    if (d > inner.length()) {
        throw ArityError("composition arity " + std::to_string(d) + " exceeds inner length " +
                         std::to_string(inner.length()));
    }
    if (!(outer.field() == inner.field())) throw ConfigError("composing programs over different fields");

    std::vector<Instruction> code(inner.code().begin(), inner.code().end());
    std::vector<FieldElement> pool(inner.constants().begin(), inner.constants().end());
    const auto shift = static_cast<std::uint32_t>(pool.size());
    pool.insert(pool.end(), outer.constants().begin(), outer.constants().end());
    code.reserve(inner.length() + outer.length());
    for (Instruction ins : outer.code()) {
        if (ins.op == Opcode::Const) ins.j += shift;
        code.push_back(ins);
    }
    return Program(inner.field(), inner.input_arity(), outer.output_arity(), std::move(code), std::move(pool));
}

Census& Census::operator+=(const Census& o) {
    for (std::size_t i = 0; i < kOpcodeCount; ++i) by_opcode[i] += o.by_opcode[i];
    total += o.total;
    return *this;
}

Census census(std::span<const Instruction> code) {
    Census c;
    for (const auto& ins : code) ++c.by_opcode[static_cast<std::size_t>(ins.op)];
    c.total = code.size();
    return c;
}

Census census(const Program& prog) { return census(prog.code()); }

}  // namespace orbitslp
