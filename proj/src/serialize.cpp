#include "orbitslp/serialize.hpp"

#include <array>
#include <cstdio>

#include <openssl/evp.h>

namespace orbitslp {

using nlohmann::json;

namespace {

bool is_natural(const json& v) { return v.is_number_integer() && v.get<std::int64_t>() >= 0; }

}  // namespace

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        char buf[3];
        std::snprintf(buf, sizeof buf, "%02x", digest[i]);
        hex += buf;
    }
    return hex;
}

json field_to_json(const FieldSpec& f) {
    if (f.is_rational()) return "rational";
    return json{{"prime", f.characteristic()}};
}

FieldSpec field_from_json(const json& j) {
    try {
        if (j.is_string()) {
            const std::string s = j.get<std::string>();
            if (s == "rational") return FieldSpec::rationals();
            if (s.rfind("prime:", 0) == 0) {
                const std::string digits = s.substr(6);
                if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
                    throw FormatError("bad prime in field '" + s + "'");
                }
                return FieldSpec::prime(std::stoull(digits));
            }
            throw FormatError("unknown field '" + s + "'");
        }
        if (j.is_object() && j.size() == 1 && j.contains("prime") && is_natural(j["prime"])) {
            return FieldSpec::prime(j["prime"].get<std::uint64_t>());
        }
    } catch (const std::out_of_range&) {
        throw FormatError("prime out of range");
    }
    throw FormatError("field must be \"rational\", \"prime:p\" or {\"prime\": p}");
}

json program_to_json(const Program& prog) {
    json code = json::array();
    for (const auto& ins : prog.code()) {
        const auto op = static_cast<int>(ins.op);
        switch (ins.op) {
            case Opcode::Add:
            case Opcode::Sub:
            case Opcode::Mul: code.push_back({op, ins.j, ins.k}); break;
            default: code.push_back({op, ins.j}); break;
        }
    }
    json consts = json::array();
    for (const auto& c : prog.constants()) consts.push_back(c.to_string());
    return json{{"format", kProgramFormat},
                {"field", field_to_json(prog.field())},
                {"input_arity", prog.input_arity()},
                {"output_arity", prog.output_arity()},
                {"instructions", std::move(code)},
                {"constants", std::move(consts)},
                {"layout", prog.layout()}};
}

namespace {

template <class T>
T get_field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad value for '") + key + "': " + e.what());
    }
}

std::uint32_t operand(const json& v) {
    if (!is_natural(v) || v.get<std::uint64_t>() > UINT32_MAX) throw FormatError("operand must be a 32-bit unsigned integer");
    return v.get<std::uint32_t>();
}

}  // namespace

Program program_from_json(const json& j) {
    if (get_field<std::string>(j, "format") != kProgramFormat) throw FormatError("unsupported program format");
    const FieldSpec field = field_from_json(j.at("field"));
    const auto in = get_field<std::size_t>(j, "input_arity");
    const auto out = get_field<std::size_t>(j, "output_arity");

    std::vector<FieldElement> consts;
    for (const auto& c : get_field<std::vector<std::string>>(j, "constants")) {
        try {
            consts.push_back(field.parse(c));
        } catch (const LiteralError& e) {
            throw FormatError(std::string("bad constant: ") + e.what());
        }
    }
    const json& code_json = j.at("instructions");
    if (!code_json.is_array()) throw FormatError("instructions must be an array");
    std::vector<Instruction> code;
    code.reserve(code_json.size());
    for (const auto& ins : code_json) {
        if (!ins.is_array() || ins.size() < 2 || ins.size() > 3 || !is_natural(ins[0])) {
            throw FormatError("instruction must be [opcode, j] or [opcode, j, k]");
        }
        const auto op = ins[0].get<std::uint64_t>();
        if (op >= kOpcodeCount) throw FormatError("unknown opcode " + std::to_string(op));
        const bool binary = op <= static_cast<std::uint64_t>(Opcode::Mul);
        if (ins.size() != (binary ? 3u : 2u)) throw FormatError("wrong operand count for opcode " + std::to_string(op));
        code.push_back({static_cast<Opcode>(op), operand(ins[1]), binary ? operand(ins[2]) : 0});
    }
    std::string layout = j.contains("layout") ? get_field<std::string>(j, "layout") : std::string();
    try {
        return Program(field, in, out, std::move(code), std::move(consts)).with_layout(std::move(layout));
    } catch (const MalformedProgram& e) {
        throw FormatError(std::string("malformed program: ") + e.what());
    }
}

namespace {

json span_to_json(const PhaseSpan& s) { return json::array({s.name, s.begin, s.end}); }

PhaseSpan span_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw FormatError("phase span must be [name, begin, end]");
    try {
        return {j[0].get<std::string>(), j[1].get<std::size_t>(), j[2].get<std::size_t>()};
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad phase span: ") + e.what());
    }
}

void check_layout(const SeparatorLayout& L, const Program& p) {
    std::size_t offset = 0;
    for (const auto& it : L.iterations) {
        if (it.signature_offset != offset) throw FormatError("signature segments are not contiguous");
        if (it.signature_size != (it.ideal_columns + it.orbit_columns) * it.orbit_columns) {
            throw FormatError("signature segment size disagrees with its column counts");
        }
        offset += it.signature_size;
        for (const auto& ph : it.phases) {
            if (ph.begin > ph.end || ph.end > p.length()) throw FormatError("phase span outside the program");
        }
    }
    if (offset != p.output_arity()) throw FormatError("signature segments do not cover the program outputs");
    if (L.iterations.size() != L.d_max) throw FormatError("iteration count disagrees with d_max");
    if (L.n != p.input_arity()) throw FormatError("point arity disagrees with the program");
    if (L.output_phase.end != p.length() || L.output_phase.begin > p.length()) {
        throw FormatError("output phase must end the program");
    }
}

}  // namespace

json separator_to_json(const CompiledSeparator& sep) {
    const auto& L = sep.layout;
    json iterations = json::array();
    for (const auto& it : L.iterations) {
        json phases = json::array();
        for (const auto& ph : it.phases) phases.push_back(span_to_json(ph));
        iterations.push_back({{"degree", it.degree},
                              {"rows", it.rows},
                              {"ideal_columns", it.ideal_columns},
                              {"orbit_columns", it.orbit_columns},
                              {"carried_slots", it.carried_slots},
                              {"signature_offset", it.signature_offset},
                              {"signature_size", it.signature_size},
                              {"phases", std::move(phases)}});
    }
    json meta = {{"d_max", L.d_max},
                 {"ambient_dim", L.ambient_dim},
                 {"group_dim", L.group_dim},
                 {"n", L.n},
                 {"N", L.N},
                 {"M", L.M},
                 {"r", L.r},
                 {"hilbert", L.hilbert},
                 {"iterations", std::move(iterations)},
                 {"output_phase", span_to_json(L.output_phase)},
                 {"digests", {{"group", L.group_digest}, {"rep", L.rep_digest}}}};
    return json{{"format", kSeparatorFormat}, {"program", program_to_json(sep.program)}, {"metadata", std::move(meta)}};
}

CompiledSeparator separator_from_json(const json& j) {
    if (get_field<std::string>(j, "format") != kSeparatorFormat) throw FormatError("unsupported separator format");
    if (!j.contains("program")) throw FormatError("missing key 'program'");
    Program prog = program_from_json(j.at("program"));
    if (!j.contains("metadata")) throw FormatError("missing key 'metadata'");
    const json& m = j.at("metadata");

    SeparatorLayout L;
    L.d_max = get_field<std::uint64_t>(m, "d_max");
    L.ambient_dim = get_field<std::size_t>(m, "ambient_dim");
    L.group_dim = get_field<std::size_t>(m, "group_dim");
    L.n = get_field<std::size_t>(m, "n");
    L.N = get_field<std::uint64_t>(m, "N");
    L.M = get_field<std::uint64_t>(m, "M");
    L.r = get_field<std::uint64_t>(m, "r");
    L.hilbert = get_field<std::vector<std::size_t>>(m, "hilbert");
    if (!m.contains("iterations") || !m.at("iterations").is_array()) throw FormatError("missing iterations");
    for (const auto& it : m.at("iterations")) {
        IterationLayout il;
        il.degree = get_field<std::size_t>(it, "degree");
        il.rows = get_field<std::size_t>(it, "rows");
        il.ideal_columns = get_field<std::size_t>(it, "ideal_columns");
        il.orbit_columns = get_field<std::size_t>(it, "orbit_columns");
        il.carried_slots = get_field<std::size_t>(it, "carried_slots");
        il.signature_offset = get_field<std::size_t>(it, "signature_offset");
        il.signature_size = get_field<std::size_t>(it, "signature_size");
        if (!it.contains("phases") || !it.at("phases").is_array()) throw FormatError("missing phases");
        for (const auto& ph : it.at("phases")) il.phases.push_back(span_from_json(ph));
        L.iterations.push_back(std::move(il));
    }
    if (!m.contains("output_phase")) throw FormatError("missing key 'output_phase'");
    L.output_phase = span_from_json(m.at("output_phase"));
    if (!m.contains("digests")) throw FormatError("missing key 'digests'");
    L.group_digest = get_field<std::string>(m.at("digests"), "group");
    L.rep_digest = get_field<std::string>(m.at("digests"), "rep");
    check_layout(L, prog);
    return CompiledSeparator{std::move(prog), std::move(L)};
}

std::string canonical_text(const GroupSpec& group) {
    json gens = json::array();
    for (const auto& h : group.generators) gens.push_back(h.to_string(group.vars));
    return json{{"field", field_to_json(group.field)},
                {"ambient_dim", group.ambient_dim},
                {"group_dim", group.group_dim},
                {"vars", group.vars},
                {"generators", std::move(gens)}}
        .dump();
}

std::string canonical_text(const RepSpec& rep, const GroupSpec& group) {
    json rho = json::array();
    for (const auto& row : rep.rho) {
        json r = json::array();
        for (const auto& e : row) r.push_back(e.to_string(group.vars));
        rho.push_back(std::move(r));
    }
    return json{{"n", rep.n}, {"rho", std::move(rho)}}.dump();
}

std::string write_separator(const CompiledSeparator& sep) { return separator_to_json(sep).dump() + "\n"; }

CompiledSeparator read_separator(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
    return separator_from_json(j);
}

}  // namespace orbitslp
