#include "orbitslp/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "orbitslp/orbit_compiler.hpp"
#include "orbitslp/serialize.hpp"

namespace orbitslp {

namespace {

using nlohmann::json;

/// Bad user input; the message is printed as-is and the command exits with kExitInput.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json read_json_file(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // Report the line holding the byte offset nlohmann points at.
        const std::size_t at = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const std::size_t line_start = text.rfind('\n', at == 0 ? 0 : at - 1);
        const std::size_t begin = line_start == std::string::npos ? 0 : line_start + 1;
        const std::size_t end = std::min(text.find('\n', at), text.size());
        const auto line_no = std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(begin), '\n') + 1;
        throw InputError(path + ":" + std::to_string(line_no) + ": invalid JSON (" + e.what() + ")\n  " +
                         text.substr(begin, end - begin));
    }
}

template <class T>
T json_get(const json& j, const std::string& path, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(path + ": missing key '" + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError(path + ": key '" + key + "' has the wrong type");
    }
}

std::size_t json_count(const json& j, const std::string& path, const char* key) {
    const json v = json_get<json>(j, path, key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw InputError(path + ": key '" + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

// Points are comma-separated exact literals in the given field.
std::vector<FieldElement> parse_point(const std::string& text, const FieldSpec& field, const std::string& what) {
    std::vector<FieldElement> p;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = text.find(',', start);
        const std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        try {
            p.push_back(field.parse(part));
        } catch (const LiteralError& e) {
            throw InputError(what + ": " + e.what());
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return p;
}

std::string polynomial_context(const std::string& source, const std::string& text, const ParseError& e) {
    return source + ": " + e.what() + "\n  " + text + "\n  " + std::string(e.column(), ' ') + "^";
}

Polynomial parse_in_file(const std::string& source, const std::string& text, const FieldSpec& f,
                         const std::vector<std::string>& vars) {
    try {
        return parse_polynomial(text, f, vars);
    } catch (const ParseError& e) {
        throw InputError(polynomial_context(source, text, e));
    }
}

GroupSpec load_group(const std::string& path, const FieldSpec& field) {
    const json j = read_json_file(path);
    GroupSpec g;
    g.field = field;
    g.ambient_dim = json_count(j, path, "ambient_dim");
    g.group_dim = json_count(j, path, "group_dim");
    g.vars = j.contains("vars") ? json_get<std::vector<std::string>>(j, path, "vars") : default_variable_names(g.ambient_dim);
    if (g.vars.size() != g.ambient_dim) throw InputError(path + ": 'vars' must list ambient_dim names");
    const auto gens = json_get<std::vector<std::string>>(j, path, "generators");
    for (std::size_t i = 0; i < gens.size(); ++i) {
        g.generators.push_back(parse_in_file(path + ": generators[" + std::to_string(i) + "]", gens[i], field, g.vars));
    }
    return g;
}

RepSpec load_rep(const std::string& path, const GroupSpec& group) {
    const json j = read_json_file(path);
    RepSpec rep;
    rep.n = json_count(j, path, "n");
    const auto rho = json_get<std::vector<std::vector<std::string>>>(j, path, "rho");
    if (rho.size() != rep.n) throw InputError(path + ": 'rho' must have n rows");
    for (std::size_t r = 0; r < rho.size(); ++r) {
        if (rho[r].size() != rep.n) throw InputError(path + ": rho[" + std::to_string(r) + "] must have n entries");
        std::vector<Polynomial> row;
        for (std::size_t c = 0; c < rho[r].size(); ++c) {
            row.push_back(parse_in_file(path + ": rho[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                                        rho[r][c], group.field, group.vars));
        }
        rep.rho.push_back(std::move(row));
    }
    return rep;
}

CompiledSeparator load_separator(const std::string& path) {
    try {
        return read_separator(read_file(path));
    } catch (const FormatError& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string signature_text(const Signature& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += s[i].to_string();
    }
    return out;
}

std::string signature_hash(const Signature& s) { return sha256_hex(signature_text(s)); }

json signature_json(const Signature& s) {
    json a = json::array();
    for (const auto& v : s) a.push_back(v.to_string());
    return a;
}

struct Options {
    std::string group, rep, params, field, out, separator, p, q, point, points;
    bool json = false;
    unsigned jobs = 1;
};

int cmd_compile(const Options& o, std::ostream& out) {
    OrbitParams params;
    std::optional<FieldSpec> field;
    if (!o.params.empty()) {
        const json j = read_json_file(o.params);
        if (!j.is_object()) throw InputError(o.params + ": expected an object");
        if (j.contains("r") && !j["r"].is_null()) params.r = json_count(j, o.params, "r");
        if (j.contains("bound_override") && !j["bound_override"].is_null()) {
            params.bound_override = json_count(j, o.params, "bound_override");
        }
        if (j.contains("field")) field = field_from_json(j["field"]);
    }
    if (!o.field.empty()) field = field_from_json(json(o.field));
    const FieldSpec f = field.value_or(FieldSpec::rationals());

    const GroupSpec group = load_group(o.group, f);
    const RepSpec rep = load_rep(o.rep, group);
    const CompiledSeparator sep = compile(group, rep, params, CompileOptions::from_environment());

    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw InputError(o.out + ": cannot write file");
    file << write_separator(sep);
    if (!file.flush()) throw InputError(o.out + ": write failed");

    const SeparatorStats s = stats(sep);
    out << "wrote " << o.out << "\n";
    out << "field " << f.describe() << ", n = " << rep.n << ", l = " << group.ambient_dim << ", m = " << group.group_dim
        << "\n";
    out << "d_max = " << sep.layout.d_max << " (N = " << sep.layout.N << ", M = " << sep.layout.M
        << ", r = " << sep.layout.r << ")\n";
    out << "program length " << s.total_length << ", signature " << s.signature_vectors << " vectors / "
        << s.signature_scalars << " scalars\n";
    return kExitOk;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const CompiledSeparator sep = load_separator(o.separator);
    const FieldSpec f = sep.program.field();

    if (!o.points.empty()) {
        std::vector<std::vector<FieldElement>> points;
        std::istringstream lines(read_file(o.points));
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(lines, line)) {
            ++line_no;
            line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }), line.end());
            if (line.empty() || line[0] == '#') continue;
            auto p = parse_point(line, f, o.points + ":" + std::to_string(line_no));
            if (p.size() != sep.program.input_arity()) {
                throw InputError(o.points + ":" + std::to_string(line_no) + ": point has " + std::to_string(p.size()) +
                                 " coordinates, expected " + std::to_string(sep.program.input_arity()));
            }
            points.push_back(std::move(p));
        }
        // Workers take interleaved indices; results are written back by index.
        std::vector<Signature> sigs(points.size());
        const unsigned workers = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(points.size())));
        std::vector<std::future<void>> tasks;
        for (unsigned w = 0; w < workers; ++w) {
            tasks.push_back(std::async(std::launch::async, [&, w] {
                for (std::size_t i = w; i < points.size(); i += workers) sigs[i] = evaluate(sep, points[i]);
            }));
        }
        for (auto& t : tasks) t.get();
        if (o.json) {
            json arr = json::array();
            for (std::size_t i = 0; i < sigs.size(); ++i) {
                arr.push_back({{"index", i}, {"signature", signature_json(sigs[i])}, {"sha256", signature_hash(sigs[i])}});
            }
            out << arr.dump() << "\n";
        } else {
            for (std::size_t i = 0; i < sigs.size(); ++i) out << i << "\t" << signature_hash(sigs[i]) << "\n";
        }
        return kExitOk;
    }

    if (o.point.empty()) throw InputError("eval needs --point or --points");
    const auto p = parse_point(o.point, f, "--point");
    const Signature s = evaluate(sep, p);
    if (o.json) {
        json pj = json::array();
        for (const auto& v : p) pj.push_back(v.to_string());
        out << json{{"point", pj}, {"signature", signature_json(s)}, {"sha256", signature_hash(s)}}.dump() << "\n";
    } else {
        out << "signature " << signature_text(s) << "\n";
        out << "sha256 " << signature_hash(s) << "\n";
    }
    return kExitOk;
}

int cmd_separate(const Options& o, std::ostream& out) {
    const CompiledSeparator sep = load_separator(o.separator);
    const FieldSpec f = sep.program.field();
    const auto p = parse_point(o.p, f, "--p");
    const auto q = parse_point(o.q, f, "--q");
    const Signature sp = evaluate(sep, p);
    const Signature sq = evaluate(sep, q);
    const bool same = sp == sq;
    if (o.json) {
        out << json{{"verdict", same ? "SAME-ORBIT" : "DIFFERENT-ORBIT"},
                    {"p_sha256", signature_hash(sp)},
                    {"q_sha256", signature_hash(sq)}}
                   .dump()
            << "\n";
    } else if (same) {
        out << "SAME-ORBIT " << signature_hash(sp) << "\n";
    } else {
        out << "DIFFERENT-ORBIT " << signature_hash(sp) << " " << signature_hash(sq) << "\n";
    }
    return same ? kExitOk : kExitDifferent;
}

json census_json(const Census& c) {
    json j = json::object();
    for (std::size_t op = 0; op < kOpcodeCount; ++op) j[opcode_name(static_cast<Opcode>(op))] = c.by_opcode[op];
    j["total"] = c.total;
    return j;
}

int cmd_stats(const Options& o, std::ostream& out) {
    const CompiledSeparator sep = load_separator(o.separator);
    const SeparatorStats s = stats(sep);
    if (o.json) {
        json iterations = json::array();
        for (const auto& it : s.iterations) {
            json phases = json::object();
            for (const auto& ph : it.phases) phases[ph.name] = census_json(ph.census);
            iterations.push_back({{"iteration", it.iteration},
                                  {"degree", it.layout.degree},
                                  {"rows", it.layout.rows},
                                  {"ideal_columns", it.layout.ideal_columns},
                                  {"orbit_columns", it.layout.orbit_columns},
                                  {"carried_slots", it.layout.carried_slots},
                                  {"length", it.length},
                                  {"phases", phases}});
        }
        json by_phase = json::object();
        for (const auto& ph : s.by_phase) by_phase[ph.name] = census_json(ph.census);
        out << json{{"total_length", s.total_length},
                    {"census", census_json(s.census)},
                    {"d_max", s.d_max},
                    {"signature_vectors", s.signature_vectors},
                    {"signature_scalars", s.signature_scalars},
                    {"count_bound", s.count_bound},
                    {"length_bound", s.length_bound},
                    {"iterations", iterations},
                    {"by_phase", by_phase}}
                   .dump(2)
            << "\n";
        return kExitOk;
    }

    out << "d_max " << s.d_max << "\n";
    out << "total length " << s.total_length << "\n";
    out << "signature " << s.signature_vectors << " vectors (bound " << s.count_bound << "), " << s.signature_scalars
        << " scalars\n";
    out << "length bound " << s.length_bound << "\n\n";
    out << std::left << std::setw(5) << "iter" << std::setw(8) << "degree" << std::setw(7) << "rows" << std::setw(7)
        << "ideal" << std::setw(7) << "orbit" << std::setw(7) << "carry" << "length\n";
    for (const auto& it : s.iterations) {
        out << std::setw(5) << it.iteration << std::setw(8) << it.layout.degree << std::setw(7) << it.layout.rows
            << std::setw(7) << it.layout.ideal_columns << std::setw(7) << it.layout.orbit_columns << std::setw(7)
            << it.layout.carried_slots << it.length << "\n";
    }
    out << "\n" << std::setw(16) << "phase";
    for (std::size_t op = 0; op < kOpcodeCount; ++op) out << std::setw(9) << opcode_name(static_cast<Opcode>(op));
    out << "total\n";
    auto row = [&](const std::string& name, const Census& c) {
        out << std::setw(16) << name;
        for (auto n : c.by_opcode) out << std::setw(9) << n;
        out << c.total << "\n";
    };
    for (const auto& ph : s.by_phase) row(ph.name, ph.census);
    row("all", s.census);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compile group actions into orbit-separating straight-line programs", "orbitslp"};
    app.require_subcommand(1);
    Options o;

    auto* compile_cmd = app.add_subcommand("compile", "Compile a separator from group and representation specs");
    compile_cmd->add_option("--group", o.group, "Group spec JSON")->required();
    compile_cmd->add_option("--rep", o.rep, "Representation spec JSON")->required();
    compile_cmd->add_option("--params", o.params, "Parameters JSON {r, bound_override, field}");
    compile_cmd->add_option("--field", o.field, "\"rational\" or \"prime:p\" (overrides params)");
    compile_cmd->add_option("--out", o.out, "Separator output file")->required();

    auto* eval_cmd = app.add_subcommand("eval", "Evaluate the signature at a point");
    eval_cmd->add_option("separator", o.separator, "Separator file")->required();
    auto* point_opt = eval_cmd->add_option("--point", o.point, "Comma-separated exact coordinates");
    auto* points_opt = eval_cmd->add_option("--points", o.points, "File with one point per line");
    point_opt->excludes(points_opt);
    eval_cmd->add_option("--jobs", o.jobs, "Parallel workers for --points")->check(CLI::Range(1u, 256u));
    eval_cmd->add_flag("--json", o.json, "Machine-readable output");

    auto* sep_cmd = app.add_subcommand("separate", "Decide whether two points share an orbit");
    sep_cmd->add_option("separator", o.separator, "Separator file")->required();
    sep_cmd->add_option("--p", o.p, "First point")->required();
    sep_cmd->add_option("--q", o.q, "Second point")->required();
    sep_cmd->add_flag("--json", o.json, "Machine-readable output");

    auto* stats_cmd = app.add_subcommand("stats", "Instruction census of a separator");
    stats_cmd->add_option("separator", o.separator, "Separator file")->required();
    stats_cmd->add_flag("--json", o.json, "Machine-readable output");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        if (compile_cmd->parsed()) return cmd_compile(o, out);
        if (eval_cmd->parsed()) return cmd_eval(o, out);
        if (sep_cmd->parsed()) return cmd_separate(o, out);
        if (stats_cmd->parsed()) return cmd_stats(o, out);
    } catch (const CeilingExceeded& e) {
        err << "error: ceiling exceeded: " << e.what() << "\n";
        return kExitCeiling;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ArityError& e) {
        err << "error: arity mismatch: " << e.what() << "\n";
        return kExitInput;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::runtime_error& e) {
        // ConfigError, FormatError, LiteralError and the like.
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    err << "error: no command\n";
    return kExitInput;
}

}  // namespace orbitslp
