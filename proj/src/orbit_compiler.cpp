#include "orbitslp/orbit_compiler.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "orbitslp/program_builder.hpp"
#include "orbitslp/serialize.hpp"
#include "orbitslp/slp_linalg.hpp"

namespace orbitslp {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        r = saturating_mul(r, base);
        if (r == 0 || r == std::numeric_limits<std::uint64_t>::max()) break;
    }
    return r;
}

GroupSpec GroupSpec::parse(FieldSpec field, std::size_t ambient_dim, std::size_t group_dim,
                           std::vector<std::string> vars, std::span<const std::string> generators) {
    GroupSpec g;
    g.field = field;
    g.ambient_dim = ambient_dim;
    g.group_dim = group_dim;
    g.vars = vars.empty() ? default_variable_names(ambient_dim) : std::move(vars);
    if (g.vars.size() != ambient_dim) {
        throw ConfigError("group lists " + std::to_string(g.vars.size()) + " variables but ambient_dim is " +
                          std::to_string(ambient_dim));
    }
    for (const auto& text : generators) g.generators.push_back(parse_polynomial(text, field, g.vars));
    return g;
}

std::uint64_t GroupSpec::max_generator_degree() const {
    std::uint64_t m = 1;
    for (const auto& h : generators) m = std::max<std::uint64_t>(m, static_cast<std::uint64_t>(std::max<std::int64_t>(h.degree(), 0)));
    return m;
}

RepSpec RepSpec::parse(const GroupSpec& group, std::size_t n, const std::vector<std::vector<std::string>>& rho) {
    if (rho.size() != n) throw ConfigError("rho has " + std::to_string(rho.size()) + " rows, expected " + std::to_string(n));
    RepSpec rep;
    rep.n = n;
    for (const auto& row : rho) {
        if (row.size() != n) {
            throw ConfigError("rho row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
        }
        std::vector<Polynomial> parsed;
        for (const auto& text : row) parsed.push_back(parse_polynomial(text, group.field, group.vars));
        rep.rho.push_back(std::move(parsed));
    }
    return rep;
}

std::uint64_t RepSpec::max_entry_degree() const {
    std::int64_t d = 0;
    for (const auto& row : rho) {
        for (const auto& e : row) d = std::max(d, e.degree());
    }
    return static_cast<std::uint64_t>(d);
}

std::vector<FieldElement> RepSpec::act(std::span<const FieldElement> g, std::span<const FieldElement> p) const {
    if (p.size() != n) throw ArityError("point has " + std::to_string(p.size()) + " coordinates, expected " + std::to_string(n));
    std::vector<FieldElement> out;
    for (std::size_t j = 0; j < n; ++j) {
        FieldElement acc = p.empty() ? FieldElement() : p[0].field().zero();
        for (std::size_t k = 0; k < n; ++k) acc += rho[j][k].evaluate(g) * p[k];
        out.push_back(acc);
    }
    return out;
}

CompileOptions CompileOptions::from_environment() {
    CompileOptions o;
    if (const char* cap = std::getenv("ORBITSLP_CELL_CAP"); cap != nullptr && *cap != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(cap, &end, 10);
        if (end == cap || *end != '\0' || v == 0) {
            throw ConfigError(std::string("ORBITSLP_CELL_CAP must be a positive integer, got '") + cap + "'");
        }
        o.cell_cap = static_cast<std::size_t>(v);
    }
    return o;
}

std::size_t CompiledSeparator::signature_vectors() const {
    std::size_t s = 0;
    for (const auto& it : layout.iterations) s += it.ideal_columns + it.orbit_columns;
    return s;
}

void check_specs(const GroupSpec& group, const RepSpec& rep, const OrbitParams& params) {
    if (group.ambient_dim == 0) throw ConfigError("ambient_dim must be at least 1");
    if (group.group_dim > group.ambient_dim) throw ConfigError("group_dim exceeds ambient_dim");
    if (group.vars.size() != group.ambient_dim) throw ConfigError("variable count does not match ambient_dim");
    for (const auto& h : group.generators) {
        if (h.nvars() != group.ambient_dim) throw ConfigError("generator over the wrong number of variables");
        if (h.field() != group.field) throw ConfigError("generator over a different field");
    }
    if (rep.n == 0) throw ConfigError("representation dimension must be at least 1");
    if (rep.rho.size() != rep.n) throw ConfigError("rho must be n x n");
    for (const auto& row : rep.rho) {
        if (row.size() != rep.n) throw ConfigError("rho must be n x n");
        for (const auto& e : row) {
            if (e.nvars() != group.ambient_dim) throw ConfigError("rho entry over the wrong number of variables");
            if (e.field() != group.field) throw ConfigError("rho entry over a different field");
        }
    }
    const std::uint64_t r_max = std::min<std::uint64_t>(group.group_dim, rep.n);
    if (params.r && *params.r > r_max) {
        throw ConfigError("r = " + std::to_string(*params.r) + " exceeds min(group_dim, n) = " + std::to_string(r_max));
    }
    if (params.bound_override && *params.bound_override == 0) throw ConfigError("bound_override must be positive");
}

namespace {

std::uint64_t orbit_dim(const GroupSpec& group, const RepSpec& rep, const OrbitParams& params) {
    return params.r.value_or(std::min<std::uint64_t>(group.group_dim, rep.n));
}

}  // namespace

std::uint64_t degree_bound(const GroupSpec& group, const RepSpec& rep, const OrbitParams& params) {
    if (params.bound_override) return *params.bound_override;
    const std::uint64_t N = rep.max_entry_degree();
    const std::uint64_t M = group.max_generator_degree();
    const std::uint64_t d = saturating_mul(saturating_pow(N, orbit_dim(group, rep, params)),
                                           saturating_pow(M, group.ambient_dim - group.group_dim));
    return std::max<std::uint64_t>(d, 1);
}

namespace {

using CellVector = std::vector<Cell>;

class Compiler {
public:
    Compiler(const GroupSpec& group, const RepSpec& rep, const OrbitParams& params, const CompileOptions& options)
        : group_(group), rep_(rep), options_(options), b_(group.field, rep.n),
          gb_(buchberger(group.generators, group.field, group.ambient_dim)) {
        layout_.ambient_dim = group.ambient_dim;
        layout_.group_dim = group.group_dim;
        layout_.n = rep.n;
        layout_.N = rep.max_entry_degree();
        layout_.M = group.max_generator_degree();
        layout_.r = orbit_dim(group, rep, params);
        layout_.d_max = degree_bound(group, rep, params);
        if (gb_.is_unit_ideal()) throw ConfigError("the group ideal is the whole ring, so G is empty");
        if (layout_.d_max > kMaxIterations) {
            throw CeilingExceeded("degree bound " + std::to_string(layout_.d_max) + " exceeds the iteration ceiling " +
                                  std::to_string(kMaxIterations));
        }
    }

    CompiledSeparator run() {
        const std::size_t n = rep_.n;
        const std::size_t N = static_cast<std::size_t>(layout_.N);

        std::vector<CellVector> v;  // V_i, each over the monomials of degree <= i*N
        std::vector<Cell> signature;

        for (std::uint64_t i = 1; i <= layout_.d_max; ++i) {
            const std::size_t degree = static_cast<std::size_t>(i) * N;
            const std::size_t k = i == 1 ? n + 1 : v.size();
            check_ceiling(i, degree, k);
            const MonomialIndex idx(group_.ambient_dim, degree);

            IterationLayout it;
            it.degree = degree;
            it.rows = idx.size();
            it.orbit_columns = k;

            if (i == 1) {
                const std::size_t start = b_.position();
                v = orbit_map(idx);
                it.phases.push_back({"orbit_map", start, b_.position()});
            }

            std::size_t start = b_.position();
            const auto ideal = ideal_k_basis(gb_, degree);
            std::vector<CellVector> ideal_cells;
            for (const auto& poly : ideal) {
                CellVector col;
                for (const auto& c : coeff_vector(poly, idx)) col.push_back(b_.constant(c));
                ideal_cells.push_back(std::move(col));
            }
            it.ideal_columns = ideal.size();
            it.phases.push_back({"ideal_constants", start, b_.position()});

            const bool ideal_first = options_.column_order == ColumnOrder::kIdealFirst;
            const std::size_t cols = ideal.size() + k;
            const std::size_t v_offset = ideal_first ? ideal.size() : 0;
            const std::size_t b_offset = ideal_first ? 0 : k;
            CellMatrix x(idx.size(), cols, b_.zero());
            for (std::size_t row = 0; row < idx.size(); ++row) {
                for (std::size_t t = 0; t < ideal.size(); ++t) x.at(row, b_offset + t) = ideal_cells[t][row];
                for (std::size_t t = 0; t < k; ++t) x.at(row, v_offset + t) = v[t][row];
            }

            start = b_.position();
            const CellMatrix r = emit_trref(b_, x);
            it.phases.push_back({"trref", start, b_.position()});

            start = b_.position();
            const CellMatrix phi = emit_kernel(b_, r, v_offset, k);
            it.phases.push_back({"kernel", start, b_.position()});
            it.signature_offset = signature.size();
            it.signature_size = phi.cells.size();
            signature.insert(signature.end(), phi.cells.begin(), phi.cells.end());

            if (i == layout_.d_max) {
                it.carried_slots = 0;
                layout_.iterations.push_back(std::move(it));
                break;
            }

            start = b_.position();
            std::vector<Cell> indicator;
            for (std::size_t t = 0; t < k; ++t) indicator.push_back(r.at(v_offset + t, v_offset + t));
            CellMatrix y(k, idx.size(), b_.zero());
            for (std::size_t t = 0; t < k; ++t) std::copy(v[t].begin(), v[t].end(), y.cells.begin() + static_cast<std::ptrdiff_t>(t * idx.size()));
            const std::size_t slots = carried_slots(i, degree);
            const CellMatrix l = emit_collect(b_, indicator, y, slots);
            it.carried_slots = slots;
            it.phases.push_back({"collect", start, b_.position()});

            start = b_.position();
            v = extend(l, idx, multiplied_from(i, slots), degree + N);
            it.phases.push_back({"extend", start, b_.position()});
            layout_.iterations.push_back(std::move(it));
        }

        const std::size_t start = b_.position();
        Program prog = std::move(b_).finish(signature);
        layout_.output_phase = {"output_recall", start, prog.length()};

        const std::size_t top = static_cast<std::size_t>(layout_.d_max) * N;
        for (std::size_t d = 0; d <= top; ++d) layout_.hilbert.push_back(hilbert(d));
        layout_.group_digest = sha256_hex(canonical_text(group_));
        layout_.rep_digest = sha256_hex(canonical_text(rep_, group_));

        std::string text = "in: point p (" + std::to_string(rep_.n) + " coordinates); out: signature of " +
                           std::to_string(signature.size()) + " scalars, per iteration the kernel slots";
        text += options_.column_order == ColumnOrder::kIdealFirst ? " (ideal columns, then orbit columns)"
                                                                   : " (orbit columns, then ideal columns)";
        text += " projected onto the orbit columns, slot-major";
        return CompiledSeparator{std::move(prog).with_layout(std::move(text)), std::move(layout_)};
    }

private:
    std::size_t hilbert(std::size_t d) {
        auto [it, fresh] = hilbert_cache_.try_emplace(d, 0);
        if (fresh) it->second = hilbert_leq(gb_, d);
        return it->second;
    }

    void check_ceiling(std::uint64_t i, std::size_t degree, std::size_t k) {
        const std::uint64_t rows = binomial(group_.ambient_dim + degree, group_.ambient_dim);
        if (rows > options_.cell_cap) {
            throw CeilingExceeded("iteration " + std::to_string(i) + " needs " + std::to_string(rows) +
                                  " monomial rows (degree " + std::to_string(degree) + " in " +
                                  std::to_string(group_.ambient_dim) + " variables), above the cell cap " +
                                  std::to_string(options_.cell_cap));
        }
        const std::uint64_t cols = (rows - hilbert(degree)) + k;
        if (saturating_mul(rows, cols) > options_.cell_cap) {
            throw CeilingExceeded("iteration " + std::to_string(i) + " matrix is " + std::to_string(rows) + " x " +
                                  std::to_string(cols) + " = " + std::to_string(saturating_mul(rows, cols)) +
                                  " cells, above the cell cap " + std::to_string(options_.cell_cap));
        }
    }

    std::size_t carried_slots(std::uint64_t i, std::size_t degree) {
        if (options_.slot_rule == SlotRule::kNewfoundByPosition) return hilbert(static_cast<std::size_t>(i));
        return hilbert(degree);
    }

    std::size_t multiplied_from(std::uint64_t i, std::size_t slots) {
        if (options_.slot_rule == SlotRule::kNewfoundByPosition) {
            return std::min(slots, hilbert(static_cast<std::size_t>(i - 1)));
        }
        return 0;
    }

    // V_1: the constant 1, then the coefficients of sigma*(x_j) = sum_k rho_jk(z) p_k.
    std::vector<CellVector> orbit_map(const MonomialIndex& idx) {
        const std::size_t n = rep_.n;
        std::vector<CellVector> v;
        CellVector unit(idx.size(), b_.zero());
        unit[0] = b_.one();
        v.push_back(std::move(unit));
        sigma_.assign(n, CellVector(idx.size(), b_.zero()));
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t row = 0; row < idx.size(); ++row) {
                Cell acc = b_.zero();
                for (std::size_t k = 0; k < n; ++k) {
                    const FieldElement c = rep_.rho[j][k].coefficient(idx[row]);
                    if (c.is_zero()) continue;
                    acc = b_.add(acc, b_.mul(b_.constant(c), b_.input(k)));
                }
                sigma_[j][row] = acc;
            }
            v.push_back(sigma_[j]);
        }
        sigma_index_ = idx.size();
        return v;
    }

    // V_{i+1}: the carried vectors zero-extended, then sigma*(x_j) * v for j outer and v inner.
    std::vector<CellVector> extend(const CellMatrix& l, const MonomialIndex& idx, std::size_t first_multiplied,
                                   std::size_t next_degree) {
        const MonomialIndex next(group_.ambient_dim, next_degree);
        std::vector<CellVector> out;
        for (std::size_t s = 0; s < l.rows; ++s) {
            CellVector w(next.size(), b_.zero());
            for (std::size_t row = 0; row < idx.size(); ++row) w[row] = l.at(s, row);
            out.push_back(std::move(w));
        }
        // Product positions depend only on the monomials, so compute them once.
        std::vector<std::vector<std::size_t>> product_row(sigma_index_, std::vector<std::size_t>(idx.size()));
        for (std::size_t a = 0; a < sigma_index_; ++a) {
            for (std::size_t c = 0; c < idx.size(); ++c) product_row[a][c] = next.index_of(idx[a] * idx[c]);
        }
        for (std::size_t j = 0; j < rep_.n; ++j) {
            for (std::size_t s = first_multiplied; s < l.rows; ++s) {
                CellVector w(next.size(), b_.zero());
                for (std::size_t a = 0; a < sigma_index_; ++a) {
                    if (b_.is_zero(sigma_[j][a])) continue;
                    for (std::size_t c = 0; c < idx.size(); ++c) {
                        const std::size_t target = product_row[a][c];
                        w[target] = b_.add(w[target], b_.mul(sigma_[j][a], l.at(s, c)));
                    }
                }
                out.push_back(std::move(w));
            }
        }
        return out;
    }

    const GroupSpec& group_;
    const RepSpec& rep_;
    CompileOptions options_;
    ProgramBuilder b_;
    GroebnerBasis gb_;
    SeparatorLayout layout_;
    std::vector<CellVector> sigma_;
    std::size_t sigma_index_ = 0;
    std::map<std::size_t, std::size_t> hilbert_cache_;
};

}  // namespace

CompiledSeparator compile(const GroupSpec& group, const RepSpec& rep, const OrbitParams& params,
                          const CompileOptions& options) {
    check_specs(group, rep, params);
    return Compiler(group, rep, params, options).run();
}

Signature evaluate(const CompiledSeparator& sep, std::span<const FieldElement> point) {
    return execute(sep.program, point);
}

bool separate(const CompiledSeparator& sep, std::span<const FieldElement> p, std::span<const FieldElement> q) {
    if (p.size() != q.size()) throw ArityError("points have different lengths");
    return evaluate(sep, p) == evaluate(sep, q);
}

bool orbit_oracle_finite(std::span<const std::vector<FieldElement>> elements, const GroupSpec& group,
                         const RepSpec& rep, std::span<const FieldElement> p, std::span<const FieldElement> q) {
    if (p.size() != rep.n || q.size() != rep.n) throw ArityError("point arity does not match the representation");
    for (const auto& g : elements) {
        if (g.size() != group.ambient_dim) throw ConfigError("group element has the wrong number of coordinates");
        for (const auto& h : group.generators) {
            if (!h.evaluate(g).is_zero()) throw ConfigError("listed element does not lie on G");
        }
    }
    const std::vector<FieldElement> target(q.begin(), q.end());
    for (const auto& g : elements) {
        if (rep.act(g, p) == target) return true;
    }
    return false;
}

SeparatorStats stats(const CompiledSeparator& sep) {
    const auto& L = sep.layout;
    SeparatorStats s;
    s.total_length = sep.program.length();
    s.census = census(sep.program);
    s.d_max = L.d_max;
    s.signature_vectors = sep.signature_vectors();
    s.signature_scalars = sep.program.output_arity();

    const std::uint64_t n = L.n, N = L.N, M = L.M, l = L.ambient_dim, m = L.group_dim, r = L.r;
    s.count_bound = saturating_mul(saturating_mul(n * n, saturating_pow(N, (l + m + 1) * (r + 1))),
                                   saturating_pow(M, (l - m) * (l + m + 1)));
    s.length_bound = saturating_mul(saturating_mul(n * n * n, saturating_pow(N, 3 * l * (r + 1) + r)),
                                    saturating_pow(M, (l - m) * (3 * l + 1)));

    const auto code = sep.program.code();
    std::map<std::string, Census> totals;
    std::vector<std::string> order;
    for (std::size_t i = 0; i < L.iterations.size(); ++i) {
        const auto& it = L.iterations[i];
        IterationStats is{i + 1, it, {}, 0};
        for (const auto& ph : it.phases) {
            const Census c = census(code.subspan(ph.begin, ph.end - ph.begin));
            is.phases.push_back({ph.name, c});
            is.length += c.total;
            if (!totals.contains(ph.name)) order.push_back(ph.name);
            totals[ph.name] += c;
        }
        s.iterations.push_back(std::move(is));
    }
    s.output_recall = census(code.subspan(L.output_phase.begin, L.output_phase.end - L.output_phase.begin));
    for (const auto& name : order) s.by_phase.push_back({name, totals[name]});
    s.by_phase.push_back({L.output_phase.name, s.output_recall});
    return s;
}

}  // namespace orbitslp
