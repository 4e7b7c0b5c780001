#include "doctest.h"
#include "actions.hpp"
#include "test_support.hpp"

#include "orbitslp/serialize.hpp"

using namespace orbitslp;
using namespace orbitslp::testing;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

CompiledSeparator build(const Action& a, CompileOptions opts = {}) { return compile(a.group, a.rep, a.params, opts); }

std::vector<FieldElement> random_point(const FieldSpec& f, std::size_t n, std::mt19937_64& rng) {
    std::vector<FieldElement> p;
    for (std::size_t i = 0; i < n; ++i) p.push_back(f.is_rational() ? random_nonzero_rational(f, rng) : random_element(f, rng));
    return p;
}

// Rational points of the circle from the stereographic parametrization.
std::vector<FieldElement> circle_point(const FieldElement& t) {
    const auto one = t.field().one();
    const auto den = divide(one, one + t * t);
    return {(one - t * t) * den, (t + t) * den};
}

std::vector<std::vector<FieldElement>> cube_roots_gf7() {
    const auto f = FieldSpec::prime(7);
    return {{f.from_int(1)}, {f.from_int(2)}, {f.from_int(4)}};
}

}  // namespace

TEST_CASE("degree bound") {
    const auto torus = torus_scaling();
    CHECK(degree_bound(torus.group, torus.rep, torus.params) == 2);
    const auto sign = sign_action();
    CHECK(degree_bound(sign.group, sign.rep, sign.params) == 2);
    const auto line = make_action(kQ, 2, 1, {"z1 - z2"}, {{"z1", "0"}, {"0", "z1"}});
    CHECK(degree_bound(line.group, line.rep, line.params) == 1);
    CHECK(degree_bound(z3_diagonal_gf7().group, z3_diagonal_gf7().rep, {}) == 3);
    const auto triv = trivial_group(2, 2);
    CHECK(degree_bound(triv.group, triv.rep, triv.params) == 1);
    OrbitParams over;
    over.bound_override = 5;
    CHECK(degree_bound(torus.group, torus.rep, over) == 5);
    OrbitParams r0;
    r0.r = 0;
    CHECK(degree_bound(torus.group, torus.rep, r0) == 2);
    CHECK(saturating_pow(10, 40) == UINT64_MAX);
}

TEST_CASE("spec validation") {
    auto a = torus_scaling();
    a.params.r = 2;
    CHECK_THROWS_AS(build(a), ConfigError);
    auto b = torus_scaling();
    b.group.group_dim = 3;
    CHECK_THROWS_AS(build(b), ConfigError);
    CHECK_THROWS_AS(make_action(kQ, 2, 1, {"z1*z3"}, {{"z1"}}), ParseError);
    CHECK_THROWS_AS(make_action(kQ, 1, 0, {"z1"}, {{"z1", "0"}}), ConfigError);
    CHECK_THROWS_AS(build(make_action(kQ, 1, 0, {"z1", "z1 - 1"}, {{"z1"}})), ConfigError);
}

TEST_CASE("compilation is deterministic and shape-only") {
    const auto a = torus_scaling();
    const auto s1 = build(a);
    const auto s2 = build(a);
    CHECK(s1 == s2);
    CHECK(write_separator(s1) == write_separator(s2));
    CHECK(s1.layout.d_max == 2);
    CHECK(s1.program.input_arity() == 2);

    std::mt19937_64 rng(1);
    ExecutionTrace t1, t2;
    execute(s1.program, random_point(kQ, 2, rng), &t1);
    execute(s1.program, point(kQ, {"0", "0"}), &t2);
    CHECK(t1.steps == t2.steps);
}

TEST_CASE("layout bookkeeping") {
    for (const auto& a : {torus_scaling(), sign_action(), z3_diagonal_gf7(), circle_rotation(), trivial_group(2, 3)}) {
        const auto sep = build(a);
        const auto& L = sep.layout;
        REQUIRE(L.iterations.size() == L.d_max);
        std::size_t offset = 0, cursor = 0;
        for (std::size_t i = 0; i < L.iterations.size(); ++i) {
            const auto& it = L.iterations[i];
            CHECK(it.signature_offset == offset);
            CHECK(it.signature_size == (it.ideal_columns + it.orbit_columns) * it.orbit_columns);
            CHECK(it.rows == binomial(L.ambient_dim + it.degree, L.ambient_dim));
            CHECK(it.ideal_columns + L.hilbert[it.degree] == it.rows);
            offset += it.signature_size;
            for (const auto& ph : it.phases) {
                CHECK(ph.begin == cursor);
                cursor = ph.end;
            }
            if (i + 1 < L.iterations.size()) {
                CHECK(it.carried_slots == L.hilbert[it.degree]);
                CHECK(L.iterations[i + 1].orbit_columns == (L.n + 1) * it.carried_slots);
            }
        }
        CHECK(L.iterations.front().orbit_columns == L.n + 1);
        CHECK(L.output_phase.begin == cursor);
        CHECK(L.output_phase.end == sep.program.length());
        CHECK(offset == sep.program.output_arity());
    }
}

TEST_CASE("sign action: first matrix has the orbit columns and no ideal columns") {
    const auto sep = build(sign_action());
    const auto& first = sep.layout.iterations.front();
    // The constant 1 and the coefficients of z*p.
    CHECK(first.orbit_columns == 2);
    CHECK(first.ideal_columns == 0);
    CHECK(first.rows == 2);
}

TEST_CASE("torus: invariance under scaling") {
    const auto sep = build(torus_scaling());
    std::mt19937_64 rng(42);
    for (int t = 0; t < 10; ++t) {
        const auto p = random_point(kQ, 2, rng);
        const auto sig = evaluate(sep, p);
        for (int s = 0; s < 20; ++s) {
            const auto lambda = random_nonzero_rational(kQ, rng);
            const std::vector g = {lambda, divide(kQ.one(), lambda)};
            CHECK(evaluate(sep, torus_scaling().rep.act(g, p)) == sig);
        }
    }
}

TEST_CASE("torus: separation") {
    const auto sep = build(torus_scaling());
    CHECK_FALSE(separate(sep, point(kQ, {"1", "2"}), point(kQ, {"1", "3"})));
    CHECK_FALSE(separate(sep, point(kQ, {"0", "0"}), point(kQ, {"1", "0"})));
    CHECK(separate(sep, point(kQ, {"1", "2"}), point(kQ, {"2", "4"})));
    CHECK(separate(sep, point(kQ, {"1", "2"}), point(kQ, {"-1/3", "-2/3"})));
    CHECK_FALSE(separate(sep, point(kQ, {"1", "0"}), point(kQ, {"0", "1"})));
    CHECK(separate(sep, point(kQ, {"5", "7"}), point(kQ, {"5", "7"})));
    CHECK_THROWS_AS(separate(sep, point(kQ, {"1"}), point(kQ, {"1", "2"})), ArityError);
    CHECK_THROWS_AS(evaluate(sep, point(kQ, {"1", "2", "3"})), ArityError);
}

TEST_CASE("sign action: invariance and separation") {
    const auto a = sign_action();
    const auto sep = build(a);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10; ++t) {
        const auto p = random_point(kQ, 1, rng);
        CHECK(evaluate(sep, p) == evaluate(sep, std::vector{-p[0]}));
    }
    CHECK(separate(sep, point(kQ, {"3"}), point(kQ, {"-3"})));
    CHECK_FALSE(separate(sep, point(kQ, {"3"}), point(kQ, {"2"})));
    CHECK_FALSE(separate(sep, point(kQ, {"0"}), point(kQ, {"1"})));

    const std::vector<std::vector<FieldElement>> elems = {{kQ.from_int(1)}, {kQ.from_int(-1)}};
    CHECK(orbit_oracle_finite(elems, a.group, a.rep, point(kQ, {"3"}), point(kQ, {"-3"})));
    CHECK_FALSE(orbit_oracle_finite(elems, a.group, a.rep, point(kQ, {"3"}), point(kQ, {"4"})));
    const std::vector<std::vector<FieldElement>> bad = {{kQ.from_int(2)}};
    CHECK_THROWS_AS(orbit_oracle_finite(bad, a.group, a.rep, point(kQ, {"3"}), point(kQ, {"3"})), ConfigError);
}

TEST_CASE("Z/3 over GF(7) agrees with the orbit oracle") {
    const auto a = z3_diagonal_gf7();
    const auto f = a.group.field;
    const auto sep = build(a);
    const auto elems = cube_roots_gf7();
    CHECK(orbit_oracle_finite(elems, a.group, a.rep, point(f, {"1", "1"}), point(f, {"2", "2"})));

    std::vector<std::vector<FieldElement>> grid;
    for (int x = 0; x < 5; ++x)
        for (int y = 0; y < 5; ++y) grid.push_back({f.from_int(x), f.from_int(y)});
    std::vector<Signature> sigs;
    for (const auto& p : grid) sigs.push_back(evaluate(sep, p));
    int same = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const bool oracle = orbit_oracle_finite(elems, a.group, a.rep, grid[i], grid[j]);
            CAPTURE(i);
            CAPTURE(j);
            CHECK((sigs[i] == sigs[j]) == oracle);
            same += oracle && i != j;
        }
    }
    CHECK(same > 0);
}

TEST_CASE("trivial group separates points exactly") {
    for (std::size_t l : {1u, 2u}) {
        const auto a = trivial_group(l, 2);
        const auto sep = build(a);
        CHECK(sep.layout.d_max == 1);
        std::vector<std::vector<FieldElement>> grid;
        for (int x = -2; x <= 2; ++x)
            for (int y = -2; y <= 2; ++y) grid.push_back({kQ.from_int(x), kQ.from_int(y)});
        for (const auto& p : grid)
            for (const auto& q : grid) CHECK(separate(sep, p, q) == (p == q));
    }
}

TEST_CASE("circle rotation: invariance and separation over Q") {
    const auto a = circle_rotation();
    const auto sep = build(a);
    CHECK(sep.layout.d_max == 2);
    std::mt19937_64 rng(17);
    for (int t = 0; t < 5; ++t) {
        const auto p = random_point(kQ, 2, rng);
        const auto sig = evaluate(sep, p);
        for (int s = 0; s < 6; ++s) CHECK(evaluate(sep, a.rep.act(circle_point(random_nonzero_rational(kQ, rng)), p)) == sig);
    }
    CHECK(separate(sep, point(kQ, {"3", "4"}), point(kQ, {"5", "0"})));
    CHECK(separate(sep, point(kQ, {"1", "0"}), point(kQ, {"0", "-1"})));
    CHECK_FALSE(separate(sep, point(kQ, {"1", "0"}), point(kQ, {"2", "0"})));
    CHECK_FALSE(separate(sep, point(kQ, {"0", "0"}), point(kQ, {"1", "0"})));
}

TEST_CASE("evaluation is total at degenerate points") {
    for (const auto& a : {torus_scaling(), circle_rotation(), hyperbolic_torus(3)}) {
        const auto sep = build(a);
        const std::vector zero(a.rep.n, a.group.field.zero());
        CHECK_NOTHROW(evaluate(sep, zero));
        CHECK(evaluate(sep, zero) == evaluate(sep, zero));
    }
}

TEST_CASE("stats") {
    const auto sep = build(torus_scaling());
    const auto s = stats(sep);
    CHECK(s.total_length == sep.program.length());
    CHECK(s.census.total == census(sep.program).total);
    CHECK(s.d_max == 2);
    CHECK(s.signature_vectors == 13);
    CHECK(s.count_bound == 64);
    CHECK(s.signature_vectors <= s.count_bound);
    CHECK(s.signature_scalars == sep.program.output_arity());

    std::size_t phase_sum = 0, trref = 0, largest_other = 0;
    for (const auto& ph : s.by_phase) {
        phase_sum += ph.census.total;
        if (ph.name == "trref") trref = ph.census.total;
        else largest_other = std::max(largest_other, ph.census.total);
    }
    CHECK(phase_sum == s.total_length);
    CHECK(trref > largest_other);

    const auto again = stats(build(torus_scaling()));
    CHECK(again.total_length == s.total_length);
    CHECK(again.census == s.census);
}

TEST_CASE("cell cap") {
    CompileOptions tight;
    tight.cell_cap = 20;
    CHECK_THROWS_AS(build(torus_scaling(), tight), CeilingExceeded);
    CHECK_THROWS_AS(build(hyperbolic_torus(kMaxIterations + 1)), CeilingExceeded);
    auto big = make_action(kQ, 6, 1, {"z1*z2*z3*z4*z5*z6 - 1"}, {{"z1", "z2"}, {"z3", "z4"}});
    CHECK_THROWS_AS(build(big), CeilingExceeded);
}

TEST_CASE("orbit columns first breaks invariance") {
    // With the ideal basis after the orbit vectors, the kernel's ideal slots carry
    // coefficients of a particular lift, which changes along the orbit.
    const auto a = hyperbolic_torus(3);
    CompileOptions literal;
    literal.column_order = ColumnOrder::kOrbitFirst;
    const auto lit = build(a, literal);
    const auto fixed = build(a);
    const auto p = point(kQ, {"1", "1"});
    const std::vector g = {kQ.from_int(2), kQ.parse("1/2")};
    const auto q = a.rep.act(g, p);
    CHECK(evaluate(lit, p) != evaluate(lit, q));
    CHECK(evaluate(fixed, p) == evaluate(fixed, q));
}

TEST_CASE("multiplying only positional newcomers loses monomials") {
    // Orbits {1,2,4} and {3,5,6}: the positional rule never forms x^3 and cannot tell them apart.
    const auto a = z2xz3_on_line_gf7(3);
    const auto f = a.group.field;
    CompileOptions literal;
    literal.slot_rule = SlotRule::kNewfoundByPosition;
    const auto lit = build(a, literal);
    const auto fixed = build(a);
    const std::vector<std::vector<FieldElement>> elems = {
        point(f, {"1", "1"}), point(f, {"1", "2"}), point(f, {"1", "4"}),
        point(f, {"6", "1"}), point(f, {"6", "2"}), point(f, {"6", "4"})};
    const auto one = point(f, {"1"});
    const auto three = point(f, {"3"});
    CHECK_FALSE(orbit_oracle_finite(elems, a.group, a.rep, one, three));
    CHECK(separate(lit, one, three));
    CHECK_FALSE(separate(fixed, one, three));
    for (int x = 0; x < 7; ++x) {
        for (int y = 0; y < 7; ++y) {
            const std::vector p = {f.from_int(x)}, q = {f.from_int(y)};
            CHECK(separate(fixed, p, q) == orbit_oracle_finite(elems, a.group, a.rep, p, q));
        }
    }
}
