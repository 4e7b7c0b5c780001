#include "doctest.h"
#include "test_support.hpp"

#include "orbitslp/dense.hpp"
#include "orbitslp/groebner.hpp"

using namespace orbitslp;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

Polynomial P(std::string_view s, std::size_t nvars = 2, FieldSpec f = kQ) { return parse_polynomial(s, f, nvars); }

GroebnerBasis gb_of(std::vector<std::string> gens, std::size_t nvars, FieldSpec f = kQ) {
    std::vector<Polynomial> g;
    for (const auto& s : gens) g.push_back(P(s, nvars, f));
    return buchberger(g, f, nvars);
}

Polynomial random_poly(const FieldSpec& f, std::size_t nvars, std::size_t max_deg, std::mt19937_64& rng) {
    const MonomialIndex idx(nvars, max_deg);
    Polynomial p(f, nvars);
    for (int t = 0; t < 3; ++t) p.add_term(idx[rng() % idx.size()], testing::random_element(f, rng, -4, 4));
    return p;
}

// Rank of the span of {m*g : deg(m*g) <= d} by dense row reduction, independent of normal forms.
std::size_t multiples_rank(const GroebnerBasis& gb, std::size_t d, const std::vector<Polynomial>& extra,
                           std::size_t* rank_with_extra) {
    const MonomialIndex idx(gb.nvars(), d);
    std::vector<FieldElement> rows;
    std::size_t count = 0;
    for (const auto& g : gb.polynomials()) {
        for (const auto& m : idx.monomials()) {
            if (m.degree() + static_cast<std::uint64_t>(g.degree()) > d) continue;
            auto v = coeff_vector(g.shifted(m), idx);
            rows.insert(rows.end(), v.begin(), v.end());
            ++count;
        }
    }
    const std::size_t base = count == 0 ? 0 : rank(DenseMatrix(gb.field(), count, idx.size(), rows));
    for (const auto& e : extra) {
        auto v = coeff_vector(e, idx);
        rows.insert(rows.end(), v.begin(), v.end());
        ++count;
    }
    *rank_with_extra = count == 0 ? 0 : rank(DenseMatrix(gb.field(), count, idx.size(), rows));
    return base;
}

}  // namespace

TEST_CASE("parse and print") {
    CHECK(P("z1*z2 - 1").to_string() == "z1*z2 - 1");
    CHECK(P("3/2*z1^2").to_string() == "3/2*z1^2");
    CHECK(P("-(z1 + 1)^2").to_string() == "-z1^2 - 2*z1 - 1");
    CHECK(P("z^2 - 1", 1).to_string() == "z1^2 - 1");
    CHECK(P("0").is_zero());
    const std::vector<std::string> names = {"x", "y"};
    CHECK(parse_polynomial("x*y - 2", kQ, names).to_string(names) == "x*y - 2");
    CHECK(P("z1/2", 1, FieldSpec::prime(7)) == P("4*z1", 1, FieldSpec::prime(7)));

    auto column_of = [](std::string_view s) {
        try {
            P(s);
        } catch (const ParseError& e) {
            return e.column();
        }
        return std::size_t{999};
    };
    CHECK(column_of("z1 + z3") == 5);
    CHECK(column_of("z1 + 1.5") == 6);
    CHECK(column_of("z1 +") == 4);
    CHECK(column_of("(z1") == 3);
    CHECK(column_of("z1 # 2") == 3);
    CHECK_THROWS_AS(P("z1/0"), ParseError);
    CHECK_THROWS_AS(P("z1/7", 2, FieldSpec::prime(7)), ParseError);
}

TEST_CASE("multiplication") {
    CHECK(multiply(P("z1 + 1"), P("z1 - 1")) == P("z1^2 - 1"));
    const Polynomial f = P("3*z1^2*z2 - z2 + 5");
    CHECK(multiply(f, P("1")) == f);
    CHECK(multiply(P("z1*z2 - 1"), P("z1")) == P("z1^2*z2 - z1"));
    CHECK(multiply(f, P("0")).is_zero());

    std::mt19937_64 rng(2);
    const auto F = FieldSpec::prime(101);
    for (int t = 0; t < 20; ++t) {
        const Polynomial a = random_poly(F, 2, 3, rng), b = random_poly(F, 2, 3, rng);
        const std::vector pt = {testing::random_element(F, rng), testing::random_element(F, rng)};
        CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
        CHECK(a * b == b * a);
    }
}

TEST_CASE("graded lex order") {
    GrlexLess less;
    CHECK(less(Monomial({0, 1}), Monomial({1, 0})));
    CHECK(less(Monomial({1, 0}), Monomial({0, 2})));
    CHECK(less(Monomial({1, 1}), Monomial({2, 0})));
    CHECK_FALSE(less(Monomial({1, 1}), Monomial({1, 1})));

    const MonomialIndex idx(2, 2);
    REQUIRE(idx.size() == 6);
    const std::vector<Monomial> expect = {Monomial({0, 0}), Monomial({0, 1}), Monomial({1, 0}),
                                          Monomial({0, 2}), Monomial({1, 1}), Monomial({2, 0})};
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(idx[i] == expect[i]);
        CHECK(idx.index_of(expect[i]) == i);
    }
    CHECK_THROWS_AS(idx.index_of(Monomial({3, 0})), DegreeOverflow);
    CHECK(MonomialIndex(3, 4).size() == binomial(7, 3));
    CHECK(MonomialIndex(0, 3).size() == 1);
}

TEST_CASE("groebner bases") {
    CHECK(gb_of({"z^2 - 1"}, 1).polynomials()[0] == P("z^2 - 1", 1));
    const auto torus = gb_of({"z1*z2 - 1"}, 2);
    REQUIRE(torus.size() == 1);
    CHECK(torus.polynomials()[0] == P("z1*z2 - 1"));

    const auto g = gb_of({"z1^2", "z1*z2 - z2"}, 2);
    bool has_z2 = false;
    for (const auto& p : g.polynomials()) has_z2 = has_z2 || p == P("z2");
    CHECK(has_z2);
    CHECK(normal_form(P("z2"), g).is_zero());

    CHECK(gb_of({"2*z1 - 4", "z1 - 3"}, 2).is_unit_ideal());
    CHECK(gb_of({"0"}, 2).size() == 0);
}

TEST_CASE("normal forms") {
    const auto g1 = gb_of({"z^2 - 1"}, 1);
    CHECK(normal_form(P("z^2", 1), g1) == P("1", 1));
    for (const auto& g : g1.polynomials()) CHECK(normal_form(g, g1).is_zero());
    CHECK(normal_form(P("z1^2*z2"), gb_of({"z1*z2 - 1"}, 2)) == P("z1"));
}

TEST_CASE("random ideals give Groebner bases") {
    std::mt19937_64 rng(31);
    const auto F = FieldSpec::prime(101);
    for (int t = 0; t < 25; ++t) {
        const std::size_t nvars = 2 + t % 2;
        std::vector<Polynomial> gens = {random_poly(F, nvars, 2, rng), random_poly(F, nvars, 2, rng)};
        const auto gb = buchberger(gens, F, nvars);
        for (std::size_t i = 0; i < gb.size(); ++i) {
            CHECK(gb.polynomials()[i].leading_coefficient().is_one());
            for (std::size_t j = 0; j < i; ++j) {
                CHECK(normal_form(s_polynomial(gb.polynomials()[i], gb.polynomials()[j]), gb).is_zero());
            }
        }
        for (const auto& g : gens) CHECK(normal_form(g, gb).is_zero());
    }
}

TEST_CASE("hilbert function") {
    const auto torus = gb_of({"z1*z2 - 1"}, 2);
    for (std::size_t d = 0; d <= 10; ++d) CHECK(hilbert_leq(torus, d) == 2 * d + 1);
    const auto sign = gb_of({"z^2 - 1"}, 1);
    CHECK(hilbert_leq(sign, 0) == 1);
    for (std::size_t d = 1; d <= 10; ++d) CHECK(hilbert_leq(sign, d) == 2);
    const GroebnerBasis empty(kQ, 2, {});
    for (std::size_t d = 0; d <= 6; ++d) CHECK(hilbert_leq(empty, d) == binomial(d + 2, 2));
    const auto point = gb_of({"z1", "z2"}, 2);
    for (std::size_t d = 0; d <= 6; ++d) CHECK(hilbert_leq(point, d) == 1);
}

TEST_CASE("ideal basis") {
    const auto sign = gb_of({"z^2 - 1"}, 1);
    const auto b3 = ideal_k_basis(sign, 3);
    REQUIRE(b3.size() == 2);
    CHECK(b3[0] == P("z^2 - 1", 1));
    CHECK(b3[1] == P("z^3 - z", 1));
    CHECK(ideal_k_basis(sign, 1).empty());
}

TEST_CASE("ideal basis agrees with row reduction of generator multiples") {
    const auto F7 = FieldSpec::prime(7);
    std::vector<GroebnerBasis> ideals = {
        gb_of({"z1*z2 - 1"}, 2),
        gb_of({"z^2 - 1"}, 1),
        gb_of({"z1^2", "z1*z2 - z2"}, 2),
        gb_of({"z1^2 - 1", "z2^3 - 1"}, 2, F7),
        gb_of({"z^3 - 1"}, 1, F7),
        gb_of({"z1", "z2"}, 2),
        gb_of({"z1^2 + z2^2 - 1", "z3"}, 3),
    };
    for (const auto& gb : ideals) {
        for (std::size_t d = 0; d <= 5; ++d) {
            const auto basis = ideal_k_basis(gb, d);
            std::size_t with_basis = 0;
            const std::size_t r = multiples_rank(gb, d, basis, &with_basis);
            CAPTURE(d);
            CHECK(basis.size() == r);
            CHECK(with_basis == r);
            CHECK(hilbert_leq(gb, d) + basis.size() == binomial(gb.nvars() + d, gb.nvars()));
            for (const auto& b : basis) CHECK(normal_form(b, gb).is_zero());
            if (d > 0) CHECK(hilbert_leq(gb, d) >= hilbert_leq(gb, d - 1));
        }
    }
}

TEST_CASE("hilbert growth") {
    const auto torus = gb_of({"z1*z2 - 1"}, 2);
    for (std::size_t d = 1; d <= 30; ++d) CHECK(hilbert_leq(torus, d) <= 3 * d);
    const auto finite = gb_of({"z1^2 - 1", "z2^3 - 1"}, 2, FieldSpec::prime(7));
    for (std::size_t d = 3; d <= 12; ++d) CHECK(hilbert_leq(finite, d) == 6);
}

TEST_CASE("coefficient vectors") {
    const MonomialIndex idx(1, 1);
    CHECK(coeff_vector(P("z1 - 1", 1), idx) == std::vector{kQ.from_int(-1), kQ.from_int(1)});
    CHECK(coeff_vector(P("0", 1), idx) == std::vector{kQ.zero(), kQ.zero()});
    CHECK_THROWS_AS(coeff_vector(P("z1^2", 1), idx), DegreeOverflow);
    const MonomialIndex idx2(2, 3);
    std::mt19937_64 rng(6);
    for (int t = 0; t < 10; ++t) {
        std::vector<FieldElement> v;
        for (std::size_t i = 0; i < idx2.size(); ++i) v.push_back(testing::random_element(kQ, rng));
        CHECK(coeff_vector(from_coeff_vector(v, idx2, kQ), idx2) == v);
    }
}
