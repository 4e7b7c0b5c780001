#include "doctest.h"
#include "test_support.hpp"

#include "orbitslp/slp_linalg.hpp"

using namespace orbitslp;

namespace {

const FieldSpec kQ = FieldSpec::rationals();

DenseMatrix ints(const std::vector<std::vector<long>>& rows) { return DenseMatrix::from_ints(kQ, rows); }

DenseMatrix run_square(const Program& p, const DenseMatrix& a, std::size_t n) { return run_on_matrix(p, a, n, n); }

DenseMatrix stack(const FieldSpec& f, const std::vector<std::vector<FieldElement>>& rows, std::size_t cols) {
    std::vector<FieldElement> data;
    for (const auto& r : rows) data.insert(data.end(), r.begin(), r.end());
    return DenseMatrix(f, rows.size(), cols, std::move(data));
}

bool same_span(const FieldSpec& f, const std::vector<std::vector<FieldElement>>& a,
               const std::vector<std::vector<FieldElement>>& b, std::size_t cols) {
    auto both = a;
    both.insert(both.end(), b.begin(), b.end());
    const std::size_t ra = a.empty() ? 0 : rank(stack(f, a, cols));
    const std::size_t rb = b.empty() ? 0 : rank(stack(f, b, cols));
    const std::size_t rab = both.empty() ? 0 : rank(stack(f, both, cols));
    return ra == rb && rb == rab;
}

std::vector<std::vector<FieldElement>> nonzero_rows(const DenseMatrix& m) {
    std::vector<std::vector<FieldElement>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m.row_is_zero(i)) continue;
        out.emplace_back(m.data().begin() + static_cast<std::ptrdiff_t>(i * m.cols()),
                         m.data().begin() + static_cast<std::ptrdiff_t>((i + 1) * m.cols()));
    }
    return out;
}

}  // namespace

TEST_CASE("row exchange examples") {
    const Program e2 = build_row_exchange(2, {2, 2}, kQ);
    CHECK(run_on_matrix(e2, ints({{0, 1}, {2, 3}}), 2, 2) == ints({{2, 3}, {0, 1}}));
    CHECK(run_on_matrix(e2, ints({{5, 1}, {2, 3}}), 2, 2) == ints({{5, 1}, {2, 3}}));
    CHECK(run_on_matrix(e2, ints({{0, 0}, {0, 0}}), 2, 2) == ints({{0, 0}, {0, 0}}));
    CHECK_THROWS_AS(build_row_exchange(1, {2, 2}, kQ), std::out_of_range);
    CHECK_THROWS_AS(build_row_exchange(3, {2, 2}, kQ), std::out_of_range);
    CHECK_THROWS_AS(MatrixShape(0, 2), std::invalid_argument);
}

TEST_CASE("row exchange matches the classical conditional swap") {
    std::mt19937_64 rng(21);
    for (const auto& f : {kQ, FieldSpec::prime(5)}) {
        for (int t = 0; t < 40; ++t) {
            const std::size_t m = 2 + t % 4, n = 1 + t % 5;
            DenseMatrix a = testing::random_matrix(f, m, n, rng, 0.5);
            const std::size_t i = 2 + t % (m - 1);
            DenseMatrix expect = a;
            if (a.at(0, 0).is_zero()) {
                for (std::size_t j = 0; j < n; ++j) std::swap(expect.at(0, j), expect.at(i - 1, j));
            }
            CHECK(run_on_matrix(build_row_exchange(i, {m, n}, f), a, m, n) == expect);
        }
    }
}

TEST_CASE("exchange cascade") {
    const DenseMatrix x = ints({{0, 0}, {0, 7}, {1, 1}});
    // E_2 alone lifts [0,7]; E_3 still sees a zero corner and lifts [1,1].
    const DenseMatrix after_e2 = run_on_matrix(build_row_exchange(2, {3, 2}, kQ), x, 3, 2);
    CHECK(after_e2 == ints({{0, 7}, {0, 0}, {1, 1}}));
    const DenseMatrix out = run_on_matrix(build_exchange_cascade({3, 2}, kQ), x, 3, 2);
    CHECK(out == ints({{1, 1}, {0, 0}, {0, 7}}));
    const DenseMatrix id = DenseMatrix::identity(kQ, 3);
    CHECK(run_on_matrix(build_exchange_cascade({3, 3}, kQ), id, 3, 3) == id);
}

TEST_CASE("exchange cascade census") {
    for (std::size_t m = 2; m <= 6; ++m) {
        for (std::size_t n = 1; n <= 6; ++n) {
            const Census c = census(build_exchange_cascade({m, n}, kQ));
            CAPTURE(m);
            CAPTURE(n);
            CHECK(c[Opcode::QInv] == m - 1);
            CHECK(c[Opcode::Mul] == 2 * n * (m - 1));
            CHECK(c[Opcode::Add] + c[Opcode::Sub] == 3 * n * (m - 1));
        }
    }
}

TEST_CASE("tRREF examples") {
    const Program p = build_trref({3, 3}, kQ);
    CHECK(run_square(p, ints({{1, 2, 0}, {0, 0, 1}, {0, 0, 0}}), 3) == ints({{1, 2, 0}, {0, 0, 0}, {0, 0, 1}}));
    const DenseMatrix id = DenseMatrix::identity(kQ, 3);
    CHECK(run_square(p, id, 3) == id);
    CHECK(run_square(build_trref({2, 2}, kQ), ints({{0, 1}, {1, 0}}), 2) == ints({{1, 0}, {0, 1}}));
    CHECK_FALSE(validate(kQ, 9, 9, p.code(), p.constants()).has_value());
}

TEST_CASE("tRREF equals the oracle on random matrices") {
    std::mt19937_64 rng(1234);
    for (const auto& f : {kQ, FieldSpec::prime(101), FieldSpec::prime(2), FieldSpec::prime(3)}) {
        for (int t = 0; t < 60; ++t) {
            const std::size_t m = 1 + rng() % 7, n = 1 + rng() % 7;
            const DenseMatrix a = t % 3 == 0 ? testing::random_low_rank(f, m, n, 1 + rng() % 3, rng)
                                             : testing::random_matrix(f, m, n, rng, 0.4);
            const DenseMatrix r = run_square(build_trref({m, n}, f), a, n);
            CAPTURE(m);
            CAPTURE(n);
            CHECK(r == oracle_trref(a));
            std::size_t diag = 0;
            for (std::size_t j = 0; j < n; ++j) {
                CHECK((r.at(j, j).is_zero() || r.at(j, j).is_one()));
                if (r.at(j, j).is_one()) ++diag;
                CHECK(r.row_is_zero(j) == r.at(j, j).is_zero());
                for (std::size_t i = j + 1; i < n; ++i) CHECK(r.at(i, j).is_zero());
            }
            CHECK(diag == rank(a));
        }
    }
}

TEST_CASE("collect") {
    const Program p = build_collect({3, 2}, kQ);
    auto run = [&](std::vector<long> v, const DenseMatrix& x) {
        std::vector<FieldElement> in;
        for (long e : v) in.push_back(kQ.from_int(e));
        in.insert(in.end(), x.data().begin(), x.data().end());
        return DenseMatrix(kQ, 3, 2, execute(p, in));
    };
    const DenseMatrix x = ints({{1, 1}, {2, 2}, {3, 3}});
    CHECK(run({0, 1, 1}, x) == ints({{2, 2}, {3, 3}, {0, 0}}));
    CHECK(run({1, 0, 1}, x) == ints({{1, 1}, {3, 3}, {0, 0}}));
    CHECK(run({1, 1, 1}, x) == x);
    CHECK(run({0, 0, 0}, x) == ints({{0, 0}, {0, 0}, {0, 0}}));
    CHECK(run({0, 0, 1}, x) == ints({{3, 3}, {0, 0}, {0, 0}}));
}

TEST_CASE("classical RREF program") {
    const Program p = build_rref({3, 3}, kQ);
    CHECK(run_square(p, ints({{1, 2, 0}, {0, 0, 0}, {0, 0, 1}}), 3) == ints({{1, 2, 0}, {0, 0, 1}, {0, 0, 0}}));
    const DenseMatrix zero(kQ, 3, 3);
    CHECK(run_square(p, zero, 3) == zero);

    std::mt19937_64 rng(77);
    const auto f = FieldSpec::prime(101);
    for (int t = 0; t < 10; ++t) {
        const DenseMatrix a = testing::random_matrix(f, 5, 7, rng, 0.3);
        CHECK(run_on_matrix(build_rref({5, 7}, f), a, 5, 7) == oracle_rref(a));
    }
    for (int t = 0; t < 30; ++t) {
        const std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6;
        const DenseMatrix a = testing::random_low_rank(kQ, m, n, 1 + rng() % 3, rng);
        CHECK(run_on_matrix(build_rref({m, n}, kQ), a, m, n) == oracle_rref(a));
    }
}

TEST_CASE("kernel examples") {
    const Program k3 = build_kernel(3, kQ);
    CHECK(run_square(k3, DenseMatrix::identity(kQ, 3), 3) == DenseMatrix(kQ, 3, 3));
    CHECK(run_square(k3, ints({{1, 2, 0}, {0, 0, 0}, {0, 0, 1}}), 3) == ints({{0, 0, 0}, {-2, 1, 0}, {0, 0, 0}}));
    CHECK(run_square(k3, DenseMatrix(kQ, 3, 3), 3) == DenseMatrix::identity(kQ, 3));
}

TEST_CASE("oracles") {
    const DenseMatrix id = DenseMatrix::identity(kQ, 4);
    CHECK(oracle_rref(id) == id);
    const auto ns = oracle_nullspace(ints({{1, 2}}));
    REQUIRE(ns.size() == 1);
    CHECK(ns[0] == std::vector{kQ.from_int(-2), kQ.from_int(1)});
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        const DenseMatrix a = testing::random_matrix(kQ, 4, 5, rng);
        CHECK(oracle_rref(oracle_rref(a)) == oracle_rref(a));
    }
}

TEST_CASE("kernel of the tRREF spans the oracle nullspace") {
    std::mt19937_64 rng(99);
    for (const auto& f : {kQ, FieldSpec::prime(101)}) {
        for (int t = 0; t < 60; ++t) {
            const std::size_t m = 1 + rng() % 7, n = 1 + rng() % 7;
            const DenseMatrix a = t % 2 ? testing::random_low_rank(f, m, n, 1 + rng() % 3, rng)
                                        : testing::random_matrix(f, m, n, rng, 0.4);
            const DenseMatrix r = run_square(build_trref({m, n}, f), a, n);
            const DenseMatrix phi = run_square(build_kernel(n, f), r, n);
            const auto basis = nonzero_rows(phi);
            CHECK(basis.size() == n - rank(a));
            CHECK(same_span(f, basis, oracle_nullspace(a), n));
            // Every phi_j is annihilated by A.
            for (const auto& v : basis) {
                for (std::size_t i = 0; i < m; ++i) {
                    FieldElement s = f.zero();
                    for (std::size_t j = 0; j < n; ++j) s += a.at(i, j) * v[j];
                    CHECK(s.is_zero());
                }
            }
        }
    }
}

TEST_CASE("builders depend on shape only") {
    const auto f = FieldSpec::prime(101);
    CHECK(build_trref({4, 5}, f) == build_trref({4, 5}, f));
    CHECK(build_rref({3, 3}, kQ) == build_rref({3, 3}, kQ));
    CHECK(build_kernel(4, kQ) == build_kernel(4, kQ));

    const Program p = build_trref({4, 4}, kQ);
    std::mt19937_64 rng(4);
    ExecutionTrace t1, t2;
    execute(p, testing::random_matrix(kQ, 4, 4, rng).data(), &t1);
    execute(p, DenseMatrix(kQ, 4, 4).data(), &t2);
    CHECK(t1.steps == t2.steps);
    CHECK(t1.steps.size() == p.length());
}

TEST_CASE("tRREF length grows at most cubically") {
    std::size_t prev = 0;
    for (std::size_t n : {2u, 4u, 8u, 16u}) {
        const std::size_t len = census(build_trref({n, n}, kQ)).total;
        if (prev != 0) {
            CAPTURE(n);
            CHECK(static_cast<double>(len) / static_cast<double>(prev) <= 9.0 + 0.5);
        }
        prev = len;
    }
}
