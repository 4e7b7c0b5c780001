#include "orbitslp/groebner.hpp"

#include <algorithm>
#include <limits>
#include <utility>

namespace orbitslp {

GroebnerBasis::GroebnerBasis(FieldSpec field, std::size_t nvars, std::vector<Polynomial> polys)
    : field_(field), nvars_(nvars), polys_(std::move(polys)) {}

bool GroebnerBasis::is_standard(const Monomial& m) const {
    for (const auto& g : polys_) {
        if (g.leading_monomial().divides(m)) return false;
    }
    return true;
}

bool GroebnerBasis::is_unit_ideal() const {
    for (const auto& g : polys_) {
        if (g.degree() == 0) return true;
    }
    return false;
}

namespace {

// Divides out the leading terms repeatedly; the remainder collects terms no leading monomial divides.
Polynomial reduce(const Polynomial& f, std::span<const Polynomial> divisors) {
    Polynomial rest = f;
    Polynomial rem(f.field(), f.nvars());
    while (!rest.is_zero()) {
        const Monomial lm = rest.leading_monomial();
        const FieldElement lc = rest.leading_coefficient();
        bool divided = false;
        for (const auto& g : divisors) {
            if (!g.leading_monomial().divides(lm)) continue;
            const Monomial q = g.leading_monomial().quotient_into(lm);
            rest = rest - g.shifted(q).scaled(divide(lc, g.leading_coefficient()));
            divided = true;
            break;
        }
        if (!divided) {
            rem.add_term(lm, lc);
            rest.add_term(lm, -lc);
        }
    }
    return rem;
}

}  // namespace

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
    const Monomial l = f.leading_monomial().lcm(g.leading_monomial());
    const Polynomial a = f.shifted(f.leading_monomial().quotient_into(l)).scaled(divide(f.field().one(), f.leading_coefficient()));
    const Polynomial b = g.shifted(g.leading_monomial().quotient_into(l)).scaled(divide(g.field().one(), g.leading_coefficient()));
    return a - b;
}

GroebnerBasis buchberger(std::span<const Polynomial> gens, FieldSpec field, std::size_t nvars) {
    std::vector<Polynomial> basis;
    for (const auto& g : gens) {
        if (g.nvars() != nvars || g.field() != field) throw std::invalid_argument("generator over a different ring");
        if (!g.is_zero()) basis.push_back(g.monic());
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < basis.size(); ++j) {
        for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
    }
    while (!pairs.empty()) {
        const auto [i, j] = pairs.back();
        pairs.pop_back();
        if (basis[i].leading_monomial().coprime(basis[j].leading_monomial())) continue;
        Polynomial r = reduce(s_polynomial(basis[i], basis[j]), basis);
        if (r.is_zero()) continue;
        basis.push_back(r.monic());
        for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
    }

    // Minimize: drop elements whose leading monomial is divisible by another's.
    std::sort(basis.begin(), basis.end(), [](const Polynomial& a, const Polynomial& b) {
        return GrlexLess{}(a.leading_monomial(), b.leading_monomial());
    });
    std::vector<Polynomial> minimal;
    for (const auto& g : basis) {
        bool redundant = false;
        for (const auto& h : minimal) {
            if (h.leading_monomial().divides(g.leading_monomial())) {
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(g);
    }

    // Interreduce the tails.
    for (std::size_t k = 0; k < minimal.size(); ++k) {
        std::vector<Polynomial> others;
        for (std::size_t t = 0; t < minimal.size(); ++t) {
            if (t != k) others.push_back(minimal[t]);
        }
        minimal[k] = reduce(minimal[k], others).monic();
    }
    return GroebnerBasis(field, nvars, std::move(minimal));
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb) { return reduce(f, gb.polynomials()); }

MonomialIndex::MonomialIndex(std::size_t nvars, std::size_t max_degree) : nvars_(nvars), max_degree_(max_degree) {
    for (std::size_t d = 0; d <= max_degree; ++d) {
        // Exponent vectors of total degree d in descending lex order, then reversed.
        std::vector<Monomial> level;
        std::vector<std::uint32_t> e(nvars, 0);
        auto fill = [&](auto&& self, std::size_t var, std::uint32_t left) -> void {
            if (nvars == 0) {
                if (left == 0) level.emplace_back(e);
                return;
            }
            if (var + 1 == nvars) {
                e[var] = left;
                level.emplace_back(e);
                return;
            }
            for (std::uint32_t a = left + 1; a-- > 0;) {
                e[var] = a;
                self(self, var + 1, left - a);
            }
        };
        fill(fill, 0, static_cast<std::uint32_t>(d));
        std::reverse(level.begin(), level.end());
        for (auto& m : level) {
            position_.emplace(m, monomials_.size());
            monomials_.push_back(std::move(m));
        }
        if (nvars == 0) break;
    }
}

std::size_t MonomialIndex::index_of(const Monomial& m) const {
    auto it = position_.find(m);
    if (it == position_.end()) {
        throw DegreeOverflow("monomial of degree " + std::to_string(m.degree()) + " exceeds index bound " +
                             std::to_string(max_degree_));
    }
    return it->second;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(r);
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& gb, std::size_t d) {
    std::vector<Monomial> out;
    const MonomialIndex idx(gb.nvars(), d);
    for (const auto& m : idx.monomials()) {
        if (gb.is_standard(m)) out.push_back(m);
    }
    return out;
}

std::size_t hilbert_leq(const GroebnerBasis& gb, std::size_t d) { return standard_monomials(gb, d).size(); }

std::vector<Polynomial> ideal_k_basis(const GroebnerBasis& gb, std::size_t d) {
    std::vector<Polynomial> out;
    const MonomialIndex idx(gb.nvars(), d);
    for (const auto& m : idx.monomials()) {
        if (gb.is_standard(m)) continue;
        const Polynomial mu = Polynomial::term(gb.field(), m, gb.field().one());
        out.push_back(mu - normal_form(mu, gb));
    }
    return out;
}

std::vector<FieldElement> coeff_vector(const Polynomial& f, const MonomialIndex& idx) {
    std::vector<FieldElement> v(idx.size(), f.field().zero());
    for (const auto& [m, c] : f.terms()) v[idx.index_of(m)] = c;
    return v;
}

Polynomial from_coeff_vector(std::span<const FieldElement> v, const MonomialIndex& idx, FieldSpec field) {
    if (v.size() != idx.size()) throw std::invalid_argument("coefficient vector length does not match the index");
    Polynomial p(field, idx.nvars());
    for (std::size_t i = 0; i < v.size(); ++i) p.add_term(idx[i], v[i]);
    return p;
}

}  // namespace orbitslp
