#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "orbitslp/polynomial.hpp"

namespace orbitslp {

/// A reduced, monic Groebner basis under the graded lex order. An empty basis is the zero ideal.
class GroebnerBasis {
public:
    GroebnerBasis(FieldSpec field, std::size_t nvars, std::vector<Polynomial> polys);

    const FieldSpec& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    std::span<const Polynomial> polynomials() const { return polys_; }
    std::size_t size() const { return polys_.size(); }
    /// True when no leading monomial divides m.
    bool is_standard(const Monomial& m) const;
    /// True when the basis contains a nonzero constant.
    bool is_unit_ideal() const;

private:
    FieldSpec field_;
    std::size_t nvars_;
    std::vector<Polynomial> polys_;
};

/// Buchberger's algorithm with the coprime-leading-monomial criterion, followed by
/// interreduction. Zero generators are dropped.
GroebnerBasis buchberger(std::span<const Polynomial> gens, FieldSpec field, std::size_t nvars);

/// Full reduction: no term of the result is divisible by a leading monomial of gb.
Polynomial normal_form(const Polynomial& f, const GroebnerBasis& gb);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g);

class DegreeOverflow : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// All monomials of degree <= d, ascending in the graded order, numbered 0..C(n+d, n)-1.
class MonomialIndex {
public:
    MonomialIndex(std::size_t nvars, std::size_t max_degree);

    std::size_t nvars() const { return nvars_; }
    std::size_t max_degree() const { return max_degree_; }
    std::size_t size() const { return monomials_.size(); }
    const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
    std::span<const Monomial> monomials() const { return monomials_; }
    /// Throws DegreeOverflow when m lies outside the index.
    std::size_t index_of(const Monomial& m) const;
    bool contains(const Monomial& m) const { return m.degree() <= max_degree_; }

private:
    std::size_t nvars_;
    std::size_t max_degree_;
    std::vector<Monomial> monomials_;
    std::map<Monomial, std::size_t, GrlexLess> position_;
};

/// Binomial coefficient C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Standard monomials of degree <= d, ascending.
std::vector<Monomial> standard_monomials(const GroebnerBasis& gb, std::size_t d);

/// H(d): the number of standard monomials of degree <= d, which is dim of the
/// coordinate ring's degree-<=d filtration piece.
std::size_t hilbert_leq(const GroebnerBasis& gb, std::size_t d);

/// A basis of the ideal's degree-<=d part: mu - NF(mu) for every non-standard
/// monomial mu of degree <= d, ascending by mu. Each element has leading monomial mu
/// and all other terms standard, so the list is in reduced echelon form.
std::vector<Polynomial> ideal_k_basis(const GroebnerBasis& gb, std::size_t d);

/// Dense coefficients in index order. Throws DegreeOverflow if f does not fit.
std::vector<FieldElement> coeff_vector(const Polynomial& f, const MonomialIndex& idx);
Polynomial from_coeff_vector(std::span<const FieldElement> v, const MonomialIndex& idx, FieldSpec field);

}  // namespace orbitslp
