#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "orbitslp/field.hpp"

namespace orbitslp {

/// Exponent vector over the ring variables, z1 first.
class Monomial {
public:
    explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}
    static Monomial variable(std::size_t nvars, std::size_t i);

    std::size_t nvars() const { return exps_.size(); }
    std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
    std::span<const std::uint32_t> exponents() const { return exps_; }
    std::uint64_t degree() const;

    bool divides(const Monomial& other) const;
    /// Requires divides(other).
    Monomial quotient_into(const Monomial& other) const;
    Monomial lcm(const Monomial& other) const;
    bool coprime(const Monomial& other) const;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    std::vector<std::uint32_t> exps_;
};

/// Graded lexicographic order: total degree first, then lex with z1 > z2 > ...
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t column)
        : std::runtime_error(message + " (column " + std::to_string(column + 1) + ")"), column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

/// Sparse polynomial; no zero coefficients are stored.
class Polynomial {
public:
    using Terms = std::map<Monomial, FieldElement, GrlexLess>;

    Polynomial(FieldSpec field, std::size_t nvars) : field_(field), nvars_(nvars) {}
    static Polynomial constant(FieldSpec field, std::size_t nvars, const FieldElement& c);
    static Polynomial term(FieldSpec field, const Monomial& m, const FieldElement& c);
    static Polynomial variable(FieldSpec field, std::size_t nvars, std::size_t i);

    const FieldSpec& field() const { return field_; }
    std::size_t nvars() const { return nvars_; }
    /// Ascending in the graded order.
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// -1 for the zero polynomial.
    std::int64_t degree() const;
    /// Requires a nonzero polynomial.
    const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
    const FieldElement& leading_coefficient() const { return terms_.rbegin()->second; }
    FieldElement coefficient(const Monomial& m) const;

    void add_term(const Monomial& m, const FieldElement& c);
    Polynomial scaled(const FieldElement& c) const;
    Polynomial shifted(const Monomial& m) const;
    Polynomial monic() const;
    FieldElement evaluate(std::span<const FieldElement> point) const;

    /// Descending order, e.g. "z1*z2 - 1".
    std::string to_string(std::span<const std::string> names = {}) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
    FieldSpec field_;
    std::size_t nvars_;
    Terms terms_;
};

Polynomial multiply(const Polynomial& f, const Polynomial& g);

/// Default variable names z1..zn.
std::vector<std::string> default_variable_names(std::size_t nvars);

/// Parses sums of products of coefficients, variables, powers and parentheses,
/// such as "z1*z2 - 1" or "3/2*z1^2". With one variable, "z" also names it.
/// Throws ParseError with the offending column.
Polynomial parse_polynomial(std::string_view text, FieldSpec field, std::span<const std::string> names);
Polynomial parse_polynomial(std::string_view text, FieldSpec field, std::size_t nvars);

}  // namespace orbitslp
