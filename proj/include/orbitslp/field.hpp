#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace orbitslp {

/// Raised when values from different fields meet, or a field description is invalid.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a literal cannot be read as an exact field value.
class LiteralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FieldElement;

/// The scalar field: either the rationals or GF(p) for a prime p < 2^62.
class FieldSpec {
public:
    enum class Kind { Rationals, PrimeField };

    static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }
    /// Throws ConfigError unless p is a prime below 2^62.
    static FieldSpec prime(std::uint64_t p);

    Kind kind() const { return kind_; }
    bool is_rational() const { return kind_ == Kind::Rationals; }
    /// 0 for the rationals.
    std::uint64_t characteristic() const { return p_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(std::int64_t v) const;
    FieldElement from_fraction(const mpz_class& num, const mpz_class& den) const;
    /// Parses "7", "-3", "3/2". Floats and garbage are rejected.
    FieldElement parse(std::string_view text) const;

    /// "rational" or "GF(p)".
    std::string describe() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    friend class FieldElement;
    FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

    Kind kind_;
    std::uint64_t p_;
};

/// An exact scalar. Rationals are kept reduced with a positive denominator,
/// residues in [0, p), so operator== is structural.
class FieldElement {
public:
    struct Residue {
        std::uint64_t value;
        std::uint64_t modulus;
        friend bool operator==(const Residue&, const Residue&) = default;
    };

    /// The rational zero.
    FieldElement() : value_(mpq_class(0)) {}
    explicit FieldElement(mpq_class q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }
    FieldElement(std::uint64_t residue, std::uint64_t modulus) : value_(Residue{residue % modulus, modulus}) {}

    FieldSpec field() const;
    bool is_zero() const;
    bool is_one() const;

    bool is_rational() const { return std::holds_alternative<mpq_class>(value_); }
    const mpq_class& rational() const { return std::get<mpq_class>(value_); }
    std::uint64_t residue() const { return std::get<Residue>(value_).value; }

    /// Canonical text: "a" or "a/b" over Q, the residue over GF(p).
    std::string to_string() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a);
    friend bool operator==(const FieldElement& a, const FieldElement& b);

    FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
    FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
    FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }

private:
    friend FieldElement quasi_inverse(const FieldElement& a);

    std::variant<mpq_class, Residue> value_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);

/// The total inverse {a}: 1/a when a != 0, and 0 at 0.
FieldElement quasi_inverse(const FieldElement& a);

/// Division for callers that know b != 0 (classical elimination). Throws std::domain_error on 0.
FieldElement divide(const FieldElement& a, const FieldElement& b);

std::ostream& operator<<(std::ostream& os, const FieldElement& a);
std::ostream& operator<<(std::ostream& os, const FieldSpec& f);

}  // namespace orbitslp
