#include "orbitslp/field.hpp"

#include <cctype>
#include <ostream>

namespace orbitslp {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

// Deterministic for all 64-bit n with these bases.
bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// Extended Euclid; a must be a unit mod m.
std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m) {
    __int128 old_r = a, r = m, old_s = 1, s = 0;
    while (r != 0) {
        __int128 q = old_r / r;
        __int128 t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    __int128 res = old_s % static_cast<__int128>(m);
    if (res < 0) res += m;
    return static_cast<std::uint64_t>(res);
}

std::uint64_t reduce(const mpz_class& z, std::uint64_t p) {
    mpz_class r = z % mpz_class(std::to_string(p));
    if (r < 0) r += mpz_class(std::to_string(p));
    return std::stoull(r.get_str());
}

[[noreturn]] void mismatch(const FieldElement& a, const FieldElement& b) {
    throw ConfigError("field mismatch: " + a.field().describe() + " vs " + b.field().describe());
}

}  // namespace

FieldSpec FieldSpec::prime(std::uint64_t p) {
    if (p >= (1ull << 62)) throw ConfigError("prime field characteristic must be below 2^62");
    if (!is_prime(p)) throw ConfigError(std::to_string(p) + " is not prime");
    return FieldSpec(Kind::PrimeField, p);
}

FieldElement FieldSpec::zero() const { return from_int(0); }
FieldElement FieldSpec::one() const { return from_int(1); }

FieldElement FieldSpec::from_int(std::int64_t v) const {
    if (is_rational()) return FieldElement(mpq_class(static_cast<long>(v)));
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return FieldElement(static_cast<std::uint64_t>(r), p_);
}

FieldElement FieldSpec::from_fraction(const mpz_class& num, const mpz_class& den) const {
    if (den == 0) throw LiteralError("zero denominator");
    if (is_rational()) return FieldElement(mpq_class(num, den));
    std::uint64_t d = reduce(den, p_);
    if (d == 0) throw LiteralError("denominator vanishes in " + describe());
    return FieldElement(mulmod(reduce(num, p_), inverse_mod(d, p_), p_), p_);
}

FieldElement FieldSpec::parse(std::string_view text) const {
    auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);

    auto read_int = [&](std::string_view s, bool allow_sign) -> mpz_class {
        std::string digits;
        std::size_t i = 0;
        if (allow_sign && i < s.size() && (s[i] == '-' || s[i] == '+')) {
            if (s[i] == '-') digits.push_back('-');
            ++i;
        }
        if (i == s.size()) throw LiteralError("expected digits in '" + std::string(text) + "'");
        for (; i < s.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
                throw LiteralError("not an exact literal: '" + std::string(text) + "'");
            }
            digits.push_back(s[i]);
        }
        return mpz_class(digits);
    };

    auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_fraction(read_int(text, true), 1);
    return from_fraction(read_int(text.substr(0, slash), true), read_int(text.substr(slash + 1), false));
}

std::string FieldSpec::describe() const {
    return is_rational() ? std::string("rational") : "GF(" + std::to_string(p_) + ")";
}

FieldSpec FieldElement::field() const {
    if (is_rational()) return FieldSpec::rationals();
    return FieldSpec(FieldSpec::Kind::PrimeField, std::get<Residue>(value_).modulus);
}

bool FieldElement::is_zero() const {
    if (auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
    return std::get<Residue>(value_).value == 0;
}

bool FieldElement::is_one() const {
    if (auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
    return std::get<Residue>(value_).value == 1;
}

std::string FieldElement::to_string() const {
    if (auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
    return std::to_string(std::get<Residue>(value_).value);
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    if (a.is_rational() && b.is_rational()) return FieldElement(mpq_class(a.rational() + b.rational()));
    const auto* x = std::get_if<FieldElement::Residue>(&a.value_);
    const auto* y = std::get_if<FieldElement::Residue>(&b.value_);
    if (!x || !y || x->modulus != y->modulus) mismatch(a, b);
    std::uint64_t s = x->value + y->value;
    if (s >= x->modulus) s -= x->modulus;
    return FieldElement(s, x->modulus);
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    if (a.is_rational() && b.is_rational()) return FieldElement(mpq_class(a.rational() - b.rational()));
    const auto* x = std::get_if<FieldElement::Residue>(&a.value_);
    const auto* y = std::get_if<FieldElement::Residue>(&b.value_);
    if (!x || !y || x->modulus != y->modulus) mismatch(a, b);
    std::uint64_t s = x->value >= y->value ? x->value - y->value : x->value + (x->modulus - y->value);
    return FieldElement(s, x->modulus);
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    if (a.is_rational() && b.is_rational()) return FieldElement(mpq_class(a.rational() * b.rational()));
    const auto* x = std::get_if<FieldElement::Residue>(&a.value_);
    const auto* y = std::get_if<FieldElement::Residue>(&b.value_);
    if (!x || !y || x->modulus != y->modulus) mismatch(a, b);
    return FieldElement(mulmod(x->value, y->value, x->modulus), x->modulus);
}

FieldElement operator-(const FieldElement& a) {
    if (a.is_rational()) return FieldElement(mpq_class(-a.rational()));
    const auto& x = std::get<FieldElement::Residue>(a.value_);
    return FieldElement(x.value == 0 ? 0 : x.modulus - x.value, x.modulus);
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (a.value_.index() != b.value_.index()) mismatch(a, b);
    if (a.is_rational()) return a.rational() == b.rational();
    const auto& x = std::get<FieldElement::Residue>(a.value_);
    const auto& y = std::get<FieldElement::Residue>(b.value_);
    if (x.modulus != y.modulus) mismatch(a, b);
    return x.value == y.value;
}

FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
FieldElement sub(const FieldElement& a, const FieldElement& b) { return a - b; }
FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }

FieldElement quasi_inverse(const FieldElement& a) {
    if (a.is_zero()) return a;
    if (a.is_rational()) return FieldElement(mpq_class(1 / a.rational()));
    const auto& x = std::get<FieldElement::Residue>(a.value_);
    return FieldElement(inverse_mod(x.value, x.modulus), x.modulus);
}

FieldElement divide(const FieldElement& a, const FieldElement& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return a * quasi_inverse(b);
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.to_string(); }
std::ostream& operator<<(std::ostream& os, const FieldSpec& f) { return os << f.describe(); }

}  // namespace orbitslp
