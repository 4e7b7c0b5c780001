#include "orbitslp/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace orbitslp {

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
    Monomial m(nvars);
    m.exps_.at(i) = 1;
    return m;
}

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (auto e : exps_) d += e;
    return d;
}

bool Monomial::divides(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] > other.exps_[i]) return false;
    }
    return true;
}

Monomial Monomial::quotient_into(const Monomial& other) const {
    Monomial q(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) q.exps_[i] = other.exps_[i] - exps_[i];
    return q;
}

Monomial Monomial::lcm(const Monomial& other) const {
    Monomial l(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) l.exps_[i] = std::max(exps_[i], other.exps_[i]);
    return l;
}

bool Monomial::coprime(const Monomial& other) const {
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (exps_[i] != 0 && other.exps_[i] != 0) return false;
    }
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial p(a.exps_.size());
    for (std::size_t i = 0; i < a.exps_.size(); ++i) p.exps_[i] = a.exps_[i] + b.exps_[i];
    return p;
}

bool GrlexLess::operator()(const Monomial& a, const Monomial& b) const {
    const auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < a.nvars(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

Polynomial Polynomial::constant(FieldSpec field, std::size_t nvars, const FieldElement& c) {
    Polynomial p(field, nvars);
    p.add_term(Monomial(nvars), c);
    return p;
}

Polynomial Polynomial::term(FieldSpec field, const Monomial& m, const FieldElement& c) {
    Polynomial p(field, m.nvars());
    p.add_term(m, c);
    return p;
}

Polynomial Polynomial::variable(FieldSpec field, std::size_t nvars, std::size_t i) {
    return term(field, Monomial::variable(nvars, i), field.one());
}

std::int64_t Polynomial::degree() const {
    return terms_.empty() ? -1 : static_cast<std::int64_t>(leading_monomial().degree());
}

FieldElement Polynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
}

void Polynomial::add_term(const Monomial& m, const FieldElement& c) {
    if (m.nvars() != nvars_) throw std::invalid_argument("monomial has the wrong number of variables");
    if (c.field() != field_) throw ConfigError("coefficient field does not match polynomial field");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Polynomial Polynomial::scaled(const FieldElement& c) const {
    Polynomial out(field_, nvars_);
    if (c.is_zero()) return out;
    for (const auto& [m, a] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, a * c);
    return out;
}

Polynomial Polynomial::shifted(const Monomial& s) const {
    // Multiplying by a monomial preserves the order, so the hint keeps insertion linear.
    Polynomial out(field_, nvars_);
    for (const auto& [m, a] : terms_) out.terms_.emplace_hint(out.terms_.end(), m * s, a);
    return out;
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return scaled(divide(field_.one(), leading_coefficient()));
}

FieldElement Polynomial::evaluate(std::span<const FieldElement> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("point has the wrong number of coordinates");
    FieldElement acc = field_.zero();
    for (const auto& [m, c] : terms_) {
        FieldElement t = c;
        for (std::size_t i = 0; i < nvars_; ++i) {
            for (std::uint32_t e = 0; e < m[i]; ++e) t *= point[i];
        }
        acc += t;
    }
    return acc;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
    if (is_zero()) return "0";
    std::vector<std::string> fallback;
    if (names.size() != nvars_) {
        fallback = default_variable_names(nvars_);
        names = fallback;
    }
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        std::string coeff = c.to_string();
        bool negative = c.is_rational() && coeff.front() == '-';
        if (negative) coeff.erase(0, 1);
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;

        std::vector<std::string> factors;
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (m[i] == 0) continue;
            factors.push_back(m[i] == 1 ? names[i] : names[i] + "^" + std::to_string(m[i]));
        }
        if (factors.empty() || coeff != "1") factors.insert(factors.begin(), coeff);
        for (std::size_t f = 0; f < factors.size(); ++f) out << (f ? "*" : "") << factors[f];
    }
    return out.str();
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
    return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomials over different variable sets");
    Polynomial out(a.field_, a.nvars_);
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    }
    return out;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Polynomial multiply(const Polynomial& f, const Polynomial& g) { return f * g; }

std::vector<std::string> default_variable_names(std::size_t nvars) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("z" + std::to_string(i + 1));
    return names;
}

namespace {

class Parser {
public:
    Parser(std::string_view text, FieldSpec field, std::span<const std::string> names)
        : text_(text), field_(field), names_(names) {}

    Polynomial run() {
        skip_space();
        if (pos_ == text_.size()) fail("empty polynomial");
        Polynomial p = sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial sum() {
        Polynomial acc(field_, names_.size());
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        for (;;) {
            Polynomial t = product();
            acc = negate ? acc - t : acc + t;
            if (accept('+')) negate = false;
            else if (accept('-')) negate = true;
            else return acc;
        }
    }

    Polynomial product() {
        Polynomial acc = power();
        for (;;) {
            skip_space();
            if (accept('*')) {
                acc = acc * power();
            } else if (pos_ < text_.size() && text_[pos_] == '/') {
                ++pos_;
                skip_space();
                const std::size_t at = pos_;
                mpz_class den = integer();
                if (den == 0) {
                    pos_ = at;
                    fail("division by zero");
                }
                try {
                    acc = acc.scaled(field_.from_fraction(1, den));
                } catch (const LiteralError& e) {
                    pos_ = at;
                    fail(e.what());
                }
            } else {
                return acc;
            }
        }
    }

    Polynomial power() {
        Polynomial base = atom();
        if (!accept('^')) return base;
        skip_space();
        const mpz_class e = integer();
        if (e > 4096) fail("exponent too large");
        Polynomial out = Polynomial::constant(field_, names_.size(), field_.one());
        for (unsigned long i = 0; i < e.get_ui(); ++i) out = out * base;
        return out;
    }

    Polynomial atom() {
        skip_space();
        if (pos_ == text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial inner = sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return Polynomial::constant(field_, names_.size(), field_.from_fraction(integer(), 1));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            const std::string_view name = text_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < names_.size(); ++i) {
                if (names_[i] == name) return Polynomial::variable(field_, names_.size(), i);
            }
            if (names_.size() == 1 && name == "z") return Polynomial::variable(field_, 1, 0);
            pos_ = start;
            fail("unknown variable '" + std::string(name) + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    mpz_class integer() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail("expected an integer");
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
            fail("inexact number");
        }
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    std::string_view text_;
    FieldSpec field_;
    std::span<const std::string> names_;
    std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, FieldSpec field, std::span<const std::string> names) {
    return Parser(text, field, names).run();
}

Polynomial parse_polynomial(std::string_view text, FieldSpec field, std::size_t nvars) {
    const auto names = default_variable_names(nvars);
    return parse_polynomial(text, field, names);
}

}  // namespace orbitslp
