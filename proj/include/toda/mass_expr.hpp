#pragma once

#include <cctype>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "toda/errors.hpp"
#include "toda/rational.hpp"

namespace toda {

/// Rank-2 Cartan matrices. Diagonal entries are 2 and k12 = -1 throughout;
/// the algebras differ only in k21.
enum class Algebra { A2, B2, G2 };

struct CartanMatrix {
    Algebra label;
    int k11, k12, k21, k22;

    static constexpr CartanMatrix of(Algebra a) {
        switch (a) {
            case Algebra::A2: return {a, 2, -1, -1, 2};
            case Algebra::B2: return {a, 2, -1, -2, 2};
            case Algebra::G2: return {a, 2, -1, -3, 2};
        }
        return {a, 2, -1, -1, 2};
    }

    friend bool operator==(const CartanMatrix&, const CartanMatrix&) = default;
};

inline constexpr Algebra all_algebras[] = {Algebra::A2, Algebra::B2, Algebra::G2};

inline std::string to_string(Algebra a) {
    switch (a) {
        case Algebra::A2: return "A2";
        case Algebra::B2: return "B2";
        case Algebra::G2: return "G2";
    }
    return "?";
}

inline std::optional<Algebra> parse_algebra(std::string_view s) {
    if (s == "A2") return Algebra::A2;
    if (s == "B2" || s == "C2") return Algebra::B2;
    if (s == "G2") return Algebra::G2;
    return std::nullopt;
}

/// A mass c1*mu1 + c2*mu2 + c0 with exact coefficients. mu1 and mu2 are
/// formal indeterminates (mu_i = 1 + alpha_i).
struct MassExpr {
    Rational c1{0};
    Rational c2{0};
    Rational c0{0};

    static MassExpr mu1(Rational k = 1) { return {std::move(k), 0, 0}; }
    static MassExpr mu2(Rational k = 1) { return {0, std::move(k), 0}; }
    static MassExpr constant(Rational k) { return {0, 0, std::move(k)}; }

    bool is_zero() const { return c1 == 0 && c2 == 0 && c0 == 0; }

    friend bool operator==(const MassExpr&, const MassExpr&) = default;

    MassExpr& operator+=(const MassExpr& o) {
        c1 += o.c1;
        c2 += o.c2;
        c0 += o.c0;
        return *this;
    }
    MassExpr& operator-=(const MassExpr& o) {
        c1 -= o.c1;
        c2 -= o.c2;
        c0 -= o.c0;
        return *this;
    }
    friend MassExpr operator+(MassExpr a, const MassExpr& b) { return a += b; }
    friend MassExpr operator-(MassExpr a, const MassExpr& b) { return a -= b; }
    friend MassExpr operator-(const MassExpr& a) { return {-a.c1, -a.c2, -a.c0}; }
    friend MassExpr operator*(const Rational& k, const MassExpr& a) {
        return {k * a.c1, k * a.c2, k * a.c0};
    }
    friend MassExpr operator*(int k, const MassExpr& a) { return Rational(k) * a; }

    // Lexicographic on (c1, c2, c0); only used for ordered containers.
    friend bool operator<(const MassExpr& a, const MassExpr& b) {
        if (a.c1 != b.c1) return a.c1 < b.c1;
        if (a.c2 != b.c2) return a.c2 < b.c2;
        return a.c0 < b.c0;
    }
};

inline MassExpr mass_add(const MassExpr& a, const MassExpr& b) { return a + b; }

inline Rational mass_eval(const MassExpr& m, const Rational& mu1, const Rational& mu2) {
    return m.c1 * mu1 + m.c2 * mu2 + m.c0;
}

inline double mass_eval(const MassExpr& m, double mu1, double mu2) {
    return to_double(m.c1) * mu1 + to_double(m.c2) * mu2 + to_double(m.c0);
}

/// Canonical text form "q1*mu1 + q2*mu2 + q0".
inline std::string to_string(const MassExpr& m) {
    return to_string(m.c1) + "*mu1 + " + to_string(m.c2) + "*mu2 + " + to_string(m.c0);
}

inline std::ostream& operator<<(std::ostream& os, const MassExpr& m) { return os << to_string(m); }

/// Parses any signed sum of terms `[q][*]mu1`, `[q][*]mu2` and `q`, which
/// includes the canonical form. Whitespace is ignored.
inline MassExpr parse_mass_expr(std::string_view text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty mass expression");

    MassExpr out;
    std::size_t i = 0;
    while (i < s.size()) {
        int sign = 1;
        // "+ -3" is what the canonical printer emits for negatives.
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && s[j] != '-') {
            if ((s[j] == 'e' || s[j] == 'E') && j + 1 < s.size() && (s[j + 1] == '+' || s[j + 1] == '-'))
                ++j;  // exponent sign belongs to the literal
            ++j;
        }
        std::string_view term(s.data() + i, j - i);
        if (term.empty()) throw ParseError("malformed mass expression '" + std::string(text) + "'");

        Rational* slot = &out.c0;
        std::string_view coeff = term;
        if (term.size() >= 3 && term.substr(term.size() - 3, 2) == "mu") {
            char idx = term.back();
            if (idx == '1') slot = &out.c1;
            else if (idx == '2') slot = &out.c2;
            else throw ParseError("unknown indeterminate in '" + std::string(term) + "'");
            coeff = term.substr(0, term.size() - 3);
            if (!coeff.empty() && coeff.back() == '*') coeff.remove_suffix(1);
        }
        Rational k = coeff.empty() ? Rational(1) : parse_rational(coeff);
        *slot += sign * k;
        i = j;
    }
    return out;
}

/// Integers n1, n2, n3 with m = 2(n1*mu1 + n2*mu2 + n3).
struct EvenFormCertificate {
    Integer n1, n2, n3;
    friend bool operator==(const EvenFormCertificate&, const EvenFormCertificate&) = default;
};

/// Returns the certificate iff every coefficient of m is an even integer.
inline std::optional<EvenFormCertificate> try_even_form_certificate(const MassExpr& m) {
    const Rational h1 = m.c1 / 2, h2 = m.c2 / 2, h0 = m.c0 / 2;
    if (!is_integer(h1) || !is_integer(h2) || !is_integer(h0)) return std::nullopt;
    return EvenFormCertificate{numerator(h1), numerator(h2), numerator(h0)};
}

inline EvenFormCertificate even_form_certificate(const MassExpr& m) {
    if (auto c = try_even_form_certificate(m)) return *c;
    throw NotOfForm("'" + to_string(m) + "' is not of the form 2(n1*mu1 + n2*mu2 + n3)");
}

}  // namespace toda
