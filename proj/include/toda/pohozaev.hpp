#pragma once

#include <array>
#include <string>

#include "toda/mass_expr.hpp"

namespace toda {

/// A candidate pair of local masses (sigma1, sigma2).
struct MassPair {
    MassExpr s1;
    MassExpr s2;

    friend bool operator==(const MassPair&, const MassPair&) = default;
    friend bool operator<(const MassPair& a, const MassPair& b) {
        if (a.s1 == b.s1) return a.s2 < b.s2;
        return a.s1 < b.s1;
    }
};

inline std::string to_string(const MassPair& p) {
    return "(" + to_string(p.s1) + ", " + to_string(p.s2) + ")";
}

/// Quadratic polynomial in (mu1, mu2), stored on the monomials
/// mu1^2, mu1*mu2, mu2^2, mu1, mu2, 1 in that order.
struct QuadPoly {
    enum Monomial { Mu1Sq, Mu1Mu2, Mu2Sq, Mu1, Mu2, One };
    std::array<Rational, 6> c{};

    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }

    Rational eval(const Rational& mu1, const Rational& mu2) const {
        return c[Mu1Sq] * mu1 * mu1 + c[Mu1Mu2] * mu1 * mu2 + c[Mu2Sq] * mu2 * mu2 + c[Mu1] * mu1 +
               c[Mu2] * mu2 + c[One];
    }

    QuadPoly& operator+=(const QuadPoly& o) {
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    friend QuadPoly operator+(QuadPoly a, const QuadPoly& b) { return a += b; }
    friend QuadPoly operator*(const Rational& k, QuadPoly a) {
        for (auto& x : a.c) x *= k;
        return a;
    }
    friend bool operator==(const QuadPoly&, const QuadPoly&) = default;

    static QuadPoly product(const MassExpr& a, const MassExpr& b) {
        QuadPoly q;
        q.c[Mu1Sq] = a.c1 * b.c1;
        q.c[Mu1Mu2] = a.c1 * b.c2 + a.c2 * b.c1;
        q.c[Mu2Sq] = a.c2 * b.c2;
        q.c[Mu1] = a.c1 * b.c0 + a.c0 * b.c1;
        q.c[Mu2] = a.c2 * b.c0 + a.c0 * b.c2;
        q.c[One] = a.c0 * b.c0;
        return q;
    }
};

inline std::string to_string(const QuadPoly& q) {
    static constexpr const char* names[] = {"*mu1^2", "*mu1*mu2", "*mu2^2", "*mu1", "*mu2", ""};
    std::string out;
    for (std::size_t i = 0; i < q.c.size(); ++i) {
        if (i) out += " + ";
        out += to_string(q.c[i]) + names[i];
    }
    return out;
}

/// Left side minus right side of the Pohozaev identity
///   k21 s1^2 + k12 k21 s1 s2 + k12 s2^2 = 2 k21 mu1 s1 + 2 k12 mu2 s2,
/// expanded in mu1, mu2. The pair satisfies the identity iff this is zero.
inline QuadPoly pi_residual(const MassPair& p, const CartanMatrix& K) {
    const Rational k12 = K.k12, k21 = K.k21;
    QuadPoly r = k21 * QuadPoly::product(p.s1, p.s1);
    r += (k12 * k21) * QuadPoly::product(p.s1, p.s2);
    r += k12 * QuadPoly::product(p.s2, p.s2);
    r += (-2 * k21) * QuadPoly::product(MassExpr::mu1(), p.s1);
    r += (-2 * k12) * QuadPoly::product(MassExpr::mu2(), p.s2);
    return r;
}

inline bool satisfies_pi(const MassPair& p, const CartanMatrix& K) { return pi_residual(p, K).is_zero(); }

/// Replaces one component by the other root of the identity viewed as a
/// quadratic in that component (Vieta: the roots sum to 2mu1 - k12 s2,
/// resp. 2mu2 - k21 s1). Total, and an involution; the residual polynomial
/// is unchanged, so solutions map to solutions.
inline MassPair reflect(const MassPair& p, const CartanMatrix& K, int component) {
    if (component == 1)
        return {MassExpr::mu1(2) - Rational(K.k12) * p.s2 - p.s1, p.s2};
    if (component == 2)
        return {p.s1, MassExpr::mu2(2) - Rational(K.k21) * p.s1 - p.s2};
    throw InvalidArgument("reflection component must be 1 or 2");
}

}  // namespace toda
