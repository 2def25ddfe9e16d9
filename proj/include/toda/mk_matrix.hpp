#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "toda/gamma.hpp"

namespace toda {

/// Integer coefficients of a Gamma element:
///   s1 = l11*mu1 + l12*mu2,  s2 = l21*mu1 + l22*mu2.
struct MKInput {
    Integer l11, l12, l21, l22;
    friend bool operator==(const MKInput&, const MKInput&) = default;
};

inline MKInput mk_input(const MassPair& p) {
    if (p.s1.c0 != 0 || p.s2.c0 != 0)
        throw InvalidArgument("M_K input needs zero constant terms: " + to_string(p));
    for (const Rational* q : {&p.s1.c1, &p.s1.c2, &p.s2.c1, &p.s2.c2})
        if (!is_integer(*q)) throw InvalidArgument("M_K input needs integer coefficients: " + to_string(p));
    return {numerator(p.s1.c1), numerator(p.s1.c2), numerator(p.s2.c1), numerator(p.s2.c2)};
}

/// 2x2 integer matrix acting on the correction masses (m1, m2).
struct MKMatrix {
    std::array<std::array<Integer, 2>, 2> a;

    Integer determinant() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
    friend bool operator==(const MKMatrix&, const MKMatrix&) = default;
};

/// Coefficient matrix of mu1 and mu2 in the linearised Pohozaev identity
/// around a Gamma element. Unreduced: it is a nonzero scalar multiple of the
/// row-normalised displays usually quoted for A2, B2, G2.
inline MKMatrix mk_matrix(const MKInput& l, const CartanMatrix& K) {
    const Integer k12 = K.k12, k21 = K.k21;
    MKMatrix m;
    m.a[0][0] = 2 * k21 * l.l11 + k12 * k21 * l.l21 - 2 * k21;
    m.a[0][1] = 2 * k12 * l.l21 + k12 * k21 * l.l11;
    m.a[1][0] = 2 * k21 * l.l12 + k12 * k21 * l.l22;
    m.a[1][1] = 2 * k12 * l.l22 + k12 * k21 * l.l12 - 2 * k12;
    return m;
}

struct MKCertificateRow {
    MassPair pair;
    MKInput input;
    Integer determinant;
};

/// Determinant of M_K for every Gamma element. Throws SingularFound if any
/// of them vanishes.
inline std::vector<MKCertificateRow> mk_nonsingular_certificate(const CartanMatrix& K) {
    std::vector<MKCertificateRow> rows;
    for (const auto& p : enumerate_gamma(K).pairs) {
        MKInput in = mk_input(p);
        Integer det = mk_matrix(in, K).determinant();
        if (det == 0) throw SingularFound("M_K is singular for " + to_string(p) + " (" + to_string(K.label) + ")");
        rows.push_back({p, std::move(in), std::move(det)});
    }
    return rows;
}

/// Coordinates of a real number in a declared Q-basis whose first element
/// is 1. Basis names may be left empty, in which case only the lengths are
/// compared.
struct QVector {
    std::vector<std::string> basis;
    std::vector<Rational> coords;

    static QVector rational(Rational q) { return {{"1"}, {std::move(q)}}; }

    bool is_rational() const {
        for (std::size_t i = 1; i < coords.size(); ++i)
            if (coords[i] != 0) return false;
        return true;
    }
    Rational rational_part() const { return coords.empty() ? Rational(0) : coords[0]; }
};

namespace detail {

// Common basis of two vectors: equal, or one a prefix of the other.
inline std::size_t common_basis_length(const QVector& a, const QVector& b) {
    const bool named = !a.basis.empty() && !b.basis.empty();
    if (!named) {
        if (a.coords.size() != b.coords.size())
            throw BasisMismatch("Q-vectors have different basis lengths");
        return a.coords.size();
    }
    const std::size_t n = std::min(a.basis.size(), b.basis.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.basis[i] != b.basis[i])
            throw BasisMismatch("Q-vectors declared over different bases ('" + a.basis[i] + "' vs '" +
                                b.basis[i] + "')");
    return std::max(a.basis.size(), b.basis.size());
}

inline std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
    std::size_t rank = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c] == 0) continue;
            const Rational f = rows[r][c] / rows[rank][c];
            for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// True iff alpha1, alpha2 and 1 are linearly independent over Q.
inline bool q_condition(const QVector& alpha1, const QVector& alpha2) {
    for (const QVector* v : {&alpha1, &alpha2})
        if (!v->basis.empty() && v->basis.size() != v->coords.size())
            throw BasisMismatch("basis and coordinate lengths differ");
    const std::size_t n = detail::common_basis_length(alpha1, alpha2);
    if (n == 0) throw BasisMismatch("empty basis");
    auto padded = [n](const QVector& v) {
        std::vector<Rational> row(v.coords);
        row.resize(n, Rational(0));
        return row;
    };
    std::vector<Rational> one(n, Rational(0));
    one[0] = 1;
    return detail::rational_rank({one, padded(alpha1), padded(alpha2)}) == 3;
}

}  // namespace toda
