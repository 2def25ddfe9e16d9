#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "toda/polynomial.hpp"
#include "toda/quadrature.hpp"

namespace toda {

/// A developing map f = p/q with complex polynomial numerator and
/// denominator, stored with common roots removed. Always non-constant.
class RationalMap {
public:
    RationalMap(Polynomial numerator, Polynomial denominator, double reduce_tol = 1e-9)
        : p_(std::move(numerator)), q_(std::move(denominator)) {
        if (q_.is_zero()) throw InvalidArgument("denominator is identically zero");
        if (p_.is_zero()) throw ConstantMap("numerator is identically zero");
        reduce(reduce_tol);
        w_ = p_.derivative() * q_ - p_ * q_.derivative();
        if (std::max(p_.degree(), q_.degree()) < 1 || w_.is_zero()) throw ConstantMap("map is constant");
    }

    static RationalMap polynomial(std::vector<Complex> coeffs) {
        return {Polynomial(std::move(coeffs)), Polynomial({1.0})};
    }

    const Polynomial& numerator() const { return p_; }
    const Polynomial& denominator() const { return q_; }
    /// p'q - pq'; f' = W / q^2, and its roots are the finite branch points.
    const Polynomial& wronskian() const { return w_; }

    int degree() const { return std::max(p_.degree(), q_.degree()); }

    Complex operator()(Complex z) const { return p_(z) / q_(z); }

    RationalMap reciprocal() const { return RationalMap(q_, p_, 0.0); }

    /// w -> f(1/w), written over the common power w^degree.
    RationalMap at_infinity() const {
        const auto n = static_cast<std::size_t>(degree());
        return RationalMap(p_.reversed(n), q_.reversed(n), 0.0);
    }

private:
    void reduce(double tol) {
        if (tol <= 0 || q_.degree() < 1 || p_.degree() < 1) return;
        for (const Root& r : find_roots(q_)) {
            int k = 0;
            Polynomial d = p_;
            while (k < r.multiplicity && detail::numerically_zero(d, r.location, tol)) {
                d = d.derivative();
                ++k;
            }
            for (int i = 0; i < k; ++i) {
                p_ = p_.deflate(r.location);
                q_ = q_.deflate(r.location);
            }
        }
    }

    Polynomial p_, q_, w_;
};

/// e^u = 8|f'|^2 / (1 + |f|^2)^2, written as 8|W|^2 / (|p|^2 + |q|^2)^2 so
/// that no chart has to be chosen near poles; the form is symmetric under
/// f -> 1/f. The constant 8 is the one for which u solves Delta u + e^u = 0.
inline double u_density(const RationalMap& f, Complex z) {
    const double pz = std::norm(f.numerator()(z)), qz = std::norm(f.denominator()(z));
    const double s = pz + qz;
    const double out = 8.0 * std::norm(f.wronskian()(z)) / (s * s);
    if (!(s > 0) || !std::isfinite(out))
        throw EvaluationAtUndefinedPoint("density undefined at " + std::to_string(z.real()) + "+" +
                                         std::to_string(z.imag()) + "i");
    return out;
}

/// u itself; -inf at branch points.
inline double log_density(const RationalMap& f, Complex z) {
    const double s = std::norm(f.numerator()(z)) + std::norm(f.denominator()(z));
    return std::log(8.0) + 2.0 * std::log(std::abs(f.wronskian()(z))) - 2.0 * std::log(s);
}

struct MassIntegral {
    double value;
    double error_estimate;
    std::size_t cells;
    std::size_t evaluations;
};

/// Integral of e^u over the plane: |z| <= 1 directly and |z| > 1 through
/// w = 1/z, where the density pulls back to that of f(1/w). Both discs are
/// integrated in polar coordinates.
inline MassIntegral integrate_mass(const RationalMap& f, double rel_tol, std::size_t max_cells = 40000) {
    if (!(rel_tol > 0) || rel_tol > 1e-3) throw InvalidArgument("rel_tol must lie in (0, 1e-3]");
    const RationalMap g = f.at_infinity();
    constexpr double two_pi = 2.0 * std::numbers::pi;
    // x in [0,1]: radius in the z chart; x in [2,3]: radius x-2 in the w chart.
    auto integrand = [&](double x, double theta) {
        const bool outer = x > 1.5;
        const double r = outer ? x - 2.0 : x;
        const Complex z = std::polar(r, theta);
        return r * u_density(outer ? g : f, z);
    };
    std::vector<Rect> regions;
    for (double x0 : {0.0, 2.0})
        for (int k = 0; k < 4; ++k) regions.push_back({x0, x0 + 1.0, k * two_pi / 4, (k + 1) * two_pi / 4});
    const auto r = adaptive_cubature(integrand, regions, rel_tol, max_cells);
    return {r.value, r.error, r.cells, r.evaluations};
}

inline double total_mass(const RationalMap& f, double rel_tol) { return integrate_mass(f, rel_tol).value; }

struct QuantizationCheck {
    double m;  // total mass / 4 pi
    bool is_even_integer;
};

/// Evenness of mass / 4 pi for an integral computed at rel_tol.
inline QuantizationCheck quantization_of(const MassIntegral& mass, double rel_tol) {
    const double m = mass.value / (4.0 * std::numbers::pi);
    const double nearest_even = 2.0 * std::round(m / 2.0);
    return {m, std::abs(m - nearest_even) <= 10.0 * rel_tol * m};
}

inline QuantizationCheck mass_quantization_check(const RationalMap& f, double rel_tol) {
    return quantization_of(integrate_mass(f, rel_tol), rel_tol);
}

struct BranchPoint {
    Complex location;
    int alpha;  // local multiplicity - 1
};

struct RamificationProfile {
    std::vector<BranchPoint> finite_points;
    double alpha_infinity;          // 2 deg f - sum of finite alphas
    int multiplicity_at_infinity;   // measured from f(1/w) near w = 0
    bool riemann_hurwitz_holds;     // sum of (multiplicity - 1) over the sphere = 2 deg - 2
    double boundary_log_slope;      // d u / d log|z| averaged over |z| in [R, 2R]
    bool log_slope_matches;         // within 5% of -2 alpha_infinity
};

namespace detail {

inline int multiplicity_at_infinity(const RationalMap& f) {
    const int d = f.degree();
    const Polynomial& p = f.numerator();
    const Polynomial& q = f.denominator();
    if (q.degree() < d) return d - q.degree();
    if (p.degree() < d) return d - p.degree();
    // f(inf) = c finite and nonzero: order of vanishing of p - c q at
    // infinity, read off the top coefficients.
    const Complex c = p.leading() / q.leading();
    double scale = 0.0;
    for (int k = 0; k <= d; ++k) scale = std::max({scale, std::abs(p[k]), std::abs(c * q[k])});
    for (int k = 1; k <= d; ++k)
        if (std::abs(p[d - k] - c * q[d - k]) > 1e-10 * scale) return k;
    return d;
}

}  // namespace detail

inline double boundary_log_slope(const RationalMap& f, double radius, int angles = 32) {
    CompensatedSum acc;
    for (int k = 0; k < angles; ++k) {
        const double theta = 2.0 * std::numbers::pi * (k + 0.5) / angles;
        acc.add(log_density(f, std::polar(2.0 * radius, theta)) - log_density(f, std::polar(radius, theta)));
    }
    return acc.value() / (angles * std::log(2.0));
}

/// Finite branch points are the roots of W = p'q - pq' (at a pole of order
/// k, W vanishes to order k-1, matching the ramification of 1/f). The
/// index at infinity follows from the total 2 deg f; the Riemann-Hurwitz
/// count and the decay rate of u at |z| = 1e3 are checked independently.
inline RamificationProfile ramification(const RationalMap& f, double tol = 1e-7, double slope_radius = 1e3) {
    RamificationProfile out{};
    int finite = 0;
    if (f.wronskian().degree() >= 1) {
        for (const Root& r : find_roots(f.wronskian(), tol)) {
            out.finite_points.push_back({r.location, r.multiplicity});
            finite += r.multiplicity;
        }
    }
    std::sort(out.finite_points.begin(), out.finite_points.end(), [](const BranchPoint& a, const BranchPoint& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    const int d = f.degree();
    out.alpha_infinity = 2.0 * d - finite;
    out.multiplicity_at_infinity = detail::multiplicity_at_infinity(f);
    out.riemann_hurwitz_holds = finite + (out.multiplicity_at_infinity - 1) == 2 * d - 2;
    out.boundary_log_slope = boundary_log_slope(f, slope_radius);
    const double expected = -2.0 * out.alpha_infinity;
    out.log_slope_matches = std::abs(out.boundary_log_slope - expected) <= 0.05 * std::abs(expected);
    return out;
}

/// {f; z} = f'''/f' - 3/2 (f''/f')^2, from exact polynomial derivatives:
/// with L = f''/f' = W'/W - 2q'/q, {f; z} = L' - L^2/2.
inline Complex schwarzian(const RationalMap& f, Complex z) {
    const Polynomial& w = f.wronskian();
    const Polynomial& q = f.denominator();
    const Polynomial w1 = w.derivative(), w2 = w1.derivative(), q1 = q.derivative(), q2 = q1.derivative();
    const Complex W = w(z), W1 = w1(z), W2 = w2(z), Q = q(z), Q1 = q1(z), Q2 = q2(z);
    const Complex L = W1 / W - 2.0 * Q1 / Q;
    const Complex dL = (W2 * W - W1 * W1) / (W * W) - 2.0 * (Q2 * Q - Q1 * Q1) / (Q * Q);
    return dL - 0.5 * L * L;
}

/// lim (z-p)^2 {f; z} at a finite branch point p. (z-p)^2 {f; z} is
/// holomorphic near p, so its mean over a small circle is the limit; the
/// circle stays clear of the other branch points and poles.
inline Complex schwarzian_pole_coefficient(const RationalMap& f, Complex p, int samples = 128) {
    if (!detail::numerically_zero(f.wronskian(), p, 1e-8))
        throw NotAVortex("f' does not vanish at the given point");
    double clearance = 1.0 + std::abs(p);
    auto consider = [&](const Polynomial& poly) {
        if (poly.degree() < 1) return;
        for (const Root& r : find_roots(poly)) {
            const double d = std::abs(r.location - p);
            if (d > 1e-6 * (1.0 + std::abs(p))) clearance = std::min(clearance, d);
        }
    };
    consider(f.wronskian());
    consider(f.denominator());

    Complex result = 0.0;
    for (double radius : {0.25 * clearance, 0.125 * clearance}) {
        Complex acc = 0.0;
        for (int k = 0; k < samples; ++k) {
            const Complex h = std::polar(radius, 2.0 * std::numbers::pi * k / samples);
            acc += h * h * schwarzian(f, p + h);
        }
        result = acc / static_cast<double>(samples);
    }
    return result;
}

enum class DichotomyCase { NonIntegerBranch, IntegerBranch, Neither };

inline std::string to_string(DichotomyCase c) {
    switch (c) {
        case DichotomyCase::NonIntegerBranch: return "NonIntegerBranch";
        case DichotomyCase::IntegerBranch: return "IntegerBranch";
        case DichotomyCase::Neither: return "Neither";
    }
    return "?";
}

struct DichotomyVerdict {
    DichotomyCase which = DichotomyCase::Neither;
    std::optional<std::int64_t> k;   // m = 2(alpha0 + 1) + 2k
    std::optional<std::int64_t> k1;  // m = 2 k1, k1 >= 1
};

/// Matches a normalised mass m = (1/4pi) int e^u against the two
/// progressions 2(alpha0 + 1) + 2Z and 2N. When both fit (integer alpha0)
/// the first is reported as the case and both witnesses are filled in.
inline DichotomyVerdict mass_dichotomy_classify(double alpha0, const std::vector<int>& integer_alphas, double m,
                                                double tol) {
    if (!(alpha0 > -1)) throw InvalidArgument("alpha0 must exceed -1");
    if (!(m > 0)) throw InvalidArgument("mass must be positive");
    if (!(tol > 0)) throw InvalidArgument("tolerance must be positive");
    for (int a : integer_alphas)
        if (a < 1) throw InvalidArgument("the remaining strengths must be positive integers");

    DichotomyVerdict v;
    const double shifted = (m - 2.0 * (alpha0 + 1.0)) / 2.0;
    const double k = std::round(shifted);
    if (std::abs(m - 2.0 * (alpha0 + 1.0) - 2.0 * k) <= tol) v.k = static_cast<std::int64_t>(k);
    const double k1 = std::round(m / 2.0);
    if (k1 >= 1 && std::abs(m - 2.0 * k1) <= tol) v.k1 = static_cast<std::int64_t>(k1);
    if (v.k) v.which = DichotomyCase::NonIntegerBranch;
    else if (v.k1) v.which = DichotomyCase::IntegerBranch;
    return v;
}

}  // namespace toda
