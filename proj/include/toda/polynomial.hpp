#pragma once

#include <algorithm>
#include <cmath>
#include <cctype>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "toda/errors.hpp"

namespace toda {

using Complex = std::complex<double>;

/// Dense polynomial with complex coefficients, lowest degree first.
/// Exact zero leading coefficients are stripped; the zero polynomial has
/// no coefficients and degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(std::size_t degree, Complex coef = 1.0) {
        std::vector<Complex> c(degree + 1, 0.0);
        c[degree] = coef;
        return Polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Complex>& coeffs() const { return c_; }
    Complex operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Complex{}; }
    Complex leading() const { return c_.empty() ? Complex{} : c_.back(); }

    Complex operator()(Complex z) const {
        Complex acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    /// Sum of |a_i| |z|^i: the scale of rounding error in operator()(z).
    double magnitude_bound(Complex z) const {
        const double r = std::abs(z);
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * r + std::abs(*it);
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Complex> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
        return Polynomial(std::move(d));
    }

    Polynomial derivative(int order) const {
        Polynomial p = *this;
        for (int k = 0; k < order; ++k) p = p.derivative();
        return p;
    }

    /// Coefficients reversed against degree n: z^n p(1/z).
    Polynomial reversed(std::size_t n) const {
        std::vector<Complex> r(n + 1, 0.0);
        for (std::size_t i = 0; i < c_.size() && i <= n; ++i) r[n - i] = c_[i];
        return Polynomial(std::move(r));
    }

    /// Quotient by (z - r), remainder dropped.
    Polynomial deflate(Complex r) const {
        if (c_.size() <= 1) return {};
        std::vector<Complex> q(c_.size() - 1);
        Complex carry = 0.0;
        for (std::size_t i = c_.size() - 1; i-- > 0;) {
            carry = carry * r + c_[i + 1];
            q[i] = carry;
        }
        return Polynomial(std::move(q));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Complex> c(a.c_.size() + b.c_.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<Complex> c(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] - b[i];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(Complex k, const Polynomial& a) {
        std::vector<Complex> c(a.c_);
        for (auto& x : c) x *= k;
        return Polynomial(std::move(c));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == Complex{}) c_.pop_back();
    }

    std::vector<Complex> c_;
};

/// A root and its multiplicity.
struct Root {
    Complex location;
    int multiplicity;
};

namespace detail {

// Simultaneous Aberth-Ehrlich iteration. p must have degree >= 1 and a
// nonzero constant term.
inline std::vector<Complex> aberth(const Polynomial& p, int max_iter = 2000) {
    const int n = p.degree();
    const Polynomial dp = p.derivative();
    const double radius = std::pow(std::abs(p[0] / p.leading()), 1.0 / n);
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

    std::vector<bool> done(n, false);
    for (int it = 0; it < max_iter; ++it) {
        bool all_done = true;
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            const Complex pv = p(z[k]);
            if (pv == Complex{}) {
                done[k] = true;
                continue;
            }
            const Complex ratio = pv / dp(z[k]);
            Complex repulsion = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k) repulsion += 1.0 / (z[k] - z[j]);
            const Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
                z[k] += Complex(1e-8, 1e-8) * (1.0 + std::abs(z[k]));
                all_done = false;
                continue;
            }
            z[k] -= step;
            if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z[k])))
                done[k] = true;
            else
                all_done = false;
        }
        if (all_done) break;
    }
    return z;
}

inline bool numerically_zero(const Polynomial& p, Complex z, double rel) {
    return std::abs(p(z)) <= rel * std::max(p.magnitude_bound(z), std::numeric_limits<double>::min());
}

// Newton on the (m-1)-th derivative, whose root at an m-fold root is simple.
inline Complex polish(const Polynomial& p, Complex z, int multiplicity) {
    const Polynomial g = p.derivative(multiplicity - 1);
    const Polynomial dg = g.derivative();
    for (int it = 0; it < 50; ++it) {
        const Complex d = dg(z);
        if (d == Complex{}) break;
        const Complex step = g(z) / d;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
        if (std::abs(step) <= 2 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(z))) break;
    }
    return z;
}

// p and its first m-1 derivatives all vanish at z, relative to rel.
inline bool is_root_of_order(const Polynomial& p, Complex z, int m, double rel) {
    Polynomial d = p;
    for (int j = 0; j < m; ++j) {
        if (!numerically_zero(d, z, rel)) return false;
        d = d.derivative();
    }
    return true;
}

}  // namespace detail

/// Roots with multiplicities. Approximations within `cluster_tol` of each
/// other are grouped, then nearby groups are merged whenever the merged
/// centre, polished on the appropriate derivative, is a numerical root of
/// the combined order. Exact zero low-order coefficients give exact roots
/// at 0.
inline std::vector<Root> find_roots(const Polynomial& p, double cluster_tol = 1e-7) {
    if (p.is_zero()) throw InvalidArgument("roots of the zero polynomial");
    std::vector<Root> roots;
    std::size_t zeros = 0;
    while (zeros < p.coeffs().size() && p.coeffs()[zeros] == Complex{}) ++zeros;
    if (zeros > 0) roots.push_back({0.0, static_cast<int>(zeros)});
    const Polynomial q(std::vector<Complex>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), p.coeffs().end()));
    if (q.degree() < 1) return roots;

    const auto approx = detail::aberth(q);

    // Single-linkage groups at cluster_tol.
    std::vector<int> group(approx.size(), -1);
    int groups = 0;
    for (std::size_t i = 0; i < approx.size(); ++i) {
        if (group[i] >= 0) continue;
        group[i] = groups;
        std::vector<std::size_t> stack{i};
        while (!stack.empty()) {
            const std::size_t a = stack.back();
            stack.pop_back();
            for (std::size_t b = 0; b < approx.size(); ++b)
                if (group[b] < 0 && std::abs(approx[a] - approx[b]) <= cluster_tol) {
                    group[b] = groups;
                    stack.push_back(b);
                }
        }
        ++groups;
    }
    std::vector<Root> clusters(groups, Root{0.0, 0});
    for (std::size_t i = 0; i < approx.size(); ++i) {
        clusters[group[i]].location += approx[i];
        clusters[group[i]].multiplicity += 1;
    }
    const double rel = std::max(cluster_tol, 1e-12);
    for (auto& c : clusters) {
        c.location /= static_cast<double>(c.multiplicity);
        if (c.multiplicity > 1) {
            c.location = detail::polish(q, c.location, c.multiplicity);
            if (!detail::is_root_of_order(q, c.location, c.multiplicity, rel))
                throw RootClusterAmbiguous("roots within " + std::to_string(cluster_tol) +
                                           " do not form a root of multiplicity " +
                                           std::to_string(c.multiplicity));
        }
    }

    // Multiple roots come back from the iteration spread over a radius of
    // about eps^(1/m); merge such groups when the derivatives confirm it.
    bool merged = true;
    while (merged && clusters.size() > 1) {
        merged = false;
        double best = std::numeric_limits<double>::infinity();
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            for (std::size_t j = i + 1; j < clusters.size(); ++j) {
                const double d = std::abs(clusters[i].location - clusters[j].location);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        // The nearest pair seeds a candidate set: every group within a few
        // gaps of it, then the pair alone. Stop at the first refusal.
        if (best > 1e-2 * (1.0 + std::abs(clusters[bi].location))) break;
        const Complex seed = 0.5 * (clusters[bi].location + clusters[bj].location);
        const double radius = 3.0 * best;
        std::vector<std::size_t> ball;
        for (std::size_t i = 0; i < clusters.size(); ++i)
            if (i == bi || i == bj || std::abs(clusters[i].location - seed) <= radius) ball.push_back(i);
        std::vector<std::vector<std::size_t>> candidates{ball};
        if (ball.size() > 2) candidates.push_back({bi, bj});
        for (const auto& set : candidates) {
            int m = 0;
            Complex centre = 0.0;
            for (auto i : set) {
                m += clusters[i].multiplicity;
                centre += clusters[i].location * static_cast<double>(clusters[i].multiplicity);
            }
            centre /= static_cast<double>(m);
            const Complex polished = detail::polish(q, centre, m);
            if (std::abs(polished - centre) <= radius && detail::is_root_of_order(q, polished, m, rel)) {
                std::vector<Root> next{{polished, m}};
                for (std::size_t i = 0; i < clusters.size(); ++i)
                    if (std::find(set.begin(), set.end(), i) == set.end()) next.push_back(clusters[i]);
                clusters = std::move(next);
                merged = true;
                break;
            }
        }
    }
    for (auto& c : clusters)
        if (c.multiplicity == 1) c.location = detail::polish(q, c.location, 1);
    std::sort(clusters.begin(), clusters.end(), [](const Root& a, const Root& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    roots.insert(roots.end(), clusters.begin(), clusters.end());
    return roots;
}

/// Parses "a+bi", "a-bi", "a", "bi", "-i" (also 'j').
inline Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParseError("empty complex number");
    auto number = [&](const std::string& t) -> double {
        if (t.empty() || t == "+") return 1.0;
        if (t == "-") return -1.0;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw ParseError("malformed complex number '" + text + "'");
        }
        if (used != t.size()) throw ParseError("malformed complex number '" + text + "'");
        return v;
    };
    const char last = s.back();
    if (last != 'i' && last != 'j') return {number(s), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, number(body)};
    return {number(body.substr(0, split)), number(body.substr(split))};
}

}  // namespace toda
