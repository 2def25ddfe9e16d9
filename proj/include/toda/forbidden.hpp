#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toda/gamma.hpp"
#include "toda/mk_matrix.hpp"

namespace toda {

inline constexpr double four_pi = 4.0 * std::numbers::pi;

/// Strength of one singular source: exact Q-basis coordinates together with
/// its numeric value. Rational strengths live on the basis {1}.
class Alpha {
public:
    Alpha() : Alpha(Rational(0)) {}
    Alpha(Rational q) : value_(QVector::rational(q)), numeric_(to_double(q)) {}  // NOLINT
    Alpha(int q) : Alpha(Rational(q)) {}                                          // NOLINT

    /// An irrational strength needs its numeric value; it is not derivable
    /// from the coordinates alone.
    Alpha(QVector v, double numeric) : value_(std::move(v)), numeric_(numeric) {
        if (value_.coords.empty()) throw InvalidVortex("empty Q-coordinates");
        if (value_.is_rational()) numeric_ = to_double(value_.rational_part());
    }

    const QVector& q_vector() const { return value_; }
    double numeric() const { return numeric_; }
    bool is_rational() const { return value_.is_rational(); }
    Rational exact() const { return value_.rational_part(); }  // meaningful only if is_rational()
    bool is_nonnegative_integer() const { return is_rational() && is_integer(exact()) && exact() >= 0; }

private:
    QVector value_;
    double numeric_;
};

struct Vortex {
    Alpha alpha1;
    Alpha alpha2;
};

struct VortexConfig {
    Algebra algebra = Algebra::A2;
    std::vector<Vortex> vortices;

    bool all_rational() const {
        return std::all_of(vortices.begin(), vortices.end(),
                           [](const Vortex& v) { return v.alpha1.is_rational() && v.alpha2.is_rational(); });
    }

    void validate() const {
        for (std::size_t t = 0; t < vortices.size(); ++t)
            for (const Alpha* a : {&vortices[t].alpha1, &vortices[t].alpha2})
                if (!(a->numeric() > -1.0) || (a->is_rational() && a->exact() <= -1))
                    throw InvalidVortex("vortex " + std::to_string(t) + ": strength must exceed -1");
    }
};

inline std::vector<std::pair<Rational, Rational>> local_mass_candidates(const Rational& mu1, const Rational& mu2,
                                                                        const CartanMatrix& K) {
    if (mu1 <= 0 || mu2 <= 0) throw NonPositiveMu("local mass candidates need mu1, mu2 > 0");
    std::vector<std::pair<Rational, Rational>> out;
    for (const auto& p : enumerate_gamma(K).pairs) out.emplace_back(mass_eval(p.s1, mu1, mu2), mass_eval(p.s2, mu1, mu2));
    return out;
}

inline std::vector<std::pair<double, double>> local_mass_candidates(double mu1, double mu2, const CartanMatrix& K) {
    if (!(mu1 > 0) || !(mu2 > 0)) throw NonPositiveMu("local mass candidates need mu1, mu2 > 0");
    std::vector<std::pair<double, double>> out;
    for (const auto& p : enumerate_gamma(K).pairs) out.emplace_back(mass_eval(p.s1, mu1, mu2), mass_eval(p.s2, mu1, mu2));
    return out;
}

/// One way of realising a forbidden value: the vortices in J, the Gamma
/// element chosen at each (same order), and the integer offset n.
struct Provenance {
    std::vector<std::size_t> subset;
    std::vector<MassPair> chosen;
    std::int64_t n = 0;
};

struct ForbiddenValue {
    double value;                       // 4*pi*(sum + n)
    std::optional<Rational> multiplier; // sum + n, when every strength is rational
    Provenance provenance;              // first realisation found
    std::uint64_t realizations = 1;     // realisations merged into this value
};

struct ForbiddenSet {
    int component;
    double cutoff;
    std::vector<ForbiddenValue> values;  // ascending

    std::vector<double> numbers() const {
        std::vector<double> out;
        out.reserve(values.size());
        for (const auto& v : values) out.push_back(v.value);
        return out;
    }
};

inline constexpr std::size_t default_max_vortices = 16;
inline constexpr double forbidden_dedup_tol = 1e-9;

/// Recomputes a provenance record; the same summation order as gamma_i.
inline double provenance_value(const VortexConfig& cfg, int component, const Provenance& p) {
    double sum = 0.0;
    for (std::size_t k = 0; k < p.subset.size(); ++k) {
        const Vortex& v = cfg.vortices.at(p.subset[k]);
        const double mu1 = 1.0 + v.alpha1.numeric(), mu2 = 1.0 + v.alpha2.numeric();
        const MassExpr& s = component == 1 ? p.chosen[k].s1 : p.chosen[k].s2;
        sum += mass_eval(s, mu1, mu2);
    }
    return four_pi * (sum + static_cast<double>(p.n));
}

namespace detail {

struct PartialSum {
    double approx = 0.0;
    std::optional<Rational> exact;
    Provenance provenance;
    std::uint64_t count = 1;
};

struct VortexOption {
    double approx;
    std::optional<Rational> exact;
    MassPair element;
};

inline std::vector<VortexOption> vortex_options(const Vortex& v, const CartanMatrix& K, int component, bool exact) {
    std::vector<VortexOption> out;
    for (const auto& p : enumerate_gamma(K).pairs) {
        const MassExpr& s = component == 1 ? p.s1 : p.s2;
        VortexOption o{mass_eval(s, 1.0 + v.alpha1.numeric(), 1.0 + v.alpha2.numeric()), std::nullopt, p};
        if (exact) {
            o.exact = mass_eval(s, 1 + v.alpha1.exact(), 1 + v.alpha2.exact());
            o.approx = to_double(*o.exact);
        }
        out.push_back(std::move(o));
    }
    return out;
}

// Keeps the first of each group of equal sums (exact, or within tol).
inline std::vector<PartialSum> merge_sums(std::vector<PartialSum> sums, bool exact, double tol) {
    std::stable_sort(sums.begin(), sums.end(), [exact](const PartialSum& a, const PartialSum& b) {
        return exact ? *a.exact < *b.exact : a.approx < b.approx;
    });
    std::vector<PartialSum> out;
    for (auto& s : sums) {
        if (!out.empty()) {
            auto& last = out.back();
            const bool same = exact ? *last.exact == *s.exact : std::abs(s.approx - last.approx) <= tol;
            if (same) {
                last.count += s.count;
                continue;
            }
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace detail

/// Forbidden values 4*pi*(sum over J of sigma_{i,t} + n) not above
/// `cutoff`, over every subset J of the vortices, every choice of Gamma
/// element at each vortex of J, and every integer n >= 0. Exact rational
/// arithmetic is used when all strengths are rational.
inline ForbiddenSet gamma_i(const VortexConfig& cfg, int component, double cutoff,
                            std::size_t max_vortices = default_max_vortices) {
    if (component != 1 && component != 2) throw InvalidArgument("component must be 1 or 2");
    if (!(cutoff > 0)) throw InvalidArgument("cutoff must be positive");
    if (cfg.vortices.size() > max_vortices)
        throw TooManyVortices(std::to_string(cfg.vortices.size()) + " vortices exceed the bound of " +
                              std::to_string(max_vortices));
    cfg.validate();

    const bool exact = cfg.all_rational();
    const CartanMatrix K = CartanMatrix::of(cfg.algebra);
    const double sum_tol = forbidden_dedup_tol / four_pi;

    std::vector<detail::PartialSum> sums(1);
    if (exact) sums.front().exact = Rational(0);

    // Masses are nonnegative for mu > 0, so partial sums above the limit
    // can be dropped.
    for (std::size_t t = 0; t < cfg.vortices.size(); ++t) {
        const auto options = detail::vortex_options(cfg.vortices[t], K, component, exact);
        std::vector<detail::PartialSum> next = sums;  // t not in J
        for (const auto& s : sums) {
            for (const auto& o : options) {
                detail::PartialSum n;
                if (exact) {
                    n.exact = *s.exact + *o.exact;
                    n.approx = to_double(*n.exact);
                } else {
                    n.approx = s.approx + o.approx;
                }
                if (four_pi * n.approx > cutoff) continue;
                n.provenance = s.provenance;
                n.provenance.subset.push_back(t);
                n.provenance.chosen.push_back(o.element);
                n.count = s.count;
                next.push_back(std::move(n));
            }
        }
        sums = detail::merge_sums(std::move(next), exact, sum_tol);
    }

    std::vector<detail::PartialSum> expanded;
    for (const auto& s : sums) {
        for (std::int64_t n = 0;; ++n) {
            detail::PartialSum e = s;
            e.provenance.n = n;
            if (exact) {
                e.exact = *s.exact + n;
                e.approx = to_double(*e.exact);
            } else {
                e.approx = s.approx + static_cast<double>(n);
            }
            if (four_pi * e.approx > cutoff) break;
            expanded.push_back(std::move(e));
        }
    }
    expanded = detail::merge_sums(std::move(expanded), exact, sum_tol);

    ForbiddenSet out{component, cutoff, {}};
    out.values.reserve(expanded.size());
    for (auto& e : expanded) {
        ForbiddenValue v;
        v.value = exact ? four_pi * e.approx : provenance_value(cfg, component, e.provenance);
        v.multiplier = e.exact;
        v.provenance = std::move(e.provenance);
        v.realizations = e.count;
        out.values.push_back(std::move(v));
    }
    return out;
}

enum class Regime { IntegerAlphas, QCondition, Inapplicable };

inline std::string to_string(Regime r) {
    switch (r) {
        case Regime::IntegerAlphas: return "IntegerAlphas";
        case Regime::QCondition: return "QCondition";
        case Regime::Inapplicable: return "Inapplicable";
    }
    return "?";
}

struct NearestForbidden {
    double value;
    double distance;
};

struct CompactnessVerdict {
    bool compact_criterion_met = false;
    Regime regime = Regime::Inapplicable;
    std::optional<NearestForbidden> nearest[2];
};

/// Nearest point of 4*pi*N (n >= 1).
inline NearestForbidden nearest_positive_multiple(double rho) {
    const double n = std::max(1.0, std::round(rho / four_pi));
    const double v = four_pi * n;
    return {v, std::abs(rho - v)};
}

inline NearestForbidden nearest_in(const ForbiddenSet& set, double rho) {
    NearestForbidden best{0.0, std::abs(rho)};
    bool first = true;
    for (const auto& v : set.values) {
        const double d = std::abs(rho - v.value);
        if (first || d < best.distance) best = {v.value, d};
        first = false;
    }
    return best;
}

/// Checks the sufficient hypotheses for a priori bounds: rho_i off 4*pi*N
/// when every strength is a nonnegative integer, rho_i off Gamma_i when
/// every vortex satisfies the Q-condition. Otherwise no claim is made.
inline CompactnessVerdict check_compactness(const VortexConfig& cfg, double rho1, double rho2, double tol,
                                            std::size_t max_vortices = default_max_vortices) {
    if (!(tol > 0)) throw InvalidArgument("tolerance must be positive");
    if (!(rho1 > 0) || !(rho2 > 0)) throw InvalidArgument("rho1 and rho2 must be positive");
    cfg.validate();

    CompactnessVerdict v;
    const double rho[2] = {rho1, rho2};
    const bool integer = std::all_of(cfg.vortices.begin(), cfg.vortices.end(), [](const Vortex& t) {
        return t.alpha1.is_nonnegative_integer() && t.alpha2.is_nonnegative_integer();
    });
    if (integer) {
        v.regime = Regime::IntegerAlphas;
        for (int i = 0; i < 2; ++i) v.nearest[i] = nearest_positive_multiple(rho[i]);
    } else if (std::all_of(cfg.vortices.begin(), cfg.vortices.end(),
                           [](const Vortex& t) { return q_condition(t.alpha1.q_vector(), t.alpha2.q_vector()); })) {
        v.regime = Regime::QCondition;
        for (int i = 0; i < 2; ++i)
            v.nearest[i] = nearest_in(gamma_i(cfg, i + 1, rho[i] + four_pi, max_vortices), rho[i]);
    } else {
        return v;
    }
    v.compact_criterion_met = v.nearest[0]->distance > tol && v.nearest[1]->distance > tol;
    return v;
}

}  // namespace toda
