#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <numeric>
#include <utility>
#include <vector>

#include "toda/pohozaev.hpp"

namespace toda {

/// The finite set of admissible local-mass pairs for one algebra, in
/// discovery order of the reflection orbit of (0,0). (0,0) itself is not
/// included.
struct GammaSet {
    Algebra algebra;
    std::vector<MassPair> pairs;

    std::size_t size() const { return pairs.size(); }
    bool contains(const MassPair& p) const { return std::find(pairs.begin(), pairs.end(), p) != pairs.end(); }
};

inline constexpr std::size_t orbit_state_cap = 64;

/// Breadth-first closure of {(0,0)} under the two reflections, reflection 1
/// tried first from each state. Returns the whole orbit including the seed.
inline std::vector<MassPair> reflection_orbit(const CartanMatrix& K, std::size_t cap = orbit_state_cap) {
    std::vector<MassPair> seen{MassPair{}};
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        const MassPair cur = seen[frontier.front()];
        frontier.pop_front();
        for (int component : {1, 2}) {
            MassPair next = reflect(cur, K, component);
            if (std::find(seen.begin(), seen.end(), next) != seen.end()) continue;
            if (seen.size() >= cap)
                throw OrbitOverflow("reflection orbit for " + to_string(K.label) + " exceeded " +
                                    std::to_string(cap) + " states");
            seen.push_back(std::move(next));
            frontier.push_back(seen.size() - 1);
        }
    }
    return seen;
}

inline GammaSet enumerate_gamma(const CartanMatrix& K) {
    auto orbit = reflection_orbit(K);
    return {K.label, std::vector<MassPair>(orbit.begin() + 1, orbit.end())};
}

inline GammaSet enumerate_gamma(Algebra a) { return enumerate_gamma(CartanMatrix::of(a)); }

/// The pair realised by fully bubbling solutions.
inline MassPair special_pair(Algebra a) {
    switch (a) {
        case Algebra::A2: return {{2, 2, 0}, {2, 2, 0}};
        case Algebra::B2: return {{4, 2, 0}, {4, 4, 0}};
        case Algebra::G2: return {{8, 4, 0}, {12, 8, 0}};
    }
    return {};
}

inline bool is_special(const MassPair& p, const CartanMatrix& K) { return p == special_pair(K.label); }

struct Decomposition {
    MassPair a;
    MassPair b;
};

namespace detail {

using Value = std::pair<Rational, Rational>;

// Index pairs i <= j with values[i] + values[j] == target, in (i, j) order.
// Each a is matched by looking its complement up among the sorted values.
inline std::vector<std::pair<std::size_t, std::size_t>> summing_pairs(const std::vector<Value>& values,
                                                                      const std::vector<std::size_t>& order,
                                                                      const Value& target) {
    const auto less = [&](std::size_t x, const Value& v) { return values[x] < v; };
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const Value rest{target.first - values[i].first, target.second - values[i].second};
        std::vector<std::size_t> matches;
        for (auto it = std::lower_bound(order.begin(), order.end(), rest, less);
             it != order.end() && values[*it] == rest; ++it)
            if (*it >= i) matches.push_back(*it);
        std::sort(matches.begin(), matches.end());
        for (auto j : matches) out.emplace_back(i, j);
    }
    return out;
}

inline std::vector<Value> evaluate(const GammaSet& gamma, const Rational& mu1, const Rational& mu2) {
    if (mu1 <= 0 || mu2 <= 0) throw NonPositiveMu("decompositions requires mu1, mu2 > 0");
    std::vector<Value> values;
    values.reserve(gamma.size());
    for (const auto& g : gamma.pairs) values.emplace_back(mass_eval(g.s1, mu1, mu2), mass_eval(g.s2, mu1, mu2));
    return values;
}

inline std::vector<std::size_t> sorted_order(const std::vector<Value>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
    return order;
}

}  // namespace detail

/// All unordered pairs {a, b} of Gamma elements (a == b allowed) whose
/// values at (mu1, mu2) add up to the value of p, componentwise. Elements
/// are identified by their symbolic form.
inline std::vector<Decomposition> decompositions(const MassPair& p, const GammaSet& gamma, const Rational& mu1,
                                                 const Rational& mu2) {
    const auto values = detail::evaluate(gamma, mu1, mu2);
    std::vector<Decomposition> out;
    for (auto [i, j] : detail::summing_pairs(values, detail::sorted_order(values),
                                             {mass_eval(p.s1, mu1, mu2), mass_eval(p.s2, mu1, mu2)}))
        out.push_back({gamma.pairs[i], gamma.pairs[j]});
    return out;
}

inline std::vector<Decomposition> decompositions(const MassPair& p, const CartanMatrix& K, const Rational& mu1,
                                                 const Rational& mu2) {
    if (mu1 <= 0 || mu2 <= 0) throw NonPositiveMu("decompositions requires mu1, mu2 > 0");
    return decompositions(p, enumerate_gamma(K), mu1, mu2);
}

/// decompositions() for every element of gamma at once, aligned with
/// gamma.pairs. Gamma is evaluated a single time.
inline std::vector<std::vector<Decomposition>> all_decompositions(const GammaSet& gamma, const Rational& mu1,
                                                                  const Rational& mu2) {
    const auto values = detail::evaluate(gamma, mu1, mu2);
    const auto order = detail::sorted_order(values);
    std::vector<std::vector<Decomposition>> out(gamma.size());
    for (std::size_t k = 0; k < gamma.size(); ++k)
        for (auto [i, j] : detail::summing_pairs(values, order, values[k]))
            out[k].push_back({gamma.pairs[i], gamma.pairs[j]});
    return out;
}

}  // namespace toda
