#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "forbidden_oracle.hpp"
#include "toda/forbidden.hpp"

using namespace toda;

namespace {

const std::vector<std::string> basis{"1", "sqrt2", "sqrt3"};

Alpha irrational(Rational a, Rational b, Rational c) {
    const double numeric = to_double(a) + to_double(b) * std::sqrt(2.0) + to_double(c) * std::sqrt(3.0);
    return Alpha(QVector{basis, {a, b, c}}, numeric);
}

VortexConfig random_config(std::mt19937_64& rng, std::size_t max_vortices, bool rational) {
    static const Rational pool[] = {0, 1, 2, Rational(1, 2), Rational(1, 3), Rational(-1, 2), Rational(3, 4)};
    VortexConfig cfg;
    cfg.algebra = all_algebras[rng() % 3];
    const std::size_t n = rng() % (max_vortices + 1);
    for (std::size_t t = 0; t < n; ++t) {
        if (rational) {
            cfg.vortices.push_back({pool[rng() % 7], pool[rng() % 7]});
        } else {
            // Coefficients keep every strength above -1.
            const Rational b1(static_cast<int>(rng() % 3), 2), c2(static_cast<int>(rng() % 3) + 1, 4);
            cfg.vortices.push_back({irrational(Rational(static_cast<int>(rng() % 2)), b1 + Rational(1, 4), 0),
                                    irrational(0, Rational(static_cast<int>(rng() % 2)), c2)});
        }
    }
    return cfg;
}

std::vector<double> multiples_of_4pi(double cutoff) {
    std::vector<double> out;
    for (int n = 0; four_pi * n <= cutoff; ++n) out.push_back(four_pi * n);
    return out;
}

}  // namespace

TEST(LocalMassCandidates, Examples) {
    const auto A2 = CartanMatrix::of(Algebra::A2);
    const std::vector<std::pair<Rational, Rational>> unit{{2, 0}, {0, 2}, {2, 4}, {4, 2}, {4, 4}};
    auto sorted = [](auto v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    EXPECT_EQ(sorted(local_mass_candidates(Rational(1), Rational(1), A2)), sorted(unit));
    const std::vector<std::pair<Rational, Rational>> shifted{{3, 0}, {3, 5}, {5, 5}, {5, 2}, {0, 2}};
    EXPECT_EQ(sorted(local_mass_candidates(Rational(3, 2), Rational(1), A2)), sorted(shifted));
    const auto b2 = local_mass_candidates(Rational(1), Rational(1), CartanMatrix::of(Algebra::B2));
    EXPECT_EQ(b2.size(), 7u);
    EXPECT_NE(std::find(b2.begin(), b2.end(), std::pair<Rational, Rational>{6, 6}), b2.end());
    EXPECT_THROW(local_mass_candidates(Rational(0), Rational(1), A2), NonPositiveMu);
    EXPECT_THROW(local_mass_candidates(1.0, -0.5, A2), NonPositiveMu);
}

TEST(GammaI, NoVortices) {
    const auto set = gamma_i(VortexConfig{}, 1, 30);
    EXPECT_EQ(set.numbers(), multiples_of_4pi(30));
    ASSERT_EQ(set.values.size(), 3u);
    EXPECT_NEAR(set.values[1].value, 12.566, 1e-3);
    EXPECT_NEAR(set.values[2].value, 25.133, 1e-3);
}

TEST(GammaI, TrivialVortexGivesMultiplesOf4Pi) {
    VortexConfig cfg{Algebra::A2, {{0, 0}}};
    const auto set = gamma_i(cfg, 1, 30);
    EXPECT_EQ(set.numbers(), multiples_of_4pi(30));
    // 8*pi arises from n = 2 and from sigma = 2 with n = 0, among others.
    EXPECT_GT(set.values[2].realizations, 1u);
}

TEST(GammaI, IrrationalVortexExample) {
    const Alpha a1(QVector{{"1", "sqrt2"}, {0, 1}}, 1.41421356);
    const Alpha a2(QVector{{"1", "sqrt2", "sqrt3"}, {0, 0, 1}}, 1.73205081);
    VortexConfig cfg{Algebra::A2, {{a1, a2}}};
    const auto set = gamma_i(cfg, 1, 40);
    const auto expected = multiples_of_4pi(40);
    ASSERT_EQ(set.values.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(set.values[i].value, expected[i], 1e-12);
    EXPECT_FALSE(set.values[0].multiplier);
}

TEST(GammaI, ErrorsAndPreconditions) {
    VortexConfig big{Algebra::A2, std::vector<Vortex>(17, Vortex{0, 0})};
    EXPECT_THROW(gamma_i(big, 1, 10), TooManyVortices);
    EXPECT_NO_THROW(gamma_i(VortexConfig{Algebra::A2, std::vector<Vortex>(16, Vortex{0, 0})}, 1, 10));
    EXPECT_THROW(gamma_i(VortexConfig{}, 3, 10), InvalidArgument);
    EXPECT_THROW(gamma_i(VortexConfig{}, 1, 0), InvalidArgument);
    VortexConfig bad{Algebra::A2, {{Rational(-1), 0}}};
    EXPECT_THROW(gamma_i(bad, 1, 10), InvalidVortex);
}

TEST(GammaI, ValuesSortedWithinCutoffAndProvenanceRecomputes) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const auto cfg = random_config(rng, 4, trial % 2 == 0);
        for (int comp : {1, 2}) {
            const double cutoff = 20 + static_cast<double>(rng() % 180);
            const auto set = gamma_i(cfg, comp, cutoff);
            ASSERT_FALSE(set.values.empty());
            EXPECT_EQ(set.values.front().value, 0.0);
            for (std::size_t i = 0; i < set.values.size(); ++i) {
                const auto& v = set.values[i];
                EXPECT_LE(v.value, cutoff);
                if (i) {
                    EXPECT_GT(v.value - set.values[i - 1].value, forbidden_dedup_tol);
                }
                EXPECT_NEAR(provenance_value(cfg, comp, v.provenance), v.value, 1e-12);
                EXPECT_EQ(v.provenance.subset.size(), v.provenance.chosen.size());
            }
        }
    }
}

TEST(GammaI, MonotoneInVorticesAndCutoff) {
    std::mt19937_64 rng(77);
    auto contains = [](const ForbiddenSet& s, double x) {
        for (const auto& v : s.values)
            if (std::abs(v.value - x) <= 1e-9) return true;
        return false;
    };
    for (int trial = 0; trial < 40; ++trial) {
        auto cfg = random_config(rng, 3, trial % 2 == 1);
        const auto small = gamma_i(cfg, 1, 80);
        const auto larger_cutoff = gamma_i(cfg, 1, 150);
        auto more = cfg;
        more.vortices.push_back(cfg.vortices.empty() ? Vortex{0, 0} : cfg.vortices.front());
        const auto more_vortices = gamma_i(more, 1, 80);
        for (const auto& v : small.values) {
            EXPECT_TRUE(contains(larger_cutoff, v.value));
            EXPECT_TRUE(contains(more_vortices, v.value));
        }
    }
}

TEST(GammaI, MatchesBruteForceOracle) {
    std::mt19937_64 rng(2026);
    for (int trial = 0; trial < 80; ++trial) {
        const auto cfg = random_config(rng, 3, trial % 3 != 0);
        for (int comp : {1, 2}) {
            const double cutoff = 5 + static_cast<double>(rng() % 196);
            const auto got = gamma_i(cfg, comp, cutoff);
            const auto want = oracle::brute_force_gamma_i(cfg, comp, cutoff);
            EXPECT_TRUE(oracle::same_values(got, want))
                << "trial " << trial << " comp " << comp << " got " << got.values.size() << " want " << want.size();
        }
    }
}

TEST(CheckCompactness, IntegerRegime) {
    VortexConfig cfg{Algebra::A2, {{1, 0}, {2, 3}}};
    const auto met = check_compactness(cfg, 10, 10, 1e-6);
    EXPECT_EQ(met.regime, Regime::IntegerAlphas);
    EXPECT_TRUE(met.compact_criterion_met);
    EXPECT_NEAR(met.nearest[0]->distance, four_pi - 10, 1e-12);
    EXPECT_NEAR(met.nearest[0]->distance, 2.566, 1e-3);

    const auto not_met = check_compactness(cfg, 8 * std::numbers::pi, 10, 1e-6);
    EXPECT_FALSE(not_met.compact_criterion_met);
    EXPECT_EQ(not_met.nearest[0]->distance, 0.0);

    // Empty vortex set falls under the integer regime.
    EXPECT_TRUE(check_compactness(VortexConfig{}, 10, 10, 1e-6).compact_criterion_met);
}

TEST(CheckCompactness, NonIntegerRationalsAreInapplicable) {
    VortexConfig cfg{Algebra::B2, {{Rational(1, 2), Rational(1, 3)}}};
    const auto v = check_compactness(cfg, 10, 10, 1e-6);
    EXPECT_EQ(v.regime, Regime::Inapplicable);
    EXPECT_FALSE(v.compact_criterion_met);
    EXPECT_FALSE(v.nearest[0]);
}

TEST(CheckCompactness, QConditionRegimeUsesGammaI) {
    const Alpha a1 = irrational(0, 1, 0), a2 = irrational(0, 0, 1);
    VortexConfig cfg{Algebra::A2, {{a1, a2}}};
    // 4*pi*2*mu1 with mu1 = 1 + sqrt2 is forbidden for component 1.
    const double forbidden = four_pi * 2 * (1 + std::sqrt(2.0));
    const auto hit = check_compactness(cfg, forbidden, 10, 1e-6);
    EXPECT_EQ(hit.regime, Regime::QCondition);
    EXPECT_FALSE(hit.compact_criterion_met);
    EXPECT_LT(hit.nearest[0]->distance, 1e-9);

    const auto miss = check_compactness(cfg, forbidden + 0.5, 10, 1e-6);
    EXPECT_TRUE(miss.compact_criterion_met);

    EXPECT_THROW(check_compactness(cfg, 10, 10, 0), InvalidArgument);
    EXPECT_THROW(check_compactness(cfg, -1, 10, 1e-6), InvalidArgument);
}
