#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "toda/polynomial.hpp"

using namespace toda;

namespace {

Polynomial from_roots(const std::vector<Complex>& roots, Complex lead = 1.0) {
    Polynomial p({lead});
    for (auto r : roots) p = p * Polynomial({-r, 1.0});
    return p;
}

int multiplicity_near(const std::vector<Root>& roots, Complex z, double tol) {
    for (const auto& r : roots)
        if (std::abs(r.location - z) <= tol) return r.multiplicity;
    return 0;
}

}  // namespace

TEST(Polynomial, BasicOperations) {
    const Polynomial p({1.0, -3.0, 0.0, 2.0});  // 2z^3 - 3z + 1
    EXPECT_EQ(p.degree(), 3);
    EXPECT_EQ(p(Complex(2.0)), Complex(11.0));
    EXPECT_EQ(p.derivative().coeffs(), (std::vector<Complex>{-3.0, 0.0, 6.0}));
    EXPECT_EQ(p.derivative(3).coeffs(), (std::vector<Complex>{12.0}));
    EXPECT_TRUE(p.derivative(4).is_zero());
    EXPECT_EQ(Polynomial({0.0, 0.0}).degree(), -1);
    // 2z^3 - 3z + 1 = (z - 1)(2z^2 + 2z - 1)
    EXPECT_EQ(p.deflate(1.0).coeffs(), (std::vector<Complex>{-1.0, 2.0, 2.0}));
    EXPECT_EQ(p.reversed(3).coeffs(), (std::vector<Complex>{2.0, 0.0, -3.0, 1.0}));
    EXPECT_EQ((p - p).degree(), -1);
}

TEST(Polynomial, ParseComplex) {
    EXPECT_EQ(parse_complex("1+2i"), Complex(1, 2));
    EXPECT_EQ(parse_complex("-1.5-0.5i"), Complex(-1.5, -0.5));
    EXPECT_EQ(parse_complex("3"), Complex(3, 0));
    EXPECT_EQ(parse_complex("-i"), Complex(0, -1));
    EXPECT_EQ(parse_complex("2j"), Complex(0, 2));
    EXPECT_EQ(parse_complex("1e-3+1e+2i"), Complex(1e-3, 1e2));
    EXPECT_THROW(parse_complex("x"), ParseError);
    EXPECT_THROW(parse_complex(""), ParseError);
}

TEST(FindRoots, SimpleRoots) {
    const std::vector<Complex> truth{{1, 0}, {-2, 0.5}, {0.3, -1.2}, {4, 4}};
    const auto roots = find_roots(from_roots(truth, {2, -1}));
    ASSERT_EQ(roots.size(), truth.size());
    for (auto t : truth) EXPECT_EQ(multiplicity_near(roots, t, 1e-10), 1);
}

TEST(FindRoots, ExactZeroRootsAndMultiplicities) {
    const auto z5 = find_roots(Polynomial::monomial(5, 3.0));
    ASSERT_EQ(z5.size(), 1u);
    EXPECT_EQ(z5[0].multiplicity, 5);
    EXPECT_EQ(z5[0].location, Complex(0.0));

    const auto roots = find_roots(from_roots({1, 1, -2, -2, -2, {0, 1}}));
    EXPECT_EQ(multiplicity_near(roots, 1.0, 1e-8), 2);
    EXPECT_EQ(multiplicity_near(roots, -2.0, 1e-8), 3);
    EXPECT_EQ(multiplicity_near(roots, Complex(0, 1), 1e-8), 1);
    EXPECT_EQ(roots.size(), 3u);
}

TEST(FindRoots, RandomRootSetsWithMultiplicity) {
    std::mt19937_64 rng(314);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Complex> distinct;
        std::vector<int> mult;
        std::vector<Complex> all;
        const int k = 1 + static_cast<int>(rng() % 4);
        while (static_cast<int>(distinct.size()) < k) {
            const Complex c(u(rng), u(rng));
            if (std::all_of(distinct.begin(), distinct.end(), [&](Complex d) { return std::abs(d - c) > 0.3; })) {
                distinct.push_back(c);
                mult.push_back(1 + static_cast<int>(rng() % 3));
                for (int m = 0; m < mult.back(); ++m) all.push_back(c);
            }
        }
        const auto roots = find_roots(from_roots(all, Complex(u(rng), 1.0)));
        ASSERT_EQ(roots.size(), distinct.size()) << "trial " << trial;
        for (std::size_t i = 0; i < distinct.size(); ++i)
            EXPECT_EQ(multiplicity_near(roots, distinct[i], 1e-6), mult[i]) << "trial " << trial;
    }
}

TEST(FindRoots, ZeroPolynomialRejected) { EXPECT_THROW(find_roots(Polynomial{}), InvalidArgument); }
