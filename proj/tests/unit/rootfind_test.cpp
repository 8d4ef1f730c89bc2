#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "coorbital/errors.hpp"
#include "coorbital/kernel.hpp"
#include "coorbital/rootfind.hpp"
#include "coorbital/symmetric.hpp"
#include "oracles.hpp"

namespace {

using namespace coorbital;

TEST(BracketRoot, LinearFunctionIsExact) {
    const auto r = bracket_root([](double x) { return x - 1.0; }, 0.0, 2.0);
    EXPECT_EQ(r.root, 1.0);
    EXPECT_LE(r.iterations, 2);
    EXPECT_TRUE(r.converged);
}

TEST(BracketRoot, SquareRootOfTwo) {
    const auto r = bracket_root([](double x) { return x * x - 2.0; }, 1.0, 2.0);
    EXPECT_NEAR(r.root, std::sqrt(2.0), 1e-12);
    EXPECT_TRUE(r.converged);
}

TEST(BracketRoot, FindsKernelCriticalPoint) {
    const auto r = bracket_root(kernel::derivative, 3.0 * pi / 5.0, 2.0 * pi / 3.0);
    EXPECT_NEAR(r.root, kernel::critical_points().theta_c, 1e-12);
}

TEST(BracketRoot, RejectsBracketWithoutSignChange) {
    auto fn = [](double x) { return 1.0 + x * x; };
    EXPECT_THROW(bracket_root(fn, 0.0, 1.0), NoSignChange);
    EXPECT_THROW(make_bracket(fn, 0.0, 1.0), NoSignChange);
    EXPECT_THROW(bracket_root(fn, Bracket{0.0, 1.0, -1.0, -2.0}), NoSignChange);
}

TEST(BracketRoot, RejectsNonPositiveTolerances) {
    auto fn = [](double x) { return x; };
    EXPECT_THROW(bracket_root(fn, -1.0, 1.0, RootTolerances{0.0, 1e-10, 200}),
                 std::invalid_argument);
    EXPECT_THROW(bracket_root(fn, -1.0, 1.0, RootTolerances{1e-12, -1.0, 200}),
                 std::invalid_argument);
    EXPECT_THROW(bracket_root(fn, -1.0, 1.0, RootTolerances{1e-12, 1e-10, 0}),
                 std::invalid_argument);
}

TEST(BracketRoot, ReportsNonConvergenceWithBestEstimate) {
    const auto r = bracket_root([](double x) { return std::tanh(1e6 * (x - 0.3)); }, 0.0, 1.0,
                                RootTolerances{1e-14, 1e-10, 3});
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 3);
    EXPECT_GE(r.root, 0.0);
    EXPECT_LE(r.root, 1.0);
}

TEST(BracketRoot, ReachesTinyWidthOnSteepAndFlatFunctions) {
    const RootTolerances tight{1e-14, 1e-300, 200};
    const auto steep = bracket_root([](double x) { return std::tanh(1e6 * (x - 0.3)); }, 0.0,
                                    1.0, tight);
    EXPECT_TRUE(steep.converged);
    EXPECT_NEAR(steep.root, 0.3, 1e-13);
    const auto flat = bracket_root([](double x) { return std::pow(x - 0.7, 5); }, 0.0, 1.0,
                                   tight);
    EXPECT_TRUE(flat.converged);
    EXPECT_NEAR(flat.root, 0.7, 1e-13);
}

TEST(BracketRoot, IsDeterministic) {
    auto fn = [](double x) { return std::cos(x) - x; };
    const auto a = bracket_root(fn, 0.0, 1.0);
    const auto b = bracket_root(fn, 0.0, 1.0);
    EXPECT_EQ(a.root, b.root);
    EXPECT_EQ(a.iterations, b.iterations);
}

TEST(ScanBrackets, SineHasOneRootNearPi) {
    const auto found = scan_brackets([](double x) { return std::sin(x); }, 0.1, two_pi - 0.1,
                                     1000);
    ASSERT_EQ(found.size(), 1u);
    EXPECT_LT(found[0].lo, pi);
    EXPECT_GT(found[0].hi, pi);
}

TEST(ScanBrackets, OppositeSignEquationHasTwoRoots) {
    const auto found = scan_brackets(t33_opposite_sign_equation, 1e-9, pi - 1e-9, 2000);
    ASSERT_EQ(found.size(), 2u);
    EXPECT_GT(found[0].lo, 0.0);
    EXPECT_LT(found[0].hi, pi / 3.0);
    EXPECT_GT(found[1].lo, 2.0 * pi / 3.0);
    EXPECT_LT(found[1].hi, pi);
}

TEST(ScanBrackets, NoRootGivesEmptyList) {
    EXPECT_TRUE(scan_brackets([](double x) { return 1.0 + x * x; }, 0.0, 1.0).empty());
}

TEST(ScanBrackets, RootOnGridNodeIsReportedOnce) {
    const auto found = scan_brackets([](double x) { return x - 0.5; }, 0.0, 1.0, 2);
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0].lo, 0.0);
    EXPECT_EQ(found[0].hi, 1.0);
}

TEST(ScanBrackets, TouchingZeroWithoutCrossingIsNotARoot) {
    const auto found = scan_brackets([](double x) { return (x - 0.5) * (x - 0.5); }, 0.0, 1.0, 4);
    EXPECT_TRUE(found.empty());
}

TEST(ScanBrackets, RejectsBadArguments) {
    auto fn = [](double x) { return x; };
    EXPECT_THROW(scan_brackets(fn, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(scan_brackets(fn, 0.0, 1.0, 1), std::invalid_argument);
}

TEST(ScanBrackets, NonFiniteValuesBreakBrackets) {
    auto fn = [](double x) { return 1.0 / (x - 0.5); };
    EXPECT_TRUE(scan_brackets(fn, 0.0, 1.0, 2).empty());
}

// Random cubics with three well separated real roots.
TEST(RootfindProperty, ConvergedResultsStraddleASignChange) {
    coorbital::testing::Generator gen(0x5eed0101);
    for (int trial = 0; trial < 200; ++trial) {
        const double r1 = gen.uniform(-3.0, -1.0);
        const double r2 = gen.uniform(-0.5, 0.5);
        const double r3 = gen.uniform(1.0, 3.0);
        const double scale = gen.uniform(0.01, 100.0);
        auto fn = [=](double x) { return scale * (x - r1) * (x - r2) * (x - r3); };
        const auto brackets = scan_brackets(fn, -4.0, 4.0, 400);
        ASSERT_EQ(brackets.size(), 3u);
        for (const auto& b : brackets) {
            const RootTolerances tol{1e-12, 1e-10, 200};
            const auto r = bracket_root(fn, b, tol);
            ASSERT_TRUE(r.converged);
            const double lo = r.root - tol.width;
            const double hi = r.root + tol.width;
            EXPECT_TRUE(fn(r.root) == 0.0 || (fn(lo) < 0.0) != (fn(hi) < 0.0)) << r.root;
        }
    }
}

TEST(RootfindProperty, UnitBracketsReachFemtoWidth) {
    coorbital::testing::Generator gen(0x5eed0102);
    for (int trial = 0; trial < 200; ++trial) {
        const double root = gen.uniform(0.05, 0.95);
        const double steep = std::pow(10.0, gen.uniform(-2.0, 8.0));
        auto fn = [=](double x) { return std::atan(steep * (x - root)); };
        const auto r = bracket_root(fn, 0.0, 1.0, RootTolerances{1e-14, 1e-300, 200});
        EXPECT_TRUE(r.converged) << root << " " << steep;
        EXPECT_NEAR(r.root, root, 1e-13);
    }
}

}  // namespace
