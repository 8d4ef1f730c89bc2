#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coorbital/kernel.hpp"
#include "coorbital/model.hpp"
#include "coorbital/symmetric.hpp"

namespace {

using namespace coorbital;
namespace k = coorbital::kernel;

double max_abs(const Vector4& v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

TEST(TheoremTag, RoundTrip) {
    for (auto tag : {TheoremTag::T32, TheoremTag::T33, TheoremTag::T34, TheoremTag::T35,
                     TheoremTag::T36, TheoremTag::T37}) {
        EXPECT_EQ(parse_theorem_tag(to_string(tag)), tag);
    }
    EXPECT_THROW(parse_theorem_tag("T38"), std::invalid_argument);
    EXPECT_THROW(parse_theorem_tag("t32"), std::invalid_argument);
}

TEST(SolveT32, RootAndConfiguration) {
    const auto s = solve_T32();
    ASSERT_TRUE(s.exists);
    EXPECT_NEAR(*s.theta0, 0.6281, 5e-4);
    EXPECT_NEAR(*s.theta0, 0.628079487567, 1e-11);
    EXPECT_NEAR(s.config->theta2, pi / 3 - *s.theta0, 1e-15);
    EXPECT_NEAR(s.config->theta2, 0.4191, 5e-4);
    EXPECT_NEAR(s.config->theta4, 5 * pi / 3 - *s.theta0, 1e-15);
    EXPECT_LT(std::abs(t32_equation(*s.theta0)), 1e-10);
}

TEST(SolveT32, BackSubstitution) {
    const auto s = solve_T32();
    const double t0 = *s.theta0;
    const double r = k::value(pi / 3 - t0) / k::value(t0);
    EXPECT_GT(r, 0.0);
    EXPECT_NEAR(s.mass_condition.ratio, r, 1e-12);
    EXPECT_LT(max_abs(residual_four(*s.config, MassVector({r, 1, 1, r}))), 1e-9);
    EXPECT_LT(s.residual, 1e-9);
}

TEST(SolveT32, MonotoneCertificate) {
    const auto s = solve_T32();
    const auto it = std::find_if(s.grids.begin(), s.grids.end(),
                                 [](const GridCertificate& g) { return g.monotone_decreasing; });
    ASSERT_NE(it, s.grids.end());
    EXPECT_EQ(it->points, 2000);
    EXPECT_NEAR(it->lo, 1e-4, 1e-15);
    EXPECT_NEAR(it->hi, pi / 3 - 1e-4, 1e-15);
    double prev = t32_equation(it->lo);
    for (int i = 1; i < 2000; ++i) {
        const double v = t32_equation(it->lo + (it->hi - it->lo) * i / 1999.0);
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(SolveT33, SquareWithAlternatingMasses) {
    const auto s = solve_T33();
    ASSERT_TRUE(s.exists);
    EXPECT_NEAR(s.config->theta1, pi / 2, 1e-15);
    EXPECT_NEAR(s.config->theta2, pi / 2, 1e-15);
    EXPECT_NEAR(s.config->theta4, pi / 2, 1e-15);
    EXPECT_LT(max_abs(residual_four(*s.config, MassVector({1, 2, 1, 2}))), 1e-12);
}

TEST(SolveT33, OppositeSignEquationAtQuarterTurn) {
    EXPECT_NEAR(t33_opposite_sign_equation(pi / 2), 4 * std::sqrt(2.0) - 16, 1e-12);
    EXPECT_NEAR(t33_opposite_sign_equation(pi / 2), -10.34314575050762, 1e-12);
}

TEST(SolveT33, RejectsBothOppositeSignRoots) {
    const auto s = solve_T33();
    ASSERT_EQ(s.rejected.size(), 2u);
    for (const auto& r : s.rejected) {
        ASSERT_TRUE(r.theta.has_value());
        EXPECT_LT(std::abs(t33_opposite_sign_equation(*r.theta)), 1e-8);
        const double ratio = k::value(*r.theta) / k::value(pi - *r.theta);
        EXPECT_LT(ratio, 0.0);
        EXPECT_NEAR(r.witness, ratio, 1e-12);
        EXPECT_FALSE(r.reason.empty());
    }
    EXPECT_LT(*s.rejected[0].theta, pi / 3);
    EXPECT_GT(*s.rejected[1].theta, 2 * pi / 3);
}

TEST(SolveT34, SharesRootWithT32) {
    const auto s32 = solve_T32();
    const auto s = solve_T34();
    ASSERT_TRUE(s.exists);
    EXPECT_NEAR(*s.theta0, *s32.theta0, 1e-12);
    EXPECT_NEAR(s.config->theta2, 4.6079, 5e-4);
    const double t0 = *s.theta0;
    const double r = k::value(5 * pi / 3 - t0) / k::value(t0);
    EXPECT_GT(r, 0.0);
    EXPECT_LT(max_abs(residual_four(*s.config, MassVector({r, 1, 1, r}))), 1e-9);
}

TEST(CheckT35, LeftSideValues) {
    EXPECT_GT(t35_equation(pi / 2), 0.0);
    EXPECT_NEAR(t35_equation(pi / 3), std::pow(k::value(2 * pi / 3), 2), 1e-12);
    EXPECT_GT(t35_equation(pi / 3), 0.0);
    EXPECT_LT(k::value(0.2), 0.0);
    EXPECT_LT(k::value(4 * pi / 3 - 0.2), 0.0);
    // Frozen from a 40-digit evaluation.
    EXPECT_NEAR(k::value(0.2), -24.75951791255391, 1e-11);
    EXPECT_NEAR(k::value(4 * pi / 3 - 0.2), -0.6257748964719039, 1e-12);
    EXPECT_NEAR(t35_equation(0.2), 15.61846970208050, 1e-10);
}

TEST(CheckT35, GridCertificate) {
    const auto s = check_T35();
    EXPECT_FALSE(s.exists);
    EXPECT_FALSE(s.config.has_value());
    ASSERT_FALSE(s.grids.empty());
    const auto& g = s.grids.front();
    EXPECT_GE(g.points, 1998);
    EXPECT_GT(g.min_value, 0.0);
    EXPECT_NEAR(g.lo, 0.0, 1e-6);
    EXPECT_NEAR(g.hi, 4 * pi / 3, 1e-6);
}

TEST(SolveT36, RootConfigurationAndMasses) {
    const auto s = solve_T36();
    ASSERT_TRUE(s.exists);
    EXPECT_NEAR(*s.theta0, 1.4127, 5e-4);
    EXPECT_NEAR(*s.theta0, 1.41265878235, 1e-10);
    EXPECT_GT(*s.theta0, pi / 3);
    EXPECT_LT(*s.theta0, 2 * pi / 3);
    EXPECT_NEAR(s.config->theta2, pi / 3, 1e-15);
    const double t0 = *s.theta0;
    const double m = k::value(5 * pi / 3 - 2 * t0) / (2 * k::value(t0));
    EXPECT_LT(max_abs(residual_four(*s.config, MassVector({1, m, m, 1}))), 1e-9);
    EXPECT_LT(s.residual, 1e-9);
}

TEST(SolveT36, RecordsRejectedSubcases) {
    const auto s = solve_T36();
    EXPECT_GE(s.rejected.size(), 2u);
    EXPECT_GE(s.grids.size(), 2u);
    for (const auto& r : s.rejected) {
        EXPECT_FALSE(r.label.empty());
        EXPECT_FALSE(r.reason.empty());
    }
}

TEST(SolveT37, MirrorsT36) {
    const auto s36 = solve_T36();
    const auto s = solve_T37();
    ASSERT_TRUE(s.exists);
    EXPECT_NEAR(*s.theta0, *s36.theta0, 1e-12);
    EXPECT_NEAR(s.config->theta2, 2.4106, 1e-3);
    EXPECT_NEAR(s.config->theta4, pi / 3, 1e-12);
}

TEST(SolveT37, AsymmetricCompliantMasses) {
    // Substituting f(theta4) = 0 into the system leaves mu2 = mu3 and
    // (mu1 + mu4) f(theta0) = mu2 f(5pi/3 - 2 theta0); mu1 and mu4 may differ.
    const auto s = solve_T37();
    const double t0 = *s.theta0;
    const double q = k::value(5 * pi / 3 - 2 * t0) / k::value(t0);
    for (double split : {0.5, 0.2, 0.8}) {
        const MassVector mu({split * q, 1.0, 1.0, (1 - split) * q});
        EXPECT_LT(max_abs(residual_four(*s.config, mu)), 1e-9) << split;
    }
    ASSERT_TRUE(s.mass_condition.compliant.has_value());
    EXPECT_LT(max_abs(residual_four(*s.config, *s.mass_condition.compliant)), 1e-9);
}

TEST(SolveCase, DispatchesEveryTag) {
    EXPECT_EQ(solve_case(TheoremTag::T35).tag, TheoremTag::T35);
    EXPECT_EQ(solve_case(TheoremTag::T34).tag, TheoremTag::T34);
}

TEST(SymmetricProperty, ExistingCasesCloseUnderCompliantMasses) {
    for (auto tag : {TheoremTag::T32, TheoremTag::T33, TheoremTag::T34, TheoremTag::T36,
                     TheoremTag::T37}) {
        const auto s = solve_case(tag);
        ASSERT_TRUE(s.exists) << to_string(tag);
        ASSERT_TRUE(s.mass_condition.compliant.has_value()) << to_string(tag);
        EXPECT_LT(max_abs(residual_four(*s.config, *s.mass_condition.compliant)), 1e-9)
            << to_string(tag);
        EXPECT_LT(s.residual, 1e-9) << to_string(tag);
    }
}

TEST(SymmetricProperty, ExactlyOneKernelValueVanishes) {
    const std::pair<TheoremTag, KernelTerm> expected[] = {
        {TheoremTag::T32, KernelTerm::F12}, {TheoremTag::T33, KernelTerm::F12},
        {TheoremTag::T34, KernelTerm::F12}, {TheoremTag::T36, KernelTerm::F2},
        {TheoremTag::T37, KernelTerm::F4}};
    for (const auto& [tag, term] : expected) {
        const auto zero = vanishing_terms(kernel_values(*solve_case(tag).config));
        ASSERT_EQ(zero.size(), 1u) << to_string(tag);
        EXPECT_EQ(zero[0], term) << to_string(tag);
    }
}

TEST(SymmetricProperty, SolversAreDeterministic) {
    EXPECT_EQ(*solve_T32().theta0, *solve_T32().theta0);
    EXPECT_EQ(*solve_T36().theta0, *solve_T36().theta0);
}

}  // namespace
