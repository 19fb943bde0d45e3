#include <doctest.h>

#include <cmath>

#include "flab/conv.hpp"
#include "flab/l2.hpp"
#include "test_support.hpp"

using namespace flab;
using flab::testing::rng;
using flab::testing::simpson;
using flab::testing::uniform;

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * kPi);

std::vector<double> grid(double a, double b, int n)
{
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(a + (b - a) * i / (n - 1));
    return g;
}

} // namespace

TEST_CASE("grid seminorm")
{
    CHECK(grid_l2({0.0}, {cplx(3.0, 4.0)}) == 5.0);
    // ∫_0^1 1 = 1 exactly under the trapezoid rule
    CHECK(grid_l2(grid(0.0, 1.0, 11), std::vector<cplx>(11, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(grid_l2({0.0, 1.0}, {1.0}), Error);
}

TEST_CASE("L2 transform by truncation")
{
    L2TransformPlan plan{Function::gaussian(1.0), {8.0, 16.0}, grid(-4.0, 4.0, 17), 1e-8};
    const L2TransformResult g = l2_transform(plan);
    for (std::size_t i = 0; i < g.y.size(); ++i) {
        const double y = g.y[i];
        CHECK(std::abs(g.values[i] - std::exp(-y * y / 4.0) / std::sqrt(2.0)) < 1e-8);
    }
    CHECK(g.final_gap < 1e-12);

    plan = L2TransformPlan{Function::indicator(-1.0, 1.0), {1.0, 2.0, 4.0}, {0.5, 1.0, 2.0, 7.0}, 1e-9};
    const L2TransformResult chi = l2_transform(plan);
    for (std::size_t i = 0; i < chi.y.size(); ++i) {
        const double y = chi.y[i];
        CHECK(std::abs(chi.values[i] - std::sqrt(2.0 / kPi) * std::sin(y) / y) < 1e-9);
    }
    REQUIRE(chi.gaps.size() == 2);
    CHECK(chi.gaps[0] < 1e-12);
    CHECK(chi.gaps[1] < 1e-12);

    // default schedule on a compactly supported function: the gap vanishes
    plan = L2TransformPlan{Function::bump(), {}, grid(-3.0, 3.0, 7), 1e-9};
    plan.truncation_schedule = {2.0, 4.0, 8.0, 16.0};
    CHECK(l2_transform(plan).final_gap < 1e-12);
}

TEST_CASE("L2 transform of a function outside L1")
{
    // D_1 ∈ L² \ L¹; its transform is the indicator of [−1, 1] scaled by 1/√2π.
    L2TransformPlan plan{Function::dirichlet_kernel(1.0), {2.0, 4.0, 8.0, 16.0}, grid(-3.0, 3.0, 25), 1e-6};
    CHECK_THROWS_AS(l2_transform(plan), Error);
    try {
        l2_transform(plan);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotCauchy);
    }
    // the gaps still shrink along the schedule
    plan.tol = 1.0;
    const L2TransformResult r = l2_transform(plan);
    CHECK(r.gaps.back() < r.gaps.front());
    CHECK_THROWS_AS(l2_transform(L2TransformPlan{Function::gaussian(1.0), {4.0, 2.0}, {0.0}, 1e-6}), Error);
    CHECK_THROWS_AS(l2_transform(L2TransformPlan{Function::gaussian(1.0), {2.0}, {}, 1e-6}), Error);
}

TEST_CASE("Plancherel defect")
{
    // independent oracle for the indicator: (1/π)∫(2 sin²y / y²) dy = 2 since ∫sin²y/y² = π
    const double sinc2 = 2.0 * simpson([](double y) { return y == 0.0 ? 1.0 : std::pow(std::sin(y) / y, 2); }, 0.0,
                                       2000.0, 4000000) +
                         2.0 * 0.5 / 2000.0;  // tail ∫_R^∞ sin²y/y² ≈ 1/(2R)
    CHECK(std::abs(sinc2 - kPi) < 1e-6);

    const PlancherelResult chi = plancherel_defect(Function::indicator(-1.0, 1.0));
    CHECK(chi.f_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    CHECK(chi.defect <= 1e-4);

    const PlancherelResult g = plancherel_defect(Function::gaussian(1.0));
    CHECK(g.f_norm * g.f_norm == doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-9));
    CHECK(g.defect <= 1e-6);

    const PlancherelResult b = plancherel_defect(Function::bump(), 1e-8);
    const double bump_l2 = std::sqrt(simpson([](double x) { return bump(x) * bump(x); }, -1.0, 1.0, 20000));
    CHECK(std::abs(b.f_norm - bump_l2) < 1e-8);
    CHECK(b.defect <= 1e-5);
    CHECK(b.transform_radius > 0.0);
}

TEST_CASE("property: isometry on compactly supported C1 functions")
{
    const std::vector<Function> fs = {
        Function::bump(),
        Function::bump().dilated(2.0).shifted(0.3),
        Function::piecewise_polynomial({-1.0, 1.0}, {{0.0, 0.0, 4.0, -4.0, 1.0}}),
    };
    for (const Function& f : fs) {
        REQUIRE(f.membership().c1);
        CHECK(plancherel_defect(f, 1e-8).defect <= 1e-5);
        const double n2 = std::pow(lp_norm(f, 2, 1e-12).value.real(), 2);
        const Function tilde = f.reflected().conjugated();
        CHECK(std::abs(convolve(f, tilde, 0.0, 1e-12) - n2) <= 1e-6);
    }
}

TEST_CASE("multiplication formula")
{
    const Function g = Function::gaussian(1.0);
    const MultiplicationResult gg = multiplication_formula_residual(g, g, Convention::Classic);
    CHECK(gg.residual <= 1e-6);
    CHECK_FALSE(gg.l2_path);
    // ∫√π e^{−y²/4} e^{−y²} dy = √π·√(π/(5/4))
    CHECK(std::abs(gg.lhs - std::sqrt(kPi) * std::sqrt(kPi / 1.25)) < 1e-9);
    CHECK(gg.lhs == gg.rhs);

    const MultiplicationResult ig =
        multiplication_formula_residual(Function::indicator(-1.0, 1.0), g, Convention::Classic);
    CHECK(ig.residual <= 1e-6);
    const MultiplicationResult igu =
        multiplication_formula_residual(Function::indicator(-1.0, 1.0), g, Convention::Unitary);
    CHECK(igu.residual <= 1e-6);
    CHECK(std::abs(ig.lhs / kSqrt2Pi - igu.lhs) < 1e-9);

    // L² path through D_1, which is not integrable
    const MultiplicationResult dl =
        multiplication_formula_residual(Function::dirichlet_kernel(1.0), Function::indicator(-2.0, 0.5),
                                        Convention::Classic, 1e-8);
    CHECK(dl.l2_path);
    CHECK(dl.residual <= 1e-5);

    CHECK_THROWS_AS(multiplication_formula_residual(Function::dirichlet_kernel(1.0),
                                                    Function::x_times(Function::poisson_kernel(1.0)), Convention::Classic),
                    Error);
}

TEST_CASE("property: Parseval pairing")
{
    const std::vector<std::pair<Function, Function>> pairs = {
        {Function::gaussian(1.0), Function::laplace(2.0)},
        {Function::indicator(-1.0, 1.0), Function::gaussian(0.5)},
        {Function::fejer_kernel(2.0), Function::laplace(1.0).shifted(0.4)},
    };
    for (const auto& [f, g] : pairs) {
        const Function fh = transform_function(f, Convention::Unitary);
        const Function gh = transform_function(g, Convention::Unitary);
        REQUIRE(fh.info().envelope);
        const cplx lhs = integrate_function(fh * gh.conjugated(), Domain::real_line(), 1e-9).value;
        const cplx rhs = integrate_function(f * g.conjugated(), Domain::real_line(), 1e-12).value;
        CHECK(std::abs(lhs - rhs) <= 1e-5);
    }
}

TEST_CASE("reflection inverse")
{
    const ReflectionResult g = reflection_inverse_residual(Function::gaussian(1.0), 0.7);
    CHECK(g.value.real() == doctest::Approx(0.6126264).epsilon(1e-7));
    CHECK(g.residual <= 1e-5);

    const ReflectionResult l = reflection_inverse_residual(Function::laplace(1.0), 0.0);
    CHECK(l.value.real() == 1.0);
    CHECK(l.residual <= 1e-4);

    // the indicator's transform is not integrable, so the round trip is a symmetric limit
    const ReflectionResult c = reflection_inverse_residual(Function::indicator(-1.0, 1.0), 0.25, 1e-7);
    CHECK(c.residual <= 1e-4);

    // even f: F⁻¹f = Ff pointwise
    auto gen = rng(41);
    const Function f = Function::laplace(1.5);
    for (int i = 0; i < 5; ++i) {
        const double x = uniform(gen, -3.0, 3.0);
        const cplx fwd = fourier(f, x, Convention::Unitary).value;
        const cplx inv = fourier(f, -x, Convention::Unitary).value;
        CHECK(std::abs(fwd - inv) < 1e-12);
    }
    CHECK_THROWS_AS(reflection_inverse_residual(Function::dirichlet_kernel(1.0), 0.0), Error);
}

TEST_CASE("positive transform")
{
    const PositiveTransformResult g = positive_transform_check(Function::gaussian(1.0));
    CHECK(g.integrable);
    CHECK(g.center_value == 1.0);
    CHECK(g.center_residual <= 1e-7);
    CHECK(g.min_probe >= 0.0);

    const PositiveTransformResult l = positive_transform_check(Function::laplace(1.0));
    CHECK(l.integrable);
    CHECK(std::abs(l.transform_integral - 2.0 * kPi) < 1e-7);
    CHECK(l.center_residual <= 1e-7);

    const PositiveTransformResult k = positive_transform_check(Function::fejer_kernel(1.0));
    CHECK(k.center_value == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-12));
    CHECK(std::abs(k.transform_integral - 1.0) < 1e-9);
    CHECK(k.center_residual <= 1e-9);

    CHECK_THROWS_AS(positive_transform_check(Function::indicator(-1.0, 1.0)), Error);
    try {
        positive_transform_check(Function::indicator(-1.0, 1.0));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NegativeTransform);
    }
    // the bump transform dips below zero near |y| ≈ 26
    try {
        positive_transform_check(Function::bump(), 1e-8);
        FAIL("expected NegativeTransform");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NegativeTransform);
    }
}
