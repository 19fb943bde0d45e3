#include <cmath>
#include <vector>

#include "doctest.h"
#include "flab/conv.hpp"
#include "flab/xform.hpp"
#include "test_support.hpp"

using namespace flab;
using flab::testing::rng;
using flab::testing::simpson;
using flab::testing::uniform;

namespace {

const double kSqrtPi = std::sqrt(kPi);

std::vector<Function> catalog()
{
    return {Function::gaussian(1.0),       Function::laplace(1.0),        Function::indicator(-1, 1),
            Function::poisson_kernel(1.0), Function::gauss_weierstrass(0.5), Function::bump(),
            Function::indicator(0.0, 2.5), Function::laplace(0.6).shifted(1.0)};
}

} // namespace

TEST_CASE("convolve examples")
{
    const Function g = Function::gaussian(1.0);
    CHECK(std::abs(convolve(g, g, 0.0) - std::sqrt(kPi / 2.0)) < 1e-9);
    CHECK(std::abs(convolve(g, g, 1.3) - std::sqrt(kPi / 2.0) * std::exp(-1.3 * 1.3 / 2.0)) < 1e-9);
    const Function chi = Function::indicator(-1, 1);
    CHECK(std::abs(convolve(chi, chi, 0.0) - 2.0) < 1e-12);
    CHECK(std::abs(convolve(chi, chi, 2.0)) < 1e-12);
    CHECK(std::abs(convolve(chi, chi, 0.5) - 1.5) < 1e-12);
    // Laplace ∗ indicator at 0: ∫_{−1}^{1} e^{−|t|} dt.
    CHECK(std::abs(convolve(Function::laplace(1.0), chi, 0.0) - 2.0 * (1.0 - std::exp(-1.0))) < 1e-10);
    // L2 pairing of two Dirichlet kernels: D_s ∗ D_t = D_{min(s,t)}.
    CHECK(std::abs(convolve(Function::dirichlet_kernel(1.0), Function::dirichlet_kernel(2.0), 0.7, 1e-8) -
                   Function::dirichlet_kernel(1.0)(0.7)) < 1e-6);
}

TEST_CASE("pairings")
{
    CHECK(convolution_pairing(Function::gaussian(1.0), Function::laplace(1.0)) == Pairing::L1_Linf);
    CHECK(convolution_pairing(Function::dirichlet_kernel(1.0), Function::dirichlet_kernel(2.0)) == Pairing::L2_L2);
    auto unbounded_l1 = Function::opaque("spike", [](double x) { return cplx(std::abs(x) < 1 ? 1 / std::sqrt(std::abs(x)) : 0.0, 0.0); },
                                         [] {
                                             FunctionInfo i;
                                             i.membership.l1 = true;
                                             i.support = Interval{-1, 1};
                                             return i;
                                         }());
    CHECK(convolution_pairing(unbounded_l1, unbounded_l1) == Pairing::L1_L1);
    const Function dir = Function::dirichlet_kernel(1.0);
    auto unbounded_l2_only = Function::opaque("u", [](double) { return cplx(0.0, 0.0); }, [] {
        FunctionInfo i;
        i.membership.l2 = false;
        return i;
    }());
    try {
        convolve(dir, unbounded_l2_only, 0.0);
        FAIL("expected NoValidPairing");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NoValidPairing);
    }
    CHECK(to_string(Pairing::L2_L2) == "L2*L2");
}

TEST_CASE("convolution node metadata")
{
    const Function c = convolution(Function::indicator(-1, 1), Function::indicator(0, 2));
    REQUIRE(c.info().support.has_value());
    CHECK(c.info().support->lo == -1.0);
    CHECK(c.info().support->hi == 3.0);
    CHECK(c.membership().l1);
    CHECK(c.membership().continuous);
    CHECK(c.membership().nonnegative);
    CHECK(c.info().sup_bound >= 2.0);
    for (double x : {-1.5, -0.5, 1.0, 2.5, 3.5}) {
        // Overlap of [−1,1] and [x−2, x].
        const double overlap = std::max(0.0, std::min(1.0, x) - std::max(-1.0, x - 2.0));
        CHECK(std::abs(c(x) - overlap) < 1e-12);
    }
    const Function gg = convolution(Function::gaussian(1.0), Function::gaussian(1.0));
    REQUIRE(gg.info().envelope.has_value());
    for (double x : {0.0, 1.0, 3.0, 6.0}) CHECK(std::abs(gg(x)) <= gg.info().envelope->bound(x) * (1 + 1e-12) + 1e-15);
    CHECK(convolution(Function::bump(), Function::laplace(1.0)).membership().c1);
}

TEST_CASE("convolution theorem")
{
    const Function g = Function::gaussian(1.0);
    const auto r = convolution_theorem_residual(g, g, 1.0);
    CHECK(std::abs(r.rhs - kPi * std::exp(-0.5)) < 1e-9);
    CHECK(std::abs(r.rhs - 1.9054722) < 1e-7);
    CHECK(r.residual <= 1e-5);
    CHECK(r.grid_points > 100);
    for (double y : {0.0, 2.0}) CHECK(convolution_theorem_residual(g, g, y).residual <= 1e-5);

    const auto li = convolution_theorem_residual(Function::laplace(1.0), Function::indicator(-1, 1), 0.0);
    CHECK(std::abs(li.rhs - 4.0) < 1e-9);
    CHECK(std::abs(li.lhs - 4.0) < 1e-5);

    const Function chi = Function::indicator(-1, 1);
    const auto ii = convolution_theorem_residual(chi, chi, kPi);
    CHECK(std::abs(ii.rhs) < 1e-12);
    CHECK(std::abs(ii.lhs) < 1e-6);

    CHECK_THROWS_AS(convolution_theorem_residual(Function::dirichlet_kernel(1.0), g, 0.0), Error);
}

TEST_CASE("property: commutativity and distributivity")
{
    auto gen = rng(31);
    const auto cat = catalog();
    for (int i = 0; i < 16; ++i) {
        const Function& f = cat[static_cast<std::size_t>(i) % cat.size()];
        const Function& g = cat[static_cast<std::size_t>(3 * i + 2) % cat.size()];
        const Function& h = cat[static_cast<std::size_t>(5 * i + 1) % cat.size()];
        const double x = uniform(gen, -3.0, 3.0);
        const auto fg = convolve(ConvolutionRequest{f, g, x, 1e-10});
        const auto gf = convolve(ConvolutionRequest{g, f, x, 1e-10});
        CHECK(std::abs(fg.value - gf.value) <= 2.0 * (fg.error_estimate + gf.error_estimate) + 1e-14);
        const auto fh = convolve(ConvolutionRequest{f, h, x, 1e-10});
        const auto fsum = convolve(ConvolutionRequest{f, g + h, x, 1e-10});
        CHECK(std::abs(fsum.value - fg.value - fh.value) <=
              2.0 * (fsum.error_estimate + fg.error_estimate + fh.error_estimate) + 1e-14);
    }
}

TEST_CASE("property: Hölder sup bounds on a grid")
{
    const auto cat = catalog();
    auto gen = rng(32);
    for (int i = 0; i < 6; ++i) {
        const Function& f = cat[static_cast<std::size_t>(i)];
        const Function& g = cat[static_cast<std::size_t>(i + 2) % cat.size()];
        const double l1_inf = lp_norm(f, 1).value.real() * g.info().sup_bound;
        const double l2_l2 = lp_norm(f, 2).value.real() * lp_norm(g, 2).value.real();
        for (int k = 0; k < 40; ++k) {
            const double x = uniform(gen, -6.0, 6.0);
            const double v = std::abs(convolve(f, g, x));
            CHECK(v <= l1_inf + 1e-9);
            CHECK(v <= l2_l2 + 1e-9);
        }
    }
}

TEST_CASE("property: L2 pairings vanish at infinity")
{
    const std::vector<std::pair<Function, Function>> pairs = {
        {Function::dirichlet_kernel(1.0), Function::dirichlet_kernel(2.0)},
        {Function::dirichlet_kernel(1.0), Function::poisson_kernel(1.0)},
        {Function::poisson_kernel(0.5), Function::indicator(-1, 1)},
    };
    for (const auto& [f, g] : pairs) {
        // Largest modulus over one period-length window starting at X.
        double prev = kInf;
        for (double X : {10.0, 20.0, 40.0}) {
            double m = 0.0;
            for (int k = 0; k < 8; ++k) {
                const double x = X + 2.0 * kPi * k / 8.0;
                m = std::max(m, std::abs(convolve(ConvolutionRequest{f, g, x, 1e-8}).value));
            }
            CHECK(m <= prev + 2e-8);
            prev = m;
        }
    }
}

TEST_CASE("property: Young's L1 bound")
{
    const auto cat = catalog();
    for (std::size_t i = 0; i + 1 < cat.size(); i += 2) {
        const Function& f = cat[i];
        const Function& g = cat[i + 1];
        const double bound = lp_norm(f, 1).value.real() * lp_norm(g, 1).value.real();
        const double n = lp_norm(convolution(f, g, 1e-11), 1, 1e-7).value.real();
        CHECK(n <= bound + 1e-6);
    }
}

TEST_CASE("scaled identities")
{
    const Function b = Function::bump();
    const Function e1 = make_scaled_identity(b, 1.0);
    for (double x : {-0.9, 0.0, 0.3}) CHECK(e1(x) == b(x));
    const Function e5 = make_scaled_identity(b, 5.0);
    CHECK(std::abs(integrate_function(e5, Domain::real_line(), 1e-12).value - 1.0) < 1e-8);
    REQUIRE(e5.info().support.has_value());
    CHECK(e5.info().support->hi == doctest::Approx(0.2));

    const auto ai = ApproximateIdentity::scaled(b, {2.0, 10.0});
    // e₂ is supported in [−1/2, 1/2], so a cut at δ = 1/2 sees no mass for either member.
    CHECK(ai.mass_outside(0, 0.5) == 0.0);
    CHECK(ai.mass_outside(1, 0.5) == 0.0);
    CHECK(ai.mass_outside(1, 0.2) < ai.mass_outside(0, 0.2));
    CHECK(ai.mass_outside(0, 0.2) > 0.0);

    CHECK_THROWS_AS(make_scaled_identity(Function::gaussian(1.0), 2.0), Error);
    CHECK_THROWS_AS(make_scaled_identity(b.scaled(2.0), 2.0), Error);
    CHECK_THROWS_AS(make_scaled_identity(b, 0.0), Error);
    CHECK_THROWS_AS(ApproximateIdentity::fejer({4.0, 2.0}), Error);
    CHECK_THROWS_AS(ApproximateIdentity::poisson({0.1, 0.5}), Error);
}

TEST_CASE("property: approximate identity members")
{
    const std::vector<ApproximateIdentity> fams = {
        ApproximateIdentity::scaled(Function::bump(), {1.0, 2.0, 4.0, 8.0}),
        ApproximateIdentity::fejer({1.0, 2.0, 4.0, 8.0}),
        ApproximateIdentity::poisson({1.0, 0.5, 0.25, 0.125}),
        ApproximateIdentity::gauss_weierstrass({1.0, 0.5, 0.25, 0.125}),
    };
    for (const auto& ai : fams) {
        double prev = kInf;
        for (std::size_t i = 0; i < ai.size(); ++i) {
            const Function e = ai.member(i);
            CHECK(e.membership().nonnegative);
            CHECK(std::abs(integrate_function(e, Domain::real_line(), 1e-11).value - 1.0) < 1e-8);
            const double out = ai.mass_outside(i, 0.5);
            CHECK(out <= prev);
            prev = out;
        }
    }
}

TEST_CASE("approx_identity_error")
{
    const Function g = Function::gaussian(1.0);
    const auto fej = ApproximateIdentity::fejer({4.0, 8.0, 16.0});
    double prev = kInf;
    for (std::size_t i = 0; i < fej.size(); ++i) {
        const double e = approx_identity_error(fej, g, i, ErrorNorm::SupOnGrid);
        CHECK(e < prev);
        prev = e;
    }
    // Fejér mass check via the transform at 0.
    CHECK(std::abs(fourier(Function::fejer_kernel(3.0), 0.0).value - 1.0) < 1e-8);

    const Function chi = Function::indicator(-1, 1);
    const auto sb = ApproximateIdentity::scaled(Function::bump(), {2.0, 4.0, 8.0});
    prev = kInf;
    for (std::size_t i = 0; i < sb.size(); ++i) {
        const double e = approx_identity_error(sb, chi, i, ErrorNorm::L1);
        CHECK(e < prev);
        prev = e;
    }
    // Oracle: ‖e_n∗χ − χ‖₁ = 2·∫ over the two smoothed edges = (2/n)·2∫_0^1 Φ(u)du with Φ the bump CDF.
    auto cdf = [](double u) { return simpson([](double s) { return bump(s); }, -1.0, u, 2000); };
    const double edge = 2.0 * simpson([&](double u) { return cdf(-u); }, 0.0, 1.0, 400);
    CHECK(approx_identity_error(sb, chi, 0, ErrorNorm::L1) == doctest::Approx(2.0 * edge / 2.0).epsilon(1e-6));

    prev = kInf;
    for (std::size_t i = 0; i < sb.size(); ++i) {
        const double e = approx_identity_error(sb, chi, i, ErrorNorm::L2);
        CHECK(e < prev);
        prev = e;
    }

    for (const Function& w : weak_star_witnesses()) {
        prev = kInf;
        const double first = approx_identity_error(sb, chi, 0, ErrorNorm::WeakStar, w);
        for (std::size_t i = 0; i < sb.size(); ++i) {
            const double e = approx_identity_error(sb, chi, i, ErrorNorm::WeakStar, w);
            CHECK(e <= prev + 1e-12);
            prev = e;
        }
        CHECK(prev < 0.5 * first);
    }

    try {
        approx_identity_error(fej, chi, 0, ErrorNorm::SupOnGrid);
        FAIL("expected PreconditionViolated");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PreconditionViolated);
    }
    CHECK_THROWS_AS(approx_identity_error(fej, chi, 0, ErrorNorm::WeakStar), Error);
    CHECK(sup_grid(g).size() == kSupGridPoints);
}

TEST_CASE("smoothing: derivative passes onto the smooth factor")
{
    const Function b = Function::bump();
    CHECK(smoothed_derivative_residual(b, Function::indicator(-1, 1), 0.3) <= 1e-5);
    CHECK(smoothed_derivative_residual(b, Function::indicator(-1, 1), 10.0) == 0.0);
    CHECK(smoothed_derivative_residual(b, Function::laplace(1.0), 0.0) <= 1e-5);
    CHECK(std::abs(convolve(b.derivative(), Function::laplace(1.0), 0.0)) < 1e-12);
    CHECK_THROWS_AS(smoothed_derivative_residual(Function::laplace(1.0), b, 0.0), Error);

    // e_n ∗ χ is C¹: central differences at two step sizes agree.
    const Function s = convolution(make_scaled_identity(b, 4.0), Function::indicator(-1, 1), 1e-12);
    CHECK(s.membership().c1);
    for (double x : {-1.1, -0.95, 0.9, 1.2}) {
        const cplx d1 = (s(x + 1e-3) - s(x - 1e-3)) / 2e-3;
        const cplx d2 = (s(x + 5e-4) - s(x - 5e-4)) / 1e-3;
        CHECK(std::abs(d1 - d2) < 1e-4);
    }
}
