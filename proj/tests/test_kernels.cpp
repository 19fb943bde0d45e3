#include <doctest.h>

#include <cmath>

#include "flab/kernels.hpp"
#include "flab/xform.hpp"
#include "test_support.hpp"

using namespace flab;
using flab::testing::rng;
using flab::testing::simpson;
using flab::testing::uniform;

namespace {

// P_u ∗ χ_[−1,1] from the arctan antiderivative.
double poisson_indicator(double x, double u)
{
    return (std::atan((1.0 - x) / u) + std::atan((1.0 + x) / u)) / kPi;
}

} // namespace

TEST_CASE("kernel examples")
{
    CHECK(std::abs(eval_kernel(KernelFamily::dirichlet(1.0), kPi)) < 1e-16);
    CHECK(eval_kernel(KernelFamily::fejer(2.0 * kPi), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(eval_kernel(KernelFamily::poisson(1.0), 0.0) == doctest::Approx(0.3183099).epsilon(1e-7));
    CHECK(eval_kernel(KernelFamily::gauss_weierstrass(2.0), 1.0) ==
          doctest::Approx(std::exp(-0.5) / std::sqrt(2.0 * kPi)).epsilon(1e-15));

    CHECK(eval_kernel_hat(KernelFamily::fejer(3.0), 0.0) == 1.0);
    CHECK(eval_kernel_hat(KernelFamily::dirichlet(2.0), 2.5) == 0.0);
    CHECK(eval_kernel_hat(KernelFamily::dirichlet(2.0), -1.5) == 1.0);
    CHECK(eval_kernel_hat(KernelFamily::poisson(1.0), 2.0) == doctest::Approx(0.1353353).epsilon(1e-7));
    CHECK(eval_kernel_hat(KernelFamily::fejer(2.0), 1.0) == 0.5);

    CHECK_THROWS_AS(eval_kernel(KernelFamily::poisson(0.0), 1.0), Error);
    CHECK_THROWS_AS(eval_kernel_hat(KernelFamily::fejer(-1.0), 1.0), Error);
    CHECK(kernel_kind_from_string(to_string(KernelKind::GaussWeierstrass)) == KernelKind::GaussWeierstrass);
    CHECK_THROWS_AS(kernel_kind_from_string("box"), Error);
}

TEST_CASE("removable singularities are smooth")
{
    for (double t : {0.5, 1.0, 7.0}) {
        const double d0 = t / kPi;
        const double k0 = t / (2.0 * kPi);
        for (double x : {1e-9, 1e-6, 2e-5 / t, 1.5e-4 / t}) {
            const double dx = std::sin(t * x) / (kPi * x);
            const double kx = std::pow(std::sin(0.5 * t * x) / (0.5 * x), 2) / (2.0 * kPi * t);
            CHECK(std::abs(eval_kernel(KernelFamily::dirichlet(t), x) - dx) <= 1e-12 * d0);
            CHECK(std::abs(eval_kernel(KernelFamily::fejer(t), x) - kx) <= 1e-12 * k0);
        }
        CHECK(eval_kernel(KernelFamily::dirichlet(t), 0.0) == doctest::Approx(d0).epsilon(1e-15));
        CHECK(eval_kernel(KernelFamily::fejer(t), 0.0) == doctest::Approx(k0).epsilon(1e-15));
    }
}

TEST_CASE("closed forms agree with the library functions")
{
    auto gen = rng(31);
    for (KernelKind kind : {KernelKind::Dirichlet, KernelKind::Fejer, KernelKind::Poisson, KernelKind::GaussWeierstrass}) {
        for (int i = 0; i < 20; ++i) {
            const KernelFamily k{kind, uniform(gen, 0.2, 5.0)};
            const double x = uniform(gen, -10.0, 10.0);
            const double y = uniform(gen, -10.0, 10.0);
            CHECK(std::abs(eval_kernel(k, x) - k.space()(x).real()) < 1e-14);
            if (kind != KernelKind::Dirichlet || std::abs(std::abs(y) - k.param) > 1e-12) {
                CHECK(std::abs(eval_kernel_hat(k, y) - k.hat()(y).real()) < 1e-14);
            }
        }
    }
}

TEST_CASE("property: approximate identities are nonnegative with unit mass")
{
    auto gen = rng(32);
    for (KernelKind kind : {KernelKind::Fejer, KernelKind::Poisson, KernelKind::GaussWeierstrass}) {
        for (int i = 0; i < 5; ++i) {
            const KernelFamily k{kind, uniform(gen, 0.1, 4.0)};
            CHECK(k.approximate_identity());
            const Function f = k.space();
            CHECK(f.membership().nonnegative);
            CHECK(std::abs(integrate_function(f, Domain::real_line(), 1e-10).value.real() - 1.0) < 1e-8);
            for (int j = 0; j < 50; ++j) CHECK(eval_kernel(k, uniform(gen, -50.0, 50.0)) >= 0.0);
        }
    }
    CHECK_FALSE(KernelFamily::dirichlet(1.0).approximate_identity());
    CHECK_THROWS_AS(approximate_identity(KernelKind::Dirichlet, {1.0, 2.0}), Error);
    CHECK(approximate_identity(KernelKind::Fejer, {1.0, 2.0}).size() == 2);
    CHECK_THROWS_AS(approximate_identity(KernelKind::Poisson, {0.1, 0.5}), Error);
}

TEST_CASE("property: space and hat forms are a transform pair")
{
    auto gen = rng(33);
    for (const KernelFamily& k :
         {KernelFamily::fejer(1.5), KernelFamily::poisson(0.7), KernelFamily::gauss_weierstrass(0.5)}) {
        const Function f = k.space();
        for (int i = 0; i < 20; ++i) {
            const double y = uniform(gen, -4.0, 4.0);
            const cplx v = fourier(f, y, Convention::Classic).value;
            CHECK(std::abs(v - eval_kernel_hat(k, y)) < 1e-6);
        }
    }
}

TEST_CASE("Dirichlet kernel as a generalized transform")
{
    const double t = 2.0;
    const Function hat = KernelFamily::dirichlet(t).hat();
    for (double x : {0.0, 0.5, -1.3, 3.0}) {
        const LimitResult r = inverse_symmetric(hat, x, Convention::Classic, default_inversion_schedule(), 1e-8);
        CHECK(std::abs(r.value - eval_kernel(KernelFamily::dirichlet(t), x)) < 1e-4);
    }
}

TEST_CASE("Fejer mass outside a neighbourhood")
{
    const ApproximateIdentity ai = approximate_identity(KernelKind::Fejer, {1.0, 4.0, 16.0});
    for (std::size_t i = 0; i < ai.size(); ++i) {
        const double t = ai.schedule()[i];
        for (double delta : {0.5, 1.0, 2.0}) {
            const double m = ai.mass_outside(i, delta);
            CHECK(m >= 0.0);
            CHECK(m <= 8.0 / (2.0 * kPi * t * delta));
        }
    }
}

TEST_CASE("Laplace pair endpoint by two-sided limit")
{
    for (double x : {-2.0, 0.0, 1.0}) {
        const Integrand g = [x](double s) { return 2.0 * std::polar(1.0, x * s) / (1.0 + s * s) / (2.0 * kPi); };
        LimitOptions opts;
        opts.tol = 1e-7;
        if (x != 0.0) opts.frequency_hint = std::abs(x);
        const LimitResult r = two_sided_limit(g, default_inversion_schedule(), opts);
        CHECK(std::abs(r.value - std::exp(-std::abs(x))) < 1e-5);
    }
}

TEST_CASE("D-hat self convolution")
{
    CHECK(dhat_selfconvolution(1.0, 0.0) == 2.0);
    CHECK(dhat_selfconvolution(1.0, 1.0) == 1.0);
    CHECK(dhat_selfconvolution(1.0, 3.0) == 0.0);
    auto gen = rng(34);
    for (int i = 0; i < 100; ++i) {
        const double t = uniform(gen, 0.1, 10.0);
        for (double y : {0.0, t, 2.0 * t, 3.0 * t}) {
            CHECK(dhat_selfconvolution(t, y) == 2.0 * t * eval_kernel_hat(KernelFamily::fejer(2.0 * t), y));
        }
        // independent oracle: Simpson on the overlap indicator
        const double y = uniform(gen, -3.0 * t, 3.0 * t);
        const double oracle = simpson(
            [&](double s) {
                return eval_kernel_hat(KernelFamily::dirichlet(t), y - s) * eval_kernel_hat(KernelFamily::dirichlet(t), s);
            },
            -t, t, 20000);
        CHECK(std::abs(dhat_selfconvolution(t, y) - oracle) < 1e-3 * t);
    }
}

TEST_CASE("Fejer-Dirichlet identity")
{
    CHECK(fejer_dirichlet_identity_residual(1.0, 1.0) <= 1e-12);
    const double both = 2.0 * std::sin(1.0) * std::sin(1.0) / kPi;
    CHECK(both == doctest::Approx(0.4507735).epsilon(1e-7));
    CHECK(std::abs(2.0 * eval_kernel(KernelFamily::fejer(2.0), 1.0) - both) < 1e-14);
    CHECK(fejer_dirichlet_identity_residual(1.0, 0.0) <= 1e-12);
    CHECK(fejer_dirichlet_identity_residual(1.0, 1e-7) <= 1e-12);
    CHECK(fejer_dirichlet_identity_residual(3.0, 2.0) <= 1e-12);
    auto gen = rng(35);
    for (int i = 0; i < 100; ++i) {
        CHECK(fejer_dirichlet_identity_residual(uniform(gen, 0.01, 10.0), uniform(gen, -20.0, 20.0)) <= 1e-12);
    }
}

TEST_CASE("Poisson integral")
{
    const Function chi = Function::indicator(-1.0, 1.0);
    CHECK(std::abs(poisson_integral(chi, 0.0, 1.0).value - 0.5) < 1e-10);
    double prev = 0.0;
    for (double u : {1.0, 0.3, 0.1, 0.01, 0.001}) {
        const double v = poisson_integral(chi, 0.0, u).value.real();
        CHECK(v > prev);
        CHECK(v < 1.0);
        CHECK(std::abs(v - 2.0 / kPi * std::atan(1.0 / u)) < 1e-9);
        prev = v;
    }
    const double g = poisson_integral(Function::gaussian(1.0), 0.0, 100.0).value.real();
    CHECK(g <= 0.01);
    CHECK(g <= std::sqrt(kPi) / (100.0 * kPi));

    auto gen = rng(36);
    for (int i = 0; i < 30; ++i) {
        const double x = uniform(gen, -5.0, 5.0);
        const double u = uniform(gen, 0.05, 3.0);
        CHECK(std::abs(poisson_integral(chi, x, u).value - poisson_indicator(x, u)) < 1e-9);
    }
    CHECK_THROWS_AS(poisson_integral(chi, 0.0, 0.0), Error);
}

TEST_CASE("Poisson semigroup")
{
    struct Case {
        double u, v, x, exact;
    };
    for (const Case& c : {Case{0.5, 0.5, 0.0, 1.0 / kPi}, Case{0.3, 0.7, 2.0, 1.0 / (5.0 * kPi)},
                          Case{1.0, 2.0, -1.0, 3.0 / (10.0 * kPi)}}) {
        const SemigroupResult r = semigroup_residual(c.u, c.v, c.x);
        CHECK(std::abs(r.exact - c.exact) < 1e-15);
        CHECK(r.residual <= 1e-5);
    }
    auto gen = rng(37);
    for (int i = 0; i < 10; ++i) {
        const SemigroupResult r = semigroup_residual(uniform(gen, 0.05, 3.0), uniform(gen, 0.05, 3.0), uniform(gen, -10.0, 10.0));
        CHECK(r.residual <= 1e-7);
        const double y = uniform(gen, -5.0, 5.0);
        CHECK(semigroup_hat_residual(0.4, 0.6, y) <= 1e-15);
    }
}

TEST_CASE("Poisson integrals are harmonic")
{
    const Function chi = Function::indicator(-1.0, 1.0);
    for (double x : {0.5, 0.0, -1.5}) CHECK(harmonicity_residual(chi, x, 1.0, 1e-2) <= 1e-3);
    const HalfPlaneFunction P = [](double x, double u) { return u / (kPi * (u * u + x * x)); };
    CHECK(harmonicity_residual(P, 0.0, 1.0, 1e-2) <= 1e-3);
    CHECK(harmonicity_residual(Function::gaussian(1.0), 0.0, 2.0, 1e-2) <= 1e-3);
    // a non-harmonic function is detected
    const HalfPlaneFunction q = [](double x, double u) { return x * x + u * u; };
    CHECK(harmonicity_residual(q, 0.0, 1.0, 1e-2) == doctest::Approx(4.0).epsilon(1e-6));
    CHECK_THROWS_AS(harmonicity_residual(chi, 0.0, 0.01, 1e-2), Error);
}

TEST_CASE("norm monotonicity")
{
    const Function chi = Function::indicator(-1.0, 1.0);
    const std::vector<double> us{1.0, 0.5, 0.25, 0.1};
    const auto l2 = norm_monotonicity_profile(chi, ProfileNorm::L2, us);
    REQUIRE(l2.size() == us.size());
    for (std::size_t i = 0; i < us.size(); ++i) {
        const double u = us[i];
        const double oracle = std::sqrt(2.0 * (simpson([u](double x) { return std::pow(poisson_indicator(x, u), 2); }, 0.0,
                                                       50.0, 200000) +
                                               // tail beyond 50 where P_u ∗ χ ≈ 2u/(πx²)
                                               std::pow(2.0 * u / kPi, 2) / (3.0 * 50.0 * 50.0 * 50.0)));
        CHECK(std::abs(l2[i] - oracle) < 1e-6);
        CHECK(l2[i] <= std::sqrt(2.0) + 1e-6);
        if (i > 0) CHECK(l2[i] >= l2[i - 1] - 1e-6);
    }

    const auto l1 = norm_monotonicity_profile(Function::gaussian(1.0), ProfileNorm::L1, {2.0, 0.5, 0.05});
    for (double v : l1) CHECK(std::abs(v - std::sqrt(kPi)) < 1e-7);

    const auto sup = norm_monotonicity_profile(chi, ProfileNorm::SupGrid, {1.0, 0.1});
    CHECK(sup[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(sup[1] >= sup[0]);
    CHECK(sup[1] <= 1.0);

    CHECK_THROWS_AS(norm_monotonicity_profile(chi, ProfileNorm::L2, {0.1, 1.0}), Error);
    CHECK_THROWS_AS(norm_monotonicity_profile(Function::dirichlet_kernel(1.0), ProfileNorm::L1, {1.0}), Error);
}

TEST_CASE("property: Poisson smoothing does not increase norms")
{
    auto gen = rng(38);
    for (const Function& f : {Function::laplace(1.0), Function::gaussian(2.0), Function::indicator(-0.5, 2.0)}) {
        const double n1 = lp_norm(f, 1).value.real();
        const double n2 = lp_norm(f, 2).value.real();
        const double u = uniform(gen, 0.05, 2.0);
        CHECK(norm_monotonicity_profile(f, ProfileNorm::L1, {u})[0] <= n1 + 1e-7);
        CHECK(norm_monotonicity_profile(f, ProfileNorm::L2, {u})[0] <= n2 + 1e-7);
    }
}
