#include "flab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "flab/conv.hpp"
#include "flab/kernels.hpp"
#include "flab/l2.hpp"
#include "flab/quad.hpp"

namespace flab {

namespace {

const double kSqrtPi = std::sqrt(kPi);

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << std::scientific << v;
    return os.str();
}

/// Several sub-assertions folded into one residual: the worst ratio of value to its own bound.
/// Paired with tolerance 1, the check passes iff every sub-assertion holds.
class Composite {
public:
    void bound(const std::string& label, double value, double limit)
    {
        worst_ = std::max(worst_, std::isfinite(value) ? value / limit : kInf);
        note(label + " = " + fmt(value) + " (<= " + fmt(limit) + ")");
    }

    /// next < prev, mapped to next/prev in [0, 1) when it holds and above 1 otherwise.
    void decreasing(const std::string& label, double prev, double next)
    {
        double r = 0.0;
        if (next < prev) {
            r = prev > 0.0 ? next / prev : 0.0;
        } else {
            r = 1.0 + std::max(1e-12, prev > 0.0 ? (next - prev) / prev : 1.0);
        }
        worst_ = std::max(worst_, r);
        note(label + ": " + fmt(prev) + " -> " + fmt(next));
    }

    CheckOutcome outcome() const { return {worst_, diag_.str()}; }

private:
    void note(const std::string& s)
    {
        if (!diag_.str().empty()) diag_ << "; ";
        diag_ << s;
    }
    double worst_ = 0.0;
    std::ostringstream diag_;
};

/// Largest value of a list of sub-residuals, all held to one tolerance.
class MaxOf {
public:
    void add(const std::string& label, double v)
    {
        worst_ = std::max(worst_, std::isfinite(v) ? v : kInf);
        if (!diag_.str().empty()) diag_ << "; ";
        diag_ << label << " = " << fmt(v);
    }
    CheckOutcome outcome() const { return {worst_, diag_.str()}; }

private:
    double worst_ = 0.0;
    std::ostringstream diag_;
};

std::string num(double v)
{
    std::ostringstream os;
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// acceptance checks
// ---------------------------------------------------------------------------

CheckOutcome eq7_gaussian()
{
    MaxOf m;
    const Function g = Function::gaussian(1.0);
    for (double y : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        const cplx v = fourier(g, y, Convention::Classic, 1e-10).value;
        m.add("y=" + num(y), std::abs(v - kSqrtPi * std::exp(-y * y / 4.0)));
    }
    return m.outcome();
}

CheckOutcome eq6_laplace_pair()
{
    Composite c;
    const Function l = Function::laplace(1.0);
    for (double y : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        const cplx v = fourier(l, y, Convention::Classic, 1e-10).value;
        c.bound("forward y=" + num(y), std::abs(v - 2.0 / (1.0 + y * y)), 1e-7);
    }
    const Function hat = *l.known_transform();
    for (double x : {-2.0, 0.0, 1.0}) {
        const LimitResult r = inverse_symmetric(hat, x, Convention::Classic, default_inversion_schedule(), 1e-7);
        c.bound("inverse x=" + num(x), std::abs(r.value - std::exp(-std::abs(x))), 1e-5);
    }
    return c.outcome();
}

CheckOutcome remark_indicator()
{
    Composite c;
    const Function chi = Function::indicator(-1.0, 1.0);
    for (double y : {0.1, 1.0, kPi, 10.0}) {
        const cplx v = fourier(chi, y, Convention::Classic, 1e-10).value;
        c.bound("forward y=" + num(y), std::abs(v - 2.0 * std::sin(y) / y), 1e-7);
    }
    const Function hat = *chi.known_transform();
    for (auto [x, expected] : {std::pair{0.0, 1.0}, std::pair{2.0, 0.0}}) {
        const LimitResult r = inverse_symmetric(hat, x, Convention::Classic, default_inversion_schedule(), 1e-6);
        c.bound("inverse x=" + num(x), std::abs(r.value - expected), 1e-4);
    }
    return c.outcome();
}

CheckOutcome eq5_convolution_theorem()
{
    MaxOf m;
    const Function g = Function::gaussian(1.0);
    for (double y : {0.0, 1.0, 2.0}) m.add("y=" + num(y), convolution_theorem_residual(g, g, y).residual);
    return m.outcome();
}

CheckOutcome eq2_eq3_derivative_rules()
{
    MaxOf m;
    for (double y : {0.5, 1.0, 2.0}) {
        m.add("gaussian y=" + num(y), derivative_of_transform_residual(Function::gaussian(1.0), y, 1e-3, 1e-12));
        m.add("bump y=" + num(y), transform_of_derivative_residual(Function::bump(), y, 1e-11));
    }
    return m.outcome();
}

CheckOutcome sec2_fejer_dirichlet()
{
    Composite c;
    std::mt19937_64 gen(20240615);
    std::uniform_real_distribution<double> ts(0.01, 10.0);
    std::uniform_real_distribution<double> xs(-20.0, 20.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double t = ts(gen);
        const double x = xs(gen);
        worst = std::max(worst, fejer_dirichlet_identity_residual(t, x));
    }
    c.bound("identity at 100 (t, x)", worst, 1e-12);
    double mismatch = 0.0;
    for (double t : {0.5, 1.0, 3.0}) {
        for (double y : {0.0, t, 2.0 * t, 3.0 * t}) {
            mismatch = std::max(mismatch, std::abs(dhat_selfconvolution(t, y) -
                                                   2.0 * t * eval_kernel_hat(KernelFamily::fejer(2.0 * t), y)));
        }
    }
    // exact equality is required
    c.bound("self-convolution mismatch", mismatch == 0.0 ? 0.0 : 2.0, 1.0);
    return c.outcome();
}

CheckOutcome thm2_2_semigroup()
{
    MaxOf m;
    for (auto [u, v, x] : {std::tuple{0.5, 0.5, 0.0}, std::tuple{0.3, 0.7, 2.0}, std::tuple{1.0, 2.0, -1.0}}) {
        m.add("(u,v,x)=(" + num(u) + "," + num(v) + "," + num(x) + ")", semigroup_residual(u, v, x).residual);
    }
    return m.outcome();
}

CheckOutcome thm2_3_monotone()
{
    const Function chi = Function::indicator(-1.0, 1.0);
    const std::vector<double> us{1.0, 0.5, 0.25, 0.1};
    const std::vector<double> n = norm_monotonicity_profile(chi, ProfileNorm::L2, us);
    const double cap = std::sqrt(2.0);
    double violation = 0.0;
    std::ostringstream d;
    for (std::size_t i = 0; i < n.size(); ++i) {
        d << (i ? ", " : "profile ") << fmt(n[i]);
        if (i > 0) violation = std::max(violation, n[i - 1] - n[i]);
        violation = std::max(violation, n[i] - cap);
    }
    d << "; non-decreasing as u decreases and bounded by " << fmt(cap);
    return {violation, d.str()};
}

CheckOutcome def2_1_harmonic()
{
    MaxOf m;
    const Function chi = Function::indicator(-1.0, 1.0);
    for (double x : {0.5, 0.0, -1.5}) m.add("x=" + num(x), harmonicity_residual(chi, x, 1.0, 1e-2));
    return m.outcome();
}

CheckOutcome eq11_abel_inverse()
{
    Composite c;
    for (const auto& [name, f] : {std::pair{std::string("gaussian"), Function::gaussian(1.0)},
                                  std::pair{std::string("laplace"), Function::laplace(1.0)}}) {
        double prev = kInf;
        for (double eps : {0.1, 0.01, 0.001}) {
            const double e = std::abs(abel_inverse(f, 0.0, eps, 1e-10).value - 1.0);
            if (std::isfinite(prev)) c.decreasing(name + " eps=" + num(eps), prev, e);
            prev = e;
        }
        c.bound(name + " final error", prev, 2e-3);
    }
    return c.outcome();
}

CheckOutcome lemma3_2_plancherel()
{
    Composite c;
    c.bound("indicator", plancherel_defect(Function::indicator(-1.0, 1.0)).defect, 1e-4);
    c.bound("gaussian", plancherel_defect(Function::gaussian(1.0)).defect, 1e-6);
    c.bound("bump", plancherel_defect(Function::bump(), 1e-8).defect, 1e-5);
    return c.outcome();
}

CheckOutcome eq10_multiplication()
{
    MaxOf m;
    const Function g = Function::gaussian(1.0);
    m.add("(gaussian, gaussian)", multiplication_formula_residual(g, g, Convention::Classic).residual);
    m.add("(indicator, gaussian)",
          multiplication_formula_residual(Function::indicator(-1.0, 1.0), g, Convention::Classic).residual);
    return m.outcome();
}

CheckOutcome thm1_2_riemann_lebesgue()
{
    const std::vector<std::pair<double, double>> bands{{10.0, 20.0}, {20.0, 40.0}, {40.0, 80.0}};
    double violation = 0.0;
    std::ostringstream d;
    for (const auto& [name, f] : {std::pair{std::string("laplace"), Function::laplace(1.0)},
                                  std::pair{std::string("indicator"), Function::indicator(-1.0, 1.0)},
                                  std::pair{std::string("gaussian"), Function::gaussian(1.0)}}) {
        const std::vector<BandMaximum> p = riemann_lebesgue_profile(f, bands);
        if (!d.str().empty()) d << "; ";
        d << name;
        for (std::size_t i = 0; i < p.size(); ++i) {
            d << (i ? ", " : " ") << fmt(p[i].max);
            if (i > 0) violation = std::max(violation, p[i].max - p[i - 1].max - p[i].error - p[i - 1].error);
        }
    }
    d << "; band maxima non-increasing up to certified quadrature error";
    return {violation, d.str()};
}

CheckOutcome thm1_7_approx_identity()
{
    Composite c;
    const Function chi = Function::indicator(-1.0, 1.0);
    const ApproximateIdentity fej = ApproximateIdentity::fejer({2.0, 4.0, 8.0});
    const ApproximateIdentity sb = ApproximateIdentity::scaled(Function::bump(), {2.0, 4.0, 8.0});
    for (const auto& [name, ai] : {std::pair{std::string("fejer"), fej}, std::pair{std::string("scaled bump"), sb}}) {
        double prev = kInf;
        for (std::size_t i = 0; i < ai.size(); ++i) {
            const double e = approx_identity_error(ai, chi, i, ErrorNorm::L1);
            if (i > 0) c.decreasing(name + " step " + std::to_string(i), prev, e);
            prev = e;
        }
    }
    return c.outcome();
}

CheckOutcome lemma3_x_positive_transform()
{
    MaxOf m;
    for (const auto& [name, f] : {std::pair{std::string("gaussian"), Function::gaussian(1.0)},
                                  std::pair{std::string("laplace"), Function::laplace(1.0)}}) {
        const PositiveTransformResult r = positive_transform_check(f, 1e-9);
        m.add(name, r.integrable ? r.center_residual : kInf);
    }
    return m.outcome();
}

// ---------------------------------------------------------------------------
// module invariants
// ---------------------------------------------------------------------------

CheckOutcome thm1_1_boundedness()
{
    MaxOf m;
    const std::vector<double> ys{-7.5, -2.0, -0.3, 0.0, 0.4, 1.0, 3.3, 12.0};
    const std::vector<double> hs{0.0, 1e-3, 0.1, 1.0};
    for (const auto& [name, f] :
         {std::pair{std::string("gaussian"), Function::gaussian(1.0)},
          std::pair{std::string("laplace"), Function::laplace(1.0)},
          std::pair{std::string("indicator"), Function::indicator(-1.0, 1.0)},
          std::pair{std::string("bump"), Function::bump()}}) {
        const BoundednessResult r = boundedness_continuity_check(f, ys, hs);
        m.add(name + " sup excess", r.sup_residual);
        m.add(name + " continuity excess", r.continuity_residual);
    }
    return m.outcome();
}

CheckOutcome laws_shift_dilation()
{
    MaxOf m;
    for (const auto& [name, f] : {std::pair{std::string("gaussian"), Function::gaussian(1.0)},
                                  std::pair{std::string("laplace"), Function::laplace(1.0)}}) {
        const LawResiduals r = transform_laws_residual(f, 0.7, 2.0, 1.3);
        m.add(name + " translation", r.translation);
        m.add(name + " modulation", r.modulation);
        m.add(name + " dilation", r.dilation);
        m.add(name + " linearity", r.linearity);
    }
    return m.outcome();
}

CheckOutcome thm1_5_sup_bound()
{
    MaxOf m;
    const Function f = Function::laplace(1.0);
    const Function g = Function::indicator(-0.5, 1.5);
    const double bound = lp_norm(f, 1, 1e-12).value.real() * 1.0;
    double excess = 0.0;
    for (int i = -8; i <= 8; ++i) {
        excess = std::max(excess, std::abs(convolve(f, g, 0.5 * i, 1e-11)) - bound);
    }
    m.add("L1-Linf excess", std::max(0.0, excess));
    const Function d = Function::dirichlet_kernel(1.0);
    const Function p = Function::poisson_kernel(1.0);
    const double l2bound = lp_norm(d, 2, 1e-10).value.real() * lp_norm(p, 2, 1e-10).value.real();
    excess = 0.0;
    for (double x : {0.0, 1.0, 3.0}) excess = std::max(excess, std::abs(convolve(d, p, x, 1e-9)) - l2bound);
    m.add("L2-L2 excess", std::max(0.0, excess));
    return m.outcome();
}

CheckOutcome thm1_8_smoothing()
{
    MaxOf m;
    const Function b = Function::bump();
    m.add("bump * indicator at 0.3", smoothed_derivative_residual(b, Function::indicator(-1.0, 1.0), 0.3));
    m.add("bump * laplace at 0", smoothed_derivative_residual(b, Function::laplace(1.0), 0.0));
    return m.outcome();
}

CheckOutcome thm1_9_scaled_identity()
{
    Composite c;
    const ApproximateIdentity sb = ApproximateIdentity::scaled(Function::bump(), {1.0, 2.0, 4.0});
    for (std::size_t i = 0; i < sb.size(); ++i) {
        const Function e = sb.member(i);
        c.bound("mass defect n=" + num(sb.schedule()[i]),
                std::abs(integrate_function(e, Domain::real_line(), 1e-12).value.real() - 1.0), 1e-8);
        if (i > 0) {
            c.decreasing("mass outside 0.2, n=" + num(sb.schedule()[i]), sb.mass_outside(i - 1, 0.2),
                         sb.mass_outside(i, 0.2));
        }
    }
    return c.outcome();
}

CheckOutcome eq9_product_rule()
{
    Composite c;
    const Function g = Function::gaussian(1.0);
    c.bound("(gaussian, gaussian) x=0", product_transform_residual(g, g, 0.0).residual, 1e-5);
    c.bound("(gaussian, laplace) x=1", product_transform_residual(g, Function::laplace(1.0), 1.0).residual, 1e-4);
    return c.outcome();
}

CheckOutcome def1_4_fourier_stieltjes()
{
    MaxOf m;
    MeasureSpec mu;
    mu.atoms = {{0.0, 1.0}, {1.0, 0.5}};
    mu.density = Function::gaussian(1.0);
    for (double y : {0.0, 0.7, 2.5}) {
        const cplx exact = 1.0 + 0.5 * std::polar(1.0, y) + kSqrtPi * std::exp(-y * y / 4.0);
        m.add("y=" + num(y), std::abs(fourier_stieltjes(mu, y, 1e-11) - exact));
    }
    return m.outcome();
}

CheckOutcome sec2_kernel_duality()
{
    MaxOf m;
    for (const KernelFamily& k :
         {KernelFamily::fejer(1.5), KernelFamily::poisson(0.7), KernelFamily::gauss_weierstrass(0.5)}) {
        const Function f = k.space();
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double y = -3.8 + 0.4 * i;
            worst = std::max(worst, std::abs(fourier(f, y, Convention::Classic).value - eval_kernel_hat(k, y)));
        }
        m.add(to_string(k.kind), worst);
    }
    return m.outcome();
}

CheckOutcome thm2_4_poisson_contraction()
{
    MaxOf m;
    const Function f = Function::laplace(1.0);
    const double n1 = lp_norm(f, 1, 1e-12).value.real();
    const double n2 = lp_norm(f, 2, 1e-12).value.real();
    const auto p1 = norm_monotonicity_profile(f, ProfileNorm::L1, {1.0, 0.1});
    const auto p2 = norm_monotonicity_profile(f, ProfileNorm::L2, {1.0, 0.1});
    for (std::size_t i = 0; i < p1.size(); ++i) {
        m.add("L1 excess " + std::to_string(i), std::max(0.0, p1[i] - n1));
        m.add("L2 excess " + std::to_string(i), std::max(0.0, p2[i] - n2));
    }
    return m.outcome();
}

CheckOutcome eq12_multiplication_l2()
{
    MaxOf m;
    const MultiplicationResult r = multiplication_formula_residual(
        Function::dirichlet_kernel(1.0), Function::indicator(-2.0, 0.5), Convention::Classic, 1e-8);
    m.add("(dirichlet, indicator)", r.residual);
    return m.outcome();
}

CheckOutcome thm3_1_reflection_inverse()
{
    Composite c;
    c.bound("gaussian x=0.7", reflection_inverse_residual(Function::gaussian(1.0), 0.7).residual, 1e-5);
    c.bound("laplace x=0", reflection_inverse_residual(Function::laplace(1.0), 0.0).residual, 1e-4);
    return c.outcome();
}

CheckOutcome lemma3_2_isometry_dense()
{
    MaxOf m;
    const Function b = Function::bump();
    const double n2 = std::pow(lp_norm(b, 2, 1e-13).value.real(), 2);
    m.add("(f * f~)(0) - |f|^2", std::abs(convolve(b, b.reflected().conjugated(), 0.0, 1e-13) - n2));
    return m.outcome();
}

CheckOutcome sec3_convention_bridge()
{
    MaxOf m;
    const double s = std::sqrt(2.0 * kPi);
    for (const auto& [name, f] : {std::pair{std::string("gaussian"), Function::gaussian(1.0)},
                                  std::pair{std::string("laplace"), Function::laplace(1.0)},
                                  std::pair{std::string("indicator"), Function::indicator(-1.0, 1.0)},
                                  std::pair{std::string("fejer"), Function::fejer_kernel(1.0)},
                                  std::pair{std::string("bump"), Function::bump()}}) {
        double worst = 0.0;
        for (double y : {0.5, 2.0}) {
            const cplx c = fourier(f, y, Convention::Classic).value;
            const cplx u = fourier(f, y, Convention::Unitary).value;
            worst = std::max(worst, std::abs(u - c / s));
        }
        m.add(name, worst);
    }
    return m.outcome();
}

CheckOutcome eq8_gauss_inverse()
{
    MaxOf m;
    const Function g = Function::gaussian(1.0);
    for (double alpha : {0.1, 0.01, 0.001}) {
        // W(·, α) ∗ e^{−x²} at 0 equals 1/√(1+α)
        m.add("alpha=" + num(alpha), std::abs(gauss_inverse(g, 0.0, alpha, 1e-11).value - 1.0 / std::sqrt(1.0 + alpha)));
    }
    return m.outcome();
}

CheckOutcome thm1_10_vanishing_integral()
{
    MaxOf m;
    m.add("x gaussian", std::abs(vanishing_transform_integral(Function::x_times(Function::gaussian(1.0))).value));
    m.add("x laplace", std::abs(vanishing_transform_integral(Function::x_times(Function::laplace(1.0))).value));
    return m.outcome();
}

CheckOutcome sec2_dirichlet_generalized()
{
    MaxOf m;
    const KernelFamily d = KernelFamily::dirichlet(2.0);
    const Function hat = d.hat();
    for (double x : {0.0, 0.5, -1.3}) {
        const LimitResult r = inverse_symmetric(hat, x, Convention::Classic, default_inversion_schedule(), 1e-8);
        m.add("x=" + num(x), std::abs(r.value - eval_kernel(d, x)));
    }
    return m.outcome();
}

std::vector<CheckSpec> build_registry()
{
    std::vector<CheckSpec> r = {
        {"eq7.gaussian", "Eq (7)", 1e-7, "l1", eq7_gaussian},
        {"eq6.laplace_pair", "Thm 1.11/Eq (6)", 1.0, "inversion", eq6_laplace_pair},
        {"remark.indicator", "Remark (symmetric-limit inversion)", 1.0, "inversion", remark_indicator},
        {"eq5.convolution_theorem", "Thm 1.6/Eq (5)", 1e-5, "l1", eq5_convolution_theorem},
        {"eq2_eq3.derivative_rules", "Eq (2), Eq (3)", 1e-5, "l1", eq2_eq3_derivative_rules},
        {"sec2.fejer_dirichlet", "§2 Fejér–Dirichlet identity, D̂∗D̂ = 2tK̂₂ₜ", 1.0, "kernels", sec2_fejer_dirichlet},
        {"thm2_2.semigroup", "Thm 2.2", 1e-5, "kernels", thm2_2_semigroup},
        {"thm2_3.monotone", "Thm 2.3", 1e-6, "kernels", thm2_3_monotone},
        {"def2_1.harmonic", "Def 2.1", 1e-3, "kernels", def2_1_harmonic},
        {"eq11.abel_inverse", "Lemma 3.5/Eq (11)", 1.0, "inversion", eq11_abel_inverse},
        {"lemma3_2.plancherel", "Lemma 3.2", 1.0, "l2", lemma3_2_plancherel},
        {"eq10.multiplication", "Lemma 3.4/Eq (10)", 1e-6, "l2", eq10_multiplication},
        {"thm1_2.riemann_lebesgue", "Thm 1.2", 1e-12, "l1", thm1_2_riemann_lebesgue},
        {"thm1_7.approx_identity", "Thm 1.7", 1.0, "l1", thm1_7_approx_identity},
        {"lemma3_x.positive_transform", "positive-transform lemma", 1e-6, "l2", lemma3_x_positive_transform},

        {"thm1_1.boundedness", "Thm 1.1", 1e-8, "l1", thm1_1_boundedness},
        {"laws.shift_dilation", "shift/dilation laws (after Def 1.1)", 1e-8, "l1", laws_shift_dilation},
        {"thm1_5.sup_bound", "Thm 1.5", 1e-9, "l1", thm1_5_sup_bound},
        {"thm1_8.smoothing", "Thm 1.8", 1e-5, "l1", thm1_8_smoothing},
        {"thm1_9.scaled_identity", "Thm 1.9", 1.0, "l1", thm1_9_scaled_identity},
        {"eq9.product_rule", "Thm 1.14/Eq (9)", 1.0, "l1", eq9_product_rule},
        {"def1_4.fourier_stieltjes", "Def 1.4", 1e-8, "l1", def1_4_fourier_stieltjes},
        {"sec2.kernel_duality", "§2 all four kernels", 1e-6, "kernels", sec2_kernel_duality},
        {"thm2_4.poisson_contraction", "Thm 2.4/2.5", 1e-7, "kernels", thm2_4_poisson_contraction},
        {"eq12.multiplication_l2", "Eq (12)", 1e-5, "l2", eq12_multiplication_l2},
        {"thm3_1.reflection_inverse", "Thm 3.1/3.2", 1.0, "l2", thm3_1_reflection_inverse},
        {"lemma3_2.isometry_dense", "Lemma 3.2", 1e-6, "l2", lemma3_2_isometry_dense},
        {"sec3.convention_bridge", "§3 unitary normalization", 1e-12, "l2", sec3_convention_bridge},
        {"eq8.gauss_inverse", "Thm 1.13/Eq (8)", 1e-8, "inversion", eq8_gauss_inverse},
        {"thm1_10.vanishing_integral", "Thm 1.10", 1e-6, "inversion", thm1_10_vanishing_integral},
        {"sec2.dirichlet_generalized", "§2 all four kernels", 1e-4, "inversion", sec2_dirichlet_generalized},
    };
    std::sort(r.begin(), r.end(), [](const CheckSpec& a, const CheckSpec& b) { return a.id < b.id; });
    return r;
}

CheckRow run_one(const CheckSpec& spec, double tolerance)
{
    CheckRow row;
    row.id = spec.id;
    row.citation = spec.citation;
    row.tolerance = tolerance;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const CheckOutcome o = spec.run();
        row.residual = o.residual;
        row.diagnostics = o.diagnostics;
    } catch (const std::exception& e) {
        row.residual = kInf;
        row.diagnostics = std::string("error: ") + e.what();
    }
    row.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    row.pass = row.residual <= row.tolerance;
    return row;
}

} // namespace

const std::vector<CheckSpec>& check_registry()
{
    static const std::vector<CheckSpec> registry = build_registry();
    return registry;
}

const CheckSpec& find_check(std::string_view id)
{
    for (const CheckSpec& c : check_registry()) {
        if (c.id == id) return c;
    }
    throw Error(ErrorCode::UnknownCheck, "no check named '" + std::string(id) + "'");
}

nlohmann::ordered_json Report::to_json() const
{
    nlohmann::ordered_json j;
    j["version"] = version;
    j["convention"] = convention;
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckRow& r : checks) {
        nlohmann::ordered_json row;
        row["id"] = r.id;
        row["citation"] = r.citation;
        // JSON has no infinity; a failed evaluation is reported as null
        row["residual"] = std::isfinite(r.residual) ? nlohmann::ordered_json(r.residual) : nlohmann::ordered_json();
        row["tolerance"] = r.tolerance;
        row["pass"] = r.pass;
        row["runtime_ms"] = r.runtime_ms;
        row["diagnostics"] = r.diagnostics;
        j["checks"].push_back(std::move(row));
    }
    j["summary"] = {{"total", total}, {"passed", passed}, {"wall_ms", wall_ms}};
    return j;
}

SuiteConfig suite_named(std::string_view name)
{
    static const std::set<std::string_view> known{"l1", "kernels", "l2", "inversion", "all"};
    require(known.count(name) > 0, ErrorCode::ConfigParse, "unknown suite '" + std::string(name) + "'");
    SuiteConfig cfg;
    cfg.name = std::string(name);
    for (const CheckSpec& c : check_registry()) {
        if (name == "all" || c.suite == name) cfg.checks.push_back({c.id, std::nullopt});
    }
    return cfg;
}

SuiteConfig parse_suite_config(std::string_view text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::ConfigParse, e.what());
    }
    require(j.is_object(), ErrorCode::ConfigParse, "suite config must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        require(key == "suite" || key == "checks" || key == "convention" || key == "jobs", ErrorCode::ConfigParse,
                "unexpected key '" + key + "'");
    }
    SuiteConfig cfg;
    if (j.contains("suite")) {
        require(j["suite"].is_string(), ErrorCode::ConfigParse, "'suite' must be a string");
        require(!j.contains("checks"), ErrorCode::ConfigParse, "give either 'suite' or 'checks', not both");
        cfg = suite_named(j["suite"].get<std::string>());
    } else {
        require(j.contains("checks") && j["checks"].is_array(), ErrorCode::ConfigParse,
                "suite config needs a 'checks' array or a 'suite' name");
        std::set<std::string> seen;
        for (const auto& e : j["checks"]) {
            SuiteEntry entry;
            if (e.is_string()) {
                entry.id = e.get<std::string>();
            } else if (e.is_object() && e.contains("id") && e["id"].is_string()) {
                entry.id = e["id"].get<std::string>();
                if (e.contains("tolerance")) {
                    require(e["tolerance"].is_number(), ErrorCode::ConfigParse, "tolerance must be a number");
                    const double t = e["tolerance"].get<double>();
                    require(t > 0.0 && std::isfinite(t), ErrorCode::ConfigParse,
                            "tolerance for '" + entry.id + "' must be positive");
                    entry.tolerance = t;
                }
            } else {
                throw Error(ErrorCode::ConfigParse, "each check must be an id or an object with an 'id'");
            }
            require(seen.insert(entry.id).second, ErrorCode::ConfigParse, "duplicate check '" + entry.id + "'");
            find_check(entry.id);
            cfg.checks.push_back(std::move(entry));
        }
    }
    if (j.contains("convention")) {
        require(j["convention"].is_string(), ErrorCode::ConfigParse, "'convention' must be a string");
        try {
            cfg.convention = to_string(convention_from_string(j["convention"].get<std::string>()));
        } catch (const Error& e) {
            throw Error(ErrorCode::ConfigParse, e.what());
        }
    }
    if (j.contains("jobs")) {
        require(j["jobs"].is_number_unsigned() && j["jobs"].get<unsigned>() > 0, ErrorCode::ConfigParse,
                "'jobs' must be a positive integer");
        cfg.jobs = j["jobs"].get<unsigned>();
    }
    return cfg;
}

Report run_suite(const SuiteConfig& config)
{
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<std::pair<const CheckSpec*, double>> todo;
    for (const SuiteEntry& e : config.checks) {
        require(!e.tolerance || *e.tolerance > 0.0, ErrorCode::ConfigParse, "tolerance must be positive");
        const CheckSpec& spec = find_check(e.id);
        todo.emplace_back(&spec, e.tolerance.value_or(spec.tolerance));
    }
    Report report;
    report.convention = config.convention;
    report.checks.resize(todo.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < todo.size(); i = next++) {
            report.checks[i] = run_one(*todo[i].first, todo[i].second);
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, static_cast<unsigned>(todo.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned k = 0; k < jobs; ++k) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    std::sort(report.checks.begin(), report.checks.end(),
              [](const CheckRow& a, const CheckRow& b) { return a.id < b.id; });
    report.total = report.checks.size();
    report.passed = static_cast<std::size_t>(
        std::count_if(report.checks.begin(), report.checks.end(), [](const CheckRow& r) { return r.pass; }));
    report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

int exit_code(const Report& report)
{
    return report.all_passed() ? 0 : 1;
}

std::vector<BandMaximum> riemann_lebesgue_profile(const Function& f, const std::vector<std::pair<double, double>>& bands,
                                                  double tol)
{
    require(f.membership().l1, ErrorCode::NotIntegrable, f.describe() + " is not flagged integrable");
    std::vector<BandMaximum> out;
    for (const auto& [lo, hi] : bands) {
        require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, ErrorCode::InvalidArgument, "bands need lo < hi");
        BandMaximum b{lo, hi, 0.0, 0.0};
        for (std::size_t i = 0; i < kBandSamples; ++i) {
            const double y = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kBandSamples - 1);
            const TransformResult r = fourier(f, y, Convention::Classic, tol);
            b.max = std::max(b.max, std::abs(r.value));
            b.error = std::max(b.error, r.quadrature.error_estimate);
        }
        out.push_back(b);
    }
    return out;
}

BoundednessResult boundedness_continuity_check(const Function& f, const std::vector<double>& y_samples,
                                               const std::vector<double>& h_samples, double tol)
{
    require(f.membership().l1, ErrorCode::NotIntegrable, f.describe() + " is not flagged integrable");
    BoundednessResult r;
    const QuadratureResult n1 = lp_norm(f, 1, tol);
    r.l1_norm = n1.value.real();
    const Function xf = Function::x_times(f);
    if (xf.membership().l1) r.xf_l1_norm = lp_norm(xf, 1, tol).value.real();
    for (double y : y_samples) {
        const TransformResult a = fourier(f, y, Convention::Classic, tol);
        r.sup_transform = std::max(r.sup_transform, std::abs(a.value));
        r.sup_residual =
            std::max(r.sup_residual, std::abs(a.value) - r.l1_norm - n1.error_estimate - a.quadrature.error_estimate);
        if (!r.xf_l1_norm) continue;
        for (double h : h_samples) {
            if (h == 0.0) continue;
            const TransformResult b = fourier(f, y + h, Convention::Classic, tol);
            const double excess = std::abs(b.value - a.value) - *r.xf_l1_norm * std::abs(h) -
                                  a.quadrature.error_estimate - b.quadrature.error_estimate;
            r.continuity_residual = std::max(r.continuity_residual, excess);
        }
    }
    r.sup_residual = std::max(0.0, r.sup_residual);
    r.continuity_residual = std::max(0.0, r.continuity_residual);
    return r;
}

ProductTransformResult product_transform_residual(const Function& f, const Function& g, double x, double tol)
{
    require(f.membership().l1 && g.membership().l1, ErrorCode::PreconditionViolated,
            "the product rule needs f and g integrable");
    const auto fh = f.known_transform();
    const auto gh = g.known_transform();
    require(fh && fh->membership().l1 && gh, ErrorCode::PreconditionViolated,
            "the product rule needs closed-form transforms with f̂ integrable");
    ProductTransformResult r;
    r.lhs = fourier(f * g, x, Convention::Classic, tol).value;
    r.rhs = convolve(*fh, *gh, x, tol) / (2.0 * kPi);
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

} // namespace flab
