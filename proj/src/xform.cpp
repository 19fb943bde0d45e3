#include "flab/xform.hpp"

#include <algorithm>
#include <cmath>

namespace flab {

namespace {

constexpr cplx kI{0.0, 1.0};

const double kSqrt2Pi = std::sqrt(2.0 * kPi);

} // namespace

std::string to_string(Convention c)
{
    return c == Convention::Classic ? "classic" : "unitary";
}

Convention convention_from_string(std::string_view s)
{
    if (s == "classic") return Convention::Classic;
    if (s == "unitary") return Convention::Unitary;
    throw Error(ErrorCode::InvalidArgument, "unknown convention '" + std::string(s) + "'");
}

double forward_prefactor(Convention c)
{
    return c == Convention::Classic ? 1.0 : 1.0 / kSqrt2Pi;
}

double inverse_prefactor(Convention c)
{
    return c == Convention::Classic ? 1.0 / (2.0 * kPi) : 1.0 / kSqrt2Pi;
}

TransformResult fourier(const Function& f, double y, Convention conv, double tol)
{
    const double pref = forward_prefactor(conv);
    TransformResult r;
    r.quadrature = oscillatory_integrate(f, y, std::min(tol, tol / pref));
    r.value = pref * r.quadrature.value;
    r.quadrature.error_estimate *= pref;
    return r;
}

Function transform_function(const Function& f, Convention conv, double tol)
{
    require(f.membership().l1, ErrorCode::NotIntegrable, f.describe() + " is not flagged integrable");
    const double pref = forward_prefactor(conv);
    if (auto hat = f.known_transform()) {
        return conv == Convention::Classic ? *hat : hat->scaled(pref);
    }
    FunctionInfo info;
    info.membership.bounded = true;
    info.membership.continuous = true;
    info.membership.c0 = true;
    info.membership.l2 = f.membership().l2;
    const QuadratureResult l1 = lp_norm(f, 1, tol);
    info.sup_bound = pref * (l1.value.real() + l1.error_estimate);
    info.scale = 1.0 / f.info().scale;
    return Function::opaque("F[" + f.describe() + "]",
                            [f, conv, tol](double y) { return fourier(f, y, conv, tol).value; }, info);
}

LimitSchedule default_inversion_schedule()
{
    return LimitSchedule::geometric(32.0, 2.0, 7);
}

LimitResult inverse_symmetric(const Function& fhat, double x, Convention conv, const LimitSchedule& schedule,
                              double tol)
{
    require(std::isfinite(x), ErrorCode::InvalidArgument, "x must be finite");
    const double pref = inverse_prefactor(conv);
    Integrand g = [fhat, x, pref](double y) {
        const cplx v = fhat(y);
        return v == 0.0 ? cplx{} : pref * v * std::polar(1.0, x * y);
    };
    LimitOptions opts;
    opts.tol = tol;
    const double freq = std::abs(x) + fhat.info().bandwidth;
    if (freq > 0.0) opts.frequency_hint = freq;
    opts.breakpoints = fhat.info().breakpoints;
    return two_sided_limit(g, schedule, opts);
}

namespace {

TransformResult damped_inverse(const Function& f, double x, const Function& damping, double tol)
{
    require(f.membership().l1, ErrorCode::NotIntegrable, f.describe() + " is not flagged integrable");
    require(std::isfinite(x), ErrorCode::InvalidArgument, "x must be finite");
    const Function hat = transform_function(f, Convention::Classic, tol / 10.0);
    TransformResult r;
    r.quadrature = oscillatory_integrate(hat * damping, -x, 2.0 * kPi * tol);
    r.value = r.quadrature.value / (2.0 * kPi);
    r.quadrature.error_estimate /= 2.0 * kPi;
    return r;
}

} // namespace

TransformResult abel_inverse(const Function& f, double x, double eps, double tol)
{
    require(eps > 0.0 && std::isfinite(eps), ErrorCode::InvalidArgument, "eps must be positive");
    return damped_inverse(f, x, Function::laplace(eps), tol);
}

TransformResult gauss_inverse(const Function& f, double x, double alpha, double tol)
{
    require(alpha > 0.0 && std::isfinite(alpha), ErrorCode::InvalidArgument, "alpha must be positive");
    return damped_inverse(f, x, Function::gaussian(alpha / 4.0), tol);
}

LawResiduals transform_laws_residual(const Function& f, double t, double k, double y, double tol)
{
    require(f.membership().l1, ErrorCode::NotIntegrable, f.describe() + " is not flagged integrable");
    require(k > 0.0 && std::isfinite(k) && std::isfinite(t) && std::isfinite(y), ErrorCode::InvalidArgument,
            "laws need finite t, y and k > 0");
    LawResiduals out;
    auto F = [&](const Function& g, double at) {
        const TransformResult r = fourier(g, at, Convention::Classic, tol);
        out.error_bound += r.quadrature.error_estimate;
        return r.value;
    };
    const cplx fy = F(f, y);
    out.translation = std::abs(F(f.shifted(t), y) - std::polar(1.0, -t * y) * fy);
    out.modulation = std::abs(F(f.modulated(t), y) - F(f, y - t));
    out.dilation = std::abs(F(f.dilated(k), y) - F(f, y / k) / k);

    Function a = f;
    Function b = f.dilated(k);
    if (f.kind() == Kind::Sum) {
        a = f.children()[0];
        b = f.children()[1];
    }
    out.linearity = std::abs(F(a + b, y) - F(a, y) - F(b, y));
    return out;
}

double derivative_of_transform_residual(const Function& f, double y, double h, double tol)
{
    const Function xf = Function::x_times(f);
    require(f.membership().l1 && xf.membership().l1, ErrorCode::PreconditionViolated,
            "the derivative rule needs f and x·f integrable");
    if (!(h > 0.0)) h = std::cbrt(tol) * std::max(1.0, std::abs(y));
    const double inner = tol * h;
    const cplx diff = (fourier(f, y + h, Convention::Classic, inner).value -
                       fourier(f, y - h, Convention::Classic, inner).value) /
                      (2.0 * h);
    const cplx rhs = fourier(xf.scaled(-kI), y, Convention::Classic, tol).value;
    return std::abs(diff - rhs);
}

double transform_of_derivative_residual(const Function& f, double y, double tol)
{
    const Membership& m = f.membership();
    require(m.c1 && m.compact, ErrorCode::PreconditionViolated,
            "the transform-of-derivative rule needs a C¹ function with compact support");
    const cplx lhs = fourier(f.derivative(), y, Convention::Classic, tol).value;
    const cplx rhs = kI * y * fourier(f, y, Convention::Classic, tol).value;
    return std::abs(lhs - rhs);
}

DerivativeResiduals derivative_rules_residual(const Function& f, double y, double h, double tol)
{
    DerivativeResiduals out;
    if (f.membership().l1 && Function::x_times(f).membership().l1) {
        out.eq2 = derivative_of_transform_residual(f, y, h, tol);
    }
    if (f.membership().c1 && f.membership().compact) {
        out.eq3 = transform_of_derivative_residual(f, y, tol);
    }
    require(out.eq2 || out.eq3, ErrorCode::PreconditionViolated,
            f.describe() + " satisfies the hypotheses of neither derivative rule");
    return out;
}

cplx fourier_stieltjes(const MeasureSpec& mu, double y, double tol)
{
    mu.validate();
    require(std::isfinite(y), ErrorCode::InvalidArgument, "y must be finite");
    cplx v{};
    for (const Atom& a : mu.atoms) v += a.mass * std::polar(1.0, a.location * y);
    if (mu.density) v += oscillatory_integrate(*mu.density, -y, tol).value;
    return v;
}

LimitResult vanishing_transform_integral(const Function& f, const LimitSchedule& schedule, double tol)
{
    require(f.membership().l1, ErrorCode::PreconditionViolated, f.describe() + " is not flagged integrable");
    const FunctionInfo& info = f.info();
    const double scale = std::isfinite(info.sup_bound) ? std::max(1.0, info.sup_bound) : 1.0;
    const bool lipschitz_at_zero =
        std::find(info.lipschitz_exceptions.begin(), info.lipschitz_exceptions.end(), 0.0) ==
        info.lipschitz_exceptions.end();
    require(std::abs(f(0.0)) <= 1e-14 * scale && lipschitz_at_zero, ErrorCode::PreconditionViolated,
            "f(x)/x is integrable only when f vanishes at 0 and is Lipschitz there");
    const Function hat = transform_function(f, Convention::Classic, tol / 100.0);
    LimitOptions opts;
    opts.tol = tol;
    if (hat.info().bandwidth > 0.0) opts.frequency_hint = hat.info().bandwidth;
    opts.breakpoints = hat.info().breakpoints;
    return two_sided_limit([hat](double y) { return hat(y); }, schedule, opts);
}

} // namespace flab
