#include "flab/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace flab {

namespace {

double sinc(double z)
{
    if (std::abs(z) < 1e-4) return 1.0 - z * z / 6.0;
    return std::sin(z) / z;
}

double poisson(double u, double x)
{
    return u / (kPi * (u * u + x * x));
}

void require_positive(double p, const char* name)
{
    require(p > 0.0 && std::isfinite(p), ErrorCode::InvalidArgument, std::string(name) + " must be positive");
}

/// ∫h with cut points on a geometric ladder around each peak of width `width`.
QuadratureResult integrate_with_peaks(const Function& h, const std::vector<double>& peaks, double width, double tol)
{
    const FunctionInfo& info = h.info();
    QuadratureRequest req;
    req.integrand = [h](double s) { return h(s); };
    req.tol = tol;
    req.envelope = info.envelope;
    req.length_scale = info.scale;
    req.breakpoints = info.breakpoints;
    if (info.bandwidth > 0.0) req.frequency_hint = info.bandwidth;
    if (info.support) {
        if (!(info.support->hi > info.support->lo)) return {};
        req.domain = Domain::finite(info.support->lo, info.support->hi);
    }
    for (double p : peaks) {
        req.breakpoints.push_back(p);
        for (double d = 0.25 * width; d < 64.0 * width; d *= 2.0) {
            req.breakpoints.push_back(p - d);
            req.breakpoints.push_back(p + d);
        }
    }
    std::sort(req.breakpoints.begin(), req.breakpoints.end());
    req.breakpoints.erase(std::unique(req.breakpoints.begin(), req.breakpoints.end()), req.breakpoints.end());
    return integrate(req);
}

} // namespace

std::string to_string(KernelKind k)
{
    switch (k) {
    case KernelKind::Dirichlet: return "dirichlet";
    case KernelKind::Fejer: return "fejer";
    case KernelKind::Poisson: return "poisson";
    case KernelKind::GaussWeierstrass: return "gauss_weierstrass";
    }
    return "unknown";
}

KernelKind kernel_kind_from_string(std::string_view s)
{
    if (s == "dirichlet") return KernelKind::Dirichlet;
    if (s == "fejer") return KernelKind::Fejer;
    if (s == "poisson") return KernelKind::Poisson;
    if (s == "gauss_weierstrass" || s == "gauss-weierstrass" || s == "gw") return KernelKind::GaussWeierstrass;
    throw Error(ErrorCode::InvalidArgument, "unknown kernel '" + std::string(s) + "'");
}

void KernelFamily::validate() const
{
    require_positive(param, kind == KernelKind::Poisson ? "u" : kind == KernelKind::GaussWeierstrass ? "alpha" : "t");
}

Function KernelFamily::space() const
{
    validate();
    switch (kind) {
    case KernelKind::Dirichlet: return Function::dirichlet_kernel(param);
    case KernelKind::Fejer: return Function::fejer_kernel(param);
    case KernelKind::Poisson: return Function::poisson_kernel(param);
    case KernelKind::GaussWeierstrass: return Function::gauss_weierstrass(param);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown kernel");
}

Function KernelFamily::hat() const
{
    return *space().known_transform();
}

double eval_kernel(const KernelFamily& k, double x)
{
    k.validate();
    const double p = k.param;
    switch (k.kind) {
    case KernelKind::Dirichlet: return p * sinc(p * x) / kPi;
    case KernelKind::Fejer: {
        const double s = sinc(0.5 * p * x);
        return p * s * s / (2.0 * kPi);
    }
    case KernelKind::Poisson: return poisson(p, x);
    case KernelKind::GaussWeierstrass: return std::exp(-x * x / p) / std::sqrt(kPi * p);
    }
    return 0.0;
}

double eval_kernel_hat(const KernelFamily& k, double y)
{
    k.validate();
    const double p = k.param;
    const double ay = std::abs(y);
    switch (k.kind) {
    case KernelKind::Dirichlet: return ay < p ? 1.0 : ay == p ? 0.5 : 0.0;
    case KernelKind::Fejer: return std::max(0.0, 1.0 - ay / p);
    case KernelKind::Poisson: return std::exp(-p * ay);
    case KernelKind::GaussWeierstrass: return std::exp(-0.25 * p * y * y);
    }
    return 0.0;
}

ApproximateIdentity approximate_identity(KernelKind kind, std::vector<double> schedule)
{
    switch (kind) {
    case KernelKind::Dirichlet:
        throw Error(ErrorCode::PreconditionViolated,
                    "the Dirichlet kernel is not an approximate identity (it changes sign and is not in L1)");
    case KernelKind::Fejer: return ApproximateIdentity::fejer(std::move(schedule));
    case KernelKind::Poisson: return ApproximateIdentity::poisson(std::move(schedule));
    case KernelKind::GaussWeierstrass: return ApproximateIdentity::gauss_weierstrass(std::move(schedule));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown kernel");
}

double dhat_selfconvolution(double t, double y)
{
    require_positive(t, "t");
    require(std::isfinite(y), ErrorCode::InvalidArgument, "y must be finite");
    // [y − t, y + t] ∩ [−t, t]
    return std::max(0.0, std::min(y + t, t) - std::max(y - t, -t));
}

double fejer_dirichlet_identity_residual(double t, double x)
{
    require_positive(t, "t");
    const double lhs = 2.0 * t * eval_kernel(KernelFamily::fejer(2.0 * t), x);
    const double d = 2.0 * kPi * eval_kernel(KernelFamily::dirichlet(t), x);
    return std::abs(lhs - d * d / (2.0 * kPi));
}

QuadratureResult poisson_integral(const Function& f, double x, double u, double tol)
{
    require_positive(u, "u");
    require(std::isfinite(x), ErrorCode::InvalidArgument, "x must be finite");
    require(f.membership().l1 || f.membership().l2, ErrorCode::PreconditionViolated,
            f.describe() + " is flagged neither L1 nor L2");
    const Function P = Function::poisson_kernel(u);
    return integrate_with_peaks(P.shifted(x) * f, {x}, u, tol);
}

SemigroupResult semigroup_residual(double u, double v, double x, double tol)
{
    require_positive(u, "u");
    require_positive(v, "v");
    require(std::isfinite(x), ErrorCode::InvalidArgument, "x must be finite");
    const Function h = Function::poisson_kernel(u).shifted(x) * Function::poisson_kernel(v);
    const QuadratureResult q = integrate_with_peaks(h, {0.0, x}, std::min(u, v), tol);
    SemigroupResult r;
    r.numeric = q.value.real();
    r.exact = poisson(u + v, x);
    r.residual = std::abs(r.numeric - r.exact);
    r.error_estimate = q.error_estimate;
    return r;
}

double semigroup_hat_residual(double u, double v, double y)
{
    const double ay = std::abs(y);
    return std::abs(std::exp(-u * ay) * std::exp(-v * ay) - std::exp(-(u + v) * ay));
}

double harmonicity_residual(const HalfPlaneFunction& F, double x, double u, double h)
{
    require(h > 0.0 && u > 2.0 * h, ErrorCode::InvalidArgument, "the step must satisfy 0 < 2h < u");
    const double c = F(x, u);
    const double lap = F(x + h, u) + F(x - h, u) + F(x, u + h) + F(x, u - h) - 4.0 * c;
    return std::abs(lap) / (h * h);
}

double harmonicity_residual(const Function& f, double x, double u, double h, double tol)
{
    return harmonicity_residual([&f, tol](double s, double v) { return poisson_integral(f, s, v, tol).value.real(); },
                                x, u, h);
}

std::string to_string(ProfileNorm n)
{
    switch (n) {
    case ProfileNorm::L1: return "L1";
    case ProfileNorm::L2: return "L2";
    case ProfileNorm::SupGrid: return "sup-grid";
    }
    return "unknown";
}

std::vector<double> norm_monotonicity_profile(const Function& f, ProfileNorm norm, const std::vector<double>& u_list,
                                              double tol)
{
    const Membership& m = f.membership();
    switch (norm) {
    case ProfileNorm::L1: require(m.l1, ErrorCode::PreconditionViolated, f.describe() + " is not flagged L1"); break;
    case ProfileNorm::L2: require(m.l2, ErrorCode::PreconditionViolated, f.describe() + " is not flagged L2"); break;
    case ProfileNorm::SupGrid:
        require(m.l1 || m.l2, ErrorCode::PreconditionViolated, f.describe() + " is flagged neither L1 nor L2");
        break;
    }
    for (std::size_t i = 1; i < u_list.size(); ++i) {
        require(u_list[i] < u_list[i - 1], ErrorCode::InvalidArgument, "u values must decrease");
    }
    std::vector<double> out;
    const std::vector<double> grid = norm == ProfileNorm::SupGrid ? sup_grid(f) : std::vector<double>{};
    for (double u : u_list) {
        require_positive(u, "u");
        if (norm == ProfileNorm::SupGrid) {
            double best = 0.0;
            for (double x : grid) best = std::max(best, std::abs(poisson_integral(f, x, u, tol * 1e-2).value));
            out.push_back(best);
            continue;
        }
        const double inner = tol * 1e-2;
        const FunctionInfo info = convolution(Function::poisson_kernel(u), f, inner).info();
        const Function F = Function::opaque(
            "poisson_integral", [f, u, inner](double x) { return poisson_integral(f, x, u, inner).value; }, info);
        out.push_back(lp_norm(F, norm == ProfileNorm::L1 ? 1 : 2, tol).value.real());
    }
    return out;
}

} // namespace flab
