#include "flab/conv.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "flab/xform.hpp"

namespace flab {

std::string to_string(Pairing p)
{
    switch (p) {
    case Pairing::L1_Linf: return "L1*Linf";
    case Pairing::L2_L2: return "L2*L2";
    case Pairing::L1_C0: return "L1*C0";
    case Pairing::L1_L1: return "L1*L1";
    }
    return "unknown";
}

std::optional<Pairing> convolution_pairing(const Function& f, const Function& g)
{
    const Membership& a = f.membership();
    const Membership& b = g.membership();
    if ((a.l1 && b.bounded) || (b.l1 && a.bounded)) return Pairing::L1_Linf;
    if (a.l2 && b.l2) return Pairing::L2_L2;
    if ((a.l1 && b.c0) || (b.l1 && a.c0)) return Pairing::L1_C0;
    if (a.l1 && b.l1) return Pairing::L1_L1;
    return std::nullopt;
}

namespace {

void require_pairing(const Function& f, const Function& g)
{
    if (!convolution_pairing(f, g)) {
        throw Error(ErrorCode::NoValidPairing,
                    "no membership pairing guarantees that " + f.describe() + " * " + g.describe() + " exists");
    }
}

/// t ↦ f(x − t)g(t) with metadata from the combinators.
Function convolution_integrand(const Function& f, const Function& g, double x)
{
    return f.reflected().shifted(x) * g;
}

double essential_radius(const FunctionInfo& info)
{
    if (info.support) return std::max(std::abs(info.support->lo), std::abs(info.support->hi));
    if (!info.envelope) return 20.0 * info.scale;
    const DecayEnvelope& env = *info.envelope;
    const double mass = env.total_mass();
    if (!std::isfinite(mass) || mass <= 0.0) return 20.0 * info.scale;
    return std::min(envelope_radius(env, 1e-6 * mass), 20.0 * info.scale);
}

} // namespace

QuadratureResult convolve(const ConvolutionRequest& req)
{
    require(std::isfinite(req.x), ErrorCode::InvalidArgument, "x must be finite");
    require_pairing(req.f, req.g);
    return integrate_function(convolution_integrand(req.f, req.g, req.x), Domain::real_line(), req.tol);
}

cplx convolve(const Function& f, const Function& g, double x, double tol)
{
    return convolve(ConvolutionRequest{f, g, x, tol}).value;
}

Function convolution(const Function& f, const Function& g, double tol)
{
    const auto pairing = convolution_pairing(f, g);
    require_pairing(f, g);
    const FunctionInfo& a = f.info();
    const FunctionInfo& b = g.info();
    const Membership& ma = a.membership;
    const Membership& mb = b.membership;

    FunctionInfo info;
    Membership& m = info.membership;
    m.l1 = ma.l1 && mb.l1;
    m.l2 = (ma.l1 && mb.l2) || (mb.l1 && ma.l2);
    m.bounded = *pairing != Pairing::L1_L1;
    m.continuous = m.bounded;
    m.c0 = *pairing == Pairing::L2_L2 || *pairing == Pairing::L1_C0 ||
           (ma.l1 && mb.c0) || (mb.l1 && ma.c0);
    m.c1 = (ma.c1 && ma.compact && mb.l1) || (mb.c1 && mb.compact && ma.l1);
    m.nonnegative = ma.nonnegative && mb.nonnegative;
    if (a.support && b.support) {
        info.support = Interval{a.support->lo + b.support->lo, a.support->hi + b.support->hi};
        m.compact = true;
    }
    if (a.envelope && b.envelope) info.envelope = envelope_rules::convolution(*a.envelope, *b.envelope);

    if (m.bounded) {
        double sup = kInf;
        if (ma.l1 && std::isfinite(b.sup_bound)) sup = std::min(sup, lp_norm(f, 1, tol).value.real() * b.sup_bound);
        if (mb.l1 && std::isfinite(a.sup_bound)) sup = std::min(sup, lp_norm(g, 1, tol).value.real() * a.sup_bound);
        if (!std::isfinite(sup) && ma.l2 && mb.l2) {
            sup = lp_norm(f, 2, tol).value.real() * lp_norm(g, 2, tol).value.real();
        }
        info.sup_bound = sup * (1.0 + 1e-6);
    }

    for (double p : a.breakpoints) {
        for (double q : b.breakpoints) info.breakpoints.push_back(p + q);
    }
    std::sort(info.breakpoints.begin(), info.breakpoints.end());
    info.breakpoints.erase(std::unique(info.breakpoints.begin(), info.breakpoints.end()), info.breakpoints.end());
    if (!m.c1) info.lipschitz_exceptions = info.breakpoints;
    info.bandwidth = std::max(a.bandwidth, b.bandwidth);
    info.scale = a.scale + b.scale;

    return Function::opaque("(" + f.describe() + " * " + g.describe() + ")",
                            [f, g, tol](double x) { return convolve(f, g, x, tol); }, info);
}

ConvolutionTheoremResult convolution_theorem_residual(const Function& f, const Function& g, double y, double tol)
{
    require(f.membership().l1 && g.membership().l1, ErrorCode::NotIntegrable,
            "the convolution theorem needs both functions integrable");
    require(std::isfinite(y), ErrorCode::InvalidArgument, "y must be finite");
    const Function c = convolution(f, g, tol / 10.0);
    const FunctionInfo& info = c.info();

    double lo = 0.0;
    double hi = 0.0;
    if (info.support) {
        lo = info.support->lo;
        hi = info.support->hi;
    } else {
        require(info.envelope.has_value(), ErrorCode::MissingEnvelope, "f*g has no decay envelope");
        const double R = envelope_radius(*info.envelope, tol);
        lo = -R;
        hi = R;
    }
    double step = 1.0 / 32.0;
    if (y != 0.0) step = std::min(step, 2.0 * kPi / std::abs(y) / 8.0);
    require((hi - lo) / step <= 1 << 17, ErrorCode::NonConvergent,
            "the grid for f*g would exceed 2^17 points");

    std::vector<double> cuts{lo};
    for (double p : info.breakpoints) {
        if (p > lo && p < hi) cuts.push_back(p);
    }
    cuts.push_back(hi);

    // Piecewise quadratic interpolation through grid triples, integrated against e^{−ixy} by 8-point Gauss–Legendre.
    static constexpr std::array<double, 4> kNodes{0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                                  0.9602898564975363};
    static constexpr std::array<double, 4> kWeights{0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                                    0.1012285362903763};
    ConvolutionTheoremResult out;
    cplx lhs{};
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double a = cuts[s];
        const double b = cuts[s + 1];
        std::size_t n = static_cast<std::size_t>(std::ceil((b - a) / (2.0 * step)));
        n = std::max<std::size_t>(n, 1);
        const double h = (b - a) / (2.0 * static_cast<double>(n));
        cplx c0 = c(a);
        out.grid_points += 1;
        for (std::size_t k = 0; k < n; ++k) {
            const double x0 = a + 2.0 * h * static_cast<double>(k);
            const double x1 = x0 + h;
            const double x2 = k + 1 == n ? b : x0 + 2.0 * h;
            const cplx c1 = c(x1);
            const cplx c2 = c(x2);
            out.grid_points += 2;
            for (std::size_t i = 0; i < kNodes.size(); ++i) {
                for (double sign : {-1.0, 1.0}) {
                    const double u = sign * kNodes[i];  // position in [−1, 1] around x1
                    const cplx q = 0.5 * u * (u - 1.0) * c0 + (1.0 - u * u) * c1 + 0.5 * u * (u + 1.0) * c2;
                    lhs += kWeights[i] * h * q * std::polar(1.0, -(x1 + u * h) * y);
                }
            }
            c0 = c2;
        }
    }
    out.lhs = lhs;
    out.rhs = fourier(f, y, Convention::Classic, tol).value * fourier(g, y, Convention::Classic, tol).value;
    out.residual = std::abs(out.lhs - out.rhs);
    return out;
}

Function make_scaled_identity(const Function& phi, double n)
{
    require(n > 0.0 && std::isfinite(n), ErrorCode::InvalidArgument, "n must be positive");
    const Membership& m = phi.membership();
    require(m.nonnegative && m.compact && m.c1, ErrorCode::PreconditionViolated,
            phi.describe() + " must be nonnegative, compactly supported and C¹");
    const double mass = integrate_function(phi, Domain::real_line(), 1e-13).value.real();
    if (std::abs(mass - 1.0) > 1e-8) {
        std::ostringstream os;
        os << phi.describe() << " has integral " << mass << ", not 1";
        throw Error(ErrorCode::PreconditionViolated, os.str());
    }
    if (n == 1.0) return phi;
    return phi.dilated(n).scaled(n);
}

namespace {

void require_monotone(const std::vector<double>& s, bool increasing)
{
    require(!s.empty(), ErrorCode::InvalidArgument, "schedule is empty");
    for (std::size_t i = 0; i < s.size(); ++i) {
        require(s[i] > 0.0 && std::isfinite(s[i]), ErrorCode::InvalidArgument, "schedule entries must be positive");
        if (i > 0) {
            require(increasing ? s[i] > s[i - 1] : s[i] < s[i - 1], ErrorCode::InvalidArgument,
                    increasing ? "schedule must increase" : "schedule must decrease");
        }
    }
}

} // namespace

ApproximateIdentity ApproximateIdentity::scaled(const Function& phi, std::vector<double> n)
{
    require_monotone(n, true);
    make_scaled_identity(phi, 1.0);
    return ApproximateIdentity(Family::Scaled, phi, std::move(n));
}

ApproximateIdentity ApproximateIdentity::fejer(std::vector<double> t)
{
    require_monotone(t, true);
    return ApproximateIdentity(Family::Fejer, std::nullopt, std::move(t));
}

ApproximateIdentity ApproximateIdentity::poisson(std::vector<double> u)
{
    require_monotone(u, false);
    return ApproximateIdentity(Family::Poisson, std::nullopt, std::move(u));
}

ApproximateIdentity ApproximateIdentity::gauss_weierstrass(std::vector<double> alpha)
{
    require_monotone(alpha, false);
    return ApproximateIdentity(Family::GaussWeierstrass, std::nullopt, std::move(alpha));
}

Function ApproximateIdentity::member(std::size_t i) const
{
    require(i < schedule_.size(), ErrorCode::InvalidArgument, "index beyond the schedule");
    const double p = schedule_[i];
    switch (family_) {
    case Family::Scaled: return make_scaled_identity(*phi_, p);
    case Family::Fejer: return Function::fejer_kernel(p);
    case Family::Poisson: return Function::poisson_kernel(p);
    case Family::GaussWeierstrass: return Function::gauss_weierstrass(p);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown family");
}

double ApproximateIdentity::mass_outside(std::size_t i, double delta, double tol) const
{
    require(delta > 0.0, ErrorCode::InvalidArgument, "delta must be positive");
    const Function e = member(i);
    return integrate_function(e, Domain::until(-delta), tol).value.real() +
           integrate_function(e, Domain::from(delta), tol).value.real();
}

std::string to_string(ErrorNorm n)
{
    switch (n) {
    case ErrorNorm::SupOnGrid: return "sup-on-grid";
    case ErrorNorm::L1: return "L1";
    case ErrorNorm::L2: return "L2";
    case ErrorNorm::WeakStar: return "weak-star";
    }
    return "unknown";
}

std::vector<double> sup_grid(const Function& f, std::size_t points)
{
    require(points >= 2, ErrorCode::InvalidArgument, "a grid needs at least two points");
    const FunctionInfo& info = f.info();
    double lo = 0.0;
    double hi = 0.0;
    if (info.support) {
        lo = info.support->lo;
        hi = info.support->hi;
    } else {
        const double R = essential_radius(info);
        lo = -R;
        hi = R;
    }
    const double pad = 0.25 * (hi - lo);
    lo -= pad;
    hi += pad;
    std::vector<double> xs(points);
    for (std::size_t i = 0; i < points; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    return xs;
}

std::vector<Function> weak_star_witnesses()
{
    return {Function::gaussian(1.0), Function::laplace(1.0), Function::indicator(-1.0, 1.0)};
}

double approx_identity_error(const ApproximateIdentity& ai, const Function& f, std::size_t index, ErrorNorm norm,
                             const std::optional<Function>& witness, double tol)
{
    const Function e = ai.member(index);
    const Membership& m = f.membership();
    const double inner = tol / 100.0;
    switch (norm) {
    case ErrorNorm::SupOnGrid: {
        require(m.c0, ErrorCode::PreconditionViolated, "the sup-norm error needs f continuous and vanishing at infinity");
        double worst = 0.0;
        for (double x : sup_grid(f)) worst = std::max(worst, std::abs(convolve(e, f, x, inner) - f(x)));
        return worst;
    }
    case ErrorNorm::L1:
    case ErrorNorm::L2: {
        const int p = norm == ErrorNorm::L1 ? 1 : 2;
        require(p == 1 ? m.l1 : m.l2, ErrorCode::PreconditionViolated,
                "f is not flagged L" + std::to_string(p));
        const Function diff = convolution(e, f, inner) + f.scaled(-1.0);
        return lp_norm(diff, p, tol).value.real();
    }
    case ErrorNorm::WeakStar: {
        require(witness.has_value(), ErrorCode::InvalidArgument, "the weak* error needs a witness");
        require(witness->membership().l1, ErrorCode::PreconditionViolated, "the witness must be integrable");
        require(m.bounded, ErrorCode::PreconditionViolated, "the weak* error needs f bounded");
        const cplx smoothed =
            integrate_function(convolution(e, f, inner) * *witness, Domain::real_line(), tol).value;
        const cplx plain = integrate_function(f * *witness, Domain::real_line(), tol).value;
        return std::abs(smoothed - plain);
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown norm");
}

double smoothed_derivative_residual(const Function& f, const Function& g, double x, double h, double tol)
{
    require(f.membership().c1 && f.membership().compact, ErrorCode::PreconditionViolated,
            f.describe() + " must be C¹ with compact support");
    require(g.membership().l1, ErrorCode::PreconditionViolated, g.describe() + " must be integrable");
    require(h > 0.0 && std::isfinite(x), ErrorCode::InvalidArgument, "need h > 0 and finite x");
    const double inner = tol * h;
    const cplx diff = (convolve(f, g, x + h, inner) - convolve(f, g, x - h, inner)) / (2.0 * h);
    return std::abs(diff - convolve(f.derivative(), g, x, tol));
}

} // namespace flab
