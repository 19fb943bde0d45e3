#include "flab/funcspace.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "flab/quad.hpp"

namespace flab {

namespace detail {

struct Node {
    Kind kind = Kind::Opaque;
    std::vector<double> p;
    cplx c{1.0, 0.0};
    std::vector<Function> kids;
    std::vector<std::vector<double>> coeffs;
    std::function<cplx(double)> fn;
    std::string name;
    FunctionInfo info;

    static Function make(Node n) { return Function(std::make_shared<const Node>(std::move(n))); }
};

} // namespace detail

using detail::Node;

namespace {

constexpr double kSeriesCutoff = 1e-4;

double sinc(double z)
{
    if (std::abs(z) < kSeriesCutoff) {
        const double z2 = z * z;
        return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
    }
    return std::sin(z) / z;
}

double sinc_prime(double z)
{
    if (std::abs(z) < kSeriesCutoff) {
        return -z / 3.0 + z * z * z / 30.0;
    }
    return (z * std::cos(z) - std::sin(z)) / (z * z);
}

double bump_psi(double x)
{
    if (std::abs(x) >= 1.0) return 0.0;
    const double a = 1.0 + x;
    const double b = 1.0 - x;
    return std::exp(-1.0 / (a * a) - 1.0 / (b * b));
}

std::vector<double> merged(std::vector<double> a, const std::vector<double>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

template <class F>
std::vector<double> mapped(const std::vector<double>& v, F f)
{
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(f(x));
    std::sort(out.begin(), out.end());
    return out;
}

double mul0(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }

void check_param(double v, const char* what)
{
    require(std::isfinite(v) && v > 0.0, ErrorCode::InvalidArgument,
            std::string(what) + " must be positive and finite");
}

Membership smooth_positive_flags()
{
    Membership m;
    m.l1 = m.l2 = m.bounded = m.continuous = m.c0 = m.c1 = m.nonnegative = true;
    return m;
}

double poly_eval(const std::vector<double>& c, double s)
{
    double v = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * s + *it;
    return v;
}

double poly_deriv(const std::vector<double>& c, double s)
{
    double v = 0.0;
    for (std::size_t j = c.size(); j-- > 1;) v = v * s + static_cast<double>(j) * c[j];
    return v;
}

} // namespace

// ---------------------------------------------------------------------------
// Catalog atoms
// ---------------------------------------------------------------------------

Function Function::gaussian(double a)
{
    check_param(a, "gaussian scale a");
    Node n;
    n.kind = Kind::Gaussian;
    n.p = {a};
    n.info.membership = smooth_positive_flags();
    n.info.envelope = DecayEnvelope::gaussian(1.0, a);
    n.info.sup_bound = 1.0;
    n.info.scale = 1.0 / std::sqrt(a);
    return Node::make(std::move(n));
}

Function Function::laplace(double a)
{
    check_param(a, "laplace rate a");
    Node n;
    n.kind = Kind::Laplace;
    n.p = {a};
    n.info.membership = smooth_positive_flags();
    n.info.membership.c1 = false;
    n.info.envelope = DecayEnvelope::exponential(1.0, a);
    n.info.breakpoints = {0.0};
    n.info.sup_bound = 1.0;
    n.info.scale = 1.0 / a;
    return Node::make(std::move(n));
}

Function Function::indicator(double l, double r)
{
    require(std::isfinite(l) && std::isfinite(r) && l < r, ErrorCode::InvalidArgument,
            "indicator requires finite l < r");
    Node n;
    n.kind = Kind::Indicator;
    n.p = {l, r};
    Membership& m = n.info.membership;
    m.l1 = m.l2 = m.bounded = m.compact = m.nonnegative = true;
    n.info.envelope = DecayEnvelope::compact(std::max(std::abs(l), std::abs(r)), 1.0);
    n.info.support = Interval{l, r};
    n.info.breakpoints = {l, r};
    n.info.lipschitz_exceptions = {l, r};
    n.info.sup_bound = 1.0;
    n.info.scale = std::max({std::abs(l), std::abs(r), r - l});
    return Node::make(std::move(n));
}

Function Function::poisson_kernel(double u)
{
    check_param(u, "poisson parameter u");
    Node n;
    n.kind = Kind::PoissonKernel;
    n.p = {u};
    n.info.membership = smooth_positive_flags();
    n.info.envelope = DecayEnvelope::polynomial(2.0 * u / kPi * std::max(1.0, 1.0 / (u * u)), 2.0);
    n.info.sup_bound = 1.0 / (kPi * u);
    n.info.scale = u;
    return Node::make(std::move(n));
}

Function Function::fejer_kernel(double t)
{
    check_param(t, "fejer parameter t");
    Node n;
    n.kind = Kind::FejerKernel;
    n.p = {t};
    n.info.membership = smooth_positive_flags();
    n.info.envelope = DecayEnvelope::polynomial(t / kPi + 4.0 / (kPi * t), 2.0);
    n.info.sup_bound = t / (2.0 * kPi);
    n.info.bandwidth = t;
    n.info.scale = 1.0 / t;
    return Node::make(std::move(n));
}

Function Function::dirichlet_kernel(double t)
{
    check_param(t, "dirichlet parameter t");
    Node n;
    n.kind = Kind::DirichletKernel;
    n.p = {t};
    Membership& m = n.info.membership;
    m.l2 = m.bounded = m.continuous = m.c0 = m.c1 = true;
    n.info.envelope = DecayEnvelope::polynomial((t + 1.0) / kPi, 1.0);
    n.info.sup_bound = t / kPi;
    n.info.bandwidth = t;
    n.info.scale = 1.0 / t;
    return Node::make(std::move(n));
}

Function Function::gauss_weierstrass(double alpha)
{
    check_param(alpha, "gauss-weierstrass parameter alpha");
    Node n;
    n.kind = Kind::GaussWeierstrass;
    n.p = {alpha};
    const double c = 1.0 / std::sqrt(kPi * alpha);
    n.info.membership = smooth_positive_flags();
    n.info.envelope = DecayEnvelope::gaussian(c, 1.0 / alpha);
    n.info.sup_bound = c;
    n.info.scale = std::sqrt(alpha);
    return Node::make(std::move(n));
}

double bump_normalization()
{
    static const double c = [] {
        QuadratureRequest req;
        req.integrand = [](double x) { return cplx(bump_psi(x), 0.0); };
        req.domain = Domain::finite(-1.0, 1.0);
        req.tol = 1e-15;
        return 1.0 / integrate(req).value.real();
    }();
    return c;
}

double bump(double x) { return bump_normalization() * bump_psi(x); }

Function Function::bump()
{
    Node n;
    n.kind = Kind::Bump;
    n.p = {bump_normalization()};
    n.info.membership = smooth_positive_flags();
    n.info.membership.compact = true;
    n.info.support = Interval{-1.0, 1.0};
    n.info.sup_bound = n.p[0] * std::exp(-2.0);
    n.info.envelope = DecayEnvelope::compact(1.0, n.info.sup_bound);
    return Node::make(std::move(n));
}

Function Function::piecewise_polynomial(std::vector<double> breaks,
                                        std::vector<std::vector<double>> coeffs)
{
    require(breaks.size() >= 2, ErrorCode::InvalidArgument, "piecewise polynomial needs at least two breakpoints");
    require(coeffs.size() + 1 == breaks.size(), ErrorCode::InvalidArgument,
            "piecewise polynomial needs one coefficient list per piece");
    for (std::size_t i = 0; i < breaks.size(); ++i) {
        require(std::isfinite(breaks[i]), ErrorCode::InvalidArgument, "breakpoints must be finite");
        if (i > 0) {
            require(breaks[i] > breaks[i - 1], ErrorCode::InvalidArgument,
                    "breakpoints must be strictly increasing");
        }
    }
    for (const auto& c : coeffs) {
        require(!c.empty(), ErrorCode::InvalidArgument, "empty coefficient list");
        for (double v : c) require(std::isfinite(v), ErrorCode::InvalidArgument, "coefficients must be finite");
    }

    const std::size_t pieces = coeffs.size();
    auto value_at_end = [&](std::size_t i) { return poly_eval(coeffs[i], breaks[i + 1] - breaks[i]); };
    auto deriv_at_end = [&](std::size_t i) { return poly_deriv(coeffs[i], breaks[i + 1] - breaks[i]); };

    double sup = 0.0;
    for (std::size_t i = 0; i < pieces; ++i) {
        const double w = breaks[i + 1] - breaks[i];
        double b = 0.0;
        double wp = 1.0;
        for (double c : coeffs[i]) {
            b += std::abs(c) * wp;
            wp *= w;
        }
        sup = std::max(sup, b);
    }

    std::vector<double> jumps;
    bool kink_free = true;
    const double vtol = 1e-12 * std::max(1.0, sup);
    if (std::abs(coeffs.front()[0]) > vtol) jumps.push_back(breaks.front());
    if (std::abs(value_at_end(pieces - 1)) > vtol) jumps.push_back(breaks.back());
    for (std::size_t i = 0; i + 1 < pieces; ++i) {
        if (std::abs(value_at_end(i) - coeffs[i + 1][0]) > vtol) jumps.push_back(breaks[i + 1]);
        const double d1 = coeffs[i + 1].size() > 1 ? coeffs[i + 1][1] : 0.0;
        if (std::abs(deriv_at_end(i) - d1) > vtol) kink_free = false;
    }
    const double d0 = coeffs.front().size() > 1 ? coeffs.front()[1] : 0.0;
    if (std::abs(d0) > vtol || std::abs(deriv_at_end(pieces - 1)) > vtol) kink_free = false;

    Node n;
    n.kind = Kind::PiecewisePolynomial;
    n.p = breaks;
    n.coeffs = std::move(coeffs);
    Membership& m = n.info.membership;
    m.l1 = m.l2 = m.bounded = m.compact = true;
    m.continuous = jumps.empty();
    m.c0 = m.continuous;
    m.c1 = m.continuous && kink_free;
    n.info.support = Interval{breaks.front(), breaks.back()};
    n.info.breakpoints = breaks;
    n.info.lipschitz_exceptions = jumps;
    n.info.sup_bound = sup;
    n.info.envelope = DecayEnvelope::compact(std::max(std::abs(breaks.front()), std::abs(breaks.back())), sup);
    n.info.scale = breaks.back() - breaks.front();
    return Node::make(std::move(n));
}

Function Function::x_times(const Function& inner)
{
    const FunctionInfo& fi = inner.info();
    Node n;
    n.kind = Kind::XTimes;
    n.kids = {inner};
    FunctionInfo& info = n.info;
    info.support = fi.support;
    info.breakpoints = fi.breakpoints;
    info.lipschitz_exceptions = fi.lipschitz_exceptions;
    info.bandwidth = fi.bandwidth;
    info.scale = fi.scale;
    Membership& m = info.membership;
    m.continuous = fi.membership.continuous;
    m.c1 = fi.membership.c1;
    m.compact = fi.membership.compact;
    if (fi.envelope) {
        const DecayEnvelope xe = envelope_rules::x_times(*fi.envelope);
        info.envelope = xe;
        const bool decays = xe.kind() != DecayEnvelope::Class::Polynomial || xe.parameter() > 0.0;
        m.bounded = fi.membership.bounded;
        if (m.bounded) {
            info.sup_bound = xe.kind() == DecayEnvelope::Class::CompactSupport
                                 ? mul0(xe.radius(), fi.sup_bound)
                                 : std::max(fi.sup_bound, xe.constant());
        }
        m.l1 = m.bounded && xe.integrable();
        m.l2 = m.bounded && (xe.integrable() || (xe.kind() == DecayEnvelope::Class::Polynomial && xe.parameter() > 0.5));
        m.c0 = m.continuous && m.bounded && decays;
    }
    return Node::make(std::move(n));
}

// ---------------------------------------------------------------------------
// Combinators
// ---------------------------------------------------------------------------

Function Function::sum(const Function& f, const Function& g)
{
    const FunctionInfo& a = f.info();
    const FunctionInfo& b = g.info();
    Node n;
    n.kind = Kind::Sum;
    n.kids = {f, g};
    Membership& m = n.info.membership;
    const Membership& ma = a.membership;
    const Membership& mb = b.membership;
    m.l1 = ma.l1 && mb.l1;
    m.l2 = ma.l2 && mb.l2;
    m.bounded = ma.bounded && mb.bounded;
    m.continuous = ma.continuous && mb.continuous;
    m.c0 = ma.c0 && mb.c0;
    m.compact = ma.compact && mb.compact;
    m.c1 = ma.c1 && mb.c1;
    m.nonnegative = ma.nonnegative && mb.nonnegative;
    if (a.envelope && b.envelope) n.info.envelope = envelope_rules::sum(*a.envelope, *b.envelope);
    if (a.support && b.support) {
        n.info.support = Interval{std::min(a.support->lo, b.support->lo), std::max(a.support->hi, b.support->hi)};
    }
    n.info.breakpoints = merged(a.breakpoints, b.breakpoints);
    n.info.lipschitz_exceptions = merged(a.lipschitz_exceptions, b.lipschitz_exceptions);
    n.info.sup_bound = a.sup_bound + b.sup_bound;
    n.info.bandwidth = std::max(a.bandwidth, b.bandwidth);
    n.info.scale = std::max(a.scale, b.scale);
    return Node::make(std::move(n));
}

Function Function::product(const Function& f, const Function& g)
{
    const FunctionInfo& a = f.info();
    const FunctionInfo& b = g.info();
    const Membership& ma = a.membership;
    const Membership& mb = b.membership;
    Node n;
    n.kind = Kind::Product;
    n.kids = {f, g};
    FunctionInfo& info = n.info;
    Membership& m = info.membership;
    m.bounded = ma.bounded && mb.bounded;
    m.continuous = ma.continuous && mb.continuous;
    m.compact = ma.compact || mb.compact;
    m.c1 = ma.c1 && mb.c1;
    m.nonnegative = ma.nonnegative && mb.nonnegative;
    m.c0 = (ma.c0 && mb.bounded && mb.continuous) || (mb.c0 && ma.bounded && ma.continuous);

    if (a.envelope && b.envelope) {
        info.envelope = envelope_rules::product(*a.envelope, a.sup_bound, *b.envelope, b.sup_bound);
    } else if (a.envelope && std::isfinite(b.sup_bound)) {
        info.envelope = envelope_rules::scaled(*a.envelope, b.sup_bound);
    } else if (b.envelope && std::isfinite(a.sup_bound)) {
        info.envelope = envelope_rules::scaled(*b.envelope, a.sup_bound);
    }
    const bool env_l1 = info.envelope && info.envelope->integrable();
    m.l1 = (ma.l1 && mb.bounded) || (mb.l1 && ma.bounded) || (ma.l2 && mb.l2) || (m.bounded && env_l1);
    m.l2 = (ma.l2 && mb.bounded) || (mb.l2 && ma.bounded) || (m.bounded && env_l1);

    if (a.support && b.support) {
        const double lo = std::max(a.support->lo, b.support->lo);
        const double hi = std::max(lo, std::min(a.support->hi, b.support->hi));
        info.support = Interval{lo, hi};
    } else if (a.support) {
        info.support = a.support;
    } else if (b.support) {
        info.support = b.support;
    }
    info.breakpoints = merged(a.breakpoints, b.breakpoints);
    info.lipschitz_exceptions = merged(a.lipschitz_exceptions, b.lipschitz_exceptions);
    if (info.support) {
        auto outside = [&](double x) { return x < info.support->lo || x > info.support->hi; };
        std::erase_if(info.breakpoints, outside);
        std::erase_if(info.lipschitz_exceptions, outside);
    }
    info.sup_bound = mul0(a.sup_bound, b.sup_bound);
    info.bandwidth = a.bandwidth + b.bandwidth;
    info.scale = std::max(a.scale, b.scale);
    if (a.support && b.support) info.scale = std::min(a.scale, b.scale);
    return Node::make(std::move(n));
}

Function Function::scaled(cplx c) const
{
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), ErrorCode::InvalidArgument,
            "scalar must be finite");
    const FunctionInfo& a = info();
    Node n;
    n.kind = Kind::ScalarMultiple;
    n.c = c;
    n.kids = {*this};
    n.info = a;
    const double ac = std::abs(c);
    n.info.membership.nonnegative = a.membership.nonnegative && c.imag() == 0.0 && c.real() >= 0.0;
    if (a.envelope) n.info.envelope = envelope_rules::scaled(*a.envelope, ac);
    n.info.sup_bound = mul0(a.sup_bound, ac);
    return Node::make(std::move(n));
}

Function Function::shifted(double t) const
{
    require(std::isfinite(t), ErrorCode::InvalidArgument, "shift must be finite");
    const FunctionInfo& a = info();
    Node n;
    n.kind = Kind::Shift;
    n.p = {t};
    n.kids = {*this};
    n.info = a;
    if (a.envelope) n.info.envelope = envelope_rules::shifted(*a.envelope, t);
    if (a.support) n.info.support = Interval{a.support->lo + t, a.support->hi + t};
    n.info.breakpoints = mapped(a.breakpoints, [t](double x) { return x + t; });
    n.info.lipschitz_exceptions = mapped(a.lipschitz_exceptions, [t](double x) { return x + t; });
    n.info.scale = a.scale + std::abs(t);
    return Node::make(std::move(n));
}

Function Function::dilated(double k) const
{
    require(std::isfinite(k) && k > 0.0, ErrorCode::InvalidArgument, "dilation requires k > 0");
    const FunctionInfo& a = info();
    Node n;
    n.kind = Kind::Dilate;
    n.p = {k};
    n.kids = {*this};
    n.info = a;
    if (a.envelope) n.info.envelope = envelope_rules::dilated(*a.envelope, k);
    if (a.support) n.info.support = Interval{a.support->lo / k, a.support->hi / k};
    n.info.breakpoints = mapped(a.breakpoints, [k](double x) { return x / k; });
    n.info.lipschitz_exceptions = mapped(a.lipschitz_exceptions, [k](double x) { return x / k; });
    n.info.bandwidth = a.bandwidth * k;
    n.info.scale = a.scale / k;
    return Node::make(std::move(n));
}

Function Function::modulated(double omega) const
{
    require(std::isfinite(omega), ErrorCode::InvalidArgument, "modulation frequency must be finite");
    const FunctionInfo& a = info();
    Node n;
    n.kind = Kind::Modulate;
    n.p = {omega};
    n.kids = {*this};
    n.info = a;
    n.info.membership.nonnegative = a.membership.nonnegative && omega == 0.0;
    n.info.bandwidth = a.bandwidth + std::abs(omega);
    return Node::make(std::move(n));
}

Function Function::reflected() const
{
    const FunctionInfo& a = info();
    Node n;
    n.kind = Kind::Reflect;
    n.kids = {*this};
    n.info = a;
    if (a.support) n.info.support = Interval{-a.support->hi, -a.support->lo};
    n.info.breakpoints = mapped(a.breakpoints, [](double x) { return -x; });
    n.info.lipschitz_exceptions = mapped(a.lipschitz_exceptions, [](double x) { return -x; });
    return Node::make(std::move(n));
}

Function Function::conjugated() const
{
    Node n;
    n.kind = Kind::Conjugate;
    n.kids = {*this};
    n.info = info();
    return Node::make(std::move(n));
}

Function Function::derivative() const
{
    const FunctionInfo& a = info();
    require(a.membership.c1, ErrorCode::PreconditionViolated,
            "derivative requires a continuously differentiable function");
    Node n;
    n.kind = Kind::Derivative;
    n.kids = {*this};
    Membership& m = n.info.membership;
    m.continuous = true;
    n.info.breakpoints = a.breakpoints;
    n.info.bandwidth = a.bandwidth;
    n.info.scale = a.scale;
    if (a.membership.compact && a.support) {
        const Function self = *this;
        double sup = 0.0;
        const double lo = a.support->lo;
        const double hi = a.support->hi;
        for (int i = 0; i <= 4096; ++i) {
            sup = std::max(sup, std::abs(self.evaluate_derivative(lo + (hi - lo) * i / 4096.0)));
        }
        m.l1 = m.l2 = m.bounded = m.c0 = m.compact = true;
        n.info.support = a.support;
        n.info.sup_bound = 1.25 * sup + 1e-12;
        n.info.envelope = DecayEnvelope::compact(std::max(std::abs(lo), std::abs(hi)), n.info.sup_bound);
    }
    return Node::make(std::move(n));
}

Function Function::opaque(std::string name, std::function<cplx(double)> eval, FunctionInfo info)
{
    Node n;
    n.kind = Kind::Opaque;
    n.name = std::move(name);
    n.fn = std::move(eval);
    n.info = std::move(info);
    return Node::make(std::move(n));
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

cplx Function::operator()(double x) const
{
    const Node& n = *node_;
    switch (n.kind) {
    case Kind::Gaussian: return std::exp(-n.p[0] * x * x);
    case Kind::Laplace: return std::exp(-n.p[0] * std::abs(x));
    case Kind::Indicator: return (x >= n.p[0] && x <= n.p[1]) ? 1.0 : 0.0;
    case Kind::PoissonKernel: {
        const double u = n.p[0];
        return u / (kPi * (u * u + x * x));
    }
    case Kind::FejerKernel: {
        const double t = n.p[0];
        const double s = sinc(t * x / 2.0);
        return t / (2.0 * kPi) * s * s;
    }
    case Kind::DirichletKernel: {
        const double t = n.p[0];
        return t / kPi * sinc(t * x);
    }
    case Kind::GaussWeierstrass: {
        const double al = n.p[0];
        return std::exp(-x * x / al) / std::sqrt(kPi * al);
    }
    case Kind::Bump: return n.p[0] * bump_psi(x);
    case Kind::PiecewisePolynomial: {
        const auto& b = n.p;
        if (x < b.front() || x > b.back()) return 0.0;
        std::size_t i = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), x) - b.begin());
        i = std::min(i, b.size() - 1) - 1;
        return poly_eval(n.coeffs[i], x - b[i]);
    }
    case Kind::XTimes: return x * n.kids[0](x);
    case Kind::Sum: return n.kids[0](x) + n.kids[1](x);
    case Kind::ScalarMultiple: return n.c * n.kids[0](x);
    case Kind::Shift: return n.kids[0](x - n.p[0]);
    case Kind::Dilate: return n.kids[0](n.p[0] * x);
    case Kind::Product: {
        const cplx a = n.kids[0](x);
        if (a == 0.0) return 0.0;
        return a * n.kids[1](x);
    }
    case Kind::Modulate: return std::polar(1.0, n.p[0] * x) * n.kids[0](x);
    case Kind::Reflect: return n.kids[0](-x);
    case Kind::Conjugate: return std::conj(n.kids[0](x));
    case Kind::Derivative: return n.kids[0].evaluate_derivative(x);
    case Kind::Opaque: return n.fn(x);
    }
    return 0.0;
}

cplx Function::evaluate_derivative(double x) const
{
    const Node& n = *node_;
    switch (n.kind) {
    case Kind::Gaussian: return -2.0 * n.p[0] * x * std::exp(-n.p[0] * x * x);
    case Kind::Laplace: {
        if (x == 0.0) return 0.0;
        return -n.p[0] * std::copysign(1.0, x) * std::exp(-n.p[0] * std::abs(x));
    }
    case Kind::Indicator: return 0.0;
    case Kind::PoissonKernel: {
        const double u = n.p[0];
        const double d = u * u + x * x;
        return -2.0 * u * x / (kPi * d * d);
    }
    case Kind::FejerKernel: {
        const double t = n.p[0];
        const double z = t * x / 2.0;
        return t * t / (2.0 * kPi) * sinc(z) * sinc_prime(z);
    }
    case Kind::DirichletKernel: {
        const double t = n.p[0];
        return t * t / kPi * sinc_prime(t * x);
    }
    case Kind::GaussWeierstrass: {
        const double al = n.p[0];
        return -2.0 * x / al * std::exp(-x * x / al) / std::sqrt(kPi * al);
    }
    case Kind::Bump: {
        if (std::abs(x) >= 1.0) return 0.0;
        const double a = 1.0 + x;
        const double b = 1.0 - x;
        return n.p[0] * bump_psi(x) * (2.0 / (a * a * a) - 2.0 / (b * b * b));
    }
    case Kind::PiecewisePolynomial: {
        const auto& b = n.p;
        if (x < b.front() || x > b.back()) return 0.0;
        std::size_t i = static_cast<std::size_t>(std::upper_bound(b.begin(), b.end(), x) - b.begin());
        i = std::min(i, b.size() - 1) - 1;
        return poly_deriv(n.coeffs[i], x - b[i]);
    }
    case Kind::XTimes: return n.kids[0](x) + x * n.kids[0].evaluate_derivative(x);
    case Kind::Sum: return n.kids[0].evaluate_derivative(x) + n.kids[1].evaluate_derivative(x);
    case Kind::ScalarMultiple: return n.c * n.kids[0].evaluate_derivative(x);
    case Kind::Shift: return n.kids[0].evaluate_derivative(x - n.p[0]);
    case Kind::Dilate: return n.p[0] * n.kids[0].evaluate_derivative(n.p[0] * x);
    case Kind::Product:
        return n.kids[0].evaluate_derivative(x) * n.kids[1](x) + n.kids[0](x) * n.kids[1].evaluate_derivative(x);
    case Kind::Modulate: {
        const cplx e = std::polar(1.0, n.p[0] * x);
        return e * (cplx(0.0, n.p[0]) * n.kids[0](x) + n.kids[0].evaluate_derivative(x));
    }
    case Kind::Reflect: return -n.kids[0].evaluate_derivative(-x);
    case Kind::Conjugate: return std::conj(n.kids[0].evaluate_derivative(x));
    case Kind::Derivative:
    case Kind::Opaque: break;
    }
    throw Error(ErrorCode::PreconditionViolated, "no pointwise derivative for " + describe());
}

Kind Function::kind() const { return node_->kind; }
const FunctionInfo& Function::info() const { return node_->info; }
const std::vector<Function>& Function::children() const { return node_->kids; }
const std::vector<double>& Function::parameters() const { return node_->p; }
cplx Function::coefficient() const { return node_->c; }

const std::vector<std::vector<double>>& Function::polynomial_coefficients() const { return node_->coeffs; }

std::string Function::describe() const
{
    const Node& n = *node_;
    std::ostringstream os;
    os.precision(17);
    auto kid = [&](std::size_t i) { return n.kids[i].describe(); };
    switch (n.kind) {
    case Kind::Gaussian: os << "gaussian(a=" << n.p[0] << ")"; break;
    case Kind::Laplace: os << "laplace(a=" << n.p[0] << ")"; break;
    case Kind::Indicator: os << "indicator[" << n.p[0] << "," << n.p[1] << "]"; break;
    case Kind::PoissonKernel: os << "poisson(u=" << n.p[0] << ")"; break;
    case Kind::FejerKernel: os << "fejer(t=" << n.p[0] << ")"; break;
    case Kind::DirichletKernel: os << "dirichlet(t=" << n.p[0] << ")"; break;
    case Kind::GaussWeierstrass: os << "gauss_weierstrass(alpha=" << n.p[0] << ")"; break;
    case Kind::Bump: os << "bump"; break;
    case Kind::PiecewisePolynomial: os << "piecewise_polynomial(" << n.coeffs.size() << " pieces)"; break;
    case Kind::XTimes: os << "x*" << kid(0); break;
    case Kind::Sum: os << "(" << kid(0) << " + " << kid(1) << ")"; break;
    case Kind::ScalarMultiple: os << "(" << n.c.real() << "+" << n.c.imag() << "i)*" << kid(0); break;
    case Kind::Shift: os << "shift(" << n.p[0] << ", " << kid(0) << ")"; break;
    case Kind::Dilate: os << "dilate(" << n.p[0] << ", " << kid(0) << ")"; break;
    case Kind::Product: os << "(" << kid(0) << " * " << kid(1) << ")"; break;
    case Kind::Modulate: os << "modulate(" << n.p[0] << ", " << kid(0) << ")"; break;
    case Kind::Reflect: os << "reflect(" << kid(0) << ")"; break;
    case Kind::Conjugate: os << "conj(" << kid(0) << ")"; break;
    case Kind::Derivative: os << "d/dx " << kid(0); break;
    case Kind::Opaque: os << n.name; break;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Closed-form transforms
// ---------------------------------------------------------------------------

std::optional<Function> Function::known_transform() const
{
    const Node& n = *node_;
    switch (n.kind) {
    case Kind::Gaussian: {
        const double a = n.p[0];
        return Function::gaussian(1.0 / (4.0 * a)).scaled(std::sqrt(kPi / a));
    }
    case Kind::Laplace: return Function::poisson_kernel(n.p[0]).scaled(2.0 * kPi);
    case Kind::Indicator: {
        const double c = 0.5 * (n.p[0] + n.p[1]);
        const double h = 0.5 * (n.p[1] - n.p[0]);
        Function d = Function::dirichlet_kernel(h).scaled(2.0 * kPi);
        return c == 0.0 ? d : d.modulated(-c);
    }
    case Kind::PoissonKernel: return Function::laplace(n.p[0]);
    case Kind::FejerKernel: {
        const double t = n.p[0];
        return Function::piecewise_polynomial({-t, 0.0, t}, {{0.0, 1.0 / t}, {1.0, -1.0 / t}});
    }
    case Kind::DirichletKernel: return Function::indicator(-n.p[0], n.p[0]);
    case Kind::GaussWeierstrass: return Function::gaussian(n.p[0] / 4.0);
    case Kind::XTimes: {
        const Function& in = n.kids[0];
        if (in.kind() == Kind::Gaussian) {
            const double a = in.parameters()[0];
            const cplx c(0.0, -std::sqrt(kPi / a) / (2.0 * a));
            return Function::x_times(Function::gaussian(1.0 / (4.0 * a))).scaled(c);
        }
        if (in.kind() == Kind::Laplace) {
            const double a = in.parameters()[0];
            const Function p = Function::poisson_kernel(a);
            const cplx c(0.0, -4.0 * a * kPi * kPi / (a * a));
            return Function::x_times(Function::product(p, p)).scaled(c);
        }
        return std::nullopt;
    }
    case Kind::Sum: {
        auto a = n.kids[0].known_transform();
        auto b = n.kids[1].known_transform();
        if (!a || !b) return std::nullopt;
        return Function::sum(*a, *b);
    }
    case Kind::ScalarMultiple: {
        auto a = n.kids[0].known_transform();
        if (!a) return std::nullopt;
        return a->scaled(n.c);
    }
    case Kind::Shift: {
        auto a = n.kids[0].known_transform();
        if (!a) return std::nullopt;
        return a->modulated(-n.p[0]);
    }
    case Kind::Dilate: {
        auto a = n.kids[0].known_transform();
        if (!a) return std::nullopt;
        const double k = n.p[0];
        return a->dilated(1.0 / k).scaled(1.0 / k);
    }
    case Kind::Modulate: {
        auto a = n.kids[0].known_transform();
        if (!a) return std::nullopt;
        return a->shifted(n.p[0]);
    }
    case Kind::Reflect: {
        auto a = n.kids[0].known_transform();
        if (!a) return std::nullopt;
        return a->reflected();
    }
    case Kind::Conjugate: {
        auto a = n.kids[0].known_transform();
        if (!a) return std::nullopt;
        return a->reflected().conjugated();
    }
    case Kind::Derivative: {
        auto a = n.kids[0].known_transform();
        if (!a) return std::nullopt;
        return Function::x_times(*a).scaled(cplx(0.0, 1.0));
    }
    case Kind::Bump:
    case Kind::PiecewisePolynomial:
    case Kind::Product:
    case Kind::Opaque: return std::nullopt;
    }
    return std::nullopt;
}

std::optional<cplx> fourier_oracle(const Function& f, double y)
{
    auto hat = f.known_transform();
    if (!hat) return std::nullopt;
    return (*hat)(y);
}

void MeasureSpec::validate() const
{
    std::set<double> seen;
    for (const Atom& a : atoms) {
        require(std::isfinite(a.location), ErrorCode::InvalidArgument, "atom location must be finite");
        require(std::isfinite(a.mass.real()) && std::isfinite(a.mass.imag()), ErrorCode::InvalidArgument,
                "atom mass must be finite");
        require(seen.insert(a.location).second, ErrorCode::InvalidArgument, "atom locations must be distinct");
    }
    if (density) {
        require(density->membership().l1, ErrorCode::NotIntegrable, "measure density must be integrable");
    }
}

} // namespace flab
