#include <algorithm>
#include <cmath>
#include <sstream>

#include "flab/funcspace.hpp"

namespace flab {

namespace {

int slowness(DecayEnvelope::Class c)
{
    switch (c) {
    case DecayEnvelope::Class::CompactSupport: return 0;
    case DecayEnvelope::Class::Gaussian: return 1;
    case DecayEnvelope::Class::Exponential: return 2;
    case DecayEnvelope::Class::Polynomial: return 3;
    }
    return 3;
}

/// Product where 0·inf is taken as 0 (a vanishing factor wins over an unknown bound).
double mul(double a, double b) { return (a == 0.0 || b == 0.0) ? 0.0 : a * b; }

void check_positive(double v, const char* what)
{
    require(std::isfinite(v) && v > 0.0, ErrorCode::InvalidArgument,
            std::string(what) + " must be positive and finite");
}

} // namespace

DecayEnvelope DecayEnvelope::compact(double radius, double sup)
{
    require(radius >= 0.0 && std::isfinite(radius), ErrorCode::InvalidArgument,
            "compact envelope radius must be finite and nonnegative");
    require(sup >= 0.0, ErrorCode::InvalidArgument, "compact envelope sup must be nonnegative");
    return {Class::CompactSupport, sup, radius};
}

DecayEnvelope DecayEnvelope::exponential(double C, double a)
{
    require(C >= 0.0, ErrorCode::InvalidArgument, "envelope constant must be nonnegative");
    check_positive(a, "exponential rate");
    return {Class::Exponential, C, a};
}

DecayEnvelope DecayEnvelope::gaussian(double C, double a)
{
    require(C >= 0.0, ErrorCode::InvalidArgument, "envelope constant must be nonnegative");
    check_positive(a, "gaussian rate");
    return {Class::Gaussian, C, a};
}

DecayEnvelope DecayEnvelope::polynomial(double C, double p)
{
    require(C >= 0.0, ErrorCode::InvalidArgument, "envelope constant must be nonnegative");
    require(p >= 0.0 && std::isfinite(p), ErrorCode::InvalidArgument,
            "polynomial exponent must be finite and nonnegative");
    return {Class::Polynomial, C, p};
}

double DecayEnvelope::bound(double x) const
{
    const double ax = std::abs(x);
    switch (kind_) {
    case Class::CompactSupport: return ax <= param_ ? c_ : 0.0;
    case Class::Exponential: return c_ * std::exp(-param_ * ax);
    case Class::Gaussian: return c_ * std::exp(-param_ * ax * ax);
    case Class::Polynomial: return c_ * std::pow(1.0 + ax, -param_);
    }
    return kInf;
}

double DecayEnvelope::tail(double R) const
{
    R = std::max(R, 0.0);
    switch (kind_) {
    case Class::CompactSupport:
        if (R >= param_) return 0.0;
        return std::isfinite(c_) ? 2.0 * c_ * (param_ - R) : kInf;
    case Class::Exponential: return 2.0 * c_ * std::exp(-param_ * R) / param_;
    case Class::Gaussian: return c_ * std::sqrt(kPi / param_) * std::erfc(std::sqrt(param_) * R);
    case Class::Polynomial:
        if (param_ <= 1.0) return kInf;
        return 2.0 * c_ / ((param_ - 1.0) * std::pow(1.0 + R, param_ - 1.0));
    }
    return kInf;
}

double DecayEnvelope::total_mass() const { return tail(0.0); }

bool DecayEnvelope::integrable() const { return std::isfinite(total_mass()); }

DecayEnvelope DecayEnvelope::weakened_to(Class target, double param) const
{
    if (kind_ == target) {
        switch (kind_) {
        case Class::CompactSupport: return *this;
        case Class::Exponential:
        case Class::Gaussian:
        case Class::Polynomial:
            require(param <= param_, ErrorCode::InvalidArgument, "cannot strengthen an envelope");
            return {kind_, c_, param};
        }
    }
    require(slowness(target) > slowness(kind_), ErrorCode::InvalidArgument,
            "envelope conversion must go to a slower class");
    switch (kind_) {
    case Class::CompactSupport: {
        const double R = param_;
        if (target == Class::Gaussian) return gaussian(c_ * std::exp(param * R * R), param);
        if (target == Class::Exponential) return exponential(c_ * std::exp(param * R), param);
        return polynomial(c_ * std::pow(1.0 + R, param), param);
    }
    case Class::Gaussian: {
        const double a = param_;
        if (target == Class::Exponential) return exponential(c_ * std::exp(param * param / (4.0 * a)), param);
        const double s = 0.5 * (-1.0 + std::sqrt(1.0 + 2.0 * param / a));
        return polynomial(c_ * std::pow(1.0 + s, param) * std::exp(-a * s * s), param);
    }
    case Class::Exponential: {
        const double a = param_;
        const double K = param > a ? std::pow(param / a, param) * std::exp(a - param) : 1.0;
        return polynomial(c_ * K, param);
    }
    case Class::Polynomial: break;
    }
    throw Error(ErrorCode::InvalidArgument, "unsupported envelope conversion");
}

std::string DecayEnvelope::describe() const
{
    std::ostringstream os;
    os.precision(6);
    switch (kind_) {
    case Class::CompactSupport: os << "compact(R=" << param_ << ", sup=" << c_ << ")"; break;
    case Class::Exponential: os << "exponential(C=" << c_ << ", a=" << param_ << ")"; break;
    case Class::Gaussian: os << "gaussian(C=" << c_ << ", a=" << param_ << ")"; break;
    case Class::Polynomial: os << "polynomial(C=" << c_ << ", p=" << param_ << ")"; break;
    }
    return os.str();
}

double envelope_radius(const DecayEnvelope& env, double tail_budget)
{
    require(tail_budget > 0.0 && std::isfinite(tail_budget), ErrorCode::InvalidArgument,
            "tail budget must be positive");
    const double C = env.constant();
    const double q = env.parameter();
    switch (env.kind()) {
    case DecayEnvelope::Class::CompactSupport: return env.radius();
    case DecayEnvelope::Class::Exponential:
        return std::max(0.0, std::log(2.0 * C / (q * tail_budget)) / q);
    case DecayEnvelope::Class::Polynomial:
        require(q > 1.0, ErrorCode::InvalidArgument, "polynomial envelope with p <= 1 is not integrable");
        return std::max(0.0, std::pow(2.0 * C / ((q - 1.0) * tail_budget), 1.0 / (q - 1.0)) - 1.0);
    case DecayEnvelope::Class::Gaussian: {
        if (env.tail(0.0) <= tail_budget) return 0.0;
        double lo = 0.0;
        double hi = 1.0 / std::sqrt(q);
        while (env.tail(hi) > tail_budget) {
            lo = hi;
            hi *= 2.0;
        }
        for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            (env.tail(mid) > tail_budget ? lo : hi) = mid;
        }
        return hi;
    }
    }
    return kInf;
}

namespace envelope_rules {

using C = DecayEnvelope::Class;

DecayEnvelope scaled(const DecayEnvelope& e, double factor)
{
    factor = std::abs(factor);
    switch (e.kind()) {
    case C::CompactSupport: return DecayEnvelope::compact(e.radius(), mul(e.constant(), factor));
    case C::Exponential: return DecayEnvelope::exponential(e.constant() * factor, e.parameter());
    case C::Gaussian: return DecayEnvelope::gaussian(e.constant() * factor, e.parameter());
    case C::Polynomial: return DecayEnvelope::polynomial(e.constant() * factor, e.parameter());
    }
    return e;
}

DecayEnvelope shifted(const DecayEnvelope& e, double t)
{
    const double at = std::abs(t);
    const double c = e.constant();
    const double q = e.parameter();
    switch (e.kind()) {
    case C::CompactSupport: return DecayEnvelope::compact(q + at, c);
    case C::Exponential:
        if (q * at <= 200.0) return DecayEnvelope::exponential(c * std::exp(q * at), q);
        break;
    case C::Gaussian:
        if (q * at * at <= 200.0) return DecayEnvelope::gaussian(c * std::exp(q * at * at), q / 2.0);
        {
            // Far shifts: e^{−q u²} ≤ e^{b²/4q} e^{−b|u|} with b|t| = 100 keeps the constant finite.
            const double b = 100.0 / at;
            return DecayEnvelope::exponential(c * std::exp(100.0 + b * b / (4.0 * q)), b);
        }
    case C::Polynomial: return DecayEnvelope::polynomial(c * std::pow(1.0 + at, q), q);
    }
    // Exponential shifted so far that e^{q|t|} would overflow: continue with a degree-4 polynomial bound.
    return shifted(e.weakened_to(C::Polynomial, 4.0), t);
}

DecayEnvelope dilated(const DecayEnvelope& e, double k)
{
    const double c = e.constant();
    const double q = e.parameter();
    switch (e.kind()) {
    case C::CompactSupport: return DecayEnvelope::compact(q / k, c);
    case C::Exponential: return DecayEnvelope::exponential(c, q * k);
    case C::Gaussian: return DecayEnvelope::gaussian(c, q * k * k);
    case C::Polynomial: return DecayEnvelope::polynomial(c * std::pow(std::max(1.0, 1.0 / k), q), q);
    }
    return e;
}

DecayEnvelope x_times(const DecayEnvelope& e)
{
    const double c = e.constant();
    const double q = e.parameter();
    switch (e.kind()) {
    case C::CompactSupport: return DecayEnvelope::compact(q, c * q);
    case C::Exponential: return DecayEnvelope::exponential(2.0 * c / (q * std::exp(1.0)), q / 2.0);
    case C::Gaussian: return DecayEnvelope::gaussian(c / std::sqrt(q * std::exp(1.0)), q / 2.0);
    case C::Polynomial: return DecayEnvelope::polynomial(c, std::max(0.0, q - 1.0));
    }
    return e;
}

namespace {

/// Picks the slower of two envelopes as the common class.
std::pair<C, double> common_class(const DecayEnvelope& a, const DecayEnvelope& b)
{
    if (slowness(a.kind()) > slowness(b.kind())) return {a.kind(), a.parameter()};
    if (slowness(b.kind()) > slowness(a.kind())) return {b.kind(), b.parameter()};
    return {a.kind(), std::min(a.parameter(), b.parameter())};
}

double l1_of(const DecayEnvelope& e) { return e.total_mass(); }

} // namespace

DecayEnvelope sum(const DecayEnvelope& a, const DecayEnvelope& b)
{
    if (a.kind() == C::CompactSupport && b.kind() == C::CompactSupport) {
        return DecayEnvelope::compact(std::max(a.radius(), b.radius()), a.constant() + b.constant());
    }
    const auto [cls, q] = common_class(a, b);
    const DecayEnvelope wa = a.weakened_to(cls, q);
    const DecayEnvelope wb = b.weakened_to(cls, q);
    switch (cls) {
    case C::Exponential: return DecayEnvelope::exponential(wa.constant() + wb.constant(), q);
    case C::Gaussian: return DecayEnvelope::gaussian(wa.constant() + wb.constant(), q);
    default: return DecayEnvelope::polynomial(wa.constant() + wb.constant(), q);
    }
}

DecayEnvelope product(const DecayEnvelope& a, double sup_a, const DecayEnvelope& b, double sup_b)
{
    if (a.kind() == C::CompactSupport && b.kind() == C::CompactSupport) {
        return DecayEnvelope::compact(std::min(a.radius(), b.radius()), mul(a.constant(), b.constant()));
    }
    if (a.kind() == C::CompactSupport) {
        return DecayEnvelope::compact(a.radius(), mul(a.constant(), std::min(sup_b, b.constant())));
    }
    if (b.kind() == C::CompactSupport) {
        return DecayEnvelope::compact(b.radius(), mul(b.constant(), std::min(sup_a, a.constant())));
    }
    const double c = a.constant() * b.constant();
    if (a.kind() == C::Gaussian && b.kind() == C::Gaussian) {
        return DecayEnvelope::gaussian(c, a.parameter() + b.parameter());
    }
    if (a.kind() == C::Gaussian) return DecayEnvelope::gaussian(c, a.parameter());
    if (b.kind() == C::Gaussian) return DecayEnvelope::gaussian(c, b.parameter());
    if (a.kind() == C::Exponential && b.kind() == C::Exponential) {
        return DecayEnvelope::exponential(c, a.parameter() + b.parameter());
    }
    if (a.kind() == C::Exponential) return DecayEnvelope::exponential(c, a.parameter());
    if (b.kind() == C::Exponential) return DecayEnvelope::exponential(c, b.parameter());
    return DecayEnvelope::polynomial(c, a.parameter() + b.parameter());
}

std::optional<DecayEnvelope> convolution(const DecayEnvelope& a, const DecayEnvelope& b)
{
    if (!a.integrable() && !b.integrable()) return std::nullopt;
    if (a.kind() == C::CompactSupport && b.kind() == C::CompactSupport) {
        const double sup = std::min(mul(a.constant(), l1_of(b)), mul(b.constant(), l1_of(a)));
        return DecayEnvelope::compact(a.radius() + b.radius(), sup);
    }
    if (a.kind() == C::CompactSupport) {
        if (!a.integrable()) return std::nullopt;
        return scaled(shifted(b, a.radius()), l1_of(a));
    }
    if (b.kind() == C::CompactSupport) return convolution(b, a);
    if (!a.integrable() || !b.integrable()) return std::nullopt;

    if (a.kind() == C::Gaussian && b.kind() == C::Gaussian) {
        const double s = a.parameter() + b.parameter();
        return DecayEnvelope::gaussian(a.constant() * b.constant() * std::sqrt(kPi / s),
                                       a.parameter() * b.parameter() / s);
    }
    if (a.kind() != C::Polynomial && b.kind() != C::Polynomial) {
        const double r = (a.kind() == C::Exponential && b.kind() == C::Exponential)
                             ? std::min(a.parameter(), b.parameter())
                             : (a.kind() == C::Exponential ? a.parameter() : b.parameter());
        const DecayEnvelope ea = a.weakened_to(C::Exponential, r);
        const DecayEnvelope eb = b.weakened_to(C::Exponential, r);
        return DecayEnvelope::exponential(ea.constant() * eb.constant() * 4.0 / r, r / 2.0);
    }
    const double p = a.kind() == C::Polynomial ? a.parameter() : kInf;
    const double q = b.kind() == C::Polynomial ? b.parameter() : kInf;
    const DecayEnvelope pa = a.kind() == C::Polynomial ? a : a.weakened_to(C::Polynomial, q);
    const DecayEnvelope pb = b.kind() == C::Polynomial ? b : b.weakened_to(C::Polynomial, p);
    const double p1 = pa.parameter();
    const double p2 = pb.parameter();
    const double K = std::pow(2.0, p1) * 2.0 / (p2 - 1.0) + std::pow(2.0, p2) * 2.0 / (p1 - 1.0);
    return DecayEnvelope::polynomial(pa.constant() * pb.constant() * K, std::min(p1, p2));
}

} // namespace envelope_rules

} // namespace flab
