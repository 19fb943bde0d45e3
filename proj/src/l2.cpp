#include "flab/l2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flab/conv.hpp"
#include "flab/quad.hpp"

namespace flab {

namespace {

constexpr double kTruncationForL2 = 16.0;
constexpr double kMaxBandRadius = 1048576.0;

/// ∫g over the line for a transform h without a decay envelope: [−Y, Y] plus bands [Y, 2Y] until a band
/// contributes less than tol/4.
QuadratureResult banded_integral(const Integrand& g, double Y0, std::optional<double> freq, double tol,
                                 double& radius)
{
    auto piece = [&](double a, double b, double t) {
        QuadratureRequest req;
        req.integrand = g;
        req.domain = Domain::finite(a, b);
        req.tol = t;
        req.frequency_hint = freq;
        return integrate(req);
    };
    QuadratureResult total = piece(-Y0, Y0, tol / 4.0);
    double Y = Y0;
    int quiet = 0;
    while (quiet < 2) {
        if (Y > kMaxBandRadius) {
            std::ostringstream os;
            os << "band contributions still above " << tol << " at radius " << Y;
            throw Error(ErrorCode::NonConvergent, os.str());
        }
        const QuadratureResult lo = piece(-2.0 * Y, -Y, tol / 16.0);
        const QuadratureResult hi = piece(Y, 2.0 * Y, tol / 16.0);
        const cplx band = lo.value + hi.value;
        total.value += band;
        total.error_estimate += lo.error_estimate + hi.error_estimate;
        total.evaluations += lo.evaluations + hi.evaluations;
        total.panels_used += lo.panels_used + hi.panels_used;
        quiet = std::abs(band) < tol / 4.0 ? quiet + 1 : 0;
        Y *= 2.0;
    }
    // The last band below tol/4 bounds what is left beyond it under monotone decay.
    total.error_estimate += tol / 4.0;
    radius = Y;
    return total;
}

std::optional<double> transform_oscillation(const Function& f)
{
    const FunctionInfo& info = f.info();
    if (!info.support) return std::nullopt;
    const double r = std::max(std::abs(info.support->lo), std::abs(info.support->hi));
    return r > 0.0 ? std::optional<double>(r) : std::nullopt;
}

double y_start(const Function& hat)
{
    return 16.0 * std::max(1.0, hat.info().scale);
}

/// Ff for the L² pairing: the closed form when known, else the transform of the largest default truncation.
Function l2_transform_function(const Function& f, Convention conv, double tol)
{
    if (auto hat = f.known_transform()) {
        return conv == Convention::Classic ? *hat : hat->scaled(forward_prefactor(conv));
    }
    if (f.membership().l1) return transform_function(f, conv, tol);
    return transform_function(truncate(f, kTruncationForL2), conv, tol);
}

} // namespace

void L2TransformPlan::validate() const
{
    require(f.membership().l2, ErrorCode::PreconditionViolated, f.describe() + " is not flagged L2");
    require(!truncation_schedule.empty(), ErrorCode::InvalidArgument, "the truncation schedule is empty");
    for (std::size_t i = 0; i < truncation_schedule.size(); ++i) {
        const double k = truncation_schedule[i];
        require(k > 0.0 && std::isfinite(k), ErrorCode::InvalidArgument, "truncation radii must be positive");
        require(i == 0 || k > truncation_schedule[i - 1], ErrorCode::InvalidArgument,
                "truncation radii must increase");
    }
    require(!y_grid.empty(), ErrorCode::InvalidArgument, "the evaluation grid is empty");
    require(std::is_sorted(y_grid.begin(), y_grid.end()), ErrorCode::InvalidArgument, "the grid must be sorted");
    require(tol > 0.0, ErrorCode::InvalidArgument, "tol must be positive");
}

Function truncate(const Function& f, double k)
{
    require(k > 0.0 && std::isfinite(k), ErrorCode::InvalidArgument, "truncation radius must be positive");
    return f * Function::indicator(-k, k);
}

double grid_l2(const std::vector<double>& grid, const std::vector<cplx>& values)
{
    require(grid.size() == values.size() && !grid.empty(), ErrorCode::InvalidArgument, "grid and values differ");
    if (grid.size() == 1) return std::abs(values[0]);
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        s += 0.5 * (grid[i + 1] - grid[i]) * (std::norm(values[i]) + std::norm(values[i + 1]));
    }
    return std::sqrt(s);
}

L2TransformResult l2_transform(const L2TransformPlan& plan)
{
    plan.validate();
    L2TransformResult out;
    out.y = plan.y_grid;
    const double inner = plan.tol * 1e-3;
    std::vector<cplx> prev;
    for (double k : plan.truncation_schedule) {
        const Function fk = truncate(plan.f, k);
        std::vector<cplx> cur;
        cur.reserve(plan.y_grid.size());
        for (double y : plan.y_grid) cur.push_back(fourier(fk, y, Convention::Unitary, inner).value);
        if (!prev.empty()) {
            std::vector<cplx> diff(cur.size());
            for (std::size_t i = 0; i < cur.size(); ++i) diff[i] = cur[i] - prev[i];
            out.gaps.push_back(grid_l2(plan.y_grid, diff));
        }
        prev = std::move(cur);
    }
    out.values = std::move(prev);
    out.final_gap = out.gaps.empty() ? 0.0 : out.gaps.back();
    for (std::size_t i = 1; i < out.gaps.size(); ++i) {
        if (out.gaps[i] > out.gaps[i - 1] + plan.tol) {
            std::ostringstream os;
            os << "truncation gap grew from " << out.gaps[i - 1] << " to " << out.gaps[i];
            throw Error(ErrorCode::NotCauchy, os.str());
        }
    }
    if (out.final_gap > plan.tol) {
        std::ostringstream os;
        os << "final truncation gap " << out.final_gap << " exceeds " << plan.tol;
        throw Error(ErrorCode::NotCauchy, os.str());
    }
    return out;
}

PlancherelResult plancherel_defect(const Function& f, double tol)
{
    require(f.membership().l2, ErrorCode::PreconditionViolated, f.describe() + " is not flagged L2");
    PlancherelResult r;
    r.f_norm = lp_norm(f, 2, tol).value.real();
    const Function hat = l2_transform_function(f, Convention::Unitary, tol * 1e-3);
    if (hat.info().envelope || hat.info().support) {
        r.transform_norm = lp_norm(hat, 2, tol).value.real();
    } else {
        const std::optional<double> w = transform_oscillation(f);
        const Integrand g = [hat](double y) { return cplx(std::norm(hat(y)), 0.0); };
        const QuadratureResult q =
            banded_integral(g, y_start(hat), w ? std::optional<double>(2.0 * *w) : std::nullopt, tol, r.transform_radius);
        r.transform_norm = std::sqrt(std::max(0.0, q.value.real()));
    }
    r.defect = std::abs(r.transform_norm - r.f_norm);
    return r;
}

MultiplicationResult multiplication_formula_residual(const Function& f, const Function& g, Convention conv,
                                                     double tol)
{
    const Membership& a = f.membership();
    const Membership& b = g.membership();
    MultiplicationResult r;
    Function fh = f;
    Function gh = g;
    if (a.l1 && b.l1) {
        fh = transform_function(f, conv, tol * 1e-2);
        gh = transform_function(g, conv, tol * 1e-2);
    } else {
        require(a.l2 && b.l2, ErrorCode::PreconditionViolated,
                "the multiplication formula needs both functions in L1 or both in L2");
        r.l2_path = true;
        fh = l2_transform_function(f, conv, tol * 1e-2);
        gh = l2_transform_function(g, conv, tol * 1e-2);
    }
    r.lhs = integrate_function(fh * g, Domain::real_line(), tol).value;
    r.rhs = integrate_function(f * gh, Domain::real_line(), tol).value;
    r.residual = std::abs(r.lhs - r.rhs);
    return r;
}

ReflectionResult reflection_inverse_residual(const Function& f, double x, double tol)
{
    require(f.membership().l1 && f.membership().l2, ErrorCode::PreconditionViolated,
            f.describe() + " must be flagged L1 and L2");
    require(std::isfinite(x), ErrorCode::InvalidArgument, "x must be finite");
    const Function hat = transform_function(f, Convention::Unitary, tol * 1e-2);
    ReflectionResult r;
    if (hat.membership().l1) {
        r.round_trip = fourier(hat, -x, Convention::Unitary, tol).value;
    } else {
        // (F h)(−x) = (F⁻¹h)(x), taken as a symmetric limit when h is not integrable.
        r.round_trip = inverse_symmetric(hat, x, Convention::Unitary, default_inversion_schedule(), tol).value;
    }
    r.value = f(x);
    r.residual = std::abs(r.round_trip - r.value);
    return r;
}

PositiveTransformResult positive_transform_check(const Function& f, double tol)
{
    require(f.membership().l1, ErrorCode::PreconditionViolated, f.describe() + " is not flagged L1");
    const auto& bps = f.info().breakpoints;
    require(std::find(bps.begin(), bps.end(), 0.0) == bps.end() || f.membership().continuous,
            ErrorCode::PreconditionViolated, f.describe() + " may be discontinuous at 0");
    const Function hat = transform_function(f, Convention::Classic, tol * 1e-2);
    PositiveTransformResult r;
    r.min_probe = kInf;
    for (double y : sup_grid(hat, kPositiveProbePoints)) {
        const cplx v = hat(y);
        r.min_probe = std::min(r.min_probe, v.real());
        if (v.real() < -1e-9 || std::abs(v.imag()) > 1e-9) {
            std::ostringstream os;
            os << "transform of " << f.describe() << " is " << v.real() << (v.imag() < 0 ? " - " : " + ")
               << std::abs(v.imag()) << "i at y = " << y;
            throw Error(ErrorCode::NegativeTransform, os.str());
        }
    }
    r.center_value = f(0.0).real();
    try {
        if (hat.info().envelope || hat.info().support) {
            r.transform_integral = integrate_function(hat, Domain::real_line(), tol).value.real();
        } else {
            double radius = 0.0;
            const std::optional<double> w = transform_oscillation(f);
            r.transform_integral =
                banded_integral([hat](double y) { return hat(y); }, y_start(hat), w, tol, radius).value.real();
        }
        r.integrable = std::isfinite(r.transform_integral);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NonConvergent && e.code() != ErrorCode::NotIntegrable) throw;
        r.integrable = false;
    }
    if (r.integrable) r.center_residual = std::abs(r.center_value - r.transform_integral / (2.0 * kPi));
    return r;
}

} // namespace flab
