#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flab/funcspace.hpp"

namespace flab {

using Integrand = std::function<cplx(double)>;

struct Domain {
    enum class Kind { Finite, UpperHalfLine, LowerHalfLine, FullLine };
    Kind kind = Kind::FullLine;
    double a = 0.0;
    double b = 0.0;

    static Domain finite(double a, double b) { return {Kind::Finite, a, b}; }
    /// [a, ∞)
    static Domain from(double a) { return {Kind::UpperHalfLine, a, 0.0}; }
    /// (−∞, b]
    static Domain until(double b) { return {Kind::LowerHalfLine, 0.0, b}; }
    static Domain real_line() { return {Kind::FullLine, 0.0, 0.0}; }

    bool infinite() const { return kind != Kind::Finite; }
};

inline constexpr std::size_t kDefaultMaxEvaluations = std::size_t{1} << 20;

struct QuadratureRequest {
    Integrand integrand;
    Domain domain = Domain::real_line();
    /// |y| of an e^{−ixy} factor, or any intrinsic oscillation rate.
    std::optional<double> frequency_hint;
    std::optional<DecayEnvelope> envelope;
    double tol = 1e-9;
    std::vector<double> breakpoints;
    /// Length scale of the integrand bulk; sets the first cut-off for heavy tails.
    double length_scale = 1.0;
    std::size_t max_evaluations = kDefaultMaxEvaluations;
};

enum class QuadMethod { Adaptive, Truncated, WindowedExtrapolation };

struct QuadratureResult {
    cplx value{};
    double error_estimate = 0.0;
    std::size_t panels_used = 0;
    std::size_t evaluations = 0;
    std::optional<double> truncation_radius;
    QuadMethod method = QuadMethod::Adaptive;
};

std::string to_string(QuadMethod m);

/// Adaptive Gauss–Kronrod (7/15) integration with global error control.
QuadratureResult integrate(const QuadratureRequest& req);

/// ∫ f(x)e^{−ixy} dx with panels capped at half the oscillation period.
QuadratureResult oscillatory_integrate(const Function& f, double y, double tol = 1e-9);

/// Integral of a library function over a domain, filling in its metadata.
QuadratureResult integrate_function(const Function& f, Domain domain, double tol = 1e-9);

/// ‖f‖_p for p ∈ {1, 2}; `value` holds the norm, the error estimate is first order.
QuadratureResult lp_norm(const Function& f, int p, double tol = 1e-9);

/// Increasing cut-offs for the two-sided limit.
struct LimitSchedule {
    std::vector<double> upper;  // A_k
    std::vector<double> lower;  // B_k

    static LimitSchedule geometric(double start, double ratio, std::size_t n, double lower_ratio = 1.0);
};

struct LimitResult {
    cplx value{};
    /// Plain partial integrals ∫_{−B_k}^{A_k}.
    std::vector<cplx> partials;
    /// Sequence of the candidate that stabilized.
    std::vector<cplx> accepted_sequence;
    std::string method;
    double spread = 0.0;
};

struct LimitOptions {
    double tol = 1e-9;
    std::optional<double> frequency_hint;
    std::vector<double> breakpoints;
};

/// lim_{A,B→∞} ∫_{−B}^{A} g, detected by stabilization of the last three terms
/// of the partial sequence or of its smoothed/extrapolated variants.
LimitResult two_sided_limit(const Integrand& g, const LimitSchedule& schedule,
                            const LimitOptions& opts = {});

/// Smooth cut-off equal to 1 on [−1/4, 1/4] and 0 outside (−1, 1).
double smooth_window(double s);

} // namespace flab
