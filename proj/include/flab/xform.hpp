#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "flab/funcspace.hpp"
#include "flab/quad.hpp"

namespace flab {

/// Classic: f̂(y) = ∫ f(x)e^{−ixy}dx with inverse (1/2π)∫ f̂(y)e^{ixy}dy.
/// Unitary: both directions carry 1/√(2π).
enum class Convention { Classic, Unitary };

std::string to_string(Convention c);
Convention convention_from_string(std::string_view s);
double forward_prefactor(Convention c);
double inverse_prefactor(Convention c);

struct TransformResult {
    cplx value{};
    QuadratureResult quadrature;
};

/// prefactor · ∫ f(x)e^{−ixy}dx by quadrature.
TransformResult fourier(const Function& f, double y, Convention conv = Convention::Classic, double tol = 1e-9);

/// The transform as a function of y: the closed form when one is known,
/// otherwise a pointwise quadrature wrapped with its guaranteed metadata.
Function transform_function(const Function& f, Convention conv = Convention::Classic, double tol = 1e-10);

LimitSchedule default_inversion_schedule();

/// Symmetric-limit inversion: lim ∫_{−B}^{A} prefactor · fhat(y)e^{ixy}dy.
LimitResult inverse_symmetric(const Function& fhat, double x, Convention conv = Convention::Classic,
                              const LimitSchedule& schedule = default_inversion_schedule(), double tol = 1e-7);

/// (1/2π)∫ f̂(t)e^{−ε|t|}e^{ixt}dt.
TransformResult abel_inverse(const Function& f, double x, double eps, double tol = 1e-9);

/// (1/2π)∫ f̂(t)e^{−αt²/4}e^{ixt}dt.
TransformResult gauss_inverse(const Function& f, double x, double alpha, double tol = 1e-9);

struct LawResiduals {
    double translation = 0.0;
    double modulation = 0.0;
    double dilation = 0.0;
    double linearity = 0.0;
    /// Sum of the quadrature error estimates entering the residuals.
    double error_bound = 0.0;
};

/// Residuals of (f(·−t))^ = e^{−ity}f̂, (e^{itx}f)^ = f̂(·−t), (f(k·))^ = f̂(·/k)/k and additivity.
/// Additivity uses the two terms when f is a sum and f + f(k·) otherwise.
LawResiduals transform_laws_residual(const Function& f, double t, double k, double y, double tol = 1e-10);

struct DerivativeResiduals {
    /// |central difference of f̂ at y − (−ixf)^(y)|, when xf is integrable.
    std::optional<double> eq2;
    /// |(f′)^(y) − iy f̂(y)|, when f is C¹ with compact support.
    std::optional<double> eq3;
};

/// h <= 0 selects tol^{1/3}·max(1, |y|).
double derivative_of_transform_residual(const Function& f, double y, double h = 0.0, double tol = 1e-9);
double transform_of_derivative_residual(const Function& f, double y, double tol = 1e-9);
/// Evaluates each rule whose preconditions hold; PreconditionViolated when neither does.
DerivativeResiduals derivative_rules_residual(const Function& f, double y, double h = 0.0, double tol = 1e-9);

/// μ̂(y) = ∫ e^{+ixy}dμ(x). Note the sign differs from the function transform.
cplx fourier_stieltjes(const MeasureSpec& mu, double y, double tol = 1e-9);

/// lim ∫_{−B}^{A} f̂(y)dy for f with f(x)/x integrable.
LimitResult vanishing_transform_integral(const Function& f, const LimitSchedule& schedule = default_inversion_schedule(),
                                         double tol = 1e-7);

} // namespace flab
