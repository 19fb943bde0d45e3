#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "flab/conv.hpp"
#include "flab/funcspace.hpp"
#include "flab/quad.hpp"

namespace flab {

enum class KernelKind { Dirichlet, Fejer, Poisson, GaussWeierstrass };

std::string to_string(KernelKind k);
KernelKind kernel_kind_from_string(std::string_view s);

/// One member of a summability kernel family: t for Dirichlet/Fejér, u for Poisson, α for Gauss–Weierstrass.
struct KernelFamily {
    KernelKind kind = KernelKind::Fejer;
    double param = 1.0;

    static KernelFamily dirichlet(double t) { return {KernelKind::Dirichlet, t}; }
    static KernelFamily fejer(double t) { return {KernelKind::Fejer, t}; }
    static KernelFamily poisson(double u) { return {KernelKind::Poisson, u}; }
    static KernelFamily gauss_weierstrass(double alpha) { return {KernelKind::GaussWeierstrass, alpha}; }

    void validate() const;
    /// Nonnegative with unit mass; false only for Dirichlet.
    bool approximate_identity() const { return kind != KernelKind::Dirichlet; }

    /// The kernel as a library function (with metadata).
    Function space() const;
    /// Its classic-convention transform as a library function.
    Function hat() const;
};

/// Closed-form kernel value. Removable singularities use a series for |tx| < 1e-4.
double eval_kernel(const KernelFamily& k, double x);

/// Indicator, triangle, e^{−u|y|} or e^{−αy²/4}. The Dirichlet hat takes the value 1/2 at |y| = t.
double eval_kernel_hat(const KernelFamily& k, double y);

/// Approximate identity built from a kernel family; rejects Dirichlet.
ApproximateIdentity approximate_identity(KernelKind kind, std::vector<double> schedule);

/// ∫D̂_t(y−τ)D̂_t(τ)dτ from the overlap of the two intervals.
double dhat_selfconvolution(double t, double y);

/// |2tK_{2t}(x) − (2πD_t(x))²/(2π)| from the closed forms.
double fejer_dirichlet_identity_residual(double t, double x);

/// (P_u ∗ f)(x), the value at x + iu of the Poisson integral of f.
QuadratureResult poisson_integral(const Function& f, double x, double u, double tol = 1e-10);

struct SemigroupResult {
    double numeric = 0.0;  // (P_u ∗ P_v)(x) by quadrature
    double exact = 0.0;    // P_{u+v}(x)
    double residual = 0.0;
    double error_estimate = 0.0;
};

SemigroupResult semigroup_residual(double u, double v, double x, double tol = 1e-9);

/// |e^{−u|y|}e^{−v|y|} − e^{−(u+v)|y|}|.
double semigroup_hat_residual(double u, double v, double y);

/// Values of a candidate harmonic function F(x, u) on the upper half plane.
using HalfPlaneFunction = std::function<double(double x, double u)>;

/// |five-point Laplacian| of F at (x, u) with step h; needs u > 2h.
double harmonicity_residual(const HalfPlaneFunction& F, double x, double u, double h);

/// Same for F = P_u ∗ f evaluated by quadrature (f real-valued).
double harmonicity_residual(const Function& f, double x, double u, double h, double tol = 1e-12);

enum class ProfileNorm { L1, L2, SupGrid };

std::string to_string(ProfileNorm n);

/// ‖P_u ∗ f‖ along the given u values. SupGrid takes the maximum over sup_grid(f).
std::vector<double> norm_monotonicity_profile(const Function& f, ProfileNorm norm, const std::vector<double>& u_list,
                                              double tol = 1e-8);

} // namespace flab
