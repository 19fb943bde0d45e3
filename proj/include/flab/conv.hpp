#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "flab/funcspace.hpp"
#include "flab/quad.hpp"

namespace flab {

/// Membership combinations under which ∫f(x−t)g(t)dt exists.
enum class Pairing { L1_Linf, L2_L2, L1_C0, L1_L1 };

std::string to_string(Pairing p);

/// The first pairing satisfied by the flags (checked in both orders), if any.
std::optional<Pairing> convolution_pairing(const Function& f, const Function& g);

struct ConvolutionRequest {
    Function f;
    Function g;
    double x = 0.0;
    double tol = 1e-9;
};

/// ∫ f(x−t)g(t)dt by quadrature in t; NoValidPairing when existence is not guaranteed.
QuadratureResult convolve(const ConvolutionRequest& req);
cplx convolve(const Function& f, const Function& g, double x, double tol = 1e-9);

/// f∗g as a function of x with metadata derived from the operands.
Function convolution(const Function& f, const Function& g, double tol = 1e-10);

struct ConvolutionTheoremResult {
    cplx lhs{};  // (f∗g)^(y) from a sampled grid of f∗g
    cplx rhs{};  // f̂(y)ĝ(y)
    double residual = 0.0;
    std::size_t grid_points = 0;
};

/// Compares the transform of a grid representation of f∗g with f̂·ĝ.
ConvolutionTheoremResult convolution_theorem_residual(const Function& f, const Function& g, double y,
                                                      double tol = 1e-9);

/// n·φ(n·) after checking φ ≥ 0, ∫φ = 1, compact support and C¹.
Function make_scaled_identity(const Function& phi, double n);

/// A nonnegative unit-mass family concentrating at 0.
class ApproximateIdentity {
public:
    enum class Family { Scaled, Fejer, Poisson, GaussWeierstrass };

    /// n ↦ nφ(nx) for increasing n.
    static ApproximateIdentity scaled(const Function& phi, std::vector<double> n);
    /// K_t for increasing t.
    static ApproximateIdentity fejer(std::vector<double> t);
    /// P_u for decreasing u.
    static ApproximateIdentity poisson(std::vector<double> u);
    /// W(·, α) for decreasing α.
    static ApproximateIdentity gauss_weierstrass(std::vector<double> alpha);

    Family family() const { return family_; }
    const std::vector<double>& schedule() const { return schedule_; }
    std::size_t size() const { return schedule_.size(); }
    Function member(std::size_t i) const;

    /// ∫_{|x|>δ} e_i.
    double mass_outside(std::size_t i, double delta, double tol = 1e-10) const;

private:
    ApproximateIdentity(Family f, std::optional<Function> phi, std::vector<double> s)
        : family_(f), phi_(std::move(phi)), schedule_(std::move(s)) {}
    Family family_;
    std::optional<Function> phi_;
    std::vector<double> schedule_;
};

enum class ErrorNorm { SupOnGrid, L1, L2, WeakStar };

std::string to_string(ErrorNorm n);

inline constexpr std::size_t kSupGridPoints = 1025;

/// Uniform grid over the essential support of f widened by half its length.
std::vector<double> sup_grid(const Function& f, std::size_t points = kSupGridPoints);

/// ‖e_n∗f − f‖ in the requested norm. WeakStar returns |∫(e_n∗f)w − ∫fw| for the witness w ∈ L¹.
double approx_identity_error(const ApproximateIdentity& ai, const Function& f, std::size_t index, ErrorNorm norm,
                             const std::optional<Function>& witness = std::nullopt, double tol = 1e-8);

/// The three L¹ witnesses used for the weak* case: Gaussian, Laplace and an indicator.
std::vector<Function> weak_star_witnesses();

/// |central difference of f∗g at x − (f′∗g)(x)| for f C¹ with compact support and g ∈ L¹.
double smoothed_derivative_residual(const Function& f, const Function& g, double x, double h = 1e-3,
                                    double tol = 1e-10);

} // namespace flab
