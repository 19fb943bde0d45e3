#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flab/error.hpp"

namespace flab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Decay envelopes
// ---------------------------------------------------------------------------

/// Pointwise bound on |f(x)| for |x| >= 1 (globally for the catalog atoms).
class DecayEnvelope {
public:
    enum class Class { CompactSupport, Exponential, Gaussian, Polynomial };

    /// `sup` bounds |f| inside the support; +inf when unknown.
    static DecayEnvelope compact(double radius, double sup = kInf);
    static DecayEnvelope exponential(double C, double a);
    static DecayEnvelope gaussian(double C, double a);
    static DecayEnvelope polynomial(double C, double p);

    Class kind() const noexcept { return kind_; }
    double constant() const noexcept { return c_; }
    /// Rate a for Exponential/Gaussian, exponent p for Polynomial, radius for CompactSupport.
    double parameter() const noexcept { return param_; }
    double radius() const noexcept { return param_; }

    double bound(double x) const;
    /// Closed-form ∫_{|x|>R} bound(x) dx.
    double tail(double R) const;
    /// ∫ bound over the whole line (infinite for p <= 1 or unknown compact sup).
    double total_mass() const;
    bool integrable() const;

    /// Re-expresses this envelope in a slower-decaying class with the given rate.
    DecayEnvelope weakened_to(Class target, double param) const;

    std::string describe() const;

private:
    DecayEnvelope(Class k, double c, double p) : kind_(k), c_(c), param_(p) {}
    Class kind_;
    double c_;
    double param_;
};

double envelope_radius(const DecayEnvelope& env, double tail_budget);

namespace envelope_rules {
DecayEnvelope scaled(const DecayEnvelope& e, double factor);
DecayEnvelope shifted(const DecayEnvelope& e, double t);
DecayEnvelope dilated(const DecayEnvelope& e, double k);
DecayEnvelope x_times(const DecayEnvelope& e);
DecayEnvelope sum(const DecayEnvelope& a, const DecayEnvelope& b);
DecayEnvelope product(const DecayEnvelope& a, double sup_a, const DecayEnvelope& b, double sup_b);
std::optional<DecayEnvelope> convolution(const DecayEnvelope& a, const DecayEnvelope& b);
} // namespace envelope_rules

// ---------------------------------------------------------------------------
// Function metadata
// ---------------------------------------------------------------------------

struct Membership {
    bool l1 = false;
    bool l2 = false;
    bool bounded = false;
    bool continuous = false;
    bool c0 = false;
    bool compact = false;
    bool c1 = false;
    bool nonnegative = false;
};

struct Interval {
    double lo;
    double hi;
};

struct FunctionInfo {
    Membership membership;
    std::optional<DecayEnvelope> envelope;
    std::optional<Interval> support;
    /// Sorted points where the function or its derivative may jump.
    std::vector<double> breakpoints;
    /// Lipschitz everywhere except at these points.
    std::vector<double> lipschitz_exceptions;
    double sup_bound = kInf;
    /// Intrinsic oscillation frequency (0 for non-oscillating functions).
    double bandwidth = 0.0;
    /// Length scale of the bulk of the function.
    double scale = 1.0;
};

enum class Kind {
    Gaussian,
    Laplace,
    Indicator,
    PoissonKernel,
    FejerKernel,
    DirichletKernel,
    GaussWeierstrass,
    Bump,
    PiecewisePolynomial,
    XTimes,
    Sum,
    ScalarMultiple,
    Shift,
    Dilate,
    Product,
    Modulate,
    Reflect,
    Conjugate,
    Derivative,
    Opaque,
};

namespace detail {
struct Node;
}

/// Immutable function on the real line built from catalog atoms and combinators.
class Function {
public:
    // catalog atoms
    static Function gaussian(double a);
    static Function laplace(double a);
    static Function indicator(double l, double r);
    static Function poisson_kernel(double u);
    static Function fejer_kernel(double t);
    static Function dirichlet_kernel(double t);
    static Function gauss_weierstrass(double alpha);
    static Function bump();
    /// Piece i lives on [breaks[i], breaks[i+1]] with value Σ_j coeffs[i][j]·(x − breaks[i])^j.
    static Function piecewise_polynomial(std::vector<double> breaks,
                                         std::vector<std::vector<double>> coeffs);
    static Function x_times(const Function& inner);

    // combinators
    static Function sum(const Function& f, const Function& g);
    static Function product(const Function& f, const Function& g);
    Function scaled(cplx c) const;
    Function shifted(double t) const;
    Function dilated(double k) const;
    Function modulated(double omega) const;
    Function reflected() const;
    Function conjugated() const;
    /// Requires a continuously differentiable operand.
    Function derivative() const;

    /// Wraps a computed function with caller-asserted metadata.
    static Function opaque(std::string name, std::function<cplx(double)> eval, FunctionInfo info);

    cplx operator()(double x) const;
    cplx evaluate(double x) const { return (*this)(x); }
    /// Pointwise derivative; only defined when the tree supports it.
    cplx evaluate_derivative(double x) const;

    Kind kind() const;
    const FunctionInfo& info() const;
    const Membership& membership() const { return info().membership; }
    std::string describe() const;

    /// Closed-form classic-convention transform, when known.
    std::optional<Function> known_transform() const;

    const std::vector<Function>& children() const;
    const std::vector<double>& parameters() const;
    cplx coefficient() const;
    const std::vector<std::vector<double>>& polynomial_coefficients() const;

private:
    explicit Function(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const detail::Node> node_;
    friend struct detail::Node;
};

inline Function operator+(const Function& f, const Function& g) { return Function::sum(f, g); }
inline Function operator*(const Function& f, const Function& g) { return Function::product(f, g); }
inline Function operator*(cplx c, const Function& f) { return f.scaled(c); }

/// Normalization constant of the unit-mass bump.
double bump_normalization();
double bump(double x);

std::optional<cplx> fourier_oracle(const Function& f, double y);

// ---------------------------------------------------------------------------
// Finite measures
// ---------------------------------------------------------------------------

struct Atom {
    double location;
    cplx mass;
};

struct MeasureSpec {
    std::vector<Atom> atoms;
    std::optional<Function> density;

    /// Checks the structural invariants (distinct atoms, integrable density).
    void validate() const;
};

} // namespace flab
