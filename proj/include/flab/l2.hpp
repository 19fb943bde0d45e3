#pragma once

#include <vector>

#include "flab/funcspace.hpp"
#include "flab/xform.hpp"

namespace flab {

/// Transform of an L² function as the limit of transforms of its truncations f·χ_[−k,k].
struct L2TransformPlan {
    Function f;
    std::vector<double> truncation_schedule{2.0, 4.0, 8.0, 16.0};
    std::vector<double> y_grid;
    double tol = 1e-6;

    void validate() const;
};

struct L2TransformResult {
    std::vector<double> y;
    /// Unitary transform of the largest truncation on the grid.
    std::vector<cplx> values;
    /// Grid-L² distance between transforms of successive truncations.
    std::vector<double> gaps;
    double final_gap = 0.0;
};

/// f·χ_[−k,k].
Function truncate(const Function& f, double k);

/// Trapezoid-weighted l² seminorm of samples on a sorted grid (plain modulus for one point).
double grid_l2(const std::vector<double>& grid, const std::vector<cplx>& values);

/// NotCauchy when the final gap exceeds tol or a gap grows by more than tol.
L2TransformResult l2_transform(const L2TransformPlan& plan);

struct PlancherelResult {
    double f_norm = 0.0;
    double transform_norm = 0.0;
    double defect = 0.0;
    /// Radius reached by the band doubling when the transform had no closed form.
    double transform_radius = 0.0;
};

/// |‖Ff‖₂ − ‖f‖₂| with F unitary; the transform norm uses the closed form when known.
PlancherelResult plancherel_defect(const Function& f, double tol = 1e-9);

struct MultiplicationResult {
    cplx lhs{};  // ∫(Ff)g
    cplx rhs{};  // ∫f(Fg)
    double residual = 0.0;
    /// True when the L² path (closed forms or truncations) was taken.
    bool l2_path = false;
};

MultiplicationResult multiplication_formula_residual(const Function& f, const Function& g, Convention conv,
                                                     double tol = 1e-10);

struct ReflectionResult {
    cplx round_trip{};  // F(Ff)(−x)
    cplx value{};       // f(x)
    double residual = 0.0;
};

/// Round trip through (F⁻¹h)(x) = (Fh)(−x) in the unitary convention.
ReflectionResult reflection_inverse_residual(const Function& f, double x, double tol = 1e-9);

inline constexpr std::size_t kPositiveProbePoints = 513;

struct PositiveTransformResult {
    bool integrable = false;
    double transform_integral = 0.0;  // ∫f̂
    double center_value = 0.0;        // f(0)
    double center_residual = kInf;    // |f(0) − ∫f̂/2π|
    double min_probe = 0.0;           // smallest Re f̂ on the probe grid
};

/// NegativeTransform when the probe grid finds f̂ < −1e-9.
PositiveTransformResult positive_transform_check(const Function& f, double tol = 1e-9);

} // namespace flab
