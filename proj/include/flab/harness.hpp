#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "flab/funcspace.hpp"
#include "flab/xform.hpp"

namespace flab {

inline constexpr std::string_view kToolkitVersion = "0.1.0";

struct CheckOutcome {
    double residual = 0.0;
    std::string diagnostics;
};

/// A named, tolerance-tagged identity check.
struct CheckSpec {
    std::string id;
    std::string citation;
    double tolerance = 0.0;
    /// One of l1, kernels, l2, inversion.
    std::string suite;
    std::function<CheckOutcome()> run;
};

/// Every registered check, sorted by id.
const std::vector<CheckSpec>& check_registry();
const CheckSpec& find_check(std::string_view id);

struct CheckRow {
    std::string id;
    std::string citation;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
    std::string diagnostics;
};

struct Report {
    std::string version{kToolkitVersion};
    std::string convention = "classic";
    std::vector<CheckRow> checks;
    std::size_t total = 0;
    std::size_t passed = 0;
    double wall_ms = 0.0;

    bool all_passed() const { return passed == total; }
    nlohmann::ordered_json to_json() const;
};

struct SuiteEntry {
    std::string id;
    std::optional<double> tolerance;
};

struct SuiteConfig {
    std::string name = "custom";
    std::string convention = "classic";
    std::vector<SuiteEntry> checks;
    /// Worker threads; rows are ordered by id regardless.
    unsigned jobs = 1;
};

/// l1, kernels, l2, inversion or all.
SuiteConfig suite_named(std::string_view name);

/// `{"suite": "l2"}` or `{"convention": "classic", "checks": ["id", {"id": "...", "tolerance": 1e-6}]}`.
/// ConfigParse on malformed input or non-positive tolerances, UnknownCheck on unregistered ids.
SuiteConfig parse_suite_config(std::string_view text);

Report run_suite(const SuiteConfig& config);

/// 0 when every check passed, 1 otherwise.
int exit_code(const Report& report);

struct BandMaximum {
    double lo = 0.0;
    double hi = 0.0;
    double max = 0.0;
    /// Largest certified quadrature error among the band samples.
    double error = 0.0;
};

inline constexpr std::size_t kBandSamples = 64;

/// max |f̂| over 64 uniform points of each band [Y, 2Y].
std::vector<BandMaximum> riemann_lebesgue_profile(const Function& f, const std::vector<std::pair<double, double>>& bands,
                                                  double tol = 1e-10);

struct BoundednessResult {
    double l1_norm = 0.0;
    double sup_transform = 0.0;
    /// max(0, sup |f̂| − ‖f‖₁)
    double sup_residual = 0.0;
    std::optional<double> xf_l1_norm;
    /// max(0, |f̂(y+h) − f̂(y)| − ‖xf‖₁|h|) over the samples; 0 when xf ∉ L¹.
    double continuity_residual = 0.0;
};

BoundednessResult boundedness_continuity_check(const Function& f, const std::vector<double>& y_samples,
                                               const std::vector<double>& h_samples, double tol = 1e-10);

struct ProductTransformResult {
    cplx lhs{};  // (fg)^(x)
    cplx rhs{};  // (f̂∗ĝ)(x)/2π
    double residual = 0.0;
};

/// Needs f, g ∈ L¹ and a closed-form integrable f̂.
ProductTransformResult product_transform_residual(const Function& f, const Function& g, double x, double tol = 1e-9);

} // namespace flab
