// flab: command line front end for transforms, convolutions, kernels, inversion and the verification suite.

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "flab/conv.hpp"
#include "flab/expr_json.hpp"
#include "flab/harness.hpp"
#include "flab/kernels.hpp"
#include "flab/l2.hpp"
#include "flab/xform.hpp"

using namespace flab;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitLibraryError = 3;

/// Shortest round-trip text, independent of the C locale.
std::string num(double v)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

void csv_row(std::ostream& os, std::initializer_list<double> values)
{
    bool first = true;
    for (double v : values) {
        os << (first ? "" : ",") << num(v);
        first = false;
    }
    os << '\n';
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    require(in.good(), ErrorCode::InvalidArgument, "cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Inline JSON, or `@path` to read it from a file.
Function load_function(const std::string& arg)
{
    return parse_function(!arg.empty() && arg[0] == '@' ? slurp(arg.substr(1)) : arg);
}

double parse_double(const std::string& s)
{
    double v = 0.0;
    const char* b = s.data();
    const char* e = s.data() + s.size();
    while (b < e && *b == ' ') ++b;
    if (b < e && *b == '+') ++b;
    const auto [p, ec] = std::from_chars(b, e, v);
    require(ec == std::errc() && p == e, ErrorCode::InvalidArgument, "not a number: '" + s + "'");
    return v;
}

/// "0,0.5,1" or "a:b:step".
std::vector<double> parse_points(const std::string& text)
{
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream ss(text);
        for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(parse_double(tok));
        require(parts.size() == 3 && parts[2] > 0.0 && parts[0] <= parts[1], ErrorCode::InvalidArgument,
                "grids are written a:b:step with a <= b and step > 0");
        const auto n = static_cast<std::size_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
        require(n < 10000000, ErrorCode::InvalidArgument, "grid too large");
        for (std::size_t i = 0; i <= n; ++i) out.push_back(parts[0] + parts[2] * static_cast<double>(i));
        return out;
    }
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (!tok.empty()) out.push_back(parse_double(tok));
    }
    require(!out.empty(), ErrorCode::InvalidArgument, "empty point list");
    return out;
}

void emit_complex_table(const std::string& label, const std::vector<double>& at, const std::vector<QuadratureResult>& rs,
                        const std::string& format, const nlohmann::ordered_json& header)
{
    if (format == "json") {
        nlohmann::ordered_json j = header;
        j["points"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < at.size(); ++i) {
            nlohmann::ordered_json p;
            p[label] = at[i];
            p["re"] = rs[i].value.real();
            p["im"] = rs[i].value.imag();
            p["error_estimate"] = rs[i].error_estimate;
            p["panels_used"] = rs[i].panels_used;
            p["truncation_radius"] =
                rs[i].truncation_radius ? nlohmann::ordered_json(*rs[i].truncation_radius) : nlohmann::ordered_json();
            j["points"].push_back(std::move(p));
        }
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::cout << label << ",re,im\n";
    for (std::size_t i = 0; i < at.size(); ++i) csv_row(std::cout, {at[i], rs[i].value.real(), rs[i].value.imag()});
}

int cmd_transform(const std::string& f_text, const std::string& y_text, const std::string& conv_text, double tol,
                  const std::string& format, bool l2)
{
    const Function f = load_function(f_text);
    const std::vector<double> ys = parse_points(y_text);
    if (l2) {
        const L2TransformPlan plan{f, {2.0, 4.0, 8.0, 16.0}, ys, tol};
        const L2TransformResult r = l2_transform(plan);
        if (format == "json") {
            nlohmann::ordered_json j;
            j["convention"] = "unitary";
            j["truncation_schedule"] = plan.truncation_schedule;
            j["gaps"] = r.gaps;
            j["final_gap"] = r.final_gap;
            j["points"] = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < r.y.size(); ++i) {
                j["points"].push_back({{"y", r.y[i]}, {"re", r.values[i].real()}, {"im", r.values[i].imag()}});
            }
            std::cout << j.dump(2) << '\n';
        } else {
            std::cout << "y,re,im\n";
            for (std::size_t i = 0; i < r.y.size(); ++i) csv_row(std::cout, {r.y[i], r.values[i].real(), r.values[i].imag()});
        }
        return 0;
    }
    const Convention conv = convention_from_string(conv_text);
    std::vector<QuadratureResult> rs;
    for (double y : ys) {
        const TransformResult r = fourier(f, y, conv, tol);
        rs.push_back(r.quadrature);
        rs.back().value = r.value;
    }
    emit_complex_table("y", ys, rs, format, {{"convention", to_string(conv)}, {"function", f.describe()}});
    return 0;
}

int cmd_convolve(const std::string& f_text, const std::string& g_text, const std::string& x_text, double tol,
                 const std::string& format)
{
    ConvolutionRequest req{load_function(f_text), load_function(g_text), 0.0, tol};
    const std::vector<double> xs = parse_points(x_text);
    std::vector<QuadratureResult> rs;
    for (double x : xs) {
        req.x = x;
        rs.push_back(convolve(req));
    }
    const auto pairing = convolution_pairing(req.f, req.g);
    emit_complex_table("x", xs, rs, format,
                       {{"pairing", pairing ? to_string(*pairing) : std::string("none")},
                        {"f", req.f.describe()},
                        {"g", req.g.describe()}});
    return 0;
}

struct KernelArgs {
    std::string kind = "fejer";
    double param = 1.0;
    std::string grid = "-10:10:0.05";
    bool hat = false;
    std::string check;
    double v = 0.0;
    std::string f = R"({"kind":"indicator","l":-1,"r":1})";
    std::string u_list = "1,0.5,0.25,0.1";
    std::string norm = "l2";
    double h = 1e-2;
    double tol = 0.0;
};

int cmd_kernel(const KernelArgs& a)
{
    const KernelFamily k{kernel_kind_from_string(a.kind), a.param};
    k.validate();
    if (a.check.empty()) {
        std::cout << (a.hat ? "y,value\n" : "x,value\n");
        for (double x : parse_points(a.grid)) csv_row(std::cout, {x, a.hat ? eval_kernel_hat(k, x) : eval_kernel(k, x)});
        return 0;
    }
    require(k.kind == KernelKind::Poisson, ErrorCode::InvalidArgument, "kernel checks apply to the Poisson kernel");
    bool ok = true;
    if (a.check == "semigroup") {
        const double tol = a.tol > 0.0 ? a.tol : 1e-5;
        const double v = a.v > 0.0 ? a.v : a.param;
        std::cout << "x,numeric,exact,residual\n";
        for (double x : parse_points(a.grid)) {
            const SemigroupResult r = semigroup_residual(a.param, v, x);
            csv_row(std::cout, {x, r.numeric, r.exact, r.residual});
            ok = ok && r.residual <= tol;
        }
    } else if (a.check == "harmonic") {
        const double tol = a.tol > 0.0 ? a.tol : 1e-3;
        const Function f = load_function(a.f);
        std::cout << "x,residual\n";
        for (double x : parse_points(a.grid)) {
            const double r = harmonicity_residual(f, x, a.param, a.h);
            csv_row(std::cout, {x, r});
            ok = ok && r <= tol;
        }
    } else if (a.check == "monotone") {
        const double tol = a.tol > 0.0 ? a.tol : 1e-6;
        const Function f = load_function(a.f);
        const std::vector<double> us = parse_points(a.u_list);
        ProfileNorm n = ProfileNorm::L2;
        if (a.norm == "l1") n = ProfileNorm::L1;
        else if (a.norm == "sup") n = ProfileNorm::SupGrid;
        const std::vector<double> p = norm_monotonicity_profile(f, n, us);
        std::cout << "u,norm\n";
        for (std::size_t i = 0; i < p.size(); ++i) {
            csv_row(std::cout, {us[i], p[i]});
            ok = ok && (i == 0 || p[i] >= p[i - 1] - tol);
        }
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown check '" + a.check + "'");
    }
    return ok ? 0 : kExitCheckFailed;
}

int cmd_invert(const std::string& fhat_text, const std::string& f_text, const std::string& x_text,
               const std::string& method, double param, const std::string& conv_text, double tol,
               const std::string& format)
{
    const std::vector<double> xs = parse_points(x_text);
    require(fhat_text.empty() != f_text.empty(), ErrorCode::InvalidArgument, "give exactly one of --fhat or --f");
    const Convention conv = convention_from_string(conv_text);
    std::vector<QuadratureResult> rs;
    if (method == "symmetric") {
        const Function hat = fhat_text.empty() ? transform_function(load_function(f_text), conv) : load_function(fhat_text);
        for (double x : xs) {
            const LimitResult r = inverse_symmetric(hat, x, conv, default_inversion_schedule(), tol);
            QuadratureResult q;
            q.value = r.value;
            q.error_estimate = r.spread;
            rs.push_back(q);
        }
    } else if (method == "abel" || method == "gauss") {
        require(param > 0.0, ErrorCode::InvalidArgument, "--eps must be positive");
        const Function damp = method == "abel" ? Function::laplace(param) : Function::gaussian(param / 4.0);
        for (double x : xs) {
            if (!f_text.empty()) {
                const Function f = load_function(f_text);
                TransformResult r = method == "abel" ? abel_inverse(f, x, param, tol) : gauss_inverse(f, x, param, tol);
                r.quadrature.value = r.value;
                rs.push_back(r.quadrature);
            } else {
                // prefactor · ∫ f̂(t) D(t) e^{ixt} dt
                const TransformResult r = fourier(load_function(fhat_text) * damp, -x, Convention::Classic, tol);
                QuadratureResult q = r.quadrature;
                q.value = inverse_prefactor(conv) * r.value;
                rs.push_back(q);
            }
        }
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown method '" + method + "'");
    }
    emit_complex_table("x", xs, rs, format, {{"method", method}, {"convention", to_string(conv)}});
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& config_path, const std::string& report_path,
               unsigned jobs, bool quiet)
{
    SuiteConfig cfg = config_path.empty() ? suite_named(suite) : parse_suite_config(slurp(config_path));
    if (jobs > 0) cfg.jobs = jobs;
    const Report report = run_suite(cfg);
    if (!quiet) {
        for (const CheckRow& r : report.checks) {
            std::printf("%-4s %-30s residual=%-12.4e tol=%-9.2e %8.1f ms\n", r.pass ? "PASS" : "FAIL", r.id.c_str(),
                        r.residual, r.tolerance, r.runtime_ms);
        }
        std::printf("%zu/%zu checks passed in %.1f ms\n", report.passed, report.total, report.wall_ms);
    }
    const std::string json = report.to_json().dump(2) + "\n";
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        require(out.good(), ErrorCode::InvalidArgument, "cannot write '" + report_path + "'");
        out << json;
    } else if (quiet) {
        std::cout << json;
    }
    return exit_code(report);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"flab: numerical Fourier analysis toolkit"};
    app.set_version_flag("--version", std::string(kToolkitVersion));
    app.require_subcommand(1);

    std::string f, g, fhat, points, convention = "classic", format = "csv";
    double tol = 1e-9;
    bool l2 = false;

    auto* tr = app.add_subcommand("transform", "Fourier transform of a function at points y");
    tr->add_option("--f", f, "function as JSON (or @file)")->required();
    tr->add_option("--y", points, "points: comma list or a:b:step")->required();
    tr->add_option("--convention", convention)->check(CLI::IsMember({"classic", "unitary"}));
    tr->add_option("--tol", tol)->check(CLI::PositiveNumber);
    tr->add_option("--out", format)->check(CLI::IsMember({"csv", "json"}));
    tr->add_flag("--l2", l2, "L2 transform through truncations (unitary convention)");

    auto* cv = app.add_subcommand("convolve", "convolution f*g at points x");
    cv->add_option("--f", f)->required();
    cv->add_option("--g", g)->required();
    cv->add_option("--x", points)->required();
    cv->add_option("--tol", tol)->check(CLI::PositiveNumber);
    cv->add_option("--out", format)->check(CLI::IsMember({"csv", "json"}));

    KernelArgs ka;
    auto* ke = app.add_subcommand("kernel", "evaluate summability kernels or run Poisson checks");
    ke->add_option("--kind", ka.kind, "dirichlet, fejer, poisson or gw");
    ke->add_option("--param", ka.param, "t, u or alpha");
    ke->add_option("--grid", ka.grid, "a:b:step or a comma list");
    ke->add_flag("--hat", ka.hat, "evaluate the transform instead");
    ke->add_option("--check", ka.check)->check(CLI::IsMember({"semigroup", "harmonic", "monotone"}));
    ke->add_option("--v", ka.v, "second semigroup parameter (default: --param)");
    ke->add_option("--f", ka.f, "boundary function for harmonic/monotone");
    ke->add_option("--u", ka.u_list, "decreasing u values for monotone");
    ke->add_option("--norm", ka.norm)->check(CLI::IsMember({"l1", "l2", "sup"}));
    ke->add_option("--step", ka.h, "five-point stencil step");
    ke->add_option("--tol", ka.tol, "pass threshold");

    std::string method = "symmetric";
    double eps = 1e-3;
    double inv_tol = 1e-7;
    auto* iv = app.add_subcommand("invert", "recover f(x) from its transform");
    iv->add_option("--fhat", fhat, "transform as JSON (or @file)");
    iv->add_option("--f", f, "function whose transform is inverted");
    iv->add_option("--x", points)->required();
    iv->add_option("--method", method)->check(CLI::IsMember({"symmetric", "abel", "gauss"}));
    iv->add_option("--eps", eps, "Abel eps or Gauss alpha");
    iv->add_option("--convention", convention)->check(CLI::IsMember({"classic", "unitary"}));
    iv->add_option("--tol", inv_tol)->check(CLI::PositiveNumber);
    iv->add_option("--out", format)->check(CLI::IsMember({"csv", "json"}));

    std::string suite = "all", config, report;
    unsigned jobs = 0;
    bool quiet = false;
    auto* ve = app.add_subcommand("verify", "run the verification suite");
    ve->add_option("--suite", suite)->check(CLI::IsMember({"l1", "kernels", "l2", "inversion", "all"}));
    ve->add_option("--config", config, "suite file (JSON)");
    ve->add_option("--report", report, "write the JSON report here");
    ve->add_option("--jobs", jobs, "worker threads");
    ve->add_flag("--quiet", quiet, "no per-check lines; report JSON to stdout when --report is absent");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*tr) return cmd_transform(f, points, convention, tol, format, l2);
        if (*cv) return cmd_convolve(f, g, points, tol, format);
        if (*ke) return cmd_kernel(ka);
        if (*iv) return cmd_invert(fhat, f, points, method, eps, convention, inv_tol, format);
        if (*ve) return cmd_verify(suite, config, report, jobs, quiet);
    } catch (const Error& e) {
        std::cerr << "flab: " << e.what() << '\n';
        return kExitLibraryError;
    } catch (const std::exception& e) {
        std::cerr << "flab: " << e.what() << '\n';
        return kExitLibraryError;
    }
    return 0;
}
