#include "flab/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace flab {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = 2.220446049250313e-16;
constexpr double kWindowFlat = 0.25;

struct Panel {
    double a;
    double b;
    cplx value;
    double err;
    double absval;
};

Panel gk15(const Integrand& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const cplx fc = f(c);
    cplx kron = fc * kWgk[7];
    cplx gauss = fc * kWg[3];
    double absval = std::abs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const cplx f1 = f(c - dx);
        const cplx f2 = f(c + dx);
        kron += kWgk[j] * (f1 + f2);
        absval += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    Panel p{a, b, kron * h, 0.0, absval * std::abs(h)};
    p.err = std::abs((kron - gauss) * h);
    return p;
}

struct NeumaierSum {
    cplx sum{};
    cplx comp{};
    void add(cplx v)
    {
        auto step = [](double& s, double& c, double x) {
            const double t = s + x;
            if (std::abs(s) >= std::abs(x)) {
                c += (s - t) + x;
            } else {
                c += (x - t) + s;
            }
            s = t;
        };
        double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
        step(sr, cr, v.real());
        step(si, ci, v.imag());
        sum = {sr, si};
        comp = {cr, ci};
    }
    cplx value() const { return sum + comp; }
};

double panel_cap(const std::optional<double>& freq)
{
    if (!freq || !std::isfinite(*freq) || *freq <= 0.0) return kInf;
    return (2.0 * kPi / *freq) / 2.0;
}

/// Global adaptive integration over a finite interval.
QuadratureResult adaptive(const Integrand& f, double a, double b, double tol, const std::vector<double>& breakpoints,
                          const std::optional<double>& freq, std::size_t max_evals)
{
    QuadratureResult res;
    res.method = QuadMethod::Adaptive;
    if (!(b > a)) return res;

    std::vector<double> edges{a};
    for (double x : breakpoints) {
        if (x > a && x < b) edges.push_back(x);
    }
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const double cap = panel_cap(freq);
    std::vector<std::pair<double, double>> initial;
    double initial_count = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double w = edges[i + 1] - edges[i];
        initial_count += std::isfinite(cap) ? std::ceil(w / cap) : 1.0;
    }
    if (initial_count * 15.0 > static_cast<double>(max_evals)) {
        std::ostringstream os;
        os << "interval [" << a << ", " << b << "] at frequency " << freq.value_or(0.0)
           << " needs more than the evaluation budget";
        throw Error(ErrorCode::NonConvergent, os.str());
    }
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i];
        const double hi = edges[i + 1];
        const std::size_t n = std::isfinite(cap) ? static_cast<std::size_t>(std::ceil((hi - lo) / cap)) : 1;
        for (std::size_t k = 0; k < std::max<std::size_t>(n, 1); ++k) {
            const double p = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n);
            const double q = (k + 1 == n) ? hi : lo + (hi - lo) * static_cast<double>(k + 1) / static_cast<double>(n);
            initial.emplace_back(p, q);
        }
    }

    auto worse = [](const Panel& x, const Panel& y) {
        if (x.err != y.err) return x.err < y.err;
        return x.a > y.a;
    };
    std::vector<Panel> heap;
    std::vector<Panel> frozen;
    heap.reserve(initial.size() * 2);
    long double total_err = 0.0L;
    long double total_abs = 0.0L;
    std::size_t evals = 0;
    for (const auto& [p, q] : initial) {
        Panel pn = gk15(f, p, q);
        evals += 15;
        total_err += pn.err;
        total_abs += pn.absval;
        heap.push_back(pn);
    }
    std::make_heap(heap.begin(), heap.end(), worse);

    std::size_t iterations = 0;
    while (true) {
        const double target = std::max(tol, 50.0 * kEps * static_cast<double>(total_abs));
        if (static_cast<double>(total_err) <= target) break;
        if (heap.empty()) {
            std::ostringstream os;
            os << "unsplittable panels carry error " << static_cast<double>(total_err) << " > " << target;
            throw Error(ErrorCode::NonConvergent, os.str());
        }
        if (evals + 30 > max_evals) {
            std::ostringstream os;
            os << "evaluation budget exhausted on [" << a << ", " << b << "] with error estimate "
               << static_cast<double>(total_err) << " > " << target;
            throw Error(ErrorCode::NonConvergent, os.str());
        }
        std::pop_heap(heap.begin(), heap.end(), worse);
        Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b) ||
            worst.b - worst.a < 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
            frozen.push_back(worst);
            continue;
        }
        Panel l = gk15(f, worst.a, mid);
        Panel r = gk15(f, mid, worst.b);
        evals += 30;
        total_err += static_cast<long double>(l.err) + r.err - worst.err;
        total_abs += static_cast<long double>(l.absval) + r.absval - worst.absval;
        heap.push_back(l);
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back(r);
        std::push_heap(heap.begin(), heap.end(), worse);
        if (++iterations % 4096 == 0) {
            total_err = 0.0L;
            total_abs = 0.0L;
            for (const Panel& pn : heap) {
                total_err += pn.err;
                total_abs += pn.absval;
            }
            for (const Panel& pn : frozen) {
                total_err += pn.err;
                total_abs += pn.absval;
            }
        }
    }

    heap.insert(heap.end(), frozen.begin(), frozen.end());
    std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    NeumaierSum acc;
    double err = 0.0;
    for (const Panel& pn : heap) {
        acc.add(pn.value);
        err += pn.err;
    }
    res.value = acc.value();
    res.error_estimate = err;
    res.panels_used = heap.size();
    res.evaluations = evals;
    return res;
}

struct Span {
    double lo;
    double hi;
};

/// Finite features of an infinite domain that the windowed schemes must keep inside the flat region.
double feature_radius(const QuadratureRequest& req)
{
    double r = 0.0;
    if (req.domain.kind == Domain::Kind::UpperHalfLine) r = std::abs(req.domain.a);
    if (req.domain.kind == Domain::Kind::LowerHalfLine) r = std::abs(req.domain.b);
    for (double x : req.breakpoints) r = std::max(r, std::abs(x));
    return r;
}

Span clip(const Domain& d, double R)
{
    switch (d.kind) {
    case Domain::Kind::Finite: return {d.a, d.b};
    case Domain::Kind::UpperHalfLine: return {d.a, std::max(d.a, R)};
    case Domain::Kind::LowerHalfLine: return {std::min(d.b, -R), d.b};
    case Domain::Kind::FullLine: return {-R, R};
    }
    return {-R, R};
}

QuadratureResult truncated(const QuadratureRequest& req, double R, double tail)
{
    const Span s = clip(req.domain, R);
    QuadratureResult r;
    if (s.hi > s.lo) {
        std::vector<double> bps = req.breakpoints;
        if (s.hi - s.lo > 64.0 * std::min(1.0, req.length_scale)) {
            // Geometric ladder so that a narrow bulk near 0 is not lost inside one wide panel.
            for (double x = 0.125 * std::min(1.0, req.length_scale); x < R; x *= 2.0) {
                bps.push_back(x);
                bps.push_back(-x);
            }
        }
        r = adaptive(req.integrand, s.lo, s.hi, std::max(req.tol - tail, 0.5 * req.tol), bps,
                     req.frequency_hint, req.max_evaluations);
    }
    r.error_estimate += tail;
    r.truncation_radius = R;
    r.method = QuadMethod::Truncated;
    return r;
}

QuadratureResult windowed(const QuadratureRequest& req)
{
    double R0 = std::max({32.0, 32.0 * req.length_scale, 8.0 * feature_radius(req)});
    // Slow oscillations are only damped by the window once it spans several periods.
    if (req.frequency_hint && *req.frequency_hint > 0.0) {
        const double periods = 16.0 * kPi / *req.frequency_hint;
        if (periods <= 1e9) R0 = std::max(R0, periods);
    }
    constexpr int kMaxLevels = 8;
    std::vector<cplx> raw;
    std::vector<double> quad_err;
    std::size_t evals = 0;
    std::size_t panels = 0;
    double best_est = kInf;
    cplx best_value{};
    double R = R0;
    for (int level = 0; level < kMaxLevels; ++level, R *= 2.0) {
        const Span s = clip(req.domain, R);
        const double Rl = R;
        const Integrand& g = req.integrand;
        Integrand weighted = [&g, Rl](double x) {
            const double w = smooth_window(x / Rl);
            return w == 0.0 ? cplx{} : g(x) * w;
        };
        std::vector<double> bps = req.breakpoints;
        for (double x : {-kWindowFlat * R, kWindowFlat * R}) bps.push_back(x);
        if (evals >= req.max_evaluations) break;
        QuadratureResult q = adaptive(weighted, s.lo, s.hi, req.tol / 20.0, bps, req.frequency_hint,
                                      req.max_evaluations - evals);
        evals += q.evaluations;
        panels += q.panels_used;
        raw.push_back(q.value);
        quad_err.push_back(q.error_estimate);
        if (raw.size() < 3) continue;

        // Richardson table in h = 1/R with ratio 2.
        std::vector<std::vector<cplx>> table{raw};
        for (std::size_t order = 1; order + 1 < raw.size(); ++order) {
            const auto& prev = table.back();
            const double f = std::ldexp(1.0, static_cast<int>(order));
            std::vector<cplx> next;
            for (std::size_t j = 0; j + 1 < prev.size(); ++j) next.push_back(prev[j + 1] + (prev[j + 1] - prev[j]) / (f - 1.0));
            table.push_back(std::move(next));
        }
        const double qerr = quad_err.back() + quad_err[quad_err.size() - 2];
        for (const auto& col : table) {
            if (col.size() < 2) continue;
            const std::size_t m = col.size();
            double est = std::abs(col[m - 1] - col[m - 2]);
            if (m >= 3) {
                // Two successive contractions by at least half: bound the remaining tail geometrically.
                const double d0 = std::abs(col[m - 2] - col[m - 3]);
                const double dm = m >= 4 ? std::abs(col[m - 3] - col[m - 4]) : kInf;
                const double rho = std::max(d0 > 0.0 ? est / d0 : 1.0, dm > 0.0 ? d0 / dm : 1.0);
                if (m >= 4 && rho <= 0.5) {
                    est *= rho / (1.0 - rho) + 0.1;
                } else {
                    est = std::max(est, 0.25 * d0);
                }
            }
            est += qerr;
            if (est < best_est) {
                best_est = est;
                best_value = col.back();
            }
        }
        if (best_est <= req.tol) {
            QuadratureResult r;
            r.value = best_value;
            r.error_estimate = best_est;
            r.evaluations = evals;
            r.panels_used = panels;
            r.truncation_radius = R;
            r.method = QuadMethod::WindowedExtrapolation;
            return r;
        }
        best_est = kInf;
    }
    std::ostringstream os;
    os << "tail extrapolation did not reach tolerance " << req.tol << " by radius " << R / 2.0;
    throw Error(ErrorCode::NonConvergent, os.str());
}

void validate(const QuadratureRequest& req)
{
    require(req.tol > 0.0 && std::isfinite(req.tol), ErrorCode::InvalidArgument, "tol must be positive");
    require(static_cast<bool>(req.integrand), ErrorCode::InvalidArgument, "integrand is empty");
    if (req.domain.kind == Domain::Kind::Finite) {
        require(std::isfinite(req.domain.a) && std::isfinite(req.domain.b) && req.domain.a < req.domain.b,
                ErrorCode::InvalidArgument, "finite domain requires a < b");
    }
}

} // namespace

std::string to_string(QuadMethod m)
{
    switch (m) {
    case QuadMethod::Adaptive: return "adaptive";
    case QuadMethod::Truncated: return "truncated";
    case QuadMethod::WindowedExtrapolation: return "windowed-extrapolation";
    }
    return "unknown";
}

double smooth_window(double s)
{
    s = std::abs(s);
    if (s <= kWindowFlat) return 1.0;
    if (s >= 1.0) return 0.0;
    const double u = (s - kWindowFlat) / (1.0 - kWindowFlat);
    auto h = [](double z) { return z <= 0.0 ? 0.0 : std::exp(-1.0 / z); };
    const double a = h(1.0 - u);
    return a / (a + h(u));
}

QuadratureResult integrate(const QuadratureRequest& req)
{
    validate(req);
    if (!req.domain.infinite()) {
        return adaptive(req.integrand, req.domain.a, req.domain.b, req.tol, req.breakpoints, req.frequency_hint,
                        req.max_evaluations);
    }
    require(req.envelope.has_value(), ErrorCode::MissingEnvelope, "infinite domain without a decay envelope");
    const DecayEnvelope& env = *req.envelope;
    using C = DecayEnvelope::Class;
    require(env.kind() == C::CompactSupport || std::isfinite(env.constant()), ErrorCode::MissingEnvelope,
            "decay envelope constant is not finite");
    switch (env.kind()) {
    case C::CompactSupport: {
        QuadratureResult r = truncated(req, env.radius(), 0.0);
        r.method = QuadMethod::Adaptive;
        return r;
    }
    case C::Exponential:
    case C::Gaussian: {
        const double floor = 1e-3 * std::numeric_limits<double>::epsilon() * env.total_mass();
        const double budget = std::min(req.tol / 10.0, std::max(floor, 1e-300));
        const double R = std::max(envelope_radius(env, budget), feature_radius(req));
        return truncated(req, R, env.tail(R));
    }
    case C::Polynomial: {
        require(env.parameter() > 1.0, ErrorCode::NotIntegrable,
                "polynomial envelope with p <= 1 does not bound an integrable tail");
        const double budget = req.tol / 10.0;
        const double R = std::max(envelope_radius(env, budget), feature_radius(req));
        const double freq = req.frequency_hint.value_or(0.0);
        const double panels = 2.0 * R * 2.0 * freq / (2.0 * kPi);
        if (R <= 1e5 && panels * 15.0 * 4.0 <= static_cast<double>(req.max_evaluations)) {
            return truncated(req, R, env.tail(R));
        }
        return windowed(req);
    }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown envelope class");
}

namespace {

QuadratureRequest request_for(const Function& f, Domain domain, double tol, Integrand integrand,
                              std::optional<double> freq)
{
    const FunctionInfo& info = f.info();
    QuadratureRequest req;
    req.integrand = std::move(integrand);
    req.domain = domain;
    req.tol = tol;
    req.envelope = info.envelope;
    req.breakpoints = info.breakpoints;
    req.length_scale = info.scale;
    if (freq && *freq > 0.0) req.frequency_hint = freq;
    return req;
}

/// Narrows the domain to the support; returns false when nothing is left.
bool narrow_to_support(const FunctionInfo& info, Domain& d)
{
    if (!info.support) return true;
    double lo = info.support->lo;
    double hi = info.support->hi;
    switch (d.kind) {
    case Domain::Kind::Finite: lo = std::max(lo, d.a); hi = std::min(hi, d.b); break;
    case Domain::Kind::UpperHalfLine: lo = std::max(lo, d.a); break;
    case Domain::Kind::LowerHalfLine: hi = std::min(hi, d.b); break;
    case Domain::Kind::FullLine: break;
    }
    if (!(hi > lo)) return false;
    d = Domain::finite(lo, hi);
    return true;
}

} // namespace

QuadratureResult integrate_function(const Function& f, Domain domain, double tol)
{
    if (!narrow_to_support(f.info(), domain)) return {};
    const double bw = f.info().bandwidth;
    QuadratureRequest req = request_for(f, domain, tol, [f](double x) { return f(x); },
                                        bw > 0.0 ? std::optional<double>(bw) : std::nullopt);
    return integrate(req);
}

QuadratureResult lp_norm(const Function& f, int p, double tol)
{
    require(p == 1 || p == 2, ErrorCode::InvalidArgument, "only p = 1 and p = 2 are supported");
    const FunctionInfo& info = f.info();
    require(p == 1 ? info.membership.l1 : info.membership.l2, ErrorCode::NotIntegrable,
            f.describe() + " is not flagged L" + std::to_string(p));
    Domain d = Domain::real_line();
    if (!narrow_to_support(info, d)) return {};
    Integrand g;
    if (p == 1) {
        g = [f](double x) { return cplx(std::abs(f(x)), 0.0); };
    } else {
        g = [f](double x) { return cplx(std::norm(f(x)), 0.0); };
    }
    QuadratureRequest req = request_for(f, d, tol, std::move(g), std::nullopt);
    if (p == 2 && info.envelope) {
        req.envelope = envelope_rules::product(*info.envelope, info.sup_bound, *info.envelope, info.sup_bound);
    }
    if (p == 2 && !req.envelope && d.infinite()) {
        throw Error(ErrorCode::MissingEnvelope, "no envelope for |f|^2 on an infinite domain");
    }
    QuadratureResult r = integrate(req);
    if (p == 2) {
        const double v = std::sqrt(std::max(r.value.real(), 0.0));
        r.error_estimate = v > 0.0 ? r.error_estimate / (2.0 * v) : std::sqrt(r.error_estimate);
        r.value = v;
    }
    return r;
}

QuadratureResult oscillatory_integrate(const Function& f, double y, double tol)
{
    require(std::isfinite(y), ErrorCode::InvalidArgument, "frequency must be finite");
    require(f.membership().l1, ErrorCode::NotIntegrable, f.describe() + " is not flagged integrable");
    Domain d = Domain::real_line();
    if (!narrow_to_support(f.info(), d)) return {};
    const double freq = std::abs(y) + f.info().bandwidth;
    Integrand g = [f, y](double x) {
        const cplx v = f(x);
        return v == 0.0 ? cplx{} : v * std::polar(1.0, -x * y);
    };
    return integrate(request_for(f, d, tol, std::move(g), freq));
}

LimitSchedule LimitSchedule::geometric(double start, double ratio, std::size_t n, double lower_ratio)
{
    require(start > 0.0 && ratio > 1.0 && lower_ratio > 0.0 && n >= 3, ErrorCode::InvalidArgument,
            "geometric schedule needs start > 0, ratio > 1 and at least three terms");
    LimitSchedule s;
    double A = start;
    for (std::size_t k = 0; k < n; ++k, A *= ratio) {
        s.upper.push_back(A);
        s.lower.push_back(lower_ratio * A);
    }
    return s;
}

namespace {

double spread3(const std::vector<cplx>& v)
{
    const std::size_t n = v.size();
    if (n < 3) return kInf;
    return std::max({std::abs(v[n - 1] - v[n - 2]), std::abs(v[n - 1] - v[n - 3]), std::abs(v[n - 2] - v[n - 3])});
}

/// Neville extrapolation to h = 0 of the sequence (h_k, v_k) using `order`+1 consecutive points.
std::vector<cplx> neville_column(const std::vector<double>& h, const std::vector<cplx>& v, std::size_t order)
{
    std::vector<cplx> out;
    for (std::size_t end = order; end < v.size(); ++end) {
        std::vector<cplx> p(v.begin() + static_cast<std::ptrdiff_t>(end - order), v.begin() + static_cast<std::ptrdiff_t>(end + 1));
        std::vector<double> hh(h.begin() + static_cast<std::ptrdiff_t>(end - order), h.begin() + static_cast<std::ptrdiff_t>(end + 1));
        for (std::size_t m = 1; m <= order; ++m) {
            for (std::size_t i = 0; i + m <= order; ++i) {
                p[i] = (hh[i + m] * p[i] - hh[i] * p[i + 1]) / (hh[i + m] - hh[i]);
            }
        }
        out.push_back(p[0]);
    }
    return out;
}

} // namespace

LimitResult two_sided_limit(const Integrand& g, const LimitSchedule& schedule, const LimitOptions& opts)
{
    const auto& A = schedule.upper;
    const auto& B = schedule.lower;
    require(A.size() == B.size() && A.size() >= 3, ErrorCode::InvalidArgument,
            "schedules must have equal length of at least three");
    require(opts.tol > 0.0, ErrorCode::InvalidArgument, "tol must be positive");
    for (std::size_t k = 0; k < A.size(); ++k) {
        require(A[k] > 0.0 && B[k] > 0.0 && std::isfinite(A[k]) && std::isfinite(B[k]), ErrorCode::InvalidArgument,
                "schedule entries must be positive and finite");
        if (k > 0) {
            require(A[k] > A[k - 1] && B[k] > B[k - 1], ErrorCode::InvalidArgument,
                    "schedules must be strictly increasing");
        }
    }
    const double sub_tol = opts.tol / 20.0;
    auto piece = [&](const Integrand& h, double lo, double hi) -> cplx {
        if (!(hi > lo)) return {};
        return adaptive(h, lo, hi, sub_tol, opts.breakpoints, opts.frequency_hint, kDefaultMaxEvaluations).value;
    };

    LimitResult res;
    cplx running = piece(g, -B[0], A[0]);
    res.partials.push_back(running);
    for (std::size_t k = 1; k < A.size(); ++k) {
        running += piece(g, A[k - 1], A[k]);
        running += piece(g, -B[k], -B[k - 1]);
        res.partials.push_back(running);
    }

    std::vector<cplx> smoothed;
    for (std::size_t k = 0; k < A.size(); ++k) {
        const double a = A[k];
        const double b = B[k];
        Integrand w = [&g, a, b](double x) {
            const double s = x >= 0.0 ? smooth_window(x / a) : smooth_window(x / b);
            return s == 0.0 ? cplx{} : g(x) * s;
        };
        std::vector<double> bps = opts.breakpoints;
        bps.push_back(kWindowFlat * a);
        bps.push_back(-kWindowFlat * b);
        smoothed.push_back(adaptive(w, -b, a, sub_tol, bps, opts.frequency_hint, kDefaultMaxEvaluations).value);
    }

    struct Candidate {
        std::string name;
        std::vector<cplx> seq;
    };
    std::vector<Candidate> cands{{"partials", res.partials}, {"smoothed", smoothed}};
    std::vector<double> h;
    for (double a : A) h.push_back(1.0 / a);
    for (std::size_t order = 1; order + 3 <= smoothed.size(); ++order) {
        cands.push_back({"partials+extrapolated(" + std::to_string(order) + ")", neville_column(h, res.partials, order)});
        cands.push_back({"smoothed+extrapolated(" + std::to_string(order) + ")", neville_column(h, smoothed, order)});
    }

    const Candidate* best = nullptr;
    double best_spread = kInf;
    for (const Candidate& c : cands) {
        const double s = spread3(c.seq);
        if (s < best_spread) {
            best_spread = s;
            best = &c;
        }
    }
    if (best == nullptr || !(best_spread <= opts.tol)) {
        std::ostringstream os;
        os << "partial integrals did not stabilize within " << opts.tol << " (best spread " << best_spread << ")";
        throw Error(ErrorCode::NotStabilized, os.str());
    }
    // Smoothed sequences also converge for some divergent integrals; insist that
    // the raw partials approach the accepted value along the schedule.
    const cplx v = best->seq.back();
    const std::size_t n = res.partials.size();
    double head = 0.0;
    double tail = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        head = std::max(head, std::abs(res.partials[k] - v));
        tail = std::max(tail, std::abs(res.partials[n - 1 - k] - v));
    }
    if (tail > std::max(opts.tol, 0.5 * head)) {
        std::ostringstream os;
        os << "partial integrals keep oscillating (deviation " << tail << " at the end of the schedule)";
        throw Error(ErrorCode::NotStabilized, os.str());
    }
    res.value = v;
    res.accepted_sequence = best->seq;
    res.method = best->name;
    res.spread = best_spread;
    return res;
}

} // namespace flab
