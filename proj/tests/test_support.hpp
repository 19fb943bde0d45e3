#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>

namespace flab::testing {

/// Fixed-seed generator so property tests are reproducible.
inline std::mt19937_64 rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline double uniform(std::mt19937_64& g, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

/// Composite Simpson rule; the independent oracle used throughout the tests.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n)
{
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

inline std::complex<double> simpson_c(const std::function<std::complex<double>(double)>& f, double a, double b, int n)
{
    auto re = [&](double x) { return f(x).real(); };
    auto im = [&](double x) { return f(x).imag(); };
    return {simpson(re, a, b, n), simpson(im, a, b, n)};
}

} // namespace flab::testing
