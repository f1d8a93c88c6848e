#pragma once

#include <cmath>
#include <vector>

#include "rankdep/errors.hpp"
#include "rankdep/ranks.hpp"

namespace rankdep {

/// Amplitudes A_j = |f_j| of the unnormalized forward transform
/// f_j = sum_k x_k exp(-2 pi i jk / n), with the normalized vector
/// A*_j = A_j / sum A summing to one.
struct DftAmplitudes {
    std::vector<double> a;
    std::vector<double> a_star;
};

namespace detail {

inline DftAmplitudes amplitude_spectrum(const std::vector<double>& x) {
    const std::size_t n = x.size();
    DftAmplitudes out;
    out.a.resize(n);
    const double step = -6.283185307179586476925286766559 / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) {
        double re = 0.0, im = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            // angle = -2 pi j k / n, with jk reduced mod n to limit rounding
            const double angle = step * static_cast<double>((j * k) % n);
            re += x[k] * std::cos(angle);
            im += x[k] * std::sin(angle);
        }
        out.a[j] = std::hypot(re, im);
    }
    double total = 0.0;
    for (double v : out.a) total += v;
    out.a_star.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.a_star[j] = total > 0.0 ? out.a[j] / total : 0.0;
    return out;
}

/// Entropy of a normalized nonnegative vector, with 0 log 0 := 0.
inline double entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p)
        if (v > 0.0) h -= v * std::log(v);
    return h;
}

} // namespace detail

/// Amplitude spectrum of the rank position vector s itself. The DC term is
/// the permutation sum: A_0 = n(n+1)/2.
inline DftAmplitudes dft_amplitudes(const RankPositionVector& rpv) {
    std::vector<double> x(rpv.values().begin(), rpv.values().end());
    return detail::amplitude_spectrum(x);
}

/// Amplitude spectrum of the zero-based offsets s - 1 (values 0..n-1). Only
/// the DC term differs from dft_amplitudes: A_0 = n(n-1)/2. This is the
/// spectrum the T3/T4 statistics are defined on.
inline DftAmplitudes dft_amplitudes_zero_based(const RankPositionVector& rpv) {
    std::vector<double> x;
    x.reserve(rpv.values().size());
    for (int v : rpv.values()) x.push_back(static_cast<double>(v - 1));
    return detail::amplitude_spectrum(x);
}

enum class Window { Rectangular, Hann };

struct MfccParams {
    int num_filters = 20;
    double log_floor = 1e-12;
    Window window = Window::Rectangular;
};

/// Mel-frequency cepstral coefficients M, with normalized absolute values
/// M* summing to one.
struct MfccCoefficients {
    std::vector<double> m;
    std::vector<double> m_star;
    MfccParams params;
};

/// Unnormalized DCT-II: X_k = sum_m x_m cos(pi k (2m + 1) / (2M)).
inline std::vector<double> dct_ii(const std::vector<double>& x) {
    const std::size_t m = x.size();
    std::vector<double> out(m, 0.0);
    const double pi = 3.141592653589793238462643383279;
    for (std::size_t k = 0; k < m; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            acc += x[i] * std::cos(pi * static_cast<double>(k) *
                                   (2.0 * static_cast<double>(i) + 1.0) /
                                   (2.0 * static_cast<double>(m)));
        out[k] = acc;
    }
    return out;
}

namespace detail {

inline double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
inline double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

/// Triangular mel filter-bank energies of the power spectrum of the rank
/// position vector. The nominal sample rate is n, so spectrum bin j sits at
/// frequency j and the Nyquist frequency is n/2.
inline std::vector<double> mel_filter_energies(const RankPositionVector& rpv,
                                               const MfccParams& params) {
    const int n = rpv.n();
    std::vector<double> x(rpv.values().begin(), rpv.values().end());
    if (params.window == Window::Hann) {
        for (int k = 0; k < n; ++k)
            x[static_cast<std::size_t>(k)] *=
                0.5 * (1.0 - std::cos(6.283185307179586 * k / (n - 1)));
    }
    const DftAmplitudes spec = amplitude_spectrum(x);

    const int half = n / 2;
    std::vector<double> power(static_cast<std::size_t>(half) + 1);
    for (int j = 0; j <= half; ++j)
        power[static_cast<std::size_t>(j)] =
            spec.a[static_cast<std::size_t>(j)] * spec.a[static_cast<std::size_t>(j)];

    const int nf = params.num_filters;
    const double mel_hi = hz_to_mel(static_cast<double>(n) / 2.0);
    std::vector<double> edges(static_cast<std::size_t>(nf) + 2);
    for (int p = 0; p < nf + 2; ++p)
        edges[static_cast<std::size_t>(p)] = mel_to_hz(mel_hi * p / (nf + 1));

    std::vector<double> energies(static_cast<std::size_t>(nf), 0.0);
    for (int i = 1; i <= nf; ++i) {
        const double lo = edges[static_cast<std::size_t>(i - 1)];
        const double center = edges[static_cast<std::size_t>(i)];
        const double hi = edges[static_cast<std::size_t>(i + 1)];
        double acc = 0.0;
        for (int j = 0; j <= half; ++j) {
            const double f = static_cast<double>(j);
            double w = 0.0;
            if (f >= lo && f <= center && center > lo)
                w = (f - lo) / (center - lo);
            else if (f > center && f <= hi && hi > center)
                w = (hi - f) / (hi - center);
            acc += power[static_cast<std::size_t>(j)] * w;
        }
        energies[static_cast<std::size_t>(i - 1)] = acc;
    }
    return energies;
}

} // namespace detail

/// MFCC pipeline: DFT power spectrum of the rank position vector, mel
/// filter-bank with triangular windows, floored log energies, DCT-II. All
/// num_filters coefficients are retained.
inline MfccCoefficients mfcc(const RankPositionVector& rpv, const MfccParams& params = {}) {
    if (params.num_filters < 2)
        throw InvalidInput("mfcc: need at least 2 filters");
    if (!(params.log_floor > 0.0))
        throw InvalidInput("mfcc: log floor must be positive");

    std::vector<double> energies = detail::mel_filter_energies(rpv, params);
    for (double& e : energies) e = std::log(std::max(e, params.log_floor));

    MfccCoefficients out;
    out.m = dct_ii(energies);
    out.params = params;
    double total = 0.0;
    for (double v : out.m) total += std::fabs(v);
    out.m_star.resize(out.m.size());
    for (std::size_t i = 0; i < out.m.size(); ++i)
        out.m_star[i] = total > 0.0 ? std::fabs(out.m[i]) / total : 0.0;
    return out;
}

} // namespace rankdep
