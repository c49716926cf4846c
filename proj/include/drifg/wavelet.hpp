#ifndef DRIFG_WAVELET_HPP
#define DRIFG_WAVELET_HPP

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "drifg/errors.hpp"
#include "drifg/image.hpp"

namespace drifg {

enum class WaveletFamily { haar, db4 };

/// Orthonormal separable 2-D DWT with periodic boundary. The real filter bank
/// is applied to the complex samples directly, which is identical to
/// transforming real and imaginary parts separately.
struct WaveletConfig {
    WaveletFamily family = WaveletFamily::db4;
    int levels = 4;
};

/// Wavelet coefficients in the standard octave layout: the level-j scaling
/// subband occupies the top-left (rows/2^j) x (cols/2^j) corner.
struct SparseCoeffs {
    ComplexImage coeffs;
};

inline WaveletFamily wavelet_family_from_string(const std::string& name) {
    if (name == "haar") return WaveletFamily::haar;
    if (name == "db4") return WaveletFamily::db4;
    throw config_error("unknown wavelet family '" + name + "' (haar, db4)");
}

namespace detail {

inline std::vector<double> scaling_filter(WaveletFamily family) {
    switch (family) {
    case WaveletFamily::haar: {
        const double s = 1.0 / std::sqrt(2.0);
        return {s, s};
    }
    case WaveletFamily::db4: {
        const double r3 = std::sqrt(3.0);
        const double d = 4.0 * std::sqrt(2.0);
        return {(1.0 + r3) / d, (3.0 + r3) / d, (3.0 - r3) / d, (1.0 - r3) / d};
    }
    }
    throw config_error("unknown wavelet family");
}

// QMF: g[m] = (-1)^m h[T-1-m]
inline std::vector<double> wavelet_filter(const std::vector<double>& h) {
    std::vector<double> g(h.size());
    for (std::size_t m = 0; m < h.size(); ++m)
        g[m] = ((m % 2 == 0) ? 1.0 : -1.0) * h[h.size() - 1 - m];
    return g;
}

// One periodic analysis step on a strided length-n signal: first half gets the
// approximation, second half the detail.
inline void dwt_step(cplx* x, std::size_t n, std::size_t stride,
                     const std::vector<double>& h, const std::vector<double>& g,
                     std::vector<cplx>& scratch) {
    const std::size_t half = n / 2;
    scratch.resize(n);
    for (std::size_t k = 0; k < half; ++k) {
        cplx a{}, d{};
        for (std::size_t m = 0; m < h.size(); ++m) {
            const cplx v = x[((2 * k + m) % n) * stride];
            a += h[m] * v;
            d += g[m] * v;
        }
        scratch[k] = a;
        scratch[half + k] = d;
    }
    for (std::size_t i = 0; i < n; ++i) x[i * stride] = scratch[i];
}

inline void idwt_step(cplx* x, std::size_t n, std::size_t stride,
                      const std::vector<double>& h, const std::vector<double>& g,
                      std::vector<cplx>& scratch) {
    const std::size_t half = n / 2;
    scratch.assign(n, cplx{});
    for (std::size_t k = 0; k < half; ++k) {
        const cplx a = x[k * stride];
        const cplx d = x[(half + k) * stride];
        for (std::size_t m = 0; m < h.size(); ++m)
            scratch[(2 * k + m) % n] += h[m] * a + g[m] * d;
    }
    for (std::size_t i = 0; i < n; ++i) x[i * stride] = scratch[i];
}

inline void check_divisible(const ComplexImage& z, const WaveletConfig& cfg) {
    if (cfg.levels < 1) throw config_error("wavelet levels must be >= 1");
    const std::size_t div = std::size_t{1} << cfg.levels;
    if (z.rows % div != 0 || z.cols % div != 0)
        throw dimension_error("wavelet: 2^levels must divide both dims (" +
                              std::to_string(z.rows) + "x" + std::to_string(z.cols) +
                              ", levels=" + std::to_string(cfg.levels) + ")");
}

} // namespace detail

inline SparseCoeffs wavelet_analysis(const ComplexImage& u, const WaveletConfig& cfg) {
    detail::check_divisible(u, cfg);
    const auto h = detail::scaling_filter(cfg.family);
    const auto g = detail::wavelet_filter(h);

    SparseCoeffs out{u};
    ComplexImage& c = out.coeffs;
    std::vector<cplx> scratch;
    std::size_t r = u.rows, cc = u.cols;
    for (int lev = 0; lev < cfg.levels; ++lev) {
        for (std::size_t i = 0; i < r; ++i)
            detail::dwt_step(&c.data[i * c.cols], cc, 1, h, g, scratch);
        for (std::size_t j = 0; j < cc; ++j)
            detail::dwt_step(&c.data[j], r, c.cols, h, g, scratch);
        r /= 2;
        cc /= 2;
    }
    return out;
}

inline ComplexImage wavelet_synthesis(const SparseCoeffs& x, const WaveletConfig& cfg) {
    detail::check_divisible(x.coeffs, cfg);
    const auto h = detail::scaling_filter(cfg.family);
    const auto g = detail::wavelet_filter(h);

    ComplexImage c = x.coeffs;
    std::vector<cplx> scratch;
    for (int lev = cfg.levels - 1; lev >= 0; --lev) {
        const std::size_t r = c.rows >> lev;
        const std::size_t cc = c.cols >> lev;
        for (std::size_t j = 0; j < cc; ++j)
            detail::idwt_step(&c.data[j], r, c.cols, h, g, scratch);
        for (std::size_t i = 0; i < r; ++i)
            detail::idwt_step(&c.data[i * c.cols], cc, 1, h, g, scratch);
    }
    return c;
}

} // namespace drifg

#endif
