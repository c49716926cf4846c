#ifndef DRIFG_IMAGE_HPP
#define DRIFG_IMAGE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "drifg/errors.hpp"

namespace drifg {

using cplx = std::complex<double>;

/// Wrap an angle into (-pi, pi].
inline double wrap_phase(double x) {
    double w = std::atan2(std::sin(x), std::cos(x));
    // atan2 returns [-pi, pi]; fold -pi onto +pi so the convention is (-pi, pi].
    if (w == -std::numbers::pi) w = std::numbers::pi;
    return w;
}

/// 2-D real-valued field, row-major.
struct RealField {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    RealField() = default;
    RealField(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::size_t size() const { return rows * cols; }
};

/// 2-D complex-valued field, row-major. Carrier for radar images, spectra and
/// wavelet coefficient grids.
struct ComplexImage {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data;

    ComplexImage() = default;
    ComplexImage(std::size_t r, std::size_t c, cplx fill = {})
        : rows(r), cols(c), data(r * c, fill) {}

    cplx& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    cplx at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::size_t size() const { return rows * cols; }

    bool same_dims(const ComplexImage& o) const {
        return rows == o.rows && cols == o.cols;
    }
};

inline void require_same_dims(const ComplexImage& a, const ComplexImage& b,
                              const char* what) {
    if (!a.same_dims(b))
        throw dimension_error(std::string(what) + ": dimension mismatch");
}

inline void require_finite(const ComplexImage& z, const char* what) {
    for (const cplx& v : z.data)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw numeric_error(std::string(what) + ": non-finite sample");
}

inline double norm2(const ComplexImage& z) {
    double s = 0.0;
    for (const cplx& v : z.data) s += std::norm(v);
    return std::sqrt(s);
}

inline double norm1(const ComplexImage& z) {
    double s = 0.0;
    for (const cplx& v : z.data) s += std::abs(v);
    return s;
}

inline cplx inner(const ComplexImage& a, const ComplexImage& b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i)
        s += std::conj(a.data[i]) * b.data[i];
    return s;
}

inline double max_abs(const ComplexImage& z) {
    double m = 0.0;
    for (const cplx& v : z.data) m = std::max(m, std::abs(v));
    return m;
}

inline double rel_error(const ComplexImage& a, const ComplexImage& b) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        num += std::norm(a.data[i] - b.data[i]);
        den += std::norm(b.data[i]);
    }
    if (den == 0.0) return std::sqrt(num);
    return std::sqrt(num / den);
}

/// Pixel-wise phase; phase(0) = 0 by convention.
inline RealField phase_of(const ComplexImage& z) {
    RealField p(z.rows, z.cols);
    for (std::size_t i = 0; i < z.data.size(); ++i)
        p.data[i] = (z.data[i] == cplx{}) ? 0.0 : std::arg(z.data[i]);
    return p;
}

} // namespace drifg

#endif
