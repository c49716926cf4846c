#ifndef DRIFG_FFT_HPP
#define DRIFG_FFT_HPP

#include <fftw3.h>

#include <mutex>

#include "drifg/image.hpp"

namespace drifg {
namespace detail {

// FFTW planning is not thread safe; execution of independent plans is.
inline std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

inline void run_dft_2d(ComplexImage& z, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(z.data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft_2d(static_cast<int>(z.rows), static_cast<int>(z.cols),
                                buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
}

} // namespace detail

/// Unitary 2-D DFT: forward and inverse are adjoint pairs, both norm-preserving.
inline ComplexImage fft2_unitary(const ComplexImage& z) {
    ComplexImage out = z;
    detail::run_dft_2d(out, FFTW_FORWARD);
    const double s = 1.0 / std::sqrt(static_cast<double>(z.size()));
    for (cplx& v : out.data) v *= s;
    return out;
}

inline ComplexImage ifft2_unitary(const ComplexImage& z) {
    ComplexImage out = z;
    detail::run_dft_2d(out, FFTW_BACKWARD);
    const double s = 1.0 / std::sqrt(static_cast<double>(z.size()));
    for (cplx& v : out.data) v *= s;
    return out;
}

/// 2-D DCT-II of a real field (unnormalized FFTW REDFT10 convention).
inline RealField dct2(const RealField& f) {
    RealField out(f.rows, f.cols);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        plan = fftw_plan_r2r_2d(static_cast<int>(f.rows), static_cast<int>(f.cols),
                                const_cast<double*>(f.data.data()), out.data.data(),
                                FFTW_REDFT10, FFTW_REDFT10, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

/// 2-D DCT-III (inverse of dct2 up to the factor 4*rows*cols).
inline RealField idct2(const RealField& f) {
    RealField out(f.rows, f.cols);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        plan = fftw_plan_r2r_2d(static_cast<int>(f.rows), static_cast<int>(f.cols),
                                const_cast<double*>(f.data.data()), out.data.data(),
                                FFTW_REDFT01, FFTW_REDFT01, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(detail::fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    const double s = 1.0 / (4.0 * static_cast<double>(f.rows) * static_cast<double>(f.cols));
    for (double& v : out.data) v *= s;
    return out;
}

} // namespace drifg

#endif
