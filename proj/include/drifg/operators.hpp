#ifndef DRIFG_OPERATORS_HPP
#define DRIFG_OPERATORS_HPP

#include <cstdint>
#include <string>

#include "drifg/band.hpp"
#include "drifg/errors.hpp"
#include "drifg/fft.hpp"
#include "drifg/image.hpp"
#include "drifg/rng.hpp"
#include "drifg/wavelet.hpp"

namespace drifg {

/// Unit-modulus modulation field: theta[n,l] = exp(j(phi_1 + dphi_flat)).
struct ModulationField {
    ComplexImage theta;
};

/// Build theta from the reference image's phase plus the flat-earth phase.
/// Zero-amplitude reference pixels take phase 0.
inline ModulationField modulation_from_reference(const ComplexImage& z1,
                                                 const RealField& flat_phase) {
    if (z1.rows != flat_phase.rows || z1.cols != flat_phase.cols)
        throw dimension_error("modulation_from_reference: dimension mismatch");
    ModulationField mod;
    mod.theta = ComplexImage(z1.rows, z1.cols);
    for (std::size_t i = 0; i < z1.size(); ++i) {
        const double p1 = (z1.data[i] == cplx{}) ? 0.0 : std::arg(z1.data[i]);
        const double p = p1 + flat_phase.data[i];
        mod.theta.data[i] = cplx(std::cos(p), std::sin(p));
    }
    return mod;
}

namespace detail {

inline void check_forward_dims(const ComplexImage& u, const ModulationField& mod,
                               const BandSelection& band, const char* what) {
    if (u.rows != band.full_rows || u.cols != band.full_cols)
        throw dimension_error(std::string(what) + ": image dims do not match band");
    if (!mod.theta.same_dims(u))
        throw dimension_error(std::string(what) + ": theta dims do not match image");
}

} // namespace detail

/// M u, matrix-free: theta-modulate, unitary 2-D DFT, select band bins,
/// inverse unitary 2-D DFT at the reduced size. O(NL log NL), never forms M.
inline ComplexImage apply_forward(const ComplexImage& u, const ModulationField& mod,
                                  const BandSelection& band) {
    detail::check_forward_dims(u, mod, band, "apply_forward");
    ComplexImage v = u;
    for (std::size_t i = 0; i < v.size(); ++i) v.data[i] *= mod.theta.data[i];
    ComplexImage spectrum = fft2_unitary(v);
    ComplexImage reduced(band.reduced_rows, band.reduced_cols);
    for (std::size_t m = 0; m < band.reduced_rows; ++m)
        for (std::size_t k = 0; k < band.reduced_cols; ++k)
            reduced.at(m, k) = spectrum.at(band.row_bins[m], band.col_bins[k]);
    return ifft2_unitary(reduced);
}

/// M* y, the exact adjoint of apply_forward under the standard complex inner
/// product.
inline ComplexImage apply_adjoint(const ComplexImage& y, const ModulationField& mod,
                                  const BandSelection& band) {
    if (y.rows != band.reduced_rows || y.cols != band.reduced_cols)
        throw dimension_error("apply_adjoint: input dims do not match reduced size");
    if (mod.theta.rows != band.full_rows || mod.theta.cols != band.full_cols)
        throw dimension_error("apply_adjoint: theta dims do not match band");
    ComplexImage reduced = fft2_unitary(y);
    ComplexImage spectrum(band.full_rows, band.full_cols);
    for (std::size_t m = 0; m < band.reduced_rows; ++m)
        for (std::size_t k = 0; k < band.reduced_cols; ++k)
            spectrum.at(band.row_bins[m], band.col_bins[k]) = reduced.at(m, k);
    ComplexImage v = ifft2_unitary(spectrum);
    for (std::size_t i = 0; i < v.size(); ++i)
        v.data[i] *= std::conj(mod.theta.data[i]);
    return v;
}

/// A x = M(Wx). The operator norm of A is exactly 1 (subselected unitary times
/// unit-modulus diagonal times orthonormal basis).
inline constexpr double sensing_operator_norm = 1.0;

inline ComplexImage apply_sensing(const SparseCoeffs& x, const ModulationField& mod,
                                  const BandSelection& band, const WaveletConfig& cfg) {
    return apply_forward(wavelet_synthesis(x, cfg), mod, band);
}

inline SparseCoeffs apply_sensing_adjoint(const ComplexImage& y, const ModulationField& mod,
                                          const BandSelection& band, const WaveletConfig& cfg) {
    return wavelet_analysis(apply_adjoint(y, mod, band), cfg);
}

/// Dense complex matrix, column-major. Test oracle and coherence probes only.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cplx> data; // column-major

    cplx& at(std::size_t r, std::size_t c) { return data[c * rows + r]; }
    cplx at(std::size_t r, std::size_t c) const { return data[c * rows + r]; }
};

inline constexpr std::size_t dense_oracle_cap = 4096; // max N*L entries

namespace detail {

inline void check_dense_cap(const BandSelection& band) {
    if (band.full_rows * band.full_cols > dense_oracle_cap)
        throw dimension_error("dense oracle: instance exceeds cap of " +
                              std::to_string(dense_oracle_cap) + " pixels");
}

} // namespace detail

/// Explicit MK x NL matrix of the forward operator, built by applying the
/// matrix-free operator to canonical basis images (row-major flattening).
inline DenseMatrix build_dense_forward(const ModulationField& mod, const BandSelection& band) {
    detail::check_dense_cap(band);
    const std::size_t n_in = band.full_rows * band.full_cols;
    const std::size_t n_out = band.reduced_rows * band.reduced_cols;
    DenseMatrix A{n_out, n_in, std::vector<cplx>(n_out * n_in)};
    ComplexImage e(band.full_rows, band.full_cols);
    for (std::size_t j = 0; j < n_in; ++j) {
        e.data[j] = 1.0;
        ComplexImage col = apply_forward(e, mod, band);
        for (std::size_t i = 0; i < n_out; ++i) A.at(i, j) = col.data[i];
        e.data[j] = 0.0;
    }
    return A;
}

/// Explicit MK x NL sensing matrix A = M W.
inline DenseMatrix build_dense_sensing(const ModulationField& mod, const BandSelection& band,
                                       const WaveletConfig& cfg) {
    detail::check_dense_cap(band);
    const std::size_t n_in = band.full_rows * band.full_cols;
    const std::size_t n_out = band.reduced_rows * band.reduced_cols;
    DenseMatrix A{n_out, n_in, std::vector<cplx>(n_out * n_in)};
    SparseCoeffs e{ComplexImage(band.full_rows, band.full_cols)};
    for (std::size_t j = 0; j < n_in; ++j) {
        e.coeffs.data[j] = 1.0;
        ComplexImage col = apply_sensing(e, mod, band, cfg);
        for (std::size_t i = 0; i < n_out; ++i) A.at(i, j) = col.data[i];
        e.coeffs.data[j] = 0.0;
    }
    return A;
}

/// Largest eigenvalue of A*A by power iteration on the matrix-free operators.
inline double power_iteration_sensing(const ModulationField& mod, const BandSelection& band,
                                      const WaveletConfig& cfg, std::uint64_t seed,
                                      int iters = 200) {
    Rng rng(seed);
    SparseCoeffs x{ComplexImage(band.full_rows, band.full_cols)};
    for (cplx& v : x.coeffs.data) v = cplx(rng.normal(), rng.normal());
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        const double n = norm2(x.coeffs);
        if (n == 0.0) throw numeric_error("power iteration: zero iterate");
        for (cplx& v : x.coeffs.data) v /= n;
        SparseCoeffs next = apply_sensing_adjoint(apply_sensing(x, mod, band, cfg),
                                                  mod, band, cfg);
        lambda = inner(x.coeffs, next.coeffs).real();
        x = std::move(next);
    }
    return lambda;
}

} // namespace drifg

#endif
