#ifndef DRIFG_EVALUATION_HPP
#define DRIFG_EVALUATION_HPP

#include <cmath>
#include <cstddef>

#include "drifg/errors.hpp"
#include "drifg/fft.hpp"
#include "drifg/image.hpp"
#include "drifg/operators.hpp"

namespace drifg {

/// Real phase surface in radians. If wrapped, values lie in (-pi, pi].
struct PhaseField {
    RealField values;
    bool wrapped = false;
};

inline PhaseField wrapped_phase_of(const ComplexImage& z) {
    PhaseField p{phase_of(z), true};
    for (double& v : p.values.data)
        if (v == -std::numbers::pi) v = std::numbers::pi;
    return p;
}

/// Pixel-by-pixel interferogram conj(z1) * z2.
inline ComplexImage conventional_interferogram(const ComplexImage& z1, const ComplexImage& z2) {
    require_same_dims(z1, z2, "conventional_interferogram");
    ComplexImage out(z1.rows, z1.cols);
    for (std::size_t i = 0; i < z1.size(); ++i)
        out.data[i] = std::conj(z1.data[i]) * z2.data[i];
    return out;
}

/// Multiply by exp(-j flat_phase); on clean data the remaining phase is the
/// elevation phase.
inline ComplexImage remove_flat_earth(const ComplexImage& ifg, const RealField& flat_phase) {
    if (ifg.rows != flat_phase.rows || ifg.cols != flat_phase.cols)
        throw dimension_error("remove_flat_earth: dimension mismatch");
    ComplexImage out(ifg.rows, ifg.cols);
    for (std::size_t i = 0; i < ifg.size(); ++i) {
        const double p = flat_phase.data[i];
        out.data[i] = ifg.data[i] * cplx(std::cos(p), -std::sin(p));
    }
    return out;
}

inline constexpr double rrmse_floor_db = -300.0;

/// Relative RMS error of unwrapped phase, 10 log10(sum (rec-ref)^2 / sum ref^2)
/// in dB. Identical inputs report the -300 dB floor.
inline double rrmse_db(const PhaseField& rec, const PhaseField& ref) {
    if (rec.values.rows != ref.values.rows || rec.values.cols != ref.values.cols)
        throw dimension_error("rrmse_db: dimension mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ref.values.data.size(); ++i) {
        const double d = rec.values.data[i] - ref.values.data[i];
        num += d * d;
        den += ref.values.data[i] * ref.values.data[i];
    }
    if (den == 0.0) throw numeric_error("rrmse_db: reference phase is identically zero");
    if (num == 0.0) return rrmse_floor_db;
    return std::max(rrmse_floor_db, 10.0 * std::log10(num / den));
}

struct UnwrapResult {
    PhaseField phase;            // wrapped = false
    std::size_t residue_count = 0; // nonzero loop charges in the wrapped input
};

/// Count phase residues: nonzero circulation of wrapped gradients around each
/// 2x2 pixel loop.
inline std::size_t count_residues(const RealField& wrapped) {
    std::size_t count = 0;
    for (std::size_t r = 0; r + 1 < wrapped.rows; ++r) {
        for (std::size_t c = 0; c + 1 < wrapped.cols; ++c) {
            const double loop =
                wrap_phase(wrapped.at(r, c + 1) - wrapped.at(r, c)) +
                wrap_phase(wrapped.at(r + 1, c + 1) - wrapped.at(r, c + 1)) +
                wrap_phase(wrapped.at(r + 1, c) - wrapped.at(r + 1, c + 1)) +
                wrap_phase(wrapped.at(r, c) - wrapped.at(r + 1, c));
            if (std::abs(loop) > 1e-6) ++count;
        }
    }
    return count;
}

/// Least-squares phase unwrapping: the unwrapped surface minimizes the l2
/// misfit between its discrete gradients and the wrapped gradients of the
/// input (DCT/Poisson solve with Neumann boundary). The additive constant is
/// fixed in two stages: circular alignment with the input (so re-wrapping a
/// residue-free result reproduces it), then the 2*pi multiple bringing the
/// mean closest to the input mean. Residue-bearing inputs are still unwrapped
/// but flagged via residue_count.
inline UnwrapResult unwrap_ls(const PhaseField& wrapped) {
    if (!wrapped.wrapped)
        throw config_error("unwrap_ls: input must be flagged wrapped");
    const std::size_t R = wrapped.values.rows, C = wrapped.values.cols;
    if (R < 2 || C < 2)
        throw dimension_error("unwrap_ls: input too small to unwrap");

    const RealField& p = wrapped.values;

    // Divergence of the wrapped gradient field (zero flux at the boundary).
    RealField rho(R, C);
    for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t c = 0; c < C; ++c) {
            double gx1 = (c + 1 < C) ? wrap_phase(p.at(r, c + 1) - p.at(r, c)) : 0.0;
            double gx0 = (c > 0) ? wrap_phase(p.at(r, c) - p.at(r, c - 1)) : 0.0;
            double gy1 = (r + 1 < R) ? wrap_phase(p.at(r + 1, c) - p.at(r, c)) : 0.0;
            double gy0 = (r > 0) ? wrap_phase(p.at(r, c) - p.at(r - 1, c)) : 0.0;
            rho.at(r, c) = (gx1 - gx0) + (gy1 - gy0);
        }
    }

    // Poisson solve in the DCT-II basis, which diagonalizes the Neumann
    // Laplacian with eigenvalues 2cos(pi i/R) + 2cos(pi j/C) - 4.
    RealField rho_hat = dct2(rho);
    for (std::size_t r = 0; r < R; ++r) {
        for (std::size_t c = 0; c < C; ++c) {
            if (r == 0 && c == 0) {
                rho_hat.at(0, 0) = 0.0;
                continue;
            }
            const double ev = 2.0 * std::cos(std::numbers::pi * static_cast<double>(r) /
                                             static_cast<double>(R)) +
                              2.0 * std::cos(std::numbers::pi * static_cast<double>(c) /
                                             static_cast<double>(C)) - 4.0;
            rho_hat.at(r, c) /= ev;
        }
    }
    RealField phi = idct2(rho_hat);

    // Constant: circular mean of (input - solution) aligns the surface with
    // the wrapped data; a final 2*pi multiple matches the input mean as
    // closely as an unwrapped surface can.
    double sin_acc = 0.0, cos_acc = 0.0;
    for (std::size_t i = 0; i < phi.data.size(); ++i) {
        const double d = p.data[i] - phi.data[i];
        sin_acc += std::sin(d);
        cos_acc += std::cos(d);
    }
    const double align = std::atan2(sin_acc, cos_acc);
    double mean_in = 0.0, mean_out = 0.0;
    for (std::size_t i = 0; i < phi.data.size(); ++i) {
        mean_in += p.data[i];
        mean_out += phi.data[i] + align;
    }
    const double two_pi = 2.0 * std::numbers::pi;
    const double turns = std::round((mean_in - mean_out) /
                                    (two_pi * static_cast<double>(phi.data.size())));
    const double shift = align + two_pi * turns;
    for (double& v : phi.data) v += shift;

    UnwrapResult result;
    result.phase = PhaseField{std::move(phi), false};
    result.residue_count = count_residues(p);
    return result;
}

/// Max normalized inner product over distinct column pairs.
inline double mutual_coherence(const DenseMatrix& A) {
    std::vector<double> norms(A.cols);
    for (std::size_t j = 0; j < A.cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < A.rows; ++i) s += std::norm(A.at(i, j));
        norms[j] = std::sqrt(s);
        if (norms[j] == 0.0)
            throw numeric_error("mutual_coherence: zero column " + std::to_string(j));
    }
    double mu = 0.0;
    for (std::size_t j = 0; j < A.cols; ++j) {
        for (std::size_t k = j + 1; k < A.cols; ++k) {
            cplx dot = 0.0;
            for (std::size_t i = 0; i < A.rows; ++i)
                dot += std::conj(A.at(i, j)) * A.at(i, k);
            mu = std::max(mu, std::abs(dot) / (norms[j] * norms[k]));
        }
    }
    return mu;
}

/// Windowed sample coherence |sum conj(z1) z2| / sqrt(sum |z1|^2 sum |z2|^2).
/// Window is a (2h+1)-square boxcar clipped at the image boundary.
inline RealField coherence_map(const ComplexImage& z1, const ComplexImage& z2,
                               std::size_t window) {
    require_same_dims(z1, z2, "coherence_map");
    if (window < 1 || window % 2 == 0)
        throw config_error("coherence_map: window must be odd and >= 1");
    const std::ptrdiff_t h = static_cast<std::ptrdiff_t>(window / 2);
    const std::ptrdiff_t R = static_cast<std::ptrdiff_t>(z1.rows);
    const std::ptrdiff_t C = static_cast<std::ptrdiff_t>(z1.cols);
    RealField out(z1.rows, z1.cols);
    for (std::ptrdiff_t r = 0; r < R; ++r) {
        for (std::ptrdiff_t c = 0; c < C; ++c) {
            cplx cross = 0.0;
            double p1 = 0.0, p2 = 0.0;
            for (std::ptrdiff_t dr = -h; dr <= h; ++dr) {
                for (std::ptrdiff_t dc = -h; dc <= h; ++dc) {
                    const std::ptrdiff_t rr = r + dr, cc = c + dc;
                    if (rr < 0 || rr >= R || cc < 0 || cc >= C) continue;
                    const cplx a = z1.data[static_cast<std::size_t>(rr * C + cc)];
                    const cplx b = z2.data[static_cast<std::size_t>(rr * C + cc)];
                    cross += std::conj(a) * b;
                    p1 += std::norm(a);
                    p2 += std::norm(b);
                }
            }
            if (p1 == 0.0 || p2 == 0.0)
                throw numeric_error("coherence_map: zero-power window");
            out.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) =
                std::abs(cross) / std::sqrt(p1 * p2);
        }
    }
    return out;
}

} // namespace drifg

#endif
