#ifndef DRIFG_RECOVERY_HPP
#define DRIFG_RECOVERY_HPP

#include <cmath>
#include <vector>

#include "drifg/errors.hpp"
#include "drifg/image.hpp"
#include "drifg/operators.hpp"
#include "drifg/wavelet.hpp"

namespace drifg {

/// Solver knobs for min ||z - Ax||_2^2 + lambda ||x||_1.
///
/// The data term carries no 1/2 factor, so its gradient is 2 A*(Ax - z) and
/// the Lipschitz constant is 2||A||^2 = 2. `step` is in units of that bound:
/// the implemented update is
///   x <- soft_threshold(y - step * A*(Ay - z), step * lambda / 2),
/// which is the classic FISTA iteration with step size step/2 on the
/// 2-Lipschitz gradient. step = 1 is the largest convergent choice.
struct RecoveryConfig {
    double lambda = 1e-4;
    int max_iters = 200;
    double step = 1.0;          // in (0, 1]
    double rel_tol = 0.0;       // 0 = run the full budget
    bool normalize_input = true;

    void validate() const {
        if (lambda < 0.0) throw config_error("RecoveryConfig: lambda must be >= 0");
        if (max_iters < 1) throw config_error("RecoveryConfig: max_iters must be >= 1");
        if (!(step > 0.0 && step <= 1.0))
            throw config_error("RecoveryConfig: step must be in (0, 1]");
        if (rel_tol < 0.0) throw config_error("RecoveryConfig: rel_tol must be >= 0");
    }
};

struct RecoveryReport {
    std::vector<double> objective_trace; // length iterations_run + 1
    int iterations_run = 0;
    double final_sparsity = 0.0; // fraction of coefficients with |c| > 1e-12
    double residual_norm = 0.0;
    double scale = 1.0;          // normalization factor applied to the input
};

struct RecoveryResult {
    ComplexImage u;
    SparseCoeffs x;
    RecoveryReport report;
};

/// Complex soft-thresholding by magnitude: c -> c * max(0, 1 - tau/|c|).
inline SparseCoeffs soft_threshold(const SparseCoeffs& x, double tau) {
    if (tau < 0.0) throw config_error("soft_threshold: tau must be >= 0");
    SparseCoeffs out = x;
    if (tau == 0.0) return out;
    for (cplx& c : out.coeffs.data) {
        const double mag = std::abs(c);
        c = (mag <= tau) ? cplx{} : c * (1.0 - tau / mag);
    }
    return out;
}

/// Objective ||z - Ax||_2^2 + lambda ||x||_1, exactly as optimized.
inline double objective(const SparseCoeffs& x, const ComplexImage& z2_low,
                        const ModulationField& mod, const BandSelection& band,
                        const WaveletConfig& wcfg, double lambda) {
    ComplexImage ax = apply_sensing(x, mod, band, wcfg);
    require_same_dims(ax, z2_low, "objective");
    double resid = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i)
        resid += std::norm(ax.data[i] - z2_low.data[i]);
    return resid + lambda * norm1(x.coeffs);
}

/// FISTA on the l1-regularized least-squares objective. x0 = 0, momentum
/// t_{k+1} = (1 + sqrt(1 + 4 t_k^2)) / 2. If normalize_input is set the data
/// is scaled to unit maximum magnitude before solving and the result is
/// rescaled after; lambda and the objective trace apply in normalized units.
inline RecoveryResult fista_recover(const ComplexImage& z2_low, const ModulationField& mod,
                                    const BandSelection& band, const WaveletConfig& wcfg,
                                    const RecoveryConfig& cfg) {
    cfg.validate();
    require_finite(z2_low, "fista_recover");
    if (z2_low.rows != band.reduced_rows || z2_low.cols != band.reduced_cols)
        throw dimension_error("fista_recover: data dims do not match reduced size");

    double scale = 1.0;
    ComplexImage z = z2_low;
    if (cfg.normalize_input) {
        const double m = max_abs(z);
        if (m > 0.0) {
            scale = m;
            for (cplx& v : z.data) v /= scale;
        }
    }

    const double tau = cfg.step * cfg.lambda / 2.0;

    SparseCoeffs x{ComplexImage(band.full_rows, band.full_cols)};
    SparseCoeffs y = x;
    double t = 1.0;

    RecoveryReport report;
    report.scale = scale;
    report.objective_trace.push_back(objective(x, z, mod, band, wcfg, cfg.lambda));

    for (int it = 0; it < cfg.max_iters; ++it) {
        // gradient step on y: y - step * A*(Ay - z)
        ComplexImage resid = apply_sensing(y, mod, band, wcfg);
        for (std::size_t i = 0; i < resid.size(); ++i) resid.data[i] -= z.data[i];
        SparseCoeffs grad = apply_sensing_adjoint(resid, mod, band, wcfg);
        SparseCoeffs next = y;
        for (std::size_t i = 0; i < next.coeffs.size(); ++i)
            next.coeffs.data[i] -= cfg.step * grad.coeffs.data[i];
        next = soft_threshold(next, tau);

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        double dx = 0.0, nx = 0.0;
        for (std::size_t i = 0; i < next.coeffs.size(); ++i) {
            const cplx d = next.coeffs.data[i] - x.coeffs.data[i];
            dx += std::norm(d);
            nx += std::norm(x.coeffs.data[i]);
            y.coeffs.data[i] = next.coeffs.data[i] + ((t - 1.0) / t_next) * d;
        }
        x = next;
        t = t_next;
        report.iterations_run = it + 1;
        report.objective_trace.push_back(objective(x, z, mod, band, wcfg, cfg.lambda));

        if (cfg.rel_tol > 0.0 && nx > 0.0 && std::sqrt(dx) <= cfg.rel_tol * std::sqrt(nx))
            break;
    }

    RecoveryResult result;
    result.u = wavelet_synthesis(x, wcfg);
    ComplexImage ax = apply_sensing(x, mod, band, wcfg);
    double resid = 0.0;
    for (std::size_t i = 0; i < ax.size(); ++i)
        resid += std::norm(ax.data[i] - z.data[i]);
    report.residual_norm = std::sqrt(resid);

    std::size_t nonzero = 0;
    for (const cplx& c : x.coeffs.data)
        if (std::abs(c) > 1e-12) ++nonzero;
    report.final_sparsity = static_cast<double>(nonzero) /
                            static_cast<double>(x.coeffs.size());

    if (scale != 1.0) {
        for (cplx& v : result.u.data) v *= scale;
        for (cplx& v : x.coeffs.data) v *= scale;
    }
    result.x = std::move(x);
    result.report = std::move(report);
    return result;
}

} // namespace drifg

#endif
