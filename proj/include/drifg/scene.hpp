#ifndef DRIFG_SCENE_HPP
#define DRIFG_SCENE_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include "drifg/band.hpp"
#include "drifg/errors.hpp"
#include "drifg/fft.hpp"
#include "drifg/image.hpp"
#include "drifg/rng.hpp"

namespace drifg {

enum class FringeFamily { zero, ramp, hills, cone };
enum class AmplitudeLaw { rayleigh, constant };

/// Analytic description of the elevation-phase surface and the flat-earth ramp.
/// All randomness (hill placement, speckle, amplitude) comes from the seed
/// passed to generate_scene.
struct FringeSpec {
    FringeFamily family = FringeFamily::hills;

    // ramp: elevation phase ramp_x*col + ramp_y*row (rad/pixel)
    double ramp_x = 0.0;
    double ramp_y = 0.0;

    // hills: sum of hill_count Gaussians, peak height ~ elev_scale (rad),
    // width hill_sigma_frac * min(rows, cols)
    double elev_scale = 6.0;
    int hill_count = 3;
    double hill_sigma_frac = 0.15;

    // cone: apex elev_scale at the center, linear falloff to 0 at the
    // inscribed radius
    // (shares elev_scale)

    // flat-earth linear ramp (rad/pixel)
    double flat_x = 0.0;
    double flat_y = 0.0;

    AmplitudeLaw amplitude_law = AmplitudeLaw::rayleigh;
    double rayleigh_sigma = 1.0;
    double amplitude_value = 1.0;
};

/// Ground truth for one synthetic acquisition pair.
struct SceneTruth {
    RealField elevation_phase; // rad
    RealField flat_phase;      // rad
    RealField speckle_phase;   // rad, (-pi, pi]
    RealField amplitude;       // >= 0
    std::size_t rows = 0;
    std::size_t cols = 0;
};

namespace detail {

inline void check_fringe_finite(const FringeSpec& spec) {
    for (double v : {spec.ramp_x, spec.ramp_y, spec.elev_scale, spec.hill_sigma_frac,
                     spec.flat_x, spec.flat_y, spec.rayleigh_sigma, spec.amplitude_value})
        if (!std::isfinite(v))
            throw numeric_error("generate_scene: non-finite fringe parameter");
}

} // namespace detail

inline SceneTruth generate_scene(std::size_t rows, std::size_t cols,
                                 const FringeSpec& spec, std::uint64_t seed) {
    if (rows == 0 || cols == 0)
        throw dimension_error("generate_scene: zero-sized dims");
    detail::check_fringe_finite(spec);

    SceneTruth s;
    s.rows = rows;
    s.cols = cols;
    s.elevation_phase = RealField(rows, cols);
    s.flat_phase = RealField(rows, cols);
    s.speckle_phase = RealField(rows, cols);
    s.amplitude = RealField(rows, cols, spec.amplitude_value);

    Rng rng(seed);

    // Hill parameters are drawn first so the speckle stream is unaffected by
    // the fringe family.
    struct Hill { double r, c, height, sigma; };
    std::vector<Hill> hills;
    if (spec.family == FringeFamily::hills) {
        if (spec.hill_count < 1)
            throw config_error("generate_scene: hill_count must be >= 1");
        const double base_sigma = spec.hill_sigma_frac *
            static_cast<double>(std::min(rows, cols));
        if (base_sigma <= 0.0)
            throw config_error("generate_scene: hill_sigma_frac must be > 0");
        for (int h = 0; h < spec.hill_count; ++h) {
            Hill hill;
            hill.r = rng.uniform(0.25, 0.75) * static_cast<double>(rows);
            hill.c = rng.uniform(0.25, 0.75) * static_cast<double>(cols);
            hill.height = spec.elev_scale * rng.uniform(0.5, 1.0);
            hill.sigma = base_sigma * rng.uniform(0.8, 1.2);
            hills.push_back(hill);
        }
    }

    const double cr = 0.5 * static_cast<double>(rows - 1);
    const double cc = 0.5 * static_cast<double>(cols - 1);
    const double rmax = 0.5 * static_cast<double>(std::min(rows, cols));

    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            double elev = 0.0;
            switch (spec.family) {
            case FringeFamily::zero:
                break;
            case FringeFamily::ramp:
                elev = spec.ramp_y * static_cast<double>(r) +
                       spec.ramp_x * static_cast<double>(c);
                break;
            case FringeFamily::hills:
                for (const auto& h : hills) {
                    double dr = static_cast<double>(r) - h.r;
                    double dc = static_cast<double>(c) - h.c;
                    elev += h.height *
                            std::exp(-0.5 * (dr * dr + dc * dc) / (h.sigma * h.sigma));
                }
                break;
            case FringeFamily::cone: {
                double dr = static_cast<double>(r) - cr;
                double dc = static_cast<double>(c) - cc;
                double rad = std::sqrt(dr * dr + dc * dc);
                elev = spec.elev_scale * std::max(0.0, 1.0 - rad / rmax);
                break;
            }
            }
            if (!std::isfinite(elev))
                throw numeric_error("generate_scene: non-finite elevation phase");
            s.elevation_phase.at(r, c) = elev;
            s.flat_phase.at(r, c) = spec.flat_y * static_cast<double>(r) +
                                    spec.flat_x * static_cast<double>(c);
        }
    }

    for (std::size_t i = 0; i < rows * cols; ++i) {
        s.speckle_phase.data[i] = rng.uniform_phase();
        if (spec.amplitude_law == AmplitudeLaw::rayleigh)
            s.amplitude.data[i] = rng.rayleigh(spec.rayleigh_sigma);
    }
    return s;
}

/// Form the fully-correlated image pair: z1 carries the speckle alone, z2 adds
/// the flat-earth and elevation phases on the same speckle and amplitude.
inline std::pair<ComplexImage, ComplexImage> form_image_pair(const SceneTruth& s) {
    ComplexImage z1(s.rows, s.cols), z2(s.rows, s.cols);
    for (std::size_t i = 0; i < s.rows * s.cols; ++i) {
        const double a = s.amplitude.data[i];
        const double p1 = s.speckle_phase.data[i];
        const double p2 = p1 + s.flat_phase.data[i] + s.elevation_phase.data[i];
        z1.data[i] = a * cplx(std::cos(p1), std::sin(p1));
        z2.data[i] = a * cplx(std::cos(p2), std::sin(p2));
    }
    return {z1, z2};
}

/// Ideal lowpass filtering followed by resampling: unitary DFT, keep the band
/// bins, inverse unitary DFT at the reduced size. Reference implementation of
/// acquisition at bandwidth (alpha*B_tau, beta*B_eta).
inline ComplexImage decimate(const ComplexImage& z, const BandSelection& band) {
    if (z.rows != band.full_rows || z.cols != band.full_cols)
        throw dimension_error("decimate: image dims do not match band selection");
    for (std::size_t b : band.row_bins)
        if (b >= z.rows) throw dimension_error("decimate: row bin out of range");
    for (std::size_t b : band.col_bins)
        if (b >= z.cols) throw dimension_error("decimate: col bin out of range");

    ComplexImage spectrum = fft2_unitary(z);
    ComplexImage reduced(band.reduced_rows, band.reduced_cols);
    for (std::size_t m = 0; m < band.reduced_rows; ++m)
        for (std::size_t k = 0; k < band.reduced_cols; ++k)
            reduced.at(m, k) = spectrum.at(band.row_bins[m], band.col_bins[k]);
    return ifft2_unitary(reduced);
}

/// Additive i.i.d. circular complex Gaussian noise at the requested SNR.
/// snr_db = +inf is the no-noise sentinel.
inline ComplexImage add_noise(const ComplexImage& z, double snr_db, std::uint64_t seed) {
    if (std::isnan(snr_db))
        throw numeric_error("add_noise: snr_db is NaN");
    if (std::isinf(snr_db) && snr_db > 0) return z;
    if (!std::isfinite(snr_db))
        throw numeric_error("add_noise: snr_db must be finite or +inf");

    double signal_power = 0.0;
    for (const cplx& v : z.data) signal_power += std::norm(v);
    signal_power /= static_cast<double>(z.size());
    const double noise_power = signal_power * std::pow(10.0, -snr_db / 10.0);
    const double sigma = std::sqrt(noise_power / 2.0);

    Rng rng(seed);
    ComplexImage out = z;
    for (cplx& v : out.data)
        v += cplx(sigma * rng.normal(), sigma * rng.normal());
    return out;
}

} // namespace drifg

#endif
