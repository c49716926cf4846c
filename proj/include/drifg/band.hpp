#ifndef DRIFG_BAND_HPP
#define DRIFG_BAND_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "drifg/errors.hpp"

namespace drifg {

/// Common-band lowpass filter description: the exact DFT bin indices retained
/// in each dimension, ordered to match the reduced-size inverse DFT layout.
struct BandSelection {
    std::vector<std::size_t> row_bins; // size M, indices into 0..N-1
    std::vector<std::size_t> col_bins; // size K, indices into 0..L-1
    std::size_t full_rows = 0;         // N
    std::size_t full_cols = 0;         // L
    std::size_t reduced_rows = 0;      // M
    std::size_t reduced_cols = 0;      // K

    bool is_full() const {
        return reduced_rows == full_rows && reduced_cols == full_cols;
    }
};

namespace detail {

// Reduced-spectrum bin m of an M-point DFT carries frequency m for
// m <= M/2 and m - M otherwise; for even M the edge bin is the positive
// frequency +M/2. Mapping that frequency into the N-point spectrum gives the
// retained full-size bin, and simultaneously the scatter/gather layout.
inline std::vector<std::size_t> lowpass_bins(std::size_t full, std::size_t reduced) {
    std::vector<std::size_t> bins(reduced);
    for (std::size_t m = 0; m < reduced; ++m) {
        long f = (m <= reduced / 2) ? static_cast<long>(m)
                                    : static_cast<long>(m) - static_cast<long>(reduced);
        long idx = f >= 0 ? f : f + static_cast<long>(full);
        bins[m] = static_cast<std::size_t>(idx);
    }
    return bins;
}

} // namespace detail

/// Build the (alpha, beta) band selection. alpha = an/ad, beta = bn/bd must lie
/// in (0, 1] and yield integer reduced sizes M = N*alpha, K = L*beta.
inline BandSelection make_band_selection(std::size_t full_rows, std::size_t full_cols,
                                         std::size_t alpha_num, std::size_t alpha_den,
                                         std::size_t beta_num, std::size_t beta_den) {
    if (full_rows == 0 || full_cols == 0)
        throw dimension_error("make_band_selection: zero-sized grid");
    if (alpha_num == 0 || alpha_den == 0 || alpha_num > alpha_den)
        throw config_error("make_band_selection: alpha must be a rational in (0, 1]");
    if (beta_num == 0 || beta_den == 0 || beta_num > beta_den)
        throw config_error("make_band_selection: beta must be a rational in (0, 1]");
    if ((full_rows * alpha_num) % alpha_den != 0)
        throw config_error("make_band_selection: N*alpha = " + std::to_string(full_rows) +
                           "*" + std::to_string(alpha_num) + "/" + std::to_string(alpha_den) +
                           " is not an integer");
    if ((full_cols * beta_num) % beta_den != 0)
        throw config_error("make_band_selection: L*beta = " + std::to_string(full_cols) +
                           "*" + std::to_string(beta_num) + "/" + std::to_string(beta_den) +
                           " is not an integer");

    BandSelection band;
    band.full_rows = full_rows;
    band.full_cols = full_cols;
    band.reduced_rows = full_rows * alpha_num / alpha_den;
    band.reduced_cols = full_cols * beta_num / beta_den;
    band.row_bins = detail::lowpass_bins(full_rows, band.reduced_rows);
    band.col_bins = detail::lowpass_bins(full_cols, band.reduced_cols);
    return band;
}

} // namespace drifg

#endif
