#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "signal.hpp"

namespace srsense {

// One-sided power spectrum of a single FFT block. power[t] is the mean-square
// contribution of bin t: the two-sided coefficient |X[t]|^2 / nfft^2 with
// non-DC, non-Nyquist bins doubled, so that sum(power) equals the mean square
// of the block (Parseval).
struct Periodogram {
    std::vector<double> power;  // nfft/2 + 1 entries
    double bin_width_hz = 0.0;
    std::size_t nfft = 0;
};

// Average of per-segment periodograms (rectangular window).
struct PsdEstimate : Periodogram {
    std::size_t segments = 0;
};

// Unnormalized forward DFT via iterative radix-2 FFT. Block length must be a
// power of two, >= 8. Returns all nfft complex bins.
std::vector<std::complex<double>> dft_block(std::span<const double> block);

Periodogram periodogram(std::span<const double> block, std::size_t nfft, double fs);

PsdEstimate welch_psd(const SampleStream& stream, std::size_t nfft,
                      double overlap_fraction);

struct PeakResult {
    double power = 0.0;
    std::size_t bin = 0;
};

// Maximum power over bins within +/- tol_bins of the bin nearest f_target.
PeakResult peak_power_near(const Periodogram& p, double f_target, std::size_t tol_bins);

// Narrowband power ratio around f_target: summed power in the signal region
// (bins within +/- signal_halfwidth_bins of the target bin) over the local
// noise-floor expectation. The floor is the median of up to 8 bins per side
// just outside the guard region, DC excluded, so it tracks the spectrum near
// the line rather than the whole axis. Pure noise gives a ratio near 1.
double narrowband_ratio(const Periodogram& p, double f_target,
                        std::size_t signal_halfwidth_bins, std::size_t guard_bins);

// 10*log10(narrowband_ratio). Returns +inf when the floor is zero under a
// nonzero signal region.
double snr_at_frequency(const Periodogram& p, double f_target,
                        std::size_t signal_halfwidth_bins, std::size_t guard_bins);

// Debug dump, one `freq_hz,power` row per bin.
std::string to_csv(const Periodogram& p);

}  // namespace srsense
