#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace srsense {

namespace {

bool is_pow2(std::size_t n) {
    return n != 0 && (n & (n - 1)) == 0;
}

// In-place iterative radix-2 Cooley-Tukey, decimation in time.
void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

std::size_t nearest_bin(const Periodogram& p, double f_target) {
    return static_cast<std::size_t>(std::llround(f_target / p.bin_width_hz));
}

}  // namespace

std::vector<std::complex<double>> dft_block(std::span<const double> block) {
    const std::size_t n = block.size();
    if (!is_pow2(n) || n < 8)
        throw std::invalid_argument("dft_block: length must be a power of two, >= 8");
    std::vector<std::complex<double>> a(n);
    for (std::size_t i = 0; i < n; ++i)
        a[i] = std::complex<double>(block[i], 0.0);
    fft_inplace(a);
    return a;
}

Periodogram periodogram(std::span<const double> block, std::size_t nfft, double fs) {
    if (block.size() != nfft)
        throw std::invalid_argument("periodogram: block length must equal nfft");
    if (fs <= 0.0)
        throw std::invalid_argument("periodogram: sample rate must be positive");
    const auto bins = dft_block(block);
    const std::size_t half = nfft / 2;
    Periodogram p;
    p.nfft = nfft;
    p.bin_width_hz = fs / static_cast<double>(nfft);
    p.power.resize(half + 1);
    const double scale = 1.0 / (static_cast<double>(nfft) * static_cast<double>(nfft));
    for (std::size_t t = 0; t <= half; ++t) {
        const double two_sided = std::norm(bins[t]) * scale;
        p.power[t] = (t == 0 || t == half) ? two_sided : 2.0 * two_sided;
    }
    return p;
}

PsdEstimate welch_psd(const SampleStream& stream, std::size_t nfft,
                      double overlap_fraction) {
    if (stream.size() < nfft)
        throw std::invalid_argument("welch_psd: stream shorter than nfft");
    if (overlap_fraction < 0.0 || overlap_fraction >= 1.0)
        throw std::invalid_argument("welch_psd: overlap fraction must be in [0,1)");

    std::size_t step = nfft - static_cast<std::size_t>(std::lround(overlap_fraction * nfft));
    if (step == 0)
        step = 1;

    PsdEstimate est;
    est.nfft = nfft;
    est.bin_width_hz = stream.sample_rate_hz / static_cast<double>(nfft);
    est.power.assign(nfft / 2 + 1, 0.0);
    est.segments = 0;
    for (std::size_t off = 0; off + nfft <= stream.size(); off += step) {
        const Periodogram p = periodogram(
            std::span<const double>(stream.samples.data() + off, nfft), nfft,
            stream.sample_rate_hz);
        for (std::size_t t = 0; t < est.power.size(); ++t)
            est.power[t] += p.power[t];
        ++est.segments;
    }
    for (auto& v : est.power)
        v /= static_cast<double>(est.segments);
    return est;
}

PeakResult peak_power_near(const Periodogram& p, double f_target, std::size_t tol_bins) {
    const double nyquist = p.bin_width_hz * static_cast<double>(p.nfft) / 2.0;
    if (f_target < 0.0 || f_target > nyquist)
        throw std::invalid_argument("peak_power_near: target frequency out of range");
    const std::size_t center = nearest_bin(p, f_target);
    const std::size_t lo = center > tol_bins ? center - tol_bins : 0;
    const std::size_t hi = std::min(center + tol_bins, p.power.size() - 1);
    PeakResult best{p.power[lo], lo};
    for (std::size_t t = lo + 1; t <= hi; ++t) {
        if (p.power[t] > best.power)
            best = PeakResult{p.power[t], t};
    }
    return best;
}

double narrowband_ratio(const Periodogram& p, double f_target,
                        std::size_t signal_halfwidth_bins, std::size_t guard_bins) {
    constexpr std::size_t kFloorBinsPerSide = 8;
    const std::size_t nbins = p.power.size();
    const std::size_t center = nearest_bin(p, f_target);
    if (center >= nbins)
        throw std::invalid_argument("narrowband_ratio: target frequency out of range");
    const std::size_t sig_lo =
        center > signal_halfwidth_bins ? center - signal_halfwidth_bins : 0;
    const std::size_t sig_hi = std::min(center + signal_halfwidth_bins, nbins - 1);
    const std::size_t excl_lo = sig_lo > guard_bins ? sig_lo - guard_bins : 0;
    const std::size_t excl_hi = std::min(sig_hi + guard_bins, nbins - 1);

    std::vector<double> floor_bins;
    floor_bins.reserve(2 * kFloorBinsPerSide);
    for (std::size_t k = 1; k <= kFloorBinsPerSide; ++k) {
        if (excl_lo >= k + 1)  // never include DC
            floor_bins.push_back(p.power[excl_lo - k]);
        if (excl_hi + k < nbins)
            floor_bins.push_back(p.power[excl_hi + k]);
    }
    if (floor_bins.size() < 8)
        throw std::invalid_argument("narrowband_ratio: too few bins outside the signal region");

    const std::size_t mid = floor_bins.size() / 2;
    std::nth_element(floor_bins.begin(), floor_bins.begin() + mid, floor_bins.end());
    double floor = floor_bins[mid];
    if (floor_bins.size() % 2 == 0) {
        const double below = *std::max_element(floor_bins.begin(), floor_bins.begin() + mid);
        floor = 0.5 * (floor + below);
    }

    double signal_sum = 0.0;
    for (std::size_t t = sig_lo; t <= sig_hi; ++t)
        signal_sum += p.power[t];
    const double width = static_cast<double>(sig_hi - sig_lo + 1);

    if (floor <= 0.0)
        return signal_sum > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return signal_sum / (floor * width);
}

double snr_at_frequency(const Periodogram& p, double f_target,
                        std::size_t signal_halfwidth_bins, std::size_t guard_bins) {
    const double ratio = narrowband_ratio(p, f_target, signal_halfwidth_bins, guard_bins);
    if (std::isinf(ratio))
        return std::numeric_limits<double>::infinity();
    if (ratio <= 0.0)
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(ratio);
}

std::string to_csv(const Periodogram& p) {
    std::ostringstream out;
    out << "freq_hz,power\n";
    char buf[56];
    for (std::size_t t = 0; t < p.power.size(); ++t) {
        std::snprintf(buf, sizeof(buf), "%.10g,%.10g\n",
                      static_cast<double>(t) * p.bin_width_hz, p.power[t]);
        out << buf;
    }
    return out.str();
}

}  // namespace srsense
