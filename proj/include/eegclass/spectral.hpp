#pragma once

#include <string>
#include <vector>

#include "eegclass/dsp.hpp"
#include "eegclass/types.hpp"

namespace eegclass::spectral {

enum class Window { Rectangular, Hann };

Window parse_window(const std::string& name);
std::string to_string(Window window);

struct WelchConfig {
    int segment_len = 256;    // 2 s at 128 Hz -> 0.5 Hz resolution
    int segment_overlap = 0;  // Bartlett averaging by default
    Window window = Window::Rectangular;
    double sample_rate_hz = 128.0;

    void validate() const;
    int step() const { return segment_len - segment_overlap; }
};

// One-sided PSD, units signal^2 per Hz. freqs run 0 .. fs/2 at fs/segment_len
// spacing; interior bins carry the doubled two-sided power.
struct PsdEstimate {
    std::vector<double> freqs;
    std::vector<double> values;

    double bin_width_hz() const { return freqs.size() > 1 ? freqs[1] - freqs[0] : 0.0; }
};

// Averaged periodogram: mean over segments of |DFT|^2 / (N_w * F_s), window
// applied per segment with power normalization by the window's mean square.
PsdEstimate welch_psd(const Vector& x, const WelchConfig& cfg);

// Indices of bins whose center lies in [f_low, f_high], both edges inclusive.
std::vector<int> band_bins(const PsdEstimate& psd, const dsp::BandSpec& band);

// Sum of PSD values over the band's bins (bin-sum convention, no df scaling).
// Throws ValidationError when the band contains no bins at this resolution.
double band_power(const PsdEstimate& psd, const dsp::BandSpec& band);

// Shannon entropy, in nats, of the band-normalized PSD:
//   p(f) = PSD(f) / sum_band PSD,   H = -sum p(f) * log(p(f) + epsilon).
// Requires >= 2 bins and positive band power.
double band_entropy(const PsdEstimate& psd, const dsp::BandSpec& band,
                    double epsilon = 1e-8);

}  // namespace eegclass::spectral
