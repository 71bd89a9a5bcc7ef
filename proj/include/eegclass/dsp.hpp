#pragma once

#include <complex>
#include <string>
#include <vector>

#include "eegclass/types.hpp"

namespace eegclass::dsp {

enum class Band { Delta, Theta, Alpha, Beta, Gamma, Broadband };

std::string band_name(Band band);
Band parse_band(const std::string& name);

struct BandSpec {
    Band band = Band::Broadband;
    double f_low = 0.5;
    double f_high = 50.0;

    void validate(double sample_rate_hz) const;  // 0 < f_low < f_high < fs/2
};

// Clinical defaults: delta 0.5-4, theta 4-8, alpha 8-13, beta 13-30, gamma 30-50.
std::vector<BandSpec> default_bands();
BandSpec default_broadband();

// One second-order section, denominator normalized to a0 = 1.
struct Biquad {
    double b0, b1, b2;
    double a1, a2;
};

struct FilterSpec {
    int order = 5;  // analog prototype order; the bandpass has 2*order poles
    BandSpec band;
    double sample_rate_hz = 128.0;
    std::vector<Biquad> sections;
    double gain = 1.0;  // applied once across the cascade
};

enum class FilterMode { Causal, ZeroPhase };

FilterMode parse_filter_mode(const std::string& name);
std::string to_string(FilterMode mode);

// Analog Butterworth prototype -> bandpass transform -> bilinear transform with
// edge prewarping, factored into second-order sections.
FilterSpec design_bandpass(int order, const BandSpec& band, double sample_rate_hz);

// Single-pass cascade response at f_hz. Zero-phase filtering realizes |H|^2.
std::complex<double> frequency_response(const FilterSpec& spec, double f_hz);

// Largest pole magnitude across sections; < 1 means stable.
double max_pole_magnitude(const FilterSpec& spec);

// Each channel (column) filtered independently. ZeroPhase runs forward then
// time-reversed over an odd-reflection extension sized to the slowest pole's
// decay (at least 3*(2*order+1) samples per end), and requires n > 3*order.
Vector apply_filter(const FilterSpec& spec, const Vector& x, FilterMode mode);
Matrix apply_filter(const FilterSpec& spec, const Matrix& x, FilterMode mode);

// One filtered copy per band, same shape as the input, ordered as `bands`.
std::vector<Matrix> decompose(const Matrix& x, double sample_rate_hz,
                              const std::vector<BandSpec>& bands,
                              int order = 5, FilterMode mode = FilterMode::ZeroPhase);

}  // namespace eegclass::dsp
