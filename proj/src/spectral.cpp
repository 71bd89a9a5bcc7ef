#include "eegclass/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace eegclass::spectral {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Iterative radix-2 Cooley-Tukey, forward transform in place.
void fft_radix2(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = -2.0 * kPi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(angle), std::sin(angle));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

void dft_naive(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            const double angle = -2.0 * kPi * static_cast<double>(k * t % n) /
                                 static_cast<double>(n);
            acc += a[t] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    a = std::move(out);
}

std::vector<double> make_window(Window window, int n) {
    std::vector<double> w(static_cast<std::size_t>(n), 1.0);
    if (window == Window::Hann) {
        // Periodic form, the usual choice for spectral averaging.
        for (int i = 0; i < n; ++i) {
            w[static_cast<std::size_t>(i)] =
                0.5 * (1.0 - std::cos(2.0 * kPi * i / static_cast<double>(n)));
        }
    }
    return w;
}

}  // namespace

Window parse_window(const std::string& name) {
    if (name == "rectangular") return Window::Rectangular;
    if (name == "hann") return Window::Hann;
    throw ValidationError("unknown window: '" + name + "' (rectangular or hann)");
}

std::string to_string(Window window) {
    return window == Window::Hann ? "hann" : "rectangular";
}

void WelchConfig::validate() const {
    if (segment_len < 8) throw ValidationError("welch segment_len must be >= 8");
    if (segment_overlap < 0 || segment_overlap >= segment_len) {
        throw ValidationError("welch overlap must be in [0, segment_len)");
    }
    if (sample_rate_hz <= 0.0) throw ValidationError("sample rate must be positive");
}

PsdEstimate welch_psd(const Vector& x, const WelchConfig& cfg) {
    cfg.validate();
    const long n = x.size();
    if (n < cfg.segment_len) {
        throw ValidationError("welch_psd: signal of " + std::to_string(n) +
                              " samples is shorter than one segment (" +
                              std::to_string(cfg.segment_len) + ")");
    }
    if (!x.allFinite()) throw ValidationError("welch_psd: non-finite input");

    const int nw = cfg.segment_len;
    const long step = cfg.step();
    const long n_segments = (n - nw) / step + 1;
    const std::vector<double> window = make_window(cfg.window, nw);
    double window_ms = 0.0;  // mean square, power normalization
    for (double w : window) window_ms += w * w;
    window_ms /= static_cast<double>(nw);
    if (window_ms == 0.0) throw ValidationError("welch_psd: all-zero window");

    const int n_bins = nw / 2 + 1;  // for odd nw this drops the Nyquist bin
    std::vector<double> psd(static_cast<std::size_t>(n_bins), 0.0);
    std::vector<std::complex<double>> buf(static_cast<std::size_t>(nw));

    for (long s = 0; s < n_segments; ++s) {
        const long offset = s * step;
        for (int i = 0; i < nw; ++i) {
            buf[static_cast<std::size_t>(i)] =
                x[offset + i] * window[static_cast<std::size_t>(i)];
        }
        if (is_power_of_two(nw)) {
            fft_radix2(buf);
        } else {
            dft_naive(buf);
        }
        for (int k = 0; k < n_bins; ++k) {
            psd[static_cast<std::size_t>(k)] += std::norm(buf[static_cast<std::size_t>(k)]);
        }
    }

    const double norm = 1.0 / (static_cast<double>(n_segments) * nw *
                               cfg.sample_rate_hz * window_ms);
    PsdEstimate est;
    est.freqs.resize(static_cast<std::size_t>(n_bins));
    est.values.resize(static_cast<std::size_t>(n_bins));
    const bool has_nyquist = (nw % 2 == 0);
    for (int k = 0; k < n_bins; ++k) {
        est.freqs[static_cast<std::size_t>(k)] =
            static_cast<double>(k) * cfg.sample_rate_hz / nw;
        double v = psd[static_cast<std::size_t>(k)] * norm;
        const bool interior = k != 0 && !(has_nyquist && k == n_bins - 1);
        if (interior) v *= 2.0;  // one-sided
        est.values[static_cast<std::size_t>(k)] = v;
    }
    return est;
}

std::vector<int> band_bins(const PsdEstimate& psd, const dsp::BandSpec& band) {
    std::vector<int> bins;
    for (std::size_t i = 0; i < psd.freqs.size(); ++i) {
        if (psd.freqs[i] >= band.f_low && psd.freqs[i] <= band.f_high) {
            bins.push_back(static_cast<int>(i));
        }
    }
    return bins;
}

double band_power(const PsdEstimate& psd, const dsp::BandSpec& band) {
    const auto bins = band_bins(psd, band);
    if (bins.empty()) {
        throw ValidationError(dsp::band_name(band.band) + " [" + std::to_string(band.f_low) +
                              ", " + std::to_string(band.f_high) +
                              "] Hz: band has no bins at this resolution");
    }
    double total = 0.0;
    for (int b : bins) total += psd.values[static_cast<std::size_t>(b)];
    return total;
}

double band_entropy(const PsdEstimate& psd, const dsp::BandSpec& band, double epsilon) {
    const auto bins = band_bins(psd, band);
    if (bins.size() < 2) {
        throw ValidationError(dsp::band_name(band.band) +
                              ": band entropy needs at least 2 bins, got " +
                              std::to_string(bins.size()));
    }
    double total = 0.0;
    for (int b : bins) total += psd.values[static_cast<std::size_t>(b)];
    if (!(total > 0.0)) {
        throw ValidationError(dsp::band_name(band.band) +
                              ": band power is zero, entropy undefined");
    }
    double h = 0.0;
    for (int b : bins) {
        const double p = psd.values[static_cast<std::size_t>(b)] / total;
        if (p > 0.0) h -= p * std::log(p + epsilon);
    }
    return h;
}

}  // namespace eegclass::spectral
