#include "eegclass/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eegclass::dsp {

namespace {

using Complex = std::complex<double>;

constexpr double kPi = std::numbers::pi;

// Bilinear transform of one analog root, fs2 = 2 * sample rate.
Complex bilinear(Complex s, double fs2) { return (fs2 + s) / (fs2 - s); }

struct SectionBuild {
    double a1 = 0.0;
    double a2 = 0.0;
    double pole_radius = 0.0;
};

SectionBuild section_from_pair(Complex pole) {
    SectionBuild s;
    s.a1 = -2.0 * pole.real();
    s.a2 = std::norm(pole);
    s.pole_radius = std::abs(pole);
    return s;
}

SectionBuild section_from_reals(double r1, double r2) {
    SectionBuild s;
    s.a1 = -(r1 + r2);
    s.a2 = r1 * r2;
    s.pole_radius = std::max(std::abs(r1), std::abs(r2));
    return s;
}

}  // namespace

std::string band_name(Band band) {
    switch (band) {
        case Band::Delta: return "delta";
        case Band::Theta: return "theta";
        case Band::Alpha: return "alpha";
        case Band::Beta: return "beta";
        case Band::Gamma: return "gamma";
        case Band::Broadband: return "broadband";
    }
    return "?";
}

Band parse_band(const std::string& name) {
    for (Band b : {Band::Delta, Band::Theta, Band::Alpha, Band::Beta, Band::Gamma,
                   Band::Broadband}) {
        if (band_name(b) == name) return b;
    }
    throw ValidationError("unknown band name: '" + name + "'");
}

void BandSpec::validate(double sample_rate_hz) const {
    if (sample_rate_hz <= 0.0) throw ValidationError("sample rate must be positive");
    const double nyquist = sample_rate_hz / 2.0;
    if (!(f_low > 0.0)) {
        throw ValidationError(band_name(band) + ": f_low must be > 0 Hz");
    }
    if (!(f_low < f_high)) {
        throw ValidationError(band_name(band) + ": f_low must be below f_high");
    }
    if (!(f_high < nyquist)) {
        throw ValidationError(band_name(band) + ": f_high " + std::to_string(f_high) +
                              " Hz must be below the Nyquist frequency " +
                              std::to_string(nyquist) + " Hz");
    }
}

std::vector<BandSpec> default_bands() {
    return {{Band::Delta, 0.5, 4.0},
            {Band::Theta, 4.0, 8.0},
            {Band::Alpha, 8.0, 13.0},
            {Band::Beta, 13.0, 30.0},
            {Band::Gamma, 30.0, 50.0}};
}

BandSpec default_broadband() { return {Band::Broadband, 0.5, 50.0}; }

FilterMode parse_filter_mode(const std::string& name) {
    if (name == "causal") return FilterMode::Causal;
    if (name == "zero_phase") return FilterMode::ZeroPhase;
    throw ValidationError("unknown filter mode: '" + name + "' (causal or zero_phase)");
}

std::string to_string(FilterMode mode) {
    return mode == FilterMode::Causal ? "causal" : "zero_phase";
}

FilterSpec design_bandpass(int order, const BandSpec& band, double sample_rate_hz) {
    if (order < 1 || order > 16) {
        throw ValidationError("filter order must be in [1, 16], got " + std::to_string(order));
    }
    band.validate(sample_rate_hz);

    // Prewarp the edges so the bilinear transform lands them exactly.
    const double fs2 = 2.0 * sample_rate_hz;
    const double w1 = fs2 * std::tan(kPi * band.f_low / sample_rate_hz);
    const double w2 = fs2 * std::tan(kPi * band.f_high / sample_rate_hz);
    const double wo = std::sqrt(w1 * w2);
    const double bw = w2 - w1;

    // Analog lowpass prototype -> bandpass: each prototype pole p yields
    // p*bw/2 +- sqrt((p*bw/2)^2 - wo^2). Conjugates are tracked implicitly so
    // coefficient arithmetic stays real.
    std::vector<SectionBuild> sections;
    sections.reserve(static_cast<std::size_t>(order));
    double denom_acc = 1.0;  // prod over all analog poles of (fs2 - pole), real by symmetry

    const int n_pairs = order / 2;
    for (int k = 1; k <= n_pairs; ++k) {
        const double phi = kPi * (2.0 * k + order - 1.0) / (2.0 * order);
        const Complex proto(std::cos(phi), std::sin(phi));  // imag > 0 representative
        const Complex scaled = proto * (bw / 2.0);
        const Complex disc = std::sqrt(scaled * scaled - wo * wo);
        for (const Complex s : {scaled + disc, scaled - disc}) {
            const Complex d = bilinear(s, fs2);
            sections.push_back(section_from_pair(d));
            denom_acc *= std::norm(fs2 - s);  // representative and its conjugate
        }
    }
    if (order % 2 == 1) {
        const double scaled = -bw / 2.0;  // prototype pole at -1
        const double disc2 = scaled * scaled - wo * wo;
        if (disc2 >= 0.0) {
            const double root = std::sqrt(disc2);
            const double s1 = scaled + root;
            const double s2 = scaled - root;
            const double d1 = bilinear(Complex(s1, 0.0), fs2).real();
            const double d2 = bilinear(Complex(s2, 0.0), fs2).real();
            sections.push_back(section_from_reals(d1, d2));
            denom_acc *= (fs2 - s1) * (fs2 - s2);
        } else {
            const Complex s(scaled, std::sqrt(-disc2));
            sections.push_back(section_from_pair(bilinear(s, fs2)));
            denom_acc *= std::norm(fs2 - s);
        }
    }

    // Poles farthest from the unit circle run first in the cascade.
    std::stable_sort(sections.begin(), sections.end(),
                     [](const SectionBuild& a, const SectionBuild& b) {
                         return a.pole_radius < b.pole_radius;
                     });

    // Gain: prototype 1, lp2bp multiplies by bw^order, bilinear contributes
    // fs2^order from the analog zeros at the origin over the pole products.
    const double gain =
        std::pow(bw, order) * std::pow(fs2, order) / denom_acc;

    FilterSpec spec;
    spec.order = order;
    spec.band = band;
    spec.sample_rate_hz = sample_rate_hz;
    spec.gain = gain;
    spec.sections.reserve(sections.size());
    for (const auto& s : sections) {
        // The n zeros at z=1 and n at z=-1 pair off as (z-1)(z+1) per section.
        spec.sections.push_back(Biquad{1.0, 0.0, -1.0, s.a1, s.a2});
    }
    return spec;
}

std::complex<double> frequency_response(const FilterSpec& spec, double f_hz) {
    const double w = 2.0 * kPi * f_hz / spec.sample_rate_hz;
    const Complex z1 = std::polar(1.0, -w);   // e^{-jw}
    const Complex z2 = z1 * z1;
    Complex h(spec.gain, 0.0);
    for (const auto& s : spec.sections) {
        h *= (s.b0 + s.b1 * z1 + s.b2 * z2) / (1.0 + s.a1 * z1 + s.a2 * z2);
    }
    return h;
}

double max_pole_magnitude(const FilterSpec& spec) {
    double worst = 0.0;
    for (const auto& s : spec.sections) {
        const double disc = s.a1 * s.a1 - 4.0 * s.a2;
        if (disc < 0.0) {
            worst = std::max(worst, std::sqrt(s.a2));
        } else {
            const double root = std::sqrt(disc);
            worst = std::max({worst, std::abs((-s.a1 + root) / 2.0),
                              std::abs((-s.a1 - root) / 2.0)});
        }
    }
    return worst;
}

namespace {

// One causal pass of the cascade (direct form II transposed), gain included.
void filter_pass(const FilterSpec& spec, Vector& x) {
    for (const auto& s : spec.sections) {
        double z1 = 0.0, z2 = 0.0;
        for (long i = 0; i < x.size(); ++i) {
            const double in = x[i];
            const double out = s.b0 * in + z1;
            z1 = s.b1 * in - s.a1 * out + z2;
            z2 = s.b2 * in - s.a2 * out;
            x[i] = out;
        }
    }
    x *= spec.gain;
}

// Odd reflection about each endpoint: continuous in value and slope, so the
// junction injects no step for the passband to ring on.
Vector pad_reflect(const Vector& x, long pad) {
    const long n = x.size();
    Vector ext(n + 2 * pad);
    for (long j = 0; j < pad; ++j) ext[j] = 2.0 * x[0] - x[pad - j];
    ext.segment(pad, n) = x;
    for (long j = 0; j < pad; ++j) ext[pad + n + j] = 2.0 * x[n - 1] - x[n - 2 - j];
    return ext;
}

Vector zero_phase_pass(const FilterSpec& spec, const Vector& x) {
    const long n = x.size();
    // Extension covers nine time constants of the slowest pole; low band
    // edges put poles near the unit circle, where the classic 3*(2*order+1)
    // floor is far too short.
    const double rho = std::min(max_pole_magnitude(spec), 1.0 - 1e-6);
    const long decay = static_cast<long>(std::ceil(9.0 / (1.0 - rho)));
    const long pad = std::min(std::max(3L * (2L * spec.order + 1L), decay), n - 1);

    Vector fwd = pad_reflect(x, pad);
    filter_pass(spec, fwd);
    // Re-extend from the filtered samples: the forward pass's own junction
    // ringing stays in the discarded extension instead of riding the reverse
    // pass back into the signal.
    Vector rev = pad_reflect(Vector(fwd.segment(pad, n)), pad);
    rev.reverseInPlace();
    filter_pass(spec, rev);
    rev.reverseInPlace();
    return rev.segment(pad, n);
}

}  // namespace

Vector apply_filter(const FilterSpec& spec, const Vector& x, FilterMode mode) {
    if (x.size() == 0) throw ValidationError("apply_filter: empty input");
    if (!x.allFinite()) throw ValidationError("apply_filter: non-finite input");
    if (mode == FilterMode::ZeroPhase && x.size() <= 3L * spec.order) {
        throw ValidationError("apply_filter: input of " + std::to_string(x.size()) +
                              " samples is too short for zero-phase filtering (needs > " +
                              std::to_string(3L * spec.order) + ")");
    }
    if (mode == FilterMode::Causal) {
        Vector y = x;
        filter_pass(spec, y);
        return y;
    }
    return zero_phase_pass(spec, x);
}

Matrix apply_filter(const FilterSpec& spec, const Matrix& x, FilterMode mode) {
    if (x.rows() == 0 || x.cols() == 0) throw ValidationError("apply_filter: empty input");
    Matrix y(x.rows(), x.cols());
    for (long c = 0; c < x.cols(); ++c) {
        y.col(c) = apply_filter(spec, Vector(x.col(c)), mode);
    }
    return y;
}

std::vector<Matrix> decompose(const Matrix& x, double sample_rate_hz,
                              const std::vector<BandSpec>& bands,
                              int order, FilterMode mode) {
    std::vector<Matrix> out;
    out.reserve(bands.size());
    for (const auto& band : bands) {
        const FilterSpec spec = design_bandpass(order, band, sample_rate_hz);
        out.push_back(apply_filter(spec, x, mode));
    }
    return out;
}

}  // namespace eegclass::dsp
