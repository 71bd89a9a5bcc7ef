#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "eegclass/dsp.hpp"
#include "eegclass/ingest.hpp"
#include "eegclass/model.hpp"
#include "eegclass/spectral.hpp"
#include "eegclass/types.hpp"

namespace eegclass::synth {

// Per-class band activity: target RMS per band, on every channel.
using BandRmsProfile = std::map<dsp::Band, double>;

struct SynthSpec {
    int subjects_per_class = 20;
    long n_samples = 19200;  // 150 s at 128 Hz -> 29 epochs
    double sample_rate_hz = 128.0;
    std::vector<dsp::BandSpec> bands = dsp::default_bands();
    BandRmsProfile adhd_rms;     // defaults set by default_synth_spec()
    BandRmsProfile control_rms;
    double noise_rms = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
};

// Profiles whose theta/beta ratio differs by `separation` between classes.
SynthSpec default_synth_spec(double separation = 1.5);

// Each channel is a sum of band-limited noise (seeded white noise run through
// the dsp band filters, rescaled to the class RMS) plus a white noise floor.
// Deterministic per seed, independent of generation order.
std::vector<ingest::Recording> generate(const SynthSpec& spec);

// Writes manifest.csv plus one CSV per subject in the ingest format.
void write_dataset(const std::filesystem::path& dir,
                   const std::vector<ingest::Recording>& recordings);

// ---- Brute-force oracles. Reference semantics only; each is implemented
// ---- independently of the main path it checks.

// Naive O(N^2) DFT periodogram with rectangular windows and zero overlap.
// Caps N_w at 1024.
spectral::PsdEstimate oracle_dft_psd(const Vector& x, int n_w, double sample_rate_hz);

struct QpResult {
    Vector alpha;
    double objective = 0.0;
    long iterations = 0;
};

// Dense projected-gradient ascent on the SVM dual (box + equality constraint,
// projection by bisection on the hyperplane multiplier). Caps at 100 points.
QpResult oracle_qp_svm(const Matrix& X, const std::vector<int>& y,
                       const model::KernelSpec& kernel, double C,
                       long max_iterations = 200000, double tol = 1e-12);

struct SplitResult {
    bool found = false;
    int feature = -1;
    double threshold = 0.0;
    double gain = 0.0;
};

// Exhaustive split search: every feature, every midpoint between distinct
// consecutive values, left/right sums recomputed by full scans.
SplitResult oracle_split_search(const Matrix& rows, const Vector& gradients,
                                const Vector& hessians, double l2_lambda);

}  // namespace eegclass::synth
