// Synthetic recordings plus the brute-force reference implementations the
// test suite compares the fast paths against.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "eegclass/synth.hpp"

#include <Eigen/Eigenvalues>

#include "rng.hpp"

namespace eegclass::synth {

namespace {

// Stream seed for one (subject, channel) cell, so generation order and
// threading cannot change the data.
std::uint64_t cell_seed(std::uint64_t seed, int subject, int channel) {
    eegclass::detail::SplitMix64 g(seed ^
                                   (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(subject + 1)) ^
                                   (0xc2b2ae3d27d4eb4fULL * static_cast<std::uint64_t>(channel + 1)));
    return g.next();
}

}  // namespace

void SynthSpec::validate() const {
    if (subjects_per_class < 1) throw ValidationError("synth: subjects_per_class must be >= 1");
    if (sample_rate_hz <= 0.0) throw ValidationError("synth: sample rate must be positive");
    if (n_samples < 1280) {
        throw ValidationError("synth: n_samples must cover at least one epoch (1280)");
    }
    if (bands.empty()) throw ValidationError("synth: no bands");
    for (const auto& band : bands) band.validate(sample_rate_hz);
    for (const auto* profile : {&adhd_rms, &control_rms}) {
        for (const auto& [band, rms] : *profile) {
            if (rms < 0.0) {
                throw ValidationError("synth: negative RMS for band " + dsp::band_name(band));
            }
        }
    }
    if (noise_rms < 0.0) throw ValidationError("synth: negative noise RMS");
}

SynthSpec default_synth_spec(double separation) {
    if (separation <= 0.0) throw ValidationError("synth: separation must be positive");
    SynthSpec spec;
    for (const auto& band : spec.bands) {
        spec.adhd_rms[band.band] = 1.0;
        spec.control_rms[band.band] = 1.0;
    }
    // Theta/beta ratio differs by `separation` between the classes, the
    // elevation direction matching the ADHD literature.
    spec.adhd_rms[dsp::Band::Theta] = std::sqrt(separation);
    spec.control_rms[dsp::Band::Theta] = 1.0 / std::sqrt(separation);
    return spec;
}

std::vector<ingest::Recording> generate(const SynthSpec& spec) {
    spec.validate();

    std::vector<dsp::FilterSpec> filters;
    filters.reserve(spec.bands.size());
    for (const auto& band : spec.bands) {
        filters.push_back(dsp::design_bandpass(5, band, spec.sample_rate_hz));
    }

    const int per_class = spec.subjects_per_class;
    const int digits = std::max(2, static_cast<int>(std::to_string(per_class).size()));

    std::vector<ingest::Recording> out;
    out.reserve(static_cast<std::size_t>(2 * per_class));
    for (int s = 0; s < 2 * per_class; ++s) {
        const bool adhd = s < per_class;
        const BandRmsProfile& profile = adhd ? spec.adhd_rms : spec.control_rms;
        std::ostringstream id;
        id << (adhd ? "adhd" : "ctrl") << std::setfill('0') << std::setw(digits)
           << (adhd ? s : s - per_class) + 1;

        ingest::Recording rec;
        rec.subject_id = id.str();
        rec.label = adhd ? ClassLabel::Adhd : ClassLabel::Control;
        rec.sample_rate_hz = spec.sample_rate_hz;
        rec.channels.assign(canonical_channels().begin(), canonical_channels().end());
        rec.samples = Matrix::Zero(spec.n_samples, kNumChannels);

        for (int c = 0; c < kNumChannels; ++c) {
            eegclass::detail::SplitMix64 rng(cell_seed(spec.seed, s, c));
            Vector channel = Vector::Zero(spec.n_samples);
            Vector white(spec.n_samples);
            for (std::size_t b = 0; b < spec.bands.size(); ++b) {
                const auto it = profile.find(spec.bands[b].band);
                const double target = it == profile.end() ? 0.0 : it->second;
                if (target <= 0.0) continue;
                for (long i = 0; i < spec.n_samples; ++i) white[i] = rng.next_gaussian();
                Vector shaped = dsp::apply_filter(filters[b], white, dsp::FilterMode::ZeroPhase);
                const double rms = std::sqrt(shaped.squaredNorm() / static_cast<double>(spec.n_samples));
                if (rms > 0.0) channel += (target / rms) * shaped;
            }
            if (spec.noise_rms > 0.0) {
                for (long i = 0; i < spec.n_samples; ++i) {
                    channel[i] += spec.noise_rms * rng.next_gaussian();
                }
            }
            rec.samples.col(c) = channel;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

void write_dataset(const std::filesystem::path& dir,
                   const std::vector<ingest::Recording>& recordings) {
    if (recordings.empty()) throw ValidationError("write_dataset: nothing to write");
    std::filesystem::create_directories(dir);

    std::ofstream manifest(dir / "manifest.csv");
    if (!manifest) throw ValidationError("write_dataset: cannot open manifest in " + dir.string());
    manifest << "subject_id,label,path\n";

    char buf[40];
    for (const auto& rec : recordings) {
        const std::string file = rec.subject_id + ".csv";
        manifest << rec.subject_id << ',' << to_string(rec.label) << ',' << file << '\n';

        std::ofstream csv(dir / file);
        if (!csv) throw ValidationError("write_dataset: cannot open " + (dir / file).string());
        std::string body;
        body.reserve(static_cast<std::size_t>(rec.samples.rows()) * 200);
        for (std::size_t c = 0; c < rec.channels.size(); ++c) {
            if (c > 0) body += ',';
            body += rec.channels[c];
        }
        body += '\n';
        for (long r = 0; r < rec.samples.rows(); ++r) {
            for (long c = 0; c < rec.samples.cols(); ++c) {
                std::snprintf(buf, sizeof(buf), "%.17g", rec.samples(r, c));
                if (c > 0) body += ',';
                body += buf;
            }
            body += '\n';
        }
        csv << body;
        if (!csv) throw ComputeError("write_dataset: short write to " + (dir / file).string());
    }
}

spectral::PsdEstimate oracle_dft_psd(const Vector& x, int n_w, double sample_rate_hz) {
    if (n_w < 2) throw ValidationError("oracle_dft_psd: window must have at least 2 samples");
    if (n_w > 1024) throw ValidationError("oracle_dft_psd: window capped at 1024 samples");
    if (sample_rate_hz <= 0.0) throw ValidationError("oracle_dft_psd: sample rate must be positive");
    if (x.size() < n_w) throw ValidationError("oracle_dft_psd: signal shorter than one window");

    const long n_segments = x.size() / n_w;  // rectangular, zero overlap
    const int n_bins = n_w / 2 + 1;
    const double two_pi = 2.0 * std::numbers::pi;

    spectral::PsdEstimate est;
    est.freqs.resize(static_cast<std::size_t>(n_bins));
    est.values.assign(static_cast<std::size_t>(n_bins), 0.0);
    for (int k = 0; k < n_bins; ++k) {
        est.freqs[static_cast<std::size_t>(k)] = k * sample_rate_hz / n_w;
    }

    for (long s = 0; s < n_segments; ++s) {
        const long offset = s * static_cast<long>(n_w);
        for (int k = 0; k < n_bins; ++k) {
            double re = 0.0, im = 0.0;
            for (int t = 0; t < n_w; ++t) {
                const double angle = -two_pi * k * t / static_cast<double>(n_w);
                re += x[offset + t] * std::cos(angle);
                im += x[offset + t] * std::sin(angle);
            }
            est.values[static_cast<std::size_t>(k)] += re * re + im * im;
        }
    }

    const bool has_nyquist = (n_w % 2 == 0);
    for (int k = 0; k < n_bins; ++k) {
        double v = est.values[static_cast<std::size_t>(k)] /
                   (static_cast<double>(n_segments) * n_w * sample_rate_hz);
        if (k != 0 && !(has_nyquist && k == n_bins - 1)) v *= 2.0;
        est.values[static_cast<std::size_t>(k)] = v;
    }
    return est;
}

namespace {

// Projection onto {0 <= a <= C, y.a = 0} by bisection on the multiplier of
// the equality constraint.
Vector project_dual(const Vector& v, const std::vector<int>& y, double C) {
    const long n = v.size();
    auto clipped = [&](double mu, Vector& out) {
        double balance = 0.0;
        for (long i = 0; i < n; ++i) {
            const double yi = static_cast<double>(y[static_cast<std::size_t>(i)]);
            out[i] = std::clamp(v[i] - mu * yi, 0.0, C);
            balance += yi * out[i];
        }
        return balance;
    };

    Vector out(n);
    double lo = -(v.cwiseAbs().maxCoeff() + C + 1.0);
    double hi = -lo;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        (clipped(mid, out) > 0.0 ? lo : hi) = mid;
    }
    clipped(0.5 * (lo + hi), out);
    return out;
}

}  // namespace

QpResult oracle_qp_svm(const Matrix& X, const std::vector<int>& y,
                       const model::KernelSpec& kernel, double C,
                       long max_iterations, double tol) {
    const long n = X.rows();
    if (n > 100) throw ValidationError("oracle_qp_svm: capped at 100 points");
    if (n < 2) throw ValidationError("oracle_qp_svm: need at least two points");
    if (static_cast<long>(y.size()) != n) throw ValidationError("oracle_qp_svm: label count mismatch");
    long pos = 0, neg = 0;
    for (int label : y) {
        if (label == +1) ++pos;
        else if (label == -1) ++neg;
        else throw ValidationError("oracle_qp_svm: labels must be +1 or -1");
    }
    if (pos == 0 || neg == 0) throw ValidationError("oracle_qp_svm: both classes must be present");
    if (C <= 0.0) throw ValidationError("oracle_qp_svm: C must be positive");

    const model::KernelSpec resolved = model::resolve_gamma(kernel, X);
    Matrix Q(n, n);
    for (long i = 0; i < n; ++i) {
        for (long j = 0; j <= i; ++j) {
            const double q = static_cast<double>(y[static_cast<std::size_t>(i)]) *
                             static_cast<double>(y[static_cast<std::size_t>(j)]) *
                             model::kernel_eval(resolved, Vector(X.row(i).transpose()),
                                                Vector(X.row(j).transpose()));
            Q(i, j) = q;
            Q(j, i) = q;
        }
    }

    Eigen::SelfAdjointEigenSolver<Matrix> eig(Q, Eigen::EigenvaluesOnly);
    const double lip = std::max(eig.eigenvalues().cwiseAbs().maxCoeff(), 1e-12);
    const double step = 1.0 / lip;

    auto objective = [&](const Vector& a) { return a.sum() - 0.5 * a.dot(Q * a); };

    QpResult result;

    // FISTA with objective restarts; plain projected-gradient fallback keeps
    // every accepted iterate non-decreasing even for indefinite Q (sigmoid).
    auto descend = [&](Vector alpha) {
        Vector momentum = alpha;
        double t = 1.0;
        double obj = objective(alpha);
        for (long it = 0; it < max_iterations; ++it) {
            ++result.iterations;
            Vector cand = project_dual(momentum + step * (Vector::Ones(n) - Q * momentum), y, C);
            double cand_obj = objective(cand);
            if (cand_obj < obj) {
                cand = project_dual(alpha + step * (Vector::Ones(n) - Q * alpha), y, C);
                cand_obj = objective(cand);
                t = 1.0;
            }
            const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
            momentum = cand + ((t - 1.0) / t_next) * (cand - alpha);
            const double move = (cand - alpha).cwiseAbs().maxCoeff();
            alpha = cand;
            obj = cand_obj;
            t = t_next;
            if (move < tol) {
                const Vector fixed = project_dual(alpha + step * (Vector::Ones(n) - Q * alpha), y, C);
                if ((fixed - alpha).cwiseAbs().maxCoeff() < tol) break;
            }
        }
        return alpha;
    };

    // Exhaustive pairwise ascent. Moving alpha_i by y_i*d and alpha_j by
    // -y_j*d keeps y.alpha = 0, so each pair is a 1-D segment with a closed
    // form maximum; sweep every pair until none improves. Indefinite Q parks
    // projected gradient on fixed points that these moves still escape.
    auto polish = [&](Vector& alpha) {
        Vector q = Q * alpha;
        for (int sweep = 0; sweep < 500; ++sweep) {
            bool moved = false;
            for (long i = 0; i < n; ++i) {
                const double yi = static_cast<double>(y[static_cast<std::size_t>(i)]);
                for (long j = i + 1; j < n; ++j) {
                    const double yj = static_cast<double>(y[static_cast<std::size_t>(j)]);
                    double lo = yi > 0.0 ? -alpha[i] : alpha[i] - C;
                    double hi = yi > 0.0 ? C - alpha[i] : alpha[i];
                    lo = std::max(lo, yj > 0.0 ? alpha[j] - C : -alpha[j]);
                    hi = std::min(hi, yj > 0.0 ? alpha[j] : C - alpha[j]);
                    if (hi <= lo) continue;
                    const double g = yi * (1.0 - q[i]) - yj * (1.0 - q[j]);
                    const double curv = Q(i, i) + Q(j, j) - 2.0 * yi * yj * Q(i, j);
                    double d;
                    if (curv > 0.0) {
                        d = std::clamp(g / curv, lo, hi);
                    } else {
                        const double w_lo = lo * g - 0.5 * curv * lo * lo;
                        const double w_hi = hi * g - 0.5 * curv * hi * hi;
                        d = w_hi >= w_lo ? hi : lo;
                    }
                    const double gain = d * g - 0.5 * curv * d * d;
                    if (gain <= 1e-12) continue;
                    alpha[i] = std::clamp(alpha[i] + yi * d, 0.0, C);
                    alpha[j] = std::clamp(alpha[j] - yj * d, 0.0, C);
                    q += d * (yi * Q.col(i) - yj * Q.col(j));
                    moved = true;
                }
            }
            if (!moved) break;
        }
    };

    // Multi-start: indefinite duals have several stationary points, so take
    // the best over deterministic starts instead of trusting one basin.
    detail::SplitMix64 rs(0x09f0c1e5ULL);
    Vector best;
    double best_obj = -std::numeric_limits<double>::infinity();
    for (int start = 0; start < 4; ++start) {
        Vector init;
        if (start == 0) {
            init = Vector::Zero(n);
        } else if (start == 1) {
            init = project_dual(Vector::Constant(n, 0.5 * C), y, C);
        } else {
            init.resize(n);
            for (long i = 0; i < n; ++i) init[i] = C * rs.next_unit();
            init = project_dual(init, y, C);
        }
        Vector alpha = descend(init);
        polish(alpha);
        const double obj = objective(alpha);
        if (obj > best_obj) {
            best_obj = obj;
            best = alpha;
        }
    }

    result.alpha = best;
    result.objective = best_obj;
    return result;
}

SplitResult oracle_split_search(const Matrix& rows, const Vector& gradients,
                                const Vector& hessians, double l2_lambda) {
    const long n = rows.rows();
    if (n < 1) throw ValidationError("oracle_split_search: no rows");
    if (gradients.size() != n || hessians.size() != n) {
        throw ValidationError("oracle_split_search: gradient/hessian length mismatch");
    }
    if (l2_lambda < 0.0) throw ValidationError("oracle_split_search: negative lambda");

    const double g_total = gradients.sum();
    const double h_total = hessians.sum();
    const double parent = g_total * g_total / (h_total + l2_lambda);

    SplitResult best;
    for (long f = 0; f < rows.cols(); ++f) {
        std::vector<double> values(static_cast<std::size_t>(n));
        for (long r = 0; r < n; ++r) values[static_cast<std::size_t>(r)] = rows(r, f);
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());

        for (std::size_t i = 0; i + 1 < values.size(); ++i) {
            const double threshold = 0.5 * (values[i] + values[i + 1]);
            if (!(threshold > values[i])) continue;
            double g_left = 0.0, h_left = 0.0;
            for (long r = 0; r < n; ++r) {  // full rescan on purpose
                if (rows(r, f) < threshold) {
                    g_left += gradients[r];
                    h_left += hessians[r];
                }
            }
            const double g_right = g_total - g_left;
            const double h_right = h_total - h_left;
            const double gain = 0.5 * (g_left * g_left / (h_left + l2_lambda) +
                                       g_right * g_right / (h_right + l2_lambda) - parent);
            if (gain > best.gain) {
                best.found = true;
                best.feature = static_cast<int>(f);
                best.threshold = threshold;
                best.gain = gain;
            }
        }
    }
    if (!(best.gain > 0.0)) best = SplitResult{};
    return best;
}

}  // namespace eegclass::synth
