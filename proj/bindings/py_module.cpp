// Python face of the pipeline: spectral estimation, filtering, feature
// extraction, and the two classifiers, with numpy arrays on both sides.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eegclass/dsp.hpp"
#include "eegclass/features.hpp"
#include "eegclass/ingest.hpp"
#include "eegclass/model.hpp"
#include "eegclass/spectral.hpp"
#include "eegclass/synth.hpp"
#include "eegclass/types.hpp"

namespace py = pybind11;
using namespace eegclass;

namespace {

spectral::PsdEstimate psd_from_arrays(const Vector& freqs, const Vector& values) {
    if (freqs.size() != values.size()) {
        throw ValidationError("freqs and values must have the same length");
    }
    spectral::PsdEstimate psd;
    psd.freqs.assign(freqs.data(), freqs.data() + freqs.size());
    psd.values.assign(values.data(), values.data() + values.size());
    return psd;
}

dsp::BandSpec band_from_edges(double f_low, double f_high) {
    return dsp::BandSpec{dsp::Band::Broadband, f_low, f_high};
}

model::KernelSpec kernel_from_args(const std::string& kind, py::object gamma,
                                   int degree, double coef0) {
    model::KernelSpec spec;
    spec.kind = model::parse_kernel(kind);
    if (py::isinstance<py::str>(gamma)) {
        if (gamma.cast<std::string>() != "scale") {
            throw ValidationError("gamma must be a number or 'scale'");
        }
        spec.gamma_is_scale = true;
    } else {
        spec.gamma_is_scale = false;
        spec.gamma = gamma.cast<double>();
    }
    spec.degree = degree;
    spec.coef0 = coef0;
    return spec;
}

std::vector<int> labels_from_array(const Eigen::VectorXi& y) {
    return std::vector<int>(y.data(), y.data() + y.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "EEG band-power / band-entropy classification core";
    m.attr("__version__") = "0.1.0";
    m.attr("NUM_CHANNELS") = kNumChannels;
    m.attr("NUM_FEATURES") = features::kNumFeatures;

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ComputeError>(m, "ComputeError", PyExc_RuntimeError);

    m.def(
        "channel_names",
        [] { return std::vector<std::string>(canonical_channels().begin(),
                                             canonical_channels().end()); },
        "The 19 channel names in canonical column order.");

    m.def(
        "welch_psd",
        [](const Vector& x, int segment_len, int overlap, const std::string& window,
           double sample_rate_hz) {
            spectral::WelchConfig cfg;
            cfg.segment_len = segment_len;
            cfg.segment_overlap = overlap;
            cfg.window = spectral::parse_window(window);
            cfg.sample_rate_hz = sample_rate_hz;
            const auto psd = spectral::welch_psd(x, cfg);
            return py::make_tuple(Vector(Eigen::Map<const Vector>(psd.freqs.data(),
                                                                  static_cast<long>(psd.freqs.size()))),
                                  Vector(Eigen::Map<const Vector>(psd.values.data(),
                                                                  static_cast<long>(psd.values.size()))));
        },
        py::arg("x"), py::arg("segment_len") = 256, py::arg("overlap") = 0,
        py::arg("window") = "rectangular", py::arg("sample_rate_hz") = 128.0,
        "Averaged periodogram; returns (freqs, psd) in signal^2 per Hz.");

    m.def(
        "band_power",
        [](const Vector& freqs, const Vector& values, double f_low, double f_high) {
            return spectral::band_power(psd_from_arrays(freqs, values),
                                        band_from_edges(f_low, f_high));
        },
        py::arg("freqs"), py::arg("values"), py::arg("f_low"), py::arg("f_high"),
        "Sum of PSD bins whose centers lie in [f_low, f_high].");

    m.def(
        "band_entropy",
        [](const Vector& freqs, const Vector& values, double f_low, double f_high) {
            return spectral::band_entropy(psd_from_arrays(freqs, values),
                                          band_from_edges(f_low, f_high));
        },
        py::arg("freqs"), py::arg("values"), py::arg("f_low"), py::arg("f_high"),
        "Shannon entropy (nats) of the band-normalized PSD.");

    m.def(
        "bandpass_filter",
        [](const Matrix& x, double f_low, double f_high, int order,
           double sample_rate_hz, bool zero_phase) {
            const auto spec =
                dsp::design_bandpass(order, band_from_edges(f_low, f_high), sample_rate_hz);
            return dsp::apply_filter(
                spec, x, zero_phase ? dsp::FilterMode::ZeroPhase : dsp::FilterMode::Causal);
        },
        py::arg("x"), py::arg("f_low"), py::arg("f_high"), py::arg("order") = 5,
        py::arg("sample_rate_hz") = 128.0, py::arg("zero_phase") = true,
        "Butterworth bandpass, one column per channel.");

    m.def(
        "extract_features",
        [](const Matrix& epoch, double sample_rate_hz) {
            ingest::Epoch e;
            e.subject_id = "python";
            e.data = epoch;
            features::ExtractionConfig cfg;
            cfg.welch.sample_rate_hz = sample_rate_hz;
            return features::extract(e, cfg).values;
        },
        py::arg("epoch"), py::arg("sample_rate_hz") = 128.0,
        "190 features (19 channels x 5 bands x {power, entropy}) from one epoch.");

    m.def("feature_names", [] {
        std::vector<std::string> names;
        names.reserve(features::kNumFeatures);
        for (int i = 0; i < features::kNumFeatures; ++i) names.push_back(features::feature_name(i));
        return names;
    });

    py::class_<model::SvmModel>(m, "SvmModel")
        .def("decision", &model::svm_decision, py::arg("x"),
             "Signed distance-like score; positive means the positive class.")
        .def("predict", &model::svm_predict, py::arg("x"))
        .def_property_readonly("n_support",
                               [](const model::SvmModel& m_) { return m_.support_vectors.rows(); })
        .def_property_readonly("bias", [](const model::SvmModel& m_) { return m_.bias; });

    m.def(
        "svm_fit",
        [](const Matrix& X, const Eigen::VectorXi& y, const std::string& kernel,
           py::object gamma, int degree, double coef0, double C) {
            model::SvmFitOptions opts;
            opts.C = C;
            return model::svm_fit(X, labels_from_array(y),
                                  kernel_from_args(kernel, gamma, degree, coef0), opts);
        },
        py::arg("X"), py::arg("y"), py::arg("kernel") = "rbf",
        py::arg("gamma") = py::str("scale"), py::arg("degree") = 3,
        py::arg("coef0") = 0.0, py::arg("C") = 1.0,
        "SMO soft-margin SVM; labels must be +1/-1.");

    py::class_<model::GbtModel>(m, "GbtModel")
        .def("predict_proba", &model::gbt_predict_proba, py::arg("x"))
        .def("predict", &model::gbt_predict, py::arg("x"))
        .def_property_readonly("n_trees",
                               [](const model::GbtModel& m_) { return m_.trees.size(); });

    m.def(
        "gbt_fit",
        [](const Matrix& X, const Eigen::VectorXi& y, int n_trees, double learning_rate,
           int max_depth, double subsample, double colsample, double l2_lambda,
           std::uint64_t seed) {
            model::GbtParams params;
            params.n_trees = n_trees;
            params.learning_rate = learning_rate;
            params.max_depth = max_depth;
            params.subsample = subsample;
            params.colsample = colsample;
            params.l2_lambda = l2_lambda;
            params.seed = seed;
            return model::gbt_fit(X, labels_from_array(y), params);
        },
        py::arg("X"), py::arg("y"), py::arg("n_trees") = 100,
        py::arg("learning_rate") = 0.1, py::arg("max_depth") = 6,
        py::arg("subsample") = 0.8, py::arg("colsample") = 0.8,
        py::arg("l2_lambda") = 1.0, py::arg("seed") = 0,
        "Newton-boosted trees on logistic loss; labels must be 0/1.");

    m.def(
        "generate_synthetic",
        [](int subjects_per_class, long n_samples, double separation, double noise_rms,
           std::uint64_t seed) {
            synth::SynthSpec spec = synth::default_synth_spec(separation);
            spec.subjects_per_class = subjects_per_class;
            spec.n_samples = n_samples;
            spec.noise_rms = noise_rms;
            spec.seed = seed;
            py::list out;
            for (const auto& rec : synth::generate(spec)) {
                out.append(py::make_tuple(rec.subject_id, to_string(rec.label), rec.samples));
            }
            return out;
        },
        py::arg("subjects_per_class") = 2, py::arg("n_samples") = 1280,
        py::arg("separation") = 1.5, py::arg("noise_rms") = 1.0, py::arg("seed") = 0,
        "Seeded synthetic recordings as (subject_id, label, samples) tuples.");
}
