#include <doctest.h>

#include "eegclass/config.hpp"
#include "helpers.hpp"

using namespace eegclass;

TEST_CASE("canonical text round-trips byte for byte") {
    const config::PipelineConfig cfg = config::default_config();
    const std::string text = config::to_json_text(cfg);
    const config::PipelineConfig back = config::from_json_text(text);
    CHECK(config::to_json_text(back) == text);
    CHECK(config::config_hash(back) == config::config_hash(cfg));
    CHECK(config::config_hash(cfg).size() == 16);
}

TEST_CASE("an empty object means all defaults") {
    const config::PipelineConfig cfg = config::from_json_text("{}");
    CHECK(config::to_json_text(cfg) == config::to_json_text(config::default_config()));
}

TEST_CASE("partial configs keep defaults for omitted keys") {
    const auto cfg = config::from_json_text(R"({"fold": {"k": 5}})");
    CHECK(cfg.fold_k == 5);
    CHECK(cfg.fold_seed == 0);
    CHECK(cfg.sample_rate_hz == 128.0);
    CHECK(cfg.welch.segment_len == 256);
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_WITH_AS(config::from_json_text(R"({"sample_rate": 128})"),
                         doctest::Contains("unknown key 'sample_rate'"), ValidationError);
    CHECK_THROWS_WITH_AS(config::from_json_text(R"({"welch": {"windw": "hann"}})"),
                         doctest::Contains("unknown key 'windw'"), ValidationError);
    CHECK_THROWS_WITH_AS(config::from_json_text(R"({"kernel": {"Gamma": 0.5}})"),
                         doctest::Contains("unknown key 'Gamma'"), ValidationError);
}

TEST_CASE("malformed JSON and bad types are validation errors") {
    CHECK_THROWS_AS(config::from_json_text("not json"), ValidationError);
    CHECK_THROWS_AS(config::from_json_text(R"({"sample_rate_hz": "fast"})"), ValidationError);
    CHECK_THROWS_AS(config::from_json_text(R"({"fold": {"k": 2.5}})"), ValidationError);
    CHECK_THROWS_AS(config::from_json_text(R"({"fold": {"seed": -1}})"), ValidationError);
    CHECK_THROWS_AS(config::from_json_text(R"({"classifier": "forest"})"), ValidationError);
}

TEST_CASE("gamma accepts a number or the literal scale") {
    auto cfg = config::from_json_text(R"({"kernel": {"gamma": 0.25}})");
    CHECK_FALSE(cfg.kernel.gamma_is_scale);
    CHECK(cfg.kernel.gamma == 0.25);

    cfg = config::from_json_text(R"({"kernel": {"gamma": "scale"}})");
    CHECK(cfg.kernel.gamma_is_scale);

    CHECK_THROWS_AS(config::from_json_text(R"({"kernel": {"gamma": "auto"}})"), ValidationError);
    CHECK_THROWS_AS(config::from_json_text(R"({"kernel": {"gamma": -0.5}})"), ValidationError);

    // A numeric gamma survives the text round-trip with its exact value.
    config::PipelineConfig direct = config::default_config();
    direct.kernel.gamma_is_scale = false;
    direct.kernel.gamma = 1.0 / 3.0;
    const auto back = config::from_json_text(config::to_json_text(direct));
    CHECK_FALSE(back.kernel.gamma_is_scale);
    CHECK(back.kernel.gamma == 1.0 / 3.0);
}

TEST_CASE("validate rejects inconsistent pipelines") {
    auto cfg = config::default_config();
    cfg.bands.pop_back();
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("bands"), ValidationError);

    cfg = config::default_config();
    cfg.bands[1] = cfg.bands[0];
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("twice"), ValidationError);

    cfg = config::default_config();
    cfg.epoch.epoch_len_samples = 128;  // shorter than the 256-sample welch segment
    CHECK_THROWS_AS(cfg.validate(), ValidationError);

    cfg = config::default_config();
    cfg.fold_k = 1;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);

    cfg = config::default_config();
    cfg.bands[4].f_high = 70.0;  // above the 64 Hz Nyquist
    CHECK_THROWS_AS(cfg.validate(), ValidationError);

    cfg = config::default_config();
    cfg.filter_order = 0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);

    cfg = config::default_config();
    cfg.gbt.subsample = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("the hash tracks every semantic change") {
    const auto base = config::default_config();
    const std::string h0 = config::config_hash(base);

    auto cfg = base;
    cfg.fold_seed = 7;
    CHECK(config::config_hash(cfg) != h0);

    cfg = base;
    cfg.kernel.kind = model::KernelKind::Poly;
    CHECK(config::config_hash(cfg) != h0);

    cfg = base;
    cfg.svm_C = 2.0;
    CHECK(config::config_hash(cfg) != h0);

    // Same fields, same hash, independently constructed.
    CHECK(config::config_hash(config::default_config()) == h0);
}

TEST_CASE("load_config reads files and mirrors the sample rate") {
    testutil::ScratchDir dir;
    testutil::write_text(dir.file("pipeline.json"),
                         R"({"sample_rate_hz": 256, "welch": {"segment_len": 512}})");
    const auto cfg = config::load_config(dir.file("pipeline.json"));
    CHECK(cfg.sample_rate_hz == 256.0);
    CHECK(cfg.welch.segment_len == 512);
    CHECK(cfg.welch.sample_rate_hz == 256.0);

    CHECK_THROWS_AS(config::load_config(dir.file("absent.json")), ValidationError);
}
