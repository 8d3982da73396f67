#include "helixqm/config.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <numbers>

using namespace helixqm;
using nlohmann::json;

namespace {

json bulge_document() {
    return json::parse(R"({
        "curve": {"family": "bulging_helix", "params": {"a": 1.0, "phi0": 12.566370614359172},
                  "phi_min": -40, "phi_max": 40},
        "hamiltonians": ["EM1", "EM2", "JWKB", "GEO", "JWKB_GEO"],
        "grid_points": 8000,
        "states": 4,
        "outputs": ["spectrum", "wavefunctions"],
        "out_dir": "out/bulge"
    })");
}

} // namespace

TEST(Config, ParsesFullDocument) {
    const auto c = config_from_json(bulge_document());
    EXPECT_EQ(c.family, CurveFamily::BulgingHelix);
    EXPECT_DOUBLE_EQ(c.params.at("phi0"), 4.0 * std::numbers::pi);
    EXPECT_EQ(c.hamiltonians.size(), 5u);
    EXPECT_EQ(c.outputs.size(), 2u);
    EXPECT_EQ(c.out_dir, std::filesystem::path("out/bulge"));
}

TEST(Config, DefaultsFillOmittedFields) {
    const auto c = config_from_json(json::parse(R"({"curve": {"family": "stretched"}})"));
    EXPECT_EQ(c.family, CurveFamily::StretchedHelix);
    EXPECT_DOUBLE_EQ(c.params.at("a"), 0.1);
    EXPECT_EQ(c.phi_min, 0.0);
    EXPECT_EQ(c.phi_max, 20.0);
    EXPECT_EQ(c.grid_points, 8000u);
    EXPECT_EQ(c.states, 4u);
}

TEST(Config, RoundTrip) {
    const auto c = config_from_json(bulge_document());
    const auto again = config_from_json(json::parse(to_json(c).dump()));
    EXPECT_EQ(c, again);
    EXPECT_EQ(to_json(c), to_json(again));

    const auto path = std::filesystem::temp_directory_path() / "helixqm_roundtrip.json";
    save_config(c, path);
    EXPECT_EQ(load_config(path), c);
    std::filesystem::remove(path);
}

TEST(Config, RejectsUnknownKeys) {
    auto j = bulge_document();
    j["grid"] = 10;
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = bulge_document();
    j["curve"]["colour"] = "red";
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = bulge_document();
    j["curve"]["params"]["c0"] = 0.1;
    EXPECT_THROW(config_from_json(j), ConfigError);
}

TEST(Config, RejectsBadValues) {
    auto j = bulge_document();
    j["states"] = 17;
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = bulge_document();
    j["grid_points"] = 100;
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = bulge_document();
    j["grid_points"] = -5;
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = bulge_document();
    j["hamiltonians"] = {"EM1", "EM3"};
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = bulge_document();
    j["hamiltonians"] = {"EM1", "EM1"};
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = bulge_document();
    j["curve"]["family"] = "custom";
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = bulge_document();
    j["curve"]["params"]["phi0"] = -1.0;
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = bulge_document();
    j["outputs"] = {"plots"};
    EXPECT_THROW(config_from_json(j), ConfigError);
    j = bulge_document();
    j["states"] = "four";
    EXPECT_THROW(config_from_json(j), ConfigError);
    EXPECT_THROW(config_from_json(json::parse("{}")), ConfigError);
}

TEST(Config, MissingFileIsConfigError) {
    EXPECT_THROW(load_config("/nonexistent/helixqm.json"), ConfigError);
}

TEST(Config, ParseReal) {
    EXPECT_DOUBLE_EQ(parse_real("0.5"), 0.5);
    EXPECT_DOUBLE_EQ(parse_real("4pi"), 4.0 * std::numbers::pi);
    EXPECT_DOUBLE_EQ(parse_real("4*pi"), 4.0 * std::numbers::pi);
    EXPECT_DOUBLE_EQ(parse_real("pi"), std::numbers::pi);
    EXPECT_DOUBLE_EQ(parse_real("-pi"), -std::numbers::pi);
    EXPECT_DOUBLE_EQ(parse_real("+2"), 2.0);
    EXPECT_DOUBLE_EQ(parse_real("1e-3"), 1e-3);
    EXPECT_THROW(parse_real("abc"), ConfigError);
    EXPECT_THROW(parse_real("1.5x"), ConfigError);
    EXPECT_THROW(parse_real(""), ConfigError);
}

TEST(Config, ParamOverrides) {
    RunConfig c;
    c.set_family(CurveFamily::SqueezedHelix);
    set_param(c, "c0", 0.02);
    EXPECT_DOUBLE_EQ(c.params.at("c0"), 0.02);
    EXPECT_THROW(set_param(c, "a", 1.0), ConfigError);
    EXPECT_EQ(parse_method_list("EM1,GEO").size(), 2u);
    EXPECT_THROW(parse_method_list(","), ConfigError);
}

TEST(Config, StringExpressionsForReals) {
    auto j = bulge_document();
    j["curve"]["params"]["phi0"] = "4pi";
    j["curve"]["phi_min"] = "-40";
    const auto c = config_from_json(j);
    EXPECT_DOUBLE_EQ(c.params.at("phi0"), 4.0 * std::numbers::pi);
    EXPECT_EQ(c.phi_min, -40.0);
    j["curve"]["params"]["phi0"] = "four pi";
    EXPECT_THROW(config_from_json(j), ConfigError);
    j["curve"]["params"]["phi0"] = true;
    EXPECT_THROW(config_from_json(j), ConfigError);
}
