#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include <json.hpp>

#include "mvop/document.hpp"
#include "mvop/errors.hpp"

using namespace mvop;

namespace {

FamilyDocument generate(PresetParams p) {
    p = resolve(p);
    const auto fam = build_preset(p);
    return make_document(p, fam, compute_residuals(fam));
}

std::vector<PresetParams> presets() {
    std::vector<PresetParams> out(4);
    out[0].kind = PresetKind::KrawtchoukInterleaved;
    out[0].a = std::numbers::pi / 3;
    out[1].kind = PresetKind::KrawtchoukSplit;
    out[1].p = 0.6;
    out[2].kind = PresetKind::MeixnerInterleaved;
    out[2].beta = 1.5;
    out[2].a = 1.0;
    out[3].kind = PresetKind::Chebyshev;
    out[3].N = 9;
    out[3].d = 7;
    out[3].b = 0.3;
    return out;
}

std::string mutate(const std::string& text, const std::function<void(nlohmann::ordered_json&)>& f) {
    auto j = nlohmann::ordered_json::parse(text);
    f(j);
    return j.dump(2) + "\n";
}

}  // namespace

TEST_CASE("round trip is byte identical") {
    for (const auto& p : presets()) {
        const auto doc = generate(p);
        const std::string text = serialize(doc);
        const auto back = parse_document(text);
        CHECK(serialize(back) == text);
        CHECK(compare_series(back, doc, 0.0).empty());
        CHECK(back.residuals == doc.residuals);
        CHECK(back.parameters == doc.parameters);
        CHECK(serialize(generate(params_from_document(back))) == text);
    }
}

TEST_CASE("document contents") {
    const auto doc = generate(presets()[0]);
    CHECK(doc.schema_version == kSchemaVersion);
    CHECK(doc.preset == "krawtchouk-interleaved");
    CHECK(doc.n == 2);
    CHECK(doc.K == 4);
    CHECK(doc.support_size == 4);
    for (const auto& name : series_names()) {
        const auto& s = doc.series.at(name);
        CHECK(static_cast<int>(s.size()) == (series_indexed_by_k(name) ? doc.K : doc.support_size));
    }
    for (const char* key : {"orthogonality", "recurrence", "difference_derived", "difference_printed",
                            "weight_identity", "two_path"})
        CHECK(std::isfinite(doc.residuals.at(key)));
    CHECK(doc.parameters.at("p") == doctest::Approx(0.75));
}

TEST_CASE("schema validation") {
    const std::string text = serialize(generate(presets()[0]));
    CHECK_THROWS_AS(parse_document("{"), SchemaError);
    CHECK_THROWS_AS(parse_document("[]"), SchemaError);
    CHECK_THROWS_AS(parse_document(mutate(text, [](auto& j) { j["schema_version"] = "mvop-family/0"; })),
                    SchemaError);
    CHECK_THROWS_AS(parse_document(mutate(text, [](auto& j) { j.erase("W"); })), SchemaError);
    CHECK_THROWS_AS(parse_document(mutate(text, [](auto& j) { j["residuals"].erase("two_path"); })),
                    SchemaError);
    CHECK_THROWS_AS(parse_document(mutate(text, [](auto& j) { j["residuals"]["two_path"] = nullptr; })),
                    SchemaError);
    CHECK_THROWS_AS(parse_document(mutate(text, [](auto& j) { j["W"][0][0].erase(1); })), SchemaError);
    CHECK_THROWS_AS(parse_document(mutate(text, [](auto& j) { j["A"].erase(0); })), SchemaError);
    CHECK_THROWS_AS(parse_document(mutate(text, [](auto& j) { j["n"] = "two"; })), SchemaError);
    CHECK_THROWS_AS(parse_document(mutate(text, [](auto& j) { j["preset"] = "legendre"; })), SchemaError);
    CHECK_THROWS_AS(read_document("/nonexistent/mvop.json"), Error);
}

TEST_CASE("tampered entries are located") {
    const auto doc = generate(presets()[0]);
    auto bad = doc;
    bad.series["W"][2](1, 0) += 1e-6;
    const auto m = compare_series(bad, doc, 1e-12);
    REQUIRE(m.size() == 1);
    CHECK(m[0].series == "W");
    CHECK(m[0].index == 2);
    CHECK(m[0].row == 1);
    CHECK(m[0].col == 0);
    CHECK(compare_series(bad, doc, 1e-5).empty());
}
