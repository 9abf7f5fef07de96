#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "syzlab/experiment.hpp"
#include "syzlab/report.hpp"
#include "syzlab/toml.hpp"

using namespace syzlab;

TEST_CASE("toml subset parser") {
    std::string text = R"(
# a comment
top = 3
flag = true
name = "hello \"quoted\""
ratio = 0.25
list = [1, 2, 3]
nested = [[4, 0, 0, 1],
          [0, 4, 0, 1]]

[table]
key = -7

[table.sub]
deep = [101, 499]
)";
    nlohmann::json j = toml::parse(text);
    CHECK(j["top"] == 3);
    CHECK(j["flag"] == true);
    CHECK(j["name"] == "hello \"quoted\"");
    CHECK(j["ratio"].get<double>() == doctest::Approx(0.25));
    CHECK(j["list"].size() == 3);
    CHECK(j["nested"][1][1] == 4);
    CHECK(j["table"]["key"] == -7);
    CHECK(j["table"]["sub"]["deep"][1] == 499);
}

TEST_CASE("toml errors carry line and column") {
    try {
        toml::parse("a = 1\nb 2\n");
        FAIL("expected parse error");
    } catch (const toml::TomlError& e) {
        CHECK(e.line == 2);
        CHECK(e.col >= 3);
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(toml::parse("x = [1, 2"), toml::TomlError);
    CHECK_THROWS_AS(toml::parse("x = \"unterminated"), toml::TomlError);
    CHECK_THROWS_AS(toml::parse("x = 1\nx = 2\n"), toml::TomlError);
}

namespace {

ExperimentConfig load_config(const std::string& name) {
    return config_from_toml(toml::parse_file(std::string(SYZLAB_CONFIG_DIR) + "/" + name));
}

}  // namespace

TEST_CASE("curated configs parse") {
    for (const char* name :
         {"twisted_cubic_betti.toml", "g2_duality.toml", "g2_gonality.toml",
          "quartic_gonality.toml", "quartic_theoremB_p1.toml", "quartic_theoremB_p2.toml",
          "g2_growth_K.toml", "quartic_growth_p2.toml", "quartic_growth_q0.toml",
          "quartic_pva_p1.toml", "g2_pva_K.toml", "verify_suite.toml"}) {
        ExperimentConfig cfg = load_config(name);
        CHECK(!cfg.kind.empty());
    }
    ExperimentConfig tc = load_config("twisted_cubic_betti.toml");
    CHECK(tc.kind == "betti");
    CHECK(tc.primes.size() == 3);
    CHECK(tc.expected_entries.size() == 8);
}

TEST_CASE("run twisted cubic experiment end to end") {
    ExperimentConfig cfg = load_config("twisted_cubic_betti.toml");
    cfg.primes = {101};  // single prime keeps this test quick
    nlohmann::json doc;
    int code = run_experiment(cfg, doc);
    CHECK(code == kExitPass);
    CHECK(doc["pass"] == true);
    CHECK(doc["kind"] == "betti");
    bool saw = false;
    for (const auto& e : doc["result"]["entries"])
        if (e["p"] == 1 && e["q"] == 1) {
            CHECK(e["dim"] == 3);
            saw = true;
        }
    CHECK(saw);

    // failing expectation gives the FAIL exit code
    cfg.expected_entries.push_back({1, 1, 99});
    nlohmann::json doc2;
    CHECK(run_experiment(cfg, doc2) == kExitFail);
    CHECK(doc2["pass"] == false);
}

TEST_CASE("multi-prime agreement") {
    ExperimentConfig cfg = load_config("twisted_cubic_betti.toml");
    nlohmann::json doc;
    int code = run_experiment(cfg, doc);
    CHECK(code == kExitPass);
    CHECK(doc["primes_agree"] == true);
    CHECK(doc["runs"].size() == 3);
}

TEST_CASE("emission formats") {
    ExperimentConfig cfg = load_config("twisted_cubic_betti.toml");
    cfg.primes = {101};
    nlohmann::json doc;
    run_experiment(cfg, doc);

    std::string js = emit_report(doc, "json");
    nlohmann::json back = nlohmann::json::parse(js);
    CHECK(back == doc);  // round trip

    std::string csv = emit_report(doc, "csv");
    CHECK(csv.rfind("p,q,dim,provenance", 0) == 0);
    CHECK(csv.find("1,1,3,") != std::string::npos);

    std::string text = emit_report(doc, "text");
    CHECK(text.find("kind: betti") != std::string::npos);
    CHECK_THROWS_AS(emit_report(doc, "yaml"), ConfigError);
}

TEST_CASE("reports are deterministic modulo the meta block") {
    ExperimentConfig cfg = load_config("g2_pva_K.toml");
    nlohmann::json a, b;
    run_experiment(cfg, a);
    run_experiment(cfg, b);
    a.erase("meta");
    b.erase("meta");
    CHECK(a == b);
}

TEST_CASE("pva experiment verdicts") {
    ExperimentConfig cfg = load_config("g2_pva_K.toml");
    nlohmann::json doc;
    CHECK(run_experiment(cfg, doc) == kExitPass);
    CHECK(doc["result"]["p_very_ample"] == false);
    CHECK(doc["result"].contains("witness"));

    cfg.expect_pva = true;  // contradicts the geometry
    CHECK(run_experiment(cfg, doc) == kExitFail);
}

TEST_CASE("config validation errors") {
    CHECK_THROWS_AS(config_from_toml(toml::parse("x = 1\n")), ConfigError);
    CHECK_THROWS_AS(config_from_toml(toml::parse("[experiment]\nkind = \"betti\"\n")), ConfigError);
    nlohmann::json bad = toml::parse(
        "[experiment]\nkind = \"betti\"\n[curve]\nvariant = \"plane\"\nmonomials = [[1, 2], [3]]\n");
    CHECK_THROWS_AS(config_from_toml(bad), ConfigError);
}
