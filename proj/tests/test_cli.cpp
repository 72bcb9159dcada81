#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fuzzy/cli.hpp"

#include <json.hpp>

#include <cstdlib>

using namespace fuzzy;
using nlohmann::json;

namespace {

RunConfig base_config(const std::string& command, std::vector<int> ns) {
    RunConfig c;
    c.command = command;
    c.ns = std::move(ns);
    c.band = 4;
    return c;
}

}  // namespace

TEST_CASE("config validation catches usage errors") {
    RunConfig c = base_config("quantize", {});
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c.ns = {4, 2};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c.ns = {2, 4};
    c.perturb_eps = -0.1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c.perturb_eps = 0.0;
    c.format = "xml";
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c.format = "csv";
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("quantize records carry the documented fields") {
    const RunConfig c = base_config("quantize", {1, 2, 4});
    const RunOutput out = cmd_quantize(c);
    REQUIRE(out.records.size() == 3);
    CHECK_FALSE(out.numerical_failure);

    // N = 1: T(x3) = sigma_3 / 3, so the residual against (2/(N+2)) J^3 is ~0
    CHECK(out.records[0].as_double("N") == 1);
    CHECK(out.records[0].as_double("coord_residual_3") < 1e-10);
    CHECK(out.records[0].as_double("hbar") == doctest::Approx(2.0));
    for (const auto& rec : out.records) {
        CHECK(rec.as_double("coord_residual_max") < 1e-10);
        CHECK(rec.as_double("casimir_residual") < 1e-10);
    }
}

TEST_CASE("scan-dirac emits residuals, closed form and slope") {
    const RunConfig c = base_config("scan-dirac", {8, 16, 32, 64});
    const RunOutput out = cmd_scan_dirac(c);
    REQUIRE(out.records.size() == 4);
    for (const auto& rec : out.records) {
        const double N = rec.as_double("N");
        CHECK(rec.as_double("closed_form") ==
              doctest::Approx(4.0 / ((N + 2) * (N + 2))));
        CHECK(rec.as_double("rel_error") < 1e-12);
        CHECK(rec.as_double("warning_too_few_points") == 0);
    }
    const double slope = out.records[0].as_double("slope");
    CHECK(slope > 1.6);
    CHECK(slope < 2.0);

    // under three points: slope column omitted, warning flagged
    const RunOutput tiny = cmd_scan_dirac(base_config("scan-dirac", {8, 16}));
    CHECK(tiny.records[0].find("slope") == nullptr);
    CHECK(tiny.records[0].as_double("warning_too_few_points") == 1);
}

TEST_CASE("certify command emits certificates and theta columns") {
    RunConfig c = base_config("certify", {2, 3, 4, 6});
    c.squash_rounds = 0;
    const RunOutput out = cmd_certify(c);
    REQUIRE(out.records.size() == 4);
    CHECK_FALSE(out.numerical_failure);
    for (const auto& rec : out.records) {
        CHECK(rec.as_double("error") == 0);
        CHECK(rec.as_double("k") == rec.as_double("N") + 1);
        CHECK(rec.as_double("unique") == 1);
        CHECK(rec.as_double("relation_residual_max") < 1e-9);
        CHECK(rec.as_double("integer_distance") < 1e-9);
    }
    CHECK(out.records[0].as_double("theta_c0") == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("perturbation at eps = 0 reproduces the unperturbed run byte for byte") {
    RunConfig plain = base_config("certify", {2, 4, 6, 8});
    plain.squash_rounds = 0;
    RunConfig zero = plain;
    zero.perturb_eps = 0.0;
    const std::string a = emit_json(plain, cmd_certify(plain).records);
    const std::string b = emit_json(zero, cmd_certify(zero).records);
    CHECK(a == b);
}

TEST_CASE("determinism: identical configs give byte-identical output") {
    RunConfig c = base_config("certify", {2, 4, 8});
    c.perturb_eps = 0.05;
    c.seed = 12345;
    c.squash_rounds = 1;
    const std::string a = emit_json(c, cmd_certify(c).records);
    const std::string b = emit_json(c, cmd_certify(c).records);
    CHECK(a == b);
    CHECK(a.find("\"seed\": 12345") != std::string::npos);
}

TEST_CASE("json and csv carry identical values") {
    const RunConfig c = base_config("quantize", {1, 3});
    const RunOutput out = cmd_quantize(c);
    const std::string js = emit_json(c, out.records);
    const std::string csv = emit_csv(out.records);

    const json parsed = json::parse(js);
    REQUIRE(parsed["records"].size() == 2);
    CHECK(parsed["header"]["command"] == "quantize");
    CHECK(parsed["header"]["version"] == "1.0.0");

    // csv: header row + one row per record, matching the json values
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        const std::size_t nl = csv.find('\n', pos);
        lines.push_back(csv.substr(pos, nl - pos));
        pos = nl + 1;
    }
    REQUIRE(lines.size() == 3);
    std::vector<std::string> keys;
    {
        std::size_t p = 0;
        while (p <= lines[0].size()) {
            const std::size_t comma = lines[0].find(',', p);
            keys.push_back(lines[0].substr(p, comma - p));
            if (comma == std::string::npos) break;
            p = comma + 1;
        }
    }
    for (std::size_t r = 0; r < 2; ++r) {
        std::vector<std::string> cells;
        std::size_t p = 0;
        while (p <= lines[r + 1].size()) {
            const std::size_t comma = lines[r + 1].find(',', p);
            cells.push_back(lines[r + 1].substr(p, comma - p));
            if (comma == std::string::npos) break;
            p = comma + 1;
        }
        REQUIRE(cells.size() == keys.size());
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const double from_json = parsed["records"][r][keys[i]].get<double>();
            CHECK(std::strtod(cells[i].c_str(), nullptr) == from_json);
        }
    }
}

TEST_CASE("exclusions command interleaves allowed and excluded points") {
    RunConfig c = base_config("exclusions", {2, 3, 4, 5, 6, 7, 8});
    c.c = 1.0;
    const RunOutput out = cmd_exclusions(c);

    // sorted by descending hbar; excluded points alternate with allowed ones
    double prev = 1e9;
    for (const auto& rec : out.records) {
        CHECK(rec.as_double("hbar") <= prev);
        prev = rec.as_double("hbar");
        CHECK(rec.as_double("collision") == 0);
    }
    for (std::size_t i = 0; i + 1 < out.records.size(); ++i) {
        CHECK(out.records[i].as_double("excluded") !=
              out.records[i + 1].as_double("excluded"));
    }

    // c = 1/2 collides with the allowed grid
    RunConfig ch = c;
    ch.c = 0.5;
    const RunOutput with_collisions = cmd_exclusions(ch);
    bool saw_collision = false;
    for (const auto& rec : with_collisions.records) {
        if (rec.as_double("collision") == 1) saw_collision = true;
    }
    CHECK(saw_collision);

    // empty k-range (denominators nonpositive) still runs: single N list
    RunConfig tiny = base_config("exclusions", {1});
    tiny.c = 5.0;
    const RunOutput none = cmd_exclusions(tiny);
    for (const auto& rec : none.records) CHECK(rec.as_double("excluded") == 0);
}

TEST_CASE("run_cli exit codes") {
    const char* ok[] = {"fuzzysphere", "quantize", "--ns", "1,2", "--band", "2",
                        "--out", "/tmp/fuzzy_cli_test.json"};
    CHECK(run_cli(8, ok) == 0);

    const char* usage[] = {"fuzzysphere", "quantize", "--ns", "4,2"};
    CHECK(run_cli(4, usage) == 2);

    const char* unknown[] = {"fuzzysphere", "frobnicate"};
    CHECK(run_cli(2, unknown) == 2);

    // numerical-failure records present: the N = 2 point cannot be purified
    // at this perturbation strength, so the run exits 1 but still emits
    const char* failing[] = {"fuzzysphere", "certify",      "--ns",
                             "2,8",         "--band",       "4",
                             "--perturb-eps", "0.45",       "--seed",
                             "7",           "--out",        "/tmp/fuzzy_cli_fail.json"};
    CHECK(run_cli(12, failing) == 1);
}
