#include <filesystem>
#include <fstream>
#include <sstream>

#include "adrsig/disproportionality.hpp"
#include "adrsig/errors.hpp"
#include "adrsig/synth.hpp"
#include "doctest.h"

using namespace adrsig;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

SynthConfig small_config(std::uint64_t seed) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.n_patients = 300;
    cfg.n_drugs = 5;
    cfg.n_event_codes = 40;
    cfg.observation_days = 365;
    cfg.srs_reporting_prob = 0.2;
    return cfg;
}

SynthConfig planted_config(std::uint64_t seed, double multiplier) {
    SynthConfig cfg;
    cfg.seed = seed;
    cfg.n_patients = 1500;
    cfg.n_drugs = 5;
    cfg.n_event_codes = 50;
    cfg.observation_days = 730;
    cfg.background_prescription_rate = 3.0;
    cfg.background_event_rate = 10.0;
    cfg.srs_reporting_prob = 0.0;
    cfg.planted_effects.push_back({"drug02", "Qa", multiplier, 30});
    return cfg;
}

}  // namespace

TEST_CASE("generation is deterministic") {
    const auto a = generate(small_config(42));
    const auto b = generate(small_config(42));
    CHECK(a.gp == b.gp);
    CHECK(a.srs == b.srs);
    CHECK(a.codes == b.codes);
    CHECK_FALSE(generate(small_config(43)).gp == a.gp);

    const auto d1 = fs::temp_directory_path() / "adrsig_synth_a";
    const auto d2 = fs::temp_directory_path() / "adrsig_synth_b";
    fs::remove_all(d1);
    fs::remove_all(d2);
    write_synth(d1, a);
    write_synth(d2, b);
    for (const char* f : {"patients.csv", "prescriptions.csv", "events.csv", "srs_reports.csv", "ground_truth.json"}) {
        CAPTURE(f);
        CHECK(slurp(d1 / f) == slurp(d2 / f));
        CHECK_FALSE(slurp(d1 / f).empty());
    }

    SUBCASE("written files load back unchanged") {
        const auto gp = load_gp(d1 / "patients.csv", d1 / "prescriptions.csv", d1 / "events.csv");
        CHECK(gp == a.gp);
        const auto srs = load_srs(d1 / "srs_reports.csv");
        CHECK(srs.reports == a.srs.reports);
        CHECK(srs.rejected.empty());
    }
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("code universe") {
    auto cfg = small_config(5);
    cfg.planted_effects.push_back({"drug01", "XyZ", 3.0, 30});
    const auto out = generate(cfg);
    CHECK(out.codes.size() == 40);
    CHECK(std::is_sorted(out.codes.begin(), out.codes.end()));
    const std::set<EventCode> all(out.codes.begin(), out.codes.end());
    for (const auto& c : out.codes)
        for (int k = 1; k <= c.level(); ++k) CHECK(all.contains(c.ancestor(k)));
    CHECK(all.contains(EventCode::parse("XyZ")));
    CHECK(out.code_names.size() == out.codes.size());
    REQUIRE(out.truth.planted.size() == 1);
    CHECK(out.truth.planted[0].implied_odds_ratio > 3.0);
    CHECK(out.truth.planted[0].implied_odds_ratio < 3.1);
    for (const auto& e : out.gp.events) CHECK(all.contains(e.code));
}

TEST_CASE("config validation and JSON") {
    CHECK_NOTHROW(SynthConfig{}.validate());
    auto bad = SynthConfig{};
    bad.srs_reporting_prob = 1.5;
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
    bad = SynthConfig{};
    bad.planted_effects.push_back({"drug99", "A", 2.0, 30});
    CHECK_THROWS_AS(bad.validate(), PreconditionError);
    bad = SynthConfig{};
    bad.planted_effects.push_back({"drug01", "A•B", 2.0, 30});
    CHECK_THROWS_AS(bad.validate(), PreconditionError);

    CHECK_THROWS_AS(SynthConfig::from_json_text("{\"n_patiens\": 10}"), PreconditionError);
    CHECK_THROWS_AS(SynthConfig::from_json_text("{"), PreconditionError);
    CHECK_THROWS_AS(SynthConfig::from_json_text("{\"n_patients\": \"many\"}"), PreconditionError);

    const auto cfg = planted_config(9, 4.0);
    const auto again = SynthConfig::from_json_text(cfg.to_json_text());
    CHECK(again.to_json_text() == cfg.to_json_text());
    CHECK(again.planted_effects.size() == 1);
    CHECK(again.planted_effects[0].rate_multiplier == 4.0);

    CHECK(synth_drug_names(3) == std::vector<std::string>{"drug01", "drug02", "drug03"});
    CHECK(synth_drug_names(120)[0] == "drug001");
}

TEST_CASE("report missingness follows the configured floor") {
    SynthConfig cfg;
    cfg.seed = 17;
    cfg.n_patients = 3000;
    cfg.n_drugs = 8;
    cfg.n_event_codes = 60;
    cfg.srs_reporting_prob = 0.5;
    cfg.srs_missingness = {0.1, 0.1, 0.1, 0.51};
    const auto out = generate(cfg);
    REQUIRE(out.srs.reports.size() >= 10000);
    const auto m = compute_missingness(out.srs.reports);
    CHECK(m.any == doctest::Approx(0.51).epsilon(0.03 / 0.51));
    CHECK(m.age > 0.1);
}

TEST_CASE("brute-force oracle") {
    GpDataset d;
    d.patients.push_back({"p1", {}, Gender::Unknown, {}, {}});
    const Date t0 = Date::from_ymd(2003, 5, 1);
    d.prescriptions.push_back({"p1", DrugId("x"), t0});
    d.events.push_back({"p1", EventCode::parse("A"), t0 + 5});
    d.events.push_back({"p1", EventCode::parse("B"), t0});
    const BruteForceOracle o(d, WindowConfig::days(60));
    CHECK(o.size() == 1);
    CHECK(o.contingency("x", "A••••") == ContingencyTable{1, 0, 0, 0});
    CHECK(o.contingency("x", "B••••") == ContingencyTable{0, 0, 1, 0});
    CHECK(brute_force_contingency(d, WindowConfig::infinite(), DrugId("x"), EventKey(EventCode::parse("A"))) ==
          ContingencyTable{1, 0, 0, 0});
    CHECK_THROWS_AS(BruteForceOracle(d, WindowConfig::days(60), 1), PreconditionError);
}

TEST_CASE("planted effects are recovered") {
    const auto out = generate(planted_config(3, 5.0));
    const auto assoc = associate_gp(out.gp, WindowConfig::days(30));
    const auto t = assoc.contingency(DrugId("drug02"), EventKey(EventCode::parse("Qa")));
    CHECK(t.a >= 10);
    const auto s = ror(t);
    CHECK(s.signaled);
    CHECK(s.estimate > 2.0);
}

TEST_CASE("a null effect is rarely signaled") {
    int signaled = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto out = generate(planted_config(seed, 1.0));
        const auto assoc = associate_gp(out.gp, WindowConfig::days(30));
        const auto s = ror(assoc.contingency(DrugId("drug02"), EventKey(EventCode::parse("Qa"))),
                           ZeroPolicy::Haldane);
        signaled += s.signaled;
    }
    CHECK(signaled <= 2);
}
