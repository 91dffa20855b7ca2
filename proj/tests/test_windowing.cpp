#include <random>
#include <sstream>

#include "adrsig/errors.hpp"
#include "adrsig/synth.hpp"
#include "adrsig/windowing.hpp"
#include "doctest.h"

using namespace adrsig;

namespace {

const Date kDay0 = Date::from_ymd(2005, 1, 1);

GpDataset one_patient(std::vector<std::pair<std::string, long long>> rx,
                      std::vector<std::pair<std::string, long long>> ev) {
    GpDataset d;
    d.patients.push_back({"p1", {}, Gender::Unknown, {}, {}});
    for (auto& [drug, day] : rx) d.prescriptions.push_back({"p1", DrugId(drug), kDay0 + day});
    for (auto& [c, day] : ev) d.events.push_back({"p1", EventCode::parse(c), kDay0 + day});
    return d;
}

EventKey key(const char* c) { return EventKey(EventCode::parse(c)); }

AssociationSet gp_set(std::vector<std::tuple<std::string, std::string, std::string>> t) {
    std::vector<Association> triples;
    for (auto& [u, d, e] : t) triples.push_back({u, DrugId(d), key(e.c_str())});
    return AssociationSet::from_triples(AssociationSet::Kind::Gp, std::move(triples));
}

}  // namespace

TEST_CASE("window boundaries") {
    SUBCASE("inside a finite window") {
        const auto a = associate_gp(one_patient({{"D", 0}}, {{"E", 30}}), WindowConfig::days(60));
        CHECK(a.size() == 1);
    }
    SUBCASE("same-day events are excluded") {
        const auto a = associate_gp(one_patient({{"D", 0}}, {{"E", 0}}), WindowConfig::days(60));
        CHECK(a.empty());
    }
    SUBCASE("window end is inclusive") {
        CHECK(associate_gp(one_patient({{"D", 0}}, {{"E", 60}}), WindowConfig::days(60)).size() == 1);
        CHECK(associate_gp(one_patient({{"D", 0}}, {{"E", 61}}), WindowConfig::days(60)).empty());
    }
    SUBCASE("infinite window takes later events") {
        const auto a = associate_gp(one_patient({{"D", 0}}, {{"E", 90}}), WindowConfig::infinite());
        CHECK(a.size() == 1);
    }
    SUBCASE("events before the first prescription never associate") {
        const auto a = associate_gp(one_patient({{"D", 10}}, {{"E", 5}}), WindowConfig::infinite());
        CHECK(a.empty());
    }
    SUBCASE("repeat prescriptions form a union of windows") {
        const auto d = one_patient({{"D", 0}, {"D", 100}}, {{"E", 30}, {"E", 130}, {"E", 80}});
        const auto a = associate_gp(d, WindowConfig::days(60));
        CHECK(a.size() == 1);
        CHECK(a.contingency(DrugId("D"), key("E")).a == 1);
    }
    SUBCASE("window length must be positive") {
        CHECK_THROWS_AS(WindowConfig::days(0), PreconditionError);
    }
}

TEST_CASE("contingency cells") {
    const auto a = gp_set({{"p1", "D", "E"}, {"p2", "D", "F"}, {"p3", "G", "E"}, {"p4", "G", "F"}});
    CHECK(a.contingency(DrugId("D"), key("E")) == ContingencyTable{1, 1, 1, 1});

    const AssociationSet empty;
    CHECK_THROWS_AS(empty.contingency(DrugId("D"), key("E")), PreconditionError);
    CHECK_THROWS_AS(a.contingency(DrugId("Z"), key("E")), PreconditionError);
    CHECK_THROWS_AS(a.contingency(DrugId("D"), key("Q")), PreconditionError);
}

TEST_CASE("srs associations count reports") {
    SrsDataset srs;
    srs.reports.push_back({"r1", DrugId("X"), EventName("Y"), {}, {}, {}});
    CHECK(associate_srs(srs).size() == 1);
    srs.reports.push_back({"r2", DrugId("X"), EventName("Y"), {}, {}, {}});
    const auto a = associate_srs(srs);
    CHECK(a.size() == 2);
    CHECK(a.contingency(DrugId("x"), EventKey(EventName("y"))).a == 2);
    CHECK(associate_srs(SrsDataset{}).empty());
}

TEST_CASE("level truncation dedups") {
    const auto a = gp_set({{"p1", "D", "AB1a"}, {"p1", "D", "AB1b"}, {"p2", "G", "AC"}});
    const auto tables = contingency_at_level(a, DrugId("D"), 3);
    REQUIRE(tables.size() == 2);
    CHECK(tables.at(EventCode::parse("AB1")) == ContingencyTable{1, 0, 0, 1});
    CHECK(tables.at(EventCode::parse("AC")) == ContingencyTable{0, 1, 1, 0});

    const auto full = a.tables_for(DrugId("D"));
    const auto level5 = contingency_at_level(a, DrugId("D"), 5);
    REQUIRE(full.size() == level5.size());
    for (const auto& [k, t] : full) CHECK(level5.at(k.code()) == t);

    CHECK_THROWS_AS(contingency_at_level(a, DrugId("D"), 0), PreconditionError);
    CHECK_THROWS_AS(contingency_at_level(a, DrugId("D"), 6), PreconditionError);
}

TEST_CASE("level truncation matches brute-force remapping on mixed levels") {
    std::mt19937_64 rng(11);
    const std::vector<std::string> codes = {"A", "AB", "AB1", "AB1a", "AB1aZ", "AB2", "AC", "AC9x", "B", "B0"};
    const std::vector<std::string> drugs = {"d1", "d2", "d3"};
    std::vector<std::tuple<std::string, std::string, std::string>> raw;
    for (int i = 0; i < 400; ++i)
        raw.emplace_back("p" + std::to_string(rng() % 40), drugs[rng() % drugs.size()], codes[rng() % codes.size()]);
    const auto assoc = gp_set(raw);

    for (int level = 1; level <= 5; ++level) {
        std::set<std::tuple<std::string, std::string, std::string>> mapped;
        for (const auto& [u, d, c] : raw) {
            const auto code = EventCode::parse(c);
            mapped.emplace(u, d, code.ancestor(std::min(level, code.level())).str());
        }
        for (const auto& drug : drugs) {
            for (const auto& [code, table] : contingency_at_level(assoc, DrugId(drug), level)) {
                ContingencyTable expect;
                for (const auto& [u, d, c] : mapped) {
                    const bool dm = d == drug, em = c == code.str();
                    if (dm && em) ++expect.a;
                    else if (em) ++expect.b;
                    else if (dm) ++expect.c;
                    else ++expect.d;
                }
                CHECK(table == expect);
            }
        }
    }
}

TEST_CASE("properties on synthetic data") {
    SynthConfig cfg;
    cfg.seed = 3;
    cfg.n_patients = 200;
    cfg.n_drugs = 4;
    cfg.n_event_codes = 30;
    cfg.observation_days = 365;
    cfg.background_prescription_rate = 6;
    cfg.background_event_rate = 12;
    const auto data = generate(cfg).gp;

    const auto short_w = associate_gp(data, WindowConfig::days(30));
    const auto mid_w = associate_gp(data, WindowConfig::days(90));
    const auto inf_w = associate_gp(data, WindowConfig::infinite());

    SUBCASE("monotone in window length") {
        const auto s = short_w.triples(), m = mid_w.triples(), i = inf_w.triples();
        CHECK(std::includes(m.begin(), m.end(), s.begin(), s.end()));
        CHECK(std::includes(i.begin(), i.end(), m.begin(), m.end()));
        CHECK(s.size() < i.size());
    }
    SUBCASE("marginals are conserved") {
        for (const auto& drug : mid_w.drugs()) {
            for (const auto& [event, t] : mid_w.tables_for(drug)) {
                CHECK(t.total() == mid_w.size());
                CHECK(t.a + t.c == mid_w.drug_total(drug));
            }
        }
    }
    SUBCASE("duplicated prescriptions change nothing") {
        auto doubled = data;
        doubled.prescriptions.insert(doubled.prescriptions.end(), data.prescriptions.begin(),
                                     data.prescriptions.end());
        CHECK(associate_gp(doubled, WindowConfig::days(90)) == mid_w);
    }
    SUBCASE("thread count does not change the result") {
        CHECK(associate_gp(data, WindowConfig::days(90), 4) == mid_w);
        CHECK(associate_gp(data, WindowConfig::days(90), 0) == mid_w);
    }
    SUBCASE("pipeline equals brute force") {
        const BruteForceOracle oracle(data, WindowConfig::days(90));
        CHECK(oracle.size() == mid_w.size());
        for (const auto& drug : mid_w.drugs())
            for (const auto& [event, t] : mid_w.tables_for(drug))
                CHECK(oracle.contingency(drug.str(), event.str()) == t);
    }
}

TEST_CASE("association export") {
    const auto a = gp_set({{"p2", "D", "E"}, {"p1", "D", "AB1a"}});
    std::ostringstream out;
    a.write_csv(out);
    CHECK(out.str() == "unit_id,drug,event\np1,d,AB1a•\np2,d,E••••\n");
}
