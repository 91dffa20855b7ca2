#include <filesystem>
#include <fstream>
#include <sstream>

#include "adrsig/csv.hpp"
#include "adrsig/errors.hpp"
#include "adrsig/ingest.hpp"
#include "doctest.h"

using namespace adrsig;

namespace {

const char* kPatients =
    "patient_id,birth_date,gender,registration_date,death_date\n"
    "p1,1950-01-01,M,2000-01-01,\n"
    "p2,,F,,\n"
    "p3,1970-06-15,,2001-03-01,2010-01-01\n";
const char* kPrescriptions =
    "patient_id,drug,date\n"
    "p1,Amoxicillin,2005-01-01\n"
    "p2,amoxicillin,2005-02-01\n"
    "p3,ethinylestradiol,2005-03-01\n";
const char* kEvents =
    "patient_id,code,date\n"
    "p1,AB1a•,2005-01-10\n"
    "p2,AB1,2005-02-03\n"
    "p3,\"C••••\",2005-04-01\n";

GpDataset load(const std::string& p, const std::string& rx, const std::string& ev) {
    std::istringstream ps(p), rs(rx), es(ev);
    return load_gp(ps, rs, es);
}

}  // namespace

TEST_CASE("csv reader handles quoting") {
    std::istringstream in("a,\"b,c\",\"d \"\"q\"\"\"\r\n\"multi\nline\",x,\n");
    csv::Reader r(in, "t.csv");
    auto rec = r.next();
    REQUIRE(rec);
    CHECK(rec->fields == std::vector<std::string>{"a", "b,c", "d \"q\""});
    rec = r.next();
    REQUIRE(rec);
    CHECK(rec->line == 2);
    CHECK(rec->fields == std::vector<std::string>{"multi\nline", "x", ""});
    CHECK_FALSE(r.next());

    std::istringstream bad("\"open\n");
    csv::Reader rb(bad, "bad.csv");
    CHECK_THROWS_AS(rb.next(), ParseError);

    std::ostringstream out;
    csv::write_row(out, {"plain", "a,b", "say \"hi\""});
    CHECK(out.str() == "plain,\"a,b\",\"say \"\"hi\"\"\"\n");
}

TEST_CASE("load_gp reads valid files") {
    const auto data = load(kPatients, kPrescriptions, kEvents);
    CHECK(data.patients.size() == 3);
    CHECK(data.prescriptions.size() == 3);
    CHECK(data.events.size() == 3);
    CHECK(data.patients[1].gender == Gender::Female);
    CHECK_FALSE(data.patients[1].birth_date);
    CHECK(data.prescriptions[0].drug == DrugId("amoxicillin"));
    CHECK(data.events[1].code == EventCode::parse("AB1••"));
}

TEST_CASE("load_gp rejects bad rows with file and line") {
    SUBCASE("six-symbol code") {
        try {
            load(kPatients, kPrescriptions,
                 "patient_id,code,date\np1,AB1a•,2005-01-10\np2,AB1abc,2005-02-03\n");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.file() == "events.csv");
            CHECK(e.line() == 3);
        }
    }
    SUBCASE("orphan patient") {
        try {
            load(kPatients, "patient_id,drug,date\np9,x,2005-01-01\np8,x,2005-01-01\n", kEvents);
            FAIL("expected a referential error");
        } catch (const DataError& e) {
            const std::string msg = e.what();
            CHECK(msg.find("p8") != std::string::npos);
            CHECK(msg.find("p9") != std::string::npos);
        }
    }
    SUBCASE("non ISO date") {
        CHECK_THROWS_AS(load(kPatients, "patient_id,drug,date\np1,x,01/02/2005\n", kEvents), ParseError);
    }
    SUBCASE("date outside range") {
        CHECK_THROWS_AS(load(kPatients, "patient_id,drug,date\np1,x,1850-01-01\n", kEvents), ParseError);
    }
    SUBCASE("death before birth") {
        CHECK_THROWS_AS(load("patient_id,birth_date,gender,registration_date,death_date\n"
                             "p1,1950-01-01,M,,1940-01-01\n",
                             "patient_id,drug,date\n", "patient_id,code,date\n"),
                        ParseError);
    }
    SUBCASE("bad header") {
        CHECK_THROWS_AS(load(kPatients, "patient,drug,date\n", kEvents), ParseError);
    }
    SUBCASE("wrong width") {
        CHECK_THROWS_AS(load(kPatients, "patient_id,drug,date\np1,x\n", kEvents), ParseError);
    }
    SUBCASE("duplicate patient") {
        CHECK_THROWS_AS(load("patient_id,birth_date,gender,registration_date,death_date\np1,,,,\np1,,,,\n",
                             "patient_id,drug,date\n", "patient_id,code,date\n"),
                        DataError);
    }
}

TEST_CASE("load_gp keeps duplicate prescriptions") {
    const auto data = load(kPatients,
                           "patient_id,drug,date\np1,x,2005-01-01\np1,x,2005-01-01\n", kEvents);
    CHECK(data.prescriptions.size() == 2);
}

TEST_CASE("GP datasets survive a CSV round trip") {
    const auto data = load(kPatients, kPrescriptions, kEvents);
    const auto dir = std::filesystem::temp_directory_path() / "adrsig_ingest_roundtrip";
    std::filesystem::remove_all(dir);
    write_gp(dir, data);
    const auto again = load_gp(dir / "patients.csv", dir / "prescriptions.csv", dir / "events.csv");
    CHECK(again == data);
    LoadOptions threaded;
    threaded.threads = 3;
    CHECK(load_gp(dir / "patients.csv", dir / "prescriptions.csv", dir / "events.csv", threaded) == data);
    std::filesystem::remove_all(dir);
}

TEST_CASE("load_srs counts rejects and missingness") {
    SUBCASE("51 of 100 rows incomplete") {
        std::ostringstream csv;
        csv << "report_id,drug,event_name,age,gender,event_date\n";
        for (int i = 0; i < 100; ++i) {
            const bool incomplete = i < 51;
            const int which = i % 3;
            csv << "r" << i << ",drug" << (i % 4) << ",Nausea,"
                << ((incomplete && which == 0) ? "" : "40") << ","
                << ((incomplete && which == 1) ? "" : "F") << ","
                << ((incomplete && which == 2) ? "" : "2005-01-01") << "\n";
        }
        std::istringstream in(csv.str());
        const auto srs = load_srs(in);
        CHECK(srs.reports.size() == 100);
        CHECK(srs.rejected.empty());
        CHECK(srs.missingness.any == doctest::Approx(0.51).epsilon(1e-12));
        CHECK(srs.missingness.age == doctest::Approx(17 / 100.0));
    }
    SUBCASE("empty input") {
        std::istringstream in("report_id,drug,event_name,age,gender,event_date\n");
        const auto srs = load_srs(in);
        CHECK(srs.reports.empty());
        CHECK(srs.missingness == Missingness{});
    }
    SUBCASE("empty drug is rejected, run continues") {
        std::istringstream in(
            "report_id,drug,event_name,age,gender,event_date\n"
            "r1,,nausea,,,\n"
            "r2,x,nausea,,,\n"
            "r3,x,,,,\n"
            "r4,x,rash,abc,,\n"
            "r5,x,rash\n");
        const auto srs = load_srs(in);
        CHECK(srs.reports.size() == 1);
        REQUIRE(srs.rejected.size() == 4);
        CHECK(srs.rejected[0].line == 2);
        CHECK(srs.rejected[0].reason == "missing drug");
        CHECK(srs.missingness.any == 1.0);
    }
    SUBCASE("bad header is fatal") {
        std::istringstream in("id,drug,event\n");
        CHECK_THROWS_AS(load_srs(in), ParseError);
    }
}

TEST_CASE("loading is deterministic") {
    std::istringstream a("report_id,drug,event_name,age,gender,event_date\nr1,X,Rash,30,M,2004-01-01\n");
    std::istringstream b("report_id,drug,event_name,age,gender,event_date\nr1,X,Rash,30,M,2004-01-01\n");
    CHECK(load_srs(a) == load_srs(b));
}
