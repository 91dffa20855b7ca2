#include <cmath>
#include <random>
#include <sstream>

#include "adrsig/disproportionality.hpp"
#include "adrsig/errors.hpp"
#include "doctest.h"

using namespace adrsig;

namespace {

// reference values from tests/oracles/worked_examples.py (mpmath, 50 digits)
constexpr double kRorSe = 0.43779751788545657;
constexpr double kRorLow = 0.8479480096069081;
constexpr double kRorHigh = 4.7172703452117551;
constexpr double kPrrSe = 0.32659863237109041;
constexpr double kPrrLow = 0.92263872819011137;
constexpr double kHaldanePrrSe = 0.47392317373512619;

bool close(double x, double y, double rel = 1e-13) { return std::fabs(x - y) <= rel * std::fabs(y); }

ContingencyTable random_table(std::mt19937_64& rng, std::uint64_t max_cell) {
    std::uniform_int_distribution<std::uint64_t> cell(1, max_cell);
    return {cell(rng), cell(rng), cell(rng), cell(rng)};
}

}  // namespace

TEST_CASE("ror worked examples") {
    const auto sym = ror({5, 5, 5, 5});
    CHECK(sym.estimate == 1.0);
    CHECK_FALSE(sym.signaled);

    const auto s = ror({10, 20, 30, 120});
    CHECK(s.estimate == 2.0);
    CHECK(close(s.se_ln, kRorSe));
    CHECK(close(s.ci_low, kRorLow));
    CHECK(close(s.ci_high, kRorHigh));
    CHECK_FALSE(s.signaled);
    CHECK_FALSE(s.correction_applied);
    CHECK(s.method == Method::Ror);

    try {
        ror({0, 5, 5, 5});
        FAIL("expected UndefinedStatistic");
    } catch (const UndefinedStatistic& e) {
        CHECK(e.cell() == 'a');
    }
}

TEST_CASE("prr worked examples") {
    CHECK(prr({5, 5, 5, 5}).estimate == 1.0);
    CHECK_FALSE(prr({5, 5, 5, 5}).signaled);

    const auto s = prr({10, 20, 30, 120});
    CHECK(close(s.estimate, 1.75));
    CHECK(close(s.se_ln, kPrrSe));
    CHECK(close(s.ci_low, kPrrLow));

    const auto h = prr({3, 0, 7, 10}, ZeroPolicy::Haldane);
    CHECK(h.correction_applied);
    CHECK(close(h.estimate, 7.0));
    CHECK(close(h.se_ln, kHaldanePrrSe));
    CHECK_THROWS_AS(prr({3, 0, 7, 10}), UndefinedStatistic);
}

TEST_CASE("haldane only corrects tables with a zero") {
    CHECK_FALSE(ror({1, 2, 3, 4}, ZeroPolicy::Haldane).correction_applied);
    const auto h = ror({0, 2, 3, 4}, ZeroPolicy::Haldane);
    CHECK(h.correction_applied);
    CHECK(close(h.estimate, (0.5 / 2.5) / (3.5 / 4.5)));
}

TEST_CASE("signal flag is the log-scale lower bound") {
    const auto s = ror({40, 20, 30, 120});
    CHECK(s.signaled == (std::log(s.estimate) - kZ95 * s.se_ln > 0));
    CHECK(s.signaled);
    CHECK(s.ci_low > 1.0);
}

TEST_CASE("statistic properties on random tables") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 2000; ++i) {
        const auto t = random_table(rng, 500);
        for (auto method : {Method::Ror, Method::Prr}) {
            const auto s = compute(method, t, ZeroPolicy::Strict);
            CHECK(s.ci_low <= s.estimate);
            CHECK(s.estimate <= s.ci_high);
            CHECK(s.signaled == (s.ci_low > 1.0));
            if (s.signaled) CHECK(s.estimate > 1.0);
            CHECK(close(s.ci_low, std::exp(std::log(s.estimate) - 1.96 * s.se_ln), 1e-12));
        }
        const auto r = ror(t);
        const auto swapped = ror({t.c, t.d, t.a, t.b});
        CHECK(close(r.estimate * swapped.estimate, 1.0, 1e-12));

        const std::uint64_t k = 2 + rng() % 7;
        const auto scaled = ror({t.a * k, t.b * k, t.c * k, t.d * k});
        CHECK(close(scaled.estimate, r.estimate, 1e-12));
        CHECK(scaled.se_ln < r.se_ln);

        const double lr = std::log(r.estimate);
        const double lp = std::log(prr(t).estimate);
        CHECK(((lr > 0) - (lr < 0)) == ((lp > 0) - (lp < 0)));
    }
}

TEST_CASE("rank_signals ordering") {
    std::vector<Association> triples;
    auto add = [&](const std::string& u, const char* d, const char* e) {
        triples.push_back({u, DrugId(d), EventKey(EventName(e))});
    };
    // drug D: e_hi 4 of 6, e_lo 2 of 6; other drug: e_hi 1 of 5, e_lo 4 of 5
    for (int i = 0; i < 4; ++i) add("r" + std::to_string(i), "D", "e_hi");
    for (int i = 4; i < 6; ++i) add("r" + std::to_string(i), "D", "e_lo");
    add("r6", "G", "e_hi");
    for (int i = 7; i < 11; ++i) add("r" + std::to_string(i), "G", "e_lo");
    const auto assoc = AssociationSet::from_triples(AssociationSet::Kind::Srs, triples);

    const auto ranking = rank_signals(assoc, DrugId("D"), Method::Ror, ZeroPolicy::Strict);
    REQUIRE(ranking.ranked.size() == 2);
    CHECK(ranking.ranked[0].event.str() == "e_hi");
    CHECK(ranking.ranked[0].stats.estimate == doctest::Approx(8.0));
    CHECK(ranking.ranked[1].stats.estimate == doctest::Approx(0.125));
    CHECK(ranking.undefined.empty());
    CHECK(rank_signals(assoc, DrugId("D"), Method::Ror, ZeroPolicy::Strict, 4).ranked.size() == 2);
}

TEST_CASE("rank_tables ties and undefined entries") {
    std::map<EventKey, ContingencyTable> tables;
    tables.emplace(EventKey(EventName("zeta")), ContingencyTable{2, 2, 2, 2});
    tables.emplace(EventKey(EventName("alpha")), ContingencyTable{3, 3, 3, 3});
    tables.emplace(EventKey(EventName("mid")), ContingencyTable{0, 3, 3, 3});
    tables.emplace(EventKey(EventName("best")), ContingencyTable{9, 1, 1, 9});

    const auto strict = rank_tables(tables, Method::Ror, ZeroPolicy::Strict);
    REQUIRE(strict.ranked.size() == 3);
    CHECK(strict.ranked[0].event.str() == "best");
    CHECK(strict.ranked[1].event.str() == "alpha");
    CHECK(strict.ranked[2].event.str() == "zeta");
    REQUIRE(strict.undefined.size() == 1);
    CHECK(strict.undefined[0].event.str() == "mid");
    CHECK(strict.undefined[0].zero_cell == 'a');

    const auto haldane = rank_tables(tables, Method::Ror, ZeroPolicy::Haldane);
    CHECK(haldane.ranked.size() == 4);
    CHECK(haldane.undefined.empty());

    std::ostringstream out;
    write_signals_csv(out, strict, Method::Ror);
    const std::string text = out.str();
    CHECK(text.rfind("event,method,a,b,c,d,estimate,se_ln,ci_low,ci_high,signaled,correction_applied\n", 0) == 0);
    CHECK(text.find("mid,ror,0,3,3,3,,,,,false,false\n") != std::string::npos);
    CHECK(text.find("alpha,ror,3,3,3,3,1,") != std::string::npos);
}

TEST_CASE("parsing enums") {
    CHECK(parse_method("ROR") == Method::Ror);
    CHECK(parse_method("prr") == Method::Prr);
    CHECK_FALSE(parse_method("bcpnn"));
    CHECK(parse_zero_policy("Haldane") == ZeroPolicy::Haldane);
    CHECK_FALSE(parse_zero_policy("ignore"));
}
