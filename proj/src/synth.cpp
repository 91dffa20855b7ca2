#include "adrsig/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include "adrsig/errors.hpp"
#include "adrsig/format.hpp"
#include "json.hpp"

namespace adrsig {

using json = nlohmann::json;

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::string_view kSymbols =
    "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

std::uint64_t splitmix64(std::uint64_t x) {
    x += kGolden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) : eng_(splitmix64(seed + stream * kGolden)) {}

    /// [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// [0, n)
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    long long between(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 eng_;
};

/// Arrival days of a homogeneous Poisson process with `rate_per_day` over
/// (0, length], as 1-based day offsets.
std::vector<long long> poisson_days(Rng& rng, double rate_per_day, long long length) {
    std::vector<long long> out;
    if (rate_per_day <= 0.0 || length <= 0) return out;
    double t = 0.0;
    for (;;) {
        t += rng.exponential(rate_per_day);
        if (t > static_cast<double>(length)) break;
        out.push_back(std::max(1LL, static_cast<long long>(std::ceil(t))));
    }
    return out;
}

std::string padded(std::string_view prefix, std::size_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return std::string(prefix) + digits;
}

std::size_t digits_of(std::size_t n) { return std::to_string(std::max<std::size_t>(n, 1)).size(); }

std::vector<EventCode> build_code_universe(const SynthConfig& cfg) {
    std::set<EventCode> codes;
    for (const auto& p : cfg.planted_effects) {
        const auto code = EventCode::parse(p.event_code);
        for (int k = 1; k <= code.level(); ++k) codes.insert(code.ancestor(k));
    }
    if (codes.size() > cfg.n_event_codes)
        throw PreconditionError("n_event_codes too small for the planted codes and their ancestors");

    Rng rng(cfg.seed, 0);
    std::vector<EventCode> expandable;
    for (const auto& c : codes)
        if (c.level() < EventCode::kLength) expandable.push_back(c);
    std::size_t attempts = 0;
    while (codes.size() < cfg.n_event_codes) {
        if (++attempts > 1000 * cfg.n_event_codes + 100000)
            throw PreconditionError("could not generate the requested number of event codes");
        // one slot in (expandable + 1) starts a new top-level code
        const auto pick = rng.below(expandable.size() + 1);
        std::string text;
        if (pick == expandable.size()) {
            text = std::string(1, kSymbols[rng.below(kSymbols.size())]);
        } else {
            const EventCode& parent = expandable[pick];
            const std::string ptext = parent.str();
            text = ptext.substr(0, static_cast<std::size_t>(parent.level()));
            text += kSymbols[rng.below(kSymbols.size())];
        }
        const auto code = EventCode::parse(text);
        if (!codes.insert(code).second) continue;
        if (code.level() < EventCode::kLength) expandable.push_back(code);
    }
    return {codes.begin(), codes.end()};
}

struct PatientDraw {
    PatientRecord record;
    std::vector<PrescriptionEvent> prescriptions;
    std::vector<ClinicalEvent> events;
    std::vector<SpontaneousReport> reports;
};

struct PlantedIndex {
    DrugId drug;
    std::size_t code_index;
    double multiplier;
    long long onset;
};

void blank_fields(Rng& rng, const SrsMissingness& miss, SpontaneousReport& r) {
    bool blanked = false;
    if (rng.bernoulli(miss.age)) r.age.reset(), blanked = true;
    if (rng.bernoulli(miss.gender)) r.gender.reset(), blanked = true;
    if (rng.bernoulli(miss.event_date)) r.event_date.reset(), blanked = true;
    const double base = 1.0 - (1.0 - miss.age) * (1.0 - miss.gender) * (1.0 - miss.event_date);
    // top up so P(any field missing) reaches miss.any
    const double extra = (miss.any > base && base < 1.0) ? (miss.any - base) / (1.0 - base) : 0.0;
    const double u = rng.uniform();
    if (blanked || !(u < extra)) return;
    switch (rng.below(3)) {
        case 0: r.age.reset(); break;
        case 1: r.gender.reset(); break;
        default: r.event_date.reset(); break;
    }
}

PatientDraw draw_patient(const SynthConfig& cfg, std::size_t index, const std::string& patient_id,
                         const std::vector<DrugId>& drugs, const std::vector<EventCode>& codes,
                         const std::vector<EventName>& names,
                         const std::vector<PlantedIndex>& planted) {
    Rng rng(cfg.seed, index + 1);
    PatientDraw out;
    const Date base = Date::from_ymd(2000, 1, 1);
    const Date reg = base + rng.between(0, 364);
    const long long span = cfg.observation_days;
    out.record.patient_id = patient_id;
    out.record.registration_date = reg;
    out.record.birth_date = reg + -rng.between(18 * 365, 80 * 365);
    out.record.gender = rng.bernoulli(0.5) ? Gender::Female : Gender::Male;

    // day offsets from reg, in [0, span)
    for (long long day : poisson_days(rng, cfg.background_prescription_rate / 365.0, span)) {
        const auto& drug = drugs[rng.below(drugs.size())];
        out.prescriptions.push_back({patient_id, drug, reg + (day - 1)});
    }
    std::vector<std::pair<long long, std::size_t>> events;
    for (long long day : poisson_days(rng, cfg.background_event_rate / 365.0, span))
        events.emplace_back(day - 1, rng.below(codes.size()));

    const double code_rate = cfg.background_event_rate / 365.0 / static_cast<double>(codes.size());
    for (const auto& eff : planted) {
        std::vector<long long> starts;
        for (const auto& rx : out.prescriptions)
            if (rx.drug == eff.drug) starts.push_back(rx.date - reg);
        if (eff.multiplier >= 1.0) {
            for (long long t0 : starts) {
                for (long long off : poisson_days(rng, code_rate * (eff.multiplier - 1.0), eff.onset)) {
                    if (t0 + off < span) events.emplace_back(t0 + off, eff.code_index);
                }
            }
        } else {
            std::vector<std::pair<long long, std::size_t>> kept;
            for (const auto& ev : events) {
                const bool exposed =
                    ev.second == eff.code_index &&
                    std::any_of(starts.begin(), starts.end(), [&](long long t0) {
                        return ev.first > t0 && ev.first <= t0 + eff.onset;
                    });
                if (exposed && !rng.bernoulli(eff.multiplier)) continue;
                kept.push_back(ev);
            }
            events = std::move(kept);
        }
    }

    std::sort(events.begin(), events.end());
    for (const auto& [day, code] : events) out.events.push_back({patient_id, codes[code], reg + day});
    std::stable_sort(out.prescriptions.begin(), out.prescriptions.end(),
                     [](const auto& x, const auto& y) { return x.date < y.date; });

    if (cfg.srs_reporting_prob > 0.0) {
        for (const auto& rx : out.prescriptions) {
            for (std::size_t e = 0; e < events.size(); ++e) {
                const Date when = out.events[e].date;
                if (!(when > rx.date && when - rx.date <= cfg.srs_window_days)) continue;
                if (!rng.bernoulli(cfg.srs_reporting_prob)) continue;
                SpontaneousReport r{"", rx.drug, names[events[e].second], {}, {}, {}};
                r.age = std::floor(static_cast<double>(when - *out.record.birth_date) / 365.25);
                r.gender = out.record.gender;
                r.event_date = when;
                blank_fields(rng, cfg.srs_missingness, r);
                out.reports.push_back(std::move(r));
            }
        }
    }
    return out;
}

double odds(double p) { return p / (1.0 - p); }

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    return j.contains(key) ? j.at(key).get<T>() : fallback;
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
    for (const auto& [key, _] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw PreconditionError(std::string(what) + ": unknown key \"" + key + "\"");
    }
}

}  // namespace

void SynthConfig::validate() const {
    auto fail = [](const std::string& what) { throw PreconditionError("synth config: " + what); };
    auto prob = [&](double p, const char* name) {
        if (!(p >= 0.0 && p <= 1.0)) fail(std::string(name) + " must lie in [0, 1]");
    };
    if (n_drugs < 1) fail("n_drugs must be >= 1");
    if (n_event_codes < 1) fail("n_event_codes must be >= 1");
    // registration falls in 2000, so this keeps every date before 2021
    if (observation_days < 1 || observation_days > 7300) fail("observation_days must lie in [1, 7300]");
    if (!(background_prescription_rate >= 0.0) || !std::isfinite(background_prescription_rate))
        fail("background_prescription_rate must be >= 0");
    if (!(background_event_rate >= 0.0) || !std::isfinite(background_event_rate))
        fail("background_event_rate must be >= 0");
    prob(srs_reporting_prob, "srs_reporting_prob");
    if (srs_window_days < 1) fail("srs_window_days must be >= 1");
    prob(srs_missingness.age, "srs_missingness.age");
    prob(srs_missingness.gender, "srs_missingness.gender");
    prob(srs_missingness.event_date, "srs_missingness.event_date");
    prob(srs_missingness.any, "srs_missingness.any");

    const auto drugs = synth_drug_names(n_drugs);
    for (const auto& p : planted_effects) {
        if (std::find(drugs.begin(), drugs.end(), DrugId(p.drug).str()) == drugs.end())
            fail("planted drug \"" + p.drug + "\" is not a generated drug (" + drugs.front() +
                 ".." + drugs.back() + ")");
        EventCode::parse(p.event_code);
        if (!(p.rate_multiplier > 0.0) || !std::isfinite(p.rate_multiplier))
            fail("rate_multiplier must be > 0");
        if (p.onset_window_days < 1) fail("onset_window_days must be >= 1");
    }
}

SynthConfig SynthConfig::from_json_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("synth config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw PreconditionError("synth config: top level must be an object");
    check_keys(j,
               {"seed", "n_patients", "n_drugs", "n_event_codes", "observation_days",
                "background_prescription_rate", "background_event_rate", "planted_effects",
                "srs_reporting_prob", "srs_window_days", "srs_missingness"},
               "synth config");
    SynthConfig c;
    try {
        c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
        c.n_patients = get_or<std::size_t>(j, "n_patients", c.n_patients);
        c.n_drugs = get_or<std::size_t>(j, "n_drugs", c.n_drugs);
        c.n_event_codes = get_or<std::size_t>(j, "n_event_codes", c.n_event_codes);
        c.observation_days = get_or<long long>(j, "observation_days", c.observation_days);
        c.background_prescription_rate =
            get_or<double>(j, "background_prescription_rate", c.background_prescription_rate);
        c.background_event_rate = get_or<double>(j, "background_event_rate", c.background_event_rate);
        c.srs_reporting_prob = get_or<double>(j, "srs_reporting_prob", c.srs_reporting_prob);
        c.srs_window_days = get_or<long long>(j, "srs_window_days", c.srs_window_days);
        if (j.contains("srs_missingness")) {
            const auto& m = j.at("srs_missingness");
            check_keys(m, {"age", "gender", "event_date", "any"}, "srs_missingness");
            c.srs_missingness.age = get_or<double>(m, "age", 0.0);
            c.srs_missingness.gender = get_or<double>(m, "gender", 0.0);
            c.srs_missingness.event_date = get_or<double>(m, "event_date", 0.0);
            c.srs_missingness.any = get_or<double>(m, "any", 0.0);
        }
        for (const auto& p : j.value("planted_effects", json::array())) {
            check_keys(p, {"drug", "event_code", "rate_multiplier", "onset_window_days"},
                       "planted_effects");
            c.planted_effects.push_back({p.at("drug").get<std::string>(),
                                         p.at("event_code").get<std::string>(),
                                         p.at("rate_multiplier").get<double>(),
                                         get_or<long long>(p, "onset_window_days", 30)});
        }
    } catch (const json::exception& e) {
        throw PreconditionError(std::string("synth config: ") + e.what());
    }
    c.validate();
    return c;
}

std::string SynthConfig::to_json_text() const {
    json planted = json::array();
    for (const auto& p : planted_effects)
        planted.push_back({{"drug", p.drug},
                           {"event_code", p.event_code},
                           {"rate_multiplier", p.rate_multiplier},
                           {"onset_window_days", p.onset_window_days}});
    json j = {{"seed", seed},
              {"n_patients", n_patients},
              {"n_drugs", n_drugs},
              {"n_event_codes", n_event_codes},
              {"observation_days", observation_days},
              {"background_prescription_rate", background_prescription_rate},
              {"background_event_rate", background_event_rate},
              {"planted_effects", planted},
              {"srs_reporting_prob", srs_reporting_prob},
              {"srs_window_days", srs_window_days},
              {"srs_missingness",
               {{"age", srs_missingness.age},
                {"gender", srs_missingness.gender},
                {"event_date", srs_missingness.event_date},
                {"any", srs_missingness.any}}}};
    return j.dump(2);
}

std::vector<std::string> synth_drug_names(std::size_t n_drugs) {
    std::vector<std::string> out;
    const std::size_t width = std::max<std::size_t>(2, digits_of(n_drugs));
    for (std::size_t i = 1; i <= n_drugs; ++i) out.push_back(padded("drug", i, width));
    return out;
}

std::string GroundTruth::to_json_text() const {
    json arr = json::array();
    for (const auto& p : planted)
        arr.push_back({{"drug", p.drug.str()},
                       {"event_code", p.event_code.str()},
                       {"event_name", p.event_name.str()},
                       {"rate_multiplier", p.rate_multiplier},
                       {"onset_window_days", p.onset_window_days},
                       {"background_rate_per_day", p.background_rate_per_day},
                       {"implied_odds_ratio", p.implied_odds_ratio}});
    return json{{"planted", arr}}.dump(2);
}

SynthOutput generate(const SynthConfig& cfg) {
    cfg.validate();
    SynthOutput out;
    out.codes = build_code_universe(cfg);
    const std::size_t name_width = std::max<std::size_t>(4, digits_of(out.codes.size()));
    for (std::size_t i = 0; i < out.codes.size(); ++i)
        out.code_names.emplace_back(padded("event", i + 1, name_width));

    std::vector<DrugId> drugs;
    for (const auto& name : synth_drug_names(cfg.n_drugs)) drugs.emplace_back(name);

    const double code_rate = cfg.background_event_rate / 365.0 / static_cast<double>(out.codes.size());
    std::vector<PlantedIndex> planted;
    for (const auto& p : cfg.planted_effects) {
        const auto code = EventCode::parse(p.event_code);
        const auto idx = static_cast<std::size_t>(
            std::lower_bound(out.codes.begin(), out.codes.end(), code) - out.codes.begin());
        planted.push_back({DrugId(p.drug), idx, p.rate_multiplier, p.onset_window_days});

        const double w = static_cast<double>(p.onset_window_days);
        const double p0 = -std::expm1(-code_rate * w);
        const double p1 = -std::expm1(-code_rate * p.rate_multiplier * w);
        out.truth.planted.push_back({DrugId(p.drug), code, out.code_names[idx], p.rate_multiplier,
                                     p.onset_window_days, code_rate,
                                     p0 > 0.0 ? odds(p1) / odds(p0) : p.rate_multiplier});
    }

    const std::size_t pid_width = std::max<std::size_t>(6, digits_of(cfg.n_patients));
    std::size_t report_seq = 0;
    for (std::size_t i = 0; i < cfg.n_patients; ++i) {
        auto draw = draw_patient(cfg, i, padded("P", i + 1, pid_width), drugs, out.codes,
                                 out.code_names, planted);
        out.gp.patients.push_back(std::move(draw.record));
        std::move(draw.prescriptions.begin(), draw.prescriptions.end(),
                  std::back_inserter(out.gp.prescriptions));
        std::move(draw.events.begin(), draw.events.end(), std::back_inserter(out.gp.events));
        for (auto& r : draw.reports) {
            r.report_id = padded("R", ++report_seq, 8);
            out.srs.reports.push_back(std::move(r));
        }
    }
    out.srs.missingness = compute_missingness(out.srs.reports);
    return out;
}

void write_synth(const std::filesystem::path& dir, const SynthOutput& out) {
    write_gp(dir, out.gp);
    std::ofstream srs(dir / "srs_reports.csv", std::ios::binary | std::ios::trunc);
    if (!srs) throw DataError("cannot write " + (dir / "srs_reports.csv").string());
    write_srs(srs, out.srs.reports);
    std::ofstream truth(dir / "ground_truth.json", std::ios::binary | std::ios::trunc);
    if (!truth) throw DataError("cannot write " + (dir / "ground_truth.json").string());
    truth << out.truth.to_json_text() << '\n';
}

BruteForceOracle::BruteForceOracle(const GpDataset& data, const WindowConfig& window,
                                   std::uint64_t max_pair_checks) {
    std::map<std::string, std::vector<std::size_t>> rx_of, ev_of;
    for (std::size_t i = 0; i < data.prescriptions.size(); ++i)
        rx_of[data.prescriptions[i].patient_id].push_back(i);
    for (std::size_t i = 0; i < data.events.size(); ++i) ev_of[data.events[i].patient_id].push_back(i);

    for (const auto& [patient, rxs] : rx_of) {
        auto it = ev_of.find(patient);
        if (it != ev_of.end()) pair_checks_ += rxs.size() * it->second.size();
    }
    if (pair_checks_ > max_pair_checks)
        throw PreconditionError("brute-force oracle: " + std::to_string(pair_checks_) +
                                " pair checks exceed the limit of " + std::to_string(max_pair_checks));

    for (const auto& patient : data.patients) {
        auto rx_it = rx_of.find(patient.patient_id);
        auto ev_it = ev_of.find(patient.patient_id);
        if (rx_it == rx_of.end() || ev_it == ev_of.end()) continue;
        for (std::size_t r : rx_it->second) {
            const auto& rx = data.prescriptions[r];
            const long long start = rx.date.days_since_epoch();
            for (std::size_t e : ev_it->second) {
                const auto& ev = data.events[e];
                const long long t = ev.date.days_since_epoch();
                if (t <= start) continue;
                if (!window.is_infinite() && t > start + window.length_days()) continue;
                triples_.emplace(patient.patient_id, rx.drug.str(), ev.code.str());
            }
        }
    }
}

ContingencyTable BruteForceOracle::contingency(const std::string& drug, const std::string& event) const {
    ContingencyTable t;
    for (const auto& [unit, d, e] : triples_) {
        const bool dm = d == drug;
        const bool em = e == event;
        if (dm && em)
            ++t.a;
        else if (em)
            ++t.b;
        else if (dm)
            ++t.c;
        else
            ++t.d;
    }
    return t;
}

ContingencyTable brute_force_contingency(const GpDataset& data, const WindowConfig& window,
                                         const DrugId& drug, const EventKey& event) {
    return BruteForceOracle(data, window).contingency(drug.str(), event.str());
}

}  // namespace adrsig
