#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "adrsig/ingest.hpp"
#include "adrsig/windowing.hpp"

namespace adrsig {

/// An injected drug-event effect: after every prescription of `drug`, events
/// with `event_code` occur at `rate_multiplier` times their background rate
/// for `onset_window_days` days.
struct PlantedEffect {
    std::string drug;
    std::string event_code;
    double rate_multiplier = 1.0;
    long long onset_window_days = 30;
};

/// Per-field probabilities of blanking optional report fields. `any` is a
/// floor on the probability that a report lacks at least one field; when the
/// independent per-field rates fall short of it, extra reports get one
/// uniformly chosen field blanked.
struct SrsMissingness {
    double age = 0.0;
    double gender = 0.0;
    double event_date = 0.0;
    double any = 0.0;
};

/// Generator settings. Rates are per patient-year; every patient is observed
/// for `observation_days` days from a registration date in 2000.
struct SynthConfig {
    std::uint64_t seed = 1;
    std::size_t n_patients = 1000;
    std::size_t n_drugs = 10;
    std::size_t n_event_codes = 100;
    long long observation_days = 730;
    /// Prescriptions per patient-year across all drugs; each picks a drug uniformly.
    double background_prescription_rate = 4.0;
    /// Events per patient-year across all codes; each picks a code uniformly.
    double background_event_rate = 6.0;
    std::vector<PlantedEffect> planted_effects;
    double srs_reporting_prob = 0.05;
    /// Window used to pair prescriptions with events for spontaneous reports.
    long long srs_window_days = 60;
    SrsMissingness srs_missingness;

    /// Throws PreconditionError naming the first violated constraint.
    void validate() const;

    /// Parses the JSON config format. Unknown keys are rejected.
    static SynthConfig from_json_text(std::string_view text);
    std::string to_json_text() const;
};

/// Drug ids are "drug01", "drug02", ... zero padded to the width of n_drugs.
std::vector<std::string> synth_drug_names(std::size_t n_drugs);

struct PlantedTruth {
    DrugId drug;
    EventCode event_code;
    EventName event_name;
    double rate_multiplier = 1.0;
    long long onset_window_days = 0;
    /// Background rate of this single code, events per day.
    double background_rate_per_day = 0.0;
    /// Odds ratio of "event within one onset window" between exposed and
    /// background rates: odds(1 - e^{-m r W}) / odds(1 - e^{-r W}).
    double implied_odds_ratio = 1.0;
};

struct GroundTruth {
    std::vector<PlantedTruth> planted;
    std::string to_json_text() const;
};

struct SynthOutput {
    GpDataset gp;
    SrsDataset srs;
    GroundTruth truth;
    /// Generated code universe, sorted; closed under ancestors.
    std::vector<EventCode> codes;
    /// Flat SRS name for each entry of `codes`.
    std::vector<EventName> code_names;
};

/// Deterministic for a fixed config.
///
/// Random streams: mt19937_64 seeded with splitmix64(seed + k * 0x9E3779B97F4A7C15),
/// where k = 0 drives the code hierarchy and k = i + 1 drives patient i
/// (demographics, prescriptions, events, then reports, in that order).
/// Uniform doubles take the top 53 bits; exponentials are -log1p(-u) / rate;
/// bounded integers use rejection sampling.
SynthOutput generate(const SynthConfig& cfg);

/// Writes the four dataset CSVs and ground_truth.json into `dir`.
void write_synth(const std::filesystem::path& dir, const SynthOutput& out);

/// Independent enumeration of the windowing semantics, for cross-checking
/// associate_gp + contingency. Collects every (patient, drug, event) triple
/// by nested loops over each patient's prescriptions and events.
///
/// Refuses datasets needing more than `max_pair_checks` prescription-event
/// comparisons (PreconditionError).
class BruteForceOracle {
public:
    static constexpr std::uint64_t kMaxPairChecks = 1'000'000;

    BruteForceOracle(const GpDataset& data, const WindowConfig& window,
                     std::uint64_t max_pair_checks = kMaxPairChecks);

    /// Counts cells by scanning every triple. Drugs or events absent from all
    /// triples give zero counts rather than errors.
    ContingencyTable contingency(const std::string& drug, const std::string& event) const;

    std::size_t size() const { return triples_.size(); }
    std::uint64_t pair_checks() const { return pair_checks_; }

private:
    std::set<std::tuple<std::string, std::string, std::string>> triples_;
    std::uint64_t pair_checks_ = 0;
};

ContingencyTable brute_force_contingency(const GpDataset& data, const WindowConfig& window,
                                         const DrugId& drug, const EventKey& event);

}  // namespace adrsig
