#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "adrsig/ingest.hpp"
#include "adrsig/model.hpp"

namespace adrsig {

/// Length of the post-prescription window in which events count as suspected
/// reactions. An event at day t associates with a prescription at T0 when
/// T0 < t <= T0 + t_crit; the infinite window takes every later event.
class WindowConfig {
public:
    /// Throws PreconditionError unless days > 0.
    static WindowConfig days(long long days);
    static WindowConfig infinite() { return WindowConfig(); }
    /// Default short window standing in for "two months".
    static WindowConfig two_months() { return days(60); }

    bool is_infinite() const noexcept { return !days_; }
    /// Window length; only meaningful when finite.
    long long length_days() const noexcept { return days_.value_or(0); }

    std::string str() const { return days_ ? std::to_string(*days_) : std::string("inf"); }

    friend bool operator==(const WindowConfig&, const WindowConfig&) = default;

private:
    WindowConfig() = default;
    std::optional<long long> days_;
};

/// Table 1 cell counts for one (drug, event) pair:
///            event   other events
///   drug       a          c
///   others     b          d
struct ContingencyTable {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t c = 0;
    std::uint64_t d = 0;

    std::uint64_t total() const noexcept { return a + b + c + d; }

    friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

std::ostream& operator<<(std::ostream& out, const ContingencyTable& t);

/// One suspected drug-event association for a counting unit (a patient for
/// GP data, a report for spontaneous reports).
struct Association {
    std::string unit;
    DrugId drug;
    EventKey event;

    friend auto operator<=>(const Association&, const Association&) = default;
};

/// Distinct (unit, drug, event) triples plus the drug and event universes they
/// span. Immutable; every query is read-only and safe to call concurrently.
///
/// Marginal counts are precomputed so a contingency query costs one hash
/// lookup.
class AssociationSet {
public:
    enum class Kind { Gp, Srs };

    AssociationSet() = default;

    /// Builds from raw triples; duplicates collapse. All events must match `kind`.
    static AssociationSet from_triples(Kind kind, std::vector<Association> triples);

    Kind kind() const noexcept { return kind_; }
    std::size_t size() const noexcept { return triples_.size(); }
    bool empty() const noexcept { return triples_.empty(); }

    /// Sorted universes.
    const std::vector<DrugId>& drugs() const noexcept { return drugs_; }
    const std::vector<EventKey>& events() const noexcept { return events_; }

    bool contains(const DrugId& drug) const;
    bool contains(const EventKey& event) const;

    /// Triples sorted by (unit, drug, event).
    std::vector<Association> triples() const;

    /// Throws PreconditionError when the drug or event is outside the universe.
    ContingencyTable contingency(const DrugId& drug, const EventKey& event) const;

    /// Table for every event in the universe against `drug`.
    std::map<EventKey, ContingencyTable> tables_for(const DrugId& drug) const;

    /// Number of triples involving `drug`.
    std::uint64_t drug_total(const DrugId& drug) const;

    /// Re-keys every event code to its ancestor at min(level, code level) and
    /// deduplicates. GP sets only; level in [1, 5].
    AssociationSet at_level(int level) const;

    /// CSV `unit_id,drug,event`, sorted.
    void write_csv(std::ostream& out) const;

    friend bool operator==(const AssociationSet& x, const AssociationSet& y) {
        return x.kind_ == y.kind_ && x.triples() == y.triples();
    }

private:
    struct Triple {
        std::uint32_t unit;
        std::uint32_t drug;
        std::uint32_t event;
        friend auto operator<=>(const Triple&, const Triple&) = default;
    };

    std::uint32_t drug_index(const DrugId& drug) const;
    std::uint32_t event_index(const EventKey& event) const;
    static std::uint64_t pair_key(std::uint32_t drug, std::uint32_t event) {
        return (static_cast<std::uint64_t>(drug) << 32) | event;
    }

    Kind kind_ = Kind::Gp;
    std::vector<std::string> units_;
    std::vector<DrugId> drugs_;
    std::vector<EventKey> events_;
    std::vector<Triple> triples_;
    std::vector<std::uint64_t> drug_totals_;
    std::vector<std::uint64_t> event_totals_;
    std::unordered_map<std::uint64_t, std::uint64_t> pair_counts_;
};

/// Suspected associations from longitudinal GP data: (patient, D, E) is kept
/// when some prescription of D at T0 is followed by event E at t with
/// T0 < t <= T0 + t_crit. Patients are processed in parallel when
/// `threads` != 1 (0 = hardware concurrency); the result does not depend on it.
AssociationSet associate_gp(const GpDataset& data, const WindowConfig& window,
                            unsigned threads = 1);

/// One triple per accepted report, keyed by report_id.
AssociationSet associate_srs(const SrsDataset& data);

inline ContingencyTable contingency(const AssociationSet& assoc, const DrugId& drug,
                                    const EventKey& event) {
    return assoc.contingency(drug, event);
}

/// Tables for `drug` against every event after truncating codes to `level`.
std::map<EventCode, ContingencyTable> contingency_at_level(const AssociationSet& assoc,
                                                           const DrugId& drug, int level);

}  // namespace adrsig
