#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "adrsig/date.hpp"
#include "adrsig/event_code.hpp"

namespace adrsig {

/// Trim surrounding whitespace, collapse internal runs to one space and
/// lowercase ASCII letters.
std::string normalize_text(std::string_view text);

/// Identifier of a drug. Stored normalized; never empty.
class DrugId {
public:
    /// Throws PreconditionError when the normalized text is empty.
    explicit DrugId(std::string_view raw);

    const std::string& str() const noexcept { return id_; }

    friend auto operator<=>(const DrugId&, const DrugId&) = default;

private:
    std::string id_;
};

/// Flat event name from a spontaneous report. Stored normalized; never empty.
class EventName {
public:
    explicit EventName(std::string_view raw);

    const std::string& str() const noexcept { return name_; }

    friend auto operator<=>(const EventName&, const EventName&) = default;

private:
    std::string name_;
};

enum class Gender { Unknown, Male, Female };

/// "M", "F" or "" for unknown.
std::string_view to_string(Gender gender);
/// Accepts M/F (any case), the full words, and ""/U/unknown. nullopt otherwise.
std::optional<Gender> parse_gender(std::string_view text);

struct PatientRecord {
    std::string patient_id;
    std::optional<Date> birth_date;
    Gender gender = Gender::Unknown;
    std::optional<Date> registration_date;
    std::optional<Date> death_date;

    friend bool operator==(const PatientRecord&, const PatientRecord&) = default;
};

/// A prescription; `date` is the exposure start T0 used for windowing.
struct PrescriptionEvent {
    std::string patient_id;
    DrugId drug;
    Date date;

    friend bool operator==(const PrescriptionEvent&, const PrescriptionEvent&) = default;
};

struct ClinicalEvent {
    std::string patient_id;
    EventCode code;
    Date date;

    friend bool operator==(const ClinicalEvent&, const ClinicalEvent&) = default;
};

struct SpontaneousReport {
    std::string report_id;
    DrugId drug;
    EventName event_name;
    std::optional<double> age;
    std::optional<Gender> gender;
    std::optional<Date> event_date;

    friend bool operator==(const SpontaneousReport&, const SpontaneousReport&) = default;
};

/// Event identity across both database kinds: a hierarchical code for GP data
/// or a flat name for spontaneous reports.
///
/// Keys of different kinds order by kind first so mixed containers stay well
/// formed, but analyses never mix them; see same_kind().
class EventKey {
public:
    EventKey(EventCode code) : value_(code) {}  // NOLINT(google-explicit-constructor)
    EventKey(EventName name) : value_(std::move(name)) {}  // NOLINT(google-explicit-constructor)

    bool is_code() const noexcept { return std::holds_alternative<EventCode>(value_); }
    bool is_name() const noexcept { return std::holds_alternative<EventName>(value_); }

    /// Throws PreconditionError when the key holds a name.
    const EventCode& code() const;
    /// Throws PreconditionError when the key holds a code.
    const EventName& name() const;

    std::string str() const;

    friend bool same_kind(const EventKey& a, const EventKey& b) noexcept {
        return a.value_.index() == b.value_.index();
    }
    friend auto operator<=>(const EventKey&, const EventKey&) = default;

private:
    std::variant<EventCode, EventName> value_;
};

}  // namespace adrsig
