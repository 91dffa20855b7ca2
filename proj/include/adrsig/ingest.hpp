#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "adrsig/model.hpp"

namespace adrsig {

/// Longitudinal general-practice data. Every prescription and event refers to a
/// patient present in `patients`.
struct GpDataset {
    std::vector<PatientRecord> patients;
    std::vector<PrescriptionEvent> prescriptions;
    std::vector<ClinicalEvent> events;

    friend bool operator==(const GpDataset&, const GpDataset&) = default;
};

/// Fraction of accepted reports lacking each optional field. All zero for an
/// empty dataset.
struct Missingness {
    double age = 0.0;
    double gender = 0.0;
    double event_date = 0.0;
    double any = 0.0;

    friend bool operator==(const Missingness&, const Missingness&) = default;
};

struct RejectedRow {
    std::size_t line = 0;
    std::string reason;

    friend bool operator==(const RejectedRow&, const RejectedRow&) = default;
};

/// Spontaneous reports. Dirty rows are dropped and recorded in `rejected`.
struct SrsDataset {
    std::vector<SpontaneousReport> reports;
    Missingness missingness;
    std::vector<RejectedRow> rejected;

    friend bool operator==(const SrsDataset&, const SrsDataset&) = default;
};

struct LoadOptions {
    Date min_date = Date::from_ymd(1900, 1, 1);
    Date max_date = Date::today();
    /// Files are parsed concurrently when > 1.
    unsigned threads = 1;
};

// CSV schemas. Empty fields mean "absent" for optional columns.
inline const std::vector<std::string_view> kPatientsHeader = {
    "patient_id", "birth_date", "gender", "registration_date", "death_date"};
inline const std::vector<std::string_view> kPrescriptionsHeader = {"patient_id", "drug", "date"};
inline const std::vector<std::string_view> kEventsHeader = {"patient_id", "code", "date"};
inline const std::vector<std::string_view> kSrsHeader = {
    "report_id", "drug", "event_name", "age", "gender", "event_date"};

/// Loads and validates the three GP files. Any malformed row, out-of-range
/// date, invalid event code, duplicate patient or orphan patient_id is fatal
/// (ParseError / DataError).
GpDataset load_gp(const std::filesystem::path& patients_file,
                  const std::filesystem::path& prescriptions_file,
                  const std::filesystem::path& events_file, const LoadOptions& options = {});

GpDataset load_gp(std::istream& patients, std::istream& prescriptions, std::istream& events,
                  const LoadOptions& options = {});

/// Loads spontaneous reports. Rows with a missing drug or event name, a wrong
/// column count or unparseable optional values are skipped and recorded.
/// Only a bad header is fatal.
SrsDataset load_srs(const std::filesystem::path& reports_file, const LoadOptions& options = {});
SrsDataset load_srs(std::istream& reports, const std::string& source_name = "srs_reports.csv",
                    const LoadOptions& options = {});

Missingness compute_missingness(const std::vector<SpontaneousReport>& reports);

void write_patients(std::ostream& out, const std::vector<PatientRecord>& patients);
void write_prescriptions(std::ostream& out, const std::vector<PrescriptionEvent>& prescriptions);
void write_events(std::ostream& out, const std::vector<ClinicalEvent>& events);
void write_srs(std::ostream& out, const std::vector<SpontaneousReport>& reports);

/// Writes patients.csv, prescriptions.csv and events.csv into `dir`.
void write_gp(const std::filesystem::path& dir, const GpDataset& data);

}  // namespace adrsig
