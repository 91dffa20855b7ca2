#include "adrsig/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <set>
#include <unordered_set>

#include "adrsig/csv.hpp"
#include "adrsig/errors.hpp"
#include "adrsig/format.hpp"

namespace adrsig {

namespace {

bool is_blank(const csv::Record& rec) {
    return rec.fields.size() == 1 && rec.fields[0].empty();
}

class RowContext {
public:
    RowContext(const csv::Reader& reader, const csv::Record& rec)
        : file_(reader.source_name()), line_(rec.line) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(file_, line_, what); }

private:
    const std::string& file_;
    std::size_t line_;
};

void check_width(const RowContext& ctx, const csv::Record& rec, std::size_t width) {
    if (rec.fields.size() != width)
        ctx.fail("expected " + std::to_string(width) + " fields, found " +
                 std::to_string(rec.fields.size()));
}

Date required_date(const RowContext& ctx, std::string_view column, const std::string& text,
                   const LoadOptions& opt) {
    auto d = Date::parse(text);
    if (!d) ctx.fail(std::string(column) + ": invalid date \"" + text + "\" (expected YYYY-MM-DD)");
    if (*d < opt.min_date || *d > opt.max_date)
        ctx.fail(std::string(column) + ": date " + text + " outside " + opt.min_date.iso() + ".." +
                 opt.max_date.iso());
    return *d;
}

std::optional<Date> optional_date(const RowContext& ctx, std::string_view column,
                                  const std::string& text, const LoadOptions& opt) {
    if (text.empty()) return std::nullopt;
    return required_date(ctx, column, text, opt);
}

std::string required_id(const RowContext& ctx, std::string_view column, const std::string& text) {
    if (normalize_text(text).empty()) ctx.fail(std::string(column) + ": empty");
    return text;
}

std::vector<PatientRecord> read_patients(std::istream& in, const std::string& name,
                                         const LoadOptions& opt) {
    csv::Reader reader(in, name);
    csv::expect_header(reader, kPatientsHeader);
    std::vector<PatientRecord> out;
    while (auto rec = reader.next()) {
        if (is_blank(*rec)) continue;
        RowContext ctx(reader, *rec);
        check_width(ctx, *rec, kPatientsHeader.size());
        const auto& f = rec->fields;
        PatientRecord p;
        p.patient_id = required_id(ctx, "patient_id", f[0]);
        p.birth_date = optional_date(ctx, "birth_date", f[1], opt);
        auto gender = parse_gender(f[2]);
        if (!gender) ctx.fail("gender: unrecognised value \"" + f[2] + "\"");
        p.gender = *gender;
        p.registration_date = optional_date(ctx, "registration_date", f[3], opt);
        p.death_date = optional_date(ctx, "death_date", f[4], opt);
        if (p.birth_date && p.death_date && *p.death_date < *p.birth_date)
            ctx.fail("death_date precedes birth_date");
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<PrescriptionEvent> read_prescriptions(std::istream& in, const std::string& name,
                                                  const LoadOptions& opt) {
    csv::Reader reader(in, name);
    csv::expect_header(reader, kPrescriptionsHeader);
    std::vector<PrescriptionEvent> out;
    while (auto rec = reader.next()) {
        if (is_blank(*rec)) continue;
        RowContext ctx(reader, *rec);
        check_width(ctx, *rec, kPrescriptionsHeader.size());
        const auto& f = rec->fields;
        std::string patient = required_id(ctx, "patient_id", f[0]);
        std::string drug = required_id(ctx, "drug", f[1]);
        out.push_back({std::move(patient), DrugId(drug), required_date(ctx, "date", f[2], opt)});
    }
    return out;
}

std::vector<ClinicalEvent> read_events(std::istream& in, const std::string& name,
                                       const LoadOptions& opt) {
    csv::Reader reader(in, name);
    csv::expect_header(reader, kEventsHeader);
    std::vector<ClinicalEvent> out;
    while (auto rec = reader.next()) {
        if (is_blank(*rec)) continue;
        RowContext ctx(reader, *rec);
        check_width(ctx, *rec, kEventsHeader.size());
        const auto& f = rec->fields;
        std::string patient = required_id(ctx, "patient_id", f[0]);
        std::optional<EventCode> code;
        try {
            code = EventCode::parse(f[1]);
        } catch (const PreconditionError& e) {
            ctx.fail(e.what());
        }
        out.push_back({std::move(patient), *code, required_date(ctx, "date", f[2], opt)});
    }
    return out;
}

void check_references(const std::vector<PatientRecord>& patients,
                      const std::vector<PrescriptionEvent>& prescriptions,
                      const std::vector<ClinicalEvent>& events) {
    std::unordered_set<std::string> known;
    for (const auto& p : patients) {
        if (!known.insert(p.patient_id).second)
            throw DataError("patients: duplicate patient_id \"" + p.patient_id + "\"");
    }
    std::set<std::string> orphans;
    for (const auto& rx : prescriptions)
        if (!known.contains(rx.patient_id)) orphans.insert(rx.patient_id);
    for (const auto& ev : events)
        if (!known.contains(ev.patient_id)) orphans.insert(ev.patient_id);
    if (orphans.empty()) return;

    std::string msg = "unknown patient_id referenced by prescriptions/events:";
    std::size_t shown = 0;
    for (const auto& id : orphans) {
        if (shown++ == 20) {
            msg += " ... (" + std::to_string(orphans.size()) + " total)";
            break;
        }
        msg += " " + id;
    }
    throw DataError(msg);
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    return in;
}

std::string opt_date(const std::optional<Date>& d) { return d ? d->iso() : std::string(); }

GpDataset load_gp_named(std::istream& patients, const std::string& patients_name,
                        std::istream& prescriptions, const std::string& prescriptions_name,
                        std::istream& events, const std::string& events_name,
                        const LoadOptions& options) {
    GpDataset out;
    if (options.threads > 1) {
        auto fp = std::async(std::launch::async,
                             [&] { return read_patients(patients, patients_name, options); });
        auto frx = std::async(std::launch::async, [&] {
            return read_prescriptions(prescriptions, prescriptions_name, options);
        });
        out.events = read_events(events, events_name, options);
        out.patients = fp.get();
        out.prescriptions = frx.get();
    } else {
        out.patients = read_patients(patients, patients_name, options);
        out.prescriptions = read_prescriptions(prescriptions, prescriptions_name, options);
        out.events = read_events(events, events_name, options);
    }
    check_references(out.patients, out.prescriptions, out.events);
    return out;
}

}  // namespace

GpDataset load_gp(std::istream& patients, std::istream& prescriptions, std::istream& events,
                  const LoadOptions& options) {
    return load_gp_named(patients, "patients.csv", prescriptions, "prescriptions.csv", events,
                         "events.csv", options);
}

GpDataset load_gp(const std::filesystem::path& patients_file,
                  const std::filesystem::path& prescriptions_file,
                  const std::filesystem::path& events_file, const LoadOptions& options) {
    auto p = open_input(patients_file);
    auto rx = open_input(prescriptions_file);
    auto ev = open_input(events_file);
    return load_gp_named(p, patients_file.filename().string(), rx,
                         prescriptions_file.filename().string(), ev,
                         events_file.filename().string(), options);
}

Missingness compute_missingness(const std::vector<SpontaneousReport>& reports) {
    Missingness m;
    if (reports.empty()) return m;
    std::size_t age = 0, gender = 0, date = 0, any = 0;
    for (const auto& r : reports) {
        const bool no_age = !r.age;
        const bool no_gender = !r.gender || *r.gender == Gender::Unknown;
        const bool no_date = !r.event_date;
        age += no_age;
        gender += no_gender;
        date += no_date;
        any += (no_age || no_gender || no_date);
    }
    const double n = static_cast<double>(reports.size());
    m.age = static_cast<double>(age) / n;
    m.gender = static_cast<double>(gender) / n;
    m.event_date = static_cast<double>(date) / n;
    m.any = static_cast<double>(any) / n;
    return m;
}

SrsDataset load_srs(std::istream& in, const std::string& source_name, const LoadOptions& options) {
    csv::Reader reader(in, source_name);
    csv::expect_header(reader, kSrsHeader);
    SrsDataset out;
    while (auto rec = reader.next()) {
        if (is_blank(*rec)) continue;
        const auto& f = rec->fields;
        auto reject = [&](std::string reason) {
            out.rejected.push_back({rec->line, std::move(reason)});
        };
        if (f.size() != kSrsHeader.size()) {
            reject("expected " + std::to_string(kSrsHeader.size()) + " fields, found " +
                   std::to_string(f.size()));
            continue;
        }
        if (normalize_text(f[0]).empty()) {
            reject("missing report_id");
            continue;
        }
        if (normalize_text(f[1]).empty()) {
            reject("missing drug");
            continue;
        }
        if (normalize_text(f[2]).empty()) {
            reject("missing event_name");
            continue;
        }
        SpontaneousReport r{f[0], DrugId(f[1]), EventName(f[2]), {}, {}, {}};
        if (!f[3].empty()) {
            double age = 0;
            const auto res = std::from_chars(f[3].data(), f[3].data() + f[3].size(), age);
            if (res.ec != std::errc{} || res.ptr != f[3].data() + f[3].size() ||
                !std::isfinite(age) || age < 0 || age > 150) {
                reject("invalid age \"" + f[3] + "\"");
                continue;
            }
            r.age = age;
        }
        if (!f[4].empty()) {
            auto g = parse_gender(f[4]);
            if (!g) {
                reject("invalid gender \"" + f[4] + "\"");
                continue;
            }
            if (*g != Gender::Unknown) r.gender = *g;
        }
        if (!f[5].empty()) {
            auto d = Date::parse(f[5]);
            if (!d || *d < options.min_date || *d > options.max_date) {
                reject("invalid event_date \"" + f[5] + "\"");
                continue;
            }
            r.event_date = *d;
        }
        out.reports.push_back(std::move(r));
    }
    out.missingness = compute_missingness(out.reports);
    return out;
}

SrsDataset load_srs(const std::filesystem::path& reports_file, const LoadOptions& options) {
    auto in = open_input(reports_file);
    return load_srs(in, reports_file.filename().string(), options);
}

void write_patients(std::ostream& out, const std::vector<PatientRecord>& patients) {
    csv::write_row(out, {kPatientsHeader.begin(), kPatientsHeader.end()});
    for (const auto& p : patients)
        csv::write_row(out, {p.patient_id, opt_date(p.birth_date), std::string(to_string(p.gender)),
                             opt_date(p.registration_date), opt_date(p.death_date)});
}

void write_prescriptions(std::ostream& out, const std::vector<PrescriptionEvent>& prescriptions) {
    csv::write_row(out, {kPrescriptionsHeader.begin(), kPrescriptionsHeader.end()});
    for (const auto& rx : prescriptions)
        csv::write_row(out, {rx.patient_id, rx.drug.str(), rx.date.iso()});
}

void write_events(std::ostream& out, const std::vector<ClinicalEvent>& events) {
    csv::write_row(out, {kEventsHeader.begin(), kEventsHeader.end()});
    for (const auto& ev : events) csv::write_row(out, {ev.patient_id, ev.code.str(), ev.date.iso()});
}

void write_srs(std::ostream& out, const std::vector<SpontaneousReport>& reports) {
    csv::write_row(out, {kSrsHeader.begin(), kSrsHeader.end()});
    for (const auto& r : reports)
        csv::write_row(out, {r.report_id, r.drug.str(), r.event_name.str(),
                             r.age ? format_double(*r.age) : std::string(),
                             r.gender ? std::string(to_string(*r.gender)) : std::string(),
                             opt_date(r.event_date)});
}

void write_gp(const std::filesystem::path& dir, const GpDataset& data) {
    std::filesystem::create_directories(dir);
    auto open = [&](const char* name) {
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + (dir / name).string());
        return out;
    };
    auto p = open("patients.csv");
    write_patients(p, data.patients);
    auto rx = open("prescriptions.csv");
    write_prescriptions(rx, data.prescriptions);
    auto ev = open("events.csv");
    write_events(ev, data.events);
}

}  // namespace adrsig
