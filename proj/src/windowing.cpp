#include "adrsig/windowing.hpp"

#include <algorithm>
#include <unordered_map>

#include "adrsig/csv.hpp"
#include "adrsig/errors.hpp"
#include "adrsig/parallel.hpp"

namespace adrsig {

namespace {

template <typename T>
void sort_unique(std::vector<T>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

template <typename T>
std::uint32_t index_of(const std::vector<T>& sorted, const T& value) {
    return static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), value) -
                                      sorted.begin());
}

}  // namespace

WindowConfig WindowConfig::days(long long days) {
    if (days <= 0)
        throw PreconditionError("window length must be positive, got " + std::to_string(days));
    WindowConfig w;
    w.days_ = days;
    return w;
}

std::ostream& operator<<(std::ostream& out, const ContingencyTable& t) {
    return out << "{a=" << t.a << ", b=" << t.b << ", c=" << t.c << ", d=" << t.d << "}";
}

AssociationSet AssociationSet::from_triples(Kind kind, std::vector<Association> triples) {
    AssociationSet out;
    out.kind_ = kind;
    for (const auto& t : triples) {
        if (t.event.is_code() != (kind == Kind::Gp))
            throw PreconditionError("event " + t.event.str() + " does not match the set kind");
        out.units_.push_back(t.unit);
        out.drugs_.push_back(t.drug);
        out.events_.push_back(t.event);
    }
    sort_unique(out.units_);
    sort_unique(out.drugs_);
    sort_unique(out.events_);

    out.triples_.reserve(triples.size());
    for (const auto& t : triples)
        out.triples_.push_back({index_of(out.units_, t.unit), index_of(out.drugs_, t.drug),
                                index_of(out.events_, t.event)});
    sort_unique(out.triples_);

    out.drug_totals_.assign(out.drugs_.size(), 0);
    out.event_totals_.assign(out.events_.size(), 0);
    for (const auto& t : out.triples_) {
        ++out.drug_totals_[t.drug];
        ++out.event_totals_[t.event];
        ++out.pair_counts_[pair_key(t.drug, t.event)];
    }
    return out;
}

bool AssociationSet::contains(const DrugId& drug) const {
    return std::binary_search(drugs_.begin(), drugs_.end(), drug);
}

bool AssociationSet::contains(const EventKey& event) const {
    return std::binary_search(events_.begin(), events_.end(), event);
}

std::uint32_t AssociationSet::drug_index(const DrugId& drug) const {
    if (!contains(drug)) throw PreconditionError("drug \"" + drug.str() + "\" not in universe");
    return index_of(drugs_, drug);
}

std::uint32_t AssociationSet::event_index(const EventKey& event) const {
    if (!contains(event)) throw PreconditionError("event \"" + event.str() + "\" not in universe");
    return index_of(events_, event);
}

std::vector<Association> AssociationSet::triples() const {
    std::vector<Association> out;
    out.reserve(triples_.size());
    for (const auto& t : triples_) out.push_back({units_[t.unit], drugs_[t.drug], events_[t.event]});
    return out;
}

std::uint64_t AssociationSet::drug_total(const DrugId& drug) const {
    return drug_totals_[drug_index(drug)];
}

ContingencyTable AssociationSet::contingency(const DrugId& drug, const EventKey& event) const {
    const auto di = drug_index(drug);
    const auto ei = event_index(event);
    ContingencyTable t;
    if (auto it = pair_counts_.find(pair_key(di, ei)); it != pair_counts_.end()) t.a = it->second;
    t.b = event_totals_[ei] - t.a;
    t.c = drug_totals_[di] - t.a;
    t.d = triples_.size() - t.a - t.b - t.c;
    return t;
}

std::map<EventKey, ContingencyTable> AssociationSet::tables_for(const DrugId& drug) const {
    drug_index(drug);
    std::map<EventKey, ContingencyTable> out;
    for (const auto& e : events_) out.emplace(e, contingency(drug, e));
    return out;
}

AssociationSet AssociationSet::at_level(int level) const {
    if (kind_ != Kind::Gp)
        throw PreconditionError("level truncation needs hierarchical event codes");
    if (level < 1 || level > EventCode::kLength)
        throw PreconditionError("level " + std::to_string(level) + " outside [1, 5]");
    std::vector<Association> mapped;
    mapped.reserve(triples_.size());
    for (const auto& t : triples_) {
        const EventCode& code = events_[t.event].code();
        mapped.push_back({units_[t.unit], drugs_[t.drug],
                          EventKey(code.ancestor(std::min(level, code.level())))});
    }
    return from_triples(kind_, std::move(mapped));
}

void AssociationSet::write_csv(std::ostream& out) const {
    csv::write_row(out, {"unit_id", "drug", "event"});
    for (const auto& t : triples_)
        csv::write_row(out, {units_[t.unit], drugs_[t.drug].str(), events_[t.event].str()});
}

AssociationSet associate_gp(const GpDataset& data, const WindowConfig& window, unsigned threads) {
    std::unordered_map<std::string_view, std::size_t> patient_slot;
    patient_slot.reserve(data.patients.size());
    for (std::size_t i = 0; i < data.patients.size(); ++i)
        patient_slot.emplace(data.patients[i].patient_id, i);

    std::vector<std::vector<const PrescriptionEvent*>> rx_by_patient(data.patients.size());
    std::vector<std::vector<const ClinicalEvent*>> ev_by_patient(data.patients.size());
    for (const auto& rx : data.prescriptions) {
        auto it = patient_slot.find(rx.patient_id);
        if (it == patient_slot.end())
            throw PreconditionError("prescription for unknown patient " + rx.patient_id);
        rx_by_patient[it->second].push_back(&rx);
    }
    for (const auto& ev : data.events) {
        auto it = patient_slot.find(ev.patient_id);
        if (it == patient_slot.end())
            throw PreconditionError("event for unknown patient " + ev.patient_id);
        ev_by_patient[it->second].push_back(&ev);
    }

    std::vector<std::vector<Association>> chunk_out(resolve_threads(threads));
    const auto chunks = parallel_chunks(
        data.patients.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
            auto& out = chunk_out[chunk];
            std::map<DrugId, std::vector<Date>> starts;
            for (std::size_t p = begin; p < end; ++p) {
                starts.clear();
                for (const auto* rx : rx_by_patient[p]) starts[rx->drug].push_back(rx->date);
                for (auto& [drug, dates] : starts) {
                    sort_unique(dates);
                    for (const auto* ev : ev_by_patient[p]) {
                        // latest prescription strictly before the event
                        auto after = std::lower_bound(dates.begin(), dates.end(), ev->date);
                        if (after == dates.begin()) continue;
                        const Date t0 = *std::prev(after);
                        if (window.is_infinite() || ev->date - t0 <= window.length_days())
                            out.push_back({data.patients[p].patient_id, drug, EventKey(ev->code)});
                    }
                }
            }
        });

    std::vector<Association> all;
    for (std::size_t c = 0; c < chunks; ++c) {
        all.insert(all.end(), std::make_move_iterator(chunk_out[c].begin()),
                   std::make_move_iterator(chunk_out[c].end()));
    }
    return AssociationSet::from_triples(AssociationSet::Kind::Gp, std::move(all));
}

AssociationSet associate_srs(const SrsDataset& data) {
    std::vector<Association> triples;
    triples.reserve(data.reports.size());
    for (const auto& r : data.reports) triples.push_back({r.report_id, r.drug, EventKey(r.event_name)});
    return AssociationSet::from_triples(AssociationSet::Kind::Srs, std::move(triples));
}

std::map<EventCode, ContingencyTable> contingency_at_level(const AssociationSet& assoc,
                                                           const DrugId& drug, int level) {
    std::map<EventCode, ContingencyTable> out;
    for (auto& [key, table] : assoc.at_level(level).tables_for(drug)) out.emplace(key.code(), table);
    return out;
}

}  // namespace adrsig
