#include "adrsig/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adrsig/errors.hpp"
#include "adrsig/format.hpp"

namespace adrsig {

namespace {

void check_known(const std::vector<KnownAdeSet>& known, const std::set<EventKey>& universe) {
    const EventKey* first = nullptr;
    for (const auto& k : known) {
        if (k.codes.empty()) throw PreconditionError("known reaction \"" + k.name + "\" has no codes");
        for (const auto& code : k.codes) {
            if (first && !same_kind(*first, code))
                throw PreconditionError("known reactions mix event codes and event names");
            first = &code;
            if (!universe.contains(code))
                throw PreconditionError("known reaction \"" + k.name + "\": event " + code.str() +
                                        " is not in the event universe");
        }
    }
}

std::set<EventKey> union_of(const std::vector<KnownAdeSet>& known) {
    std::set<EventKey> all;
    for (const auto& k : known) all.insert(k.codes.begin(), k.codes.end());
    return all;
}

double trapezoid(const RocPoint& p, const RocPoint& q) { return (q.fpr - p.fpr) * (p.tpr + q.tpr) * 0.5; }

std::vector<RocPoint> anchored(const RocCurve& curve) {
    std::vector<RocPoint> pts;
    pts.reserve(curve.points.size() + 2);
    pts.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
    pts.insert(pts.end(), curve.points.begin(), curve.points.end());
    pts.push_back({-std::numeric_limits<double>::infinity(), 1.0, 1.0});
    return pts;
}

}  // namespace

ConfusionCounts confusion(const std::set<EventKey>& signaled, const std::vector<KnownAdeSet>& known,
                          const std::set<EventKey>& universe) {
    check_known(known, universe);
    for (const auto& s : signaled)
        if (!universe.contains(s))
            throw PreconditionError("signaled event " + s.str() + " is not in the event universe");

    ConfusionCounts out;
    out.n = known.size();
    for (const auto& k : known) {
        const bool hit = std::any_of(k.codes.begin(), k.codes.end(),
                                     [&](const EventKey& c) { return signaled.contains(c); });
        out.A += hit;
    }
    out.C = out.n - out.A;

    const auto all_known = union_of(known);
    for (const auto& e : universe) {
        if (all_known.contains(e)) continue;
        if (signaled.contains(e))
            ++out.B;
        else
            ++out.D;
    }
    return out;
}

RocCurve roc_curve(const ScoreMap& scores, const std::vector<KnownAdeSet>& known,
                   const std::set<EventKey>& universe) {
    check_known(known, universe);
    for (const auto& [key, score] : scores)
        if (!universe.contains(key))
            throw PreconditionError("scored event " + key.str() + " is not in the event universe");

    const auto all_known = union_of(known);
    RocCurve curve;
    curve.n_pos = known.size();
    curve.n_neg = universe.size() - all_known.size();
    if (curve.n_pos == 0) throw PreconditionError("ROC analysis needs at least one known reaction");
    if (curve.n_neg == 0)
        throw PreconditionError("ROC analysis needs at least one event outside the known sets");

    // known-set membership per event, so the sweep can update A incrementally
    std::map<EventKey, std::vector<std::size_t>> member_of;
    for (std::size_t j = 0; j < known.size(); ++j)
        for (const auto& code : known[j].codes) member_of[code].push_back(j);

    std::vector<std::pair<double, const EventKey*>> ranked;
    for (const auto& [key, score] : scores)
        if (score && std::isfinite(*score)) ranked.emplace_back(*score, &key);
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });

    std::vector<bool> hit(known.size(), false);
    ConfusionCounts cc;
    cc.n = curve.n_pos;
    cc.C = cc.n;
    cc.D = curve.n_neg;

    auto signal = [&](const EventKey& e) {
        if (auto it = member_of.find(e); it != member_of.end()) {
            for (auto j : it->second) {
                if (!hit[j]) {
                    hit[j] = true;
                    ++cc.A;
                    --cc.C;
                }
            }
        } else {
            ++cc.B;
            --cc.D;
        }
    };
    auto emit = [&](double threshold) {
        RocPoint p{threshold, cc.fpr(), cc.tpr()};
        if (!curve.points.empty() && curve.points.back().fpr == p.fpr &&
            curve.points.back().tpr == p.tpr)
            return;
        curve.points.push_back(p);
    };

    emit(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    while (i < ranked.size()) {
        const double threshold = ranked[i].first;
        for (; i < ranked.size() && ranked[i].first == threshold; ++i) signal(*ranked[i].second);
        emit(threshold);
    }
    for (const auto& e : universe) {
        auto it = scores.find(e);
        if (it != scores.end() && it->second && std::isfinite(*it->second)) continue;
        signal(e);
    }
    emit(-std::numeric_limits<double>::infinity());
    return curve;
}

double auc(const RocCurve& curve) {
    const auto pts = anchored(curve);
    double area = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) area += trapezoid(pts[i - 1], pts[i]);
    return area;
}

double partial_auc(const RocCurve& curve, double fpr_max) {
    if (!(fpr_max > 0.0 && fpr_max <= 1.0))
        throw PreconditionError("fpr_max must lie in (0, 1], got " + format_double(fpr_max));
    const auto pts = anchored(curve);
    double area = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const auto& p = pts[i - 1];
        const auto& q = pts[i];
        if (p.fpr >= fpr_max) break;
        if (q.fpr <= fpr_max) {
            area += trapezoid(p, q);
            continue;
        }
        const double t = (fpr_max - p.fpr) / (q.fpr - p.fpr);
        area += trapezoid(p, {q.threshold, fpr_max, p.tpr + t * (q.tpr - p.tpr)});
        break;
    }
    return area;
}

double auc_se(double area, std::uint64_t n_pos, std::uint64_t n_neg) {
    if (!(area >= 0.0 && area <= 1.0))
        throw PreconditionError("area must lie in [0, 1], got " + format_double(area));
    if (n_pos < 1 || n_neg < 1) throw PreconditionError("auc_se needs n_pos, n_neg >= 1");
    const double a2 = area * area;
    const double q1 = area / (2.0 - area);
    const double q2 = 2.0 * a2 / (1.0 + area);
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    const double var = (area * (1.0 - area) + (np - 1.0) * (q1 - a2) + (nn - 1.0) * (q2 - a2)) / (np * nn);
    return std::sqrt(std::max(0.0, var));
}

AucResult auc_result(const RocCurve& curve) {
    const double a = auc(curve);
    return {a, auc_se(a, curve.n_pos, curve.n_neg), curve.n_pos, curve.n_neg};
}

AucResult partial_auc_result(const RocCurve& curve, double fpr_max) {
    const double a = partial_auc(curve, fpr_max);
    return {a, auc_se(a, curve.n_pos, curve.n_neg), curve.n_pos, curve.n_neg};
}

AucComparison compare_auc(const AucResult& a1, const AucResult& a2, double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw PreconditionError("correlation must lie in [0, 1]");
    const double var = a1.se * a1.se + a2.se * a2.se - 2.0 * r * (a1.se * a2.se);  // grouped so swapping the inputs is exact
    if (!(var > 0.0)) throw DataError("areas indistinguishable (zero variance)");
    AucComparison out;
    out.z = (a1.auc - a2.auc) / std::sqrt(var);
    out.p = std::clamp(std::erfc(std::fabs(out.z) / std::sqrt(2.0)), 0.0, 1.0);
    return out;
}

std::vector<std::pair<std::string, bool>> detect_known(const std::set<EventKey>& signaled,
                                                       const std::vector<KnownAdeSet>& known) {
    std::vector<std::pair<std::string, bool>> out;
    out.reserve(known.size());
    for (const auto& k : known) {
        const bool hit = std::any_of(k.codes.begin(), k.codes.end(),
                                     [&](const EventKey& c) { return signaled.contains(c); });
        out.emplace_back(k.name, hit);
    }
    return out;
}

void write_roc_tsv(std::ostream& out, const RocCurve& curve) {
    out << "threshold\tfpr\ttpr\n";
    for (const auto& p : curve.points)
        out << format_double(p.threshold) << '\t' << format_double(p.fpr) << '\t'
            << format_double(p.tpr) << '\n';
}

}  // namespace adrsig
