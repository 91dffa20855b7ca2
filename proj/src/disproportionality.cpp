#include "adrsig/disproportionality.hpp"

#include <algorithm>
#include <cmath>

#include "adrsig/csv.hpp"
#include "adrsig/format.hpp"
#include "adrsig/parallel.hpp"

namespace adrsig {

namespace {

struct Cells {
    double a, b, c, d;
};

Cells prepare(Method method, const ContingencyTable& t, ZeroPolicy policy, bool& corrected) {
    corrected = false;
    if (auto zero = first_zero_cell(t)) {
        if (policy == ZeroPolicy::Strict) throw UndefinedStatistic(method, *zero);
        corrected = true;
        return {t.a + 0.5, t.b + 0.5, t.c + 0.5, t.d + 0.5};
    }
    return {static_cast<double>(t.a), static_cast<double>(t.b), static_cast<double>(t.c),
            static_cast<double>(t.d)};
}

SignalStats finish(Method method, double estimate, double se_ln, bool corrected) {
    SignalStats s;
    s.method = method;
    s.estimate = estimate;
    s.se_ln = se_ln;
    const double log_est = std::log(estimate);
    const double lower = log_est - kZ95 * se_ln;
    s.ci_low = std::exp(lower);
    s.ci_high = std::exp(log_est + kZ95 * se_ln);
    s.signaled = lower > 0.0;
    s.correction_applied = corrected;
    return s;
}

}  // namespace

std::string_view to_string(Method method) { return method == Method::Ror ? "ror" : "prr"; }

std::string_view to_string(ZeroPolicy policy) {
    return policy == ZeroPolicy::Strict ? "strict" : "haldane";
}

std::optional<Method> parse_method(std::string_view text) {
    const auto t = normalize_text(text);
    if (t == "ror") return Method::Ror;
    if (t == "prr") return Method::Prr;
    return std::nullopt;
}

std::optional<ZeroPolicy> parse_zero_policy(std::string_view text) {
    const auto t = normalize_text(text);
    if (t == "strict") return ZeroPolicy::Strict;
    if (t == "haldane") return ZeroPolicy::Haldane;
    return std::nullopt;
}

UndefinedStatistic::UndefinedStatistic(Method method, char cell)
    : std::domain_error(std::string(to_string(method)) + " undefined: cell " + cell + " is zero"),
      cell_(cell) {}

std::optional<char> first_zero_cell(const ContingencyTable& t) {
    if (t.a == 0) return 'a';
    if (t.b == 0) return 'b';
    if (t.c == 0) return 'c';
    if (t.d == 0) return 'd';
    return std::nullopt;
}

SignalStats ror(const ContingencyTable& t, ZeroPolicy policy) {
    bool corrected;
    const auto [a, b, c, d] = prepare(Method::Ror, t, policy, corrected);
    const double estimate = (a / b) / (c / d);
    const double se = std::sqrt(1.0 / a + 1.0 / b + 1.0 / c + 1.0 / d);
    return finish(Method::Ror, estimate, se, corrected);
}

SignalStats prr(const ContingencyTable& t, ZeroPolicy policy) {
    bool corrected;
    const auto [a, b, c, d] = prepare(Method::Prr, t, policy, corrected);
    const double estimate = (a / (a + c)) / (b / (b + d));
    // 1/a - 1/(a+b) rewritten as b/(a(a+b)) to avoid cancellation
    const double se = std::sqrt(b / (a * (a + b)) + 1.0 / c + 1.0 / (c + d));
    return finish(Method::Prr, estimate, se, corrected);
}

SignalStats compute(Method method, const ContingencyTable& t, ZeroPolicy policy) {
    return method == Method::Ror ? ror(t, policy) : prr(t, policy);
}

SignalRanking rank_tables(const std::map<EventKey, ContingencyTable>& tables, Method method,
                          ZeroPolicy policy, unsigned threads) {
    std::vector<const std::pair<const EventKey, ContingencyTable>*> items;
    items.reserve(tables.size());
    for (const auto& kv : tables) items.push_back(&kv);

    std::vector<std::optional<SignalStats>> stats(items.size());
    parallel_chunks(items.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto& table = items[i]->second;
            if (policy == ZeroPolicy::Strict && first_zero_cell(table)) continue;
            stats[i] = compute(method, table, policy);
        }
    });

    SignalRanking out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& [event, table] = *items[i];
        if (stats[i])
            out.ranked.push_back({event, table, *stats[i]});
        else
            out.undefined.push_back({event, table, *first_zero_cell(table)});
    }
    // items came from an ordered map, so a stable sort keeps key order on ties
    std::stable_sort(out.ranked.begin(), out.ranked.end(),
                     [](const RankedSignal& x, const RankedSignal& y) {
                         return x.stats.estimate > y.stats.estimate;
                     });
    return out;
}

SignalRanking rank_signals(const AssociationSet& assoc, const DrugId& drug, Method method,
                           ZeroPolicy policy, unsigned threads) {
    return rank_tables(assoc.tables_for(drug), method, policy, threads);
}

void write_signals_csv(std::ostream& out, const SignalRanking& ranking, Method method) {
    csv::write_row(out, {kSignalsHeader.begin(), kSignalsHeader.end()});
    const std::string m(to_string(method));
    for (const auto& r : ranking.ranked) {
        const auto& s = r.stats;
        csv::write_row(out, {r.event.str(), m, std::to_string(r.table.a), std::to_string(r.table.b),
                             std::to_string(r.table.c), std::to_string(r.table.d),
                             format_double(s.estimate), format_double(s.se_ln),
                             format_double(s.ci_low), format_double(s.ci_high),
                             format_bool(s.signaled), format_bool(s.correction_applied)});
    }
    for (const auto& u : ranking.undefined) {
        csv::write_row(out, {u.event.str(), m, std::to_string(u.table.a), std::to_string(u.table.b),
                             std::to_string(u.table.c), std::to_string(u.table.d), "", "", "", "",
                             "false", "false"});
    }
}

}  // namespace adrsig
