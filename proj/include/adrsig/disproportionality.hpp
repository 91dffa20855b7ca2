#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "adrsig/windowing.hpp"

namespace adrsig {

enum class Method { Ror, Prr };
enum class ZeroPolicy {
    /// A zero cell makes the statistic undefined.
    Strict,
    /// Add 0.5 to every cell when any cell is zero.
    Haldane,
};

std::string_view to_string(Method method);
std::string_view to_string(ZeroPolicy policy);
std::optional<Method> parse_method(std::string_view text);
std::optional<ZeroPolicy> parse_zero_policy(std::string_view text);

/// Two-sided 95% normal quantile used for every interval.
inline constexpr double kZ95 = 1.96;

/// Disproportionality estimate with its log-scale 95% interval.
///
/// `signaled` is true when the lower bound of the interval exceeds 1, i.e.
/// ln(estimate) - 1.96 * se_ln > 0.
struct SignalStats {
    Method method = Method::Ror;
    double estimate = 0.0;
    double se_ln = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    bool signaled = false;
    bool correction_applied = false;
};

/// Raised under ZeroPolicy::Strict when a cell needed by the statistic is zero.
class UndefinedStatistic : public std::domain_error {
public:
    UndefinedStatistic(Method method, char cell);
    /// 'a'..'d'
    char cell() const noexcept { return cell_; }

private:
    char cell_;
};

/// First zero cell in a, b, c, d order, if any.
std::optional<char> first_zero_cell(const ContingencyTable& t);

/// Reporting odds ratio (a/b)/(c/d), SE(ln ROR) = sqrt(1/a + 1/b + 1/c + 1/d).
SignalStats ror(const ContingencyTable& t, ZeroPolicy policy = ZeroPolicy::Strict);

/// Proportional reporting ratio [a/(a+c)]/[b/(b+d)].
///
/// The standard error is deliberately sqrt(1/a - 1/(a+b) + 1/c + 1/(c+d)).
/// The usual textbook expression is
/// sqrt(1/a - 1/(a+c) + 1/b - 1/(b+d)); the two differ whenever b != c, so
/// intervals and signal flags will not match tools that use the latter.
SignalStats prr(const ContingencyTable& t, ZeroPolicy policy = ZeroPolicy::Strict);

SignalStats compute(Method method, const ContingencyTable& t, ZeroPolicy policy);

struct RankedSignal {
    EventKey event;
    ContingencyTable table;
    SignalStats stats;
};

struct UndefinedSignal {
    EventKey event;
    ContingencyTable table;
    char zero_cell = 'a';
};

struct SignalRanking {
    /// Estimate descending, ties by event key ascending.
    std::vector<RankedSignal> ranked;
    /// Events whose statistic is undefined under Strict, by event key.
    std::vector<UndefinedSignal> undefined;
};

/// Evaluates `method` for `drug` against every event in the universe.
/// `threads` != 1 fans out over events; output does not depend on it.
SignalRanking rank_signals(const AssociationSet& assoc, const DrugId& drug, Method method,
                           ZeroPolicy policy, unsigned threads = 1);

/// Same, over a precomputed event→table map (for example from
/// contingency_at_level).
SignalRanking rank_tables(const std::map<EventKey, ContingencyTable>& tables, Method method,
                          ZeroPolicy policy, unsigned threads = 1);

/// Header of the signal CSV.
inline const std::vector<std::string_view> kSignalsHeader = {
    "event", "method", "a", "b", "c", "d", "estimate", "se_ln",
    "ci_low", "ci_high", "signaled", "correction_applied"};

/// Writes ranked rows, then undefined rows with empty statistic columns and
/// signaled=false, so the file lists the whole event universe.
void write_signals_csv(std::ostream& out, const SignalRanking& ranking, Method method);

}  // namespace adrsig
