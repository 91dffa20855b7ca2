#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "adrsig/model.hpp"

namespace adrsig {

/// Codes that together represent one known adverse reaction (for example
/// every code meaning "nausea", at whatever level it was recorded).
struct KnownAdeSet {
    std::string name;
    std::vector<EventKey> codes;
};

/// Confusion counts where positives are known reactions and negatives are
/// individual events outside every known set:
///   A  known sets with at least one signaled code
///   B  signaled events outside all known sets
///   C  known sets with no signaled code
///   D  unsignaled events outside all known sets
struct ConfusionCounts {
    std::uint64_t A = 0;
    std::uint64_t B = 0;
    std::uint64_t C = 0;
    std::uint64_t D = 0;
    std::uint64_t n = 0;

    /// A / (A + C)
    double tpr() const { return static_cast<double>(A) / static_cast<double>(A + C); }
    /// 1 - D / (B + D)
    double fpr() const { return 1.0 - static_cast<double>(D) / static_cast<double>(B + D); }

    friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Throws PreconditionError when a known or signaled key lies outside
/// `universe`, a known set is empty, or keys of different kinds are mixed.
ConfusionCounts confusion(const std::set<EventKey>& signaled, const std::vector<KnownAdeSet>& known,
                          const std::set<EventKey>& universe);

struct RocPoint {
    double threshold = 0.0;
    double fpr = 0.0;
    double tpr = 0.0;

    friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

struct RocCurve {
    /// Ordered by decreasing threshold; FPR and TPR never decrease.
    std::vector<RocPoint> points;
    std::uint64_t n_pos = 0;
    std::uint64_t n_neg = 0;
};

/// Missing or non-finite scores are "undefined": never signaled at any
/// finite threshold.
using ScoreMap = std::map<EventKey, std::optional<double>>;

/// Sweeps `score >= threshold` through the distinct finite scores, highest
/// first. The curve starts at the empty signal set (threshold +inf), and ends
/// with every universe event signaled (threshold -inf). Consecutive points
/// with the same (FPR, TPR) keep the highest threshold.
///
/// Requires at least one known set and at least one event outside them.
RocCurve roc_curve(const ScoreMap& scores, const std::vector<KnownAdeSet>& known,
                   const std::set<EventKey>& universe);

/// Trapezoidal area under the curve anchored at (0,0) and (1,1).
double auc(const RocCurve& curve);

/// Trapezoidal area for FPR in [0, fpr_max], interpolating at fpr_max.
/// Not normalized, so the maximum is fpr_max. fpr_max must lie in (0, 1].
double partial_auc(const RocCurve& curve, double fpr_max);

/// Hanley-McNeil standard error of an area:
///   sqrt((A(1-A) + (n_pos-1)(Q1-A^2) + (n_neg-1)(Q2-A^2)) / (n_pos n_neg)),
///   Q1 = A/(2-A), Q2 = 2A^2/(1+A).
double auc_se(double area, std::uint64_t n_pos, std::uint64_t n_neg);

struct AucResult {
    double auc = 0.0;
    double se = 0.0;
    std::uint64_t n_pos = 0;
    std::uint64_t n_neg = 0;
};

/// Full-curve area with its Hanley-McNeil SE.
AucResult auc_result(const RocCurve& curve);

/// Partial area with the same SE machinery applied to it. The Hanley-McNeil
/// derivation assumes a full area, so treat this SE as indicative only.
AucResult partial_auc_result(const RocCurve& curve, double fpr_max);

struct AucComparison {
    double z = 0.0;
    double p = 1.0;
};

/// z = (a1 - a2) / sqrt(se1^2 + se2^2 - 2 r se1 se2) with a two-sided normal
/// p-value. `r` is the correlation between the two areas, 0 for independent
/// data. Throws DataError when the variance is zero.
AucComparison compare_auc(const AucResult& a1, const AucResult& a2, double r = 0.0);

/// Per known set, whether any of its codes is in `signaled`.
std::vector<std::pair<std::string, bool>> detect_known(const std::set<EventKey>& signaled,
                                                       const std::vector<KnownAdeSet>& known);

/// TSV `threshold\tfpr\ttpr` with a header line.
void write_roc_tsv(std::ostream& out, const RocCurve& curve);

}  // namespace adrsig
