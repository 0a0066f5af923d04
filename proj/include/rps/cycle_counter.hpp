#pragma once

// Tripwire crossing counts for a single transit and for whole blocks.

#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <vector>

#include "rps/errors.hpp"
#include "rps/simplex.hpp"

namespace rps {

enum class CountingRule {
    kCorrected,
    /// Midpoint test instead of the crossing point, endpoint-on-line cases zeroed.
    kLegacy,
};

enum class TransitCondition {
    kNone,           ///< no count: no crossing, off the section, or x2 == x1
    kStrictCrossing, ///< x strictly straddles alpha
    kEndpointOnLine, ///< exactly one endpoint has x == alpha
};

/// Signed contribution of one transit, held in half units so that
/// accumulation is exact: value() is one of -1, -1/2, 0, +1/2, +1.
struct TransitCount {
    int half_units = 0;
    TransitCondition condition = TransitCondition::kNone;

    template <typename Scalar = double>
    Scalar value() const {
        return Scalar(half_units) / Scalar(2);
    }

    friend bool operator==(const TransitCount&, const TransitCount&) = default;
};

template <typename Scalar>
TransitCount classify_transit(const Transit<Scalar>& transit, const Tripwire<Scalar>& tripwire) {
    const Scalar alpha = tripwire.alpha();
    const Scalar x1 = transit.from.x();
    const Scalar x2 = transit.to.x();
    const auto crossing = crossing_point(transit, tripwire);
    if (!crossing || !on_tripwire(*crossing, tripwire)) {
        return {};
    }
    if (x2 > alpha && alpha > x1) return {2, TransitCondition::kStrictCrossing};
    if (x2 < alpha && alpha < x1) return {-2, TransitCondition::kStrictCrossing};
    if (x1 == alpha || x2 == alpha) {
        return {x2 > x1 ? 1 : -1, TransitCondition::kEndpointOnLine};
    }
    return {};
}

/// The original counting code: a strict straddle plus a midpoint height test
/// (y1 + y2) / 2 < beta, and zero for every endpoint-on-line transit.
template <typename Scalar>
TransitCount classify_transit_legacy(const Transit<Scalar>& transit, const Tripwire<Scalar>& tripwire) {
    const Scalar alpha = tripwire.alpha();
    const Scalar x1 = transit.from.x();
    const Scalar x2 = transit.to.x();
    const bool below = (transit.from.y() + transit.to.y()) / Scalar(2) < tripwire.beta();
    if (!below) return {};
    if (x2 > alpha && alpha > x1) return {2, TransitCondition::kStrictCrossing};
    if (x2 < alpha && alpha < x1) return {-2, TransitCondition::kStrictCrossing};
    return {};
}

template <typename Scalar>
TransitCount classify(const Transit<Scalar>& transit, const Tripwire<Scalar>& tripwire, CountingRule rule) {
    return rule == CountingRule::kCorrected ? classify_transit(transit, tripwire)
                                            : classify_transit_legacy(transit, tripwire);
}

/// Per-block counts. cct and ct are sums of positive and |negative| transit
/// counts, c = cct - ct, and cri = c / (cct + ct) with cri = 0 when the block
/// never touches the tripwire.
template <typename Scalar>
struct CycleStats {
    Scalar cct = 0;
    Scalar ct = 0;
    Scalar c = 0;
    Scalar cri = 0;

    static CycleStats from_half_units(std::int64_t positive, std::int64_t negative) {
        CycleStats s;
        s.cct = Scalar(positive) / Scalar(2);
        s.ct = Scalar(negative) / Scalar(2);
        s.c = Scalar(positive - negative) / Scalar(2);
        const std::int64_t total = positive + negative;
        s.cri = total > 0 ? Scalar(positive - negative) / Scalar(total) : Scalar(0);
        return s;
    }

    friend bool operator==(const CycleStats&, const CycleStats&) = default;
};

template <typename Scalar>
CycleStats<Scalar> count_block(const Trajectory<Scalar>& trajectory, const Tripwire<Scalar>& tripwire,
                               CountingRule rule = CountingRule::kCorrected) {
    if (trajectory.size() < 2) {
        throw TooShortTrajectory("block '" + trajectory.block_id + "' has fewer than 2 points");
    }
    std::int64_t positive = 0;
    std::int64_t negative = 0;
    for (Index t = 0; t < trajectory.transit_count(); ++t) {
        const int h = classify(trajectory.transit(t), tripwire, rule).half_units;
        if (h > 0) positive += h;
        else negative -= h;
    }
    return CycleStats<Scalar>::from_half_units(positive, negative);
}

/// Treatment-level aggregate over blocks. The treatment CRI is the mean of
/// the per-block CRIs, not the CRI of pooled counts.
template <typename Scalar>
struct TreatmentSummary {
    Index n_blocks = 0;
    Scalar mean_cct = 0;
    Scalar mean_ct = 0;
    Scalar mean_cri = 0;
    Scalar c_bar = 0;
    std::vector<Scalar> block_c;
    std::vector<Scalar> block_cri;
};

template <typename Scalar>
TreatmentSummary<Scalar> summarize_treatment(std::span<const CycleStats<Scalar>> blocks) {
    if (blocks.empty()) {
        throw EmptyInput("treatment has no blocks");
    }
    TreatmentSummary<Scalar> out;
    out.n_blocks = static_cast<Index>(blocks.size());
    Scalar cct = 0, ct = 0;
    for (const auto& b : blocks) {
        cct += b.cct;
        ct += b.ct;
        out.block_c.push_back(b.c);
        out.block_cri.push_back(b.cri);
    }
    const Scalar n = Scalar(blocks.size());
    out.mean_cct = cct / n;
    out.mean_ct = ct / n;
    out.mean_cri = std::accumulate(out.block_cri.begin(), out.block_cri.end(), Scalar(0)) / n;
    out.c_bar = std::accumulate(out.block_c.begin(), out.block_c.end(), Scalar(0)) / n;
    return out;
}

template <typename Scalar>
TreatmentSummary<Scalar> summarize_treatment(const std::vector<CycleStats<Scalar>>& blocks) {
    return summarize_treatment(std::span<const CycleStats<Scalar>>(blocks));
}

}  // namespace rps
