#pragma once

// Tripwire anchor scan over the interior of the strategy simplex.
//
// Anchors are the grid nodes (i * step, j * step) with i, j >= 1 and
// (i + j) * step < 1. Coordinates are snapped to a 1e-12 decimal lattice so
// that e.g. 23 * 0.01 is exactly the double nearest 0.23, and a scan at
// step / 2 reproduces the shared anchors bit for bit.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rps/cycle_counter.hpp"
#include "rps/errors.hpp"
#include "rps/simplex.hpp"
#include "rps/stats.hpp"

namespace rps {

enum class ScanIndex { kCri, kC };

inline std::string_view to_string(ScanIndex index);
inline ScanIndex parse_scan_index(std::string_view name);

template <typename Scalar>
struct ScanCell {
    Scalar alpha = 0;
    Scalar beta = 0;
    std::vector<CycleStats<Scalar>> blocks;
    Scalar mean_cri = 0;
    Scalar c_bar = 0;
    std::optional<double> p_cri;  ///< absent when every block CRI is 0
    std::optional<double> p_c;    ///< absent when every block C is 0

    Index n_blocks() const noexcept { return static_cast<Index>(blocks.size()); }
};

template <typename Scalar>
struct ScanGrid {
    Scalar step = 0;
    std::vector<ScanCell<Scalar>> cells;  ///< ordered by alpha, then beta
};

struct ScanOptions {
    CountingRule rule = CountingRule::kCorrected;
    WilcoxonMethod method = WilcoxonMethod::kNormalPratt;
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

inline constexpr double kDefaultScanStep = 0.01;

template <typename Scalar>
Scalar snap_grid_coordinate(Index i, Scalar step) {
    return std::round(Scalar(i) * step * Scalar(1e12)) / Scalar(1e12);
}

template <typename Scalar>
void validate_step(Scalar step) {
    if (!(step > Scalar(0) && step <= Scalar(0.5))) {
        throw InvalidStep("scan step must lie in (0, 0.5], got " + std::to_string(double(step)));
    }
}

/// Interior anchors for `step`, ordered by alpha then beta.
template <typename Scalar>
std::vector<Point2<Scalar>> grid_anchors(Scalar step) {
    validate_step(step);
    const Scalar limit = Scalar(1) - Scalar(1e-12);
    std::vector<Point2<Scalar>> anchors;
    for (Index i = 1; Scalar(i + 1) * step < limit; ++i) {
        for (Index j = 1; Scalar(i + j) * step < limit; ++j) {
            anchors.emplace_back(snap_grid_coordinate(i, step), snap_grid_coordinate(j, step));
        }
    }
    return anchors;
}

namespace detail {

inline std::optional<double> p_value_or_absent(const std::vector<double>& values, WilcoxonMethod method) {
    try {
        return wilcoxon_signed_rank(values, method).p_two_tailed;
    } catch (const DegenerateSample&) {
        return std::nullopt;
    }
}

}  // namespace detail

/// Counts every block against one anchor and tests both indices against 0.
template <typename Scalar>
ScanCell<Scalar> evaluate_anchor(std::span<const Trajectory<Scalar>> blocks, const Tripwire<Scalar>& tripwire,
                                 const ScanOptions& options = {}) {
    ScanCell<Scalar> cell;
    cell.alpha = tripwire.alpha();
    cell.beta = tripwire.beta();
    cell.blocks.reserve(blocks.size());
    for (const auto& block : blocks) {
        cell.blocks.push_back(count_block(block, tripwire, options.rule));
    }
    const auto summary = summarize_treatment(std::span<const CycleStats<Scalar>>(cell.blocks));
    cell.mean_cri = summary.mean_cri;
    cell.c_bar = summary.c_bar;
    const std::vector<double> cri(summary.block_cri.begin(), summary.block_cri.end());
    const std::vector<double> c(summary.block_c.begin(), summary.block_c.end());
    cell.p_cri = detail::p_value_or_absent(cri, options.method);
    cell.p_c = detail::p_value_or_absent(c, options.method);
    return cell;
}

template <typename Scalar>
ScanGrid<Scalar> scan(std::span<const Trajectory<Scalar>> blocks, Scalar step, const ScanOptions& options = {}) {
    validate_step(step);
    if (blocks.empty()) {
        throw EmptyInput("scan needs at least one block");
    }
    for (const auto& block : blocks) {
        if (block.size() < 2) {
            throw TooShortTrajectory("block '" + block.block_id + "' has fewer than 2 points");
        }
    }
    const auto anchors = grid_anchors(step);
    ScanGrid<Scalar> grid;
    grid.step = step;
    grid.cells.resize(anchors.size());

    // Each worker writes only the cells it claims; the layout is fixed by anchor order.
    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::exception_ptr failure;
    auto worker = [&] {
        try {
            for (std::size_t k = next++; k < anchors.size(); k = next++) {
                grid.cells[k] = evaluate_anchor(blocks, Tripwire<Scalar>(anchors[k].x(), anchors[k].y()), options);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = anchors.size();
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(anchors.size(), 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return grid;
}

template <typename Scalar>
ScanGrid<Scalar> scan(const std::vector<Trajectory<Scalar>>& blocks, Scalar step, const ScanOptions& options = {}) {
    return scan(std::span<const Trajectory<Scalar>>(blocks), step, options);
}

template <typename Scalar>
struct SignificantAnchor {
    Scalar alpha = 0;
    Scalar beta = 0;
    double p = 1;
    Scalar mean_index = 0;
};

/// Anchors with p < level for the chosen index, ascending by p, then by
/// |mean index| descending, then by (alpha, beta).
template <typename Scalar>
std::vector<SignificantAnchor<Scalar>> find_significant(const ScanGrid<Scalar>& grid, double level,
                                                        ScanIndex index = ScanIndex::kCri) {
    if (!(level > 0.0 && level < 1.0)) {
        throw ArgumentError("significance level must lie in (0, 1)");
    }
    std::vector<SignificantAnchor<Scalar>> out;
    for (const auto& cell : grid.cells) {
        const auto& p = index == ScanIndex::kCri ? cell.p_cri : cell.p_c;
        if (p && *p < level) {
            out.push_back({cell.alpha, cell.beta, *p, index == ScanIndex::kCri ? cell.mean_cri : cell.c_bar});
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.p != b.p) return a.p < b.p;
        if (std::abs(a.mean_index) != std::abs(b.mean_index)) return std::abs(a.mean_index) > std::abs(b.mean_index);
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return a.beta < b.beta;
    });
    return out;
}

inline std::string_view to_string(ScanIndex index) { return index == ScanIndex::kCri ? "cri" : "c"; }

inline ScanIndex parse_scan_index(std::string_view name) {
    if (name == "cri") return ScanIndex::kCri;
    if (name == "c") return ScanIndex::kC;
    throw ArgumentError("unknown scan index '" + std::string(name) + "' (cri|c)");
}

}  // namespace rps
