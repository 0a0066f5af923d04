#pragma once

// Treatment-level result tables and the scan grid emitters.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rps/cycle_counter.hpp"
#include "rps/dataset.hpp"
#include "rps/scanner.hpp"
#include "rps/stats.hpp"

namespace rps {

/// Two-tailed threshold for the `*` flag in tables.
inline constexpr double kStarLevel = 0.05;

struct TreatmentReport {
    std::string treatment;
    double alpha = 0;
    double beta = 0;
    CountingRule rule = CountingRule::kCorrected;
    WilcoxonMethod method = WilcoxonMethod::kNormalPratt;
    std::vector<std::string> block_ids;
    std::vector<CycleStats<double>> blocks;
    TreatmentSummary<double> summary;
    std::optional<TestResult> cri_test;  ///< absent when every block CRI is 0
    std::optional<TestResult> c_test;    ///< absent when every block C is 0
};

TreatmentReport count_treatment(const Treatment& treatment, const Tripwire<double>& tripwire,
                                CountingRule rule = CountingRule::kCorrected,
                                WilcoxonMethod method = WilcoxonMethod::kNormalPratt);

std::vector<TreatmentReport> count_dataset(const DataSet& data, const Tripwire<double>& tripwire,
                                           CountingRule rule = CountingRule::kCorrected,
                                           WilcoxonMethod method = WilcoxonMethod::kNormalPratt);

/// Two tab-separated sections: the rotation-index table (mean CCW and CW
/// transits, mean CRI, p) and the accumulated-count table (per-block C, mean
/// C, p). Lines starting with '#' name the sections.
void write_count_tsv(std::ostream& out, const std::vector<TreatmentReport>& reports);
void write_count_json(std::ostream& out, const std::vector<TreatmentReport>& reports);

/// One before/after row of the legacy-vs-corrected comparison.
struct ComparisonRow {
    std::string treatment;
    double alpha = 0;
    double beta = 0;
    CountingRule rule = CountingRule::kCorrected;
    ScanIndex index = ScanIndex::kCri;
    double mean = 0;
    std::optional<double> p;
};

/// Rows in order: legacy CRI, corrected CRI, legacy C, corrected C, per treatment.
std::vector<ComparisonRow> compare_dataset(const DataSet& data, const Tripwire<double>& tripwire,
                                           WilcoxonMethod method = WilcoxonMethod::kNormalPratt);

void write_compare_tsv(std::ostream& out, const std::vector<ComparisonRow>& rows);
void write_compare_json(std::ostream& out, const std::vector<ComparisonRow>& rows);

/// Columns: alpha, beta, mean_cri, p_cri, c_bar, p_c, n_blocks. Absent
/// p-values print as NA.
void write_scan_tsv(std::ostream& out, const ScanGrid<double>& grid);
void write_scan_json(std::ostream& out, const ScanGrid<double>& grid, const std::string& treatment,
                     const ScanOptions& options);

/// Columns: rank, alpha, beta, p, mean_index.
void write_significant_tsv(std::ostream& out, const std::vector<SignificantAnchor<double>>& anchors);

/// "4.2*" style cell: value with `decimals` digits, starred when p < kStarLevel.
std::string starred(double value, int decimals, const std::optional<double>& p);

std::string_view to_string(CountingRule rule);
CountingRule parse_counting_rule(std::string_view name);

}  // namespace rps
