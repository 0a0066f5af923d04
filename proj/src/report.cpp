#include "rps/report.hpp"

#include <json.hpp>

#include <algorithm>
#include <ostream>

#include "rps/errors.hpp"
#include "rps/format.hpp"

namespace rps {

namespace {

using nlohmann::ordered_json;

std::optional<TestResult> test_or_absent(const std::vector<double>& values, WilcoxonMethod method) {
    try {
        return wilcoxon_signed_rank(values, method);
    } catch (const DegenerateSample&) {
        return std::nullopt;
    }
}

std::optional<double> p_of(const std::optional<TestResult>& r) {
    if (!r) return std::nullopt;
    return r->p_two_tailed;
}

std::string p_cell(const std::optional<double>& p) { return p ? format_p(*p) : "NA"; }

ordered_json nullable(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json stats_json(const CycleStats<double>& s) {
    return {{"cct", s.cct}, {"ct", s.ct}, {"c", s.c}, {"cri", s.cri}};
}

}  // namespace

std::string starred(double value, int decimals, const std::optional<double>& p) {
    return format_fixed(value, decimals) + (p && *p < kStarLevel ? "*" : "");
}

std::string_view to_string(CountingRule rule) { return rule == CountingRule::kCorrected ? "corrected" : "legacy"; }

CountingRule parse_counting_rule(std::string_view name) {
    if (name == "corrected") return CountingRule::kCorrected;
    if (name == "legacy") return CountingRule::kLegacy;
    throw ArgumentError("unknown counting rule '" + std::string(name) + "' (corrected|legacy)");
}

TreatmentReport count_treatment(const Treatment& treatment, const Tripwire<double>& tripwire, CountingRule rule,
                                WilcoxonMethod method) {
    if (treatment.blocks.empty()) {
        throw EmptyInput("treatment '" + treatment.label + "' has no blocks");
    }
    TreatmentReport r;
    r.treatment = treatment.label;
    r.alpha = tripwire.alpha();
    r.beta = tripwire.beta();
    r.rule = rule;
    r.method = method;
    for (const auto& block : treatment.blocks) {
        r.block_ids.push_back(block.block_id);
        r.blocks.push_back(count_block(block, tripwire, rule));
    }
    r.summary = summarize_treatment(r.blocks);
    r.cri_test = test_or_absent(r.summary.block_cri, method);
    r.c_test = test_or_absent(r.summary.block_c, method);
    return r;
}

std::vector<TreatmentReport> count_dataset(const DataSet& data, const Tripwire<double>& tripwire, CountingRule rule,
                                           WilcoxonMethod method) {
    std::vector<TreatmentReport> out;
    for (const auto& t : data.treatments) out.push_back(count_treatment(t, tripwire, rule, method));
    return out;
}

void write_count_tsv(std::ostream& out, const std::vector<TreatmentReport>& reports) {
    out << "# cycle rotation index\n";
    out << "treatment\talpha\tbeta\tccw_transits\tcw_transits\tcri\tp\n";
    for (const auto& r : reports) {
        out << r.treatment << '\t' << format_shortest(r.alpha) << '\t' << format_shortest(r.beta) << '\t'
            << format_fixed(r.summary.mean_cct, 1) << '\t' << format_fixed(r.summary.mean_ct, 1) << '\t'
            << starred(r.summary.mean_cri, 2, p_of(r.cri_test)) << '\t' << p_cell(p_of(r.cri_test)) << '\n';
    }

    std::size_t width = 0;
    for (const auto& r : reports) width = std::max(width, r.blocks.size());
    out << "\n# accumulated cycle count\n";
    out << "treatment\talpha\tbeta";
    for (std::size_t b = 1; b <= width; ++b) out << "\tB" << b;
    out << "\tc_bar\tp\n";
    for (const auto& r : reports) {
        out << r.treatment << '\t' << format_shortest(r.alpha) << '\t' << format_shortest(r.beta);
        for (std::size_t b = 0; b < width; ++b) {
            out << '\t';
            if (b < r.blocks.size()) out << format_shortest(r.blocks[b].c);
        }
        out << '\t' << starred(r.summary.c_bar, 1, p_of(r.c_test)) << '\t' << p_cell(p_of(r.c_test)) << '\n';
    }
}

void write_count_json(std::ostream& out, const std::vector<TreatmentReport>& reports) {
    ordered_json doc = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json blocks = ordered_json::array();
        for (std::size_t b = 0; b < r.blocks.size(); ++b) {
            auto j = stats_json(r.blocks[b]);
            j["block"] = r.block_ids[b];
            blocks.push_back(std::move(j));
        }
        doc.push_back({{"treatment", r.treatment},
                       {"alpha", r.alpha},
                       {"beta", r.beta},
                       {"rule", to_string(r.rule)},
                       {"method", to_string(r.method)},
                       {"n_blocks", r.summary.n_blocks},
                       {"mean_ccw_transits", r.summary.mean_cct},
                       {"mean_cw_transits", r.summary.mean_ct},
                       {"mean_cri", r.summary.mean_cri},
                       {"p_cri", nullable(p_of(r.cri_test))},
                       {"c_bar", r.summary.c_bar},
                       {"p_c", nullable(p_of(r.c_test))},
                       {"blocks", std::move(blocks)}});
    }
    out << doc.dump(2) << '\n';
}

std::vector<ComparisonRow> compare_dataset(const DataSet& data, const Tripwire<double>& tripwire,
                                           WilcoxonMethod method) {
    std::vector<ComparisonRow> rows;
    for (const auto& t : data.treatments) {
        const auto before = count_treatment(t, tripwire, CountingRule::kLegacy, method);
        const auto after = count_treatment(t, tripwire, CountingRule::kCorrected, method);
        auto row = [&](const TreatmentReport& r, ScanIndex index) {
            const bool cri = index == ScanIndex::kCri;
            return ComparisonRow{t.label,  tripwire.alpha(), tripwire.beta(), r.rule, index,
                                 cri ? r.summary.mean_cri : r.summary.c_bar, p_of(cri ? r.cri_test : r.c_test)};
        };
        rows.push_back(row(before, ScanIndex::kCri));
        rows.push_back(row(after, ScanIndex::kCri));
        rows.push_back(row(before, ScanIndex::kC));
        rows.push_back(row(after, ScanIndex::kC));
    }
    return rows;
}

void write_compare_tsv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    out << "treatment\talpha\tbeta\talgorithm\tindex\tmean\tp\n";
    for (const auto& r : rows) {
        out << r.treatment << '\t' << format_shortest(r.alpha) << '\t' << format_shortest(r.beta) << '\t'
            << (r.rule == CountingRule::kLegacy ? "before" : "after") << '\t'
            << (r.index == ScanIndex::kCri ? "CRI" : "C") << '\t' << starred(r.mean, 2, r.p) << '\t' << p_cell(r.p)
            << '\n';
    }
}

void write_compare_json(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    ordered_json doc = ordered_json::array();
    for (const auto& r : rows) {
        doc.push_back({{"treatment", r.treatment},
                       {"alpha", r.alpha},
                       {"beta", r.beta},
                       {"algorithm", r.rule == CountingRule::kLegacy ? "before" : "after"},
                       {"rule", to_string(r.rule)},
                       {"index", to_string(r.index)},
                       {"mean", r.mean},
                       {"p", nullable(r.p)}});
    }
    out << doc.dump(2) << '\n';
}

void write_scan_tsv(std::ostream& out, const ScanGrid<double>& grid) {
    auto p = [](const std::optional<double>& v) { return v ? format_shortest(*v) : std::string("NA"); };
    out << "alpha\tbeta\tmean_cri\tp_cri\tc_bar\tp_c\tn_blocks\n";
    for (const auto& c : grid.cells) {
        out << format_shortest(c.alpha) << '\t' << format_shortest(c.beta) << '\t' << format_shortest(c.mean_cri)
            << '\t' << p(c.p_cri) << '\t' << format_shortest(c.c_bar) << '\t' << p(c.p_c) << '\t' << c.n_blocks()
            << '\n';
    }
}

void write_scan_json(std::ostream& out, const ScanGrid<double>& grid, const std::string& treatment,
                     const ScanOptions& options) {
    ordered_json cells = ordered_json::array();
    for (const auto& c : grid.cells) {
        ordered_json blocks = ordered_json::array();
        for (const auto& b : c.blocks) blocks.push_back(stats_json(b));
        cells.push_back({{"alpha", c.alpha},
                         {"beta", c.beta},
                         {"mean_cri", c.mean_cri},
                         {"p_cri", nullable(c.p_cri)},
                         {"c_bar", c.c_bar},
                         {"p_c", nullable(c.p_c)},
                         {"n_blocks", c.n_blocks()},
                         {"blocks", std::move(blocks)}});
    }
    ordered_json doc = {{"treatment", treatment},
                        {"step", grid.step},
                        {"rule", to_string(options.rule)},
                        {"method", to_string(options.method)},
                        {"cells", std::move(cells)}};
    out << doc.dump(2) << '\n';
}

void write_significant_tsv(std::ostream& out, const std::vector<SignificantAnchor<double>>& anchors) {
    out << "rank\talpha\tbeta\tp\tmean_index\n";
    std::size_t rank = 1;
    for (const auto& a : anchors) {
        out << rank++ << '\t' << format_shortest(a.alpha) << '\t' << format_shortest(a.beta) << '\t'
            << format_shortest(a.p) << '\t' << format_shortest(a.mean_index) << '\n';
    }
}

}  // namespace rps
