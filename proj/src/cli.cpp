#include "rps/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rps/dataset.hpp"
#include "rps/errors.hpp"
#include "rps/format.hpp"
#include "rps/report.hpp"
#include "rps/scanner.hpp"
#include "rps/stats.hpp"
#include "rps/synth.hpp"

namespace rps {

namespace {

struct CommonArgs {
    double alpha = 0.25;
    double beta = 0.25;
    std::string rule = "corrected";
    std::string method = "pratt";
    std::string format = "tsv";
    std::string out;
};

struct ScanArgs {
    std::string data;
    double step = kDefaultScanStep;
    double level = kStarLevel;
    std::string index = "cri";
    unsigned threads = 0;
    std::size_t top = 10;
    std::string treatment;
};

struct SimulateArgs {
    std::string kind;
    std::string center = "0.3333333333333333,0.3333333333333333";
    double radius = 0.1;
    double turns = 1;
    int points_per_turn = 36;
    double noise = 0;
    std::uint64_t seed = 0;
    int population = 8;
    int blocks = 1;
    std::string treatment = "synthetic";
};

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto last = item.find_last_not_of(" \t");
        std::string_view v(item.data() + first, last - first + 1);
        double value = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
        if (ec != std::errc{} || ptr != v.data() + v.size()) {
            throw ArgumentError("not a number: '" + std::string(v) + "'");
        }
        values.push_back(value);
    }
    return values;
}

std::string slug(const std::string& label) {
    std::string s = label;
    for (char& ch : s) {
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.')) ch = '_';
    }
    return s.empty() ? "treatment" : s;
}

void check_format(const std::string& format) {
    if (format != "tsv" && format != "json") throw ArgumentError("unknown format '" + format + "' (tsv|json)");
}

// Runs `write` against --out when given, otherwise against stdout.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(out);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw ArgumentError("cannot write '" + path + "'");
    write(file);
}

void add_common(CLI::App* cmd, CommonArgs& args, bool with_rule) {
    cmd->add_option("--alpha", args.alpha, "tripwire anchor x")->capture_default_str();
    cmd->add_option("--beta", args.beta, "tripwire anchor y")->capture_default_str();
    if (with_rule) cmd->add_option("--rule", args.rule, "corrected|legacy")->capture_default_str();
    cmd->add_option("--method", args.method, "pratt|drop|exact")->capture_default_str();
    cmd->add_option("--format", args.format, "tsv|json")->capture_default_str();
    cmd->add_option("--out", args.out, "output file (default stdout)");
}

int cmd_count(const std::string& data_path, const CommonArgs& args, std::ostream& out) {
    check_format(args.format);
    const auto data = load_csv(data_path);
    const auto reports =
        count_dataset(data, Tripwire<double>(args.alpha, args.beta), parse_counting_rule(args.rule),
                      parse_wilcoxon_method(args.method));
    emit(args.out, out, [&](std::ostream& os) {
        if (args.format == "json") write_count_json(os, reports);
        else write_count_tsv(os, reports);
    });
    return kExitOk;
}

int cmd_compare(const std::string& data_path, const CommonArgs& args, std::ostream& out) {
    check_format(args.format);
    const auto data = load_csv(data_path);
    const auto rows = compare_dataset(data, Tripwire<double>(args.alpha, args.beta), parse_wilcoxon_method(args.method));
    emit(args.out, out, [&](std::ostream& os) {
        if (args.format == "json") write_compare_json(os, rows);
        else write_compare_tsv(os, rows);
    });
    return kExitOk;
}

int cmd_scan(const ScanArgs& scan_args, const CommonArgs& args, std::ostream& out) {
    check_format(args.format);
    validate_step(scan_args.step);
    const ScanIndex index = parse_scan_index(scan_args.index);
    ScanOptions options;
    options.rule = parse_counting_rule(args.rule);
    options.method = parse_wilcoxon_method(args.method);
    options.threads = scan_args.threads;
    const auto data = load_csv(scan_args.data);
    if (args.out.empty()) throw ArgumentError("scan needs --out DIR");
    std::filesystem::create_directories(args.out);

    bool matched = false;
    for (const auto& t : data.treatments) {
        if (!scan_args.treatment.empty() && t.label != scan_args.treatment) continue;
        matched = true;
        const auto grid = scan(t.blocks, scan_args.step, options);
        const auto significant = find_significant(grid, scan_args.level, index);
        const std::filesystem::path base = std::filesystem::path(args.out) / slug(t.label);

        std::ofstream grid_file(base.string() + ".grid." + args.format, std::ios::binary);
        if (args.format == "json") write_scan_json(grid_file, grid, t.label, options);
        else write_scan_tsv(grid_file, grid);
        std::ofstream sig_file(base.string() + ".significant.tsv", std::ios::binary);
        write_significant_tsv(sig_file, significant);

        out << "# " << t.label << ": " << significant.size() << " of " << grid.cells.size()
            << " anchors with p < " << format_shortest(scan_args.level) << " (index " << to_string(index) << ")\n";
        std::vector<SignificantAnchor<double>> head(
            significant.begin(),
            significant.begin() + static_cast<std::ptrdiff_t>(std::min(scan_args.top, significant.size())));
        write_significant_tsv(out, head);
    }
    if (!matched) throw DataError("no treatment named '" + scan_args.treatment + "'");
    return kExitOk;
}

int cmd_simulate(const SimulateArgs& sim, const std::string& out_path, std::ostream& out) {
    const auto center = parse_number_list(sim.center);
    if (center.size() != 2) throw ArgumentError("--center expects x,y");
    if (sim.blocks < 1) throw ArgumentError("--blocks must be positive");
    GeneratorSpec<double> spec;
    spec.kind = parse_generator_kind(sim.kind);
    spec.center = Point2<double>(center[0], center[1]);
    spec.radius = sim.radius;
    spec.turns = sim.turns;
    spec.points_per_turn = sim.points_per_turn;
    spec.noise = sim.noise;
    spec.population_n = sim.population;

    std::vector<Trajectory<double>> blocks;
    for (int b = 0; b < sim.blocks; ++b) {
        spec.seed = sim.seed + static_cast<std::uint64_t>(b);
        blocks.push_back(generate(spec, sim.treatment, "B" + std::to_string(b + 1)));
    }
    emit(out_path, out, [&](std::ostream& os) { write_csv(os, blocks); });
    return kExitOk;
}

int cmd_test(const std::vector<double>& positional, const std::string& list, const std::string& method,
             std::ostream& out) {
    std::vector<double> values = positional;
    if (!list.empty()) {
        const auto more = parse_number_list(list);
        values.insert(values.end(), more.begin(), more.end());
    }
    if (values.empty()) throw ArgumentError("test needs at least one value");
    const auto r = wilcoxon_signed_rank(values, parse_wilcoxon_method(method));
    out << "n\tn_effective\tw_plus\tz\tp\tp_raw\tmethod\n";
    out << values.size() << '\t' << r.n_effective << '\t' << format_shortest(r.w_plus) << '\t'
        << format_fixed(r.z, 4) << '\t' << format_p(r.p_two_tailed) << '\t' << format_shortest(r.p_two_tailed)
        << '\t' << to_string(r.method) << '\n';
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tripwire cycle counting for population strategy time series", "rpscycles"};
    app.require_subcommand(1);

    CommonArgs count_args, compare_args, scan_common;
    std::string count_data, compare_data;
    auto* count = app.add_subcommand("count", "per-treatment CRI and accumulated cycle counts at one tripwire");
    count->add_option("data", count_data, "input CSV")->required();
    add_common(count, count_args, true);

    auto* compare = app.add_subcommand("compare", "legacy vs corrected counting at one tripwire");
    compare->add_option("data", compare_data, "input CSV")->required();
    add_common(compare, compare_args, false);

    ScanArgs scan_args;
    auto* scan_cmd = app.add_subcommand("scan", "scan tripwire anchors over the simplex interior");
    scan_cmd->add_option("data", scan_args.data, "input CSV")->required();
    scan_cmd->add_option("--step", scan_args.step, "grid spacing in (0, 0.5]")->capture_default_str();
    scan_cmd->add_option("--level", scan_args.level, "significance level")->capture_default_str();
    scan_cmd->add_option("--index", scan_args.index, "cri|c, index used to rank anchors")->capture_default_str();
    scan_cmd->add_option("--threads", scan_args.threads, "worker threads (0 = all cores)")->capture_default_str();
    scan_cmd->add_option("--top", scan_args.top, "anchors listed in the stdout summary")->capture_default_str();
    scan_cmd->add_option("--treatment", scan_args.treatment, "scan only this treatment");
    scan_cmd->add_option("--rule", scan_common.rule, "corrected|legacy")->capture_default_str();
    scan_cmd->add_option("--method", scan_common.method, "pratt|drop|exact")->capture_default_str();
    scan_cmd->add_option("--format", scan_common.format, "grid file format, tsv|json")->capture_default_str();
    scan_cmd->add_option("--out", scan_common.out, "output directory")->required();

    SimulateArgs sim;
    std::string sim_out;
    auto* simulate = app.add_subcommand("simulate", "write synthetic trajectories as canonical CSV");
    simulate->add_option("kind", sim.kind, "circle|spiral|noisy-loop|discrete-population")->required();
    simulate->add_option("--center", sim.center, "orbit center x,y");
    simulate->add_option("--radius", sim.radius)->capture_default_str();
    simulate->add_option("--turns", sim.turns, "signed turns, positive = counter-clockwise")->capture_default_str();
    simulate->add_option("--points-per-turn", sim.points_per_turn)->capture_default_str();
    simulate->add_option("--noise", sim.noise, "jitter standard deviation")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "seed of block B1; block Bk uses seed + k - 1")->capture_default_str();
    simulate->add_option("--population", sim.population, "population size for discrete-population")
        ->capture_default_str();
    simulate->add_option("--blocks", sim.blocks)->capture_default_str();
    simulate->add_option("--treatment", sim.treatment)->capture_default_str();
    simulate->add_option("--out", sim_out, "output file (default stdout)");

    std::vector<double> test_values;
    std::string test_list, test_method = "pratt";
    auto* test = app.add_subcommand("test", "two-tailed Wilcoxon signed-rank test of values against 0");
    test->add_option("value", test_values, "sample values");
    test->add_option("--values", test_list, "comma-separated sample values");
    test->add_option("--method", test_method, "pratt|drop|exact")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*count) return cmd_count(count_data, count_args, out);
        if (*compare) return cmd_compare(compare_data, compare_args, out);
        if (*scan_cmd) return cmd_scan(scan_args, scan_common, out);
        if (*simulate) return cmd_simulate(sim, sim_out, out);
        if (*test) return cmd_test(test_values, test_list, test_method, out);
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitDataError;
    } catch (const StatisticsError& e) {
        err << "degenerate statistics: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace rps
