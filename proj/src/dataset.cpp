#include "rps/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string_view>

#include "rps/errors.hpp"
#include "rps/format.hpp"

namespace rps {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
    T value{};
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

struct Columns {
    std::size_t treatment, block, period;
    bool counts;
    std::size_t a, b, c;  // x, y (c unused) or n1, n2, n3
    std::size_t width;
};

Columns locate_columns(const std::vector<std::string_view>& header) {
    auto find = [&](std::string_view name) -> std::optional<std::size_t> {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) return std::nullopt;
        return static_cast<std::size_t>(it - header.begin());
    };
    auto require = [&](std::string_view name) {
        const auto idx = find(name);
        if (!idx) throw MissingColumn("missing column '" + std::string(name) + "'");
        return *idx;
    };
    Columns cols{};
    cols.width = header.size();
    cols.treatment = require("treatment");
    cols.block = require("block");
    cols.period = require("period");
    if (find("x") || find("y")) {
        cols.counts = false;
        cols.a = require("x");
        cols.b = require("y");
    } else if (find("n1") || find("n2") || find("n3")) {
        cols.counts = true;
        cols.a = require("n1");
        cols.b = require("n2");
        cols.c = require("n3");
    } else {
        throw MissingColumn("missing state columns: need x,y or n1,n2,n3");
    }
    return cols;
}

struct PendingBlock {
    std::string treatment;
    std::string block;
    std::vector<long long> periods;
    std::vector<double> xs, ys;
};

}  // namespace

bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i]));
        const bool db = std::isdigit(static_cast<unsigned char>(b[j]));
        if (da && db) {
            std::size_t ie = i, je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
            // Compare digit runs by value: strip leading zeros, then length, then lexicographic.
            std::string_view ra(a.data() + i, ie - i), rb(b.data() + j, je - j);
            while (ra.size() > 1 && ra.front() == '0') ra.remove_prefix(1);
            while (rb.size() > 1 && rb.front() == '0') rb.remove_prefix(1);
            if (ra.size() != rb.size()) return ra.size() < rb.size();
            if (ra != rb) return ra < rb;
            i = ie;
            j = je;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
    return a < b;
}

const Treatment* DataSet::find(const std::string& label) const {
    for (const auto& t : treatments)
        if (t.label == label) return &t;
    return nullptr;
}

DataSet parse_csv(std::istream& in, const std::string& source, double tolerance) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<Columns> cols;
    while (!cols && std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        cols = locate_columns(split(line));
    }
    if (!cols) throw EmptyFile(source + ": file is empty");

    std::vector<PendingBlock> pending;
    std::map<std::pair<std::string, std::string>, std::size_t> block_index;
    std::vector<std::string> treatment_order;
    DataSet data;
    data.source = source;

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split(line);
        if (fields.size() != cols->width) {
            throw RowValidation(line_no, "expected " + std::to_string(cols->width) + " fields, got " +
                                             std::to_string(fields.size()));
        }
        const std::string treatment(fields[cols->treatment]);
        const std::string block(fields[cols->block]);
        if (treatment.empty()) throw RowValidation(line_no, "empty treatment label");
        if (block.empty()) throw RowValidation(line_no, "empty block label");
        const auto period = parse_number<long long>(fields[cols->period]);
        if (!period) throw RowValidation(line_no, "period is not an integer");

        double x = 0, y = 0;
        if (cols->counts) {
            const auto n1 = parse_number<double>(fields[cols->a]);
            const auto n2 = parse_number<double>(fields[cols->b]);
            const auto n3 = parse_number<double>(fields[cols->c]);
            if (!n1 || !n2 || !n3) throw RowValidation(line_no, "count is not a number");
            if (*n1 < 0 || *n2 < 0 || *n3 < 0) throw RowValidation(line_no, "negative strategy count");
            const double n = *n1 + *n2 + *n3;
            if (!(n > 0)) throw RowValidation(line_no, "population size is zero");
            x = *n1 / n;
            y = *n2 / n;
        } else {
            const auto px = parse_number<double>(fields[cols->a]);
            const auto py = parse_number<double>(fields[cols->b]);
            if (!px || !py) throw RowValidation(line_no, "share is not a number");
            x = *px;
            y = *py;
        }
        Point2<double> p;
        try {
            p = make_simplex_point(x, y, tolerance);
        } catch (const DataError& e) {
            throw RowValidation(line_no, e.what());
        }

        auto key = std::make_pair(treatment, block);
        auto [it, inserted] = block_index.try_emplace(key, pending.size());
        if (inserted) {
            pending.push_back({treatment, block, {}, {}, {}});
            if (std::find(treatment_order.begin(), treatment_order.end(), treatment) == treatment_order.end()) {
                treatment_order.push_back(treatment);
            }
        }
        auto& pb = pending[it->second];
        if (!pb.periods.empty() && *period <= pb.periods.back()) {
            throw RowValidation(line_no, "period " + std::to_string(*period) + " does not increase within block '" +
                                             block + "'");
        }
        pb.periods.push_back(*period);
        pb.xs.push_back(p.x());
        pb.ys.push_back(p.y());
        ++data.rows;
    }
    if (data.rows == 0) throw EmptyFile(source + ": no data rows");

    for (const auto& label : treatment_order) {
        Treatment t{label, {}};
        for (auto& pb : pending) {
            if (pb.treatment != label) continue;
            Trajectory<double> traj;
            traj.points.resize(2, static_cast<Index>(pb.xs.size()));
            for (std::size_t k = 0; k < pb.xs.size(); ++k) {
                traj.points(0, static_cast<Index>(k)) = pb.xs[k];
                traj.points(1, static_cast<Index>(k)) = pb.ys[k];
            }
            traj.block_id = pb.block;
            traj.treatment_id = label;
            t.blocks.push_back(std::move(traj));
        }
        std::stable_sort(t.blocks.begin(), t.blocks.end(),
                         [](const auto& a, const auto& b) { return natural_less(a.block_id, b.block_id); });
        data.treatments.push_back(std::move(t));
    }
    return data;
}

DataSet load_csv(const std::filesystem::path& path, double tolerance) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return parse_csv(in, path.string(), tolerance);
}

void write_csv(std::ostream& out, const std::vector<Trajectory<double>>& blocks) {
    out << "treatment,block,period,x,y\n";
    for (const auto& b : blocks) {
        for (Index k = 0; k < b.size(); ++k) {
            out << b.treatment_id << ',' << b.block_id << ',' << k << ',' << format_shortest(b.points(0, k)) << ','
                << format_shortest(b.points(1, k)) << '\n';
        }
    }
}

void write_csv(std::ostream& out, const DataSet& data) {
    std::vector<Trajectory<double>> all;
    for (const auto& t : data.treatments) all.insert(all.end(), t.blocks.begin(), t.blocks.end());
    write_csv(out, all);
}

}  // namespace rps
