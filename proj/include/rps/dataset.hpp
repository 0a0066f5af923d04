#pragma once

// Canonical CSV ingestion and emission.
//
// Header is either `treatment,block,period,x,y` (shares) or
// `treatment,block,period,n1,n2,n3` (strategy counts; the population size is
// n1 + n2 + n3 per row). Columns are located by name and may appear in any
// order. Periods must increase strictly within a block.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rps/simplex.hpp"

namespace rps {

struct Treatment {
    std::string label;
    std::vector<Trajectory<double>> blocks;  ///< ordered by block label, B2 before B10
};

struct DataSet {
    std::vector<Treatment> treatments;  ///< in order of first appearance
    std::string source;
    std::size_t rows = 0;

    const Treatment* find(const std::string& label) const;
};

DataSet parse_csv(std::istream& in, const std::string& source = "<stream>",
                  double tolerance = kSimplexTolerance);

DataSet load_csv(const std::filesystem::path& path, double tolerance = kSimplexTolerance);

/// Writes the share form with one row per state; periods restart at 0 per
/// block. Values use the shortest round-trip representation.
void write_csv(std::ostream& out, const std::vector<Trajectory<double>>& blocks);
void write_csv(std::ostream& out, const DataSet& data);

/// Natural order on labels: digit runs compare numerically.
bool natural_less(const std::string& a, const std::string& b);

}  // namespace rps
