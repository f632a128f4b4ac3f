#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stabsel/core.hpp"

namespace stabsel {

/**
 * Parsed CSV table: a header of unique names and numeric columns.
 *
 * A first column named "t" or "timestamp" is taken as the (strictly
 * increasing) time index and kept apart from the data columns.
 */
struct CsvTable {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::optional<std::vector<double>> index;
    std::optional<std::string> index_name;

    std::size_t rows() const { return columns.empty() ? (index ? index->size() : 0) : columns.front().size(); }
    std::optional<std::size_t> find(const std::string& name) const;
};

/// Throws DataError on malformed input (ragged rows, non-numeric fields, duplicate names).
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/**
 * Assembles a MultiSeries from named table columns. `endogenous` must list the
 * target first. Unknown names raise DataError listing every missing column.
 */
MultiSeries to_multiseries(const CsvTable& table, const std::vector<std::string>& endogenous,
                           const std::vector<std::string>& exogenous);

/// Writes the series (with a "t" column when timestamps exist) in the same format.
void write_csv(std::ostream& out, const MultiSeries& series);

}  // namespace stabsel
