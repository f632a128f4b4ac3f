#include "stabsel/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

#include "stabsel/error.hpp"

namespace stabsel {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, ',')) {
        fields.push_back(trim(field));
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

double parse_number(const std::string& field, std::size_t line_no, const std::string& column)
{
    double value = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    if (begin != end && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw DataError("line " + std::to_string(line_no) + ", column '" + column + "': cannot parse '" +
                        field + "' as a number");
    }
    if (!std::isfinite(value)) {
        throw DataError("line " + std::to_string(line_no) + ", column '" + column + "': non-finite value");
    }
    return value;
}

}  // namespace

std::optional<std::size_t> CsvTable::find(const std::string& name) const
{
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

CsvTable read_csv(std::istream& in)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            break;
        }
    }
    if (trim(line).empty()) {
        throw DataError("CSV input is empty");
    }
    std::vector<std::string> header = split_fields(line);
    std::set<std::string> seen;
    for (const auto& name : header) {
        if (name.empty()) {
            throw DataError("CSV header contains an empty column name");
        }
        if (!seen.insert(name).second) {
            throw DataError("CSV header repeats column name '" + name + "'");
        }
    }

    CsvTable table;
    const bool has_index = header.front() == "t" || header.front() == "timestamp";
    const std::size_t first_data = has_index ? 1 : 0;
    if (has_index) {
        table.index.emplace();
        table.index_name = header.front();
    }
    table.names.assign(header.begin() + static_cast<std::ptrdiff_t>(first_data), header.end());
    table.columns.resize(table.names.size());

    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                            " fields, found " + std::to_string(fields.size()));
        }
        if (has_index) {
            table.index->push_back(parse_number(fields[0], line_no, header[0]));
        }
        for (std::size_t c = first_data; c < fields.size(); ++c) {
            table.columns[c - first_data].push_back(parse_number(fields[c], line_no, header[c]));
        }
    }
    if (table.rows() == 0) {
        throw DataError("CSV input has a header but no data rows");
    }
    return table;
}

CsvTable read_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open '" + path + "'");
    }
    return read_csv(in);
}

MultiSeries to_multiseries(const CsvTable& table, const std::vector<std::string>& endogenous,
                           const std::vector<std::string>& exogenous)
{
    std::vector<std::string> missing;
    std::vector<std::size_t> endo_idx;
    std::vector<std::size_t> exo_idx;
    for (const auto& name : endogenous) {
        if (auto i = table.find(name)) {
            endo_idx.push_back(*i);
        } else {
            missing.push_back(name);
        }
    }
    for (const auto& name : exogenous) {
        if (auto i = table.find(name)) {
            exo_idx.push_back(*i);
        } else {
            missing.push_back(name);
        }
    }
    if (!missing.empty()) {
        std::string msg = "unknown column(s):";
        for (const auto& name : missing) {
            msg += " '" + name + "'";
        }
        throw DataError(msg);
    }

    const auto rows = static_cast<Eigen::Index>(table.rows());
    Eigen::MatrixXd endo(rows, static_cast<Eigen::Index>(endo_idx.size()));
    Eigen::MatrixXd exo(rows, static_cast<Eigen::Index>(exo_idx.size()));
    for (std::size_t c = 0; c < endo_idx.size(); ++c) {
        endo.col(static_cast<Eigen::Index>(c)) =
            Eigen::Map<const Eigen::VectorXd>(table.columns[endo_idx[c]].data(), rows);
    }
    for (std::size_t c = 0; c < exo_idx.size(); ++c) {
        exo.col(static_cast<Eigen::Index>(c)) =
            Eigen::Map<const Eigen::VectorXd>(table.columns[exo_idx[c]].data(), rows);
    }
    std::vector<std::string> names = endogenous;
    names.insert(names.end(), exogenous.begin(), exogenous.end());
    try {
        return MultiSeries(std::move(endo), std::move(exo), std::move(names), table.index);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
}

void write_csv(std::ostream& out, const MultiSeries& series)
{
    const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
    const bool has_t = series.timestamps().has_value();
    if (has_t) {
        out << "t,";
    }
    for (std::size_t i = 0; i < series.names().size(); ++i) {
        out << (i ? "," : "") << series.names()[i];
    }
    out << '\n';
    const auto& endo = series.endogenous();
    const auto& exo = series.exogenous();
    for (Eigen::Index r = 0; r < endo.rows(); ++r) {
        if (has_t) {
            out << (*series.timestamps())[static_cast<std::size_t>(r)] << ',';
        }
        bool first = true;
        for (Eigen::Index c = 0; c < endo.cols(); ++c, first = false) {
            out << (first ? "" : ",") << endo(r, c);
        }
        for (Eigen::Index c = 0; c < exo.cols(); ++c, first = false) {
            out << (first ? "" : ",") << exo(r, c);
        }
        out << '\n';
    }
    out.precision(old_precision);
}

}  // namespace stabsel
