#include "csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <system_error>
#include <utility>

namespace corrmetric::cli {

namespace {

// Splits one physical line on commas. A trailing '\r' from CRLF input is
// stripped before splitting.
std::vector<std::string> split_fields(std::string line) {
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return fields;
}

std::string trim(const std::string& field) {
    std::size_t begin = 0;
    std::size_t end = field.size();
    while (begin < end && (field[begin] == ' ' || field[begin] == '\t')) {
        ++begin;
    }
    while (end > begin && (field[end - 1] == ' ' || field[end - 1] == '\t')) {
        --end;
    }
    return field.substr(begin, end - begin);
}

double parse_entry(const std::string& field, std::size_t line, std::size_t column) {
    const std::string cell = trim(field);
    if (cell.empty()) {
        throw ParseError(line, column, "empty cell");
    }
    double value = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line, column, "'" + cell + "' is not a decimal number");
    }
    if (!std::isfinite(value)) {
        throw ParseError(line, column, "'" + cell + "' is not finite");
    }
    return value;
}

bool is_blank(const std::string& line) {
    return line.empty() || (line.size() == 1 && line[0] == '\r');
}

}  // namespace

Dataset read_csv(const std::string& path, bool header, bool id_col) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "' for reading");
    }

    Dataset ds;
    std::string line;
    std::size_t lineno = 0;
    std::size_t pending_blank = 0;
    std::size_t expected_fields = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (header && lineno == 1) {
            continue;
        }
        if (is_blank(line)) {
            if (pending_blank == 0) {
                pending_blank = lineno;
            }
            continue;
        }
        if (pending_blank != 0) {
            throw ParseError(pending_blank, 1, "blank line");
        }

        const std::vector<std::string> fields = split_fields(line);
        if (expected_fields == 0) {
            expected_fields = fields.size();
        } else if (fields.size() != expected_fields) {
            throw ParseError(lineno, fields.size(),
                             "row has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(expected_fields));
        }

        Sample sample;
        std::size_t first_value = 0;
        if (id_col) {
            sample.id = trim(fields[0]);
            if (sample.id.empty()) {
                throw ParseError(lineno, 1, "empty id");
            }
            first_value = 1;
        } else {
            sample.id = std::to_string(ds.samples.size());
        }
        sample.values.reserve(fields.size() - first_value);
        for (std::size_t c = first_value; c < fields.size(); ++c) {
            sample.values.push_back(parse_entry(fields[c], lineno, c + 1));
        }
        if (sample.values.empty()) {
            throw ParseError(lineno, 1, "row has an id but no values");
        }
        ds.samples.push_back(std::move(sample));
    }

    if (ds.samples.empty()) {
        throw Error("'" + path + "' contains no data rows");
    }
    ds.dimension = expected_fields - (id_col ? 1 : 0);
    return ds;
}

std::string format_distance(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", d);
    return buf;
}

void write_matrix_csv(std::ostream& out, const DistanceMatrix& m) {
    for (std::size_t i = 0; i < m.size; ++i) {
        for (std::size_t j = 0; j < m.size; ++j) {
            if (j != 0) {
                out << ',';
            }
            out << format_distance(m.at(i, j));
        }
        out << '\n';
    }
}

}  // namespace corrmetric::cli
