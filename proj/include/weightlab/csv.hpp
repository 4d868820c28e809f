#pragma once

#include <string>
#include <vector>

#include "weightlab/grid.hpp"

namespace weightlab::csv {

// Shortest decimal string that parses back to exactly x. "inf" for the
// extended exponent, so s = infinity survives a round trip.
std::string format_double(double x);
double parse_double(const std::string& text);

// Plain comma-separated table. Leading '#' lines carry run metadata
// (parameters, seed); fields never contain commas or quotes, so there is
// no escaping layer.
struct Table {
    std::vector<std::string> comments;  // without the '# ' prefix
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row);
    std::string to_text() const;
};

// Parses a table; malformed input reports the 1-based row number.
Table parse_table(const std::string& text, const std::string& name = "<csv>");

Table read_table(const std::string& path);
void write_table(const Table& table, const std::string& path);

// Grid functions as CSV: metadata comments origin=, h=, n= and columns
// cell,value.
void write_grid_function(const GridFunction& f, const std::string& path,
                         const std::vector<std::string>& extra_comments = {});
GridFunction read_grid_function(const std::string& path);

}  // namespace weightlab::csv
