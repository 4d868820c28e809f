#include "weightlab/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace weightlab::csv {

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) throw std::invalid_argument("format_double: nan");
    char buf[40];
    // Shortest representation that still round-trips.
    for (int prec = 15; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    return buf;
}

double parse_double(const std::string& text) {
    if (text == "inf") return kInf;
    if (text == "-inf") return -kInf;
    errno = 0;
    char* end = nullptr;
    double x = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE)
        throw std::invalid_argument("parse_double: bad number '" + text + "'");
    return x;
}

void Table::add_row(std::vector<std::string> row) {
    if (row.size() != header.size())
        throw std::invalid_argument("Table::add_row: field count mismatch");
    rows.push_back(std::move(row));
}

static void join_line(std::string& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += fields[i];
    }
    out += '\n';
}

std::string Table::to_text() const {
    std::string out;
    for (const auto& c : comments) {
        out += "# ";
        out += c;
        out += '\n';
    }
    join_line(out, header);
    for (const auto& r : rows) join_line(out, r);
    return out;
}

static std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

Table parse_table(const std::string& text, const std::string& name) {
    Table table;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int data_rows = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            size_t body = line.find_first_not_of(" \t", 1);
            table.comments.push_back(body == std::string::npos ? "" : line.substr(body));
            continue;
        }
        auto fields = split_fields(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        ++data_rows;
        if (fields.size() != table.header.size())
            throw std::invalid_argument(name + ": row " + std::to_string(data_rows) + " (line " +
                                        std::to_string(lineno) + ") has " +
                                        std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(table.header.size()));
        table.rows.push_back(std::move(fields));
    }
    if (!have_header) throw std::invalid_argument(name + ": no header row");
    return table;
}

Table read_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_table(buf.str(), path);
}

void write_table(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << table.to_text();
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_grid_function(const GridFunction& f, const std::string& path,
                         const std::vector<std::string>& extra_comments) {
    Table table;
    table.comments = extra_comments;
    table.comments.push_back("origin=" + format_double(f.grid.origin));
    table.comments.push_back("h=" + format_double(f.grid.h));
    table.comments.push_back("n=" + std::to_string(f.grid.n));
    table.header = {"cell", "value"};
    for (int i = 0; i < f.grid.n; ++i)
        table.add_row({std::to_string(i), format_double(f.v[i])});
    write_table(table, path);
}

static bool comment_value(const std::vector<std::string>& comments, const std::string& key,
                          std::string& out) {
    for (const auto& c : comments) {
        if (c.rfind(key + "=", 0) == 0) {
            out = c.substr(key.size() + 1);
            return true;
        }
    }
    return false;
}

GridFunction read_grid_function(const std::string& path) {
    Table table = read_table(path);
    std::string origin_s, h_s, n_s;
    if (!comment_value(table.comments, "origin", origin_s) ||
        !comment_value(table.comments, "h", h_s) || !comment_value(table.comments, "n", n_s))
        throw std::invalid_argument(path + ": missing origin=/h=/n= metadata");
    if (table.header != std::vector<std::string>{"cell", "value"})
        throw std::invalid_argument(path + ": expected header cell,value");
    int n = std::stoi(n_s);
    Grid1D grid{parse_double(origin_s), parse_double(h_s), n};
    if (static_cast<int>(table.rows.size()) != n)
        throw std::invalid_argument(path + ": expected " + std::to_string(n) + " rows, got " +
                                    std::to_string(table.rows.size()));
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        if (std::stoi(table.rows[i][0]) != i)
            throw std::invalid_argument(path + ": row " + std::to_string(i + 1) +
                                        " has out-of-order cell " + table.rows[i][0]);
        v[i] = parse_double(table.rows[i][1]);
        if (std::isnan(v[i])) throw std::invalid_argument(path + ": nan value");
    }
    return GridFunction(grid, std::move(v));
}

}  // namespace weightlab::csv
