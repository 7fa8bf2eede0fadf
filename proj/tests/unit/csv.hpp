// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Minimal reader for the tool's CSV output: '#' header lines, one column row.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace sqotto::testing {

struct CsvTable {
    std::vector<std::string> header_lines;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::size_t index(const std::string& name) const
    {
        for (std::size_t i = 0; i < columns.size(); ++i)
            if (columns[i] == name)
                return i;
        throw std::out_of_range("no column " + name);
    }
    double number(std::size_t row, const std::string& name) const
    {
        return std::stod(rows.at(row).at(index(name)));
    }
    const std::string& text(std::size_t row, const std::string& name) const
    {
        return rows.at(row).at(index(name));
    }
};

inline std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    bool quoted = false;
    for (char c : line) {
        if (c == '"')
            quoted = !quoted;
        else if (c == ',' && !quoted) {
            out.push_back(cell);
            cell.clear();
        } else
            cell += c;
    }
    out.push_back(cell);
    return out;
}

inline CsvTable read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    CsvTable t;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#')
            t.header_lines.push_back(line);
        else if (t.columns.empty())
            t.columns = split_csv(line);
        else
            t.rows.push_back(split_csv(line));
    }
    return t;
}

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace sqotto::testing
