// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#include "sfq/table.hpp"

#include <cstdio>
#include <fstream>

namespace sfq {

ResultTable::ResultTable(std::string name, std::vector<Column> columns)
    : name_(std::move(name)), columns_(std::move(columns)) {
  if (columns_.empty()) throw std::invalid_argument("ResultTable: need at least one column");
}

double ResultTable::at(size_t row, size_t col) const {
  return rows_.at(row).at(col);
}

void ResultTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_.size())
    throw std::invalid_argument("ResultTable: row width mismatch");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("ResultTable: non-finite value");
  rows_.push_back(values);
}

void ResultTable::add_comment(std::string line) { comments_.push_back(std::move(line)); }

void ResultTable::add_footer(std::string line) { footers_.push_back(std::move(line)); }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ResultTable::write_csv(std::ostream& os) const {
  os << "# " << name_ << "\n";
  for (const auto& c : comments_) os << "# " << c << "\n";
  os << "# units:";
  for (size_t i = 0; i < columns_.size(); ++i)
    os << (i == 0 ? " " : ",") << columns_[i].unit;
  os << "\n";
  for (size_t i = 0; i < columns_.size(); ++i)
    os << (i == 0 ? "" : ",") << columns_[i].name;
  os << "\n";
  for (const auto& row : rows_) {
    for (size_t i = 0; i < row.size(); ++i)
      os << (i == 0 ? "" : ",") << format_double(row[i]);
    os << "\n";
  }
  for (const auto& f : footers_) os << "# " << f << "\n";
}

void ResultTable::write_csv_file(const std::string& path) const {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("ResultTable: cannot open " + path);
  write_csv(os);
}

ResultTable field_table(std::string name, const PhaseSpaceGrid& grid, const RealMat& field,
                        const std::string& value_name) {
  ResultTable t(std::move(name), {{"re", "-"}, {"im", "-"}, {value_name, "-"}});
  for (int i = 0; i < grid.n_re; ++i)
    for (int j = 0; j < grid.n_im; ++j) t.add_row({grid.re(i), grid.im(j), field(i, j)});
  return t;
}

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace sfq
