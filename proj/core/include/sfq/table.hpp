// Copyright 2026 the sfqsim authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "sfq/fock.hpp"
#include "sfq/types.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace sfq {

struct Column {
  std::string name;
  std::string unit;  // "-" for dimensionless
};

/// Rectangular numeric table with a units header and '#'-prefixed provenance
/// comments. Serialization uses 17 significant digits so doubles round-trip.
class ResultTable {
 public:
  ResultTable() = default;
  ResultTable(std::string name, std::vector<Column> columns);

  const std::string& name() const { return name_; }
  const std::vector<Column>& columns() const { return columns_; }
  size_t rows() const { return rows_.size(); }
  double at(size_t row, size_t col) const;

  void add_row(const std::vector<double>& values);
  void add_comment(std::string line);   // header comments
  void add_footer(std::string line);    // provenance footer

  void write_csv(std::ostream& os) const;
  void write_csv_file(const std::string& path) const;

 private:
  std::string name_;
  std::vector<Column> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::string> comments_;
  std::vector<std::string> footers_;
};

/// Grid field as a table with one row per grid point (re, im, value),
/// re-major ordering.
ResultTable field_table(std::string name, const PhaseSpaceGrid& grid, const RealMat& field,
                        const std::string& value_name = "value");

std::string format_double(double v);  // %.17g

/// FNV-1a over a canonical text; used to stamp tables with the config hash.
std::uint64_t fnv1a_hash(const std::string& text);

}  // namespace sfq
