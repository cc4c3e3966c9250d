#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pngtoda/height.hpp"

namespace png::cli {

struct Column {
  std::string name;
  std::string unit;  // shown in the header row, e.g. "prob" or "abs<=1e-08"
  std::string doc;
};

struct Cell {
  std::string text;
  bool numeric = false;
};

Cell num(double v);
Cell num(long v);
Cell num(Height v);
Cell text(std::string s);
Cell list(const std::vector<double>& v);
Cell list(const std::vector<long>& v);

// Output table with a provenance header. Rendering depends only on the
// contents, so equal runs give byte-identical files.
class Table {
 public:
  void meta(std::string key, std::string value) { meta_.emplace_back(std::move(key), std::move(value)); }
  void column(std::string name, std::string unit, std::string doc) {
    columns_.push_back({std::move(name), std::move(unit), std::move(doc)});
  }
  void row(std::vector<Cell> cells);

  void write_csv(std::ostream& out) const;
  void write_jsonl(std::ostream& out) const;

  std::size_t rows() const { return rows_.size(); }

 private:
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<Column> columns_;
  std::vector<std::vector<Cell>> rows_;
};

std::string format_double(double v);

}  // namespace png::cli
