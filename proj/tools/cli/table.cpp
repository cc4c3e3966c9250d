#include "table.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <stdexcept>

namespace png::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Cell num(double v) { return {format_double(v), std::isfinite(v)}; }
Cell num(long v) { return {std::to_string(v), true}; }
Cell num(Height v) { return {v.str(), v.finite()}; }
Cell text(std::string s) { return {std::move(s), false}; }

Cell list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + format_double(v[k]);
  return {s, false};
}

Cell list(const std::vector<long>& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ";" : "") + std::to_string(v[k]);
  return {s, false};
}

void Table::row(std::vector<Cell> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("row width does not match columns");
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& out) const {
  for (const auto& [k, v] : meta_) out << "# " << k << ": " << v << '\n';
  for (const auto& c : columns_) out << "# column " << c.name << " [" << c.unit << "]: " << c.doc << '\n';
  for (std::size_t k = 0; k < columns_.size(); ++k)
    out << (k ? "," : "") << columns_[k].name << '[' << columns_[k].unit << ']';
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t k = 0; k < r.size(); ++k) out << (k ? "," : "") << r[k].text;
    out << '\n';
  }
}

void Table::write_jsonl(std::ostream& out) const {
  nlohmann::ordered_json head;
  for (const auto& [k, v] : meta_) head["provenance"][k] = v;
  for (const auto& c : columns_)
    head["columns"].push_back({{"name", c.name}, {"unit", c.unit}, {"doc", c.doc}});
  out << head.dump() << '\n';
  for (const auto& r : rows_) {
    std::string line = "{";
    for (std::size_t k = 0; k < r.size(); ++k) {
      line += (k ? "," : "") + nlohmann::json(columns_[k].name).dump() + ":";
      line += r[k].numeric ? r[k].text : nlohmann::json(r[k].text).dump();
    }
    out << line << "}\n";
  }
}

}  // namespace png::cli
