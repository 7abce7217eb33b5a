#include "output.hpp"

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace skewsim::cli {

namespace fs = std::filesystem;

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf.data(), ptr);
}

CsvText::CsvText(const std::vector<std::string>& header) {
  for (const auto& h : header) cell(h);
  end_row();
}

CsvText& CsvText::cell(double v) { return cell(format_double(v)); }

CsvText& CsvText::cell(long long v) { return cell(std::to_string(v)); }

CsvText& CsvText::cell(const std::string& v) {
  if (row_open_) text_ += ',';
  text_ += v;
  row_open_ = true;
  return *this;
}

void CsvText::end_row() {
  text_ += '\n';
  row_open_ = false;
}

std::string histogram_csv(const Histogram& h) {
  CsvText csv({"bin_lo", "bin_hi", "center", "count", "density"});
  const double w = h.width();
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    csv.cell(h.lo + static_cast<double>(i) * w)
        .cell(i + 1 == h.counts.size() ? h.hi : h.lo + static_cast<double>(i + 1) * w)
        .cell(h.center(i))
        .cell(static_cast<long long>(h.counts[i]))
        .cell(h.density[i]);
    csv.end_row();
  }
  return csv.str();
}

OutputSet::OutputSet(std::string dir) : dir_(std::move(dir)) {}

OutputSet::~OutputSet() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& path : written_) fs::remove(path, ec);
}

void OutputSet::add(const std::string& name, std::string content) {
  files_.emplace_back(name, std::move(content));
}

void OutputSet::commit() {
  fs::create_directories(dir_);
  std::vector<std::pair<fs::path, fs::path>> moves;
  for (const auto& [name, content] : files_) {
    const fs::path final_path = fs::path(dir_) / name;
    const fs::path tmp = fs::path(dir_) / (name + ".tmp");
    written_.push_back(tmp.string());
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    moves.emplace_back(tmp, final_path);
  }
  for (const auto& [tmp, final_path] : moves) {
    fs::rename(tmp, final_path);
    written_.push_back(final_path.string());
  }
  committed_ = true;
}

}  // namespace skewsim::cli
