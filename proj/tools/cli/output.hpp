#pragma once

#include <string>
#include <utility>
#include <vector>

#include "skewsim/stats.hpp"

namespace skewsim::cli {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// Builds CSV text with LF newlines.
class CsvText {
public:
  explicit CsvText(const std::vector<std::string>& header);

  CsvText& cell(double v);
  CsvText& cell(long long v);
  CsvText& cell(const std::string& v);
  void end_row();

  const std::string& str() const { return text_; }

private:
  std::string text_;
  bool row_open_ = false;
};

std::string histogram_csv(const Histogram& h);

/// Writes a set of files into a directory all-or-nothing: each file goes to
/// `<name>.tmp` first and is renamed only after every write succeeded.
/// Anything left behind by a failed commit is removed.
class OutputSet {
public:
  explicit OutputSet(std::string dir);
  ~OutputSet();

  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  void add(const std::string& name, std::string content);
  void commit();

private:
  std::string dir_;
  std::vector<std::pair<std::string, std::string>> files_;
  std::vector<std::string> written_;
  bool committed_ = false;
};

}  // namespace skewsim::cli
