#ifndef PARAB_CSV_HPP
#define PARAB_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace parab {

// Shortest round-trip, locale-independent decimal text for a double
// (std::to_chars); empty cells render as "".
std::string format_double(double x);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  static std::string cell(double x) { return format_double(x); }
  static std::string cell(const std::string& s) { return s; }

 private:
  std::ofstream out_;
  std::size_t columns_;
};

}  // namespace parab

#endif
