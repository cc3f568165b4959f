#include "tsagg/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tsagg {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void write_series_csv(const std::string& path, const TimeSeries& series) {
  std::ofstream out(path, std::ios::binary);  // binary: LF endings everywhere
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "index,value\n";
  const auto& values = series.values();
  for (std::size_t i = 0; i < values.size(); ++i)
    out << (i + 1) << ',' << format_double(values[i]) << '\n';
  if (!out) throw std::runtime_error("write failed for " + path);
}

TimeSeries read_series_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open series file " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument(path + ": empty series file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "index,value")
    throw std::invalid_argument(path + ": expected header \"index,value\"");

  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      std::ostringstream msg;
      msg << path << " line " << line_no << ": expected index,value";
      throw std::invalid_argument(msg.str());
    }
    const std::string value_text = line.substr(comma + 1);
    try {
      std::size_t used = 0;
      const double value = std::stod(value_text, &used);
      if (used != value_text.size()) throw std::invalid_argument(value_text);
      values.push_back(value);
    } catch (const std::exception&) {
      std::ostringstream msg;
      msg << path << " line " << line_no << ": bad value \"" << value_text << "\"";
      throw std::invalid_argument(msg.str());
    }
  }
  if (values.empty()) throw std::invalid_argument(path + ": no observations");
  return TimeSeries(std::move(values));
}

}  // namespace tsagg
