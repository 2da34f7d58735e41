#pragma once

#include <cstdio>
#include <string>

namespace sho {

// Deterministic float formatting for data emission: 17 significant digits,
// '.' decimal separator, no locale dependence.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvBuilder {
 public:
  CsvBuilder& field(const std::string& s) {
    if (!first_in_row_) out_ += ',';
    out_ += s;
    first_in_row_ = false;
    return *this;
  }
  CsvBuilder& field(const char* s) { return field(std::string(s)); }
  CsvBuilder& field(double v) { return field(format_double(v)); }
  CsvBuilder& field(int v) { return field(std::to_string(v)); }
  CsvBuilder& end_row() {
    out_ += '\n';
    first_in_row_ = true;
    return *this;
  }
  const std::string& str() const { return out_; }

 private:
  std::string out_;
  bool first_in_row_ = true;
};

}  // namespace sho
