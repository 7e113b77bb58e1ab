#include "trigprod/report_io.hpp"

#include <cmath>
#include <cstdio>

namespace trigprod::io {

long round_trip_digits(long bits) {
  return static_cast<long>(std::ceil(static_cast<double>(bits) * 0.3010299956639812)) + 1;
}

std::string dec(const Real& x) { return dec(x, x.prec()); }

std::string dec(const Real& x, long bits) {
  return x.str(round_trip_digits(bits));
}

ordered_json j_real(const Real& x) {
  return ordered_json{{"value", dec(x)}, {"precision_bits", x.prec()}};
}

ordered_json j_stat(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return ordered_json{{"value", std::string(buf)}, {"precision_bits", 53}};
}

ordered_json j_complex(const Complex& z) {
  return ordered_json{{"re", dec(z.re())},
                      {"im", dec(z.im())},
                      {"precision_bits", z.prec()}};
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_quote(fields[i]);
  }
  out += "\r\n";
  return out;
}

ordered_json envelope(const std::string& command, long precision_bits,
                      ordered_json request_echo, ordered_json result,
                      const std::vector<std::string>& warnings) {
  ordered_json env;
  env["schema_version"] = "1";
  env["command"] = command;
  env["precision_bits"] = precision_bits;
  env["request_echo"] = std::move(request_echo);
  env["result"] = std::move(result);
  env["warnings"] = warnings;
  return env;
}

}  // namespace trigprod::io
