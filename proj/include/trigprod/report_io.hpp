// Serialization helpers shared by the CLI and the tests: round-trip decimal
// strings at working precision, JSON value wrappers that carry explicit
// precision metadata, and RFC-4180 CSV assembly.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "trigprod/product_core.hpp"

namespace trigprod::io {

using ordered_json = nlohmann::ordered_json;

// Decimal digits that round-trip `bits` of binary mantissa.
long round_trip_digits(long bits);

std::string dec(const Real& x);
std::string dec(const Real& x, long bits);

// {"value": "<decimal>", "precision_bits": n} — numbers are decimal strings,
// never JSON floats, so consumers cannot truncate them silently.
ordered_json j_real(const Real& x);
ordered_json j_stat(double v);  // double-precision statistic (53 bits)
// {"re": "...", "im": "...", "precision_bits": n}
ordered_json j_complex(const Complex& z);

std::string csv_quote(const std::string& field);
std::string csv_row(const std::vector<std::string>& fields);

ordered_json envelope(const std::string& command, long precision_bits,
                      ordered_json request_echo, ordered_json result,
                      const std::vector<std::string>& warnings);

}  // namespace trigprod::io
