#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gibbs::cli {

/// Insertion-ordered JSON object writer.  Doubles are printed with 17
/// significant digits so they read back bit for bit.
class JsonObject {
 public:
  JsonObject& number(std::string_view key, double v);
  JsonObject& integer(std::string_view key, std::int64_t v);
  JsonObject& boolean(std::string_view key, bool v);
  JsonObject& string(std::string_view key, std::string_view v);
  JsonObject& array(std::string_view key, std::span<const double> v);
  JsonObject& complex(std::string_view key, std::complex<double> v);
  JsonObject& object(std::string_view key, const JsonObject& v);
  JsonObject& objects(std::string_view key, const std::vector<JsonObject>& v);

  std::string str() const;

 private:
  JsonObject& raw(std::string_view key, std::string value);
  std::vector<std::pair<std::string, std::string>> fields_;
};

std::string format_double(double v);
std::string quote(std::string_view s);

/// "a:b:c" split into three numbers (constant expressions allowed).
struct Triple {
  double first, second, third;
};
Triple parse_triple(std::string_view text, std::string_view what);

/// A count such as "1e6" or "250000".  Must be a non-negative integer.
std::uint64_t parse_count(std::string_view text, std::string_view what);

}  // namespace gibbs::cli
