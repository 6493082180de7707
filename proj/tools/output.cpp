#include "output.hpp"

#include <cmath>

#include <fmt/format.h>

#include "gibbs/error.hpp"
#include "gibbs/expr.hpp"

namespace gibbs::cli {

std::string format_double(double v) {
  if (std::isnan(v)) return "null";
  if (std::isinf(v)) return v > 0 ? "1e999" : "-1e999";
  return fmt::format("{:.17g}", v);
}

std::string quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<unsigned>(c));
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

JsonObject& JsonObject::raw(std::string_view key, std::string value) {
  fields_.emplace_back(std::string(key), std::move(value));
  return *this;
}

JsonObject& JsonObject::number(std::string_view key, double v) {
  return raw(key, format_double(v));
}

JsonObject& JsonObject::integer(std::string_view key, std::int64_t v) {
  return raw(key, std::to_string(v));
}

JsonObject& JsonObject::boolean(std::string_view key, bool v) {
  return raw(key, v ? "true" : "false");
}

JsonObject& JsonObject::string(std::string_view key, std::string_view v) {
  return raw(key, quote(v));
}

JsonObject& JsonObject::array(std::string_view key, std::span<const double> v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_double(v[i]);
  }
  return raw(key, s + "]");
}

JsonObject& JsonObject::complex(std::string_view key, std::complex<double> v) {
  return object(key, JsonObject().number("re", v.real()).number("im", v.imag()));
}

JsonObject& JsonObject::object(std::string_view key, const JsonObject& v) {
  return raw(key, v.str());
}

JsonObject& JsonObject::objects(std::string_view key,
                                const std::vector<JsonObject>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].str();
  }
  return raw(key, s + "]");
}

std::string JsonObject::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    if (i) s += ", ";
    s += quote(fields_[i].first) + ": " + fields_[i].second;
  }
  return s + "}";
}

namespace {

double constant_value(std::string_view text, std::string_view what) {
  const expr::Expr e = [&] {
    try {
      return expr::parse(text);
    } catch (const ParseError& err) {
      throw ConfigError(fmt::format("bad {} '{}': {}", what, text, err.what()));
    }
  }();
  if (!e.is_constant()) {
    throw ConfigError(fmt::format("{} '{}' must not depend on x", what, text));
  }
  return e.eval(0.0);
}

}  // namespace

Triple parse_triple(std::string_view text, std::string_view what) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (a == std::string_view::npos || b == std::string_view::npos ||
      text.find(':', b + 1) != std::string_view::npos) {
    throw ConfigError(
        fmt::format("{} must look like start:end:count, got '{}'", what, text));
  }
  return {constant_value(text.substr(0, a), what),
          constant_value(text.substr(a + 1, b - a - 1), what),
          constant_value(text.substr(b + 1), what)};
}

std::uint64_t parse_count(std::string_view text, std::string_view what) {
  const double v = constant_value(text, what);
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.0e18) {
    throw ConfigError(
        fmt::format("{} must be a non-negative integer, got '{}'", what, text));
  }
  return static_cast<std::uint64_t>(v);
}

}  // namespace gibbs::cli
