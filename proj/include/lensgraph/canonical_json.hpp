#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace lensgraph {

/// Fixed-precision decimal used for every serialized coordinate/scalar.
inline std::string format_fixed(double v, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s(buf);
  // "-0.000000" and friends print as zero.
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

namespace detail {

inline void canonical_dump_into(const nlohmann::json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      // nlohmann::json objects are std::map backed, so iteration is sorted.
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        canonical_dump_into(value, out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ',';
        first = false;
        canonical_dump_into(v, out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float: out += format_fixed(j.get<double>()); break;
    default: out += j.dump(); break;
  }
}

}  // namespace detail

/// Sorted keys, no whitespace, floats at 6 decimals. Two equal documents
/// always produce identical bytes.
inline std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  detail::canonical_dump_into(j, out);
  return out;
}

}  // namespace lensgraph
