#pragma once

#include <charconv>
#include <string>

namespace conerad {

/// Appends a double with 17 significant digits via to_chars: locale free,
/// identical bytes on every run.
inline void csv_append(std::string& s, double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  s.append(buf, res.ptr);
}

inline void csv_append(std::string& s, int v) {
  char buf[16];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  s.append(buf, res.ptr);
}

inline void csv_append(std::string& s, long v) {
  char buf[24];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  s.append(buf, res.ptr);
}

}  // namespace conerad
