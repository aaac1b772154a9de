#pragma once

// key=value record lines shared by the appendix and harness reports.

#include <map>
#include <string>
#include <string_view>
#include <type_traits>

namespace sortsweep {

class KvLine {
 public:
  explicit KvLine(std::string_view tag) : s_(tag) {}

  template <class T>
  KvLine& add(std::string_view key, const T& value) {
    if constexpr (std::is_convertible_v<const T&, std::string_view>)
      return add_raw(key, quote(value));
    else if constexpr (std::is_same_v<T, bool>)
      return add_raw(key, value ? "1" : "0");
    else
      return add_raw(key, std::to_string(value));
  }

  const std::string& str() const { return s_; }

 private:
  KvLine& add_raw(std::string_view key, std::string_view v) {
    s_ += ' ';
    s_ += key;
    s_ += '=';
    s_ += v;
    return *this;
  }

  // Values with spaces, quotes or '=' are double-quoted.
  static std::string quote(std::string_view v) {
    bool plain = !v.empty() && v.find_first_of(" \t\"=") == std::string_view::npos;
    if (plain) return std::string(v);
    std::string q = "\"";
    for (char c : v) {
      if (c == '"' || c == '\\') q += '\\';
      q += c;
    }
    return q + '"';
  }

  std::string s_;
};

/// Parses the key=value fields of one record line; the leading tag is
/// returned under the empty key.
inline std::map<std::string, std::string> parse_kv(std::string_view line) {
  std::map<std::string, std::string> out;
  size_t i = 0;
  auto skip = [&] {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  };
  skip();
  size_t j = i;
  while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
  out[""] = std::string(line.substr(i, j - i));
  i = j;
  while (skip(), i < line.size()) {
    size_t eq = line.find('=', i);
    if (eq == std::string_view::npos) break;
    std::string key(line.substr(i, eq - i));
    i = eq + 1;
    std::string val;
    if (i < line.size() && line[i] == '"') {
      for (++i; i < line.size() && line[i] != '"'; ++i) {
        if (line[i] == '\\' && i + 1 < line.size()) ++i;
        val += line[i];
      }
      ++i;
    } else {
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') val += line[i++];
    }
    out[key] = val;
  }
  return out;
}

}  // namespace sortsweep
