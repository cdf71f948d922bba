#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sphlab/core/error.hpp"

namespace sphlab::cli {

/// INI file with [section] headers and key = value lines; ';' and '#' start comments.
/// Every key read through a getter is marked used; reject_unknown() fails on the rest.
class Config {
 public:
  Config() = default;

  static Config parse(std::istream& is, const std::string& origin = "<config>") {
    Config c;
    c.origin_ = origin;
    try {
      boost::property_tree::read_ini(is, c.tree_);
    } catch (const boost::property_tree::ini_parser_error& e) {
      fail(ErrorKind::config, origin + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    for (const auto& [k, v] : c.tree_)
      if (v.empty() && !v.data().empty()) fail(ErrorKind::config, origin + ": key '" + k + "' outside any section");
    return c;
  }

  static Config parse_string(const std::string& text, const std::string& origin = "<config>") {
    std::istringstream is(text);
    return parse(is, origin);
  }

  static Config load(const std::string& path) {
    std::ifstream f(path);
    require(bool(f), ErrorKind::config, "cannot open config file '" + path + "'");
    return parse(f, path);
  }

  bool has(const std::string& section, const std::string& key) const { return find(section, key) != nullptr; }

  std::string get_string(const std::string& section, const std::string& key, const std::string& def) const {
    const auto* v = find(section, key);
    used_.insert(section + "." + key);
    return v ? *v : def;
  }

  double get_double(const std::string& section, const std::string& key, double def) const {
    const auto* v = find(section, key);
    used_.insert(section + "." + key);
    return v ? to_double(section, key, *v) : def;
  }

  int get_int(const std::string& section, const std::string& key, int def) const {
    const auto* v = find(section, key);
    used_.insert(section + "." + key);
    return v ? to_int(section, key, *v) : def;
  }

  bool get_bool(const std::string& section, const std::string& key, bool def) const {
    const auto* v = find(section, key);
    used_.insert(section + "." + key);
    if (!v) return def;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    fail(ErrorKind::config, where(section, key) + ": expected a boolean, got '" + *v + "'");
  }

  std::vector<int> get_int_list(const std::string& section, const std::string& key, std::vector<int> def) const {
    const auto* v = find(section, key);
    used_.insert(section + "." + key);
    if (!v) return def;
    std::vector<int> out;
    for (const auto& s : split(*v)) out.push_back(to_int(section, key, s));
    require(!out.empty(), ErrorKind::config, where(section, key) + ": empty list");
    return out;
  }

  std::vector<double> get_double_list(const std::string& section, const std::string& key, std::vector<double> def) const {
    const auto* v = find(section, key);
    used_.insert(section + "." + key);
    if (!v) return def;
    std::vector<double> out;
    for (const auto& s : split(*v)) out.push_back(to_double(section, key, s));
    require(!out.empty(), ErrorKind::config, where(section, key) + ": empty list");
    return out;
  }

  /// Sections outside `allowed` and keys never read are errors.
  void reject_unknown(const std::set<std::string>& allowed) const {
    for (const auto& [sec, node] : tree_) {
      require(allowed.count(sec) > 0, ErrorKind::config, origin_ + ": unknown section [" + sec + "]");
      for (const auto& [k, v] : node)
        require(used_.count(sec + "." + k) > 0, ErrorKind::config, origin_ + ": unknown key '" + k + "' in [" + sec + "]");
    }
  }

  const std::string& origin() const { return origin_; }

 private:
  const std::string* find(const std::string& section, const std::string& key) const {
    const auto sec = tree_.find(section);
    if (sec == tree_.not_found()) return nullptr;
    const auto it = sec->second.find(key);
    if (it == sec->second.not_found()) return nullptr;
    return &it->second.data();
  }

  std::string where(const std::string& section, const std::string& key) const {
    return origin_ + ": [" + section + "] " + key;
  }

  static std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s + ",") {
      if (ch == ',') {
        const auto a = cur.find_first_not_of(" \t"), b = cur.find_last_not_of(" \t");
        if (a != std::string::npos) out.push_back(cur.substr(a, b - a + 1));
        cur.clear();
      } else {
        cur += ch;
      }
    }
    return out;
  }

  int to_int(const std::string& section, const std::string& key, const std::string& s) const {
    int v = 0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    require(ec == std::errc() && p == s.data() + s.size(), ErrorKind::config,
            where(section, key) + ": expected an integer, got '" + s + "'");
    return v;
  }

  double to_double(const std::string& section, const std::string& key, const std::string& s) const {
    size_t pos = 0;
    double v = 0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    require(pos == s.size() && pos > 0 && std::isfinite(v), ErrorKind::config,
            where(section, key) + ": expected a number, got '" + s + "'");
    return v;
  }

  boost::property_tree::ptree tree_;
  std::string origin_ = "<config>";
  mutable std::set<std::string> used_;
};

}  // namespace sphlab::cli
