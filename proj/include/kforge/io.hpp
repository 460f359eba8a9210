#ifndef KFORGE_IO_HPP
#define KFORGE_IO_HPP

// Instance and endomorphism files, polynomial lists, and key-value reports.
//
//   # comment
//   n = 2
//   f1 = x1
//   f2 = x1*x2
//   g = x1
//   cap = 4
//
// Endomorphism files use phi1, phi2, ... instead of f1, f2, ...

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kforge/error.hpp"
#include "kforge/poly.hpp"
#include "kforge/text.hpp"
#include "kforge/theorem.hpp"

namespace kforge {

/// Unreadable or malformed input file; the message names the file and line.
class InputError : public Error {
public:
  using Error::Error;
};

struct InstanceFile {
  std::size_t n = 0;
  std::vector<Poly> f;
  std::optional<Poly> g;
  std::optional<unsigned> cap;
};

namespace detail {

inline std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::optional<unsigned long> parse_count(std::string_view s) {
  unsigned long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Line {
  std::size_t number;
  std::string_view key;
  std::string_view value;
};

/// Non-blank lines of the form key = value, comments removed.
inline std::vector<Line> key_value_lines(const std::string& path, std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InputError(path + ":" + std::to_string(number) + ": expected 'key = value'");
    out.push_back({number, strip(line.substr(0, eq)), strip(line.substr(eq + 1))});
  }
  return out;
}

/// Reads "n = ..." then indexed polynomials named prefix1, prefix2, ...
inline InstanceFile read_indexed(const std::string& path, std::string_view text, std::string_view prefix,
                                 bool allow_extras) {
  auto lines = key_value_lines(path, text);
  auto where = [&](const Line& l) { return path + ":" + std::to_string(l.number) + ": "; };
  if (lines.empty() || lines.front().key != "n") throw InputError(path + ": first entry must be 'n = <int>'");
  InstanceFile out;
  auto n = parse_count(lines.front().value);
  if (!n || *n == 0) throw InputError(where(lines.front()) + "n must be a positive integer");
  out.n = *n;

  std::map<std::size_t, Poly> polys;
  auto parse_at = [&](const Line& l) {
    try {
      return parse_poly(l.value, out.n);
    } catch (const ParseError& e) {
      throw InputError(where(l) + e.what());
    }
  };
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& l = lines[k];
    if (l.key.size() > prefix.size() && l.key.substr(0, prefix.size()) == prefix) {
      auto idx = parse_count(l.key.substr(prefix.size()));
      if (!idx || *idx == 0) throw InputError(where(l) + "bad index in '" + std::string(l.key) + "'");
      if (!polys.emplace(*idx, parse_at(l)).second)
        throw InputError(where(l) + "duplicate '" + std::string(l.key) + "'");
    } else if (allow_extras && l.key == "g") {
      if (out.g) throw InputError(where(l) + "duplicate 'g'");
      out.g = parse_at(l);
    } else if (allow_extras && l.key == "cap") {
      auto c = parse_count(l.value);
      if (!c || *c == 0) throw InputError(where(l) + "cap must be a positive integer");
      out.cap = static_cast<unsigned>(*c);
    } else {
      throw InputError(where(l) + "unknown key '" + std::string(l.key) + "'");
    }
  }
  if (polys.empty()) throw InputError(path + ": no " + std::string(prefix) + "<i> entries");
  std::size_t expect = 1;
  for (auto& [i, p] : polys) {
    if (i != expect) throw InputError(path + ": missing " + std::string(prefix) + std::to_string(expect));
    out.f.push_back(std::move(p));
    ++expect;
  }
  return out;
}

} // namespace detail

inline InstanceFile parse_instance(std::string_view text, const std::string& path = "<instance>") {
  return detail::read_indexed(path, text, "f", true);
}

inline InstanceFile load_instance(const std::string& path) { return parse_instance(detail::read_text(path), path); }

inline Endo parse_endo(std::string_view text, const std::string& path = "<endo>") {
  InstanceFile raw = detail::read_indexed(path, text, "phi", false);
  if (raw.f.size() != raw.n)
    throw InputError(path + ": expected " + std::to_string(raw.n) + " images, found " + std::to_string(raw.f.size()));
  return Endo{raw.n, std::move(raw.f)};
}

inline Endo load_endo(const std::string& path) { return parse_endo(detail::read_text(path), path); }

/// One polynomial per non-blank line, '#' comments allowed.
inline std::vector<Poly> load_poly_list(const std::string& path, std::size_t n) {
  std::string text = detail::read_text(path);
  std::vector<Poly> out;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view v = line;
    if (auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    v = detail::strip(v);
    if (v.empty()) continue;
    try {
      out.push_back(parse_poly(v, n));
    } catch (const ParseError& e) {
      throw InputError(path + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

/// Ordered report with a human-readable and a key-value rendering.
class Report {
public:
  /// A line shown only in the text rendering.
  void text(std::string line) { text_.push_back(std::move(line)); }
  /// A field shown in both renderings ("key: value" in kv, "key = value" in text).
  void field(const std::string& key, std::string value) {
    text_.push_back(key + " = " + value);
    kv_.emplace_back(key, std::move(value));
  }
  /// A field shown only in the kv rendering.
  void kv(const std::string& key, std::string value) { kv_.emplace_back(key, std::move(value)); }

  std::string render(bool as_kv) const {
    std::string out;
    if (as_kv) {
      for (const auto& [k, v] : kv_) out += k + ": " + v + "\n";
    } else {
      for (const auto& l : text_) out += l + "\n";
    }
    return out;
  }

private:
  std::vector<std::string> text_;
  std::vector<std::pair<std::string, std::string>> kv_;
};

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

} // namespace kforge

#endif // KFORGE_IO_HPP
