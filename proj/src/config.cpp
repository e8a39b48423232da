#include "config.hpp"

#include <cctype>
#include <charconv>
#include <fmt/format.h>

#include "error.hpp"

namespace virial {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view what) {
  throw Error(ErrorCode::ParseError, fmt::format("{}: '{}' is not {}", key, value, what));
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ',' || std::isspace(static_cast<unsigned char>(s[i])))) ++i;
    const auto start = i;
    while (i < s.size() && s[i] != ',' && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

const std::string* find(const KeyValues& keys, std::string_view k) {
  const auto it = keys.find(k);
  return it == keys.end() ? nullptr : &it->second;
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues out;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error(ErrorCode::ParseError, fmt::format("line {}: expected key=value", lineno));
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorCode::ParseError, fmt::format("line {}: empty key", lineno));
    out[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  value = trim(value);
  if (!value.empty() && value.front() == '+') value.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
    bad(key, value, "a number");
  return v;
}

int parse_int(std::string_view key, std::string_view value) {
  value = trim(value);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
    bad(key, value, "an integer");
  return v;
}

bool parse_bool(std::string_view key, std::string_view value) {
  value = trim(value);
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  bad(key, value, "a boolean");
}

std::vector<double> parse_real_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  for (auto t : tokens(value)) out.push_back(parse_real(key, t));
  return out;
}

std::vector<int> parse_int_list(std::string_view key, std::string_view value) {
  std::vector<int> out;
  for (auto t : tokens(value)) out.push_back(parse_int(key, t));
  return out;
}

PotentialSpec potential_spec_from_keys(const KeyValues& keys) {
  std::string kind;
  if (const auto* k = find(keys, "kind"))
    kind = *k;
  else if (find(keys, "coeffs"))
    kind = "even-polynomial";
  else if (find(keys, "omega"))
    kind = "quartic-anharmonic";
  else
    kind = "monomial";

  auto real = [&](std::string_view k, double fallback) {
    const auto* v = find(keys, k);
    return v ? parse_real(k, *v) : fallback;
  };
  auto required = [&](std::string_view k) -> const std::string& {
    const auto* v = find(keys, k);
    if (!v) throw Error(ErrorCode::InvalidArgument, fmt::format("kind={} needs '{}'", kind, k));
    return *v;
  };

  PotentialSpec spec;
  if (kind == "monomial") {
    const auto* kap = find(keys, "kappa");
    spec = PotentialSpec::monomial(kap ? parse_int("kappa", *kap) : 2, real("lambda", 1.0));
  } else if (kind == "harmonic") {
    spec = PotentialSpec::quartic_anharmonic(real("omega", 1.0), 0.0);
  } else if (kind == "quartic-anharmonic") {
    spec = PotentialSpec::quartic_anharmonic(real("omega", 1.0), real("lambda", 0.0));
  } else if (kind == "even-polynomial") {
    spec = PotentialSpec::even_polynomial(parse_real_list("coeffs", required("coeffs")));
  } else if (kind == "polynomial") {
    const auto c = parse_real_list("coeffs", required("coeffs"));
    spec = PotentialSpec::from_polynomial(c);
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown potential kind '{}'", kind));
  }
  if (const auto* xi = find(keys, "xi")) {
    spec.xi = parse_real("xi", *xi);
    spec.shifted = spec.xi != 0.0;
  }
  return spec;
}

Potential potential_from_keys(const KeyValues& keys) {
  return validate(potential_spec_from_keys(keys));
}

}  // namespace virial
