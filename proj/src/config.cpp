#include "mixmono/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "mixmono/errors.hpp"
#include "mixmono/expr.hpp"

namespace mixmono {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_double(std::string_view text, std::size_t line, std::string_view key) {
  text = trim(text);
  double v = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) fail(line, "'" + std::string(key) + "' is not a number");
  return v;
}

long parse_long(std::string_view text, std::size_t line, std::string_view key) {
  text = trim(text);
  long v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) fail(line, "'" + std::string(key) + "' is not an integer");
  return v;
}

Interval parse_interval(std::string_view text, std::size_t line, std::string_view key) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']') {
    fail(line, "'" + std::string(key) + "' must look like [lo, hi]");
  }
  const std::string_view body = text.substr(1, text.size() - 2);
  const auto comma = body.find(',');
  if (comma == std::string_view::npos) fail(line, "'" + std::string(key) + "' must look like [lo, hi]");
  const double lo = parse_double(body.substr(0, comma), line, key);
  const double hi = parse_double(body.substr(comma + 1), line, key);
  if (!std::isfinite(lo) || !std::isfinite(hi)) fail(line, "domain must be finite ('" + std::string(key) + "')");
  if (lo > hi) fail(line, "'" + std::string(key) + "' has lo > hi");
  return Interval(lo, hi);
}

std::string unquote(std::string_view text) {
  text = trim(text);
  if (text.size() >= 2 && text.front() == '"' && text.back() == '"') text = text.substr(1, text.size() - 2);
  return std::string(text);
}

// "f3" -> 3 when `prefix` is "f"
std::optional<std::size_t> indexed_key(std::string_view key, char prefix) {
  if (key.size() < 2 || key.front() != prefix) return std::nullopt;
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(key.data() + 1, key.data() + key.size(), v);
  if (ec != std::errc() || ptr != key.data() + key.size() || v == 0) return std::nullopt;
  return v;
}

struct Entry {
  std::string value;
  std::size_t line;
};

}  // namespace

VectorField RunConfig::field() const { return VectorField::parse(dim, components); }

Box RunConfig::domain_box() const { return Box(domain); }

RunConfig parse_config(std::string_view text) {
  std::map<std::string, std::map<std::string, Entry>> sections;
  std::string section;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "system" && section != "domain" && section != "options") {
        fail(line_no, "unknown section [" + section + "]");
      }
      continue;
    }
    if (section.empty()) fail(line_no, "key outside of any section");
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected key = value");
    const std::string key(trim(line.substr(0, eq)));
    if (!sections[section].emplace(key, Entry{std::string(trim(line.substr(eq + 1))), line_no}).second) {
      fail(line_no, "duplicate key '" + key + "'");
    }
  }

  RunConfig cfg;
  auto& system = sections["system"];
  auto dim_it = system.find("dim");
  if (dim_it == system.end()) throw ConfigError("config: [system] needs dim");
  const long dim = parse_long(dim_it->second.value, dim_it->second.line, "dim");
  if (dim < 1) fail(dim_it->second.line, "dim must be >= 1");
  cfg.dim = static_cast<std::size_t>(dim);

  std::map<std::size_t, Entry> components;
  for (auto& [key, entry] : system) {
    if (key == "dim") continue;
    auto idx = indexed_key(key, 'f');
    if (!idx) fail(entry.line, "unknown key '" + key + "' in [system]");
    components.emplace(*idx, entry);
  }
  if (components.empty()) throw ConfigError("config: [system] needs at least f1");
  for (auto& [idx, entry] : components) {
    if (idx != cfg.components.size() + 1) fail(entry.line, "components must be numbered f1..fm without gaps");
    cfg.components.push_back(unquote(entry.value));
  }

  std::map<std::size_t, Interval> domain;
  for (auto& [key, entry] : sections["domain"]) {
    auto idx = indexed_key(key, 'x');
    if (!idx || *idx > cfg.dim) fail(entry.line, "unknown key '" + key + "' in [domain]");
    domain.emplace(*idx, parse_interval(entry.value, entry.line, key));
  }
  for (std::size_t i = 1; i <= cfg.dim; ++i) {
    auto it = domain.find(i);
    if (it == domain.end()) throw ConfigError("config: [domain] is missing x" + std::to_string(i));
    cfg.domain.push_back(it->second);
  }

  for (auto& [idx, entry] : components) {
    try {
      parse(cfg.components[idx - 1], cfg.dim);
    } catch (const Error& e) {
      fail(entry.line, "f" + std::to_string(idx) + ": " + e.what());
    }
  }

  RunOptions& o = cfg.options;
  for (auto& [key, entry] : sections["options"]) {
    const auto& v = entry.value;
    const std::size_t ln = entry.line;
    if (key == "epsilon") {
      o.epsilon = parse_double(v, ln, key);
      if (!(o.epsilon >= 0.0) || !std::isfinite(o.epsilon)) fail(ln, "epsilon must be >= 0");
    } else if (key == "slack") {
      o.slack = parse_double(v, ln, key);
      if (!(o.slack > 0.0) || !std::isfinite(o.slack)) fail(ln, "slack must be > 0");
    } else if (key == "depth") {
      const long d = parse_long(v, ln, key);
      if (d < 0 || d > 40) fail(ln, "depth must be in [0, 40]");
      o.depth = static_cast<int>(d);
    } else if (key == "step") {
      o.step = parse_double(v, ln, key);
      if (!(o.step > 0.0) || !std::isfinite(o.step)) fail(ln, "step must be > 0");
    } else if (key == "t_end") {
      o.t_end = parse_double(v, ln, key);
      if (!(o.t_end >= 0.0) || !std::isfinite(o.t_end)) fail(ln, "t_end must be >= 0");
    } else if (key == "tol") {
      o.tol = parse_double(v, ln, key);
      if (!(o.tol > 0.0) || !std::isfinite(o.tol)) fail(ln, "tol must be > 0");
    } else if (key == "format") {
      const std::string f = unquote(v);
      if (f == "text") {
        o.format = OutputFormat::Text;
      } else if (f == "csv") {
        o.format = OutputFormat::Csv;
      } else {
        fail(ln, "format must be text or csv");
      }
    } else {
      fail(ln, "unknown key '" + key + "' in [options]");
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string to_string(const RunConfig& config) {
  auto num = [](double v) { return format_number(v, 17); };
  std::ostringstream out;
  out << "[system]\n";
  out << "dim = " << config.dim << '\n';
  for (std::size_t i = 0; i < config.components.size(); ++i) {
    out << 'f' << i + 1 << " = \"" << config.components[i] << "\"\n";
  }
  out << "\n[domain]\n";
  for (std::size_t i = 0; i < config.domain.size(); ++i) {
    out << 'x' << i + 1 << " = [" << num(config.domain[i].lo()) << ", " << num(config.domain[i].hi()) << "]\n";
  }
  const RunOptions& o = config.options;
  out << "\n[options]\n";
  out << "epsilon = " << num(o.epsilon) << '\n';
  out << "slack = " << num(o.slack) << '\n';
  out << "depth = " << o.depth << '\n';
  out << "step = " << num(o.step) << '\n';
  out << "t_end = " << num(o.t_end) << '\n';
  out << "tol = " << num(o.tol) << '\n';
  out << "format = " << (o.format == OutputFormat::Csv ? "csv" : "text") << '\n';
  return out.str();
}

}  // namespace mixmono
