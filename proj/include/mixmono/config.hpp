#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mixmono/interval.hpp"
#include "mixmono/jacobian.hpp"

namespace mixmono {

enum class OutputFormat { Text, Csv };

struct RunOptions {
  double epsilon = 0.0;
  double slack = kDefaultJacobianSlack;
  int depth = 0;
  double step = 1e-3;
  double t_end = 1.0;
  double tol = 1e-8;
  OutputFormat format = OutputFormat::Text;

  friend bool operator==(const RunOptions&, const RunOptions&) = default;
};

// Contents of a run configuration file:
//
//   [system]
//   dim = 2
//   f1 = "-x1 + x2"
//   f2 = "x1 - x2"
//
//   [domain]
//   x1 = [0, 1]
//   x2 = [0, 1]
//
//   [options]
//   epsilon = 0
//   depth = 2
//
// Lines starting with '#' or ';' are comments. Every [options] key is
// optional.
struct RunConfig {
  std::size_t dim = 0;
  std::vector<std::string> components;
  std::vector<Interval> domain;
  RunOptions options;

  VectorField field() const;
  Box domain_box() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Throws ConfigError on anything malformed, including syntax errors in the
// expressions and non-finite domain bounds.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

std::string to_string(const RunConfig& config);

}  // namespace mixmono
