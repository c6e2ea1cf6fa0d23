#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "quatpick/solve.hpp"

namespace quatpick::cli {

/// Malformed input file; the message names the line or the offending field.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::size_t truncation = kDefaultOrder;
  /// Empty means scale-aware default.
  std::optional<double> psd_tol;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
};

struct ValueExpectation {
  Quaternion at;
  Quaternion value;
  double tol = 1e-8;
};

/// Optional block of a fixture, checked by `verify`.
struct Expectation {
  std::optional<bool> solvable;
  std::optional<bool> determinate;
  std::optional<std::size_t> rank;
  std::optional<int> exit_code;
  std::vector<ValueExpectation> values;
};

struct ProblemFile {
  Problem problem;
  /// Values given in the file; flags override them.
  std::optional<std::size_t> truncation;
  std::optional<double> psd_tol;
  std::optional<std::uint64_t> seed;
  std::optional<Expectation> expect;
};

ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::filesystem::path& path);
QSeries parse_coefficients(const std::string& text);

/// Points drawn uniformly from the ball of the given radius.
std::vector<Quaternion> sample_ball(std::mt19937_64& rng, std::size_t count, double radius);

/// Runs the command line given without the program name; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace quatpick::cli
