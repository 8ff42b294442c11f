#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cca::cli {

/// Bad command line; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A function operand: a catalog atom sampled on a grid, or a grid-function file.
struct FunctionSource {
  std::optional<std::string> atom;
  std::vector<double> params;
  std::optional<std::string> file;
  [[nodiscard]] bool given() const { return atom.has_value() || file.has_value(); }
};

struct JobSpec {
  std::string command;
  bool selftest = false;

  FunctionSource f;
  FunctionSource g;
  std::optional<std::string> grid;
  std::optional<std::string> dual;
  std::optional<std::string> graph;

  double lambda = 1.0;
  std::vector<double> x;
  std::vector<double> xstar;
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<double> matrix;

  std::string norm1 = "1";
  std::string norm2 = "2";
  int steps = 6;
  std::optional<std::string> dump_dir;

  int n = 0;
  std::string forms = "all";
  bool probe = false;
  std::size_t trials = 1000;
  std::uint64_t seed = 42;
  double p = 2.0;
  std::optional<double> q;
  std::uint64_t terms = 1000000;

  /// Tolerance override; defaults to the CCA_TOL environment variable.
  std::optional<double> tol;
  std::optional<std::string> out;
};

/// Parses argv[1..]; throws UsageError on any malformed input.
JobSpec parse_args(const std::vector<std::string>& args);

/// Executes a job; returns 0 on success and 1 on a computation error, with
/// the message written to `err`.
int run(const JobSpec& job, std::ostream& out, std::ostream& err);

/// Runs the golden examples of one subcommand; returns 0 iff all pass.
int selftest(const std::string& command, std::ostream& out);

/// parse_args + run with the 0/1/2 exit-code contract.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cca::cli
