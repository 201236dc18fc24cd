#pragma once

// Problem files, report serialization and the batch commands behind the
// realgit executable.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "realgit/error.hpp"
#include "realgit/stability.hpp"

namespace realgit::cli {

/// Schema violation; `pointer` is a JSON pointer into the problem file.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& msg)
      : Error(pointer + ": " + msg), pointer_(std::move(pointer)) {}
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

struct NamedPoint {
  std::string id;
  Vector vec;
};

struct Tolerances {
  double weight = 1e-6;     // zero / negativity threshold for maximal weights
  double flow = 1e-8;       // ‖μ_p‖ convergence threshold
  double component = 1e-9;  // relative size below which a weight component is zero
};

struct Problem {
  std::string group_name;
  std::string representation_name;
  Representation rep;
  std::vector<NamedPoint> points;
  Tolerances tol;
  std::uint64_t seed = 0;
  int max_iters = 10000;
};

struct Overrides {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_iters;
  int jobs = 1;
};

Problem parse_problem(const nlohmann::ordered_json& j);
Problem load_problem(const std::string& path);
void apply_overrides(Problem& p, const Overrides& o);

ClassifyOptions classify_options(const Problem& p);

nlohmann::ordered_json report_to_json(const std::string& id, const StabilityReport& r);
nlohmann::ordered_json matrix_to_json(const Matrix& m);
nlohmann::ordered_json vector_to_json(const Vector& v);

/// Parses "a,b,c" or "[a,b,c]" into a vector.
Vector parse_vector(const std::string& text);

/// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitIndeterminate = 3;

/// An empty out_path writes to `out`.
int cmd_classify(const std::string& problem_path, const std::string& out_path, const Overrides& o,
                 std::ostream& out, std::ostream& err);
int cmd_weights(const std::string& problem_path, const std::string& point_id,
                const std::string& direction, double t_max, const std::string& csv_path,
                std::ostream& out, std::ostream& err);
int cmd_flow(const std::string& problem_path, const std::string& point_id, const std::string& out_path,
             const Overrides& o, std::ostream& out, std::ostream& err);
int cmd_parabolic(const std::string& problem_path, const std::string& direction, std::ostream& out,
                  std::ostream& err);
int cmd_check(const std::string& problem_path, std::ostream& out, std::ostream& err);

}  // namespace realgit::cli
