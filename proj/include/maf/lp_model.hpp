#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

namespace maf {

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

struct LpVariable {
  std::string name;
  double lower = 0.0;
  std::optional<double> upper;
  bool integer = false;
};

struct LpTerm {
  int var = 0;
  double coef = 1.0;
};

struct LpConstraint {
  std::string name;
  std::vector<LpTerm> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

// A linear program kept in insertion order, so serialization is stable.
class LpModel {
 public:
  // Names must be unique across variables and across constraints.
  int add_variable(std::string name, double lower = 0.0, std::optional<double> upper = std::nullopt,
                   bool integer = false);
  void add_constraint(std::string name, std::vector<LpTerm> terms, Sense sense, double rhs);
  void set_objective(std::vector<LpTerm> terms, double constant = 0.0, bool minimize = true);

  // -1 when absent
  int find_variable(const std::string& name) const;

  const std::vector<LpVariable>& variables() const { return vars_; }
  const std::vector<LpConstraint>& constraints() const { return rows_; }
  const std::vector<LpTerm>& objective() const { return objective_; }
  double objective_constant() const { return constant_; }
  bool minimize() const { return minimize_; }

 private:
  std::vector<LpVariable> vars_;
  std::unordered_map<std::string, int> var_index_;
  std::vector<LpConstraint> rows_;
  std::unordered_map<std::string, int> row_index_;
  std::vector<LpTerm> objective_;
  double constant_ = 0.0;
  bool minimize_ = true;
};

using LpPoint = std::map<std::string, double>;

struct PointReport {
  bool feasible = true;
  double objective = 0.0;
  double max_violation = 0.0;
  std::vector<std::string> violations;  // names of violated rows and bounds
};

// Missing variables count as 0. Throws InputError on names the model lacks.
PointReport check_feasible_point(const LpModel& model, const LpPoint& point, double tolerance = 1e-9);

// CPLEX-style LP text: Minimize/Maximize, Subject To, Bounds, General, End.
void write_lp(const LpModel& model, std::ostream& out);
// Throws InputError when the file cannot be written.
void write_lp_file(const LpModel& model, const std::string& path);

}  // namespace maf
