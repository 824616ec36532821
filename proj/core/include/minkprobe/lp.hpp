#pragma once

#include <vector>

#include <Eigen/Core>

namespace minkprobe {

enum class Relation { LessEqual, GreaterEqual, Equal };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
  // Constraint multipliers y with objective == sum_i y_i * rhs_i at the optimum.
  Eigen::VectorXd duals;
};

// Dense two-phase tableau simplex. Variables are non-negative unless marked
// free. Intended for the small programs of this library (a few hundred rows
// and columns at most).
class LinearProgram {
 public:
  explicit LinearProgram(int num_vars);

  void maximize(Eigen::VectorXd c);
  void minimize(Eigen::VectorXd c);
  void add_constraint(Eigen::VectorXd coeffs, Relation rel, double rhs);
  void set_free(int var, bool free = true);

  int num_vars() const { return num_vars_; }
  int num_constraints() const { return static_cast<int>(rows_.size()); }

  LpSolution solve() const;

 private:
  struct Row {
    Eigen::VectorXd coeffs;
    Relation rel;
    double rhs;
  };

  int num_vars_;
  Eigen::VectorXd objective_;
  bool minimize_ = false;
  std::vector<bool> free_;
  std::vector<Row> rows_;
};

}  // namespace minkprobe
