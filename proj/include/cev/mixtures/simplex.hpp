#pragma once

#include <Eigen/Core>
#include <vector>

namespace cev {

// Revised simplex for max c'x subject to Ax = b, x >= 0, with b >= 0 and A
// dense. The feasible basis found at construction is kept between calls to
// maximize, so a sequence of related objectives warm-starts.
class DenseSimplex {
 public:
  // Throws InfeasibleError if {Ax = b, x >= 0} is empty.
  DenseSimplex(Eigen::MatrixXd A, Eigen::VectorXd b);

  // Optimal value. The problem must be bounded.
  double maximize(const Eigen::VectorXd& c);

  // Primal solution of the last solve.
  Eigen::VectorXd solution() const;

  Eigen::Index rows() const noexcept { return A_.rows(); }
  Eigen::Index cols() const noexcept { return n_; }
  long pivots() const noexcept { return total_pivots_; }

 private:
  void refactor();
  void pivot(Eigen::Index row, Eigen::Index col, const Eigen::VectorXd& column);
  // Runs phase-two iterations for cost vector c over all columns (including
  // artificials, which are blocked from entering when blocked = true).
  void optimize(const Eigen::VectorXd& c, bool block_artificials);

  Eigen::MatrixXd A_;  // m x (n + m), artificial identity appended
  Eigen::VectorXd b_;
  Eigen::Index n_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> in_basis_;
  Eigen::MatrixXd basis_inverse_;
  Eigen::VectorXd x_basic_;
  int pivots_since_refactor_ = 0;
  long total_pivots_ = 0;
};

}  // namespace cev
