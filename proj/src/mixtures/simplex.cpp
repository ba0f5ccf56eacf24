#include "cev/mixtures/simplex.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cev/core/errors.hpp"

namespace cev {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kPivotTol = 1e-9;
constexpr int kRefactorEvery = 64;
constexpr int kDegenerateBeforeBland = 30;

}  // namespace

DenseSimplex::DenseSimplex(MatrixXd A, VectorXd b)
    : b_(std::move(b)), n_(A.cols()) {
  const Index m = A.rows();
  if (b_.size() != m) throw ShapeError("LP right-hand side has the wrong length");
  if (m == 0 || n_ == 0) throw ShapeError("LP must have rows and columns");
  if (!A.allFinite() || !b_.allFinite()) throw DomainError("LP data must be finite");
  if ((b_.array() < 0.0).any()) throw DomainError("LP right-hand side must be nonnegative");
  A_.resize(m, n_ + m);
  A_.leftCols(n_) = A;
  A_.rightCols(m).setIdentity();
  basis_.resize(static_cast<std::size_t>(m));
  in_basis_.assign(static_cast<std::size_t>(n_ + m), false);
  for (Index i = 0; i < m; ++i) {
    basis_[static_cast<std::size_t>(i)] = n_ + i;
    in_basis_[static_cast<std::size_t>(n_ + i)] = true;
  }
  basis_inverse_ = MatrixXd::Identity(m, m);
  x_basic_ = b_;

  // Phase one: drive the artificials to zero.
  VectorXd phase_one = VectorXd::Zero(n_ + m);
  phase_one.tail(m).setConstant(-1.0);
  optimize(phase_one, /*block_artificials=*/false);
  double infeasibility = 0.0;
  for (Index i = 0; i < m; ++i) {
    if (basis_[static_cast<std::size_t>(i)] >= n_) infeasibility += x_basic_[i];
  }
  if (infeasibility > 1e-9 * (1.0 + b_.lpNorm<Eigen::Infinity>())) {
    throw InfeasibleError("LP is infeasible (phase-one residual " +
                          std::to_string(infeasibility) + ")");
  }
  // Pivot zero-level artificials out of the basis where the row allows it.
  for (Index r = 0; r < m; ++r) {
    if (basis_[static_cast<std::size_t>(r)] < n_) continue;
    const VectorXd row = basis_inverse_.row(r) * A_.leftCols(n_);
    Index best = -1;
    double best_abs = kPivotTol;
    for (Index j = 0; j < n_; ++j) {
      if (!in_basis_[static_cast<std::size_t>(j)] && std::abs(row[j]) > best_abs) {
        best_abs = std::abs(row[j]);
        best = j;
      }
    }
    if (best >= 0) {
      const VectorXd column = basis_inverse_ * A_.col(best);
      pivot(r, best, column);
    }
  }
  x_basic_ = x_basic_.cwiseMax(0.0);
}

void DenseSimplex::refactor() {
  const Index m = A_.rows();
  MatrixXd B(m, m);
  for (Index i = 0; i < m; ++i) B.col(i) = A_.col(basis_[static_cast<std::size_t>(i)]);
  Eigen::PartialPivLU<MatrixXd> lu(B);
  basis_inverse_ = lu.inverse();
  x_basic_ = (basis_inverse_ * b_).cwiseMax(0.0);
  pivots_since_refactor_ = 0;
}

void DenseSimplex::pivot(Index row, Index col, const VectorXd& column) {
  const double u_r = column[row];
  const double theta = x_basic_[row] / u_r;
  x_basic_ -= theta * column;
  x_basic_[row] = theta;
  // Product-form update of the explicit inverse.
  const Eigen::RowVectorXd pivot_row = basis_inverse_.row(row) / u_r;
  basis_inverse_ -= column * pivot_row;
  basis_inverse_.row(row) = pivot_row;
  in_basis_[static_cast<std::size_t>(basis_[static_cast<std::size_t>(row)])] = false;
  in_basis_[static_cast<std::size_t>(col)] = true;
  basis_[static_cast<std::size_t>(row)] = col;
  ++total_pivots_;
  if (++pivots_since_refactor_ >= kRefactorEvery) refactor();
}

void DenseSimplex::optimize(const VectorXd& c, bool block_artificials) {
  const Index m = A_.rows();
  const Index candidates = block_artificials ? n_ : n_ + m;
  const double tol = 1e-11 * std::max(1.0, c.lpNorm<Eigen::Infinity>());
  const long limit = 50L * (n_ + m) + 1000;
  int degenerate_run = 0;
  VectorXd c_basic(m);
  for (long iter = 0; iter < limit; ++iter) {
    for (Index i = 0; i < m; ++i) c_basic[i] = c[basis_[static_cast<std::size_t>(i)]];
    const Eigen::RowVectorXd y = c_basic.transpose() * basis_inverse_;
    const Eigen::RowVectorXd reduced =
        c.head(candidates).transpose() - y * A_.leftCols(candidates);
    const bool bland = degenerate_run >= kDegenerateBeforeBland;
    Index entering = -1;
    double best = tol;
    for (Index j = 0; j < candidates; ++j) {
      if (in_basis_[static_cast<std::size_t>(j)] || reduced[j] <= tol) continue;
      if (bland) {
        entering = j;
        break;
      }
      if (reduced[j] > best) {
        best = reduced[j];
        entering = j;
      }
    }
    if (entering < 0) return;

    const VectorXd column = basis_inverse_ * A_.col(entering);
    Index leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < m; ++i) {
      const Index var = basis_[static_cast<std::size_t>(i)];
      double ratio;
      if (column[i] > kPivotTol) {
        ratio = std::max(x_basic_[i], 0.0) / column[i];
      } else if (block_artificials && var >= n_ && column[i] < -kPivotTol) {
        // A zero-level artificial must not become positive.
        ratio = 0.0;
      } else {
        continue;
      }
      const bool better =
          ratio < best_ratio ||
          (ratio == best_ratio && leaving >= 0 &&
           var < basis_[static_cast<std::size_t>(leaving)]);
      if (better) {
        best_ratio = ratio;
        leaving = i;
      }
    }
    if (leaving < 0) throw NumericalError("LP is unbounded");
    degenerate_run = best_ratio <= 0.0 ? degenerate_run + 1 : 0;
    pivot(leaving, entering, column);
    x_basic_ = x_basic_.cwiseMax(0.0);
  }
  throw NumericalError("simplex iteration limit reached");
}

double DenseSimplex::maximize(const VectorXd& c) {
  if (c.size() != n_) throw ShapeError("LP objective has the wrong length");
  if (!c.allFinite()) throw DomainError("LP objective must be finite");
  VectorXd full = VectorXd::Zero(n_ + A_.rows());
  full.head(n_) = c;
  optimize(full, /*block_artificials=*/true);
  double value = 0.0;
  for (Index i = 0; i < A_.rows(); ++i) {
    value += full[basis_[static_cast<std::size_t>(i)]] * x_basic_[i];
  }
  return value;
}

VectorXd DenseSimplex::solution() const {
  VectorXd x = VectorXd::Zero(n_);
  for (Index i = 0; i < A_.rows(); ++i) {
    const Index var = basis_[static_cast<std::size_t>(i)];
    if (var < n_) x[var] = x_basic_[i];
  }
  return x;
}

}  // namespace cev
