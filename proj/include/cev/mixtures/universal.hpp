#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cev/mixtures/localization.hpp"
#include "cev/mixtures/simplex.hpp"
#include "cev/mixtures/summary.hpp"

namespace cev {

using LogDensity = std::function<double(const Eigen::VectorXd&)>;

// Null log density at every grid variance.
Eigen::VectorXd null_logliks(const SummaryStats& stats,
                             const Eigen::VectorXd& grid);

// numerator / max over the grid of the null density.
double ui_evalue(const Eigen::VectorXd& x, const LogDensity& log_numerator,
                 const Eigen::VectorXd& grid);
double ui_evalue(const SummaryStats& stats, double log_numerator,
                 const Eigen::VectorXd& grid);

// numerator / max over grid[subset] of the null density.
double lui_evalue(const Eigen::VectorXd& x, const LogDensity& log_numerator,
                  const Eigen::VectorXd& grid,
                  std::span<const Eigen::Index> conf_subset);

// Compound universal inference: the denominator is the largest mixture null
// likelihood over distributions on the grid whose sample-variance CDF lies
// in the localization band at every constraint point.
class CuiSolver {
 public:
  // Throws InfeasibleError if no grid distribution satisfies the band.
  CuiSolver(const Localization& loc, Eigen::VectorXd grid, int nu);

  // log of the LP optimum for one hypothesis.
  double log_denominator(const SummaryStats& stats);
  double evalue(const SummaryStats& stats, double log_numerator);

  // Hypotheses are visited in order of s2 so consecutive LPs warm-start.
  Eigen::VectorXd evalues(std::span<const SummaryStats> stats,
                          const Eigen::VectorXd& log_numerators);

  const Eigen::VectorXd& grid() const noexcept { return grid_; }
  Eigen::Index band_rows() const noexcept { return lp_.rows() - 1; }

 private:
  Eigen::VectorXd grid_;
  int nu_;
  DenseSimplex lp_;
};

double cui_evalue(const Eigen::VectorXd& x, const LogDensity& log_numerator,
                  const Localization& loc, const Eigen::VectorXd& grid, int nu);

}  // namespace cev
