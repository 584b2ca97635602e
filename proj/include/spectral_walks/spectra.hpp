#pragma once

// Dense symmetric eigenvalues, empirical spectral measures and polynomial traces.

#include <Eigen/Core>

#include <vector>

#include "spectral_walks/measures.hpp"
#include "spectral_walks/recurrence.hpp"

namespace spectral_walks {

/// Ascending eigenvalues of a symmetric matrix of dimension <= cap.
/// Throws ContractError when the symmetry defect exceeds 1e-10 ||M||, ResourceError above the
/// cap, NumericError when the eigensolver fails.
std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& m, Eigen::Index cap = kDefaultDimensionCap);

EmpiricalSpectrum empirical(const Eigen::MatrixXd& m);

/// max(|lambda_1|, |lambda_n|).
double operator_norm(const Eigen::MatrixXd& m);
double operator_norm(const EmpiricalSpectrum& e);

struct TracePair {
  double eigen_route = 0.0;   // sum_i P_k(lambda_i)
  double matrix_route = 0.0;  // trace of P_k(M) from the matrix recurrence
};

TracePair trace_poly(const ThreeTermRecurrence& rec, int k, const Eigen::MatrixXd& m);
/// sum_i P_k(lambda_i) for a spectrum that is already known.
double trace_poly(const ThreeTermRecurrence& rec, int k, const EmpiricalSpectrum& e);

/// Largest change in d_K(mu, target) when every eigenvalue moves by at most shift:
/// max density of target times shift.
double dk_shift_bound(const LimitMeasure& target, double shift);

}  // namespace spectral_walks
