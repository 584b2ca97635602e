#include "spectral_walks/spectra.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

#include "spectral_walks/errors.hpp"

namespace spectral_walks {

std::vector<double> sym_eigenvalues(const Eigen::MatrixXd& m, Eigen::Index cap) {
  if (m.rows() != m.cols()) throw ContractError("sym_eigenvalues: matrix is not square");
  if (m.rows() < 1) throw ContractError("sym_eigenvalues: matrix is empty");
  if (m.rows() > cap) {
    throw ResourceError("sym_eigenvalues: dimension " + std::to_string(m.rows()) + " exceeds cap " +
                        std::to_string(cap));
  }
  const double scale = m.cwiseAbs().maxCoeff();
  const double defect = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-10 * scale) {
    throw ContractError("sym_eigenvalues: symmetry defect " + std::to_string(defect) + " is too large");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("sym_eigenvalues: eigensolver did not converge");
  const Eigen::VectorXd& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

EmpiricalSpectrum empirical(const Eigen::MatrixXd& m) { return EmpiricalSpectrum(sym_eigenvalues(m)); }

double operator_norm(const EmpiricalSpectrum& e) { return std::max(std::abs(e.min()), std::abs(e.max())); }

double operator_norm(const Eigen::MatrixXd& m) { return operator_norm(empirical(m)); }

double trace_poly(const ThreeTermRecurrence& rec, int k, const EmpiricalSpectrum& e) {
  double sum = 0.0;
  for (double lambda : e.eigenvalues()) sum += poly_eval(rec, k, lambda);
  return sum;
}

TracePair trace_poly(const ThreeTermRecurrence& rec, int k, const Eigen::MatrixXd& m) {
  TracePair out;
  out.eigen_route = trace_poly(rec, k, empirical(m));
  out.matrix_route = poly_eval_matrix(rec, k, m).trace();
  return out;
}

double dk_shift_bound(const LimitMeasure& target, double shift) {
  if (!(shift >= 0.0)) throw ContractError("dk_shift_bound: shift must be >= 0");
  if (shift == 0.0) return 0.0;
  return target.max_density() * shift;
}

}  // namespace spectral_walks
