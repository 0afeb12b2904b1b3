#include "asns/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "asns/errors.hpp"

namespace asns {

double Eigenpair::entry(NodeId id) const {
  auto it = std::lower_bound(order.begin(), order.end(), id);
  if (it == order.end() || *it != id)
    throw IdentifierError("node " + std::to_string(id) + " not in eigenvector");
  return v1(it - order.begin());
}

PerturbedLaplacian perturbed_laplacian(const DirectedGraph& pre_subgraph,
                                       NodeId leader) {
  if (!pre_subgraph.contains(leader))
    throw IdentifierError("virtual leader " + std::to_string(leader) +
                          " is not in the candidate subgraph");
  PerturbedLaplacian out;
  out.base = build_laplacian(pre_subgraph);
  out.leader = leader;
  const auto n = static_cast<Eigen::Index>(pre_subgraph.node_count());
  out.leader_weights = Eigen::VectorXd::Zero(n);
  out.leader_weights(static_cast<Eigen::Index>(pre_subgraph.index_of(leader))) = 1.0;
  out.matrix = out.base.matrix;
  out.matrix.diagonal() += out.leader_weights;
  return out;
}

Eigenpair smallest_eigenpair(const PerturbedLaplacian& m,
                             const EigenSolverOptions& opts) {
  const Eigen::Index n = m.matrix.rows();
  if (n == 0) throw PreconditionError("empty perturbed Laplacian");

  Eigen::LLT<Eigen::MatrixXd> llt(m.matrix);
  if (llt.info() != Eigen::Success)
    throw StructureError(
        "perturbed Laplacian is not positive definite; the candidate subgraph "
        "over normal agents is disconnected");

  Eigenpair out;
  out.order = m.order();
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
  double residual = INFINITY;
  double lambda = 0.0;
  for (int it = 1; it <= opts.max_iters; ++it) {
    Eigen::VectorXd y = llt.solve(v);
    const double norm = y.norm();
    if (!std::isfinite(norm) || norm == 0.0)
      throw StructureError("inverse iteration broke down; L_B is singular");
    v = y / norm;
    const Eigen::VectorXd lv = m.matrix * v;
    lambda = v.dot(lv);
    residual = (lv - lambda * v).norm();
    out.iterations = it;
    if (residual <= opts.tolerance) break;
  }
  if (!(residual <= opts.tolerance))
    throw ConvergenceError("inverse iteration did not converge in " +
                               std::to_string(opts.max_iters) +
                               " iterations",
                           residual);

  // A leaderless component makes L_B singular; in floating point that shows
  // up as an eigenvalue at roundoff level rather than a failed factorization.
  const double scale = std::max(1.0, m.matrix.cwiseAbs().maxCoeff());
  if (!(lambda > 1e-12 * scale))
    throw StructureError(
        "smallest eigenvalue of L_B is not positive; the candidate subgraph "
        "over normal agents is disconnected");
  if (v.sum() < 0.0) v = -v;
  if (!(v.minCoeff() > 0.0))
    throw StructureError(
        "smallest eigenvector of L_B has a non-positive entry; the candidate "
        "subgraph over normal agents is disconnected");
  out.lambda1 = lambda;
  out.v1 = v;
  out.residual = residual;
  return out;
}

}  // namespace asns
