#pragma once

#include <vector>

#include <Eigen/Dense>

#include "asns/graph.hpp"
#include "asns/types.hpp"

namespace asns {

/// L_B = L + diag(B 1) for a single virtual leader with unit input weight.
struct PerturbedLaplacian {
  LaplacianMatrix base;
  NodeId leader = 0;
  /// Diagonal perturbation per node in base.order (one entry is 1).
  Eigen::VectorXd leader_weights;
  Eigen::MatrixXd matrix;

  const std::vector<NodeId>& order() const { return base.order; }
};

/// Smallest eigenvalue with its eigenvector, oriented strictly positive and
/// scaled to unit Euclidean norm. Entries follow the matrix's node order.
struct Eigenpair {
  double lambda1 = 0.0;
  Eigen::VectorXd v1;
  std::vector<NodeId> order;
  int iterations = 0;
  double residual = 0.0;

  /// v1 entry for `id`; throws IdentifierError if absent.
  double entry(NodeId id) const;
};

struct EigenSolverOptions {
  int max_iters = 10000;
  /// Stop once ||L v - lambda v|| <= tolerance (unit-norm v).
  double tolerance = 1e-10;
};

/// Throws IdentifierError if `leader` is not a node of `pre_subgraph`.
PerturbedLaplacian perturbed_laplacian(const DirectedGraph& pre_subgraph,
                                       NodeId leader);

/// Inverse iteration with zero shift from the all-ones vector; each step
/// solves L_B y = x with a Cholesky factorization computed once.
///
/// Throws ConvergenceError (with the last residual) when the residual does
/// not reach the tolerance within max_iters, and StructureError when L_B is
/// singular or the eigenvector has a non-positive entry; both indicate that
/// the candidate subgraph is not connected.
Eigenpair smallest_eigenpair(const PerturbedLaplacian& m,
                             const EigenSolverOptions& opts = {});

}  // namespace asns
