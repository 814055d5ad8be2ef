#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <utility>
#include <vector>

#include "memrc/device.hpp"

namespace memrc {

// Conflict edges between cells; doubles as the coupling-capacitor topology.
// Edges are stored normalized (a < b) with no duplicates or self-loops.
struct ConstraintGraph {
  int n_cells = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;
};

// Validates and normalizes an edge list. Throws std::invalid_argument on
// self-loops, duplicates, or out-of-range indices.
ConstraintGraph make_graph(int n_cells, std::vector<std::pair<int, int>> edges);

struct CircuitParams {
  double v_dd = 1.0;    // supply, V
  double r = 1e4;       // node resistor, ohm
  double c = 10e-9;     // node capacitor, F
  double c_c = 1e-9;    // coupling capacitor per edge, F
  DeviceParams device{};
};

struct NetworkState {
  double t = 0.0;
  Eigen::VectorXd v;                  // per-cell output-node voltage
  std::vector<DeviceState> devices;   // per-cell memristor state
};

NetworkState make_initial_network(const CircuitParams& p, const Eigen::VectorXd& v0);

// Nodal capacitance matrix K = c*I + c_c*L with L the graph Laplacian.
// K is symmetric positive definite for c > 0.
Eigen::MatrixXd build_capacitance_matrix(const ConstraintGraph& g, double c, double c_c);
Eigen::SparseMatrix<double> build_capacitance_matrix_sparse(const ConstraintGraph& g, double c,
                                                            double c_c);

// Holds one Cholesky factorization of K, reused for every step of a
// simulation. Dense up to kDenseLimit cells, sparse above.
class CapacitanceOperator {
 public:
  static constexpr int kDenseLimit = 128;

  CapacitanceOperator(const ConstraintGraph& g, double c, double c_c);
  // Factorizes an explicitly given SPD matrix (reduced systems, tests).
  explicit CapacitanceOperator(const Eigen::MatrixXd& k);

  Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const;
  int size() const { return size_; }

 private:
  void init_dense(const Eigen::MatrixXd& k);
  void init_sparse(const Eigen::SparseMatrix<double>& k);

  int size_ = 0;
  bool dense_ = true;
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> sparse_llt_;
};

// Kirchhoff current balance at each output node:
//   g_i = (v_dd - v_i)/M_i - v_i/r
Eigen::VectorXd conductance_rhs(const NetworkState& s, const CircuitParams& p);

// dv/dt as the solution of K * x = conductance_rhs(s, p).
Eigen::VectorXd derivative(const NetworkState& s, const CircuitParams& p,
                           const CapacitanceOperator& fact);

// Asymptote of a node voltage with the device state frozen.
double divider_target(double v_dd, double r, double m);

// Cross-field checks for a full parameter set: positivity plus the device
// design rule against r. Empty result means ok.
std::vector<std::string> validate_circuit(const CircuitParams& p, double ratio_min = 20.0);

}  // namespace memrc
