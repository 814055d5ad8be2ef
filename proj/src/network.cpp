#include "memrc/network.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace memrc {

ConstraintGraph make_graph(int n_cells, std::vector<std::pair<int, int>> edges) {
  if (n_cells < 1) {
    throw std::invalid_argument("graph: n_cells must be >= 1");
  }
  std::set<std::pair<int, int>> seen;
  ConstraintGraph g;
  g.n_cells = n_cells;
  g.degree.assign(n_cells, 0);
  g.edges.reserve(edges.size());
  for (auto [a, b] : edges) {
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= n_cells) {
      throw std::invalid_argument("graph: edge index out of range");
    }
    if (a == b) {
      throw std::invalid_argument("graph: self-loop on cell " + std::to_string(a));
    }
    if (!seen.insert({a, b}).second) {
      throw std::invalid_argument("graph: duplicate edge {" + std::to_string(a) + "," +
                                  std::to_string(b) + "}");
    }
    g.edges.emplace_back(a, b);
    ++g.degree[a];
    ++g.degree[b];
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

NetworkState make_initial_network(const CircuitParams& p, const Eigen::VectorXd& v0) {
  NetworkState s;
  s.t = 0.0;
  s.v = v0;
  s.devices.assign(static_cast<std::size_t>(v0.size()), make_initial_device(p.device));
  return s;
}

Eigen::MatrixXd build_capacitance_matrix(const ConstraintGraph& g, double c, double c_c) {
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(g.n_cells, g.n_cells);
  for (int i = 0; i < g.n_cells; ++i) {
    k(i, i) = c + c_c * g.degree[i];
  }
  for (const auto& [a, b] : g.edges) {
    k(a, b) = -c_c;
    k(b, a) = -c_c;
  }
  return k;
}

Eigen::SparseMatrix<double> build_capacitance_matrix_sparse(const ConstraintGraph& g, double c,
                                                            double c_c) {
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(g.n_cells) + 2 * g.edges.size());
  for (int i = 0; i < g.n_cells; ++i) {
    triplets.emplace_back(i, i, c + c_c * g.degree[i]);
  }
  for (const auto& [a, b] : g.edges) {
    triplets.emplace_back(a, b, -c_c);
    triplets.emplace_back(b, a, -c_c);
  }
  Eigen::SparseMatrix<double> k(g.n_cells, g.n_cells);
  k.setFromTriplets(triplets.begin(), triplets.end());
  return k;
}

CapacitanceOperator::CapacitanceOperator(const ConstraintGraph& g, double c, double c_c) {
  if (c <= 0.0 || c_c < 0.0) {
    throw std::invalid_argument("capacitance operator: c must be > 0 and c_c >= 0");
  }
  if (g.n_cells <= kDenseLimit) {
    init_dense(build_capacitance_matrix(g, c, c_c));
  } else {
    init_sparse(build_capacitance_matrix_sparse(g, c, c_c));
  }
}

CapacitanceOperator::CapacitanceOperator(const Eigen::MatrixXd& k) {
  init_dense(k);
}

void CapacitanceOperator::init_dense(const Eigen::MatrixXd& k) {
  size_ = static_cast<int>(k.rows());
  dense_ = true;
  llt_.compute(k);
  if (llt_.info() != Eigen::Success) {
    throw std::runtime_error("capacitance matrix is not positive definite");
  }
}

void CapacitanceOperator::init_sparse(const Eigen::SparseMatrix<double>& k) {
  size_ = static_cast<int>(k.rows());
  dense_ = false;
  sparse_llt_.compute(k);
  if (sparse_llt_.info() != Eigen::Success) {
    throw std::runtime_error("capacitance matrix is not positive definite");
  }
}

Eigen::VectorXd CapacitanceOperator::solve(const Eigen::VectorXd& rhs) const {
  return dense_ ? llt_.solve(rhs).eval() : sparse_llt_.solve(rhs).eval();
}

Eigen::VectorXd conductance_rhs(const NetworkState& s, const CircuitParams& p) {
  const auto n = s.v.size();
  Eigen::VectorXd g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double m = memristance(s.devices[static_cast<std::size_t>(i)], p.device);
    g[i] = (p.v_dd - s.v[i]) / m - s.v[i] / p.r;
  }
  return g;
}

Eigen::VectorXd derivative(const NetworkState& s, const CircuitParams& p,
                           const CapacitanceOperator& fact) {
  return fact.solve(conductance_rhs(s, p));
}

double divider_target(double v_dd, double r, double m) {
  return v_dd * r / (r + m);
}

std::vector<std::string> validate_circuit(const CircuitParams& p, double ratio_min) {
  std::vector<std::string> violations;
  auto require_positive = [&violations](double value, const char* name) {
    if (!(value > 0.0)) {
      violations.push_back(std::string(name) + " must be > 0, got " + std::to_string(value));
    }
  };
  require_positive(p.v_dd, "v_dd");
  require_positive(p.r, "r");
  require_positive(p.c, "c");
  if (p.c_c < 0.0) {
    violations.push_back("c_c must be >= 0, got " + std::to_string(p.c_c));
  }
  require_positive(p.device.lrs, "lrs");
  require_positive(p.device.hrs, "hrs");
  require_positive(p.device.p_set, "p_set");
  require_positive(p.device.t_amb, "t_amb");
  require_positive(p.device.r_th, "r_th");
  require_positive(p.device.c_th, "c_th");
  if (!(p.device.hrs > p.device.lrs)) {
    violations.push_back("hrs must exceed lrs");
  }
  if (!(p.device.t_crit > p.device.t_amb)) {
    violations.push_back("t_crit must exceed t_amb");
  }
  if (p.device.t_lock < 0.0) {
    violations.push_back("t_lock must be >= 0");
  }
  auto device = validate_params(p.device, p.r, ratio_min);
  violations.insert(violations.end(), device.begin(), device.end());
  return violations;
}

}  // namespace memrc
