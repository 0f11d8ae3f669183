/*
 * Copyright 2026 The sotlogic Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * @file network.hpp
 * @brief Linear resistive networks and their nodal-analysis solution.
 *
 * Node 0 is ground. Ideal voltage sources are referenced to ground and pin
 * their node; every other node is solved from the reduced conductance
 * system G v = i. The solver is templated on the scalar so the same netlist
 * can be re-solved in extended precision as a cross-check.
 */
#ifndef SOTLOGIC_NETWORK_HPP
#define SOTLOGIC_NETWORK_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sotlogic {

/// A floating subgraph has no path to ground or to a source.
class SingularNetwork : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar = double>
struct Resistor {
  std::size_t a = 0;
  std::size_t b = 0;
  Scalar resistance = 0;  ///< may be +inf for an open branch
  std::string label;
};

template <typename Scalar = double>
struct VoltageSource {
  std::size_t node = 0;
  Scalar volts = 0;
  std::string label;
};

template <typename Scalar = double>
class Netlist {
 public:
  static constexpr std::size_t ground = 0;

  Netlist() : names_{"gnd"} {}

  std::size_t add_node(std::string name) {
    names_.push_back(std::move(name));
    return names_.size() - 1;
  }

  void add_resistor(std::size_t a, std::size_t b, Scalar r, std::string label) {
    check_node(a);
    check_node(b);
    if (a == b) throw std::invalid_argument("resistor '" + label + "' is a self-loop");
    if (!(r > Scalar(0))) throw std::invalid_argument("resistor '" + label + "' must be positive");
    resistors_.push_back({a, b, r, std::move(label)});
  }

  void add_source(std::size_t node, Scalar volts, std::string label) {
    check_node(node);
    if (node == ground) throw std::invalid_argument("source '" + label + "' drives ground");
    for (const auto& s : sources_)
      if (s.node == node) throw std::invalid_argument("node driven by two sources");
    sources_.push_back({node, volts, std::move(label)});
  }

  std::size_t num_nodes() const noexcept { return names_.size(); }
  const std::vector<std::string>& node_names() const noexcept { return names_; }
  const std::vector<Resistor<Scalar>>& resistors() const noexcept { return resistors_; }
  const std::vector<VoltageSource<Scalar>>& sources() const noexcept { return sources_; }

 private:
  void check_node(std::size_t n) const {
    if (n >= names_.size()) throw std::out_of_range("unknown node index");
  }

  std::vector<std::string> names_;
  std::vector<Resistor<Scalar>> resistors_;
  std::vector<VoltageSource<Scalar>> sources_;
};

/// Current is positive when it flows from `from` to `to`.
template <typename Scalar = double>
struct Branch {
  std::string label;
  std::size_t from = 0;
  std::size_t to = 0;
  Scalar resistance = 0;
  Scalar current = 0;
};

template <typename Scalar = double>
struct NetworkSolution {
  std::vector<std::string> node_names;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> node_voltages;
  std::vector<Branch<Scalar>> branches;
  std::vector<std::size_t> fixed_nodes;  ///< ground and source-driven nodes

  std::optional<std::size_t> find_node(const std::string& name) const {
    auto it = std::find(node_names.begin(), node_names.end(), name);
    if (it == node_names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - node_names.begin());
  }

  const Branch<Scalar>& branch(const std::string& label) const {
    for (const auto& b : branches)
      if (b.label == label) return b;
    throw std::out_of_range("no branch labelled '" + label + "'");
  }

  Scalar voltage(const std::string& node) const {
    auto n = find_node(node);
    if (!n) throw std::out_of_range("no node named '" + node + "'");
    return node_voltages(static_cast<Eigen::Index>(*n));
  }

  /// Net current leaving `node` through resistive branches.
  Scalar outflow(std::size_t node) const {
    Scalar sum = 0;
    for (const auto& b : branches) {
      if (b.from == node) sum += b.current;
      if (b.to == node) sum -= b.current;
    }
    return sum;
  }

  /// Largest KCL imbalance over free nodes, relative to the largest
  /// current incident on that node.
  Scalar kcl_residual() const {
    Scalar worst = 0;
    for (std::size_t n = 0; n < node_names.size(); ++n) {
      if (std::find(fixed_nodes.begin(), fixed_nodes.end(), n) != fixed_nodes.end()) continue;
      Scalar sum = 0;
      Scalar scale = 0;
      for (const auto& b : branches) {
        if (b.from == n) sum += b.current;
        if (b.to == n) sum -= b.current;
        if (b.from == n || b.to == n) scale = std::max(scale, Scalar(std::abs(b.current)));
      }
      if (scale > Scalar(0)) worst = std::max(worst, Scalar(std::abs(sum) / scale));
    }
    return worst;
  }
};

namespace detail {

struct DisjointSet {
  std::vector<std::size_t> parent;
  explicit DisjointSet(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Nodal analysis of a linear resistive network.
///
/// Throws std::invalid_argument when there is no source and SingularNetwork
/// when some node has no conductive path to a fixed node.
template <typename Scalar>
NetworkSolution<Scalar> solve_general(const Netlist<Scalar>& net) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (net.sources().empty()) throw std::invalid_argument("network has no voltage source");

  const std::size_t n = net.num_nodes();
  std::vector<std::optional<Scalar>> pinned(n);
  pinned[Netlist<Scalar>::ground] = Scalar(0);
  for (const auto& s : net.sources()) pinned[s.node] = s.volts;

  // Everything fixed shares one virtual reference for the connectivity test.
  detail::DisjointSet groups(n);
  for (std::size_t i = 1; i < n; ++i)
    if (pinned[i]) groups.unite(i, 0);
  for (const auto& r : net.resistors())
    if (std::isfinite(static_cast<double>(r.resistance))) groups.unite(r.a, r.b);

  std::vector<Eigen::Index> free_index(n, -1);
  Eigen::Index n_free = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pinned[i]) continue;
    if (groups.find(i) != groups.find(0))
      throw SingularNetwork("node '" + net.node_names()[i] + "' is floating");
    free_index[i] = n_free++;
  }

  Vector v(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = pinned[i].value_or(0);

  if (n_free > 0) {
    Matrix g = Matrix::Zero(n_free, n_free);
    Vector rhs = Vector::Zero(n_free);
    for (const auto& r : net.resistors()) {
      if (!std::isfinite(static_cast<double>(r.resistance))) continue;
      const Scalar cond = Scalar(1) / r.resistance;
      const Eigen::Index ia = free_index[r.a];
      const Eigen::Index ib = free_index[r.b];
      if (ia >= 0) g(ia, ia) += cond;
      if (ib >= 0) g(ib, ib) += cond;
      if (ia >= 0 && ib >= 0) {
        g(ia, ib) -= cond;
        g(ib, ia) -= cond;
      }
      if (ia >= 0 && ib < 0) rhs(ia) += cond * *pinned[r.b];
      if (ib >= 0 && ia < 0) rhs(ib) += cond * *pinned[r.a];
    }
    Eigen::LDLT<Matrix> ldlt(g);
    if (ldlt.info() != Eigen::Success) throw SingularNetwork("conductance matrix is singular");
    const Vector x = ldlt.solve(rhs);
    for (std::size_t i = 0; i < n; ++i)
      if (free_index[i] >= 0) v(static_cast<Eigen::Index>(i)) = x(free_index[i]);
  }

  NetworkSolution<Scalar> sol;
  sol.node_names = net.node_names();
  sol.node_voltages = v;
  for (std::size_t i = 0; i < n; ++i)
    if (pinned[i]) sol.fixed_nodes.push_back(i);
  sol.branches.reserve(net.resistors().size());
  for (const auto& r : net.resistors()) {
    const Scalar i = std::isfinite(static_cast<double>(r.resistance))
                         ? (v(static_cast<Eigen::Index>(r.a)) - v(static_cast<Eigen::Index>(r.b))) /
                               r.resistance
                         : Scalar(0);
    sol.branches.push_back({r.label, r.a, r.b, r.resistance, i});
  }
  return sol;
}

}  // namespace sotlogic

#endif  // SOTLOGIC_NETWORK_HPP
