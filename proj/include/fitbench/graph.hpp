#pragma once

// Computation graph: typed nodes (parameters, observables, functions, PDFs)
// connected by dependency edges, with per-node value caching and dirty-flag
// propagation.
//
// Caching model: every node stores its last value. Writing a new value into
// a parameter or observable leaf eagerly marks all transitive clients dirty;
// writing the value it already holds marks nothing. evaluate_scalar()
// recomputes only dirty nodes, in topological order, so branches that depend
// only on parameters are computed once and then served from the cache while
// the dataset is scanned.
//
// Concurrency: a graph is a single-writer object. All mutation and scalar
// evaluation happen on one logical thread at a time; a quiescent graph may
// be handed to another thread. No internal locking.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fitbench/collections.hpp"
#include "fitbench/errors.hpp"
#include "fitbench/fast_math.hpp"
#include "fitbench/node_id.hpp"

namespace fitbench {

enum class NodeKind { Parameter, Observable, Function, Pdf };

const char* to_string(NodeKind kind);

// Instrumentation counters. All monotonically non-decreasing while a graph
// is in use; reset explicitly between measurements.
struct EvalCounters {
  std::uint64_t scalar_node_evaluations = 0;
  std::uint64_t batch_node_evaluations = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t dirty_propagations = 0;
};

class Graph {
 public:
  // Computes a node value from the values of its servers, in server order.
  using ScalarFn = std::function<double(std::span<const double>)>;

  // Computes a node's output column from per-server input columns of equal
  // length. Inputs for parameter-only servers are broadcast columns.
  using BatchFn = std::function<void(std::span<const std::span<const double>> inputs,
                                     std::span<double> out, MathProfile profile, int threads)>;

  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;
  Graph(Graph&&) = default;
  Graph& operator=(Graph&&) = default;

  // --- construction (append-only; nodes are never removed) ---

  NodeId add_parameter(std::string name, double value,
                       double lower = -std::numeric_limits<double>::infinity(),
                       double upper = std::numeric_limits<double>::infinity(),
                       bool constant = false);
  NodeId add_observable(std::string name);
  NodeId add_function(std::string name, std::span<const NodeId> servers, ScalarFn fn);
  NodeId add_pdf(std::string name, std::span<const NodeId> servers, ScalarFn fn);

  // Core primitive behind the typed adders. Leaf kinds must pass no servers
  // and need no fn. Since servers must already exist and ids are handed out
  // densely, appending can never close a cycle; CycleDetected is raised by
  // validate() should the invariant ever be broken by memory corruption.
  NodeId add_node(std::string name, NodeKind kind, std::span<const NodeId> servers,
                  ScalarFn fn = {});

  // Registers the batch kernel used when this node is evaluated column-wise.
  void set_batch_fn(NodeId id, BatchFn fn);

  // --- mutation ---

  // Writes a parameter value. Equal-value writes leave all caches intact.
  void set_parameter_value(NodeId id, double value);

  // Loads an observable value (the per-event bridge used by the data layer).
  // Equal-value writes leave all caches intact.
  void set_observable_value(NodeId id, double value);

  // --- evaluation ---

  // Value of `top`, recomputing only dirty nodes in topological order.
  // Requires every observable reachable from `top` to hold a loaded value.
  double evaluate_scalar(NodeId top);

  // DOT export of the subgraph reachable from `top`. Deterministic: the
  // same graph always yields byte-identical text. Edges point from each
  // node to the servers it consumes (client -> server).
  std::string export_dot(NodeId top) const;

  // --- inspection ---

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::string_view name(NodeId id) const;
  NodeKind kind(NodeId id) const;
  std::span<const NodeId> servers(NodeId id) const;
  std::span<const NodeId> clients(NodeId id) const;
  double cached_value(NodeId id) const;
  bool is_dirty(NodeId id) const;
  // True iff some transitive server of the node is an observable.
  bool is_observable_dependent(NodeId id) const;
  bool observable_loaded(NodeId id) const;
  bool has_batch_fn(NodeId id) const;

  double parameter_value(NodeId id) const;
  double parameter_lower(NodeId id) const;
  double parameter_upper(NodeId id) const;
  bool parameter_constant(NodeId id) const;
  void set_parameter_constant(NodeId id, bool constant);
  void set_parameter_bounds(NodeId id, double lower, double upper);

  std::optional<NodeId> find(std::string_view name) const { return names_.find(name); }

  // Topological order of the subgraph reachable from `top` (servers before
  // clients). Cached per top node; the cache is invalidated by add_node.
  std::span<const NodeId> topological_order(NodeId top) const;
  // Observables reachable from `top`, in id order.
  std::span<const NodeId> reachable_observables(NodeId top) const;

  EvalCounters& counters() noexcept { return counters_; }
  const EvalCounters& counters() const noexcept { return counters_; }
  void reset_counters() noexcept { counters_ = EvalCounters{}; }

  // Full consistency check (edge inversion, acyclicity, dirty closure).
  // Raises on violation. Intended for debug runs and tests.
  void validate() const;

 private:
  struct Node {
    std::string name;
    NodeKind kind = NodeKind::Function;
    std::vector<NodeId> servers;
    std::vector<NodeId> clients;
    ScalarFn scalar_fn;
    BatchFn batch_fn;
    double cached = 0.0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    bool dirty = false;
    bool observable_dependent = false;
    bool loaded = false;
    bool constant = false;
  };

  struct TopoInfo {
    std::vector<NodeId> order;
    std::vector<NodeId> observables;
  };

  const Node& node_at(NodeId id) const;
  Node& node_at(NodeId id);
  void mark_clients_dirty(NodeId id);
  const TopoInfo& topo_info(NodeId top) const;

  std::vector<Node> nodes_;
  NodeCollection names_;
  mutable std::unordered_map<std::uint32_t, TopoInfo> topo_cache_;
  EvalCounters counters_;
  // reused scratch to keep the per-event hot path allocation-free
  std::vector<double> value_scratch_;
  std::vector<NodeId> stack_scratch_;
};

}  // namespace fitbench
