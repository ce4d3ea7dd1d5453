#include "fitbench/graph.hpp"

#include <algorithm>
#include <sstream>

namespace fitbench {

const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Parameter: return "Parameter";
    case NodeKind::Observable: return "Observable";
    case NodeKind::Function: return "Function";
    case NodeKind::Pdf: return "Pdf";
  }
  return "Unknown";
}

const Graph::Node& Graph::node_at(NodeId id) const {
  if (id.index >= nodes_.size())
    raise(ErrorCode::UnknownNode, "node id " + std::to_string(id.index) + " out of range");
  return nodes_[id.index];
}

Graph::Node& Graph::node_at(NodeId id) {
  return const_cast<Node&>(static_cast<const Graph*>(this)->node_at(id));
}

NodeId Graph::add_node(std::string name, NodeKind kind, std::span<const NodeId> servers,
                       ScalarFn fn) {
  const bool leaf = kind == NodeKind::Parameter || kind == NodeKind::Observable;
  if (leaf && !servers.empty())
    raise(ErrorCode::UnknownServer, "leaf node '" + name + "' cannot have servers");
  if (!leaf && !fn)
    raise(ErrorCode::UsageError, "computed node '" + name + "' needs an evaluation function");
  for (NodeId s : servers) {
    if (s.index >= nodes_.size())
      raise(ErrorCode::UnknownServer,
            "server id " + std::to_string(s.index) + " of '" + name + "' does not exist");
  }

  const NodeId id{static_cast<std::uint32_t>(nodes_.size())};
  if (!names_.insert(id, name))
    raise(ErrorCode::DuplicateName, "node name '" + name + "' already exists");

  Node node;
  node.name = std::move(name);
  node.kind = kind;
  node.servers.assign(servers.begin(), servers.end());
  node.scalar_fn = std::move(fn);
  node.dirty = !leaf;  // leaves are value stores, never recomputed
  for (NodeId s : servers) {
    const Node& sv = nodes_[s.index];
    if (sv.kind == NodeKind::Observable || sv.observable_dependent)
      node.observable_dependent = true;
  }
  nodes_.push_back(std::move(node));
  for (NodeId s : servers) nodes_[s.index].clients.push_back(id);

  topo_cache_.clear();  // evaluation orders are recomputed lazily
  return id;
}

NodeId Graph::add_parameter(std::string name, double value, double lower, double upper,
                            bool constant) {
  if (!(lower <= value && value <= upper))
    raise(ErrorCode::OutOfBounds, "initial value " + std::to_string(value) + " of '" + name +
                                      "' outside [" + std::to_string(lower) + ", " +
                                      std::to_string(upper) + "]");
  const NodeId id = add_node(std::move(name), NodeKind::Parameter, {});
  Node& n = nodes_[id.index];
  n.cached = value;
  n.lower = lower;
  n.upper = upper;
  n.constant = constant;
  n.loaded = true;
  return id;
}

NodeId Graph::add_observable(std::string name) {
  return add_node(std::move(name), NodeKind::Observable, {});
}

NodeId Graph::add_function(std::string name, std::span<const NodeId> servers, ScalarFn fn) {
  return add_node(std::move(name), NodeKind::Function, servers, std::move(fn));
}

NodeId Graph::add_pdf(std::string name, std::span<const NodeId> servers, ScalarFn fn) {
  return add_node(std::move(name), NodeKind::Pdf, servers, std::move(fn));
}

void Graph::set_batch_fn(NodeId id, BatchFn fn) { node_at(id).batch_fn = std::move(fn); }

void Graph::mark_clients_dirty(NodeId id) {
  ++counters_.dirty_propagations;
  stack_scratch_.clear();
  for (NodeId c : nodes_[id.index].clients) stack_scratch_.push_back(c);
  while (!stack_scratch_.empty()) {
    const NodeId cur = stack_scratch_.back();
    stack_scratch_.pop_back();
    Node& n = nodes_[cur.index];
    if (n.dirty) continue;  // its clients are already dirty
    n.dirty = true;
    for (NodeId c : n.clients) stack_scratch_.push_back(c);
  }
}

void Graph::set_parameter_value(NodeId id, double value) {
  Node& n = node_at(id);
  if (n.kind != NodeKind::Parameter)
    raise(ErrorCode::NotAParameter, "'" + n.name + "' is not a parameter");
  if (!(n.lower <= value && value <= n.upper))
    raise(ErrorCode::OutOfBounds, "value " + std::to_string(value) + " for '" + n.name +
                                      "' outside [" + std::to_string(n.lower) + ", " +
                                      std::to_string(n.upper) + "]");
  if (value == n.cached) return;  // equal-value writes do not invalidate
  n.cached = value;
  mark_clients_dirty(id);
}

void Graph::set_observable_value(NodeId id, double value) {
  Node& n = node_at(id);
  if (n.kind != NodeKind::Observable)
    raise(ErrorCode::NotAnObservable, "'" + n.name + "' is not an observable");
  const bool first_load = !n.loaded;
  n.loaded = true;
  if (!first_load && value == n.cached) return;
  n.cached = value;
  mark_clients_dirty(id);
}

const Graph::TopoInfo& Graph::topo_info(NodeId top) const {
  node_at(top);
  auto it = topo_cache_.find(top.index);
  if (it != topo_cache_.end()) return it->second;

  // Iterative DFS over servers; post-order puts servers before clients.
  TopoInfo info;
  std::vector<unsigned char> state(nodes_.size(), 0);  // 0 new, 1 open, 2 done
  std::vector<std::pair<NodeId, std::size_t>> stack;
  stack.emplace_back(top, 0);
  state[top.index] = 1;
  while (!stack.empty()) {
    auto& [cur, next_server] = stack.back();
    const Node& n = nodes_[cur.index];
    if (next_server < n.servers.size()) {
      const NodeId s = n.servers[next_server++];
      if (state[s.index] == 1)
        raise(ErrorCode::CycleDetected, "cycle through '" + nodes_[s.index].name + "'");
      if (state[s.index] == 0) {
        state[s.index] = 1;
        stack.emplace_back(s, 0);
      }
    } else {
      state[cur.index] = 2;
      info.order.push_back(cur);
      stack.pop_back();
    }
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (state[i] == 2 && nodes_[i].kind == NodeKind::Observable)
      info.observables.push_back(NodeId{static_cast<std::uint32_t>(i)});

  return topo_cache_.emplace(top.index, std::move(info)).first->second;
}

std::span<const NodeId> Graph::topological_order(NodeId top) const {
  return topo_info(top).order;
}

std::span<const NodeId> Graph::reachable_observables(NodeId top) const {
  return topo_info(top).observables;
}

double Graph::evaluate_scalar(NodeId top) {
  const TopoInfo& info = topo_info(top);
  for (NodeId obs : info.observables) {
    if (!nodes_[obs.index].loaded)
      raise(ErrorCode::UnsetObservable,
            "observable '" + nodes_[obs.index].name + "' has no loaded value");
  }

  for (const NodeId id : info.order) {
    Node& n = nodes_[id.index];
    if (!n.dirty) {
      ++counters_.cache_hits;
      continue;
    }
    value_scratch_.clear();
    for (NodeId s : n.servers) value_scratch_.push_back(nodes_[s.index].cached);
    n.cached = n.scalar_fn(std::span<const double>(value_scratch_));
    n.dirty = false;
    ++counters_.scalar_node_evaluations;
  }
  return nodes_[top.index].cached;
}

std::string Graph::export_dot(NodeId top) const {
  const TopoInfo& info = topo_info(top);
  std::vector<NodeId> ordered(info.order.begin(), info.order.end());
  std::sort(ordered.begin(), ordered.end());

  std::ostringstream out;
  out << "// Dependency graph of '" << node_at(top).name << "'.\n";
  out << "// Edges point from each node to the servers it consumes (client -> server).\n";
  out << "digraph model {\n";
  out << "  node [fontname=\"Helvetica\"];\n";
  for (const NodeId id : ordered) {
    const Node& n = nodes_[id.index];
    const bool leaf = n.kind == NodeKind::Parameter || n.kind == NodeKind::Observable;
    out << "  n" << id.index << " [label=\"" << n.name << "\", shape="
        << (leaf ? "ellipse" : "box") << ", style=filled, fillcolor=\""
        << (leaf ? "#9ecae1" : "#fc9272") << "\"];\n";
  }
  for (const NodeId id : ordered) {
    const Node& n = nodes_[id.index];
    for (const NodeId s : n.servers) out << "  n" << id.index << " -> n" << s.index << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string_view Graph::name(NodeId id) const { return node_at(id).name; }
NodeKind Graph::kind(NodeId id) const { return node_at(id).kind; }
std::span<const NodeId> Graph::servers(NodeId id) const { return node_at(id).servers; }
std::span<const NodeId> Graph::clients(NodeId id) const { return node_at(id).clients; }
double Graph::cached_value(NodeId id) const { return node_at(id).cached; }
bool Graph::is_dirty(NodeId id) const { return node_at(id).dirty; }
bool Graph::is_observable_dependent(NodeId id) const { return node_at(id).observable_dependent; }
bool Graph::observable_loaded(NodeId id) const { return node_at(id).loaded; }
bool Graph::has_batch_fn(NodeId id) const { return static_cast<bool>(node_at(id).batch_fn); }

double Graph::parameter_value(NodeId id) const {
  const Node& n = node_at(id);
  if (n.kind != NodeKind::Parameter)
    raise(ErrorCode::NotAParameter, "'" + n.name + "' is not a parameter");
  return n.cached;
}

double Graph::parameter_lower(NodeId id) const { return node_at(id).lower; }
double Graph::parameter_upper(NodeId id) const { return node_at(id).upper; }
bool Graph::parameter_constant(NodeId id) const { return node_at(id).constant; }

void Graph::set_parameter_constant(NodeId id, bool constant) {
  Node& n = node_at(id);
  if (n.kind != NodeKind::Parameter)
    raise(ErrorCode::NotAParameter, "'" + n.name + "' is not a parameter");
  n.constant = constant;
}

void Graph::set_parameter_bounds(NodeId id, double lower, double upper) {
  Node& n = node_at(id);
  if (n.kind != NodeKind::Parameter)
    raise(ErrorCode::NotAParameter, "'" + n.name + "' is not a parameter");
  if (!(lower <= n.cached && n.cached <= upper))
    raise(ErrorCode::OutOfBounds, "current value of '" + n.name + "' outside new bounds");
  n.lower = lower;
  n.upper = upper;
}

void Graph::validate() const {
  // clients must be exactly the inverse multiset of servers
  std::vector<std::vector<NodeId>> expected_clients(nodes_.size());
  for (std::uint32_t i = 0; i < nodes_.size(); ++i)
    for (NodeId s : nodes_[i].servers) expected_clients[s.index].push_back(NodeId{i});
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
    auto got = nodes_[i].clients;
    auto want = expected_clients[i];
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    if (got != want)
      raise(ErrorCode::CycleDetected, "client/server relation inconsistent at node " +
                                          std::to_string(i));
  }
  // acyclicity: topo over every node as top
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
    topo_cache_.erase(i);
    topo_info(NodeId{i});
  }
  // dirty closure: a dirty node implies dirty clients
  for (const Node& n : nodes_) {
    if (!n.dirty) continue;
    for (NodeId c : n.clients)
      if (!nodes_[c.index].dirty)
        raise(ErrorCode::CycleDetected, "dirty closure violated at '" + n.name + "'");
  }
}

}  // namespace fitbench
