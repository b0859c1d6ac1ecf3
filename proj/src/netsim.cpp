// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/netsim.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

namespace aqkd::netsim {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

// ---- graph description -------------------------------------------------------

GraphSpec GraphSpec::parse(std::string_view text) {
  GraphSpec spec;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto bad = [&](const std::string& why) {
      return ConfigError("graph line " + std::to_string(lineno) + ": " + why);
    };
    if (tok[0] == "node") {
      if (tok.size() != 4 || tok[2] != "attrs") throw bad("expected 'node <id> attrs <v1,...>'");
      spec.nodes.push_back({tok[1], split(tok[3], ',')});
    } else if (tok[0] == "edge") {
      if (tok.size() != 3) throw bad("expected 'edge <id> <id>'");
      spec.edges.emplace_back(tok[1], tok[2]);
    } else if (tok[0] == "entry" || tok[0] == "exit") {
      if (tok.size() != 2) throw bad("expected '" + tok[0] + " <id>'");
      (tok[0] == "entry" ? spec.entries : spec.exits).push_back(tok[1]);
    } else {
      throw bad("unknown directive '" + tok[0] + "'");
    }
  }
  return spec;
}

std::string GraphSpec::to_text() const {
  std::ostringstream out;
  for (const auto& n : nodes) {
    out << "node " << n.id << " attrs ";
    for (std::size_t i = 0; i < n.attr_labels.size(); ++i) {
      out << (i ? "," : "") << n.attr_labels[i];
    }
    out << "\n";
  }
  for (const auto& [a, b] : edges) out << "edge " << a << " " << b << "\n";
  for (const auto& e : entries) out << "entry " << e << "\n";
  for (const auto& e : exits) out << "exit " << e << "\n";
  return out.str();
}

// ---- network graph -----------------------------------------------------------

NetworkGraph NetworkGraph::build(const GraphSpec& spec, std::shared_ptr<Issuer> issuer, Rng& rng) {
  if (!issuer) throw ConfigError("no issuer");
  NetworkGraph g;
  g.issuer_ = std::move(issuer);
  const auto& pp = g.issuer_->params();
  g.prepared_ = PreparedIssuerKey::prepare(pp, g.issuer_->keys().pk);

  for (const auto& n : spec.nodes) {
    if (n.id.empty()) throw ConfigError("empty node id");
    if (g.records_.count(n.id)) throw ConfigError("duplicate node id " + n.id);
    if (n.attr_labels.size() != pp.attr_count) {
      throw ConfigError("node " + n.id + " has " + std::to_string(n.attr_labels.size()) +
                        " attributes, expected " + std::to_string(pp.attr_count));
    }
    NodeRecord rec;
    rec.id = n.id;
    rec.keys = NodeKeyPair::generate(rng);
    rec.attrs = AttributeVector::from_labels(n.attr_labels);
    rec.cred = register_node(*g.issuer_, rec.keys, rec.attrs, rng);
    g.records_.emplace(n.id, std::move(rec));
    g.adj_[n.id];
    g.guards_.emplace(n.id, ReplayGuard());
  }
  for (const auto& [a, b] : spec.edges) {
    if (!g.records_.count(a) || !g.records_.count(b)) {
      throw ConfigError("edge " + a + "-" + b + " references an unknown node");
    }
    if (a == b) throw ConfigError("self-loop at " + a);
    if (g.adj_[a].count(b)) throw ConfigError("duplicate edge " + a + "-" + b);
    g.adj_[a].insert(b);
    g.adj_[b].insert(a);
  }
  for (auto& [id, rec] : g.records_) {
    for (const auto& nb : g.adj_[id]) rec.directory[nb] = g.records_.at(nb).keys.pk;
  }
  auto attach = [&](const std::vector<std::string>& ids, std::set<std::string>& out) {
    for (const auto& id : ids) {
      if (!g.records_.count(id)) throw ConfigError("unknown entry/exit node " + id);
      out.insert(id);
    }
    if (ids.empty()) {
      for (const auto& [id, rec] : g.records_) out.insert(id);
    }
  };
  attach(spec.entries, g.entries_);
  attach(spec.exits, g.exits_);
  return g;
}

const NodeRecord& NetworkGraph::node(const std::string& id) const {
  auto it = records_.find(id);
  if (it == records_.end()) throw std::out_of_range("unknown node " + id);
  return it->second;
}

NodeRecord& NetworkGraph::mutable_node(const std::string& id) {
  auto it = records_.find(id);
  if (it == records_.end()) throw std::out_of_range("unknown node " + id);
  return it->second;
}

std::vector<std::string> NetworkGraph::node_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, rec] : records_) out.push_back(id);
  return out;
}

Directory NetworkGraph::receiver_directory() const {
  Directory d;
  for (const auto& id : exits_) d[id] = records_.at(id).keys.pk;
  return d;
}

ReplayGuard& NetworkGraph::guard(const std::string& id) {
  auto it = guards_.find(id);
  if (it == guards_.end()) throw std::out_of_range("unknown node " + id);
  return it->second;
}

std::map<std::string, ReplayGuard> NetworkGraph::snapshot_guards() const { return guards_; }

void NetworkGraph::restore_guards(const std::map<std::string, ReplayGuard>& saved) {
  guards_ = saved;
}

std::size_t RouteSpec::total_hops() const {
  std::size_t n = 0;
  for (const auto& p : paths) n += p.size();
  return n;
}

// ---- disjoint routes ---------------------------------------------------------

namespace {

// Edmonds-Karp on a split-vertex network.
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t n) : head_(n, -1) {}

  void add_arc(std::size_t u, std::size_t v, int cap) {
    arcs_.push_back({v, cap, 0, head_[u]});
    head_[u] = static_cast<int>(arcs_.size() - 1);
    arcs_.push_back({u, 0, 0, head_[v]});
    head_[v] = static_cast<int>(arcs_.size() - 1);
  }

  std::size_t max_flow(std::size_t s, std::size_t t, std::size_t limit) {
    std::size_t flow = 0;
    while (flow < limit) {
      std::vector<int> via(head_.size(), -1);
      std::vector<bool> seen(head_.size(), false);
      std::deque<std::size_t> queue{s};
      seen[s] = true;
      while (!queue.empty() && !seen[t]) {
        auto u = queue.front();
        queue.pop_front();
        for (int a = head_[u]; a != -1; a = arcs_[a].next) {
          auto& arc = arcs_[a];
          if (!seen[arc.to] && arc.cap - arc.flow > 0) {
            seen[arc.to] = true;
            via[arc.to] = a;
            queue.push_back(arc.to);
          }
        }
      }
      if (!seen[t]) break;
      for (auto v = t; v != s;) {
        auto a = via[v];
        arcs_[a].flow += 1;
        arcs_[a ^ 1].flow -= 1;
        v = arcs_[a ^ 1].to;
      }
      ++flow;
    }
    return flow;
  }

  // Follows one unit of positive flow out of u, consuming it.
  std::optional<std::size_t> take_flow_from(std::size_t u) {
    for (int a = head_[u]; a != -1; a = arcs_[a].next) {
      if ((a & 1) == 0 && arcs_[a].flow > 0) {
        arcs_[a].flow -= 1;
        return arcs_[a].to;
      }
    }
    return std::nullopt;
  }

 private:
  struct Arc {
    std::size_t to;
    int cap;
    int flow;
    int next;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

struct Indexed {
  std::vector<std::string> names;
  std::map<std::string, std::size_t> index;
};

Indexed index_nodes(const Adjacency& adj) {
  Indexed ix;
  for (const auto& [id, nbs] : adj) {
    ix.index[id] = ix.names.size();
    ix.names.push_back(id);
  }
  return ix;
}

constexpr std::size_t in_node(std::size_t v) { return 2 * v; }
constexpr std::size_t out_node(std::size_t v) { return 2 * v + 1; }

}  // namespace

RouteSpec find_disjoint_paths(const Adjacency& adj, const std::string& source,
                              const std::string& sink, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  if (!adj.count(source) || !adj.count(sink)) throw NoSuchRoutes("unknown source or sink");
  if (source == sink) throw NoSuchRoutes("source equals sink");
  const auto ix = index_nodes(adj);
  const auto n = ix.names.size();
  const auto s = ix.index.at(source);
  const auto t = ix.index.at(sink);
  FlowNetwork net(2 * n);
  for (std::size_t v = 0; v < n; ++v) {
    if (v != s && v != t) net.add_arc(in_node(v), out_node(v), 1);
  }
  for (const auto& [a, nbs] : adj) {
    const auto u = ix.index.at(a);
    if (u == t) continue;
    for (const auto& b : nbs) {
      const auto v = ix.index.at(b);
      if (v != s) net.add_arc(out_node(u), in_node(v), 1);
    }
  }
  if (net.max_flow(out_node(s), in_node(t), k) < k) {
    throw NoSuchRoutes("fewer than " + std::to_string(k) + " disjoint paths between " + source +
                       " and " + sink);
  }
  RouteSpec routes;
  for (std::size_t p = 0; p < k; ++p) {
    std::vector<std::string> path{source};
    for (auto cur = out_node(s);;) {
      auto nxt = net.take_flow_from(cur);
      if (!nxt) throw std::logic_error("flow decomposition ended early");
      if (*nxt % 2 == 0) path.push_back(ix.names[*nxt / 2]);
      if (*nxt == in_node(t)) break;
      cur = *nxt;
    }
    routes.paths.push_back(std::move(path));
  }
  return routes;
}

RouteSpec find_session_routes(const NetworkGraph& g, std::size_t k) {
  if (k == 0) throw std::invalid_argument("k must be at least 1");
  const auto& adj = g.adjacency();
  const auto ix = index_nodes(adj);
  const auto n = ix.names.size();
  const auto src = 2 * n;
  const auto dst = 2 * n + 1;
  FlowNetwork net(2 * n + 2);
  for (std::size_t v = 0; v < n; ++v) net.add_arc(in_node(v), out_node(v), 1);
  for (const auto& [a, nbs] : adj) {
    for (const auto& b : nbs) net.add_arc(out_node(ix.index.at(a)), in_node(ix.index.at(b)), 1);
  }
  for (const auto& e : g.entries()) net.add_arc(src, in_node(ix.index.at(e)), 1);
  for (const auto& e : g.exits()) net.add_arc(out_node(ix.index.at(e)), dst, 1);
  if (net.max_flow(src, dst, k) < k) {
    throw NoSuchRoutes("fewer than " + std::to_string(k) + " disjoint entry-to-exit paths");
  }
  RouteSpec routes;
  for (std::size_t p = 0; p < k; ++p) {
    std::vector<std::string> path;
    for (auto cur = src;;) {
      auto nxt = net.take_flow_from(cur);
      if (!nxt) throw std::logic_error("flow decomposition ended early");
      if (*nxt == dst) break;
      if (*nxt % 2 == 0) path.push_back(ix.names[*nxt / 2]);
      cur = *nxt;
    }
    routes.paths.push_back(std::move(path));
  }
  return routes;
}

namespace {

std::optional<std::string> check_walk(const Adjacency& adj, const std::vector<std::string>& path) {
  std::set<std::string> seen;
  for (std::size_t j = 0; j < path.size(); ++j) {
    if (!adj.count(path[j])) return "unknown node " + path[j];
    if (!seen.insert(path[j]).second) return "loop through " + path[j];
    if (j > 0 && !adj.at(path[j - 1]).count(path[j])) {
      return path[j - 1] + " and " + path[j] + " are not adjacent";
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> check_disjoint_paths(const Adjacency& adj, const std::string& source,
                                                const std::string& sink, const RouteSpec& routes) {
  std::set<std::string> interior;
  std::set<std::vector<std::string>> distinct;
  for (std::size_t i = 0; i < routes.paths.size(); ++i) {
    const auto& p = routes.paths[i];
    if (p.size() < 2 || p.front() != source || p.back() != sink) {
      return "path " + std::to_string(i) + " does not run from source to sink";
    }
    if (auto err = check_walk(adj, p)) return "path " + std::to_string(i) + ": " + *err;
    if (!distinct.insert(p).second) return "path " + std::to_string(i) + " repeated";
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      if (!interior.insert(p[j]).second) return "node " + p[j] + " shared between paths";
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_session_routes(const NetworkGraph& g, const RouteSpec& routes) {
  if (routes.paths.empty()) return std::string("no paths");
  std::set<std::string> used;
  for (std::size_t i = 0; i < routes.paths.size(); ++i) {
    const auto& p = routes.paths[i];
    const auto tag = "path " + std::to_string(i);
    if (p.empty()) return tag + " is empty";
    if (auto err = check_walk(g.adjacency(), p)) return tag + ": " + *err;
    if (!g.entries().count(p.front())) return tag + " does not start at an entry node";
    if (!g.exits().count(p.back())) return tag + " does not end at an exit node";
    for (const auto& id : p) {
      if (!used.insert(id).second) return "node " + id + " shared between paths";
    }
  }
  return std::nullopt;
}

GraphSpec random_graph_spec(std::size_t n, double edge_probability,
                            const std::vector<std::string>& attr_labels, std::size_t entries,
                            std::size_t exits, Rng& rng) {
  if (n == 0 || entries + exits > n) throw std::invalid_argument("bad random graph shape");
  GraphSpec spec;
  for (std::size_t i = 0; i < n; ++i) spec.nodes.push_back({"r" + std::to_string(i), attr_labels});
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace(rng.uniform(i), i);
  const auto threshold = static_cast<std::uint64_t>(edge_probability * 1'000'000.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.uniform(1'000'000) < threshold) edges.emplace(i, j);
    }
  }
  for (const auto& [a, b] : edges) spec.edges.emplace_back(spec.nodes[a].id, spec.nodes[b].id);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.uniform(i + 1)]);
  for (std::size_t i = 0; i < entries; ++i) spec.entries.push_back(spec.nodes[order[i]].id);
  for (std::size_t i = 0; i < exits; ++i) spec.exits.push_back(spec.nodes[order[entries + i]].id);
  return spec;
}

}  // namespace aqkd::netsim
