// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

// In-process network simulator: topology, neighbor directories, disjoint
// route selection, session orchestration, fault injection and the two
// security-experiment harnesses.

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aqkd/protocol.hpp"

namespace aqkd::netsim {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoSuchRoutes : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- topology ----------------------------------------------------------------

// Line-oriented graph description:
//   node <id> attrs <v1,...,vl>
//   edge <id> <id>
//   entry <id>        node attached to the sender
//   exit <id>         node attached to the receiver
// '#' starts a comment. Without entry/exit lines every node is both.
struct GraphSpec {
  struct Node {
    std::string id;
    std::vector<std::string> attr_labels;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> entries;
  std::vector<std::string> exits;

  static GraphSpec parse(std::string_view text);
  std::string to_text() const;
};

using Adjacency = std::map<std::string, std::set<std::string>>;

class NetworkGraph {
 public:
  // Registers every node with the issuer and fills neighbor directories.
  // Throws ConfigError on duplicate ids, self-loops, unknown endpoints or
  // attribute vectors of the wrong length; registration errors propagate.
  static NetworkGraph build(const GraphSpec& spec, std::shared_ptr<Issuer> issuer, Rng& rng);

  const PublicParams& params() const { return issuer_->params(); }
  const G2& issuer_pk() const { return issuer_->keys().pk; }
  const PreparedIssuerKey& prepared_issuer() const { return prepared_; }
  Issuer& issuer() const { return *issuer_; }

  const Adjacency& adjacency() const { return adj_; }
  bool has_node(const std::string& id) const { return records_.count(id) != 0; }
  const NodeRecord& node(const std::string& id) const;
  NodeRecord& mutable_node(const std::string& id);
  std::vector<std::string> node_ids() const;
  const std::set<std::string>& entries() const { return entries_; }
  const std::set<std::string>& exits() const { return exits_; }
  // Exit-node public keys as known to the receiver.
  Directory receiver_directory() const;

  ReplayGuard& guard(const std::string& id);
  std::map<std::string, ReplayGuard> snapshot_guards() const;
  void restore_guards(const std::map<std::string, ReplayGuard>& saved);

 private:
  std::shared_ptr<Issuer> issuer_;
  PreparedIssuerKey prepared_;
  Adjacency adj_;
  std::map<std::string, NodeRecord> records_;
  std::map<std::string, ReplayGuard> guards_;
  std::set<std::string> entries_;
  std::set<std::string> exits_;
};

struct RouteSpec {
  std::vector<std::vector<std::string>> paths;
  std::size_t total_hops() const;
  bool operator==(const RouteSpec&) const = default;
};

// k source-to-sink paths sharing no vertex other than the endpoints, via
// unit-vertex-capacity max flow. Paths include source and sink.
// Throws NoSuchRoutes when fewer than k exist.
RouteSpec find_disjoint_paths(const Adjacency& adj, const std::string& source,
                              const std::string& sink, std::size_t k);
// k fully vertex-disjoint repeater paths, each from an entry to an exit.
RouteSpec find_session_routes(const NetworkGraph& g, std::size_t k);

// Independent checks; return a description of the first problem found.
std::optional<std::string> check_disjoint_paths(const Adjacency& adj, const std::string& source,
                                                const std::string& sink, const RouteSpec& routes);
std::optional<std::string> check_session_routes(const NetworkGraph& g, const RouteSpec& routes);

// Connected random graph on n nodes with the given attribute labels on every
// node; `entries`/`exits` nodes are drawn without overlap.
GraphSpec random_graph_spec(std::size_t n, double edge_probability,
                            const std::vector<std::string>& attr_labels, std::size_t entries,
                            std::size_t exits, Rng& rng);

// ---- sessions ----------------------------------------------------------------

enum class FaultKind {
  None,
  ShareNodeAcrossPaths,
  SkipAppendAndRelay,
  UncertifiedNodeInject,
  PolicyViolatingAttrs,
  ReplaySid,
  TamperHop,
};

enum class HopField { Nym, RHat, S, T, Challenge, ZSk, ZAlpha, ZBeta, ZHidden };

std::string_view to_string(FaultKind kind);
std::string_view to_string(HopField field);
inline constexpr HopField kAllHopFields[] = {HopField::Nym,       HopField::RHat, HopField::S,
                                             HopField::T,         HopField::Challenge,
                                             HopField::ZSk,       HopField::ZAlpha,
                                             HopField::ZBeta,     HopField::ZHidden};

struct FaultPlan {
  FaultKind kind = FaultKind::None;
  std::size_t path = 0;  // target path (clamped to the route set)
  std::size_t hop = 0;   // target hop (clamped to the path)
  HopField field = HopField::Nym;

  // Accepts "none", "share-node", "skip-append", "uncertified", "policy-violation",
  // "replay-sid", "tamper[:field]". Throws ConfigError.
  static FaultPlan parse(std::string_view name);
};

class FaultNotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SessionOptions {
  std::uint64_t now = 1'700'000'000;
  std::optional<SessionId> sid;  // adversary-chosen sid; fresh otherwise
};

// Receiver-facing data only: final wire messages and the exit keys.
struct SessionTranscript {
  std::vector<Bytes> finals;
  std::vector<G1> exit_pks;
};

struct SessionReport {
  std::optional<ReceiverVerdict> verdict;  // absent when the receiver never ran
  std::optional<RejectCode> node_failure;
  std::string node_failure_detail;
  RouteSpec routes;  // routes actually travelled, after any fault rewrite
  std::set<std::string> noncompliant_nodes;  // slots taken over by the adversary
  SessionTranscript transcript;
  OpCounters receiver_counts;
  OpCounters node_counts;
  std::vector<OpCounters> hop_counts;
  std::vector<double> hop_ms;
  double receiver_ms = 0;
  std::size_t payload_bytes = 0;

  bool accepted() const { return !node_failure && verdict && verdict->accepted(); }
  // nullopt on acceptance, otherwise the decisive reject code.
  std::optional<RejectCode> outcome() const;
};

// Throws FaultNotApplicable when the plan does not fit the routes, and
// std::invalid_argument when the routes are invalid in g.
SessionReport run_session(NetworkGraph& g, const RouteSpec& routes, const Policy& policy,
                          const FaultPlan& fault, Rng& rng, const SessionOptions& options = {});

// Receiver side of a stored transcript.
ReceiverVerdict audit_transcript(const PublicParams& pp, const SessionTranscript& transcript,
                                 const PreparedIssuerKey& issuer, const Policy& policy);

// ---- experiments -------------------------------------------------------------

// Returns 1 iff the receiver accepts while some node violated the policy or
// held no valid credential, paths overlapped, or n' differs from the number
// of paths. Faults that cannot be mounted on the routes count as 0.
int run_policy_compliance_experiment(NetworkGraph& g, const FaultPlan& adversary,
                                     const RouteSpec& routes, const Policy& policy, Rng& rng);

class InvalidChallenge : public std::runtime_error {
 public:
  enum class Reason {
    ActivatedBefore,
    RepeatedSid,
    Loop,
    NotDisjoint,
    MismatchedShape,
    PolicyUnsatisfied,
    NotARoute,
  };
  InvalidChallenge(Reason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

struct WireField {
  std::string name;
  std::string kind;  // "G1", "G2", "Zp", "bytes", "u8", "u16", "u64"
  std::size_t offset = 0;
  std::size_t size = 0;
  bool operator==(const WireField&) const = default;
};

// Field-by-field layout of a serialized hop message.
std::vector<WireField> describe_wire(ByteView wire);

struct StructureReport {
  std::vector<std::vector<WireField>> left;
  std::vector<std::vector<WireField>> right;
  bool shapes_match = false;
  std::vector<std::string> topology_fields;   // field names that reveal topology
  std::vector<std::string> leaked_identifiers;  // node ids / keys found in bytes
  bool nyms_fresh = false;  // no transcript nym equals a node key or earlier nym
  bool both_accepted = false;

  bool clean() const {
    return shapes_match && topology_fields.empty() && leaked_identifiers.empty() && nyms_fresh &&
           both_accepted;
  }
};

// Path-hiding game harness exposing receiver views only. oracle() is O and
// challenge() is O_LR; both enforce the abort rules and throw InvalidChallenge.
class PathHidingExperiment {
 public:
  PathHidingExperiment(NetworkGraph& g, Policy policy, std::uint64_t now = 1'700'000'000);

  SessionReport oracle(const SessionId& sid, const RouteSpec& routes, Rng& rng);
  // Runs both branches from the same starting state and compares them.
  StructureReport challenge(const SessionId& sid, const RouteSpec& left, const RouteSpec& right,
                            Rng& rng);

 private:
  void validate_routes(const RouteSpec& r) const;

  NetworkGraph& g_;
  Policy policy_;
  std::uint64_t now_;
  std::set<std::array<std::uint8_t, kSessionIdBytes>> used_sids_;
  std::vector<G1> seen_nyms_;
  bool activated_ = false;
};

}  // namespace aqkd::netsim
