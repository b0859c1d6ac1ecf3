// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include "aqkd/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "aqkd/bench.hpp"
#include "aqkd/files.hpp"

namespace aqkd::cli {

namespace {

using netsim::ConfigError;

std::unique_ptr<Rng> make_rng(const std::optional<std::uint64_t>& seed) {
  if (seed) return std::make_unique<SeededRng>(*seed);
  return std::make_unique<SystemRng>();
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int exit_for(const std::optional<RejectCode>& outcome) {
  if (!outcome) return kExitAccept;
  return *outcome == RejectCode::DecodeError ? kExitDecode : kExitReject;
}

void print_verdict(std::ostream& out, const ReceiverVerdict& v) {
  out << v.describe() << "\n";
  for (std::size_t i = 1; i < v.failures.size(); ++i) out << "  also: " << v.failures[i] << "\n";
}

struct KeygenArgs {
  std::string role;
  std::string out;
  std::string id;
  std::optional<std::uint64_t> seed;
};

int cmd_keygen(const KeygenArgs& a, std::ostream& out) {
  auto rng = make_rng(a.seed);
  if (a.role == "issuer") {
    const auto pp = PublicParams::derive(1);
    const auto keys = IssuerKeyPair::generate(pp, *rng);
    files::write_text(a.out + ".key", files::issuer_key_text(keys));
    files::write_text(a.out + ".pub", files::issuer_pub_text(keys.pk));
    out << "issuer pk " << to_hex(keys.pk.to_bytes()) << "\n";
  } else if (a.role == "node") {
    if (a.id.empty()) throw ConfigError("keygen node needs --id");
    files::NodeKeyFile key{a.id, NodeKeyPair::generate(*rng)};
    files::write_text(a.out, files::node_key_text(key));
    out << "node " << a.id << " pk " << to_hex(key.keys.pk.to_bytes()) << "\n";
  } else {
    throw ConfigError("keygen role must be 'issuer' or 'node'");
  }
  return kExitAccept;
}

struct RegisterArgs {
  std::string issuer_key;
  std::string node_key;
  std::string proof_key;
  std::string attrs;
  std::string store;
  std::optional<std::uint64_t> seed;
};

int cmd_register(const RegisterArgs& a, std::ostream& out, std::ostream& err) {
  auto rng = make_rng(a.seed);
  const auto labels = split_csv(a.attrs);
  if (labels.empty()) throw ConfigError("--attrs lists no attributes");
  const auto pp = PublicParams::derive(labels.size());
  const auto issuer_keys = files::parse_issuer_key(files::read_text(a.issuer_key), pp);
  const auto node = files::parse_node_key(files::read_text(a.node_key));
  const auto prover = a.proof_key.empty() ? node : files::parse_node_key(files::read_text(a.proof_key));
  const auto attrs = AttributeVector::from_labels(labels);

  files::CredentialStore store;
  store.attr_count = labels.size();
  if (std::filesystem::exists(a.store)) {
    store = files::CredentialStore::decode(files::read_file(a.store));
    if (store.attr_count != labels.size()) throw ConfigError("store holds a different attribute count");
  }

  Issuer issuer(pp, issuer_keys);
  const auto did = issuer.begin_registration(*rng);
  const auto proof = prove_registration(pp, prover.keys.sk, node.keys.pk, did, *rng);
  GrothSignature cred;
  try {
    cred = issuer.certify(node.keys.pk, attrs, did, proof, *rng);
  } catch (const ProtocolError& e) {
    err << "registration refused: " << e.what() << "\n";
    return kExitReject;
  }
  const bool ok = groth::verify(pp, issuer_keys.pk, cred, pedersen_message(node.keys.pk, attrs, pp));
  store.entries.push_back({node.id, node.keys.pk, attrs, cred});
  files::write_file(a.store, store.encode());
  out << "registered " << node.id << (ok ? " (credential verifies)" : " (credential INVALID)") << "\n";
  return ok ? kExitAccept : kExitReject;
}

struct RunArgs {
  std::string graph;
  std::string routes;
  std::size_t paths = 0;
  std::string policy;
  std::string fault = "none";
  std::uint64_t seed = 1;
  std::string out;
  std::string issuer_out;
};

int cmd_run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const auto graph_text = files::read_text(a.graph);
  const auto policy = files::parse_policy(files::read_text(a.policy));
  const auto fault = netsim::FaultPlan::parse(a.fault);
  if (a.routes.empty() == (a.paths == 0)) throw ConfigError("give exactly one of --routes or --paths");

  SeededRng rng(a.seed);
  auto pp = PublicParams::derive(policy.attr_count());
  auto issuer = std::make_shared<Issuer>(pp, IssuerKeyPair::generate(pp, rng));
  auto g = netsim::NetworkGraph::build(netsim::GraphSpec::parse(graph_text), issuer, rng);

  netsim::RouteSpec routes;
  if (!a.routes.empty()) {
    routes = files::parse_routes(files::read_text(a.routes));
    if (auto bad = netsim::check_session_routes(g, routes)) throw ConfigError("routes: " + *bad);
  } else {
    try {
      routes = netsim::find_session_routes(g, a.paths);
    } catch (const netsim::NoSuchRoutes& e) {
      throw ConfigError(e.what());
    }
  }

  netsim::SessionReport report;
  try {
    report = netsim::run_session(g, routes, policy, fault, rng);
  } catch (const netsim::FaultNotApplicable& e) {
    throw ConfigError(std::string("fault not applicable: ") + e.what());
  }

  if (report.node_failure) {
    out << "reject " << to_string(*report.node_failure) << " at " << report.node_failure_detail << "\n";
  } else {
    print_verdict(out, *report.verdict);
    out << "payload_bytes=" << report.payload_bytes << "\n";
    out << "receiver " << report.receiver_counts.to_string() << "\n";
  }
  if (!a.out.empty() && !report.node_failure) {
    files::write_file(a.out, files::encode_transcript(report.transcript));
    const auto pub = a.issuer_out.empty() ? a.out + ".pub" : a.issuer_out;
    files::write_text(pub, files::issuer_pub_text(issuer->keys().pk));
  }
  (void)err;
  return exit_for(report.outcome());
}

struct AuditArgs {
  std::string transcript;
  std::string issuer_pub;
  std::string policy;
};

int cmd_audit(const AuditArgs& a, std::ostream& out, std::ostream& err) {
  const auto policy = files::parse_policy(files::read_text(a.policy));
  const auto issuer_pk = files::parse_issuer_pub(files::read_text(a.issuer_pub));
  const auto bytes = files::read_file(a.transcript);
  netsim::SessionTranscript t;
  try {
    t = files::decode_transcript(bytes);
  } catch (const DecodeError& e) {
    err << "decode error: " << e.what() << "\n";
    out << "reject DecodeError offset=" << e.offset() << "\n";
    return kExitDecode;
  }
  const auto pp = PublicParams::derive(policy.attr_count());
  const auto verdict =
      netsim::audit_transcript(pp, t, PreparedIssuerKey::prepare(pp, issuer_pk), policy);
  print_verdict(out, verdict);
  return exit_for(verdict.accepted() ? std::nullopt : std::optional<RejectCode>(verdict.reason));
}

struct BenchArgs {
  std::string nodes = "10,20,30,40,50,60,70,80,90,100";
  std::string attrs = "10,20";
  std::string modes = "single,multi";
  std::size_t reps = 3;
  std::size_t paths = 3;
  std::uint64_t seed = 1;
  std::string out;
};

std::vector<std::size_t> parse_counts(const std::string& s, const char* what) {
  std::vector<std::size_t> out;
  for (const auto& item : split_csv(s)) {
    try {
      std::size_t used = 0;
      auto v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(std::string("bad ") + what + " value '" + item + "'");
    }
  }
  return out;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  bench::BenchConfig cfg;
  cfg.node_counts = parse_counts(a.nodes, "--nodes");
  cfg.attr_counts = parse_counts(a.attrs, "--attrs");
  cfg.modes.clear();
  for (const auto& m : split_csv(a.modes)) {
    if (m == "single") {
      cfg.modes.push_back(bench::Mode::SinglePath);
    } else if (m == "multi") {
      cfg.modes.push_back(bench::Mode::MultiPath);
    } else {
      throw ConfigError("unknown mode '" + m + "'");
    }
  }
  cfg.repetitions = a.reps;
  cfg.multi_paths = a.paths;
  cfg.seed = a.seed;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto rows = bench::run_bench(cfg, &err);

  std::ofstream file;
  std::ostream* csv = &out;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw files::IoError("cannot write " + a.out);
    csv = &file;
  }
  bench::write_csv_header(*csv);
  for (const auto& r : rows) bench::write_csv_row(*csv, r);

  for (auto mode : cfg.modes) {
    for (auto l : cfg.attr_counts) {
      std::vector<double> x, y;
      for (const auto& r : rows) {
        if (r.mode == mode && r.attr_count == l) {
          x.push_back(static_cast<double>(r.n));
          y.push_back(r.receiver_median_ms);
        }
      }
      if (x.size() < 2) continue;
      const auto fit = bench::fit_line(x, y);
      out << "# fit mode=" << bench::to_string(mode) << " l=" << l
          << " receiver_ms_per_hop=" << fit.slope << " intercept_ms=" << fit.intercept
          << " r2=" << fit.r_squared << "\n";
    }
  }
  return kExitAccept;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Auditable multi-path QKD path validation"};
  app.require_subcommand(1);

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "generate issuer or node keys");
  keygen->add_option("role", kg.role, "issuer | node")->required();
  keygen->add_option("--out", kg.out, "output file (issuer: path prefix)")->required();
  keygen->add_option("--id", kg.id, "node id");
  keygen->add_option("--seed", kg.seed, "deterministic seed");

  RegisterArgs rg;
  auto* reg = app.add_subcommand("register", "register a node with the issuer");
  reg->add_option("--issuer-key", rg.issuer_key)->required();
  reg->add_option("--node-key", rg.node_key)->required();
  reg->add_option("--proof-key", rg.proof_key, "prove with this key instead (testing)");
  reg->add_option("--attrs", rg.attrs, "comma-separated attribute labels")->required();
  reg->add_option("--store", rg.store, "credential store file")->required();
  reg->add_option("--seed", rg.seed);

  RunArgs ra;
  auto* run_cmd = app.add_subcommand("run", "simulate one transmission");
  run_cmd->add_option("--graph", ra.graph)->required();
  run_cmd->add_option("--routes", ra.routes);
  run_cmd->add_option("--paths", ra.paths, "pick k disjoint routes automatically");
  run_cmd->add_option("--policy", ra.policy)->required();
  run_cmd->add_option("--fault", ra.fault);
  run_cmd->add_option("--seed", ra.seed);
  run_cmd->add_option("--out", ra.out, "transcript output file");
  run_cmd->add_option("--issuer-out", ra.issuer_out, "issuer public key output file");

  AuditArgs aa;
  auto* audit = app.add_subcommand("audit", "re-verify a stored transcript");
  audit->add_option("--transcript", aa.transcript)->required();
  audit->add_option("--issuer-pub", aa.issuer_pub)->required();
  audit->add_option("--policy", aa.policy)->required();

  BenchArgs ba;
  auto* bench_cmd = app.add_subcommand("bench", "benchmark sweep, CSV output");
  bench_cmd->add_option("--nodes", ba.nodes);
  bench_cmd->add_option("--attrs", ba.attrs);
  bench_cmd->add_option("--modes", ba.modes);
  bench_cmd->add_option("--reps", ba.reps);
  bench_cmd->add_option("--paths", ba.paths);
  bench_cmd->add_option("--seed", ba.seed);
  bench_cmd->add_option("--out", ba.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitAccept : kExitConfig;
  }

  try {
    if (*keygen) return cmd_keygen(kg, out);
    if (*reg) return cmd_register(rg, out, err);
    if (*run_cmd) return cmd_run(ra, out, err);
    if (*audit) return cmd_audit(aa, out, err);
    if (*bench_cmd) return cmd_bench(ba, out, err);
  } catch (const files::IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const DecodeError& e) {
    err << "decode error: " << e.what() << "\n";
    return kExitDecode;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace aqkd::cli
