// Copyright 2026 The AQKD Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "aqkd/cli.hpp"
#include "aqkd/files.hpp"

namespace aqkd::cli {
namespace {

namespace fs = std::filesystem;

struct CliTest : ::testing::Test {
  fs::path dir;
  std::ostringstream out, err;

  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("aqkd_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    // K5 with two entries and two exits
    std::string g;
    for (const char* id : {"A", "B", "C", "D", "E"}) g += std::string("node ") + id + " attrs x,y,z\n";
    const char* ids = "ABCDE";
    for (int i = 0; i < 5; ++i) {
      for (int j = i + 1; j < 5; ++j) g += std::string("edge ") + ids[i] + " " + ids[j] + "\n";
    }
    g += "entry A\nentry B\nexit D\nexit E\n";
    files::write_text(path("k5.txt"), g);
    files::write_text(path("policy.txt"), "id demo\nattrs 3\nrequire 0 x\n");
    files::write_text(path("routes.txt"), "A C D\nB E\n");
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  int cli(std::vector<std::string> args) {
    out.str("");
    err.str("");
    return run(args, out, err);
  }
};

TEST_F(CliTest, HonestRunAcceptsAndAuditAgrees) {
  ASSERT_EQ(cli({"run", "--graph", path("k5.txt"), "--paths", "2", "--policy", path("policy.txt"),
                 "--seed", "3", "--out", path("t.bin")}),
            kExitAccept)
      << err.str();
  EXPECT_NE(out.str().find("n'=2"), std::string::npos);
  EXPECT_EQ(cli({"audit", "--transcript", path("t.bin"), "--issuer-pub", path("t.bin.pub"), "--policy",
                 path("policy.txt")}),
            kExitAccept);
  EXPECT_EQ(out.str(), "n'=2\n");
  EXPECT_EQ(cli({"run", "--graph", path("k5.txt"), "--routes", path("routes.txt"), "--policy",
                 path("policy.txt")}),
            kExitAccept);
}

TEST_F(CliTest, AuditRejectsAndDecodeErrors) {
  ASSERT_EQ(cli({"run", "--graph", path("k5.txt"), "--paths", "2", "--policy", path("policy.txt"),
                 "--out", path("t.bin"), "--issuer-out", path("iss.pub")}),
            kExitAccept);
  files::write_text(path("other.txt"), "id demo\nattrs 3\nrequire 0 y\n");
  EXPECT_EQ(cli({"audit", "--transcript", path("t.bin"), "--issuer-pub", path("iss.pub"), "--policy",
                 path("other.txt")}),
            kExitReject);
  EXPECT_NE(out.str().find("PolicyMismatch"), std::string::npos);
  auto bytes = files::read_file(path("t.bin"));
  bytes.resize(bytes.size() - 10);
  files::write_file(path("cut.bin"), bytes);
  EXPECT_EQ(cli({"audit", "--transcript", path("cut.bin"), "--issuer-pub", path("iss.pub"), "--policy",
                 path("policy.txt")}),
            kExitDecode);
  // a flipped response scalar decodes fine but fails verification
  bytes = files::read_file(path("t.bin"));
  bytes[bytes.size() - 100] ^= 1;
  files::write_file(path("flip.bin"), bytes);
  const int code = cli({"audit", "--transcript", path("flip.bin"), "--issuer-pub", path("iss.pub"),
                        "--policy", path("policy.txt")});
  EXPECT_TRUE(code == kExitReject || code == kExitDecode);
}

TEST_F(CliTest, FaultFlagsMapToRejects) {
  for (const char* f : {"share-node", "skip-append", "uncertified", "policy-violation", "replay-sid",
                        "tamper:c"}) {
    EXPECT_EQ(cli({"run", "--graph", path("k5.txt"), "--paths", "2", "--policy", path("policy.txt"),
                   "--fault", f}),
              kExitReject)
        << f << ": " << out.str() << err.str();
  }
  EXPECT_EQ(cli({"run", "--graph", path("k5.txt"), "--paths", "2", "--policy", path("policy.txt"),
                 "--fault", "share-node"}),
            kExitReject);
  EXPECT_NE(out.str().find("DuplicatePseudonym"), std::string::npos);
}

TEST_F(CliTest, ConfigAndIoErrors) {
  EXPECT_EQ(cli({"run", "--graph", path("missing.txt"), "--paths", "1", "--policy", path("policy.txt")}),
            kExitIo);
  EXPECT_EQ(cli({"run", "--graph", path("k5.txt"), "--paths", "3", "--policy", path("policy.txt")}),
            kExitConfig);
  EXPECT_EQ(cli({"run", "--graph", path("k5.txt"), "--paths", "1", "--routes", path("routes.txt"),
                 "--policy", path("policy.txt")}),
            kExitConfig);
  EXPECT_EQ(cli({"run", "--graph", path("k5.txt"), "--paths", "1", "--policy", path("policy.txt"),
                 "--fault", "meteor"}),
            kExitConfig);
  files::write_text(path("bad_routes.txt"), "A D\nA E\n");
  EXPECT_EQ(cli({"run", "--graph", path("k5.txt"), "--routes", path("bad_routes.txt"), "--policy",
                 path("policy.txt")}),
            kExitConfig);
  EXPECT_EQ(cli({"frobnicate"}), kExitConfig);
  EXPECT_EQ(cli({}), kExitConfig);
  EXPECT_EQ(cli({"--help"}), kExitAccept);
  EXPECT_EQ(cli({"bench", "--reps", "1"}), kExitConfig);
}

TEST_F(CliTest, KeygenAndRegistration) {
  ASSERT_EQ(cli({"keygen", "issuer", "--out", path("iss"), "--seed", "1"}), kExitAccept);
  ASSERT_EQ(cli({"keygen", "node", "--id", "n1", "--out", path("n1.key"), "--seed", "2"}), kExitAccept);
  ASSERT_EQ(cli({"keygen", "node", "--id", "n2", "--out", path("n2.key"), "--seed", "3"}), kExitAccept);
  EXPECT_EQ(cli({"keygen", "node", "--out", path("x.key")}), kExitConfig);
  EXPECT_EQ(cli({"keygen", "auditor", "--out", path("x")}), kExitConfig);
  EXPECT_EQ(cli({"register", "--issuer-key", path("iss.key"), "--node-key", path("n1.key"), "--attrs",
                 "x,y,z", "--store", path("store.bin")}),
            kExitAccept);
  EXPECT_EQ(cli({"register", "--issuer-key", path("iss.key"), "--node-key", path("n2.key"), "--attrs",
                 "x,y,w", "--store", path("store.bin")}),
            kExitAccept);
  const auto store = files::CredentialStore::decode(files::read_file(path("store.bin")));
  EXPECT_EQ(store.entries.size(), 2u);
  EXPECT_EQ(cli({"register", "--issuer-key", path("iss.key"), "--node-key", path("n1.key"), "--proof-key",
                 path("n2.key"), "--attrs", "x,y,z", "--store", path("store.bin")}),
            kExitReject);
  EXPECT_NE(err.str().find("RegistrationProofInvalid"), std::string::npos);
  EXPECT_EQ(cli({"register", "--issuer-key", path("iss.key"), "--node-key", path("n1.key"), "--attrs",
                 "x,y", "--store", path("store.bin")}),
            kExitConfig);
}

TEST_F(CliTest, BenchWritesCsv) {
  ASSERT_EQ(cli({"bench", "--nodes", "3,6", "--attrs", "2", "--modes", "single", "--out", path("b.csv")}),
            kExitAccept)
      << err.str();
  const auto csv = files::read_text(path("b.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(out.str().find("# fit mode=single l=2"), std::string::npos);
}

}  // namespace
}  // namespace aqkd::cli
