// Copyright 2026 The hcembed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>
#include <unistd.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "hcembed/bigraph.hpp"
#include "hcembed/cli.hpp"
#include "hcembed/embedding.hpp"

using namespace hcembed;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hcembed");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Scratch {
 public:
  Scratch() : dir_(fs::temp_directory_path() / ("hcembed_cli_" + std::to_string(::getpid()) + "_" + std::to_string(next()))) {
    fs::create_directories(dir_);
  }
  ~Scratch() { fs::remove_all(dir_); }
  std::string operator()(const char* name) const { return (dir_ / name).string(); }

 private:
  static int next() {
    static int n = 0;
    return ++n;
  }
  fs::path dir_;
};

}  // namespace

TEST_CASE("cli embed-auto then verify") {
  Scratch tmp;
  write_graph(BipartiteGraph::complete(16, 16), tmp("k.graph"));
  const auto a = run({"embed-auto", "--graph", tmp("k.graph"), "--n", "3", "--out", tmp("k.emb"), "--seed", "4"});
  CHECK(a.code == kExitOk);
  CHECK(a.out.find("success") != std::string::npos);
  REQUIRE(fs::exists(tmp("k.emb")));
  const auto v = run({"verify", "--graph", tmp("k.graph"), "--embedding", tmp("k.emb")});
  CHECK(v.code == kExitOk);

  write_graph(BipartiteGraph(16, 16), tmp("empty.graph"));
  const auto bad = run({"verify", "--graph", tmp("empty.graph"), "--embedding", tmp("k.emb")});
  CHECK(bad.code != kExitOk);
}

TEST_CASE("cli usage and io errors") {
  const auto u = run({"gen", "--bogus", "1"});
  CHECK(u.code == kExitPrecondition);
  CHECK(u.err.find("--upper") != std::string::npos);
  CHECK(run({}).code == kExitPrecondition);
  const auto missing = run({"verify", "--graph", "/nonexistent/x.graph", "--embedding", "/nonexistent/x.emb"});
  CHECK(missing.code == kExitIo);
}

TEST_CASE("cli reports are reproducible") {
  Scratch tmp;
  const auto g1 = run({"gen", "--upper", "64", "--lower", "64", "--density", "0.7", "--out", tmp("a.graph"), "--seed", "9"});
  const auto first = read_graph(tmp("a.graph"));
  const auto g2 = run({"gen", "--upper", "64", "--lower", "64", "--density", "0.7", "--out", tmp("a.graph"), "--seed", "9"});
  CHECK(g1.code == kExitOk);
  CHECK(g1.out == g2.out);
  CHECK(read_graph(tmp("a.graph")) == first);
  const std::vector<std::string> cmd = {"embed-drc", "--graph", tmp("a.graph"), "--n", "3", "--trials", "4", "--seed", "2"};
  const auto e1 = run(cmd), e2 = run(cmd);
  CHECK(e1.out == e2.out);
  CHECK(!e1.out.empty());
  const std::vector<std::string> ch = {"chernoff", "--p", "0.5", "--n", "20", "--samples", "2000", "--seed", "3"};
  CHECK(run(ch).out == run(ch).out);
}

TEST_CASE("cli generators write sidecars") {
  Scratch tmp;
  const auto b = run({"gen-gamma", "--k", "8", "--g", "4", "--uppers", "64", "--out", tmp("g.graph"), "--seed", "1"});
  CHECK(b.code == kExitOk);
  CHECK(fs::exists(tmp("g.graph.blocks")));
  const auto d = run({"defeat", "--graph", tmp("g.graph"), "--blocks", tmp("g.graph.blocks"), "--n", "3", "--trials", "2",
                      "--u", "1", "--w", "1"});
  CHECK(d.code == kExitOk);
  CHECK(run({"gen-gamma", "--k", "3", "--g", "4", "--uppers", "64", "--out", tmp("h.graph")}).code == kExitPrecondition);
}
