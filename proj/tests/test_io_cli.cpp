#include <filesystem>
#include <fstream>
#include <sstream>

#include "antitai/cli.hpp"
#include "antitai/error.hpp"
#include "antitai/io.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/helpers.hpp"
#include "support/instances.hpp"

using namespace antitai;
using namespace antitai::testing;
namespace fs = std::filesystem;

namespace {

std::string canonical(const RootedTree& t, NodeId x) {
  std::vector<std::string> kids;
  for (NodeId c : t.children(x)) kids.push_back(canonical(t, c));
  std::sort(kids.begin(), kids.end());
  std::string out = t.label(x) + "(";
  for (const auto& k : kids) out += k + ",";
  return out + ")";
}

struct Workspace {
  fs::path dir;
  Workspace() {
    dir = fs::temp_directory_path() / ("antitai_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Workspace() { fs::remove_all(dir); }
  std::string file(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "antitai");
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return Run{code, out.str(), err.str()};
}

std::string strip_runtime(std::string text) {
  auto doc = nlohmann::json::parse(text);
  doc.erase("runtime_ms");
  return doc.dump();
}

}  // namespace

TEST_CASE("newick examples") {
  const RootedTree a = parse_newick("A;");
  CHECK(a.size() == 1);
  CHECK(a.label(0) == "A");
  const RootedTree bc = parse_newick("(B,C)A;");
  CHECK(bc.size() == 3);
  CHECK(bc.label(bc.root()) == "A");
  CHECK(bc.children(bc.root()).size() == 2);
  const RootedTree t = parse_newick("((D)B,C)A;");
  REQUIRE(t.size() == 4);
  CHECK(t.parent(node(t, "B")) == node(t, "A"));
  CHECK(t.parent(node(t, "C")) == node(t, "A"));
  CHECK(t.parent(node(t, "D")) == node(t, "B"));
  CHECK_FALSE(t.parent(node(t, "A")));
  // Ids are preorder positions.
  CHECK(node(t, "A") == 0);
  CHECK(node(t, "B") == 1);
  CHECK(node(t, "D") == 2);
  CHECK(node(t, "C") == 3);
}

TEST_CASE("newick extras") {
  const RootedTree t = parse_newick(" ( b:1.5 , 'c d' [comment] :2 ) ;\n");
  REQUIRE(t.size() == 3);
  CHECK(t.label(0) == "_0");
  CHECK(t.label(1) == "b");
  CHECK(t.label(2) == "c d");
  const RootedTree dup = parse_newick("(x,x)x;");
  CHECK(dup.size() == 3);
  CHECK_THROWS_AS(find_unique_label(dup, "x"), InvalidArgument);
  CHECK_THROWS_AS(find_unique_label(dup, "y"), InvalidArgument);
  CHECK(write_newick(parse_newick("('it''s',b)r;")) == "('it''s',b)r;");
}

TEST_CASE("newick errors carry offsets") {
  auto offset = [](const std::string& text) -> std::size_t {
    try {
      parse_newick(text);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return std::string::npos;
  };
  CHECK(offset("") == 0);
  CHECK(offset("   ") == 3);
  CHECK(offset("(a,b") == 4);
  CHECK(offset("(a,b));") == 5);
  CHECK(offset("a;b") == 2);
  CHECK(offset("(a,b)c") == 6);
  CHECK(offset("a,b;") == 1);
  CHECK(offset("('a,b);") == 1);
  CHECK(offset("(a:,b);") == 3);
  CHECK(offset("(a)b;") == std::string::npos);
}

TEST_CASE("newick round trip on random trees") {
  Rng rng(71);
  for (int it = 0; it < 1000; ++it) {
    const RootedTree t = shuffle_ids(random_tree(1, 25, rng), rng).tree;
    const std::string text = write_newick(t);
    const RootedTree back = parse_newick(text);
    REQUIRE(back.size() == t.size());
    REQUIRE(canonical(back, back.root()) == canonical(t, t.root()));
    REQUIRE(write_newick(back) == text);
  }
}

TEST_CASE("deep trees parse without recursion") {
  std::string text;
  for (int i = 0; i < 100000; ++i) text += '(';
  text += "leaf";
  for (int i = 0; i < 100000; ++i) text += ')';
  text += ';';
  const RootedTree t = parse_newick(text);
  CHECK(t.size() == 100001);
  CHECK(t.is_chain());
  // Anonymous nodes come back with their generated names.
  const RootedTree back = parse_newick(write_newick(t));
  CHECK(back.size() == t.size());
  CHECK(back.is_chain());
  CHECK(back.label(back.root()) == "_0");
}

TEST_CASE("weights files") {
  const RootedTree t1 = tree("(b)a;");
  const RootedTree t2 = tree("(d,e)c;");
  std::istringstream empty("");
  const WeightMatrix zero = read_weights(empty, 2, 3);
  for (NodeId i = 0; i < 2; ++i) {
    for (NodeId j = 0; j < 3; ++j) CHECK(zero(i, j) == 0);
  }
  std::istringstream good("i j w\n# note\n\n0 2 1.5\n1 0 3  # trailing\n");
  const WeightMatrix w = read_weights(good, 2, 3);
  CHECK(w(0, 2) == 1.5);
  CHECK(w(1, 0) == 3);
  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream in(text);
    try {
      read_weights(in, 2, 3);
    } catch (const ParseError& e) {
      return e.offset();
    }
    return 0;
  };
  CHECK(line_of("i j w\n0 0 1\n1 1 -2\n") == 3);
  CHECK(line_of("0 5 1\n") == 1);
  CHECK(line_of("0 0\n") == 1);
  CHECK(line_of("0 0 x\n") == 1);
  CHECK(line_of("0 0 1\nz 0 1\n") == 2);

  std::istringstream frac("i j value\n0 0 0.25\n");
  CHECK(read_fractional(frac, 2, 3)(0, 0) == 0.25);
  std::istringstream over("0 0 1.5\n");
  CHECK_THROWS_AS(read_fractional(over, 2, 3), InvalidArgument);
}

TEST_CASE("label match weights") {
  const RootedTree a = tree("A;");
  const WeightMatrix same = label_match_weights(a, a);
  CHECK(same(0, 0) == 1);
  const RootedTree ab = tree("(B)A;");
  const WeightMatrix w = label_match_weights(a, ab);
  CHECK(w(0, node(ab, "A")) == 1);
  CHECK(w(0, node(ab, "B")) == 0);
}

TEST_CASE("dag and pair files") {
  std::istringstream dag("# chain plus an isolated vertex\n0 1\n1 2\n4\n");
  const Dag g = read_dag(dag);
  CHECK(g.size() == 5);
  CHECK(g.reaches(0, 2));
  CHECK_FALSE(g.reaches(3, 4));
  std::istringstream cyc("0 1\n1 0\n");
  CHECK_THROWS_AS(read_dag(cyc), InvalidArgument);
  std::istringstream none("# nothing\n");
  CHECK_THROWS_AS(read_dag(none), ParseError);
  std::istringstream wide("0 1 2\n");
  CHECK_THROWS_AS(read_dag(wide), ParseError);

  std::istringstream pairs("0 1\n2 0\n");
  const PairMapping m = read_pairs(pairs);
  CHECK(m.size() == 2);
  std::istringstream badp("0\n");
  CHECK_THROWS_AS(read_pairs(badp), ParseError);
}

TEST_CASE("cli subcommands") {
  Workspace ws;
  const std::string path = ws.file("path.nwk", "(v)u;");
  const std::string xy = ws.file("xy.nwk", "(y)x;");
  const std::string unit = ws.file("unit.tsv", "i j w\n0 0 1\n0 1 1\n1 0 1\n1 1 1\n");

  const Run pt = run({"path-tree", "--tree1", path, "--tree2", xy, "--weights", unit});
  CHECK(pt.code == kExitOk);
  CHECK(pt.out.find("value: 3\n") != std::string::npos);
  CHECK(pt.out.find("u <-> y (w=1)") != std::string::npos);
  const Run pt2 = run({"path-tree", "--tree1", xy, "--tree2", path, "--weights", unit,
                       "--path-in", "2"});
  CHECK(pt2.code == kExitOk);
  CHECK(pt2.out.find("value: 3\n") != std::string::npos);

  const std::string star = ws.file("star.nwk", "(p,q)r;");
  const std::string cd = ws.file("cd.nwk", "(d)c;");
  const Run si = run({"si", "--tree1", star, "--tree2", cd, "--label-match"});
  CHECK(si.code == kExitOk);
  CHECK(si.out.find("value: 0\n") != std::string::npos);
  const std::string su = ws.file("su.tsv", "0 0 1\n0 1 1\n1 0 1\n1 1 1\n2 0 1\n2 1 1\n");
  const Run si2 = run({"si", "--tree1", star, "--tree2", cd, "--weights", su, "--json"});
  CHECK(si2.code == kExitOk);
  const auto doc = nlohmann::json::parse(si2.out);
  for (const char* key : {"value", "pairs", "algorithm", "runtime_ms"}) CHECK(doc.contains(key));
  CHECK(doc["value"] == 2.0);
  CHECK(doc["pairs"].size() == 2);

  const Run lb = run({"lower-bound", "--tree1", star, "--tree2", cd, "--weights", su});
  CHECK(lb.code == kExitOk);
  const Run orc = run({"oracle", "--tree1", star, "--tree2", cd, "--weights", su, "--kind", "si"});
  CHECK(orc.code == kExitOk);
  CHECK(orc.out.find("value: 2\n") != std::string::npos);
  const Run tai = run({"oracle", "--tree1", star, "--tree2", cd, "--weights", su, "--kind", "tai"});
  CHECK(tai.code == kExitOk);

  const std::string c2 = ws.file("c2.dag", "0 1\n");
  const Run delta = run({"dag-delta", "--dag1", c2, "--dag2", c2});
  CHECK(delta.code == kExitOk);
  CHECK(delta.out.find("value: 3\n") != std::string::npos);
  const Run anti = run({"dag-antichain", "--dag1", c2, "--dag2", c2, "--json"});
  CHECK(anti.code == kExitOk);
  CHECK(nlohmann::json::parse(anti.out)["value"] == 3.0);

  const std::string sol = ws.file("sol.tsv", "i j value\n0 1 1\n1 0 1\n1 1 1\n");
  const Run sep = run({"separate", "--tree1", path, "--tree2", xy, "--solution", sol});
  CHECK(sep.code == kExitOk);
  CHECK(sep.out == "cut: x[0,1] + x[1,0] + x[1,1] <= 1  # violation=2.000000\n");
  const Run sepj = run({"separate", "--tree1", path, "--tree2", xy, "--solution", sol, "--json"});
  CHECK(sepj.code == kExitOk);
  const auto sdoc = nlohmann::json::parse(sepj.out);
  CHECK(sdoc["cuts"].size() == 1);
  for (const char* key : {"value", "pairs", "algorithm", "runtime_ms"}) CHECK(sdoc.contains(key));
}

TEST_CASE("cli validate") {
  Workspace ws;
  const std::string path = ws.file("path.nwk", "(v)u;");
  const std::string cd = ws.file("cd.nwk", "(d)c;");
  const std::string tai = ws.file("tai.txt", "0 0\n1 1\n");
  const Run bad = run({"validate", "--tree1", path, "--tree2", cd, "--mapping", tai,
                       "--kind", "anti_tai"});
  CHECK(bad.code == kExitInput);
  CHECK(bad.err.find("(0,0) vs (1,1)") != std::string::npos);
  CHECK(bad.out.find("invalid") != std::string::npos);
  const Run good = run({"validate", "--tree1", path, "--tree2", cd, "--mapping", tai,
                        "--kind", "tai", "--json"});
  CHECK(good.code == kExitOk);
  CHECK(nlohmann::json::parse(good.out)["valid"] == true);
}

TEST_CASE("cli errors and exit codes") {
  Workspace ws;
  const std::string path = ws.file("path.nwk", "(v)u;");
  const std::string broken = ws.file("broken.nwk", "(v,u;");
  const std::string six = ws.file("six.nwk", "(((((f)e)d)c)b)a;");
  const std::string seven = ws.file("seven.nwk", "((((((g)f)e)d)c)b)a;");

  const Run unknown = run({"frobnicate"});
  CHECK(unknown.code == kExitInput);
  CHECK(unknown.err.find("path-tree") != std::string::npos);
  CHECK(run({}).code == kExitInput);
  CHECK(run({"si", "--tree1", path}).code == kExitInput);
  CHECK(run({"si", "--tree1", broken, "--tree2", path}).code == kExitInput);
  CHECK(run({"si", "--tree1", ws.file("none", ""), "--tree2", path}).code == kExitInput);
  CHECK(run({"si", "--tree1", (ws.dir / "missing.nwk").string(), "--tree2", path}).code ==
        kExitInput);
  const std::string neg = ws.file("neg.tsv", "0 0 -1\n");
  CHECK(run({"si", "--tree1", path, "--tree2", path, "--weights", neg}).code == kExitInput);
  CHECK(run({"si", "--tree1", path, "--tree2", path, "--weights", neg, "--label-match"}).code ==
        kExitInput);

  const Run cap = run({"oracle", "--tree1", six, "--tree2", seven});
  CHECK(cap.code == kExitCap);
  CHECK(cap.err.find("36") != std::string::npos);
  const Run raised = run({"oracle", "--tree1", six, "--tree2", seven, "--cap", "64"});
  CHECK(raised.code == kExitOk);
  CHECK(raised.err.find("warning") != std::string::npos);

  const std::string star = ws.file("star.nwk", "(p,q)r;");
  CHECK(run({"path-tree", "--tree1", star, "--tree2", path}).code == kExitInput);
  CHECK(run({"path-tree", "--tree1", star, "--tree2", path, "--path-bottom", "zz"}).code ==
        kExitInput);
  const Run seg = run({"path-tree", "--tree1", star, "--tree2", path, "--path-bottom", "q"});
  CHECK(seg.code == kExitOk);
  CHECK(run({"dag-antichain", "--dag1", ws.file("anti.dag", "0\n1\n"), "--dag2",
             ws.file("one.dag", "0\n")})
            .code == kExitInput);
  CHECK(run({"separate", "--tree1", path, "--tree2", path, "--solution",
             ws.file("sol.tsv", "0 0 0.5\n"), "--tol", "0"})
            .code == kExitInput);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("cli determinism") {
  Workspace ws;
  Rng rng(73);
  const RootedTree t1 = random_tree(8, 12, rng);
  const RootedTree t2 = random_tree(8, 12, rng);
  const std::string a = ws.file("a.nwk", write_newick(t1));
  const std::string b = ws.file("b.nwk", write_newick(t2));
  for (const char* sub : {"si", "lower-bound"}) {
    const Run first = run({sub, "--tree1", a, "--tree2", b, "--threads", "1"});
    REQUIRE(first.code == kExitOk);
    CHECK(run({sub, "--tree1", a, "--tree2", b, "--threads", "1"}).out == first.out);
    const Run many = run({sub, "--tree1", a, "--tree2", b, "--threads", "4", "--json"});
    const Run one = run({sub, "--tree1", a, "--tree2", b, "--threads", "1", "--json"});
    CHECK(nlohmann::json::parse(many.out)["value"] == nlohmann::json::parse(one.out)["value"]);
    CHECK(strip_runtime(many.out) == strip_runtime(one.out));
  }
}
