#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "kolmo/cli.hpp"

using kolmo::cli::run;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp_path(const std::string& name) {
  return std::string("/tmp/kolmo_cli_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  REQUIRE(f.good());
  f << text;
}

}  // namespace

TEST_CASE("usage handling") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"nonsense"}).code == 2);
  CHECK(invoke({"pair", "encode", "--x1", "1"}).code == 2);          // missing flag
  CHECK(invoke({"pair", "encode", "--x1", "1", "--bad", "2"}).code == 2);  // unknown flag
  CHECK(invoke({"pair", "encode", "--x1", "1", "--x2"}).code == 2);  // missing value
  const RunResult help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("table verify") != std::string::npos);
  CHECK(help.out.find("adversary minentropy") != std::string::npos);
}

TEST_CASE("pair verbs") {
  const RunResult enc = invoke({"pair", "encode", "--x1", "1", "--x2", "01"});
  CHECK(enc.code == 0);
  CHECK(enc.out == "s=110001101\n");

  const RunResult dec = invoke({"pair", "decode", "--s", "110001101"});
  CHECK(dec.code == 0);
  CHECK(dec.out == "x1=1\nx2=01\n");

  const RunResult empty = invoke({"pair", "encode", "--x1", ".", "--x2", "."});
  CHECK(empty.out == "s=0001\n");
  const RunResult empty_dec = invoke({"pair", "decode", "--s", "0001"});
  CHECK(empty_dec.out == "x1=.\nx2=.\n");

  CHECK(invoke({"pair", "decode", "--s", "11"}).code == 2);
}

TEST_CASE("params verbs and exit codes") {
  const RunResult ok = invoke({"params", "check", "--bign", "128", "--bigm", "2", "--m",
                               "1", "--s", "64", "--d", "2"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("feasible=true") != std::string::npos);
  CHECK(ok.out.find("margin=21.5233507499") != std::string::npos);

  const RunResult bad = invoke({"params", "check", "--bign", "16", "--bigm", "4", "--m",
                                "2", "--s", "4", "--d", "16"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("feasible=false") != std::string::npos);

  CHECK(invoke({"params", "check", "--bign", "100", "--bigm", "2", "--m", "1", "--s",
                "64", "--d", "2"})
            .code == 2);  // bign not a power of two

  const RunResult derive = invoke({"params", "derive", "--mode", "paper", "--n", "1024",
                                   "--sn", "100", "--alpha", "10", "--constc", "5",
                                   "--m", "30"});
  CHECK(derive.code == 0);
  CHECK(derive.out.find("s=70\n") != std::string::npos);
  CHECK(derive.out.find("t=15\n") != std::string::npos);
  CHECK(derive.out.find("bigd=33554432\n") != std::string::npos);  // 2^25
  CHECK(derive.out.find("bigs=1180591620717411303424\n") != std::string::npos);  // 2^70
}

TEST_CASE("json format mirrors the text keys") {
  const RunResult txt = invoke({"bsum", "--n", "4", "--m", "2"});
  CHECK(txt.out == "value=11\n");
  const RunResult js = invoke({"bsum", "--n", "4", "--m", "2", "--format", "json"});
  CHECK(js.code == 0);
  CHECK(js.out == "{\"value\":\"11\"}\n");
}

TEST_CASE("oracle verbs over a temp system") {
  const std::string sys = tmp_path("sys.txt");
  write_file(sys,
             "00 | . -> 0011\n"
             "1 | 1100 -> 0011\n"
             "01 | . -> 1100\n"
             "10 | 0011 -> 1100\n");
  const RunResult load = invoke({"oracle", "load", "--sys", sys});
  CHECK(load.code == 0);
  CHECK(load.out.find("entries=4") != std::string::npos);

  const RunResult c = invoke({"oracle", "c", "--sys", sys, "--x", "0011"});
  CHECK(c.out == "c=2\n");
  const RunResult c2 = invoke({"oracle", "c", "--sys", sys, "--x", "0011", "--cond", "1100"});
  CHECK(c2.out == "c=1\n");
  const RunResult cb = invoke({"oracle", "c", "--sys", sys, "--x", "1111"});
  CHECK(cb.out == "c=bot\n");

  const RunResult dep = invoke({"oracle", "dep", "--sys", sys, "--x", "0011", "--y", "1100"});
  CHECK(dep.code == 0);
  CHECK(dep.out.find("dep=1") != std::string::npos);

  const RunResult prof = invoke({"oracle", "profile", "--sys", sys, "--t", "2", "--len", "4"});
  CHECK(prof.out.find("count=2") != std::string::npos);
  CHECK(prof.out.find("elements=0011,1100") != std::string::npos);

  const std::string gen = tmp_path("gen_sys.txt");
  const RunResult g = invoke({"oracle", "gen", "--kind", "literal", "--maxlen", "2",
                              "--condlen", "1", "--out", gen});
  CHECK(g.code == 0);
  const RunResult soi = invoke({"oracle", "soi", "--sys", gen, "--x", "0", "--y", "1"});
  CHECK(soi.code == 0);
  CHECK(soi.out.find("slack_a=") != std::string::npos);
}

TEST_CASE("table verbs end to end") {
  const std::string tbl = tmp_path("t.tbl");
  const RunResult gen = invoke({"table", "gen", "--n", "2", "--m", "2", "--seed", "7",
                                "--out", tbl});
  CHECK(gen.code == 0);

  const RunResult ver = invoke({"table", "verify", tbl, "--s", "2", "--d", "16"});
  CHECK((ver.code == 0 || ver.code == 1));
  CHECK(ver.out.find("balanced=") != std::string::npos);
  CHECK(ver.out.find("worst_count=") != std::string::npos);

  // the smallest balanced table at the witness parameters is Latin
  const std::string small = tmp_path("small.tbl");
  const RunResult sm = invoke({"table", "smallest", "--n", "2", "--m", "2", "--s", "2",
                               "--d", "16", "--out", small});
  CHECK(sm.code == 0);
  CHECK(sm.out.find("cells=0 1 2 3 1 0 3 2 2 3 0 1 3 2 1 0") != std::string::npos);
  const RunResult rever = invoke({"table", "verify", small, "--s", "2", "--d", "16"});
  CHECK(rever.code == 0);
  CHECK(rever.out.find("balanced=true") != std::string::npos);

  const RunResult mc = invoke({"table", "mc", "--n", "1", "--m", "2", "--s", "2", "--d",
                               "16", "--seed", "5", "--max-tries", "50"});
  CHECK(mc.code == 0);
  CHECK(mc.out.find("found=true") != std::string::npos);

  const RunResult strip = invoke({"table", "stripmax", small, "--rows", "0,1", "--col",
                                  "0", "--d", "16"});
  CHECK(strip.code == 0);
  CHECK(strip.out.find("value=1") != std::string::npos);

  const RunResult notfound = invoke({"table", "smallest", "--n", "1", "--m", "3", "--s",
                                     "2", "--d", "48"});
  CHECK(notfound.code == 1);
  CHECK(notfound.out.find("found=false") != std::string::npos);
}

TEST_CASE("extractor verbs") {
  const std::string tbl = tmp_path("mod4.tbl");
  write_file(tbl, "table n=2 m=2\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
  const RunResult ex = invoke({"extract", "--table", tbl, "--x", "01", "--y", "10"});
  CHECK(ex.code == 0);
  CHECK(ex.out == "z=11\n");
  CHECK(invoke({"extract", "--table", tbl, "--x", "0", "--y", "10"}).code == 2);

  const std::string sys = tmp_path("cols.txt");
  write_file(sys,
             ". | 00 -> 00\n. | 01 -> 00\n. | 10 -> 00\n. | 11 -> 00\n"
             ". | . -> 00\n0 | . -> 01\n1 | . -> 10\n"
             "1 | 00 -> 01\n1 | 01 -> 00\n");
  const RunResult bc = invoke({"badcols", "--table", tbl, "--sys", sys, "--t1", "1",
                               "--t", "2"});
  CHECK(bc.code == 0);
  CHECK(bc.out.find("count=") != std::string::npos);

  const RunResult audit = invoke({"audit", "--table", tbl, "--sys", sys, "--x", "00",
                                  "--y", "01", "--mode", "desk", "--s", "1", "--bigs",
                                  "2", "--bigd", "8", "--t", "1", "--sn", "0",
                                  "--alpha", "4"});
  CHECK(audit.code == 0);
  CHECK(audit.out.find("verdict1=") != std::string::npos);
}

TEST_CASE("adversary verbs") {
  const std::string f1 = tmp_path("f1.grid");
  write_file(f1, "func arity=1 n=2 m=1\n0 1 1 0\n");
  const std::string f2 = tmp_path("f2.grid");
  write_file(f2, "func arity=2 n=2 m=2\n"
                 "00 00 00 00\n00 01 00 01\n00 00 10 10\n00 01 10 11\n");
  const std::string lit = tmp_path("lit.txt");
  invoke({"oracle", "gen", "--kind", "literal", "--maxlen", "4", "--condlen", "2",
          "--out", lit});

  const RunResult pop = invoke({"adversary", "popular", "--f", f1});
  CHECK(pop.code == 0);
  CHECK(pop.out.find("z=0") != std::string::npos);

  const RunResult w1 = invoke({"adversary", "witness1", "--f", f1, "--sys", lit});
  CHECK(w1.code == 0);
  CHECK(w1.out.find("x=00") != std::string::npos);

  const RunResult range = invoke({"adversary", "range", "--funcs",
                                  f1 + "," + f1 + "," + f1, "--x", "01"});
  CHECK(range.code == 0);
  CHECK(range.out.find("range=1") != std::string::npos);

  const RunResult freq = invoke({"adversary", "frequent", "--funcs", f1});
  CHECK(freq.code == 0);
  CHECK(freq.out.find("set=0") != std::string::npos);
  CHECK(freq.out.find("count=2") != std::string::npos);

  const RunResult greedy = invoke({"adversary", "greedy", "--funcs", f1});
  CHECK(greedy.code == 0);
  CHECK(greedy.out.find("bound=4/3") != std::string::npos);

  const RunResult w2 = invoke({"adversary", "witness2", "--f", f2, "--alpha", "1",
                               "--sys", lit});
  CHECK(w2.code == 0);
  CHECK(w2.out.find("preimage=") != std::string::npos);

  const std::string dist = tmp_path("d.dist");
  const RunResult adv = invoke({"adversary", "minentropy", "--f", f2, "--alpha", "1",
                                "--out", dist});
  CHECK(adv.code == 0);
  CHECK(adv.out.find("ok_marginal_x=true") != std::string::npos);
  CHECK(adv.out.find("ok_marginal_y=true") != std::string::npos);
  CHECK(adv.out.find("ok_joint=true") != std::string::npos);
  CHECK(adv.out.find("ok_output=true") != std::string::npos);

  const RunResult ent = invoke({"adversary", "entropy", "--dist", dist});
  CHECK(ent.code == 0);
  CHECK(ent.out.find("pmax=1/8") != std::string::npos);

  const std::string tbl = tmp_path("mod4b.tbl");
  write_file(tbl, "table n=2 m=2\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
  const RunResult amp = invoke({"adversary", "amplify", "--f1", f2, "--f2", f2,
                                "--table", tbl, "--sys", lit, "--alpha", "2", "--beta",
                                "1", "--s", "0", "--l", "2", "--a", "1"});
  CHECK(amp.code == 0);
  CHECK(amp.out.find("first_failure=") != std::string::npos);
}

TEST_CASE("byte-identical reruns") {
  const std::string tbl = tmp_path("det.tbl");
  const std::vector<std::vector<std::string>> cases = {
      {"table", "gen", "--n", "3", "--m", "2", "--seed", "11", "--out", tbl},
      {"table", "verify", tbl, "--s", "2", "--d", "16"},
      {"params", "check", "--bign", "64", "--bigm", "2", "--m", "1", "--s", "64", "--d", "2"},
      {"bsum", "--n", "20", "--m", "10", "--format", "json"},
  };
  for (const auto& argv : cases) {
    const RunResult a = invoke(argv);
    const RunResult b = invoke(argv);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}
