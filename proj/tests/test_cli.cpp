#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hda/langset.hpp"
#include "hda/pathlang.hpp"
#include "hda/pcset.hpp"

using namespace hda;

namespace {

struct Outcome {
  int code;
  std::string out;
};

Outcome run(const std::string& args) {
  std::string cmd = std::string(HDATOOL_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".json"; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "hdatool_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, EvalDump) {
  Outcome r = run("eval \"a||b\" --size 3 --width 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "# language size<=3 width<=2 members=3\n"
            "events: a, b\n"
            "events: a, b; order: 0<1\n"
            "events: b, a; order: 0<1\n");
  EXPECT_EQ(run("--size 3 --width 2 eval \"a||b\"").out, r.out);
}

TEST(Cli, Equiv) {
  Outcome r = run("equiv --expr \"a;b\" --hda " + fx("ab") + " --size 3 --width 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "EQUIVALENT\n");
  Outcome no = run("equiv --expr \"b;a\" --hda " + fx("ab"));
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.out, "NOT EQUIVALENT\n");
}

TEST(Cli, Validate) {
  Outcome r = run("validate " + fx("fig1"));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "OK\n");
  auto bad = scratch("bad.json");
  std::string doc = slurp(fx("atom_a"));
  doc.replace(doc.find("\"d1\":[\"v1\"]"), 11, "\"d1\":[\"e\"]");
  std::ofstream(bad) << doc;
  EXPECT_EQ(run("validate " + bad.string()).code, 1);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("eval").code, 2);
  EXPECT_EQ(run("eval a --size x").code, 2);
  EXPECT_EQ(run("--help").code, 0);
  EXPECT_EQ(run("eval \"a ;\"").code, 1);
  EXPECT_EQ(run("lang /nonexistent.json").code, 1);
  EXPECT_EQ(run("op glue " + fx("atom_a") + " " + fx("nope")).code, 1);
}

TEST(Cli, MemberAndEv) {
  for (const char* method : {"paths", "track"}) {
    Outcome in = run("member " + fx("fig1") + " \"events: a\" --method " + method);
    EXPECT_EQ(in.out, "MEMBER\n");
    EXPECT_EQ(in.code, 0);
    Outcome out = run("member " + fx("fig1") + " \"events: b\" --method " + method);
    EXPECT_EQ(out.out, "NOT MEMBER\n");
    EXPECT_EQ(out.code, 1);
  }
  EXPECT_EQ(run("ev " + fx("fig1") + " \"v00 U{a} ea0 D{a} v01\"").out, "events: a\n");
}

TEST(Cli, ParseCompileExtract) {
  EXPECT_EQ(run("parse \"a;b||c\"").out, to_string(parse_expr("a;b||c")) + "\n");
  auto out = scratch("ab.json");
  Outcome c = run("compile \"a;b\" -o " + out.string());
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.out, "");
  Hda h = load_hda(out.string());
  EXPECT_EQ(enumerate_language(h, Truncation::of(3, 2)), eval_expr(parse_expr("a;b"), Truncation::of(3, 2)));
  Outcome e = run("extract " + out.string());
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(eval_expr(parse_expr(e.out), Truncation::of(3, 2)), eval_expr(parse_expr("a;b"), Truncation::of(3, 2)));
}

TEST(Cli, Alphabet) {
  EXPECT_EQ(run("--alphabet ab eval \"a;b\"").code, 0);
  EXPECT_EQ(run("--alphabet a eval \"a;b\"").code, 1);
  auto out = scratch("abc.json");
  EXPECT_EQ(run("compile a --alphabet abc -o " + out.string()).code, 0);
  EXPECT_EQ(load_hda(out.string()).alphabet, "abc");
}

TEST(Cli, CellLimit) {
  EXPECT_EQ(run("compile \"a||b||a\" --cell-limit 10").code, 1);
  EXPECT_EQ(run("op resolve " + fx("atom_a") + " --cell-limit 3").code, 1);
  EXPECT_EQ(run("op resolve " + fx("atom_a") + " --cell-limit 6").code, 0);
  EXPECT_EQ(run("compile a --cell-limit 0").code, 2);
}

TEST(Cli, Operations) {
  const Truncation t = Truncation::of(3, 2);
  struct Case {
    std::string args, expect;
  };
  std::vector<Case> cases = {
      {"op tensor " + fx("atom_a") + " " + fx("ab"), "a || (a ; b)"},
      {"op union " + fx("atom_a") + " " + fx("ab"), "a + a ; b"},
      {"op glue " + fx("atom_a") + " " + fx("ab"), "a ; a ; b"},
      {"op plus " + fx("atom_a"), "a^+"},
      {"op resolve " + fx("ab"), "a ; b"},
      {"op close " + fx("cube_sa_bt"), ".a || b."},
      {"op subtract-id " + fx("atom_eps"), "0"},
      {"op cylinder " + fx("ab"), "a ; b"},
      {"op properize " + fx("nonproper_left") + " --side both", ""},
  };
  for (const Case& c : cases) {
    auto out = scratch("op.json");
    Outcome r = run(c.args + " -o " + out.string());
    ASSERT_EQ(r.code, 0) << c.args;
    Hda h = load_hda(out.string());
    EXPECT_TRUE(validate(h).empty()) << c.args;
    if (!c.expect.empty()) EXPECT_EQ(enumerate_language(h, t), eval_expr(parse_expr(c.expect), t)) << c.args;
  }
  auto out = scratch("rev.json");
  ASSERT_EQ(run("op reverse " + fx("ab") + " -o " + out.string()).code, 0);
  EXPECT_EQ(enumerate_language(load_hda(out.string()), t), eval_expr(parse_expr("b ; a"), t));
}

TEST(Cli, ByteStable) {
  const std::vector<std::string> commands = {
      "eval \"(a||b);a + .a\" --size 4 --width 2",
      "lang " + fx("fig1") + " --size 4 --width 3",
      "compile \"(a;b)^+ || c\"",
      "op resolve " + fx("fig1"),
  };
  for (const std::string& args : commands) {
    Outcome a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_FALSE(a.out.empty());
    EXPECT_EQ(a.out, b.out) << args;
  }
  std::string doc = slurp(fx("fig1"));
  EXPECT_EQ(to_json(load_hda(fx("fig1"))), doc);
}
