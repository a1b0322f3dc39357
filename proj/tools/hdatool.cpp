#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hda/kleene.hpp"
#include "hda/langset.hpp"
#include "hda/pathlang.hpp"
#include "hda/pcset.hpp"
#include "hda/surgery.hpp"

using namespace hda;

namespace {

struct Options {
  int size = 3;
  int width = 2;
  std::string alphabet;
  std::string output;
  int cell_limit = 0;
};

Truncation window(const Options& o) { return Truncation::of(o.size, o.width); }

void check_alphabet(const Options& o, const std::string& used, const std::string& what) {
  if (o.alphabet.empty()) return;
  for (char c : used)
    if (o.alphabet.find(c) == std::string::npos)
      throw Error(ErrorKind::Syntax, what + " uses label '" + std::string(1, c) + "' outside the alphabet");
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.output);
  if (!f) throw std::runtime_error("cannot write " + o.output);
  f << text;
}

void emit_hda(const Options& o, Hda h) {
  check_cell_limit(h.size(), "result");
  if (!o.alphabet.empty()) {
    check_alphabet(o, infer_alphabet(h), "result");
    h.alphabet = o.alphabet;
    std::sort(h.alphabet.begin(), h.alphabet.end());
  }
  emit(o, to_json(h));
}

Hda load(const Options& o, const std::string& path) {
  Hda h = load_hda(path);
  check_alphabet(o, infer_alphabet(h), path);
  return h;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hdatool: higher-dimensional automata and ipomset languages"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--size", o.size, "maximal size of listed ipomsets")->check(CLI::NonNegativeNumber);
  app.add_option("--width", o.width, "maximal width of listed ipomsets")->check(CLI::NonNegativeNumber);
  app.add_option("--alphabet", o.alphabet, "declared labels, e.g. abc");
  app.add_option("-o,--output", o.output, "write the result to a file");
  app.add_option("--cell-limit", o.cell_limit, "abort constructions beyond this many cells")
      ->check(CLI::PositiveNumber)
      ->trigger_on_parse()
      ->each([](const std::string& v) { set_cell_limit(std::stoi(v)); });

  int code = 0;
  std::string expr_text, file, file2, literal, path_text, member_method = "track", side = "start";

  auto* parse = app.add_subcommand("parse", "parse an expression and print it back");
  parse->add_option("expr", expr_text)->required();
  parse->callback([&] {
    ExprPtr e = parse_expr(expr_text);
    check_alphabet(o, expr_alphabet(e), "expression");
    emit(o, to_string(e) + "\n");
  });

  auto* eval = app.add_subcommand("eval", "list the language of an expression");
  eval->add_option("expr", expr_text)->required();
  eval->callback([&] {
    ExprPtr e = parse_expr(expr_text);
    check_alphabet(o, expr_alphabet(e), "expression");
    emit(o, dump(eval_expr(e, window(o))));
  });

  auto* comp = app.add_subcommand("compile", "compile an expression to an HDA document");
  comp->add_option("expr", expr_text)->required();
  comp->callback([&] {
    ExprPtr e = parse_expr(expr_text);
    check_alphabet(o, expr_alphabet(e), "expression");
    emit_hda(o, compile(e));
  });

  auto* extr = app.add_subcommand("extract", "read an expression off an HDA");
  extr->add_option("hda", file)->required();
  extr->callback([&] { emit(o, to_string(extract(load(o, file))) + "\n"); });

  auto* lang = app.add_subcommand("lang", "list the language of an HDA");
  lang->add_option("hda", file)->required();
  lang->callback([&] { emit(o, dump(enumerate_language(load(o, file), window(o)))); });

  auto* member = app.add_subcommand("member", "test membership of an ipomset literal");
  member->add_option("hda", file)->required();
  member->add_option("ipomset", literal)->required();
  member->add_option("--method", member_method, "paths or track")->check(CLI::IsMember({"paths", "track"}));
  member->callback([&] {
    Hda h = load(o, file);
    Ipomset p = parse_ipomset(literal);
    bool in = member_method == "paths" ? member_by_paths(h, p) : member_by_track(h, p);
    emit(o, in ? "MEMBER\n" : "NOT MEMBER\n");
    code = in ? 0 : 1;
  });

  auto* equiv = app.add_subcommand("equiv", "compare an expression with an HDA inside the window");
  equiv->add_option("--expr", expr_text)->required();
  equiv->add_option("--hda", file)->required();
  equiv->callback([&] {
    ExprPtr e = parse_expr(expr_text);
    check_alphabet(o, expr_alphabet(e), "expression");
    Language l = eval_expr(e, window(o));
    Language m = enumerate_language(load(o, file), window(o));
    bool same = lang_equal(l, m);
    emit(o, same ? "EQUIVALENT\n" : "NOT EQUIVALENT\n");
    code = same ? 0 : 1;
  });

  auto* valid = app.add_subcommand("validate", "check the HDA axioms of a document");
  valid->add_option("hda", file)->required();
  valid->callback([&] {
    Hda h = load(o, file);
    auto problems = validate(h);
    if (problems.empty()) {
      emit(o, "OK\n");
      return;
    }
    std::string text;
    for (const auto& p : problems) text += p + "\n";
    emit(o, text);
    code = 1;
  });

  auto* ev = app.add_subcommand("ev", "print the event ipomset of a path");
  ev->add_option("hda", file)->required();
  ev->add_option("path", path_text, "e.g. \"v0 U{a} e D{a} v1\"")->required();
  ev->callback([&] {
    Hda h = load(o, file);
    emit(o, to_literal(ev_path(h, parse_path(h, path_text))) + "\n");
  });

  auto* op = app.add_subcommand("op", "HDA constructions");
  op->require_subcommand(1);
  auto binary = [&](const char* name, const char* help, auto fn) {
    auto* s = op->add_subcommand(name, help);
    s->add_option("left", file)->required();
    s->add_option("right", file2)->required();
    s->callback([&, fn] { emit_hda(o, fn(load(o, file), load(o, file2))); });
  };
  auto unary = [&](const char* name, const char* help, auto fn) {
    auto* s = op->add_subcommand(name, help);
    s->add_option("hda", file)->required();
    s->callback([&, fn] { emit_hda(o, fn(load(o, file))); });
    return s;
  };
  binary("tensor", "parallel composition", [](const Hda& a, const Hda& b) { return tensor(a, b); });
  binary("union", "disjoint union", [](const Hda& a, const Hda& b) { return coproduct(a, b); });
  binary("glue", "gluing composition of the languages", [](const Hda& a, const Hda& b) { return glue_compose(a, b); });
  unary("plus", "Kleene plus", [](const Hda& a) { return kleene_plus(a); });
  unary("resolve", "HDA to iHDA", [](const Hda& a) { return resolve(a); });
  unary("close", "iHDA to HDA", [](const Hda& a) { return close(a); });
  unary("reverse", "reversal", [](const Hda& a) { return reverse(a); });
  unary("subtract-id", "remove accepted identities", [](const Hda& a) { return subtract_identities(a); });
  unary("cylinder", "cylinder of the start and accept maps", [](const Hda& a) {
    CubeFamily s = start_map(a), t = accept_map(a);
    Cylinder c = cylinder(a, s.pc, s.map, t.pc, t.map);
    Hda h = c.cyl;
    for (int top : s.tops) h.start.push_back(c.f_tilde[top]);
    for (int top : t.tops) h.accept.push_back(c.g_tilde[top]);
    h.normalize_marks();
    return h;
  });
  auto* prop = unary("properize", "start or accept properization", [&side](const Hda& a) {
    if (side == "start") return start_properize(a);
    if (side == "accept") return accept_properize(a);
    return accept_properize(start_properize(a));
  });
  prop->add_option("--side", side, "start, accept or both")->check(CLI::IsMember({"start", "accept", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
