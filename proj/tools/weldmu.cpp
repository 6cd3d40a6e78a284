// Command line front end; the actual work lives in weldmu::cli so tests can
// call it in-process.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weldmu/cli.hpp"

namespace {

using weldmu::cli::DiagramInput;

void add_input(CLI::App* cmd, DiagramInput& input, const char* what) {
  cmd->add_option("file", input.path, std::string(what) + " file ('-' for stdin)");
  cmd->add_option("--code", input.code, std::string("inline ") + what);
}

std::set<weldmu::moves::MoveClass> parse_classes(const std::vector<std::string>& names) {
  std::set<weldmu::moves::MoveClass> out;
  for (const std::string& s : names) {
    if (s == "wbar")
      out.insert(weldmu::moves::MoveClass::WBar);
    else if (s == "base")
      out.insert(weldmu::moves::MoveClass::BaseChange);
    else if (s == "sv")
      out.insert(weldmu::moves::MoveClass::SV);
    else
      throw CLI::ValidationError("--classes", "unknown move class '" + s + "'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milnor invariants of welded links and string links from Gauss codes"};
  app.require_subcommand(1);

  weldmu::cli::ComputeRequest compute;
  CLI::App* c = app.add_subcommand("compute", "mu / delta / mu-bar table of a diagram");
  add_input(c, compute.input, "diagram");
  c->add_option("--base", compute.base, "base point gaps, e.g. 0,3,0")->delimiter(',');
  c->add_option("--rmax", compute.rmax, "longest sequence length (default min(n+1, 4))");
  c->add_flag("--allow-large", compute.allow_large, "permit rmax > 6");
  c->add_flag("--json", compute.json, "emit JSON records instead of a text table");
  c->add_flag("--non-repeated-only", compute.non_repeated_only,
              "restrict rows to sequences of distinct indices");
  c->add_flag("--longitudes", compute.longitudes, "also print the preferred longitudes");
  c->add_flag("--reduced-check", compute.reduced_check,
              "cross-check mu against the reduced map on non-repeated rows");

  weldmu::cli::FuzzRequest fuzz;
  std::vector<std::string> class_names{"wbar"};
  CLI::App* f = app.add_subcommand("fuzz", "random-walk invariance check");
  add_input(f, fuzz.input, "diagram");
  f->add_option("--base", fuzz.base, "base point gaps")->delimiter(',');
  f->add_option("--seed", fuzz.seed, "random seed (default 1)");
  f->add_option("--steps", fuzz.steps, "walk length (default 100)");
  f->add_option("--classes", class_names, "move classes: wbar,base,sv (default wbar)")
      ->delimiter(',');
  f->add_option("--rmax", fuzz.rmax, "table depth to compare (default min(n+1, 4))");
  f->add_flag("--allow-large", fuzz.allow_large, "permit rmax > 6");
  bool flag_nr = false, flag_all = false;
  f->add_flag("--non-repeated", flag_nr, "compare only non-repeated sequences");
  f->add_flag("--all-sequences", flag_all, "compare every sequence (overrides the sv default)");

  weldmu::cli::CompareRequest compare;
  std::string mode = "sv";
  CLI::App* q = app.add_subcommand("compare", "decide SV-equivalence or compare mu-bar tables");
  q->add_option("a", compare.a.path, "first diagram file");
  q->add_option("b", compare.b.path, "second diagram file");
  q->add_option("--code-a", compare.a.code, "first diagram inline");
  q->add_option("--code-b", compare.b.code, "second diagram inline");
  q->add_option("--base-a", compare.base_a, "base points of the first diagram")->delimiter(',');
  q->add_option("--base-b", compare.base_b, "base points of the second diagram")->delimiter(',');
  q->add_option("--mode", mode, "sv (default) or mubar");
  q->add_option("--rmax", compare.rmax, "table depth for mubar mode");
  q->add_flag("--allow-large", compare.allow_large, "permit rmax > 6 / n > 6");

  weldmu::cli::CloseRequest close_req;
  CLI::App* k = app.add_subcommand("close", "close a string link into a based link diagram");
  add_input(k, close_req.input, "string link");

  weldmu::cli::LongitudesRequest longs;
  CLI::App* l = app.add_subcommand("longitudes", "print the preferred longitudes");
  add_input(l, longs.input, "diagram");
  l->add_option("--base", longs.base, "base point gaps")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }

  if (c->parsed()) return weldmu::cli::cmd_compute(compute, std::cout, std::cerr);
  if (f->parsed()) {
    try {
      fuzz.classes = parse_classes(class_names);
    } catch (const CLI::ParseError& e) {
      app.exit(e);
      return 3;
    }
    if (flag_nr && flag_all) {
      std::cerr << "error: --non-repeated and --all-sequences conflict\n";
      return 3;
    }
    if (flag_nr) fuzz.non_repeated = true;
    if (flag_all) fuzz.non_repeated = false;
    return weldmu::cli::cmd_fuzz(fuzz, std::cout, std::cerr);
  }
  if (q->parsed()) {
    if (mode == "sv")
      compare.mode = weldmu::cli::CompareMode::Sv;
    else if (mode == "mubar")
      compare.mode = weldmu::cli::CompareMode::MuBar;
    else {
      std::cerr << "error: unknown mode '" << mode << "'\n";
      return 3;
    }
    return weldmu::cli::cmd_compare(compare, std::cout, std::cerr);
  }
  if (k->parsed()) return weldmu::cli::cmd_close(close_req, std::cout, std::cerr);
  if (l->parsed()) return weldmu::cli::cmd_longitudes(longs, std::cout, std::cerr);
  return 3;
}
