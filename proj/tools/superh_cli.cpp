#include <superh/cli.hpp>

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace superh;

struct Options {
  std::string m;
  std::string n;
  std::string k;
  std::string format = "table";
  unsigned seed = 1;
  std::string suite;
  std::string expr;
};

Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw cli::UsageError("unknown format '" + s + "'");
}

cli::Grid grid(const Options& o) { return {cli::parse_range(o.m), cli::parse_range(o.n), cli::parse_range(o.k)}; }

int single(const std::string& text, const char* flag) {
  const auto r = cli::parse_range(text);
  if (r.lo != r.hi) throw cli::UsageError(std::string(flag) + " takes a single value here");
  return r.lo;
}

void add_grid(CLI::App* sub, Options& o, bool k_required, const std::string& k_default = "") {
  sub->add_option("-m", o.m, "bosonic dimension, a or a..b")->required();
  sub->add_option("-n", o.n, "half the fermionic dimension, a or a..b")->required();
  auto* k = sub->add_option("-k", o.k, "degree, a or a..b");
  if (k_required) {
    k->required();
  } else {
    k->default_str(k_default);
    o.k = k_default;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact harmonic analysis on superspace R^{m|2n}"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "table, json or csv")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for randomized sampling")->capture_default_str();

  auto* dims = app.add_subcommand("dims", "dimensions of H_k and of the simple quotient");
  add_grid(dims, o, true);
  auto* check = app.add_subcommand("check", "run a verification suite");
  check->add_option("suite", o.suite, "sl2|lb|killing|projections|fischer|integrals|irreducibility|windows|branching|all")
      ->required();
  add_grid(check, o, false, "0..6");
  auto* integrate = app.add_subcommand("integrate", "supersphere integral by both methods");
  integrate->add_option("expr", o.expr, "polynomial, e.g. \"2*x1^2 - xg1*xg2\"")->required();
  integrate->add_option("-m", o.m, "bosonic dimension")->required();
  integrate->add_option("-n", o.n, "half the fermionic dimension")->required();
  auto* decompose = app.add_subcommand("decompose", "so(m) x sp(2n) pieces of H_k");
  add_grid(decompose, o, true);
  auto* branch = app.add_subcommand("branch", "branching to osp(m-1|2n)");
  add_grid(branch, o, true);
  auto* fischer = app.add_subcommand("fischer", "Fischer decomposition of P_k");
  add_grid(fischer, o, true);

  for (auto* sub : app.get_subcommands({})) {
    sub->add_option("--format", o.format, "table, json or csv");
    sub->add_option("--seed", o.seed, "seed for randomized sampling");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const Format format = parse_format(o.format);
    Report rep;
    if (dims->parsed()) {
      rep = cli::cmd_dims(grid(o));
    } else if (check->parsed()) {
      // A single degree means the bound k_max.
      cli::Grid g = grid(o);
      if (g.k.lo == g.k.hi) g.k.lo = 0;
      rep = cli::cmd_check(o.suite, g, o.seed);
    } else if (integrate->parsed()) {
      rep = cli::cmd_integrate(o.expr, single(o.m, "-m"), single(o.n, "-n"));
    } else if (decompose->parsed()) {
      rep = cli::cmd_decompose(grid(o));
    } else if (branch->parsed()) {
      rep = cli::cmd_branch(grid(o));
    } else {
      rep = cli::cmd_fischer(grid(o));
    }
    std::cout << render(rep, format);
    return exit_code(rep.status);
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
