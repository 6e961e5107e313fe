#include <CLI11.hpp>

#include <iostream>

#include "tori/report.hpp"

using namespace tori::report;

int main(int argc, char** argv) {
  CLI::App app{"Certified computations for automorphisms of complex 3-tori"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  Settings settings;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--precision-bits", settings.precision_bits, "Working precision of the root balls")
      ->check(CLI::Range(53, 1 << 20));
  app.add_option("--a-max", settings.a_max, "Search bound for the Salem generator")->check(CLI::PositiveNumber);
  app.add_option("--c-max", settings.c_max, "Largest multiplier tried in the linear resolvents")
      ->check(CLI::PositiveNumber);

  Json doc;
  std::string poly, triple, mat;
  bool all_triples = false;
  int dim = 3, degree = 4, bound = 2;

  auto* classify = app.add_subcommand("classify", "Decide whether a sextic is special");
  classify->add_option("poly", poly, "Coefficients, ascending, comma separated")->required();
  classify->callback([&] { doc = run_classify(poly, settings); });

  auto* galois = app.add_subcommand("galois", "Galois group class of a special sextic");
  galois->add_option("poly", poly, "Coefficients, ascending, comma separated")->required();
  galois->callback([&] { doc = run_galois(poly, settings); });

  auto* picard = app.add_subcommand("picard", "Picard number of the standard torus model");
  picard->add_option("poly", poly, "Coefficients, ascending, comma separated")->required();
  auto* triple_opt = picard->add_option("--triple", triple, "Holomorphic labels i,j,k (1-based), default 1,3,4");
  picard->add_flag("--all-triples", all_triples, "Report every admissible triple")->excludes(triple_opt);
  picard->callback([&] { doc = run_picard(poly, triple, all_triples, settings); });

  auto* fib = app.add_subcommand("fibration", "Equivariant fibrations of a lattice action");
  fib->add_option("input", mat, "Polynomial coefficients, or matrix rows separated by ';'")->required();
  fib->callback([&] { doc = run_fibration(mat, settings); });

  auto* deg = app.add_subcommand("degrees", "Dynamical degrees of a torus automorphism");
  deg->add_option("matrix", mat, "Rows separated by ';', entries by ','")->required();
  deg->add_option("--dim", dim, "Complex dimension n of the torus")->check(CLI::PositiveNumber);
  deg->callback([&] { doc = run_degrees(mat, dim, settings); });

  auto* gen = app.add_subcommand("salem-gen", "Salem polynomial of a given even degree");
  gen->add_option("degree", degree, "Even degree 2k >= 4")->required();
  gen->callback([&] { doc = run_salem_gen(degree, settings); });

  auto* sweep = app.add_subcommand("sweep", "Check invariants over all special sextics in a box");
  sweep->add_option("--trace-coeff-bound", bound, "Bound on the trace cubic coefficients")->check(CLI::NonNegativeNumber);
  sweep->callback([&] { doc = run_sweep(bound, settings); });

  auto* verify = app.add_subcommand("verify-paper", "Recompute the three worked examples");
  verify->callback([&] { doc = run_verify_paper(settings); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  if (format == "json")
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << render_text(doc);
  return exit_code(doc);
}
