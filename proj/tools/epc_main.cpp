#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "epc/api.hpp"
#include "epc/expr.hpp"
#include "epc/problem.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact calculus for extended Poisson structures on flat complex models"};
  app.require_subcommand(1);

  std::string input, subspace, source, target, matrix;
  std::string complex_kind, form = "1";
  bool verbose = false;
  int trials = 20, max_degree = 3, grid = 5, cutoff = 0, degree = 0;
  unsigned long seed = 0;

  CLI::App* c_mc = app.add_subcommand("check-mc", "Maurer-Cartan residuals of a structure");
  c_mc->add_option("--input", input, "problem file")->required();
  c_mc->add_flag("--verbose", verbose, "echo the structure");

  CLI::App* c_d2 = app.add_subcommand("d2", "square of the twisted Dolbeault operator on random sections");
  c_d2->add_option("--input", input, "problem file")->required();
  c_d2->add_option("--trials", trials, "random sections per degree");
  c_d2->add_option("--seed", seed, "random seed");
  c_d2->add_option("--max-degree", max_degree, "highest polyvector degree");

  CLI::App* c_gc = app.add_subcommand("gc", "generalized-complex criterion");
  c_gc->add_option("--input", input, "problem file")->required();
  c_gc->add_option("--grid", grid, "sample points per direction");

  CLI::App* c_el = app.add_subcommand("ellipticity", "pointwise surjectivity of the principal part");
  c_el->add_option("--input", input, "problem file")->required();
  c_el->add_option("--grid", grid, "sample points per direction");

  CLI::App* c_ho = app.add_subcommand("homology", "homology dimensions at a frequency cutoff");
  c_ho->add_option("--input", input, "problem file")->required();
  c_ho->add_option("--complex", complex_kind, "kb or lp")->required();
  c_ho->add_option("--cutoff", cutoff, "frequency cutoff")->required();

  CLI::App* c_pa = app.add_subcommand("pairing", "duality pairing rank in one degree");
  c_pa->add_option("--input", input, "problem file")->required();
  c_pa->add_option("--degree", degree, "homology degree")->required();
  c_pa->add_option("--cutoff", cutoff, "frequency cutoff")->required();

  CLI::App* c_m1 = app.add_subcommand("verify-main1", "spinor intertwining of the twisted operators");
  c_m1->add_option("--input", input, "problem file")->required();
  c_m1->add_option("--trials", trials, "random sections per degree");
  c_m1->add_option("--seed", seed, "random seed");
  c_m1->add_option("--max-degree", max_degree, "highest polyvector degree");

  CLI::App* c_mo = app.add_subcommand("modular", "modular residual of a holomorphic volume form");
  c_mo->add_option("--input", input, "problem file")->required();
  c_mo->add_option("--form", form, "coefficient of dz_1^...^dz_n (default 1)");

  CLI::App* c_co = app.add_subcommand("coisotropic", "coisotropy of a linear submanifold");
  c_co->add_option("--input", input, "problem file")->required();
  c_co->add_option("--subspace", subspace, "subspace file")->required();

  CLI::App* c_pm = app.add_subcommand("poisson-map", "extended Poisson map conditions");
  c_pm->add_option("--source", source, "problem file for the domain")->required();
  c_pm->add_option("--target", target, "problem file for the codomain")->required();
  c_pm->add_option("--matrix", matrix, "map file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    epc::ApiResult result;
    if (c_mc->parsed()) {
      result = epc::api_check_mc(input, verbose);
    } else if (c_d2->parsed()) {
      result = epc::api_d2(input, trials, seed, max_degree);
    } else if (c_gc->parsed()) {
      result = epc::api_gc(input, grid);
    } else if (c_el->parsed()) {
      result = epc::api_ellipticity(input, grid);
    } else if (c_ho->parsed()) {
      result = epc::api_homology(input, complex_kind, cutoff);
    } else if (c_pa->parsed()) {
      result = epc::api_pairing(input, degree, cutoff);
    } else if (c_m1->parsed()) {
      result = epc::api_verify_main1(input, trials, seed, max_degree);
    } else if (c_mo->parsed()) {
      result = epc::api_modular(input, form);
    } else if (c_co->parsed()) {
      result = epc::api_coisotropic(input, subspace);
    } else {
      result = epc::api_poisson_map(source, target, matrix);
    }
    std::cout << "epc " << epc::kVersion << "\n" << result.report.dump(2) << "\n";
    return result.exit_code;
  } catch (const epc::ProblemError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const epc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
