#include <iostream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "wbalg/errors.hpp"

using namespace wbalg::cli;

int main(int argc, char** argv) {
  CLI::App app{"Walled Brauer algebra matrix units and partially transposed permutation spectra"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "json";
  app.add_option("--p", cfg.p, "number of registers on each side")->capture_default_str();
  app.add_option("--d", cfg.d, "local dimension")->capture_default_str();
  app.add_option("--format", format, "json, csv or mm")->capture_default_str();
  app.add_option("--tol", cfg.tol, "base verification tolerance")->capture_default_str();

  auto* dims = app.add_subcommand("dims", "irreps of S(p) with dimensions and multiplicities");

  std::string mu, nu;
  auto* bmat = app.add_subcommand("bmatrix", "the B matrix for a pair of irreps");
  bmat->add_option("mu", mu, "partition of p, e.g. 2,1")->required();
  bmat->add_option("nu", nu, "partition of p (defaults to mu)");

  UnitsOptions uopt;
  auto* units = app.add_subcommand("units", "list matrix units or dump one operator");
  units->add_option("--ideal", uopt.ideal, "top, sub or all")->capture_default_str();
  units->add_option("--row", uopt.row, "1-based row label");
  units->add_option("--col", uopt.col, "1-based column label");

  SpectrumOptions sopt;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "spectrum of the partially transposed permutation operator");
  spectrum_cmd->add_option("--arcs", sopt.arcs, "number of arcs k (default: p and p-1)");
  spectrum_cmd->add_option("--method", sopt.method, "brute, analytic or both")->capture_default_str();
  spectrum_cmd->add_flag("--fig7", sopt.fig7, "print the unit-basis layout of rho");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run numerical checks and report residuals");
  verify->add_option("suite", suite, "suite name or all")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    cfg.format = parse_format(format);
    if (*dims) return cmd_dims(cfg, std::cout);
    if (*bmat) return cmd_bmatrix(cfg, mu, nu, std::cout);
    if (*units) return cmd_units(cfg, uopt, std::cout);
    if (*spectrum_cmd) return cmd_spectrum(cfg, sopt, std::cout);
    if (*verify) return cmd_verify(cfg, suite, std::cout);
  } catch (const wbalg::resource_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kUsage;
}
