#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isurf/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic toolkit for surfaces carrying two parabolas or "
               "isotropic circles through each point"};
  app.require_subcommand(1);

  isurf::CommandRequest req;
  std::string mode = "exact";

  struct SubSpec {
    const char* name;
    const char* help;
  };
  const std::vector<SubSpec> subs = {
      {"construct", "compose a cylinder tuple from tparam or pythagorean data"},
      {"lift", "lift a param1/param2 surface to its cylinder tuple"},
      {"decompose", "recover the (P,Q,R,T) witness of a cylinder tuple"},
      {"normalize", "search parameter flips until the tuple decomposes"},
      {"classify-map", "canonical class of a bilinear-fractional map"},
      {"dual-conic", "dual conic carrying the top-view isocurve lines"},
      {"topview", "full top-view circle-family and envelope report"},
      {"envelope", "circle family of a product/sum document and its envelope"},
      {"verify", "validity checks for any input document kind"},
      {"render-svg", "draw a circle family and its envelope as SVG"},
  };
  for (const SubSpec& s : subs) {
    CLI::App* c = app.add_subcommand(s.name, s.help);
    c->add_option("input", req.input, "path, '-' for stdin, or inline JSON");
    c->add_option("--mode", mode, "exact | float")
        ->check(CLI::IsMember({"exact", "float"}));
    c->add_option("--tol", req.tol, "float-mode tolerance");
    c->add_option("--seed", req.seed, "RNG seed for sampled checks");
    c->add_option("--out", req.output_path, "report path ('-' = stdout)");
    c->add_option("--svg", req.svg_path, "SVG output path (render-svg)");
  }
  CLI::App* st = app.add_subcommand("selftest", "run the acceptance criteria suites");
  st->add_option("--scale", req.selftest_scale, "smoke | full")
      ->check(CLI::IsMember({"smoke", "full"}));
  st->add_option("--seed", req.seed, "RNG seed for the suites");
  st->add_option("--out", req.output_path, "report path ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  req.command = app.get_subcommands().front()->get_name();
  req.float_mode = (mode == "float");
  return isurf::run_command(req, std::cin, std::cout, std::cerr);
}
