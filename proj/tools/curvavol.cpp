// curvavol: batch volumes and areas from an instance file.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "curvavol/batch.hpp"
#include "curvavol/error.hpp"

namespace {

constexpr int kClean = 0;
constexpr int kInstanceErrors = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Volumes of tetrahedra and areas of polygons in constant curvature"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "evaluate every instance with every requested method");
  std::string in_path, out_path = "-", format = "json", methods;
  curvavol::RunConfig cfg;
  run->add_option("--in", in_path, "instance file (JSON array), - for stdin")->required();
  run->add_option("--out", out_path, "report file, - for stdout");
  run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--methods", methods, "comma separated subset, e.g. dm,sforza,mc");
  run->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo sample count (>= 1000)");
  run->add_option("--mc-seed", cfg.mc_seed, "Monte Carlo seed");
  run->add_flag("--crosscheck", cfg.crosscheck, "add the max pairwise discrepancy between methods");
  run->add_flag("--degrees", cfg.degrees, "angle parameters are in degrees");
  run->add_flag("--timing", cfg.timing, "add elapsed_s per row (output no longer reproducible)");
  run->add_option("--threads", cfg.threads, "instances evaluated in parallel")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kClean : kUsage;
  }

  if (const char* tol = std::getenv("CURVAVOL_TOL")) {
    try {
      std::size_t used = 0;
      cfg.tol.abs_tol = std::stod(tol, &used);
      if (used != std::string(tol).size()) throw std::invalid_argument(tol);
    } catch (const std::exception&) {
      std::cerr << "CURVAVOL_TOL is not a number: " << tol << "\n";
      return kUsage;
    }
  }
  std::stringstream ms(methods);
  for (std::string m; std::getline(ms, m, ',');)
    if (!m.empty()) cfg.methods.push_back(m);

  std::vector<curvavol::ParsedInstance> instances;
  try {
    cfg.validate();
    instances = curvavol::parse_instances(slurp(in_path));
  } catch (const std::exception& e) {
    std::cerr << "curvavol: " << e.what() << "\n";
    return kUsage;
  }

  const auto report = curvavol::run_batch(instances, cfg);
  const std::string text = curvavol::emit(report, format == "csv" ? curvavol::Format::Csv : curvavol::Format::Json);
  if (out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "curvavol: cannot write " << out_path << "\n";
      return kUsage;
    }
    out << text;
  }
  for (const auto& r : report.rows)
    if (r.status != "ok") std::cerr << "curvavol: " << r.id << " " << r.method << ": " << r.message << "\n";
  return report.any_error() ? kInstanceErrors : kClean;
}
