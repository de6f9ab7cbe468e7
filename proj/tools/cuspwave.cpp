// Command-line front end: shear flows, critical parameters, vertical
// spectra, Stokes/solitary branches, and the flow-force region, all written
// as deterministic CSV/JSON files.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "cuspwave/config.hpp"
#include "cuspwave/errors.hpp"
#include "cuspwave/io.hpp"
#include "cuspwave/region.hpp"
#include "cuspwave/stream.hpp"
#include "cuspwave/sturm.hpp"
#include "cuspwave/vorticity.hpp"
#include "cuspwave/wave.hpp"

namespace {

using namespace cuspwave;

struct Options {
  std::string configPath;
  std::string outDir = ".";
  double r = 0;
  bool haveR = false;
  std::string tListRaw;
  double lambda = 0;
  bool haveLambda = false;
  std::string lambdaGridRaw;
  double rMax = 0;
  bool haveRMax = false;
  int n = 65;
  double tailTol = 1e-3;
  int jobs = 1;
};

std::string joinPath(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  if (dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

RunConfig loadConfigOrDefault(const Options& o) {
  if (o.configPath.empty()) return RunConfig{};
  return load_config(o.configPath);
}

std::vector<double> parseList(const std::string& raw, const char* flag) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos <= raw.size()) {
    size_t comma = raw.find(',', pos);
    std::string tok = raw.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) {
      fail(ErrorKind::Validation,
           std::string(flag) + ": empty entry in '" + raw + "'");
    }
    char* end = nullptr;
    double x = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') {
      fail(ErrorKind::Validation,
           std::string(flag) + ": cannot parse '" + tok + "'");
    }
    out.push_back(x);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) {
    fail(ErrorKind::Validation, std::string(flag) + ": empty list");
  }
  return out;
}

// "a:b:n" -> n equally spaced values from a to b inclusive.
std::vector<double> parseLambdaGrid(const std::string& raw) {
  size_t c1 = raw.find(':');
  size_t c2 = c1 == std::string::npos ? c1 : raw.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    fail(ErrorKind::Validation,
         "--lambda-grid: expected a:b:n, got '" + raw + "'");
  }
  double a = std::strtod(raw.substr(0, c1).c_str(), nullptr);
  double b = std::strtod(raw.substr(c1 + 1, c2 - c1 - 1).c_str(), nullptr);
  long n = std::strtol(raw.c_str() + c2 + 1, nullptr, 10);
  if (n < 1) fail(ErrorKind::Validation, "--lambda-grid: need n >= 1");
  if (n == 1 && a != b) {
    fail(ErrorKind::Validation, "--lambda-grid: n = 1 needs a = b");
  }
  std::vector<double> xs(n);
  for (long i = 0; i < n; ++i) {
    xs[i] = n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
  }
  return xs;
}

BranchOptions branchOptions(const RunConfig& cfg) {
  BranchOptions opt;
  opt.nq = cfg.grid.nq;
  opt.np = cfg.grid.np;
  opt.newtonTol = cfg.tol.newton;
  opt.maxNewtonIters = cfg.budget.maxNewtonIters;
  opt.maxContinuationSteps = cfg.budget.maxContinuationSteps;
  opt.lambdaCap = cfg.budget.lambdaCap;
  return opt;
}

std::string waveFileName(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "wave_%03d.csv", index);
  return buf;
}

std::string summaryRow(const WaveGrid& g, const VorticityFn& v) {
  PhysicalWave ph = reconstruct_physical(g, v);
  double minEta = ph.eta[0], maxEta = ph.eta[0];
  for (double e : ph.eta) {
    minEta = std::min(minEta, e);
    maxEta = std::max(maxEta, e);
  }
  double s = flow_force_wave(g, v, 0);
  std::string row = fmt17(g.crest());
  row += "," + fmt17(g.Lambda);
  row += "," + fmt17(minEta);
  row += "," + fmt17(maxEta);
  row += "," + fmt17(s);
  row += "," + fmt17(ph.maxSlope);
  row += "," + fmt17(ph.minPsiY);
  row += "\n";
  return row;
}

constexpr const char* kSummaryHeader =
    "t,Lambda,minEta,maxEta,flowForce,maxSlope,minPsiY\n";

int runStream(const Options& o) {
  RunConfig cfg = loadConfigOrDefault(o);
  VorticityFn v = make_vorticity(cfg.vorticity);
  std::vector<double> grid = parseLambdaGrid(o.lambdaGridRaw);
  std::string csv = "lambda,depth,bernoulli\n";
  for (double lam : grid) {
    double d = depth(v, lam, cfg.tol.quadrature);
    double R = bernoulli_of_lambda(v, lam, cfg.tol.quadrature);
    csv += fmt17(lam) + "," + fmt17(d) + "," + fmt17(R) + "\n";
  }
  atomic_write(joinPath(o.outDir, "stream.csv"), csv);
  return 0;
}

int runCritical(const Options& o) {
  RunConfig cfg = loadConfigOrDefault(o);
  VorticityFn v = make_vorticity(cfg.vorticity);
  CriticalData cd = critical_data(v, cfg.tol.quadrature, cfg.tol.root);
  JsonDoc doc;
  doc.number("lambda0", cd.lambda0)
      .number("lambdaC", cd.lambdaC)
      .number("rC", cd.rC)
      .number("dC", cd.dC)
      .number("d0", cd.d0)
      .number("r0", cd.r0)
      .text("class", to_string(v.waveClass()));
  atomic_write(joinPath(o.outDir, "critical.json"), doc.str() + "\n");
  return 0;
}

int runSpectrum(const Options& o) {
  RunConfig cfg = loadConfigOrDefault(o);
  VorticityFn v = make_vorticity(cfg.vorticity);
  if (!o.haveLambda) fail(ErrorKind::Validation, "spectrum: --lambda required");
  SpectralPoint sp = spectral_point(v, o.lambda, cfg.grid.np);
  JsonDoc doc;
  doc.number("lambda", sp.lambda)
      .number("mu0", sp.mu0)
      .number("mu1", sp.mu1)
      .number("kStar", sp.kStar)
      .number("frakm", sp.frakm)
      .number("frakM", sp.frakM);
  atomic_write(joinPath(o.outDir, "spectrum.json"), doc.str() + "\n");
  std::string csv = "p,phi0\n";
  for (size_t j = 0; j < sp.p.size(); ++j) {
    csv += fmt17(sp.p[j]) + "," + fmt17(sp.phi0[j]) + "\n";
  }
  atomic_write(joinPath(o.outDir, "phi0.csv"), csv);
  return 0;
}

int runStokes(const Options& o) {
  RunConfig cfg = loadConfigOrDefault(o);
  VorticityFn v = make_vorticity(cfg.vorticity);
  if (!o.haveR) fail(ErrorKind::Validation, "stokes: --r required");
  std::vector<double> tList = parseList(o.tListRaw, "--t-list");
  BranchResult branch = continue_branch(v, o.r, tList, branchOptions(cfg));

  std::string summary = kSummaryHeader;
  for (size_t i = 0; i < branch.waves.size(); ++i) {
    const WaveGrid& g = branch.waves[i];
    atomic_write(joinPath(o.outDir, waveFileName(int(i) + 1)), wave_to_csv(g));
    summary += summaryRow(g, v);
    PhysicalWave ph = reconstruct_physical(g, v);
    if (ph.maxSlope > cfg.slopeBoundM) {
      std::cerr << "note: wave at t=" << fmt17(g.crest())
                << " exceeds the slope bound M=" << fmt17(cfg.slopeBoundM)
                << " (max slope " << fmt17(ph.maxSlope) << ")\n";
    }
  }
  atomic_write(joinPath(o.outDir, "stokes_summary.csv"), summary);
  if (!branch.complete) {
    std::cerr << "error: branch continuation stopped at t="
              << fmt17(branch.lastGoodT) << " before reaching all targets\n";
    return 3;
  }
  return 0;
}

int runSolitary(const Options& o) {
  RunConfig cfg = loadConfigOrDefault(o);
  VorticityFn v = make_vorticity(cfg.vorticity);
  if (!o.haveR) fail(ErrorKind::Validation, "solitary: --r required");
  SolitaryResult sol = solitary_approx(v, o.r, o.tailTol, branchOptions(cfg));

  atomic_write(joinPath(o.outDir, "solitary.csv"), wave_to_csv(sol.wave));
  atomic_write(joinPath(o.outDir, "solitary_summary.csv"),
               std::string(kSummaryHeader) + summaryRow(sol.wave, v));
  JsonDoc doc;
  doc.number("t", sol.wave.crest())
      .number("Lambda", sol.wave.Lambda)
      .number("tailGap", sol.tailGap)
      .number("tailSlope", sol.tailSlope)
      .boolean("achieved", sol.achieved)
      .integer("steps", sol.steps);
  atomic_write(joinPath(o.outDir, "solitary.json"), doc.str() + "\n");
  if (!sol.achieved) {
    std::cerr << "error: tail tolerance " << fmt17(o.tailTol)
              << " not reached (gap " << fmt17(sol.tailGap) << ")\n";
    return 3;
  }
  return 0;
}

int runRegion(const Options& o) {
  RunConfig cfg = loadConfigOrDefault(o);
  VorticityFn v = make_vorticity(cfg.vorticity);
  if (!o.haveRMax) fail(ErrorKind::Validation, "region: --r-max required");
  BLRegion reg = build_region(v, o.rMax, o.n, cfg.tol.quadrature);
  std::string csv = "r,sMinus,sPlus\n";
  for (size_t k = 0; k < reg.r.size(); ++k) {
    csv += fmt17(reg.r[k]) + "," + fmt17(reg.sMinus[k]) + "," +
           fmt17(reg.sPlus[k]) + "\n";
  }
  atomic_write(joinPath(o.outDir, "region.csv"), csv);
  return 0;
}

int runVerifyBl(const Options& o) {
  RunConfig cfg = loadConfigOrDefault(o);
  VorticityFn v = make_vorticity(cfg.vorticity);
  if (!o.haveR) fail(ErrorKind::Validation, "verify-bl: --r required");
  std::vector<double> tList = parseList(o.tListRaw, "--t-list");

  CriticalData cd = critical_data(v, cfg.tol.quadrature, cfg.tol.root);
  if (o.r <= cd.rC) {
    fail(ErrorKind::Domain,
         "verify-bl: r = " + fmt17(o.r) + " is at or below the critical value " +
             fmt17(cd.rC) + "; no waves exist there");
  }
  double rMax = o.haveRMax ? o.rMax : cd.rC + 2.0 * (o.r - cd.rC);
  if (rMax < o.r) {
    fail(ErrorKind::Validation, "verify-bl: --r-max must cover --r");
  }
  BLRegion reg = build_region(v, rMax, o.n, cfg.tol.quadrature);

  BranchOptions opt = branchOptions(cfg);
  BranchResult branch = continue_branch(v, o.r, tList, opt);
  if (!branch.complete) {
    fail(ErrorKind::Solver,
         "verify-bl: branch continuation stopped at t=" +
             fmt17(branch.lastGoodT) + " before reaching all targets");
  }
  SolitaryResult sol = solitary_approx(v, o.r, o.tailTol, opt);
  if (!sol.achieved) {
    fail(ErrorKind::Solver, "verify-bl: tail tolerance " + fmt17(o.tailTol) +
                                " not reached (gap " + fmt17(sol.tailGap) + ")");
  }

  std::vector<WaveGrid> waves = branch.waves;
  waves.push_back(sol.wave);
  BranchFlowForce bff = branch_flow_force(v, o.r, waves, cd);

  std::vector<std::string> positions;
  bool allPass = true;
  for (double s : bff.s) {
    RegionPosition pos = contains(reg, o.r, s);
    positions.push_back(to_string(pos));
    if (pos != RegionPosition::Inside && pos != RegionPosition::LowerBoundary) {
      allPass = false;
    }
  }

  JsonDoc membership, endpoints, doc;
  membership.boolean("allPass", allPass).textArray("positions", positions);
  endpoints.number("sPlusGap", bff.sPlusGap).number("sMinusGap", bff.sMinusGap);
  doc.raw("membership", membership.str())
      .boolean("monotonic", bff.strictlyDecreasing)
      .raw("endpoints", endpoints.str())
      .numberArray("t", bff.t)
      .numberArray("s", bff.s);
  atomic_write(joinPath(o.outDir, "verify_bl.json"), doc.str() + "\n");
  return allPass && bff.strictlyDecreasing ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady water waves with vorticity: shear flows, bifurcating "
               "wave branches, and the flow-force region"};
  app.require_subcommand(1);

  Options o;
  app.add_option("--config", o.configPath, "JSON configuration file")
      ->group("Global");
  app.add_option("--out", o.outDir, "output directory (default: .)")
      ->group("Global");
  app.add_option("--jobs", o.jobs, "worker pool size for independent tasks")
      ->check(CLI::PositiveNumber)
      ->group("Global");

  CLI::App* stream =
      app.add_subcommand("stream", "depth and Bernoulli constant on a lambda grid");
  stream->add_option("--lambda-grid", o.lambdaGridRaw, "a:b:n")->required();

  app.add_subcommand("critical", "critical parameters of the shear flow");

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "vertical spectrum at a given lambda");
  spectrum->add_option("--lambda", o.lambda, "stream parameter")
      ->required()
      ->each([&](const std::string&) { o.haveLambda = true; });

  CLI::App* stokes =
      app.add_subcommand("stokes", "branch of periodic waves by crest height");
  stokes->add_option("--r", o.r, "Bernoulli constant")
      ->required()
      ->each([&](const std::string&) { o.haveR = true; });
  stokes->add_option("--t-list", o.tListRaw, "ascending crest heights a,b,c")
      ->required();

  CLI::App* solitary =
      app.add_subcommand("solitary", "long-wave approximation of the solitary wave");
  solitary->add_option("--r", o.r, "Bernoulli constant")
      ->required()
      ->each([&](const std::string&) { o.haveR = true; });
  solitary->add_option("--tail-tol", o.tailTol, "tail settling tolerance");

  CLI::App* region =
      app.add_subcommand("region", "flow-force region boundaries on [rC, rMax]");
  region->add_option("--r-max", o.rMax, "right edge of the r grid")
      ->required()
      ->each([&](const std::string&) { o.haveRMax = true; });
  region->add_option("--n", o.n, "number of r samples")->check(CLI::PositiveNumber);

  CLI::App* verify =
      app.add_subcommand("verify-bl", "branch membership in the flow-force region");
  verify->add_option("--r", o.r, "Bernoulli constant")
      ->required()
      ->each([&](const std::string&) { o.haveR = true; });
  verify->add_option("--t-list", o.tListRaw, "ascending crest heights a,b,c")
      ->required();
  verify->add_option("--r-max", o.rMax, "right edge of the region grid")
      ->each([&](const std::string&) { o.haveRMax = true; });
  verify->add_option("--n", o.n, "number of r samples")->check(CLI::PositiveNumber);
  verify->add_option("--tail-tol", o.tailTol, "tail settling tolerance");

  for (CLI::App* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (stream->parsed()) return runStream(o);
    if (app.get_subcommand("critical")->parsed()) return runCritical(o);
    if (spectrum->parsed()) return runSpectrum(o);
    if (stokes->parsed()) return runStokes(o);
    if (solitary->parsed()) return runSolitary(o);
    if (region->parsed()) return runRegion(o);
    if (verify->parsed()) return runVerifyBl(o);
  } catch (const cuspwave::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.kind() == ErrorKind::Validation || e.kind() == ErrorKind::Domain)
               ? 2
               : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
