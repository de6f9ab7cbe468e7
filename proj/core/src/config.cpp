#include "cuspwave/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cuspwave/errors.hpp"
#include "cuspwave/io.hpp"

namespace cuspwave {

namespace {

using nlohmann::json;

[[noreturn]] void badConfig(const std::string& pointer,
                            const std::string& what) {
  fail(ErrorKind::Validation, "config: " + pointer + ": " + what);
}

void rejectUnknown(const json& obj, const std::string& pointer,
                   const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      badConfig(pointer + "/" + it.key(), "unknown key");
    }
  }
}

double needNumber(const json& obj, const std::string& pointer,
                  const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) badConfig(pointer + "/" + key, "expected a number");
  return v.get<double>();
}

int needInteger(const json& obj, const std::string& pointer,
                const std::string& key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    badConfig(pointer + "/" + key, "expected an integer");
  }
  return v.get<int>();
}

VorticitySpec parseVorticity(const json& obj, const std::string& pointer) {
  if (!obj.is_object()) badConfig(pointer, "expected an object");
  if (!obj.contains("kind")) badConfig(pointer + "/kind", "missing");
  if (!obj.at("kind").is_string()) {
    badConfig(pointer + "/kind", "expected a string");
  }
  std::string kind = obj.at("kind").get<std::string>();

  if (kind == "zero") {
    rejectUnknown(obj, pointer, {"kind"});
    return VorticitySpec::zero();
  }
  if (kind == "constant") {
    rejectUnknown(obj, pointer, {"kind", "b"});
    if (!obj.contains("b")) badConfig(pointer + "/b", "missing");
    return VorticitySpec::constant(needNumber(obj, pointer, "b", 0.0));
  }
  if (kind == "affine") {
    rejectUnknown(obj, pointer, {"kind", "a", "b"});
    if (!obj.contains("a")) badConfig(pointer + "/a", "missing");
    if (!obj.contains("b")) badConfig(pointer + "/b", "missing");
    return VorticitySpec::affine(needNumber(obj, pointer, "a", 0.0),
                                 needNumber(obj, pointer, "b", 0.0));
  }
  if (kind == "samples") {
    rejectUnknown(obj, pointer, {"kind", "p", "omega"});
    for (const char* key : {"p", "omega"}) {
      if (!obj.contains(key)) badConfig(pointer + "/" + key, "missing");
      if (!obj.at(key).is_array()) {
        badConfig(pointer + "/" + key, "expected an array");
      }
    }
    std::vector<double> p, w;
    for (const json& x : obj.at("p")) {
      if (!x.is_number()) badConfig(pointer + "/p", "expected numbers");
      p.push_back(x.get<double>());
    }
    for (const json& x : obj.at("omega")) {
      if (!x.is_number()) badConfig(pointer + "/omega", "expected numbers");
      w.push_back(x.get<double>());
    }
    return VorticitySpec::samples(p, w);
  }
  badConfig(pointer + "/kind",
            "unknown kind '" + kind +
                "' (expected zero/constant/affine/samples)");
}

}  // namespace

RunConfig parse_config(const std::string& jsonText) {
  json root;
  try {
    root = json::parse(jsonText);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Validation, std::string("config: invalid JSON: ") +
                                    e.what());
  }
  if (!root.is_object()) fail(ErrorKind::Validation, "config: : expected an object");
  rejectUnknown(root, "",
                {"vorticity", "grid", "tolerances", "budgets", "slopeBoundM"});

  RunConfig cfg;
  if (root.contains("vorticity")) {
    cfg.vorticity = parseVorticity(root.at("vorticity"), "/vorticity");
  }
  if (root.contains("grid")) {
    const json& g = root.at("grid");
    if (!g.is_object()) badConfig("/grid", "expected an object");
    rejectUnknown(g, "/grid", {"Np", "Nq"});
    cfg.grid.np = needInteger(g, "/grid", "Np", cfg.grid.np);
    cfg.grid.nq = needInteger(g, "/grid", "Nq", cfg.grid.nq);
  }
  if (cfg.grid.np < 8) badConfig("/grid/Np", "must be at least 8");
  if (cfg.grid.nq < 8) badConfig("/grid/Nq", "must be at least 8");

  if (root.contains("tolerances")) {
    const json& t = root.at("tolerances");
    if (!t.is_object()) badConfig("/tolerances", "expected an object");
    rejectUnknown(t, "/tolerances", {"newton", "quadrature", "root"});
    cfg.tol.newton = needNumber(t, "/tolerances", "newton", cfg.tol.newton);
    cfg.tol.quadrature =
        needNumber(t, "/tolerances", "quadrature", cfg.tol.quadrature);
    cfg.tol.root = needNumber(t, "/tolerances", "root", cfg.tol.root);
  }
  if (!(cfg.tol.newton > 0)) badConfig("/tolerances/newton", "must be positive");
  if (!(cfg.tol.quadrature > 0)) {
    badConfig("/tolerances/quadrature", "must be positive");
  }
  if (!(cfg.tol.root > 0)) badConfig("/tolerances/root", "must be positive");

  if (root.contains("budgets")) {
    const json& b = root.at("budgets");
    if (!b.is_object()) badConfig("/budgets", "expected an object");
    rejectUnknown(b, "/budgets",
                  {"maxNewtonIters", "maxContinuationSteps", "lambdaCap"});
    cfg.budget.maxNewtonIters =
        needInteger(b, "/budgets", "maxNewtonIters", cfg.budget.maxNewtonIters);
    cfg.budget.maxContinuationSteps = needInteger(
        b, "/budgets", "maxContinuationSteps", cfg.budget.maxContinuationSteps);
    cfg.budget.lambdaCap =
        needNumber(b, "/budgets", "lambdaCap", cfg.budget.lambdaCap);
  }
  if (cfg.budget.maxNewtonIters < 1) {
    badConfig("/budgets/maxNewtonIters", "must be at least 1");
  }
  if (cfg.budget.maxContinuationSteps < 1) {
    badConfig("/budgets/maxContinuationSteps", "must be at least 1");
  }
  if (!(cfg.budget.lambdaCap > 0)) {
    badConfig("/budgets/lambdaCap", "must be positive");
  }

  cfg.slopeBoundM = needNumber(root, "", "slopeBoundM", cfg.slopeBoundM);
  if (!(cfg.slopeBoundM > 0)) badConfig("/slopeBoundM", "must be positive");

  // Construction validates sample arrays and reports the offending field.
  make_vorticity(cfg.vorticity);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorKind::Validation, "config: cannot open file " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  std::string vort;
  switch (cfg.vorticity.kind) {
    case VorticityKind::Zero:
      vort = "{\"kind\":\"zero\"}";
      break;
    case VorticityKind::Constant:
      vort = "{\"kind\":\"constant\",\"b\":" + fmt17(cfg.vorticity.b) + "}";
      break;
    case VorticityKind::Affine:
      vort = "{\"kind\":\"affine\",\"a\":" + fmt17(cfg.vorticity.a) +
             ",\"b\":" + fmt17(cfg.vorticity.b) + "}";
      break;
    case VorticityKind::Samples: {
      std::string p = "[", w = "[";
      for (size_t k = 0; k < cfg.vorticity.samplesP.size(); ++k) {
        if (k) { p += ","; w += ","; }
        p += fmt17(cfg.vorticity.samplesP[k]);
        w += fmt17(cfg.vorticity.samplesW[k]);
      }
      vort = "{\"kind\":\"samples\",\"p\":" + p + "],\"omega\":" + w + "]}";
      break;
    }
  }

  JsonDoc grid, tol, budget, doc;
  grid.integer("Np", cfg.grid.np).integer("Nq", cfg.grid.nq);
  tol.number("newton", cfg.tol.newton)
      .number("quadrature", cfg.tol.quadrature)
      .number("root", cfg.tol.root);
  budget.integer("maxNewtonIters", cfg.budget.maxNewtonIters)
      .integer("maxContinuationSteps", cfg.budget.maxContinuationSteps)
      .number("lambdaCap", cfg.budget.lambdaCap);
  doc.raw("vorticity", vort)
      .raw("grid", grid.str())
      .raw("tolerances", tol.str())
      .raw("budgets", budget.str())
      .number("slopeBoundM", cfg.slopeBoundM);
  return doc.str() + "\n";
}

}  // namespace cuspwave
