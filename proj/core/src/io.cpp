#include "cuspwave/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cuspwave/errors.hpp"

namespace cuspwave {

std::string fmt17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      fail(ErrorKind::Validation, "cannot open " + tmp.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out) fail(ErrorKind::Validation, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fail(ErrorKind::Validation,
         "cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

JsonDoc& JsonDoc::number(const std::string& key, double value) {
  // JSON has no literal for infinities; quote the fmt17 spelling.
  std::string s = fmt17(value);
  if (std::isfinite(value)) {
    fields_.emplace_back(key, s);
  } else {
    fields_.emplace_back(key, "\"" + s + "\"");
  }
  return *this;
}

JsonDoc& JsonDoc::integer(const std::string& key, long long value) {
  fields_.emplace_back(key, std::to_string(value));
  return *this;
}

JsonDoc& JsonDoc::boolean(const std::string& key, bool value) {
  fields_.emplace_back(key, value ? "true" : "false");
  return *this;
}

JsonDoc& JsonDoc::text(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, json_quote(value));
  return *this;
}

JsonDoc& JsonDoc::raw(const std::string& key, const std::string& json) {
  fields_.emplace_back(key, json);
  return *this;
}

JsonDoc& JsonDoc::numberArray(const std::string& key,
                              const std::vector<double>& xs) {
  std::string out = "[";
  for (size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ",";
    if (std::isfinite(xs[k])) {
      out += fmt17(xs[k]);
    } else {
      out += "\"" + fmt17(xs[k]) + "\"";
    }
  }
  out += "]";
  fields_.emplace_back(key, out);
  return *this;
}

JsonDoc& JsonDoc::textArray(const std::string& key,
                            const std::vector<std::string>& xs) {
  std::string out = "[";
  for (size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ",";
    out += json_quote(xs[k]);
  }
  out += "]";
  fields_.emplace_back(key, out);
  return *this;
}

std::string JsonDoc::str() const {
  std::string out = "{";
  for (size_t k = 0; k < fields_.size(); ++k) {
    if (k) out += ",";
    out += "\"" + fields_[k].first + "\":" + fields_[k].second;
  }
  out += "}";
  return out;
}

namespace {

const char* kindName(WaveKind k) {
  switch (k) {
    case WaveKind::Stream: return "stream";
    case WaveKind::Stokes: return "stokes";
    case WaveKind::SolitaryApprox: return "solitary-approx";
  }
  return "stokes";
}

WaveKind kindFromName(const std::string& s) {
  if (s == "stream") return WaveKind::Stream;
  if (s == "stokes") return WaveKind::Stokes;
  if (s == "solitary-approx") return WaveKind::SolitaryApprox;
  fail(ErrorKind::Validation, "wave csv: unknown kind '" + s + "'");
}

}  // namespace

std::string wave_to_csv(const WaveGrid& g) {
  std::string out;
  out.reserve(size_t(g.nq + 1) * (g.np + 1) * 40 + 200);
  out += "# kind=";
  out += kindName(g.kind);
  out += "\n# r=" + fmt17(g.r);
  out += "\n# Lambda=" + fmt17(g.Lambda);
  out += "\n# nq=" + std::to_string(g.nq);
  out += "\n# np=" + std::to_string(g.np);
  out += "\nq,p,h\n";
  for (int i = 0; i <= g.nq; ++i) {
    double q = g.qhat(i) * g.Lambda;
    for (int j = 0; j <= g.np; ++j) {
      out += fmt17(q);
      out += ',';
      out += fmt17(g.p(j));
      out += ',';
      out += fmt17(g.at(i, j));
      out += '\n';
    }
  }
  return out;
}

WaveGrid wave_from_csv(const std::string& content) {
  std::map<std::string, std::string> meta;
  std::vector<double> h;
  std::istringstream in(content);
  std::string line;
  bool sawHeader = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(1);
      size_t start = body.find_first_not_of(' ');
      size_t eq = body.find('=');
      if (start == std::string::npos || eq == std::string::npos || eq < start) {
        fail(ErrorKind::Validation, "wave csv: bad metadata line '" + line + "'");
      }
      meta[body.substr(start, eq - start)] = body.substr(eq + 1);
      continue;
    }
    if (!sawHeader) {
      if (line != "q,p,h") {
        fail(ErrorKind::Validation,
             "wave csv: expected header 'q,p,h', got '" + line + "'");
      }
      sawHeader = true;
      continue;
    }
    size_t c1 = line.find(',');
    size_t c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      fail(ErrorKind::Validation, "wave csv: bad data row '" + line + "'");
    }
    h.push_back(std::strtod(line.c_str() + c2 + 1, nullptr));
  }
  for (const char* key : {"kind", "r", "Lambda", "nq", "np"}) {
    if (!meta.count(key)) {
      fail(ErrorKind::Validation,
           std::string("wave csv: missing metadata '") + key + "'");
    }
  }
  WaveGrid g;
  g.kind = kindFromName(meta["kind"]);
  g.r = std::strtod(meta["r"].c_str(), nullptr);
  g.Lambda = std::strtod(meta["Lambda"].c_str(), nullptr);
  g.nq = std::atoi(meta["nq"].c_str());
  g.np = std::atoi(meta["np"].c_str());
  if (g.nq < 2 || g.np < 3) {
    fail(ErrorKind::Validation, "wave csv: grid too small");
  }
  if (h.size() != size_t(g.nq + 1) * (g.np + 1)) {
    fail(ErrorKind::Validation,
         "wave csv: row count " + std::to_string(h.size()) + " does not match " +
             std::to_string(size_t(g.nq + 1) * (g.np + 1)));
  }
  g.h = std::move(h);
  return g;
}

WaveGrid load_wave_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Validation, "cannot open wave csv " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return wave_from_csv(ss.str());
}

}  // namespace cuspwave
