#include "partialk/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace partialk {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_num(const std::string& tok, const std::string& path, std::size_t line) {
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != trim(tok).size() && used != tok.size())
      throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw config_error(path + ":" + std::to_string(line) + ": bad number '" + tok + "'");
  }
}

}  // namespace

Eigen::VectorXd RadiiSpec::nodes() const {
  if (count < 1) throw config_error("radii count must be at least 1");
  if (!(start >= 0.0)) throw config_error("radii must start at a nonnegative value");
  if (count > 1 && !(stop > start))
    throw config_error("radii stop must exceed start");
  if (count == 1) {
    Eigen::VectorXd r(1);
    r(0) = start;
    return r;
  }
  return Eigen::VectorXd::LinSpaced(count, start, stop);
}

void write_curve_csv(const std::string& path, const SummaryCurve& curve) {
  if (curve.value.size() != curve.r.size())
    throw config_error("curve value length does not match radii");
  std::ofstream out(path);
  if (!out) throw config_error("cannot open '" + path + "' for writing");
  if (!curve.statistic.empty()) out << "# statistic: " << curve.statistic << "\n";
  if (!curve.targets.empty()) out << "# targets: " << join(curve.targets) << "\n";
  if (!curve.covariates.empty()) out << "# covariates: " << join(curve.covariates) << "\n";
  if (!curve.route.empty()) out << "# route: " << curve.route << "\n";
  if (curve.dimension > 0) out << "# dimension: " << curve.dimension << "\n";
  if (curve.n_tapers > 0)
    out << "# tapers: " << curve.n_tapers << (curve.debiased ? " debiased" : "") << "\n";
  const bool band = curve.has_band();
  out << (band ? "r,value,lo,hi" : "r,value") << "\n";
  char buf[128];
  for (Eigen::Index i = 0; i < curve.r.size(); ++i) {
    if (band)
      std::snprintf(buf, sizeof buf, "%.15g,%.15g,%.15g,%.15g\n", curve.r(i),
                    curve.value(i), curve.lo(i), curve.hi(i));
    else
      std::snprintf(buf, sizeof buf, "%.15g,%.15g\n", curve.r(i), curve.value(i));
    out << buf;
  }
  if (!out) throw config_error("write failed for '" + path + "'");
}

SummaryCurve read_curve_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open curve file '" + path + "'");
  SummaryCurve curve;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  bool band = false;
  std::vector<double> r, v, lo, hi;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      std::string body = trim(t.substr(1));
      auto colon = body.find(':');
      if (colon == std::string::npos) continue;
      std::string key = trim(body.substr(0, colon));
      std::string val = trim(body.substr(colon + 1));
      if (key == "statistic") curve.statistic = val;
      else if (key == "targets") curve.targets = split(val, ',');
      else if (key == "covariates") curve.covariates = split(val, ',');
      else if (key == "route") curve.route = val;
      else if (key == "dimension") curve.dimension = std::atoi(val.c_str());
      else if (key == "tapers") {
        std::istringstream ss(val);
        ss >> curve.n_tapers;
        std::string flag;
        ss >> flag;
        curve.debiased = (flag == "debiased");
      }
      continue;
    }
    if (!header_seen) {
      std::string h = t;
      h.erase(std::remove(h.begin(), h.end(), ' '), h.end());
      if (h == "r,value") band = false;
      else if (h == "r,value,lo,hi") band = true;
      else
        throw config_error(path + ":" + std::to_string(lineno) +
                           ": expected header 'r,value' or 'r,value,lo,hi'");
      header_seen = true;
      continue;
    }
    auto toks = split(t, ',');
    if (toks.size() != (band ? 4u : 2u))
      throw config_error(path + ":" + std::to_string(lineno) + ": expected " +
                         std::to_string(band ? 4 : 2) + " fields");
    r.push_back(parse_num(toks[0], path, lineno));
    v.push_back(parse_num(toks[1], path, lineno));
    if (band) {
      lo.push_back(parse_num(toks[2], path, lineno));
      hi.push_back(parse_num(toks[3], path, lineno));
    }
  }
  if (!header_seen) throw config_error(path + ": missing curve header");
  auto to_vec = [](const std::vector<double>& x) {
    return Eigen::Map<const Eigen::VectorXd>(x.data(), Eigen::Index(x.size())).eval();
  };
  curve.r = to_vec(r);
  curve.value = to_vec(v);
  if (band) {
    curve.lo = to_vec(lo);
    curve.hi = to_vec(hi);
  }
  return curve;
}

}  // namespace partialk
