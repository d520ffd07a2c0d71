#include "partialk/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <vector>

#include "partialk/errors.hpp"

namespace partialk {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    throw config_error("config key '" + key + "': cannot parse number '" + s + "'");
  return v;
}

long parse_long(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size())
    throw config_error("config key '" + key + "': cannot parse integer '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

Eigen::VectorXd parse_vector(const std::string& key, const std::string& s) {
  const std::vector<std::string> parts = split(s, ',');
  Eigen::VectorXd v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = parse_double(key, parts[i]);
  return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
  const std::string t = trim(s);
  if (t == "on" || t == "true" || t == "1" || t == "yes") return true;
  if (t == "off" || t == "false" || t == "0" || t == "no") return false;
  throw config_error("config key '" + key + "': expected on/off, got '" + s + "'");
}

}  // namespace

void apply_config_entry(EstimationConfig& cfg, const std::string& raw_key,
                        const std::string& value) {
  const std::string key = trim(raw_key);
  if (key == "tapers") {
    const long m = parse_long(key, value);
    if (m < 1) throw config_error("config key 'tapers': must be at least 1");
    cfg.n_tapers = static_cast<int>(m);
  } else if (key == "kmax") {
    cfg.kmax = parse_vector(key, value);
    if ((cfg.kmax.array() <= 0.0).any())
      throw config_error("config key 'kmax': entries must be positive");
  } else if (key == "spacing") {
    cfg.spacing = parse_vector(key, value);
    if ((cfg.spacing.array() <= 0.0).any())
      throw config_error("config key 'spacing': entries must be positive");
  } else if (key == "radial_spacing") {
    cfg.radial_spacing = parse_double(key, value);
    if (cfg.radial_spacing < 0.0)
      throw config_error("config key 'radial_spacing': must be nonnegative");
  } else if (key == "radial_kappa_max") {
    cfg.radial_kappa_max = parse_double(key, value);
    if (cfg.radial_kappa_max < 0.0)
      throw config_error("config key 'radial_kappa_max': must be nonnegative");
  } else if (key == "bandwidth") {
    cfg.bandwidth = parse_double(key, value);
    if (cfg.bandwidth < 0.0)
      throw config_error("config key 'bandwidth': must be nonnegative");
  } else if (key == "route") {
    const std::string r = trim(value);
    if (r != "rotational" && r != "direct")
      throw config_error("config key 'route': expected rotational or direct");
    cfg.route = r;
  } else if (key == "partial_route") {
    const std::string r = trim(value);
    if (r != "schur" && r != "fast")
      throw config_error("config key 'partial_route': expected schur or fast");
    cfg.partial_route = r;
  } else if (key == "debias") {
    cfg.debias = parse_bool(key, value);
  } else if (key == "radii") {
    const std::vector<std::string> parts = split(trim(value), ':');
    if (parts.size() != 3)
      throw config_error("config key 'radii': expected start:stop:count");
    RadiiSpec spec;
    spec.start = parse_double(key, parts[0]);
    spec.stop = parse_double(key, parts[1]);
    spec.count = static_cast<int>(parse_long(key, parts[2]));
    spec.nodes();  // validates
    cfg.radii = spec;
  } else if (key == "max_nodes") {
    const long n = parse_long(key, value);
    if (n < 1) throw config_error("config key 'max_nodes': must be at least 1");
    cfg.max_nodes = n;
  } else {
    throw config_error("unknown config key '" + key + "'");
  }
}

EstimationConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  EstimationConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw config_error(path + ":" + std::to_string(lineno) +
                         ": expected key = value");
    try {
      apply_config_entry(cfg, body.substr(0, eq), body.substr(eq + 1));
    } catch (const config_error& e) {
      throw config_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

}  // namespace partialk
