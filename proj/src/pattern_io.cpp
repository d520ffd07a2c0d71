#include "partialk/pattern_io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace partialk {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    size_t a = field.find_first_not_of(" \t\r");
    size_t b = field.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
  }
  return out;
}

int header_dim(const std::vector<std::string>& fields) {
  static const std::vector<std::vector<std::string>> layouts = {
      {"x", "type"}, {"x", "y", "type"}, {"x", "y", "z", "type"}};
  for (size_t d = 0; d < layouts.size(); ++d)
    if (fields == layouts[d]) return static_cast<int>(d) + 1;
  return 0;
}

double parse_number(const std::string& s, int line_no) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size() || s.empty())
    throw config_error("csv line " + std::to_string(line_no) + ": bad number '" + s + "'");
  return v;
}

}  // namespace

MultiTypePattern load_pattern_csv(const std::string& path, std::optional<Window> window) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open pattern file '" + path + "'");

  std::string line;
  int line_no = 0;
  int dim = 0;
  std::optional<Window> file_window;
  std::vector<std::string> order;
  std::map<std::string, std::vector<Eigen::RowVectorXd>> by_type;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      size_t pos = line.find("window:");
      if (pos != std::string::npos) {
        std::stringstream ss(line.substr(pos + 7));
        std::vector<double> vals;
        double v;
        while (ss >> v) vals.push_back(v);
        if (vals.empty() || vals.size() % 2 != 0 || vals.size() > 6)
          throw config_error("csv line " + std::to_string(line_no) + ": malformed window comment");
        Eigen::VectorXd lo(vals.size() / 2), hi(vals.size() / 2);
        for (size_t j = 0; j < vals.size() / 2; ++j) {
          lo(j) = vals[2 * j];
          hi(j) = vals[2 * j + 1];
        }
        file_window = Window(lo, hi);
      }
      continue;
    }
    auto fields = split_csv(line);
    if (dim == 0) {
      dim = header_dim(fields);
      if (dim == 0)
        throw config_error("csv line " + std::to_string(line_no) +
                           ": expected header 'x,type', 'x,y,type' or 'x,y,z,type'");
      continue;
    }
    if (static_cast<int>(fields.size()) != dim + 1)
      throw config_error("csv line " + std::to_string(line_no) + ": expected " +
                         std::to_string(dim + 1) + " fields, got " +
                         std::to_string(fields.size()));
    Eigen::RowVectorXd x(dim);
    for (int j = 0; j < dim; ++j) x(j) = parse_number(fields[j], line_no);
    const std::string& label = fields.back();
    if (label.empty())
      throw config_error("csv line " + std::to_string(line_no) + ": empty type label");
    if (!by_type.count(label)) order.push_back(label);
    by_type[label].push_back(x);
  }
  if (dim == 0) throw config_error("pattern file '" + path + "' has no header row");

  std::optional<Window> w = window ? window : file_window;
  if (!w)
    throw config_error("pattern file '" + path +
                       "' has no window comment and no window was supplied");
  if (w->dim() != dim)
    throw config_error("pattern file '" + path + "': window dimension " +
                       std::to_string(w->dim()) + " does not match data dimension " +
                       std::to_string(dim));

  MultiTypePattern pattern(*w);
  for (const auto& label : order) {
    const auto& rows = by_type[label];
    Eigen::MatrixXd coords(rows.size(), dim);
    for (size_t i = 0; i < rows.size(); ++i) coords.row(i) = rows[i];
    pattern.add_type(label, std::move(coords));
  }
  pattern.validate_simple();
  return pattern;
}

void write_pattern_csv(const MultiTypePattern& pattern, const std::string& path,
                       const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot write pattern file '" + path + "'");
  const int d = pattern.dim();
  char buf[64];
  out << "# window:";
  for (int j = 0; j < d; ++j) {
    std::snprintf(buf, sizeof(buf), " %.15g %.15g", pattern.window().lo()(j),
                  pattern.window().hi()(j));
    out << buf;
  }
  out << "\n";
  if (!comment.empty()) out << "# " << comment << "\n";
  out << (d == 1 ? "x,type" : d == 2 ? "x,y,type" : "x,y,z,type") << "\n";
  for (int t = 0; t < pattern.n_types(); ++t) {
    const auto& coords = pattern.coords(t);
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
      for (int j = 0; j < d; ++j) {
        std::snprintf(buf, sizeof(buf), "%.15g,", coords(i, j));
        out << buf;
      }
      out << pattern.label(t) << "\n";
    }
  }
  if (!out) throw config_error("failed while writing pattern file '" + path + "'");
}

}  // namespace partialk
