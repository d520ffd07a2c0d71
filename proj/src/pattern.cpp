#include "partialk/pattern.hpp"

#include <algorithm>

namespace partialk {

void MultiTypePattern::add_type(const std::string& label, Eigen::MatrixXd coords) {
  if (window_.dim() == 0) throw config_error("pattern: window not set");
  if (label.empty()) throw config_error("pattern: empty type label");
  if (has_type(label)) throw config_error("pattern: duplicate type label '" + label + "'");
  if (coords.size() > 0 && coords.cols() != window_.dim())
    throw config_error("pattern: coordinates for '" + label + "' have " +
                       std::to_string(coords.cols()) + " columns, window dimension is " +
                       std::to_string(window_.dim()));
  if (coords.size() == 0) coords.resize(0, window_.dim());
  for (Eigen::Index i = 0; i < coords.rows(); ++i)
    if (!window_.contains(coords.row(i)))
      throw config_error("pattern: point " + std::to_string(i) + " of type '" + label +
                         "' lies outside the window");
  labels_.push_back(label);
  points_.push_back(std::move(coords));
}

int MultiTypePattern::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  std::string known;
  for (const auto& l : labels_) known += (known.empty() ? "" : ", ") + l;
  throw config_error("pattern: unknown type '" + label + "' (known types: " + known + ")");
}

bool MultiTypePattern::has_type(const std::string& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

Eigen::Index MultiTypePattern::total_count() const {
  Eigen::Index n = 0;
  for (const auto& p : points_) n += p.rows();
  return n;
}

void MultiTypePattern::validate_simple() const {
  const Eigen::Index n = total_count();
  if (n < 2) return;
  const int d = dim();
  std::vector<Eigen::RowVectorXd> all;
  all.reserve(n);
  for (const auto& p : points_)
    for (Eigen::Index i = 0; i < p.rows(); ++i) all.push_back(p.row(i));
  std::sort(all.begin(), all.end(), [d](const auto& a, const auto& b) {
    for (int j = 0; j < d; ++j) {
      if (a(j) < b(j)) return true;
      if (a(j) > b(j)) return false;
    }
    return false;
  });
  for (size_t i = 1; i < all.size(); ++i)
    if (all[i] == all[i - 1])
      throw config_error("pattern: duplicate point locations violate simplicity");
}

MultiTypePattern MultiTypePattern::restricted_to(const std::vector<std::string>& labels) const {
  MultiTypePattern out(window_);
  for (const auto& l : labels) out.add_type(l, coords(index_of(l)));
  return out;
}

double IntensityEstimates::at(const std::string& label) const {
  for (size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return lambda(static_cast<Eigen::Index>(i));
  throw config_error("intensities: unknown type '" + label + "'");
}

IntensityEstimates estimate_intensities(const MultiTypePattern& pattern) {
  IntensityEstimates est;
  est.labels = pattern.labels();
  est.window_volume = pattern.window().volume();
  est.lambda.resize(pattern.n_types());
  for (int i = 0; i < pattern.n_types(); ++i)
    est.lambda(i) = static_cast<double>(pattern.count(i)) / est.window_volume;
  return est;
}

}  // namespace partialk
