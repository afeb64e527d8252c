#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "sessrank/features.hpp"
#include "sessrank/ltr/tree.hpp"

namespace sessrank::ltr {

struct LtrModel {
  Schema schema = Schema::atm;
  std::size_t feature_count = 0;
  double shrinkage = 0.1;
  std::vector<RegressionTree> trees;

  friend bool operator==(const LtrModel&, const LtrModel&) = default;
};

// Shrinkage-weighted sum of tree outputs, accumulated in tree order.
// Throws Error(schema_mismatch) when the width differs from feature_count.
double predict(const LtrModel& model, std::span<const double> values);
double predict(const LtrModel& model, const FeatureVector& vector);

// Text format:
//
//   lambdamart v1 features=8 trees=2 shrinkage=0.1
//   schema atm
//   (split 3 0.75 (leaf -1.2) (leaf 0.8))
//   (leaf 0)
//
// Numbers are written in shortest round-trip form, so a reloaded model makes
// bit-identical predictions.
void save_model(const LtrModel& model, std::ostream& out);
void save_model(const LtrModel& model, const std::string& path);

// Throws Error(unsupported_version) or Error(corrupt_model).
LtrModel load_model(std::istream& in);
LtrModel load_model(const std::string& path);

}  // namespace sessrank::ltr
