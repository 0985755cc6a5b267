#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fsel/dataset.hpp"

namespace fsel::fixtures {

// Categorical dataset from integer codes; level names are the code digits.
Dataset categoricalDataset(const std::vector<std::string>& names, const std::vector<std::vector<int>>& features,
                           const std::vector<int>& klass);

Dataset numericDataset(const std::vector<std::string>& names, const std::vector<std::vector<double>>& features,
                       const std::vector<int>& klass);

Dataset regressionDataset(const std::vector<std::string>& names, const std::vector<std::vector<double>>& features,
                          const std::vector<double>& target);

// A perfect predictor, B independent.
Dataset dPerf();
// Class is A xor B.
Dataset dXor();
// Pattern A=0 is class-impure.
Dataset dInc();

struct RandomSpec {
  std::size_t min_features = 1;
  std::size_t max_features = 8;
  std::size_t min_rows = 2;
  std::size_t max_rows = 40;
  int max_levels = 3;
  int max_classes = 3;
  // Probability that a feature column is numeric (exercises discretization).
  double numeric_share = 0.0;
};

// Small random classification dataset. Every class level appears.
Dataset randomDataset(std::mt19937_64& gen, const RandomSpec& spec = {});

std::string dataPath(const std::string& file);
Dataset iris();
Dataset wine();

}  // namespace fsel::fixtures
