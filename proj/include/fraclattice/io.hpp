#pragma once

#include <Eigen/Dense>
#include <ostream>
#include <string>
#include <vector>

#include "fraclattice/fbm.hpp"

namespace fraclattice {

// Doubles are printed with %.17g everywhere so CSV survives a text
// round trip bit for bit.
std::string format_double(double v);

// Schema: sample,k,t,increment,path with one row per increment per sample.
void write_paths_csv(std::ostream& out, const std::vector<IncrementSeries>& samples);

// Schema: i,j,value.
void write_cov_csv(std::ostream& out, const Eigen::MatrixXd& cov);

struct StatRow {
  std::string quantity;
  std::string param;
  double value = 0.0;
  double stderr_value = 0.0;
};

// Schema: quantity,param,value,stderr.
void write_stats_csv(std::ostream& out, const std::vector<StatRow>& rows);

}  // namespace fraclattice
