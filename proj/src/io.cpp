#include "fraclattice/io.hpp"

#include <cstdio>

#include "fraclattice/errors.hpp"

namespace fraclattice {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_paths_csv(std::ostream& out, const std::vector<IncrementSeries>& samples) {
  out << "sample,k,t,increment,path\n";
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& series = samples[s];
    if (series.path.size() != series.increments.size())
      throw DimensionError("write_paths_csv: path/increment length mismatch");
    for (std::size_t k = 0; k < series.increments.size(); ++k)
      out << s << ',' << k << ',' << format_double(series.time_at(k)) << ','
          << format_double(series.increments[k]) << ','
          << format_double(series.path[k]) << '\n';
  }
  if (!out) throw IoError("write_paths_csv: stream write failed");
}

void write_cov_csv(std::ostream& out, const Eigen::MatrixXd& cov) {
  out << "i,j,value\n";
  for (Eigen::Index i = 0; i < cov.rows(); ++i)
    for (Eigen::Index j = 0; j < cov.cols(); ++j)
      out << i << ',' << j << ',' << format_double(cov(i, j)) << '\n';
  if (!out) throw IoError("write_cov_csv: stream write failed");
}

void write_stats_csv(std::ostream& out, const std::vector<StatRow>& rows) {
  out << "quantity,param,value,stderr\n";
  for (const auto& r : rows)
    out << r.quantity << ',' << r.param << ',' << format_double(r.value) << ','
        << format_double(r.stderr_value) << '\n';
  if (!out) throw IoError("write_stats_csv: stream write failed");
}

}  // namespace fraclattice
