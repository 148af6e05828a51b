#include "geoflow/refinement.hpp"

#include <cmath>
#include <limits>

namespace geoflow {

double fit_slope(const std::vector<double>& h, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = 0; i < h.size() && i < err.size(); ++i) {
    if (!(err[i] > 0.0) || !(h[i] > 0.0)) continue;
    const double lx = std::log(h[i]), ly = std::log(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  const double den = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / den;
}

std::vector<double> pairwise_orders(const std::vector<double>& h, const std::vector<double>& err) {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < h.size() && i + 1 < err.size(); ++i)
    out.push_back(std::log(err[i] / err[i + 1]) / std::log(h[i] / h[i + 1]));
  return out;
}

}  // namespace geoflow
