#pragma once

#include <vector>

namespace geoflow {

/// Least-squares slope of log(err) against log(h). Levels with err == 0 are
/// skipped; returns NaN when fewer than two usable levels remain.
double fit_slope(const std::vector<double>& h, const std::vector<double>& err);

/// Pairwise observed orders log(e_i/e_{i+1}) / log(h_i/h_{i+1}).
std::vector<double> pairwise_orders(const std::vector<double>& h, const std::vector<double>& err);

}  // namespace geoflow
