#pragma once

#include <optional>
#include <vector>

#include "stefanrad/discretization.hpp"

namespace stefanrad {

/// Nodal temperature values on a grid. values[0] is the boundary value.
struct Profile {
  Grid grid;
  std::vector<double> values;
  double boundary_value = 0.0;
  std::optional<double> f_inf_estimate;

  std::size_t size() const noexcept { return values.size(); }
  double at(double y) const { return interpolate(grid, values, y); }
};

/// Profile with every node set to value.
Profile constant_profile(const Grid& grid, double value);

double boundary_derivative(const Profile& p);

}  // namespace stefanrad
