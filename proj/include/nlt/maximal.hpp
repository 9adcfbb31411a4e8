#pragma once
// Centered Hardy-Littlewood maximal function on the periodic grid.
//
// Intervals are node windows of 2R+1 points, R in {0, 1, 2, 4, ..., N/2 - 1}.
// R = 0 is the point value itself, so Mf >= |f| holds exactly.

#include <cstddef>
#include <vector>

#include "nlt/field.hpp"

namespace nlt {

std::vector<std::size_t> maximal_radii(const Grid& g);

/// Periodic average of f over the 2R+1 nodes centered at each node.
Field window_average(const Field& f, std::size_t radius);

/// max over maximal_radii of window_average(|f|).
Field maximal_function(const Field& f);

}  // namespace nlt
