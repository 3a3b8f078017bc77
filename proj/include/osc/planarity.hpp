#ifndef OSC_PLANARITY_HPP
#define OSC_PLANARITY_HPP

#include <utility>
#include <vector>

#include "osc/core.hpp"

namespace osc {

/// Planarity of a simple undirected graph (Boyer-Myrvold edge addition).
bool is_planar(int n, const std::vector<std::pair<int, int>>& edges);

bool is_planar(const IsingInstance& instance);

}  // namespace osc

#endif  // OSC_PLANARITY_HPP
