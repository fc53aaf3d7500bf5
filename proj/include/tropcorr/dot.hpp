#pragma once

// Graphviz export. Legs are leaf nodes; internal vertices are small circles.

#include <string>

#include "tropcorr/hurwitz.hpp"
#include "tropcorr/trees.hpp"
#include "tropcorr/tropical.hpp"

namespace tropcorr {

std::string dot_tree(const MarkedTree& tree);
/// Internal edges are labelled with their lengths.
std::string dot_curve(const ConePoint& point);
/// Two layers: T2 on top, T1 below, dashed arrows for the vertex map.
/// T2 edges are labelled "deg k".
std::string dot_type(const CombinatorialType& type);

}  // namespace tropcorr
