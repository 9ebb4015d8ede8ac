#pragma once

#include <filesystem>
#include <string>

#include "fragtree/gwtree.hpp"
#include "fragtree/prim.hpp"

namespace fragtree {

/// The 17-vertex worked example: a plane tree with distinct edge weights
/// whose fragmentation at s = 0.92 removes the edges weighted .93 and .98.
PlaneTree figure_tree();
EdgeWeights figure_weights();
inline constexpr double kFigureThreshold = 0.92;

/// CSV renderings of the worked example.
std::string figure_tree_csv();
std::string figure_paths_csv();
std::string figure_masses_csv();

/// Writes tree.csv, paths.csv and masses.csv into `dir`, creating it.
void write_figure_fixture(const std::filesystem::path& dir);

/// Shortest decimal string that round-trips to `x`.
std::string format_double(double x);

}  // namespace fragtree
