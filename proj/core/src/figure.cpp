#include "fragtree/figure.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fragtree/fragmentation.hpp"

namespace fragtree {

PlaneTree figure_tree() {
  return PlaneTree::from_child_counts({3, 2, 0, 3, 0, 0, 0, 1, 0, 4, 0, 1, 2, 0, 0, 0, 0});
}

EdgeWeights figure_weights() {
  return EdgeWeights::from_values({0.0, 0.70, 0.59, 0.98, 0.38, 0.12, 0.25, 0.77, 0.43, 0.93,
                                   0.88, 0.29, 0.31, 0.62, 0.17, 0.81, 0.55});
}

std::string format_double(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, x);
  if (result.ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf, result.ptr);
}

std::string figure_tree_csv() {
  const auto tree = figure_tree();
  const auto weights = figure_weights();
  const auto order = prim_order(tree, weights);
  std::ostringstream out;
  out << "vertex,parent,children,weight,prim_rank\n";
  for (Vertex v = 0; v < tree.size(); ++v) {
    out << v << ',';
    if (v > 0) out << tree.parent(v);
    out << ',' << tree.child_count(v) << ',';
    if (v > 0) out << format_double(weights[v]);
    out << ',' << order.rank[static_cast<std::size_t>(v)] << '\n';
  }
  return out.str();
}

std::string figure_paths_csv() {
  const auto tree = figure_tree();
  const auto weights = figure_weights();
  const auto lex = lukasiewicz_of(tree);
  const auto prim = prim_path(tree, weights);
  const auto frag = frag_prim_path(tree, weights, kFigureThreshold);
  std::ostringstream out;
  out << "k,lukasiewicz,prim,frag_prim_s0.92\n";
  for (std::size_t k = 0; k < lex.values.size(); ++k) {
    out << k << ',' << lex.values[k] << ',' << prim.values[k] << ',' << frag.values[k] << '\n';
  }
  return out.str();
}

std::string figure_masses_csv() {
  const auto tree = figure_tree();
  const auto weights = figure_weights();
  const auto path = frag_prim_path(tree, weights, kFigureThreshold);
  const auto masses = ranked_masses(ladder_components(path), tree.size());
  std::ostringstream out;
  out << "rank,size,total,mass\n";
  for (std::size_t i = 0; i < masses.count(); ++i) {
    out << i + 1 << ',' << masses.sizes()[i] << ',' << masses.total() << ','
        << format_double(masses.mass(i)) << '\n';
  }
  return out.str();
}

void write_figure_fixture(const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto write = [&](const char* name, const std::string& body) {
    std::ofstream file(dir / name, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + (dir / name).string());
    file << body;
  };
  write("tree.csv", figure_tree_csv());
  write("paths.csv", figure_paths_csv());
  write("masses.csv", figure_masses_csv());
}

}  // namespace fragtree
