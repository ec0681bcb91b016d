#pragma once

#include <cstdint>
#include <string>

#include "cachenet/model.hpp"

namespace cachenet {

// Standard test topologies.  All return connected symmetric graphs.
Graph cycle_graph(int n);
// clique on 0..m-1 with a path of m extra nodes hanging off node m-1
Graph lollipop_graph(int m);
// complete b-ary tree of the given height; leaves sit `height` hops below
// the root, so tree_graph(2, 5) has 63 nodes
Graph tree_graph(int branching, int height);
Graph grid_graph(int rows, int cols);
Graph hypercube_graph(int dim);
// grid plus one random long-range contact per node, contact drawn with
// probability proportional to 1/d^2 over grid distance d >= 2
Graph small_world_graph(int rows, int cols, std::uint64_t seed);
// G(n,p), redrawn until connected
Graph erdos_renyi_graph(int n, double p, std::uint64_t seed);

// Edge-list file: "n m" header line, then m undirected "u v" lines.
// Lines starting with '#' are skipped.
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

// Named lookup used by the CLI: "cycle:30", "lollipop:15", "tree:2:5",
// "grid:8:8", "hypercube:6", "smallworld:8:8", "er:50:0.1", or a file path.
Graph topology_from_spec(const std::string& spec, std::uint64_t seed);

}  // namespace cachenet
