#pragma once

#include <cstdint>
#include <vector>

#include "cachenet/model.hpp"
#include "cachenet/rng.hpp"

namespace cachenet {

// Piece of one item's fractional mass laid onto a cache slot: slots are unit
// rows, items are packed head to tail in ascending index and wrap into the
// next row when a row fills.
struct PlacementSegment {
  int item = 0;
  int row = 0;
  double begin = 0.0, end = 0.0;  // within [0, 1)
};

struct NodePlan {
  int node = 0;
  int rows = 0;  // free slots
  std::vector<PlacementSegment> segments;
};

// Cut-and-wrap layout of one node's fractional placements.  Throws
// std::invalid_argument when the fractional mass exceeds the free slots.
NodePlan build_plan(const Instance& inst, const Strategy& s, int node);

// Items picked by offset tau in [0,1): one per occupied row.  An item with
// mass under 1 never lands twice, so at most `rows` distinct items result.
std::vector<int> sample_plan(const NodePlan& plan, double tau);

// total mass per item in the plan; equals the fractional y by construction,
// making the single-offset draw exact in expectation
std::vector<double> plan_coverage(const NodePlan& plan, int items);

// One rounding of the whole network: an independent offset per node, pinned
// server copies always present.  Returns per-node sorted item lists.
std::vector<std::vector<int>> sample_placement(const Instance& inst, const Strategy& s, Rng& rng);

struct LoadEstimate {
  Eigen::VectorXd mean;      // simulated response load per edge id
  Eigen::VectorXd expected;  // fluid loads of the fractional strategy
  int periods = 0;
};

// Re-rounds every node each period and routes each class's admitted rate up
// to its first cached copy.  requests_per_period 0 accounts the rates as
// fluid; a positive count draws that many request events per period with
// rate-proportional class weights instead.
LoadEstimate monte_carlo_load(const Instance& inst, const Strategy& s, int periods,
                              int requests_per_period, std::uint64_t seed);

}  // namespace cachenet
