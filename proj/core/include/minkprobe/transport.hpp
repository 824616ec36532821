#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

namespace minkprobe {

struct TransportFlow {
  int source;
  int sink;
  double amount;
};

struct TransportPlan {
  double cost = 0.0;
  std::vector<TransportFlow> flows;  // basic cells, zero flows included
  long iterations = 0;
};

// Balanced transportation problem solved with the transportation simplex
// (northwest-corner start, u-v potentials for pricing). `cost` is
// supply.size() x demand.size(). Supplies and demands must be non-negative
// and have equal totals up to rounding.
TransportPlan solve_transport(std::span<const double> supply, std::span<const double> demand,
                              const Eigen::MatrixXd& cost);

}  // namespace minkprobe
