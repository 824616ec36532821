#pragma once

#include <vector>

#include "minkprobe/polytope.hpp"

namespace minkprobe {

struct DirectionalGap {
  Vec direction;
  double gap = 0.0;  // h_K(u) - h_L(u)
};

// Every direction at which |h_K - h_L| can attain a local maximum on the
// sphere: facet normals, critical points inside the cells of the common
// refinement of both normal fans, on their arcs and at arc crossings; plus a
// uniform net. Gaps are evaluated exactly.
std::vector<DirectionalGap> critical_gaps(const Polytope& K, const Polytope& L);

struct HausdorffResult {
  double value = 0.0;
  Vec direction = Vec::UnitX();
};

// d_H(K, L) = sup_u |h_K(u) - h_L(u)|.
HausdorffResult hausdorff_detail(const Polytope& K, const Polytope& L);
double hausdorff(const Polytope& K, const Polytope& L);

struct TranslationFit {
  double value = 0.0;          // verified d_H(K + translation, L)
  Vec translation = Vec::Zero();
  double lp_bound = 0.0;       // Chebyshev LP value on the final direction set
  int iterations = 0;
};

// min over x of d_H(K + x, L): Chebyshev LP over a growing direction set,
// each candidate translation verified with hausdorff().
TranslationFit min_translate_hausdorff(const Polytope& K, const Polytope& L);

}  // namespace minkprobe
