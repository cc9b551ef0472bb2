#pragma once

#include <functional>
#include <vector>

#include "forge/contour.hpp"

namespace forge {

// Phase-continuous square root of a function sampled along a closed contour.
//
// Values are chosen node to node so the phase increment stays below pi/2
// by refinement; a half-turn sign flip between neighbouring nodes therefore
// cannot hide. The track closes up whenever the argument winds an even
// number of times, which holds for all integrands used here.
struct BranchTrack {
  std::vector<cx> values;   // sqrt samples at contour nodes
  int sign_token = +1;      // flips all values; products of two tracks are
                            // independent of it
};

// Track sqrt(g) along `c`. If `seed` is given it fixes the value at node 0
// (must square to g(node 0)); otherwise the value with Re > 0 (Im > 0 as a
// tie-break) is taken.
//
// Throws BranchCutOnContour when |g| dips below `vanish_tol` * max|g|,
// ResolutionError when the phase step between adjacent nodes exceeds pi/2
// (contour too coarse for the integrand), NumericalError when the track
// fails to close up.
BranchTrack branch_sqrt_track(const std::function<cx(cx)>& g, const Contour& c,
                              const cx* seed = nullptr,
                              double vanish_tol = 1e-9);

// Track the square root of a pointwise product of factors; equivalent to
// branch_sqrt_track of the product but documents intent at call sites.
BranchTrack branch_sqrt_product(const std::vector<std::function<cx(cx)>>& factors,
                                const Contour& c, const cx* seed = nullptr);

// Continue sqrt(g) along the segment from z0 (where the root value is w0,
// w0^2 = g(z0)) to z1, adaptively subdividing so each step moves the phase
// by less than pi/2. Returns the continued root at z1.
cx sqrt_continue(const std::function<cx(cx)>& g, cx z0, cx w0, cx z1,
                 int max_depth = 24);

// The canonical single-valued branch of sqrt((z^2 - r)(z^2 - s)) on the
// annulus |sqrt r| < |z| < |sqrt s|, as the product of
//   z sqrt(1 - r/z^2)  and  i sqrt(s) sqrt(1 - z^2/s)
// with principal square roots; both arguments sit in the right half-plane,
// so the branch is analytic in z and smooth in (r, s).
cx canonical_w(cx z, cx r, cx s);

}  // namespace forge
