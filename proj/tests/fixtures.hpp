#pragma once

#include <complex>

#include "forge/holo.hpp"

// Shared seed fixtures. The linear and rational_d2 seeds generate the same
// hyperbolic-type metric through two different pipelines; the Fubini-Study
// seed exercises densities with genuine branch cuts on the unit circle.

inline forge::HoloData linear_seed(bool reality = true) {
  using namespace forge;
  return make_holo(TauSpec{TauKind::Linear, cx{-1, 0}},
                   {parse("z"), parse("i*z")}, 10.0, reality);
}

inline forge::HoloData d2_seed() {
  using namespace forge;
  return make_holo_rational_d2({parse("z - 2 + 1/z"), parse("-(z + 2 + 1/z)")},
                               10.0, true);
}

inline forge::HoloData fs_seed() {
  using namespace forge;
  return fubini_study_data(std::polar(1.0, kPi / 3.0),
                           std::polar(1.0, 2.0 * kPi / 3.0));
}
