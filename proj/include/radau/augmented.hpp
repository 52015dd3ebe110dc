#pragma once

// The low-rank reformulation written as an ordinary 2s-stage Runge-Kutta
// method:
//
//    c_hat | O   P_hat X_s P^{-1}
//    c     | O   P X_s P^{-1}
//    ------+--------------------
//          | 0^T b^T

#include "radau/error.hpp"
#include "radau/splitting.hpp"
#include "radau/tableau.hpp"

namespace radau {

inline ButcherTableau augmented_tableau(const CollocationTableau& tab, const SplitData& split) {
  if (tab.s != split.s) throw Error(ErrorCode::DimensionMismatch, "tableau and split disagree on s");
  const std::size_t s = tab.s;
  const RealMatrix Pinv = inverse(tab.P);
  const RealMatrix upper = split.P_hat * tab.X * Pinv;
  const RealMatrix lower = tab.P * tab.X * Pinv;

  ButcherTableau out;
  out.c.resize(2 * s);
  out.b.assign(2 * s, 0.0);
  out.A = RealMatrix(2 * s, 2 * s);
  for (std::size_t i = 0; i < s; ++i) {
    out.c[i] = split.c_hat[i];
    out.c[s + i] = tab.c[i];
    out.b[s + i] = tab.b[i];
    for (std::size_t j = 0; j < s; ++j) {
      out.A(i, s + j) = upper(i, j);
      out.A(s + i, s + j) = lower(i, j);
    }
  }
  return out;
}

}  // namespace radau
