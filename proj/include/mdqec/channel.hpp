#pragma once

#include "mdqec/matrix.hpp"

namespace mdqec {

// A completely positive map given by its Kraus family. `trace_preserving`
// and `unital` record whether sum E†E resp. sum EE† equal the identity at
// validation tolerance; dual maps of trace-preserving channels may carry
// trace_preserving = false by design.
struct Channel {
  Index dim = 0;
  std::vector<CMat> kraus;
  bool trace_preserving = false;
  bool unital = false;

  // sum_i E_i rho E_i†
  CMat apply(const CMat& rho) const;
};

double trace_preservation_residual(const std::vector<CMat>& kraus);
double unitality_residual(const std::vector<CMat>& kraus);

// Builds a Channel and requires trace preservation; throws
// NotTracePreserving (with the residual) or ShapeMismatch otherwise.
Channel validate(std::vector<CMat> kraus, const Tolerance& tol = {});

// Same data shape without the trace-preservation requirement, for duals and
// representation maps.
Channel kraus_map(std::vector<CMat> kraus, const Tolerance& tol = {});

// Heisenberg-picture dual, Kraus family {E_i†}.
Channel dual(const Channel& ch);

// compose(a, b) applies b first: Kraus family {A_i B_j}.
Channel compose(const Channel& a, const Channel& b);

}  // namespace mdqec
