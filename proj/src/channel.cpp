#include "mdqec/channel.hpp"

#include <utility>

namespace mdqec {

namespace {

CMat kraus_gram_sum(const std::vector<CMat>& kraus, bool dagger_left) {
  const Index n = kraus.front().rows();
  CMat sum = CMat::Zero(n, n);
  for (const CMat& e : kraus) sum += dagger_left ? CMat(e.adjoint() * e) : CMat(e * e.adjoint());
  return sum;
}

}  // namespace

double trace_preservation_residual(const std::vector<CMat>& kraus) {
  const Index n = kraus.front().rows();
  return max_abs(kraus_gram_sum(kraus, true) - CMat::Identity(n, n));
}

double unitality_residual(const std::vector<CMat>& kraus) {
  const Index n = kraus.front().rows();
  return max_abs(kraus_gram_sum(kraus, false) - CMat::Identity(n, n));
}

Channel kraus_map(std::vector<CMat> kraus, const Tolerance& tol) {
  if (kraus.empty()) throw ShapeMismatch("channel: empty Kraus family");
  const Index n = kraus.front().rows();
  for (const CMat& e : kraus) {
    if (e.rows() != n || e.cols() != n)
      throw ShapeMismatch("channel: Kraus operators must be square and of equal dimension");
    if (!e.allFinite()) throw Error("channel: non-finite Kraus entry");
  }
  Channel ch;
  ch.dim = n;
  ch.kraus = std::move(kraus);
  ch.trace_preserving = trace_preservation_residual(ch.kraus) <= tol.abs_eps;
  ch.unital = unitality_residual(ch.kraus) <= tol.abs_eps;
  return ch;
}

Channel validate(std::vector<CMat> kraus, const Tolerance& tol) {
  Channel ch = kraus_map(std::move(kraus), tol);
  if (!ch.trace_preserving) {
    const double r = trace_preservation_residual(ch.kraus);
    throw NotTracePreserving("channel: sum E†E != I, residual " + std::to_string(r), r);
  }
  return ch;
}

CMat Channel::apply(const CMat& rho) const {
  if (rho.rows() != dim || rho.cols() != dim)
    throw ShapeMismatch("apply: operator dimension does not match channel");
  CMat out = CMat::Zero(dim, dim);
  for (const CMat& e : kraus) out += e * rho * e.adjoint();
  return out;
}

Channel dual(const Channel& ch) {
  std::vector<CMat> adj;
  adj.reserve(ch.kraus.size());
  for (const CMat& e : ch.kraus) adj.push_back(e.adjoint());
  return kraus_map(std::move(adj));
}

Channel compose(const Channel& a, const Channel& b) {
  if (a.dim != b.dim) throw ShapeMismatch("compose: dimension mismatch");
  std::vector<CMat> prod;
  prod.reserve(a.kraus.size() * b.kraus.size());
  for (const CMat& ea : a.kraus)
    for (const CMat& eb : b.kraus) prod.push_back(ea * eb);
  return kraus_map(std::move(prod));
}

}  // namespace mdqec
