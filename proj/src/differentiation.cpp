#include "torsor/differentiation.hpp"

namespace torsor {

bool Box::contains(const VecX& xi) const {
  if (xi.size() != lower.size() || xi.size() != upper.size()) return false;
  for (Eigen::Index k = 0; k < xi.size(); ++k) {
    if (xi(k) < lower(k) || xi(k) > upper(k)) return false;
  }
  return true;
}

Stencil choose_stencil(const VecX& xi, int k, double h, const std::optional<Box>& domain,
                       bool one_sided) {
  if (!domain) return Stencil::Central;
  const double lo = domain->lower(k);
  const double hi = domain->upper(k);
  const double x = xi(k);
  const bool room_below = x - h >= lo;
  const bool room_above = x + h <= hi;
  if (room_below && room_above) return Stencil::Central;

  auto fail = [&](const char* why) {
    std::ostringstream msg;
    msg << "cannot differentiate along coordinate " << k << " at " << x << " (domain [" << lo
        << ", " << hi << "], step " << h << "): " << why;
    throw DifferentiationFailure(msg.str());
  };
  if (!one_sided) fail("point within one step of the boundary");
  if (x + 2.0 * h <= hi && x >= lo) return Stencil::Forward;
  if (x - 2.0 * h >= lo && x <= hi) return Stencil::Backward;
  fail("domain narrower than the one-sided stencil");
  return Stencil::Central;
}

}  // namespace torsor
