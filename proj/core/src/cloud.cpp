#include "necklab/cloud.hpp"

#include <cmath>

namespace necklab {

double SampleCloud::mass() const {
  double s = 0.0;
  for (const auto& p : pts) s += p.w * p.v * p.v;
  return s;
}

bool in_disk(double x, double y, const Disk& d) {
  const double dx = x - d.x, dy = y - d.y;
  return dx * dx + dy * dy <= d.r * d.r;
}

double mass_in_disk(const SampleCloud& c, const Disk& d,
                    const std::vector<Disk>& excluded) {
  double s = 0.0;
  for (const auto& p : c.pts) {
    if (!in_disk(p.x, p.y, d)) continue;
    bool skip = false;
    for (const auto& e : excluded)
      if (in_disk(p.x, p.y, e)) {
        skip = true;
        break;
      }
    if (!skip) s += p.w * p.v * p.v;
  }
  return s;
}

double mass_in_annulus(const SampleCloud& c, double x, double y, double r_in,
                       double r_out) {
  double s = 0.0;
  for (const auto& p : c.pts) {
    const double d = std::hypot(p.x - x, p.y - y);
    if (d > r_in && d <= r_out) s += p.w * p.v * p.v;
  }
  return s;
}

}  // namespace necklab
