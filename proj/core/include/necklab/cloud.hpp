#pragma once

#include <vector>

namespace necklab {

// Scattered quadrature node: position, cell weight, and a sampled value.
struct SamplePoint {
  double x, y, w, v;
};

struct Disk {
  double x, y, r;
};

struct SampleCloud {
  std::vector<SamplePoint> pts;

  double mass() const;  // sum of w * v^2
};

bool in_disk(double x, double y, const Disk& d);

// L^2-mass sum w v^2 over points in the disk, skipping excluded disks.
double mass_in_disk(const SampleCloud& c, const Disk& d,
                    const std::vector<Disk>& excluded);

double mass_in_annulus(const SampleCloud& c, double x, double y, double r_in,
                       double r_out);

}  // namespace necklab
