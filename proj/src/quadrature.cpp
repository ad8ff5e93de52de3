#include "axiskit/quadrature.hpp"

namespace axiskit::quad {

std::vector<double> make_breakpoints(double a, double b, std::vector<double> interior) {
  std::vector<double> pts;
  pts.reserve(interior.size() + 2);
  pts.push_back(a);
  for (double x : interior)
    if (std::isfinite(x) && x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  // Collapse breakpoints closer than a few ulps of the interval scale.
  const double min_gap = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
  std::vector<double> out;
  out.reserve(pts.size());
  for (double x : pts)
    if (out.empty() || x - out.back() > min_gap) out.push_back(x);
  if (out.back() != b) out.back() = b;
  return out;
}

void append_geometric(std::vector<double>& pts, double center, double scale, double a, double b) {
  if (!(scale > 0.0)) return;
  if (center > a && center < b) pts.push_back(center);
  for (double s = scale; center - s > a; s *= 2.0) pts.push_back(center - s);
  for (double s = scale; center + s < b; s *= 2.0) pts.push_back(center + s);
}

}  // namespace axiskit::quad
