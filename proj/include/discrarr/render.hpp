#pragma once

#include <optional>
#include <string>

#include "discrarr/arrangement.hpp"
#include "discrarr/discriminantal.hpp"

namespace discrarr {

struct Viewport {
  double xmin, xmax, ymin, ymax;
};

struct RenderOptions {
  /// Defaults to the bounding box of all pairwise intersection points padded by 20%.
  std::optional<Viewport> viewport;
  int width_px = 640;
};

struct ConcurrentPoint {
  Rational x, y;
  IndexSet lines;
};

/// Points where at least three translated lines meet, exact.
std::vector<ConcurrentPoint> concurrent_points(const Arrangement& a, const TranslationVector& t);

/// Standalone SVG of the translated lines alpha_i . x = t_i, labeled "H_i", with points
/// of three or more concurrent lines marked. Needs k = 2.
std::string render_svg(const Arrangement& a, const TranslationVector& t, const RenderOptions& options = {});

}  // namespace discrarr
