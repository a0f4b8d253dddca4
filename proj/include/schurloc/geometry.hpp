#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schurloc/matrix.hpp"
#include "schurloc/regions.hpp"

namespace schurloc {

/// Rectangular window of the complex plane sampled at resolution x
/// resolution pixels. Row 0 is the top edge (im_max).
struct Window {
  double re_min = -1.0;
  double re_max = 1.0;
  double im_min = -1.0;
  double im_max = 1.0;
  std::size_t resolution = 1024;

  static constexpr std::size_t kMinResolution = 16;
  static constexpr std::size_t kMaxResolution = 8192;

  /// Throws Error{config_error} when the invariants do not hold.
  void validate() const;
  double pitch_re() const { return (re_max - re_min) / static_cast<double>(resolution); }
  double pitch_im() const { return (im_max - im_min) / static_cast<double>(resolution); }
  Complex pixel_center(std::size_t row, std::size_t col) const;

  friend bool operator==(const Window&, const Window&) = default;
};

/// Bounding box of the Gershgorin disks padded by 25% per side. Axes with
/// zero extent fall back to +-1 around their centre.
Window auto_window(const Matrix& a, std::size_t resolution = 1024);
/// Also covers the block Gershgorin sets, which lie inside the disks of
/// radius sum_i ||A_ij|| around the origin.
Window auto_window(const BlockMatrix& m, std::size_t resolution = 1024);

class GridMask {
 public:
  explicit GridMask(const Window& w);

  const Window& window() const noexcept { return window_; }
  std::size_t resolution() const noexcept { return window_.resolution; }
  bool get(std::size_t row, std::size_t col) const { return bits_[row * resolution() + col] != 0; }
  void set(std::size_t row, std::size_t col, bool v) { bits_[row * resolution() + col] = v ? 1 : 0; }
  std::size_t count() const noexcept;
  /// Pixel-aligned 4-neighbour erosion; pixels outside the window count as unset.
  GridMask eroded() const;

  friend bool operator==(const GridMask&, const GridMask&) = default;

 private:
  Window window_;
  std::vector<std::uint8_t> bits_;
};

using Predicate = std::function<bool(Complex)>;
using CountingPredicate = std::function<bool(Complex, EvalCounter*)>;

/// Samples pred at every pixel centre, rows split across threads.
GridMask rasterize(const Predicate& pred, const Window& w);
GridMask rasterize(const CountingPredicate& pred, const Window& w, std::size_t* evaluations);

/// Bitwise implication a => b. Throws Error{window_mismatch}.
bool mask_subset(const GridMask& a, const GridMask& b);
/// Set-pixel count times pixel area.
double mask_area(const GridMask& a);

struct Interval {
  double lo;
  double hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, disjoint closed intervals.
struct IntervalUnion {
  std::vector<Interval> intervals;

  bool contains(double x, double slack = 0.0) const;
  /// Index of the interval containing x (within slack), or -1.
  std::ptrdiff_t index_of(double x, double slack = 0.0) const;
};

/// Real sections of a membership predicate on [a, b]. `samples` uniform
/// points (plus any `seeds`, which catch isolated members such as
/// diagonal entries) are classified; each change of verdict between
/// neighbours is bisected to width tol and reported at the member side.
/// Intervals separated by at most tol are merged. Throws Error{range_empty}.
IntervalUnion extract_real_intervals(const std::function<bool(double)>& pred, double a, double b,
                                     double tol, std::size_t samples = 4096,
                                     std::span<const double> seeds = {});

struct PointF {
  double x;
  double y;
};
using Polyline = std::vector<PointF>;

/// Closed boundary loops of the set pixels in pixel units: (0,0) is the
/// top-left corner of the window and pixel (r, c) covers [c, c+1] x [r, r+1].
/// Pixels touching only diagonally are kept apart.
std::vector<Polyline> boundary_loops(const GridMask& mask);

/// SVG 1.1 document with one path per boundary loop and axis annotation.
std::string svg_contours(const GridMask& mask);
/// Several masks over one window, one colour-coded group per layer.
std::string svg_contours(std::span<const std::pair<std::string, GridMask>> layers);

/// Binary PBM (P4); set pixels are black.
std::string to_pbm(const GridMask& mask);
GridMask from_pbm(std::string_view pbm, const Window& w);

}  // namespace schurloc
