#include "schurloc/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "schurloc/error.hpp"

namespace schurloc {
namespace {

struct Box {
  double re_lo = std::numeric_limits<double>::infinity();
  double re_hi = -std::numeric_limits<double>::infinity();
  double im_lo = std::numeric_limits<double>::infinity();
  double im_hi = -std::numeric_limits<double>::infinity();

  void add_disk(Complex c, double r) {
    re_lo = std::min(re_lo, c.real() - r);
    re_hi = std::max(re_hi, c.real() + r);
    im_lo = std::min(im_lo, c.imag() - r);
    im_hi = std::max(im_hi, c.imag() + r);
  }
};

void widen_axis(double& lo, double& hi) {
  if (hi - lo <= 0.0) {
    const double c = 0.5 * (lo + hi);
    lo = c - 1.0;
    hi = c + 1.0;
    return;
  }
  const double pad = 0.25 * (hi - lo);
  lo -= pad;
  hi += pad;
}

Window window_from_box(Box box, std::size_t resolution) {
  widen_axis(box.re_lo, box.re_hi);
  widen_axis(box.im_lo, box.im_hi);
  Window w{box.re_lo, box.re_hi, box.im_lo, box.im_hi, resolution};
  w.validate();
  return w;
}

void add_scalar_disks(const Matrix& a, Box& box) {
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double r = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != j) r += std::abs(a(i, j));
    box.add_disk(a(j, j), r);
  }
}

template <typename Fn>
void parallel_rows(std::size_t rows, Fn&& fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(rows, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t r = next++; r < rows; r = next++) fn(w, r);
      } catch (...) {
        errors[w] = std::current_exception();
        next = rows;
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void require_same_window(const GridMask& a, const GridMask& b) {
  if (!(a.window() == b.window())) {
    throw Error(Errc::window_mismatch, "masks are defined over different windows");
  }
}

}  // namespace

void Window::validate() const {
  if (!(std::isfinite(re_min) && std::isfinite(re_max) && std::isfinite(im_min) &&
        std::isfinite(im_max))) {
    throw Error(Errc::config_error, "window bounds must be finite");
  }
  if (!(re_min < re_max) || !(im_min < im_max)) {
    throw Error(Errc::config_error, "window bounds must satisfy min < max");
  }
  if (resolution < kMinResolution || resolution > kMaxResolution) {
    throw Error(Errc::config_error, "resolution " + std::to_string(resolution) +
                                        " outside [16, 8192]");
  }
}

Complex Window::pixel_center(std::size_t row, std::size_t col) const {
  return {re_min + (static_cast<double>(col) + 0.5) * pitch_re(),
          im_max - (static_cast<double>(row) + 0.5) * pitch_im()};
}

Window auto_window(const Matrix& a, std::size_t resolution) {
  Box box;
  add_scalar_disks(a, box);
  return window_from_box(box, resolution);
}

Window auto_window(const BlockMatrix& m, std::size_t resolution) {
  Box box;
  add_scalar_disks(m.base(), box);
  if (!m.is_scalar()) {
    for (std::size_t j = 0; j < m.num_blocks(); ++j) {
      double r = 0.0;
      for (std::size_t i = 0; i < m.num_blocks(); ++i) r += l1_op_norm(m.block(i, j));
      box.add_disk(Complex{}, r);
    }
  }
  return window_from_box(box, resolution);
}

GridMask::GridMask(const Window& w) : window_(w) {
  window_.validate();
  bits_.assign(w.resolution * w.resolution, 0);
}

std::size_t GridMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

GridMask GridMask::eroded() const {
  GridMask out(window_);
  const std::size_t n = resolution();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const bool keep = get(r, c) && r > 0 && c > 0 && r + 1 < n && c + 1 < n && get(r - 1, c) &&
                        get(r + 1, c) && get(r, c - 1) && get(r, c + 1);
      out.set(r, c, keep);
    }
  }
  return out;
}

GridMask rasterize(const Predicate& pred, const Window& w) {
  GridMask mask(w);
  const std::size_t n = w.resolution;
  // Each worker owns whole rows, so writes never overlap.
  parallel_rows(n, [&](std::size_t, std::size_t r) {
    for (std::size_t c = 0; c < n; ++c) mask.set(r, c, pred(w.pixel_center(r, c)));
  });
  return mask;
}

GridMask rasterize(const CountingPredicate& pred, const Window& w, std::size_t* evaluations) {
  GridMask mask(w);
  const std::size_t n = w.resolution;
  const std::size_t workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  std::vector<EvalCounter> counters(std::min(n, workers));
  parallel_rows(n, [&](std::size_t worker, std::size_t r) {
    EvalCounter* counter = &counters[worker];
    for (std::size_t c = 0; c < n; ++c) mask.set(r, c, pred(w.pixel_center(r, c), counter));
  });
  if (evaluations != nullptr) {
    *evaluations = 0;
    for (const auto& c : counters) *evaluations += c.inequalities;
  }
  return mask;
}

bool mask_subset(const GridMask& a, const GridMask& b) {
  require_same_window(a, b);
  const std::size_t n = a.resolution();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (a.get(r, c) && !b.get(r, c)) return false;
  return true;
}

double mask_area(const GridMask& a) {
  return static_cast<double>(a.count()) * a.window().pitch_re() * a.window().pitch_im();
}

bool IntervalUnion::contains(double x, double slack) const { return index_of(x, slack) >= 0; }

std::ptrdiff_t IntervalUnion::index_of(double x, double slack) const {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (x >= intervals[i].lo - slack && x <= intervals[i].hi + slack) {
      return static_cast<std::ptrdiff_t>(i);
    }
  }
  return -1;
}

IntervalUnion extract_real_intervals(const std::function<bool(double)>& pred, double a, double b,
                                     double tol, std::size_t samples,
                                     std::span<const double> seeds) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw Error(Errc::range_empty, "interval extraction range is empty");
  }
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  if (samples < 2) throw Error(Errc::invalid_argument, "need at least two samples");

  std::vector<double> xs;
  xs.reserve(samples + seeds.size());
  for (std::size_t i = 0; i < samples; ++i) {
    xs.push_back(i + 1 == samples ? b
                                  : a + (b - a) * static_cast<double>(i) /
                                            static_cast<double>(samples - 1));
  }
  for (double s : seeds)
    if (s >= a && s <= b) xs.push_back(s);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<bool> inside(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) inside[i] = pred(xs[i]);

  // Member-side end of the crossing between xs[i] and xs[i+1].
  auto crossing = [&](std::size_t i) {
    double lo = xs[i];
    double hi = xs[i + 1];
    const bool left = inside[i];
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (pred(mid) == left ? lo : hi) = mid;
    }
    return left ? lo : hi;
  };

  std::vector<Interval> raw;
  double start = a;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i == 0 && inside[0]) start = xs[0];
    if (i + 1 == xs.size()) {
      if (inside[i]) raw.push_back({start, xs[i]});
      break;
    }
    if (inside[i] == inside[i + 1]) continue;
    const double x = crossing(i);
    if (inside[i]) {
      raw.push_back({start, x});
    } else {
      start = x;
    }
  }

  IntervalUnion out;
  for (const Interval& iv : raw) {
    if (!out.intervals.empty() && iv.lo - out.intervals.back().hi <= tol) {
      out.intervals.back().hi = std::max(out.intervals.back().hi, iv.hi);
    } else {
      out.intervals.push_back(iv);
    }
  }
  return out;
}

std::string to_pbm(const GridMask& mask) {
  const std::size_t n = mask.resolution();
  std::string out = "P4\n" + std::to_string(n) + " " + std::to_string(n) + "\n";
  const std::size_t row_bytes = (n + 7) / 8;
  for (std::size_t r = 0; r < n; ++r) {
    std::string row(row_bytes, '\0');
    for (std::size_t c = 0; c < n; ++c)
      if (mask.get(r, c)) row[c / 8] = static_cast<char>(row[c / 8] | (0x80 >> (c % 8)));
    out += row;
  }
  return out;
}

GridMask from_pbm(std::string_view pbm, const Window& w) {
  GridMask mask(w);
  const std::size_t n = w.resolution;
  const std::string header = "P4\n" + std::to_string(n) + " " + std::to_string(n) + "\n";
  const std::size_t row_bytes = (n + 7) / 8;
  if (pbm.substr(0, header.size()) != header || pbm.size() != header.size() + row_bytes * n) {
    throw Error(Errc::parse_error, "PBM header or size does not match the window");
  }
  const auto* bytes = reinterpret_cast<const unsigned char*>(pbm.data() + header.size());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      mask.set(r, c, (bytes[r * row_bytes + c / 8] & (0x80 >> (c % 8))) != 0);
  return mask;
}

}  // namespace schurloc
