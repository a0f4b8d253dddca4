#include "schurloc/commands.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "schurloc/error.hpp"
#include "schurloc/io.hpp"

namespace schurloc {
namespace {

void write_header(JsonWriter& w, const char* command, const BlockMatrix& m) {
  w.key("schema").value(kReportSchema).key("command").value(command);
  w.key("n").value(m.dim()).key("blocks").value(m.num_blocks());
  w.key("partition").begin_array();
  for (std::size_t d : m.partition()) w.value(d);
  w.end_array();
  w.key("level").value(m.is_scalar() ? "scalar" : "block");
}

Window resolve_window(const BlockMatrix& m, const RunOptions& opts) {
  if (opts.window) {
    Window w = *opts.window;
    w.resolution = opts.resolution;
    w.validate();
    return w;
  }
  return auto_window(m, opts.resolution);
}

}  // namespace

void RunOptions::validate(const BlockMatrix& m) const {
  if (methods.empty()) throw Error(Errc::config_error, "no methods requested");
  if (m.num_blocks() < 2) throw Error(Errc::config_error, "inclusion regions need at least two blocks");
  if (resolution < Window::kMinResolution || resolution > Window::kMaxResolution) {
    throw Error(Errc::config_error, "grid resolution must lie in [16, 8192]");
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw Error(Errc::config_error, "tol must be positive");
  if (samples < 2) throw Error(Errc::config_error, "need at least two interval samples");
  if (norm == NormMode::infinity && !m.is_scalar()) {
    throw Error(Errc::config_error, "the infinity-norm variant is only available for scalar partitions");
  }
  if (window) {
    Window w = *window;
    w.resolution = resolution;
    w.validate();
  }
}

CountingPredicate locus_predicate(const BlockMatrix& m, Family f, NormMode norm) {
  if (m.is_scalar()) {
    return [&a = m.base(), f, norm](Complex z, EvalCounter* c) { return locus_member(a, f, z, norm, c); };
  }
  return [&m, f](Complex z, EvalCounter* c) { return block_locus_member(m, f, z, c); };
}

LocateResult run_locate(const BlockMatrix& m, const RunOptions& opts) {
  opts.validate(m);
  const Window window = resolve_window(m, opts);

  LocateResult result;
  std::vector<std::size_t> evaluations;
  for (Family f : opts.methods) {
    std::size_t evals = 0;
    result.masks.emplace_back(f, rasterize(locus_predicate(m, f, opts.norm), window, &evals));
    evaluations.push_back(evals);
  }

  JsonWriter w;
  w.begin_object();
  write_header(w, "locate", m);
  w.key("norm").value(norm_name(opts.norm));
  w.key("window");
  write_window(w, window);
  w.key("resolution").value(window.resolution);
  w.key("pixel_area").value(window.pitch_re() * window.pitch_im());
  w.key("methods").begin_array();
  for (std::size_t i = 0; i < result.masks.size(); ++i) {
    const auto& [family, mask] = result.masks[i];
    w.begin_object()
        .key("method").value(family_name(family))
        .key("pixels").value(mask.count())
        .key("area").value(mask_area(mask))
        .key("inequalities").value(inequality_count(family, m.num_blocks()))
        .key("evaluations").value(evaluations[i])
        .end_object();
  }
  w.end_array();
  w.key("subset").begin_array();
  for (const auto& [fa, ma] : result.masks) {
    for (const auto& [fb, mb] : result.masks) {
      if (fa == fb) continue;
      w.begin_object()
          .key("a").value(family_name(fa))
          .key("b").value(family_name(fb))
          .key("subset").value(mask_subset(ma, mb))
          .key("subset_eroded").value(mask_subset(ma.eroded(), mb))
          .end_object();
    }
  }
  w.end_array().end_object();
  result.report_json = w.str();

  std::vector<std::pair<std::string, GridMask>> layers;
  for (const auto& [f, mask] : result.masks) layers.emplace_back(std::string(family_name(f)), mask);
  result.svg = svg_contours(layers);
  return result;
}

VerifyResult run_verify(const BlockMatrix& m, const RunOptions& opts) {
  opts.validate(m);
  if (opts.norm != NormMode::one) {
    throw Error(Errc::config_error, "verify measures blocks in the l1 operator norm only");
  }
  VerifyResult result;
  result.report = verify_inclusion(m, opts.methods);
  result.all_member = result.report.all_member();

  JsonWriter w;
  w.begin_object();
  write_header(w, "verify", m);
  write_inclusion_fields(w, result.report);
  w.key("all_member").value(result.all_member).end_object();
  result.report_json = w.str();
  return result;
}

IntervalsResult run_intervals(const BlockMatrix& m, const RunOptions& opts) {
  opts.validate(m);
  const Matrix& a = m.base();
  if (!is_hermitian(a, kHermitianTol * std::max(1.0, max_abs(a)))) {
    throw Error(Errc::hermitian_check_failed, "matrix is not Hermitian to 1e-10");
  }
  const Window window = resolve_window(m, opts);
  const double lo = window.re_min;
  const double hi = window.re_max;

  IntervalsResult result;
  for (const Complex& z : eigenvalues(a)) result.eigenvalues.push_back(z.real());
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());

  // Diagonal entries are members of every locus; seeding them catches
  // components that shrink to single points.
  std::vector<double> seeds;
  for (std::size_t i = 0; i < a.rows(); ++i) seeds.push_back(a(i, i).real());

  for (Family f : opts.methods) {
    const CountingPredicate pred = locus_predicate(m, f, opts.norm);
    auto on_axis = [&pred](double x) { return pred(Complex{x, 0.0}, nullptr); };
    result.intervals.emplace_back(f, extract_real_intervals(on_axis, lo, hi, opts.tol, opts.samples, seeds));
  }

  JsonWriter w;
  w.begin_object();
  write_header(w, "intervals", m);
  w.key("norm").value(norm_name(opts.norm));
  w.key("range").begin_array().value(lo).value(hi).end_array();
  w.key("tol").value(opts.tol).key("samples").value(opts.samples);
  w.key("eigenvalues").begin_array();
  for (double e : result.eigenvalues) w.value(e);
  w.end_array();
  w.key("methods").begin_object();
  for (const auto& [f, u] : result.intervals) {
    w.key(family_name(f)).begin_object().key("intervals").begin_array();
    for (const Interval& iv : u.intervals) w.begin_array().value(iv.lo).value(iv.hi).end_array();
    w.end_array().key("eigenvalue_interval").begin_array();
    for (double e : result.eigenvalues) w.value(static_cast<long long>(u.index_of(e, opts.tol)));
    w.end_array().end_object();
  }
  w.end_object().end_object();
  result.report_json = w.str();
  return result;
}

}  // namespace schurloc
