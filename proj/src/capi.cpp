#include "schurloc/schurloc.h"

#include <algorithm>
#include <fstream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "schurloc/commands.hpp"
#include "schurloc/error.hpp"
#include "schurloc/io.hpp"

struct sl_matrix {
  schurloc::BlockMatrix m;
};

struct sl_result {
  struct Mask {
    std::string method;
    std::string pbm;
    std::string sidecar;
  };
  std::string json;
  std::string svg;
  bool all_member = false;
  std::vector<Mask> masks;
};

namespace {

using namespace schurloc;

thread_local std::string g_last_error;

sl_status status_of(Errc e) {
  switch (e) {
    case Errc::parse_error: return SL_ERR_PARSE;
    case Errc::config_error:
    case Errc::range_empty:
    case Errc::window_mismatch: return SL_ERR_CONFIG;
    case Errc::no_convergence: return SL_ERR_NO_CONVERGENCE;
    case Errc::hermitian_check_failed: return SL_ERR_HERMITIAN;
    case Errc::singular:
    case Errc::lambda_in_sigma_d:
    case Errc::delta_singular:
    case Errc::diagonal_resolvent_singular: return SL_ERR_SINGULAR;
    case Errc::io_error: return SL_ERR_IO;
    case Errc::index_out_of_range:
    case Errc::size_mismatch:
    case Errc::invalid_argument: return SL_ERR_INVALID_ARGUMENT;
  }
  return SL_ERR_INTERNAL;
}

sl_status fail(sl_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
sl_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SL_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), std::string(errc_name(e.code())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(SL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SL_ERR_INTERNAL, e.what());
  }
}

RunOptions to_run_options(const sl_options* o) {
  RunOptions r;
  if (o == nullptr) return r;
  if (o->methods != 0) {
    if (o->methods & ~0xFu) throw Error(Errc::config_error, "unknown method bit");
    r.methods.clear();
    for (Family f : kAllFamilies) {
      if (o->methods & (1u << static_cast<unsigned>(f))) r.methods.push_back(f);
    }
  }
  if (o->norm != SL_NORM_ONE && o->norm != SL_NORM_INF) throw Error(Errc::config_error, "unknown norm");
  r.norm = o->norm == SL_NORM_INF ? NormMode::infinity : NormMode::one;
  if (o->explicit_window) {
    r.window = Window{o->re_min, o->re_max, o->im_min, o->im_max, o->resolution};
  }
  r.resolution = o->resolution;
  r.tol = o->tol;
  r.samples = o->samples;
  return r;
}

}  // namespace

extern "C" {

void sl_options_default(sl_options* opts) {
  if (opts == nullptr) return;
  const RunOptions d;
  *opts = sl_options{};
  opts->methods = 0;
  opts->norm = SL_NORM_ONE;
  opts->explicit_window = 0;
  opts->resolution = d.resolution;
  opts->tol = d.tol;
  opts->samples = d.samples;
}

sl_status sl_matrix_parse(const char* json, size_t len, sl_matrix** out) {
  if (json == nullptr || out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new sl_matrix{parse_matrix_json(std::string_view(json, len))}; });
}

sl_status sl_matrix_load(const char* path, sl_matrix** out) {
  if (path == nullptr || out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) return fail(SL_ERR_IO, std::string("IoError: cannot open ") + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  return sl_matrix_parse(text.data(), text.size(), out);
}

sl_status sl_matrix_create(size_t n, const double* data, const size_t* partition, size_t num_blocks,
                           sl_matrix** out) {
  if (data == nullptr || out == nullptr || n == 0) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    Matrix a(n, n);
    for (size_t r = 0; r < n; ++r) {
      for (size_t c = 0; c < n; ++c) a(r, c) = Complex{data[2 * (r * n + c)], data[2 * (r * n + c) + 1]};
    }
    if (!a.all_finite()) throw Error(Errc::invalid_argument, "matrix entries must be finite");
    if (partition == nullptr) {
      *out = new sl_matrix{BlockMatrix(std::move(a))};
    } else {
      *out = new sl_matrix{BlockMatrix(std::move(a), std::vector<size_t>(partition, partition + num_blocks))};
    }
  });
}

void sl_matrix_destroy(sl_matrix* m) { delete m; }

size_t sl_matrix_dim(const sl_matrix* m) { return m ? m->m.dim() : 0; }

size_t sl_matrix_blocks(const sl_matrix* m) { return m ? m->m.num_blocks() : 0; }

int sl_matrix_is_hermitian(const sl_matrix* m) {
  if (m == nullptr) return 0;
  const Matrix& a = m->m.base();
  return is_hermitian(a, kHermitianTol * std::max(1.0, max_abs(a))) ? 1 : 0;
}

sl_status sl_eigenvalues(const sl_matrix* m, double* out, size_t out_len) {
  if (m == nullptr || out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  if (out_len < 2 * m->m.dim()) return fail(SL_ERR_INVALID_ARGUMENT, "output buffer too small");
  return guarded([&] {
    const Spectrum ev = eigenvalues(m->m.base());
    for (size_t i = 0; i < ev.size(); ++i) {
      out[2 * i] = ev[i].real();
      out[2 * i + 1] = ev[i].imag();
    }
  });
}

sl_status sl_locus_contains(const sl_matrix* m, sl_family f, sl_norm norm, double re, double im,
                            int* member) {
  if (m == nullptr || member == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  if (f < SL_GERSHGORIN || f > SL_MODIFIED_SCHUR) return fail(SL_ERR_CONFIG, "unknown family");
  return guarded([&] {
    RunOptions o;
    o.norm = norm == SL_NORM_INF ? NormMode::infinity : NormMode::one;
    o.validate(m->m);
    *member = locus_predicate(m->m, static_cast<Family>(f), o.norm)(Complex{re, im}, nullptr) ? 1 : 0;
  });
}

sl_status sl_locate(const sl_matrix* m, const sl_options* opts, sl_result** out) {
  if (m == nullptr || out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    LocateResult lr = run_locate(m->m, to_run_options(opts));
    auto* r = new sl_result;
    r->json = std::move(lr.report_json);
    r->svg = std::move(lr.svg);
    for (const auto& [f, mask] : lr.masks) {
      r->masks.push_back({std::string(family_name(f)), to_pbm(mask), mask_sidecar_json(mask)});
    }
    *out = r;
  });
}

sl_status sl_verify(const sl_matrix* m, const sl_options* opts, sl_result** out) {
  if (m == nullptr || out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    VerifyResult vr = run_verify(m->m, to_run_options(opts));
    auto* r = new sl_result;
    r->json = std::move(vr.report_json);
    r->all_member = vr.all_member;
    *out = r;
  });
}

sl_status sl_intervals(const sl_matrix* m, const sl_options* opts, sl_result** out) {
  if (m == nullptr || out == nullptr) return fail(SL_ERR_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    IntervalsResult ir = run_intervals(m->m, to_run_options(opts));
    auto* r = new sl_result;
    r->json = std::move(ir.report_json);
    *out = r;
  });
}

const char* sl_result_json(const sl_result* r) { return r ? r->json.c_str() : ""; }

int sl_result_all_member(const sl_result* r) { return r && r->all_member ? 1 : 0; }

const char* sl_result_svg(const sl_result* r) { return r ? r->svg.c_str() : ""; }

size_t sl_result_mask_count(const sl_result* r) { return r ? r->masks.size() : 0; }

const char* sl_result_mask_method(const sl_result* r, size_t i) {
  return r && i < r->masks.size() ? r->masks[i].method.c_str() : nullptr;
}

const unsigned char* sl_result_mask_pbm(const sl_result* r, size_t i, size_t* len) {
  if (r == nullptr || i >= r->masks.size()) {
    if (len) *len = 0;
    return nullptr;
  }
  if (len) *len = r->masks[i].pbm.size();
  return reinterpret_cast<const unsigned char*>(r->masks[i].pbm.data());
}

const char* sl_result_mask_sidecar(const sl_result* r, size_t i) {
  return r && i < r->masks.size() ? r->masks[i].sidecar.c_str() : nullptr;
}

void sl_result_destroy(sl_result* r) { delete r; }

const char* sl_last_error_message(void) { return g_last_error.c_str(); }

const char* sl_status_string(sl_status s) {
  switch (s) {
    case SL_OK: return "Ok";
    case SL_ERR_PARSE: return "ParseError";
    case SL_ERR_CONFIG: return "ConfigError";
    case SL_ERR_NO_CONVERGENCE: return "NoConvergence";
    case SL_ERR_HERMITIAN: return "HermitianCheckFailed";
    case SL_ERR_SINGULAR: return "Singular";
    case SL_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SL_ERR_IO: return "IoError";
    case SL_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

}  // extern "C"
