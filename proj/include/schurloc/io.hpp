#pragma once

// Matrix file format and deterministic JSON output.
//
// Input:  {"n": int, "data": [[[re, im], ...], ...], "partition": [d1, ...]}
//         ("partition" is optional and defaults to all ones.)
// Output: keys in insertion order, doubles with 17 significant digits,
//         non-finite doubles as null.

#include <string>
#include <string_view>
#include <vector>

#include "schurloc/block_schur.hpp"
#include "schurloc/geometry.hpp"
#include "schurloc/matrix.hpp"

namespace schurloc {

/// Throws Error{parse_error} on malformed input or schema violations.
BlockMatrix parse_matrix_json(std::string_view text);
std::string matrix_to_json(const BlockMatrix& m);

/// Minimal streaming writer. Commas are inserted automatically; the caller
/// is responsible for balanced begin/end calls.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(std::size_t v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(Complex z);
  JsonWriter& null();
  /// Inserts pre-serialised JSON verbatim.
  JsonWriter& raw(std::string_view json);

  const std::string& str() const noexcept { return out_; }

 private:
  void separate();

  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

std::string format_double(double v);

void write_window(JsonWriter& w, const Window& win);
void write_intervals(JsonWriter& w, const IntervalUnion& u);
std::string intervals_to_json(const IntervalUnion& u);
/// {"window": {...}, "resolution": n}
std::string mask_sidecar_json(const GridMask& mask);
/// {"eigenvalues": [...], "families": {...}, "min_margin": x}; an
/// infinite margin (every eigenvalue decided by a diagonal spectrum) is null.
/// The _fields variant writes the members into an already open object.
void write_inclusion_fields(JsonWriter& w, const InclusionReport& r);
void write_inclusion_report(JsonWriter& w, const InclusionReport& r);
std::string inclusion_report_to_json(const InclusionReport& r);

}  // namespace schurloc
