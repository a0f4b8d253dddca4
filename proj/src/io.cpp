#include "schurloc/io.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "schurloc/error.hpp"

namespace schurloc {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(Errc::parse_error, "matrix JSON: " + what);
}

double finite_number(const json& v, const char* what) {
  if (!v.is_number()) schema_error(std::string(what) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(std::string(what) + " must be finite");
  return d;
}

std::size_t positive_int(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    schema_error(std::string(what) + " must be a positive integer");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

BlockMatrix parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(Errc::parse_error, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("top level must be an object");
  if (!doc.contains("n")) schema_error("missing \"n\"");
  if (!doc.contains("data")) schema_error("missing \"data\"");
  const std::size_t n = positive_int(doc["n"], "\"n\"");
  const json& data = doc["data"];
  if (!data.is_array() || data.size() != n) schema_error("\"data\" must have n rows");

  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const json& row = data[r];
    if (!row.is_array() || row.size() != n) schema_error("each row must have n entries");
    for (std::size_t c = 0; c < n; ++c) {
      const json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2) schema_error("entries must be [re, im] pairs");
      m(r, c) = Complex{finite_number(entry[0], "real part"), finite_number(entry[1], "imaginary part")};
    }
  }

  std::vector<std::size_t> partition(n, 1);
  if (doc.contains("partition")) {
    const json& p = doc["partition"];
    if (!p.is_array() || p.empty()) schema_error("\"partition\" must be a non-empty array");
    partition.clear();
    std::size_t sum = 0;
    for (const json& d : p) {
      partition.push_back(positive_int(d, "partition entry"));
      sum += partition.back();
    }
    if (sum != n) schema_error("partition sums to " + std::to_string(sum) + ", expected " + std::to_string(n));
  }
  return BlockMatrix(std::move(m), std::move(partition));
}

std::string matrix_to_json(const BlockMatrix& m) {
  JsonWriter w;
  const Matrix& a = m.base();
  w.begin_object().key("n").value(a.rows()).key("data").begin_array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    w.begin_array();
    for (std::size_t c = 0; c < a.cols(); ++c) w.value(a(r, c));
    w.end_array();
  }
  w.end_array().key("partition").begin_array();
  for (std::size_t d : m.partition()) w.value(d);
  w.end_array().end_object();
  return w.str();
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void JsonWriter::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) out_ += ',';
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  separate();
  out_ += json(std::string(k)).dump();
  out_ += ':';
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separate();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::size_t v) {
  separate();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  separate();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  separate();
  out_ += json(std::string(v)).dump();
  return *this;
}

JsonWriter& JsonWriter::value(Complex z) {
  return begin_array().value(z.real()).value(z.imag()).end_array();
}

JsonWriter& JsonWriter::null() {
  separate();
  out_ += "null";
  return *this;
}

JsonWriter& JsonWriter::raw(std::string_view text) {
  separate();
  out_ += text;
  return *this;
}

void write_window(JsonWriter& w, const Window& win) {
  w.begin_object()
      .key("re_min").value(win.re_min)
      .key("re_max").value(win.re_max)
      .key("im_min").value(win.im_min)
      .key("im_max").value(win.im_max)
      .end_object();
}

void write_intervals(JsonWriter& w, const IntervalUnion& u) {
  w.begin_object().key("intervals").begin_array();
  for (const Interval& iv : u.intervals) w.begin_array().value(iv.lo).value(iv.hi).end_array();
  w.end_array().end_object();
}

std::string intervals_to_json(const IntervalUnion& u) {
  JsonWriter w;
  write_intervals(w, u);
  return w.str();
}

std::string mask_sidecar_json(const GridMask& mask) {
  JsonWriter w;
  w.begin_object().key("window");
  write_window(w, mask.window());
  w.key("resolution").value(mask.resolution()).end_object();
  return w.str();
}

namespace {

std::string_view report_key(Family f) {
  return f == Family::modified_schur ? "modified_schur" : family_name(f);
}

}  // namespace

void write_inclusion_fields(JsonWriter& w, const InclusionReport& r) {
  w.key("eigenvalues").begin_array();
  for (const Complex& z : r.eigenvalues) w.value(z);
  w.end_array().key("families").begin_object();
  for (std::size_t f = 0; f < r.families.size(); ++f) {
    w.key(report_key(r.families[f])).begin_array();
    for (bool b : r.verdicts[f]) w.value(b);
    w.end_array();
  }
  w.end_object().key("min_margin").value(r.min_margin);
}

void write_inclusion_report(JsonWriter& w, const InclusionReport& r) {
  w.begin_object();
  write_inclusion_fields(w, r);
  w.end_object();
}

std::string inclusion_report_to_json(const InclusionReport& r) {
  JsonWriter w;
  write_inclusion_report(w, r);
  return w.str();
}

}  // namespace schurloc
