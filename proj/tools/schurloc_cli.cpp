// schurloc: command-line front end over the C API.
//
// Exit codes: 0 ok, 1 other failure, 2 ParseError, 3 ConfigError,
// 4 eigenvalue outside a locus (verify), 5 NoConvergence,
// 6 HermitianCheckFailed. Errors go to stderr as one line:
//   schurloc: error=<Code> exit=<n> [file=<path>] message=<text>

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "schurloc/schurloc.h"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kFailure = 1, kParse = 2, kConfig = 3, kEscape = 4, kNoConvergence = 5, kHermitian = 6 };

struct Config {
  std::string command;
  std::string input;
  std::string methods = "gershgorin,cassini,schur,modified-schur";
  std::string norm = "one";
  std::size_t grid = 1024;
  std::string window = "auto";
  double tol = 1e-9;
  std::string out;
  std::string svg;
  std::string pbm;
  bool hermitian = false;
  std::string batch;
};

struct Failure {
  int exit;
  std::string code;
  std::string message;
};

int exit_for(sl_status s) {
  switch (s) {
    case SL_OK: return kOk;
    case SL_ERR_PARSE: return kParse;
    case SL_ERR_CONFIG:
    case SL_ERR_IO: return kConfig;
    case SL_ERR_NO_CONVERGENCE: return kNoConvergence;
    case SL_ERR_HERMITIAN: return kHermitian;
    default: return kFailure;
  }
}

Failure from_status(sl_status s) {
  std::string msg = sl_last_error_message();
  std::replace(msg.begin(), msg.end(), '\n', ' ');
  return {exit_for(s), sl_status_string(s), msg};
}

void report(const Failure& f, const std::string& file = {}) {
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "schurloc: error=" << f.code << " exit=" << f.exit;
  if (!file.empty()) std::cerr << " file=" << file;
  std::cerr << " message=" << f.message << '\n';
}

void write_atomic(const fs::path& path, const std::string& bytes) {
  static std::atomic<unsigned> counter{0};
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kConfig, "IoError", "cannot write " + tmp.string()};
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Failure{kConfig, "IoError", "short write to " + tmp.string()};
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Failure{kConfig, "IoError", "cannot rename onto " + path.string()};
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

[[noreturn]] void config_error(const std::string& msg) { throw Failure{kConfig, "ConfigError", msg}; }

sl_options build_options(const Config& cfg) {
  sl_options o;
  sl_options_default(&o);
  o.methods = 0;
  for (std::string name : split(cfg.methods, ',')) {
    std::replace(name.begin(), name.end(), '_', '-');
    if (name == "gershgorin") o.methods |= 1u << SL_GERSHGORIN;
    else if (name == "cassini") o.methods |= 1u << SL_CASSINI;
    else if (name == "schur") o.methods |= 1u << SL_SCHUR;
    else if (name == "modified-schur") o.methods |= 1u << SL_MODIFIED_SCHUR;
    else config_error("unknown method '" + name + "'");
  }
  if (o.methods == 0) config_error("--methods is empty");
  o.norm = cfg.norm == "inf" ? SL_NORM_INF : SL_NORM_ONE;
  o.resolution = cfg.grid;
  o.tol = cfg.tol;
  if (cfg.window != "auto") {
    const auto parts = split(cfg.window, ',');
    if (parts.size() != 4) config_error("--window expects auto or re0,re1,im0,im1");
    double v[4];
    for (int i = 0; i < 4; ++i) {
      try {
        std::size_t used = 0;
        v[i] = std::stod(parts[static_cast<std::size_t>(i)], &used);
        if (used != parts[static_cast<std::size_t>(i)].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        config_error("--window component '" + parts[static_cast<std::size_t>(i)] + "' is not a number");
      }
    }
    o.explicit_window = 1;
    o.re_min = v[0];
    o.re_max = v[1];
    o.im_min = v[2];
    o.im_max = v[3];
  }
  return o;
}

using MatrixPtr = std::unique_ptr<sl_matrix, decltype(&sl_matrix_destroy)>;
using ResultPtr = std::unique_ptr<sl_result, decltype(&sl_result_destroy)>;

void check(sl_status s) {
  if (s != SL_OK) throw from_status(s);
}

fs::path with_suffix(const fs::path& base, const std::string& tag, const std::string& ext) {
  fs::path p = base;
  p.replace_extension();
  p += (tag.empty() ? "" : "." + tag) + ext;
  return p;
}

struct Outputs {
  fs::path report;  // empty: stdout
  fs::path svg;
  fs::path pbm;
};

// Runs one pipeline; returns the exit code and the report text.
int run_one(const Config& cfg, const sl_options& opts, const std::string& input, const Outputs& outs,
            std::string* report_out) {
  sl_matrix* raw = nullptr;
  check(sl_matrix_load(input.c_str(), &raw));
  MatrixPtr m(raw, sl_matrix_destroy);

  if (cfg.hermitian) {
    if (!sl_matrix_is_hermitian(m.get())) throw Failure{kHermitian, "HermitianCheckFailed", "matrix is not Hermitian to 1e-10"};
  }

  sl_result* rr = nullptr;
  if (cfg.command == "locate") check(sl_locate(m.get(), &opts, &rr));
  else if (cfg.command == "verify") check(sl_verify(m.get(), &opts, &rr));
  else check(sl_intervals(m.get(), &opts, &rr));
  ResultPtr r(rr, sl_result_destroy);

  std::string report = sl_result_json(r.get());
  report += '\n';
  if (!outs.report.empty()) write_atomic(outs.report, report);
  if (report_out) *report_out = std::move(report);

  if (cfg.command == "locate") {
    if (!outs.svg.empty()) write_atomic(outs.svg, sl_result_svg(r.get()));
    if (!outs.pbm.empty()) {
      const std::size_t count = sl_result_mask_count(r.get());
      for (std::size_t i = 0; i < count; ++i) {
        const std::string tag = count == 1 ? "" : sl_result_mask_method(r.get(), i);
        std::size_t len = 0;
        const unsigned char* bytes = sl_result_mask_pbm(r.get(), i, &len);
        write_atomic(with_suffix(outs.pbm, tag, ".pbm"), std::string(reinterpret_cast<const char*>(bytes), len));
        write_atomic(with_suffix(outs.pbm, tag, ".json"), std::string(sl_result_mask_sidecar(r.get(), i)) + "\n");
      }
    }
  }
  if (cfg.command == "verify" && !sl_result_all_member(r.get())) return kEscape;
  return kOk;
}

int run_single(const Config& cfg, const sl_options& opts) {
  if (cfg.input.empty()) config_error("--input or --batch is required");
  Outputs outs{cfg.out, cfg.svg, cfg.pbm};
  std::string report;
  const int code = run_one(cfg, opts, cfg.input, outs, cfg.out.empty() ? &report : nullptr);
  if (cfg.out.empty()) std::cout << report;
  if (code == kEscape) {
    std::cerr << "schurloc: error=Escape exit=4 file=" << cfg.input
              << " message=an eigenvalue lies outside a requested locus\n";
  }
  return code;
}

// Every *.json file in the directory is processed concurrently. With --out
// the per-file reports go to that directory as <stem>.<command>.json; the
// summary is printed on stdout either way.
int run_batch(const Config& cfg, const sl_options& opts) {
  if (!cfg.input.empty()) config_error("--input and --batch are mutually exclusive");
  if (!cfg.svg.empty() || !cfg.pbm.empty()) config_error("--svg and --pbm are not available with --batch");
  std::error_code ec;
  if (!fs::is_directory(cfg.batch, ec)) config_error("--batch directory not found: " + cfg.batch);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(cfg.batch)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (!cfg.out.empty()) {
    fs::create_directories(cfg.out, ec);
    if (ec) config_error("cannot create output directory " + cfg.out);
  }

  std::vector<int> codes(files.size(), kOk);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      Outputs outs;
      if (!cfg.out.empty()) outs.report = fs::path(cfg.out) / (files[i].stem().string() + "." + cfg.command + ".json");
      try {
        codes[i] = run_one(cfg, opts, files[i].string(), outs, nullptr);
      } catch (const Failure& f) {
        report(f, files[i].string());
        codes[i] = f.exit;
      }
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(hw, files.size()); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int overall = kOk;
  std::cout << "{\"schema\":\"schurloc/1\",\"command\":\"batch-" << cfg.command << "\",\"files\":[";
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (i) std::cout << ',';
    std::cout << "{\"file\":\"" << files[i].filename().string() << "\",\"exit\":" << codes[i] << '}';
    if (overall == kOk && codes[i] != kOk) overall = codes[i];
  }
  std::cout << "]}\n";
  return overall;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Eigenvalue inclusion regions: Gershgorin, Cassini, Schur and modified Schur loci"};
  app.require_subcommand(1);

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--input", cfg.input, "Matrix JSON file");
    sub->add_option("--methods", cfg.methods, "Comma list of gershgorin,cassini,schur,modified-schur");
    sub->add_option("--norm", cfg.norm, "Norm for the scalar Schur sets")->check(CLI::IsMember({"one", "inf"}));
    sub->add_option("--grid", cfg.grid, "Raster resolution per axis");
    sub->add_option("--window", cfg.window, "auto or re0,re1,im0,im1");
    sub->add_option("--tol", cfg.tol, "Interval endpoint tolerance");
    sub->add_option("--out", cfg.out, "Report JSON path (directory with --batch); stdout if omitted");
    sub->add_option("--svg", cfg.svg, "SVG contour output");
    sub->add_option("--pbm", cfg.pbm, "PBM mask output; one file per method when several are requested");
    sub->add_flag("--hermitian", cfg.hermitian, "Reject non-Hermitian input");
    sub->add_option("--batch", cfg.batch, "Process every *.json file in this directory");
  };
  for (const char* name : {"locate", "verify", "intervals"}) {
    CLI::App* sub = app.add_subcommand(name, "");
    add_common(sub);
    sub->callback([&cfg, name] { cfg.command = name; });
  }
  app.get_subcommand("locate")->description("Rasterise the loci and compare their areas");
  app.get_subcommand("verify")->description("Check that every eigenvalue lies in every locus");
  app.get_subcommand("intervals")->description("Real-axis intervals of the loci of a Hermitian matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    report({kConfig, "ConfigError", msg});
    return kConfig;
  }

  try {
    const sl_options opts = build_options(cfg);
    return cfg.batch.empty() ? run_single(cfg, opts) : run_batch(cfg, opts);
  } catch (const Failure& f) {
    report(f, cfg.batch.empty() ? cfg.input : std::string());
    return f.exit;
  } catch (const std::exception& e) {
    report({kFailure, "Internal", e.what()});
    return kFailure;
  }
}
