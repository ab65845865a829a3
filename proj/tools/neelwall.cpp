// Copyright 2026 The neelwall Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Uses only the C interface of libneel.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "neel/neel.h"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(neel_status s, const char* what) {
  if (s == NEEL_OK) return;
  const std::string msg = std::string(what) + ": " + neel_status_string(s) + ": " + neel_last_error();
  if (s == NEEL_ERR_DOMAIN || s == NEEL_ERR_INVALID_ARGUMENT) throw UsageError(msg);
  throw NumericError(msg);
}

// ---- option table: every flag maps onto a key of the run configuration ----

enum class Kind { Number, Integer, Text, Flag };

struct FlagSpec {
  const char* flag;
  const char* key;
  Kind kind;
  const char* help;
};

const std::vector<FlagSpec>& wall_flags() {
  static const std::vector<FlagSpec> v = {
      {"--model", "model", Kind::Text, "confined | unconfined"},
      {"--alpha", "alpha", Kind::Number, "transition angle in (0, pi)"},
      {"--walls", "walls", Kind::Text, "positions and signs, e.g. 0:+1,0.5:-1"},
      {"--n", "n", Kind::Integer, "number of walls at default positions"},
      {"--d", "d", Kind::Text, "signs for --n, e.g. +,-"},
  };
  return v;
}

const std::vector<FlagSpec>& sim_flags() {
  static const std::vector<FlagSpec> v = {
      {"--epsilon", "epsilon", Kind::Number, "exchange parameter"},
      {"--nodes", "nodes", Kind::Integer, "grid nodes"},
      {"--pad", "pad", Kind::Integer, "FFT zero-padding factor"},
      {"--half-width", "half_width", Kind::Number, "unconfined half width (0 = automatic)"},
      {"--grad-tol", "grad_tol", Kind::Number, "gradient tolerance (0 = default)"},
      {"--max-iter", "max_iter", Kind::Integer, "iteration cap (0 = default)"},
  };
  return v;
}

const std::vector<FlagSpec>& common_flags() {
  static const std::vector<FlagSpec> v = {
      {"--out", "out", Kind::Text, "output directory"},
      {"--format", "format", Kind::Text, "csv | json"},
      {"--svg", "svg", Kind::Flag, "also write SVG plots"},
      {"--seed", "seed", Kind::Integer, "random seed"},
      {"--threads", "threads", Kind::Integer, "worker threads"},
  };
  return v;
}

struct Bound {
  FlagSpec spec;
  CLI::Option* option = nullptr;
  std::shared_ptr<std::string> text = std::make_shared<std::string>();
  std::shared_ptr<bool> flag = std::make_shared<bool>(false);
};

void bind_flags(CLI::App* app, const std::vector<FlagSpec>& specs, std::vector<Bound>& out) {
  for (const auto& s : specs) {
    Bound b{s};
    if (s.kind == Kind::Flag) {
      b.option = app->add_flag(s.flag, *b.flag, s.help);
    } else {
      b.option = app->add_option(s.flag, *b.text, s.help);
    }
    out.push_back(std::move(b));
  }
}

json flag_value(const Bound& b) {
  const std::string& t = *b.text;
  try {
    std::size_t used = 0;
    switch (b.spec.kind) {
      case Kind::Number: {
        const double v = std::stod(t, &used);
        if (used != t.size()) break;
        return v;
      }
      case Kind::Integer: {
        const long long v = std::stoll(t, &used);
        if (used != t.size()) break;
        return v;
      }
      case Kind::Text:
        return t;
      case Kind::Flag:
        return *b.flag;
    }
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("invalid value for ") + b.spec.flag + ": '" + t + "'");
}

// ---- configuration access ----

double get_number(const json& cfg, const char* key, double fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg[key].is_number()) throw UsageError(std::string("'") + key + "' must be a number");
  return cfg[key].get<double>();
}

long long get_integer(const json& cfg, const char* key, long long fallback) {
  if (!cfg.contains(key)) return fallback;
  const auto& v = cfg[key];
  if (v.is_number_integer()) return v.get<long long>();
  if (v.is_number_float() && std::floor(v.get<double>()) == v.get<double>()) return static_cast<long long>(v.get<double>());
  throw UsageError(std::string("'") + key + "' must be an integer");
}

std::string get_text(const json& cfg, const char* key, const std::string& fallback) {
  if (!cfg.contains(key)) return fallback;
  if (!cfg[key].is_string()) throw UsageError(std::string("'") + key + "' must be a string");
  return cfg[key].get<std::string>();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int parse_sign(const std::string& s) {
  if (s == "+" || s == "+1" || s == "1") return 1;
  if (s == "-" || s == "-1") return -1;
  throw UsageError("invalid wall sign '" + s + "'");
}

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("invalid ") + what + " '" + s + "'");
}

struct Walls {
  int model = NEEL_MODEL_CONFINED;
  double alpha = std::numbers::pi / 2;
  std::vector<double> a;
  std::vector<int> d;
};

std::vector<double> default_positions(int model, std::size_t n) {
  std::vector<double> a(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double c = static_cast<double>(k) - 0.5 * static_cast<double>(n - 1);
    a[k] = model == NEEL_MODEL_CONFINED ? 2.0 * c / static_cast<double>(n + 1) : c;
  }
  return a;
}

// Walls given as "walls" (string "a:d,..." or array of {a, d}) or as "n"
// with optional "d" (string "+,-" or integer array).
Walls read_walls(json& cfg) {
  Walls w;
  const std::string model = get_text(cfg, "model", "confined");
  if (model == "confined") {
    w.model = NEEL_MODEL_CONFINED;
  } else if (model == "unconfined") {
    w.model = NEEL_MODEL_UNCONFINED;
  } else {
    throw UsageError("model must be 'confined' or 'unconfined'");
  }
  w.alpha = get_number(cfg, "alpha", std::numbers::pi / 2);
  if (cfg.contains("walls")) {
    const auto& walls = cfg["walls"];
    if (walls.is_string()) {
      for (const auto& item : split(walls.get<std::string>(), ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw UsageError("wall '" + item + "' must read position:sign");
        w.a.push_back(parse_double(item.substr(0, colon), "wall position"));
        w.d.push_back(parse_sign(item.substr(colon + 1)));
      }
    } else if (walls.is_array()) {
      for (const auto& item : walls) {
        if (!item.is_object() || !item.contains("a") || !item.contains("d")) {
          throw UsageError("walls entries must be objects {\"a\": ..., \"d\": ...}");
        }
        w.a.push_back(item["a"].get<double>());
        w.d.push_back(item["d"].get<int>());
      }
    } else {
      throw UsageError("'walls' must be a string or an array");
    }
  } else {
    const long long n = get_integer(cfg, "n", 1);
    if (n < 1 || n > 64) throw UsageError("'n' must lie in [1, 64]");
    if (cfg.contains("d")) {
      const auto& d = cfg["d"];
      if (d.is_string()) {
        for (const auto& s : split(d.get<std::string>(), ',')) w.d.push_back(parse_sign(s));
      } else if (d.is_array()) {
        for (const auto& s : d) w.d.push_back(s.get<int>());
      } else {
        throw UsageError("'d' must be a string or an array");
      }
      if (w.d.size() != static_cast<std::size_t>(n)) throw UsageError("'d' must list exactly n signs");
    } else {
      for (long long k = 0; k < n; ++k) w.d.push_back(k % 2 == 0 ? 1 : -1);
    }
    w.a = default_positions(w.model, static_cast<std::size_t>(n));
  }
  if (w.a.empty()) throw UsageError("at least one wall is required");
  json list = json::array();
  for (std::size_t k = 0; k < w.a.size(); ++k) list.push_back({{"a", w.a[k]}, {"d", w.d[k]}});
  cfg["walls"] = list;
  cfg["model"] = model;
  cfg["alpha"] = w.alpha;
  cfg.erase("n");
  cfg.erase("d");
  return w;
}

struct ConfigHandle {
  neel_config* ptr = nullptr;
  explicit ConfigHandle(const Walls& w) {
    check(neel_config_create(w.model, w.alpha, w.a.size(), w.a.data(), w.d.data(), &ptr), "wall configuration");
  }
  ~ConfigHandle() { neel_config_destroy(ptr); }
  ConfigHandle(const ConfigHandle&) = delete;
  ConfigHandle& operator=(const ConfigHandle&) = delete;
};

// ---- output ----

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json finite(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
      out += "\n";
    }
    return out;
  }

  json as_json() const {
    json arr = json::array();
    for (const auto& r : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < header.size(); ++i) {
        char* end = nullptr;
        const double v = std::strtod(r[i].c_str(), &end);
        if (end != nullptr && *end == '\0' && !r[i].empty()) {
          obj[header[i]] = finite(v);
        } else {
          obj[header[i]] = r[i];
        }
      }
      arr.push_back(obj);
    }
    return arr;
  }
};

class Output {
 public:
  Output(std::string dir, std::string format, bool svg) : dir_(std::move(dir)), format_(std::move(format)), svg_(svg) {
    if (format_ != "csv" && format_ != "json") throw UsageError("format must be 'csv' or 'json'");
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw UsageError("cannot create output directory '" + dir_ + "': " + ec.message());
    }
  }

  bool enabled() const { return !dir_.empty(); }
  bool svg() const { return svg_ && enabled(); }

  void table(const std::string& stem, const Table& t) {
    if (!enabled()) return;
    if (format_ == "csv") {
      write(stem + ".csv", t.csv());
    } else {
      write(stem + ".json", t.as_json().dump(2) + "\n");
    }
  }

  void document(const std::string& name, const json& j) {
    if (enabled()) write(name, j.dump(2) + "\n");
  }

  void text(const std::string& name, const std::string& body) {
    if (enabled()) write(name, body);
  }

  void manifest(const json& cfg, const std::string& command, int threads) {
    if (!enabled()) return;
    json m;
    m["tool"] = "neelwall";
    m["version"] = neel_version();
    m["command"] = command;
    m["threads"] = threads;
    m["config"] = cfg;
    json files = json::array();
    for (const auto& f : files_) files.push_back(f);
    m["outputs"] = files;
    write("run-manifest.json", m.dump(2) + "\n");
  }

 private:
  // Writes to a sibling temporary file, then renames over the target.
  void write(const std::string& name, const std::string& body) {
    const fs::path target = fs::path(dir_) / name;
    const fs::path tmp = fs::path(dir_) / ("." + name + ".tmp");
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw std::runtime_error("cannot write " + tmp.string());
      f << body;
      if (!f.flush()) throw std::runtime_error("cannot write " + tmp.string());
    }
    fs::rename(tmp, target);
    if (name != "run-manifest.json") files_.push_back(name);
  }

  std::string dir_;
  std::string format_;
  bool svg_;
  std::vector<std::string> files_;
};

// ---- SVG rendering ----

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                     const std::vector<Series>& series, bool logx) {
  const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 55;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  auto tx = [&](double x) { return logx ? std::log10(x) : x; };
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.y[i]) || (logx && s.x[i] <= 0)) continue;
      x0 = std::min(x0, tx(s.x[i]));
      x1 = std::max(x1, tx(s.x[i]));
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!(x1 > x0)) {
    x0 -= 1;
    x1 += 1;
  }
  if (!(y1 > y0)) {
    y0 -= 1;
    y1 += 1;
  }
  auto px = [&](double x) { return L + (tx(x) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};
  std::ostringstream o;
  char buf[160];
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << svg_escape(title) << "</text>\n";
  std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"black\"/>\n", L, T,
                W - L - R, H - T - B);
  o << buf;
  for (int k = 0; k <= 4; ++k) {
    const double fx = x0 + (x1 - x0) * k / 4.0;
    const double fy = y0 + (y1 - y0) * k / 4.0;
    const double sx = L + (W - L - R) * k / 4.0;
    const double sy = H - B - (H - T - B) * k / 4.0;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%.4g</text>\n", sx, H - B + 16,
                  logx ? std::pow(10.0, fx) : fx);
    o << buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">%.4g</text>\n", L - 6, sy + 4, fy);
    o << buf;
  }
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">" << svg_escape(xlabel)
    << "</text>\n";
  o << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << (T + H - B) / 2 << ")\">" << svg_escape(ylabel) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* colour = colours[s % 5];
    o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[s].x.size(); ++i) {
      if (!std::isfinite(series[s].y[i]) || (logx && series[s].x[i] <= 0)) continue;
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(series[s].x[i]), py(series[s].y[i]));
      o << buf;
    }
    o << "\"/>\n";
    if (!series[s].label.empty()) {
      o << "<text x=\"" << L + 10 << "\" y=\"" << T + 16 + 14 * s << "\" fill=\"" << colour << "\">"
        << svg_escape(series[s].label) << "</text>\n";
    }
  }
  o << "</svg>\n";
  return o.str();
}

// ---- commands ----

struct Context {
  json cfg;
  std::string command;
  int threads = 1;
  std::uint64_t seed = 20260;
};

json walls_json(const Walls& w, const std::vector<double>& a) {
  json list = json::array();
  for (std::size_t k = 0; k < a.size(); ++k) list.push_back({{"a", finite(a[k])}, {"d", w.d[k]}});
  return list;
}

int cmd_eval_w(Context& ctx, Output& out) {
  const Walls w = read_walls(ctx.cfg);
  ConfigHandle config(w);
  const std::size_t n = w.a.size();
  double W = 0;
  int status = 0;
  std::vector<double> self(n), pair(n * n), grad(n);
  check(neel_W(config.ptr, &W, &status, self.data(), pair.data(), grad.data()), "renormalised energy");
  static const char* names[] = {"finite", "+inf", "-inf"};
  json r;
  r["model"] = ctx.cfg["model"];
  r["alpha"] = w.alpha;
  r["walls"] = walls_json(w, w.a);
  r["W"] = finite(W);
  r["status"] = names[status];
  r["gradient"] = json::array();
  r["self_terms"] = json::array();
  for (std::size_t k = 0; k < n; ++k) {
    r["gradient"].push_back(finite(grad[k]));
    r["self_terms"].push_back(finite(self[k]));
  }
  r["pair_terms"] = json::array();
  for (std::size_t k = 0; k < n; ++k) {
    json row = json::array();
    for (std::size_t l = 0; l < n; ++l) row.push_back(finite(pair[k * n + l]));
    r["pair_terms"].push_back(row);
  }
  Table t{{"k", "a", "d", "self_term", "gradient"}, {}};
  for (std::size_t k = 0; k < n; ++k) {
    t.rows.push_back({std::to_string(k + 1), num(w.a[k]), std::to_string(w.d[k]), num(self[k]), num(grad[k])});
  }
  out.table("walls", t);
  out.document("eval-w.json", r);
  std::cout << r.dump(2) << "\n";
  return kExitOk;
}

int cmd_minimize_w(Context& ctx, Output& out) {
  const Walls w = read_walls(ctx.cfg);
  const long long starts = get_integer(ctx.cfg, "starts", 1);
  const double grad_tol = get_number(ctx.cfg, "grad_tol", 0.0);
  const long long max_iter = get_integer(ctx.cfg, "max_iter", 0);
  if (starts < 1 || starts > 100000) throw UsageError("'starts' must lie in [1, 100000]");
  ConfigHandle config(w);
  const std::size_t n = w.a.size();
  json r;
  r["model"] = ctx.cfg["model"];
  r["alpha"] = w.alpha;
  if (starts == 1) {
    std::vector<double> argmin(n);
    double W = 0, g = 0;
    int iters = 0, status = 0;
    check(neel_minimize_W(config.ptr, grad_tol, static_cast<int>(max_iter), argmin.data(), &W, &g, &iters, &status),
          "minimisation");
    r["status"] = neel_minimize_status_string(status);
    r["W"] = finite(W);
    r["grad_norm"] = finite(g);
    r["iterations"] = iters;
    r["argmin"] = walls_json(w, argmin);
    Table t{{"k", "a", "d"}, {}};
    for (std::size_t k = 0; k < n; ++k) t.rows.push_back({std::to_string(k + 1), num(argmin[k]), std::to_string(w.d[k])});
    out.table("argmin", t);
  } else {
    std::vector<int> statuses(starts);
    std::vector<double> Ws(starts), argmin(starts * n);
    check(neel_minimize_W_multistart(config.ptr, static_cast<int>(starts), ctx.seed, statuses.data(), Ws.data(),
                                     argmin.data()),
          "multistart minimisation");
    r["seed"] = ctx.seed;
    r["starts"] = json::array();
    Table t{{"start", "status", "W"}, {}};
    for (std::size_t k = 0; k < n; ++k) t.header.push_back("a" + std::to_string(k + 1));
    int converged = 0;
    for (long long s = 0; s < starts; ++s) {
      std::vector<double> a(argmin.begin() + s * n, argmin.begin() + (s + 1) * n);
      r["starts"].push_back({{"status", neel_minimize_status_string(statuses[s])}, {"W", finite(Ws[s])}, {"argmin", walls_json(w, a)}});
      std::vector<std::string> row = {std::to_string(s + 1), neel_minimize_status_string(statuses[s]), num(Ws[s])};
      for (double v : a) row.push_back(num(v));
      t.rows.push_back(row);
      converged += statuses[s] == NEEL_MIN_CONVERGED;
    }
    r["converged"] = converged;
    out.table("multistart", t);
  }
  out.document("minimize-w.json", r);
  std::cout << r.dump(2) << "\n";
  return kExitOk;
}

int cmd_scan(Context& ctx, Output& out) {
  const Walls w = read_walls(ctx.cfg);
  const std::string path = get_text(ctx.cfg, "path", "pair");
  const long long index = get_integer(ctx.cfg, "index", 1);
  const long long last = get_integer(ctx.cfg, "last", static_cast<long long>(w.a.size()));
  const double eta_min = get_number(ctx.cfg, "eta_min", 1e-6);
  const double eta_max = get_number(ctx.cfg, "eta_max", 1.0);
  const long long samples = get_integer(ctx.cfg, "samples", 25);
  int kind;
  if (path == "pair") {
    kind = 0;
    if (index < 1 || index >= static_cast<long long>(w.a.size())) throw UsageError("pair path needs 1 <= index < N");
  } else if (path == "block") {
    kind = 1;
    if (index < 1 || last < index || last > static_cast<long long>(w.a.size())) {
      throw UsageError("block path needs 1 <= index <= last <= N");
    }
  } else {
    throw UsageError("path must be 'pair' or 'block'");
  }
  if (!(eta_min > 0 && eta_max >= eta_min && eta_max <= 1)) throw UsageError("need 0 < eta_min <= eta_max <= 1");
  if (samples < 1 || samples > 100000) throw UsageError("'samples' must lie in [1, 100000]");
  ConfigHandle config(w);
  std::vector<double> etas(samples);
  for (long long i = 0; i < samples; ++i) {
    const double f = samples == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(samples - 1);
    etas[i] = std::exp(std::log(eta_max) + f * (std::log(eta_min) - std::log(eta_max)));
  }
  std::vector<double> W(samples);
  std::vector<int> status(samples);
  check(neel_scan_path(config.ptr, kind, static_cast<int>(index), static_cast<int>(last), etas.data(), etas.size(),
                       W.data(), status.data()),
        "path scan");
  static const char* names[] = {"finite", "+inf", "-inf"};
  Table t{{"eta", "W", "status"}, {}};
  json r;
  r["path"] = path;
  r["samples"] = json::array();
  for (long long i = 0; i < samples; ++i) {
    t.rows.push_back({num(etas[i]), num(W[i]), names[status[i]]});
    r["samples"].push_back({{"eta", etas[i]}, {"W", finite(W[i])}, {"status", names[status[i]]}});
  }
  out.table("scan", t);
  if (out.svg()) out.text("scan.svg", svg_plot("W along " + path + " path", "eta", "W", {{"", etas, W}}, true));
  std::cout << r.dump(2) << "\n";
  return kExitOk;
}

struct SimParams {
  double epsilon;
  int nodes;
  int pad;
  double half_width;
  double grad_tol;
  int max_iter;
};

SimParams read_sim(const json& cfg) {
  SimParams p;
  p.epsilon = get_number(cfg, "epsilon", 1e-3);
  p.nodes = static_cast<int>(get_integer(cfg, "nodes", 1 << 14));
  p.pad = static_cast<int>(get_integer(cfg, "pad", 4));
  p.half_width = get_number(cfg, "half_width", 0.0);
  p.grad_tol = get_number(cfg, "grad_tol", 0.0);
  p.max_iter = static_cast<int>(get_integer(cfg, "max_iter", 0));
  if (!(p.epsilon > 0)) throw UsageError("'epsilon' must be positive");
  if (p.nodes < 8 || p.nodes > (1 << 24)) throw UsageError("'nodes' must lie in [8, 2^24]");
  if (p.pad < 1 || p.pad > 64) throw UsageError("'pad' must lie in [1, 64]");
  if (p.half_width < 0 || p.grad_tol < 0 || p.max_iter < 0) throw UsageError("negative simulation parameter");
  return p;
}

int cmd_simulate(Context& ctx, Output& out) {
  const Walls w = read_walls(ctx.cfg);
  const SimParams p = read_sim(ctx.cfg);
  const long long trace_every = get_integer(ctx.cfg, "trace_every", 1);
  ConfigHandle config(w);
  neel_simulation* sim = nullptr;
  check(neel_simulate(config.ptr, p.epsilon, p.nodes, p.pad, p.half_width, p.grad_tol, p.max_iter,
                      static_cast<int>(trace_every), &sim),
        "simulation");
  std::unique_ptr<neel_simulation, void (*)(neel_simulation*)> guard(sim, neel_simulation_destroy);
  double ex = 0, an = 0, st = 0, tot = 0, g = 0, clamp = 0;
  int status = 0, iters = 0;
  check(neel_simulation_energy(sim, &ex, &an, &st, &tot), "simulation energy");
  check(neel_simulation_info(sim, &status, &iters, &g, &clamp), "simulation info");
  static const char* names[] = {"converged", "max-iter", "stalled"};
  json r;
  r["model"] = ctx.cfg["model"];
  r["alpha"] = w.alpha;
  r["epsilon"] = p.epsilon;
  r["status"] = names[status];
  r["iterations"] = iters;
  r["grad_norm"] = finite(g);
  r["clamp_error"] = finite(clamp);
  r["energy"] = {{"exchange", ex}, {"anisotropy", an}, {"stray", st}, {"total", tot}};
  const std::size_t nodes = neel_simulation_nodes(sim);
  std::vector<double> x(nodes), phi(nodes);
  check(neel_simulation_profile(sim, x.data(), phi.data()), "profile");
  Table prof{{"x", "phi", "m1", "m2"}, {}};
  std::vector<double> m1(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    m1[i] = std::cos(phi[i]);
    prof.rows.push_back({num(x[i]), num(phi[i]), num(m1[i]), num(std::sin(phi[i]))});
  }
  const std::size_t len = neel_simulation_trace_length(sim);
  std::vector<int> it(len);
  std::vector<double> tex(len), tan(len), tst(len), ttot(len);
  check(neel_simulation_trace(sim, it.data(), tex.data(), tan.data(), tst.data(), ttot.data()), "trace");
  Table trace{{"iteration", "exchange", "anisotropy", "stray", "total"}, {}};
  std::vector<double> itd(len);
  for (std::size_t i = 0; i < len; ++i) {
    trace.rows.push_back({std::to_string(it[i]), num(tex[i]), num(tan[i]), num(tst[i]), num(ttot[i])});
    itd[i] = it[i];
  }
  out.table("profile", prof);
  out.table("trace", trace);
  out.document("energy.json", r);
  if (out.svg()) {
    out.text("profile.svg", svg_plot("magnetisation", "x", "m1 = cos phi", {{"", x, m1}}, false));
    out.text("trace.svg", svg_plot("energy during descent", "iteration", "energy", {{"total", itd, ttot}}, false));
  }
  std::cout << r.dump(2) << "\n";
  return status == NEEL_DESCENT_CONVERGED ? kExitOk : kExitFailure;
}

int cmd_fit(Context& ctx, Output& out) {
  const Walls w = read_walls(ctx.cfg);
  const SimParams p = read_sim(ctx.cfg);
  std::vector<double> eps = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  if (ctx.cfg.contains("eps")) {
    const auto& e = ctx.cfg["eps"];
    eps.clear();
    if (e.is_string()) {
      for (const auto& s : split(e.get<std::string>(), ',')) eps.push_back(parse_double(s, "epsilon"));
    } else if (e.is_array()) {
      for (const auto& v : e) eps.push_back(v.get<double>());
    } else {
      throw UsageError("'eps' must be a string or an array");
    }
  }
  ctx.cfg["eps"] = eps;
  ConfigHandle config(w);
  double A = 0, B = 0, res = 0, cond = 0;
  int fs_status = 0;
  std::vector<double> energy(eps.size());
  std::vector<int> runs(eps.size());
  check(neel_expansion_fit(config.ptr, eps.data(), eps.size(), p.nodes, p.pad, ctx.threads, &A, &B, &res, &cond,
                           &fs_status, energy.data(), runs.data()),
        "expansion fit");
  static const char* names[] = {"converged", "max-iter", "stalled"};
  Table t{{"epsilon", "log_inv_delta", "energy", "energy_times_log", "status"}, {}};
  std::vector<double> logs(eps.size()), model(eps.size());
  json r;
  r["A"] = finite(A);
  r["B"] = finite(B);
  r["residual"] = finite(res);
  r["condition"] = finite(cond);
  r["status"] = fs_status == NEEL_FIT_OK ? "ok" : "ill-conditioned";
  r["runs"] = json::array();
  for (std::size_t i = 0; i < eps.size(); ++i) {
    logs[i] = std::log(1.0 / (eps[i] * std::log(1.0 / eps[i])));
    model[i] = A / logs[i] + B / (logs[i] * logs[i]);
    t.rows.push_back({num(eps[i]), num(logs[i]), num(energy[i]), num(energy[i] * logs[i]), names[runs[i]]});
    r["runs"].push_back({{"epsilon", eps[i]}, {"energy", finite(energy[i])}, {"status", names[runs[i]]}});
  }
  out.table("fit", t);
  out.document("fit.json", r);
  if (out.svg()) {
    out.text("fit.svg", svg_plot("minimal energy against epsilon", "epsilon", "energy",
                                 {{"simulated", eps, energy}, {"A/L + B/L^2", eps, model}}, true));
  }
  std::cout << r.dump(2) << "\n";
  return fs_status == NEEL_FIT_OK ? kExitOk : kExitFailure;
}

int cmd_profile(Context& ctx, Output& out) {
  if (!ctx.cfg.contains("step")) throw UsageError("profile needs --step FILE or a 'step' object");
  json step = ctx.cfg["step"];
  if (step.is_string()) {
    std::ifstream f(step.get<std::string>());
    if (!f) throw UsageError("cannot read step file '" + step.get<std::string>() + "'");
    try {
      step = json::parse(f);
    } catch (const json::exception& e) {
      throw UsageError(std::string("invalid step JSON: ") + e.what());
    }
  }
  ctx.cfg["step"] = step;
  neel_step* handle = nullptr;
  check(neel_step_from_json(step.dump().c_str(), &handle), "step function");
  std::unique_ptr<neel_step, void (*)(neel_step*)> guard(handle, neel_step_destroy);
  int iota = 0, simple = 0;
  double eta = 0;
  check(neel_step_analyse(handle, &iota, &eta, &simple), "step analysis");
  json r;
  r["iota"] = iota;
  r["eta"] = eta;
  r["simple"] = simple != 0;
  if (simple) {
    std::size_t count = 0;
    neel_step_profile(handle, 0, nullptr, nullptr, &count);
    std::vector<double> a(count);
    std::vector<int> d(count);
    check(neel_step_profile(handle, count, a.data(), d.data(), &count), "transition profile");
    r["walls"] = json::array();
    Table t{{"k", "a", "d"}, {}};
    for (std::size_t k = 0; k < count; ++k) {
      r["walls"].push_back({{"a", a[k]}, {"d", d[k]}});
      t.rows.push_back({std::to_string(k + 1), num(a[k]), std::to_string(d[k])});
    }
    out.table("transition", t);
  }
  out.document("profile.json", r);
  std::cout << r.dump(2) << "\n";
  return kExitOk;
}

int cmd_verify(Context& ctx, Output& out) {
  std::vector<int> ids;
  if (ctx.cfg.contains("criteria")) {
    const auto& c = ctx.cfg["criteria"];
    if (c.is_string()) {
      for (const auto& s : split(c.get<std::string>(), ',')) ids.push_back(static_cast<int>(parse_double(s, "criterion")));
    } else if (c.is_array()) {
      for (const auto& v : c) ids.push_back(v.get<int>());
    } else {
      throw UsageError("'criteria' must be a string or an array");
    }
  } else {
    const std::string suite = get_text(ctx.cfg, "suite", "all");
    std::size_t count = 0;
    neel_suite_criteria(suite.c_str(), nullptr, 0, &count);
    ids.resize(count);
    check(neel_suite_criteria(suite.c_str(), ids.data(), ids.size(), &count), "suite");
    ctx.cfg["suite"] = suite;
  }
  for (int id : ids) {
    if (id < 1 || id > 11) throw UsageError("criteria must lie in 1..11");
  }
  neel_report* report = nullptr;
  check(neel_verify(ids.data(), ids.size(), ctx.threads, ctx.seed, &report), "verification");
  std::unique_ptr<neel_report, void (*)(neel_report*)> guard(report, neel_report_destroy);
  auto text = [&](std::size_t index) {
    std::size_t needed = 0;
    neel_report_text(report, index, nullptr, 0, &needed);
    std::string s(needed, '\0');
    check(neel_report_text(report, index, s.data(), s.size(), &needed), "report");
    s.resize(needed - 1);
    return s;
  };
  const std::size_t n = neel_report_size(report);
  std::vector<std::string> failed;
  for (std::size_t i = 0; i < n; ++i) {
    std::cout << text(i) << "\n";
    int passed = 0;
    check(neel_report_passed(report, i, &passed), "report");
    if (!passed) failed.push_back(std::to_string(ids[i]));
  }
  const json full = json::parse(text(static_cast<std::size_t>(-1)));
  Table t{{"id", "name", "passed", "measured", "expected", "tolerance", "seconds"}, {}};
  for (const auto& r : full) {
    auto quoted = [](std::string s) {
      std::string q = "\"";
      for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
      return q + "\"";
    };
    t.rows.push_back({std::to_string(r["id"].get<int>()), quoted(r["name"]), r["passed"].get<bool>() ? "true" : "false",
                      quoted(r["measured"]), quoted(r["expected"]), quoted(r["tolerance"]), num(r["seconds"].get<double>())});
  }
  out.table("verify", t);
  out.document("verify.json", full);
  const bool all = neel_report_all_passed(report) != 0;
  std::cout << (all ? "all criteria passed" : "FAILED") << " (" << n - failed.size() << "/" << n << ")\n";
  if (!all) {
    std::string list;
    for (const auto& f : failed) list += (list.empty() ? "" : ", ") + f;
    std::cerr << "neelwall: failed criteria: " << list << "\n";
  }
  return all ? kExitOk : kExitFailure;
}

int threads_from_env() {
  const char* env = std::getenv("NEEL_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 1024) throw UsageError("NEEL_THREADS must be an integer in [1, 1024]");
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"neelwall: Neel wall energies, renormalised interaction energy and acceptance suite"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(neel_version()));

  struct Command {
    const char* name;
    const char* help;
    int (*run)(Context&, Output&);
    bool walls;
    bool sim;
  };
  const std::vector<Command> commands = {
      {"eval-w", "evaluate the renormalised energy W", cmd_eval_w, true, false},
      {"minimize-w", "minimise W over wall positions", cmd_minimize_w, true, false},
      {"scan", "sample W along a collapse path", cmd_scan, true, false},
      {"simulate", "minimise the full micromagnetic energy", cmd_simulate, true, true},
      {"fit", "fit E = A/L + B/L^2 over epsilon", cmd_fit, true, true},
      {"profile", "analyse a limiting step function", cmd_profile, false, false},
      {"verify", "run acceptance criteria", cmd_verify, false, false},
      {"run", "run the command named in the configuration file", nullptr, true, true},
  };

  std::string config_path;
  std::vector<std::pair<CLI::App*, std::vector<Bound>>> bound;
  const std::vector<FlagSpec> extra = {
      {"--starts", "starts", Kind::Integer, "minimize-w: random starts (multistart when > 1)"},
      {"--path", "path", Kind::Text, "scan: pair | block"},
      {"--index", "index", Kind::Integer, "scan: first wall of the path (1-based)"},
      {"--last", "last", Kind::Integer, "scan: last wall of a block path"},
      {"--eta-min", "eta_min", Kind::Number, "scan: smallest scale factor"},
      {"--eta-max", "eta_max", Kind::Number, "scan: largest scale factor"},
      {"--samples", "samples", Kind::Integer, "scan: number of log-spaced samples"},
      {"--trace-every", "trace_every", Kind::Integer, "simulate: energy trace stride (0 = off)"},
      {"--eps", "eps", Kind::Text, "fit: comma-separated epsilon values"},
      {"--step", "step", Kind::Text, "profile: step-function JSON file"},
      {"--suite", "suite", Kind::Text, "verify: all | specfun | potentials | renorm | micromag | profiles"},
      {"--criteria", "criteria", Kind::Text, "verify: comma-separated criterion ids"},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", config_path, "JSON configuration file (flags override)");
    std::vector<Bound> b;
    bind_flags(sub, common_flags(), b);
    if (c.walls) bind_flags(sub, wall_flags(), b);
    if (c.sim) bind_flags(sub, sim_flags(), b);
    bind_flags(sub, extra, b);
    bound.emplace_back(sub, std::move(b));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    std::size_t which = 0;
    while (!bound[which].first->parsed()) ++which;
    Context ctx;
    ctx.cfg = json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw UsageError("cannot read configuration file '" + config_path + "'");
      try {
        ctx.cfg = json::parse(f);
      } catch (const json::exception& e) {
        throw UsageError(std::string("invalid configuration JSON: ") + e.what());
      }
      if (!ctx.cfg.is_object()) throw UsageError("configuration must be a JSON object");
    }
    for (const auto& b : bound[which].second) {
      if (b.option->count() > 0) ctx.cfg[b.spec.key] = flag_value(b);
    }
    if (ctx.cfg.contains("walls") && (ctx.cfg.contains("n") || ctx.cfg.contains("d"))) {
      if (bound[which].first->get_option_no_throw("--walls") != nullptr &&
          bound[which].first->get_option("--walls")->count() > 0) {
        ctx.cfg.erase("n");
        ctx.cfg.erase("d");
      } else {
        ctx.cfg.erase("walls");
      }
    }

    std::string command = commands[which].name;
    const Command* cmd = &commands[which];
    if (cmd->run == nullptr) {
      command = get_text(ctx.cfg, "command", "");
      cmd = nullptr;
      for (const auto& c : commands) {
        if (c.run != nullptr && command == c.name) cmd = &c;
      }
      if (cmd == nullptr) throw UsageError("configuration must name a command: eval-w, minimize-w, scan, simulate, fit, profile, verify");
    }
    ctx.cfg["command"] = command;
    ctx.command = command;

    const int env_threads = threads_from_env();
    const long long threads = get_integer(ctx.cfg, "threads", env_threads > 0 ? env_threads : 1);
    if (threads < 1 || threads > 1024) throw UsageError("'threads' must lie in [1, 1024]");
    ctx.threads = static_cast<int>(threads);
    const long long seed = get_integer(ctx.cfg, "seed", 20260);
    if (seed < 0) throw UsageError("'seed' must be non-negative");
    ctx.seed = static_cast<std::uint64_t>(seed);
    ctx.cfg["seed"] = seed;

    Output out(get_text(ctx.cfg, "out", ""), get_text(ctx.cfg, "format", "csv"),
               ctx.cfg.contains("svg") && ctx.cfg["svg"].is_boolean() && ctx.cfg["svg"].get<bool>());
    ctx.cfg.erase("threads");
    const int code = cmd->run(ctx, out);
    out.manifest(ctx.cfg, command, ctx.threads);
    return code;
  } catch (const UsageError& e) {
    std::cerr << "neelwall: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "neelwall: numeric failure: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "neelwall: " << e.what() << "\n";
    return kExitFailure;
  }
}
