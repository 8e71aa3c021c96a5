// cylsle: tabulate the closed forms, emit curve data, run the Monte Carlo
// engines and the lattice determinant.
//
// Exit status: 0 ok, 1 usage or configuration, 2 domain, 3 precision,
// 4 partial Monte Carlo result.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "cylsle/errors.hpp"
#include "cylsle/geometry.hpp"
#include "cylsle/kernels.hpp"
#include "cylsle/lerw_mc.hpp"
#include "cylsle/passage.hpp"
#include "cylsle/sle_mc.hpp"
#include "cylsle/spectral.hpp"

using namespace cylsle;
using nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kUsage = 1, kDomain = 2, kPrecision = 3, kPartial = 4 };

struct Options {
  std::string function;
  std::string kind;
  std::string engine;
  std::optional<double> x;
  std::optional<double> y;
  std::string p;
  std::optional<double> a;
  std::optional<double> b;
  double kappa = 2.0;
  std::optional<int> M;
  std::optional<int> L;
  std::optional<int> target;
  std::int64_t n = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
  double tol = 1e-14;
  int grid = 513;
  std::string method = "h_transform";
  std::int64_t budget = 10'000'000;
  double dt = 1e-3;
  std::string format;
  std::string out;
};

Modulus parse_modulus(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "Inf") return Modulus::infinite();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("--p: cannot parse '" + s + "'");
  }
  if (used != s.size()) throw ConfigError("--p: cannot parse '" + s + "'");
  return Modulus(v);
}

std::vector<Modulus> parse_moduli(const std::string& list) {
  std::vector<Modulus> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_modulus(item));
  }
  if (out.empty()) throw ConfigError("--p: need at least one modulus");
  return out;
}

std::string modulus_text(Modulus p) {
  return p.is_infinite() ? "inf" : fmt::format("{}", p.value());
}

ordered_json modulus_json(Modulus p) {
  return p.is_infinite() ? ordered_json("inf") : ordered_json(p.value());
}

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw ConfigError(std::string("missing ") + flag);
  return *v;
}

int need(const std::optional<int>& v, const char* flag) {
  if (!v) throw ConfigError(std::string("missing ") + flag);
  return *v;
}

Modulus need_p(const Options& o) {
  if (o.p.empty()) throw ConfigError("missing --p");
  return parse_modulus(o.p);
}

SeriesPrecision precision(const Options& o) {
  SeriesPrecision prec;
  prec.rel_tol = o.tol;
  prec.validate();
  return prec;
}

// Where the record goes.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open --out file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

ordered_json header(const std::string& command, const Options& o) {
  ordered_json j;
  j["schema"] = 1;
  j["command"] = command;
  j["version"] = kVersion;
  j["precision"] = {{"rel_tol", o.tol}};
  return j;
}

// A flat record: metadata and one row of named values.
void emit_row(const Options& o, const ordered_json& meta, const ordered_json& row) {
  Sink sink(o.out);
  auto& os = sink.stream();
  if (o.format == "csv") {
    for (const auto& [k, v] : meta.items()) {
      os << "# " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
    std::string head;
    std::string vals;
    for (const auto& [k, v] : row.items()) {
      head += (head.empty() ? "" : ",") + k;
      vals += (vals.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    os << head << "\n" << vals << "\n";
  } else {
    ordered_json j = meta;
    j["result"] = row;
    os << j.dump(2) << "\n";
  }
}

int cmd_eval(const Options& o) {
  const auto prec = precision(o);
  ordered_json meta = header("eval", o);
  meta["function"] = o.function;
  ordered_json row;
  const auto& f = o.function;
  if (f == "Z" || f == "eta") {
    const Modulus p = need_p(o);
    meta["p"] = modulus_json(p);
    row["value"] = f == "Z" ? partition_function(p, prec) : dedekind_eta(p, prec);
  } else if (f == "pi_arc") {
    const Modulus p = need_p(o);
    const SideArc arc{need(o.a, "--a"), need(o.b, "--b")};
    meta["a"] = arc.a;
    meta["b"] = arc.b;
    meta["p"] = modulus_json(p);
    row["value"] = left_passage_arc(arc, p, prec);
  } else if (f == "schramm") {
    const HalfPlanePoint z{need(o.x, "--x"), o.y.value_or(1.0)};
    meta["x"] = z.re;
    meta["y"] = z.im;
    meta["kappa"] = o.kappa;
    row["value"] = schramm_half_plane(z, o.kappa, prec);
  } else {
    const double x = need(o.x, "--x");
    const Modulus p = need_p(o);
    meta["x"] = x;
    meta["p"] = modulus_json(p);
    if (f == "v") {
      row["value"] = v_field(x, p, prec);
    } else if (f == "vprime") {
      row["value"] = v_prime(x, p, prec);
    } else if (f == "H") {
      const auto k = excursion_kernel(x, p, prec);
      row["value"] = k.value;
      row["representation"] = k.representation_used == Representation::modular ? "modular"
                                                                                 : "direct";
    } else if (f == "omega") {
      row["value"] = omega_big(x, p, prec);
    } else if (f == "varpi") {
      row["value"] = left_passage(x, p, prec);
    } else if (f == "lambda") {
      row["value"] = lambda_density(x, p, prec);
    } else {
      throw ConfigError("eval: unknown function '" + f + "'");
    }
  }
  emit_row(o, meta, row);
  return kOk;
}

// Limits of Pi(pi/2, x; p) as p -> 0: the hitting density piles up at the
// end of the arc nearer to 0 mod 2 pi.
double pi_arc_small_p(double a, double x) {
  const double mid = kTwoPi - a;
  if (x < mid) return 0.0;
  return x == mid ? 0.5 : 1.0;
}

int cmd_curve(const Options& o) {
  const auto prec = precision(o);
  const auto ps = parse_moduli(o.p);
  if (o.grid < 2) throw ConfigError("curve: --grid must be at least 2");
  const bool arc = o.kind == "pi_vs_x";
  if (!arc && o.kind != "varpi_vs_x") throw ConfigError("curve: unknown kind '" + o.kind + "'");
  if (o.format == "json") throw ConfigError("curve: only csv output");

  const double a = kPi / 2;
  Sink sink(o.out);
  auto& os = sink.stream();
  os << "# schema: 1\n# command: curve\n# kind: " << o.kind << "\n# version: " << kVersion
     << "\n# grid: " << o.grid << "\n# rel_tol: " << fmt::format("{}", o.tol) << "\n";
  if (arc) os << "# arc: (pi/2, x)\n";
  os << "x";
  for (const auto p : ps) os << ",p=" << modulus_text(p);
  os << ",p->0,p->inf\n";
  for (int i = 0; i < o.grid; ++i) {
    // varpi on [0, 2 pi]; Pi on [pi/2, 2 pi), starting at the degenerate arc.
    const double x = arc ? a + (kTwoPi - a) * i / o.grid : kTwoPi * i / (o.grid - 1);
    os << fmt::format("{:.17g}", x);
    for (const auto p : ps) {
      double value = 0.0;
      if (!arc) {
        value = left_passage(x, p, prec);
      } else {
        value = i == 0 ? left_passage(a, p, prec) : left_passage_arc({a, x}, p, prec);
      }
      os << fmt::format(",{:.17g}", value);
    }
    double zero = 0.0;
    double inf = 0.0;
    if (!arc) {
      zero = x < kPi ? 0.0 : (x == kPi ? 0.5 : 1.0);
      inf = left_passage(x, Modulus::infinite());
    } else {
      zero = pi_arc_small_p(a, x);
      inf = i == 0 ? left_passage(a, Modulus::infinite())
                   : left_passage_arc({a, x}, Modulus::infinite());
    }
    os << fmt::format(",{:.17g},{:.17g}\n", zero, inf);
  }
  return kOk;
}

int cmd_mc(const Options& o) {
  ordered_json j = header("mc", o);
  j["engine"] = o.engine;
  const auto t0 = std::chrono::steady_clock::now();
  McEstimate e;
  double oracle = 0.0;
  if (o.engine == "sle") {
    const Modulus p = need_p(o);
    SdeRunConfig cfg;
    cfg.seed = o.seed;
    cfg.n_samples = o.n;
    cfg.workers = o.threads;
    cfg.dt_max = o.dt;
    cfg.validate();
    ordered_json params{{"p", modulus_json(p)}};
    if (o.a || o.b) {
      const SideArc arc{need(o.a, "--a"), need(o.b, "--b")};
      params["a"] = arc.a;
      params["b"] = arc.b;
      e = simulate_arc_passage(arc, p, cfg);
      oracle = left_passage_arc(arc, p);
    } else {
      const double x = need(o.x, "--x");
      params["x"] = x;
      e = simulate_passage(x, p, cfg);
      oracle = left_passage(x, p);
    }
    params.update(ordered_json{{"seed", cfg.seed},
                               {"n", cfg.n_samples},
                               {"threads", cfg.workers},
                               {"dt_max", cfg.dt_max},
                               {"dt_boundary_factor", cfg.dt_boundary_factor},
                               {"absorb_eps", cfg.absorb_eps},
                               {"time_eps", cfg.time_eps}});
    j["params"] = params;
  } else if (o.engine == "lerw") {
    const LatticeDomain dom{need(o.M, "--M"), need(o.L, "--L")};
    const int m = need(o.target, "--target");
    LerwConfig cfg;
    cfg.seed = o.seed;
    cfg.n_samples = o.n;
    cfg.workers = o.threads;
    cfg.max_attempts_per_sample = o.budget;
    if (o.method == "rejection") {
      cfg.method = LerwMethod::rejection;
    } else if (o.method == "h_transform") {
      cfg.method = LerwMethod::h_transform;
    } else {
      throw ConfigError("mc lerw: --method must be rejection or h_transform");
    }
    j["params"] = {{"M", dom.M},
                   {"L", dom.L},
                   {"target", m},
                   {"method", o.method},
                   {"seed", cfg.seed},
                   {"n", cfg.n_samples},
                   {"threads", cfg.workers},
                   {"max_attempts_per_sample", cfg.max_attempts_per_sample}};
    try {
      e = sample_lerw(dom, m, cfg);
    } catch (const PartialResultError& err) {
      j["partial"] = {{"accepted", err.accepted()},
                      {"left", err.left()},
                      {"requested", err.requested()}};
      Sink sink(o.out);
      sink.stream() << j.dump(2) << "\n";
      throw;
    }
    oracle = left_passage(kTwoPi * m / dom.M, dom.modulus());
  } else {
    throw ConfigError("mc: engine must be sle or lerw");
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ordered_json r;
  r["estimate"] = e.mean;
  r["stderr"] = e.std_error;
  r["n"] = e.n;
  r["n_left"] = e.n_left;
  r["n_unresolved"] = e.n_unresolved;
  r["flagged"] = e.flagged;
  r["steps"] = e.steps;
  r["oracle"] = oracle;
  r["z"] = e.std_error > 0.0 ? (e.mean - oracle) / e.std_error : 0.0;
  j["result"] = r;
  j["timing"] = {{"seconds", secs}};
  Sink sink(o.out);
  sink.stream() << j.dump(2) << "\n";
  return kOk;
}

int cmd_specdet(const Options& o) {
  const LatticeDomain dom{need(o.M, "--M"), need(o.L, "--L")};
  const auto r = regularize(dom);
  ordered_json meta = header("specdet", o);
  meta["M"] = dom.M;
  meta["L"] = dom.L;
  meta["p"] = dom.modulus_value();
  meta["catalan"] = kCatalan;
  ordered_json row{{"log_det", r.log_det},
                   {"bulk_term", r.bulk_term},
                   {"surface_term", r.surface_term},
                   {"regularized", r.regularized},
                   {"eta_target", r.eta_target},
                   {"eta_target_modular", r.eta_target_modular},
                   {"discrepancy", r.discrepancy}};
  emit_row(o, meta, row);
  return kOk;
}

int cmd_crosscheck(const Options& o) {
  const auto prec = precision(o);
  std::vector<double> xs;
  if (o.x) {
    xs.push_back(*o.x);
  } else {
    for (int i = 1; i <= 11; ++i) xs.push_back(0.5 * i);
  }
  ordered_json rows = ordered_json::array();
  for (double x : xs) {
    const auto c = schramm_cylinder_crosscheck(x, prec);
    rows.push_back({{"x", x},
                    {"half_plane", c.half_plane},
                    {"cylinder", c.cylinder},
                    {"difference", c.half_plane - c.cylinder},
                    {"image_re", c.image.real()},
                    {"image_im", c.image.imag()}});
  }
  Sink sink(o.out);
  auto& os = sink.stream();
  if (o.format == "csv") {
    os << "# schema: 1\n# command: crosscheck\n# version: " << kVersion
       << "\nx,half_plane,cylinder,difference,image_re,image_im\n";
    for (const auto& r : rows) {
      os << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n",
                        r["x"].get<double>(), r["half_plane"].get<double>(),
                        r["cylinder"].get<double>(), r["difference"].get<double>(),
                        r["image_re"].get<double>(), r["image_im"].get<double>());
    }
  } else {
    ordered_json j = header("crosscheck", o);
    j["kappa"] = 2;
    j["result"] = rows;
    os << j.dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cylinder SLE passage probabilities and checks"};
  app.require_subcommand(1);
  Options o;

  const auto fmt_check = CLI::IsMember({"csv", "json"});
  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "csv or json")->check(fmt_check);
    c->add_option("--out", o.out, "output file (default stdout)");
    c->add_option("--tol", o.tol, "series relative tolerance");
  };

  auto* eval = app.add_subcommand("eval", "evaluate one closed form");
  eval->add_option("function", o.function,
                   "v, vprime, H, omega, varpi, lambda, pi_arc, schramm, Z, eta")
      ->required()
      ->check(CLI::IsMember(
          {"v", "vprime", "H", "omega", "varpi", "lambda", "pi_arc", "schramm", "Z", "eta"}));
  eval->add_option("--x", o.x, "boundary point, or Re z for schramm");
  eval->add_option("--y", o.y, "Im z for schramm (default 1)");
  eval->add_option("--p", o.p, "modulus (number or inf)");
  eval->add_option("--a", o.a, "arc start");
  eval->add_option("--b", o.b, "arc end");
  eval->add_option("--kappa", o.kappa, "SLE parameter for schramm");
  common(eval);

  auto* curve = app.add_subcommand("curve", "tabulate a curve as CSV");
  curve->add_option("kind", o.kind, "varpi_vs_x or pi_vs_x")
      ->required()
      ->check(CLI::IsMember({"varpi_vs_x", "pi_vs_x"}));
  curve->add_option("--p", o.p, "comma-separated moduli")->required();
  curve->add_option("--grid", o.grid, "number of grid points");
  common(curve);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate with oracle");
  mc->add_option("engine", o.engine, "sle or lerw")
      ->required()
      ->check(CLI::IsMember({"sle", "lerw"}));
  mc->add_option("--x", o.x, "starting point (sle)");
  mc->add_option("--p", o.p, "modulus (sle)");
  mc->add_option("--a", o.a, "arc start (sle)");
  mc->add_option("--b", o.b, "arc end (sle)");
  mc->add_option("--dt", o.dt, "largest time step (sle)");
  mc->add_option("--M", o.M, "columns (lerw)");
  mc->add_option("--L", o.L, "rows (lerw)");
  mc->add_option("--target", o.target, "target column (lerw)");
  mc->add_option("--method", o.method, "rejection or h_transform (lerw)");
  mc->add_option("--budget", o.budget, "walk steps per requested sample (lerw)");
  mc->add_option("--n", o.n, "samples");
  mc->add_option("--seed", o.seed, "seed");
  mc->add_option("--threads", o.threads, "worker threads");
  common(mc);

  auto* spec = app.add_subcommand("specdet", "lattice Laplacian determinant");
  spec->add_option("--M", o.M, "columns")->required();
  spec->add_option("--L", o.L, "rows")->required();
  common(spec);

  auto* cross = app.add_subcommand("crosscheck", "Schramm formula vs p = inf cylinder");
  cross->add_option("--x", o.x, "single point (default 0.5, 1, ..., 5.5)");
  common(cross);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (o.format.empty()) o.format = curve->parsed() ? "csv" : "json";
    if (eval->parsed()) return cmd_eval(o);
    if (curve->parsed()) return cmd_curve(o);
    if (mc->parsed()) return cmd_mc(o);
    if (spec->parsed()) return cmd_specdet(o);
    return cmd_crosscheck(o);
  } catch (const PartialResultError& e) {
    std::cerr << "partial result: " << e.what() << " (" << e.accepted() << " of "
              << e.requested() << " accepted)\n";
    return kPartial;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return kPrecision;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kUsage;
  }
}
