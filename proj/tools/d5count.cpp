// Command-line front end. Exit codes: 0 success, 1 failed check, 2 bad input.

#include "d5/asymptotic.hpp"
#include "d5/peyre.hpp"
#include "d5/report.hpp"
#include "d5/surface.hpp"
#include "d5/torsor.hpp"
#include "d5/verification.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace {

using namespace d5;

enum class Method { Brute, Torsor };

struct RunConfig {
  std::string command;
  i64 height = 0;
  i64 max_B = 200;
  std::vector<i64> heights;
  Method method = Method::Torsor;
  u64 cutoff = 1'000'000;
  double tol = 1e-9;
  std::uint64_t mc_samples = 100'000'000;
  std::uint64_t mc_seed = kDefaultMcSeed;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 1;
  std::string output;
  std::string emit_points;
  bool torsor_csv = false;
  bool json = false;
  bool timing = false;
  std::vector<std::string> checks;
};

class Failed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to --output when given, else stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double v, int prec = 12) {
  std::ostringstream s;
  s << std::setprecision(prec) << v;
  return s.str();
}

int cmd_count(const RunConfig& c) {
  std::size_t n = 0;
  if (c.method == Method::Brute) {
    const auto pts = brute_force_enumerate(c.height, c.workers);
    n = pts.size();
    if (!c.emit_points.empty()) {
      std::ofstream f(c.emit_points);
      if (!f) throw std::invalid_argument("cannot open " + c.emit_points);
      write_points_csv(f, pts);
    }
  } else {
    if (!c.emit_points.empty()) {
      std::vector<SurfacePoint> pts;
      for (const auto& t : enumerate_torsor(c.height, c.workers)) pts.push_back(to_surface(t));
      std::sort(pts.begin(), pts.end());
      n = pts.size();
      std::ofstream f(c.emit_points);
      if (!f) throw std::invalid_argument("cannot open " + c.emit_points);
      write_points_csv(f, pts);
    } else {
      n = count_torsor(c.height, c.workers);
    }
  }
  Sink s(c.output);
  s.out() << Json{{"command", "count"}, {"method", c.method == Method::Brute ? "brute" : "torsor"}, {"B", c.height}, {"count", n}}.dump()
          << '\n';
  return 0;
}

int cmd_emit_points(const RunConfig& c) {
  Sink s(c.output);
  if (c.torsor_csv) {
    write_torsor_csv(s.out(), enumerate_torsor(c.height, c.workers));
  } else if (c.method == Method::Brute) {
    write_points_csv(s.out(), brute_force_enumerate(c.height, c.workers));
  } else {
    std::vector<SurfacePoint> pts;
    for (const auto& t : enumerate_torsor(c.height, c.workers)) pts.push_back(to_surface(t));
    std::sort(pts.begin(), pts.end());
    write_points_csv(s.out(), pts);
  }
  return 0;
}

int cmd_bijection(const RunConfig& c) {
  auto r = timed_check(c.timing, [&] { return check_bijection(c.max_B, c.workers); });
  Sink s(c.output);
  write_json_line(s.out(), r);
  return r.pass ? 0 : 1;
}

int cmd_constant(const RunConfig& c) {
  const auto q = omega_infty_quadrature(c.tol);
  const auto m = omega_infty_monte_carlo(c.mc_samples, c.mc_seed, c.workers);
  const auto k = c_sh_with(c.cutoff, q.value);
  Json j{{"alpha", to_string(k.alpha)},
         {"alpha_decimal", to_double(k.alpha)},
         {"euler_cutoff", c.cutoff},
         {"euler_product", k.euler.value},
         {"euler_tail_bound", k.euler.tail_bound},
         {"omega_infty_quadrature", q.value},
         {"omega_infty_quadrature_error", q.error},
         {"omega_infty_monte_carlo", m.value},
         {"omega_infty_monte_carlo_stderr", m.error},
         {"mc_samples", m.samples},
         {"mc_seed", m.seed},
         {"c_sh", k.value}};
  Sink s(c.output);
  if (c.json) {
    s.out() << j.dump() << '\n';
    return 0;
  }
  auto& o = s.out();
  o << "alpha                 " << to_string(k.alpha) << " = " << fmt(to_double(k.alpha)) << '\n'
    << "euler product (P=" << c.cutoff << ")  " << fmt(k.euler.value) << "  tail bound " << fmt(k.euler.tail_bound, 3)
    << '\n'
    << "omega_infty quadrature " << fmt(q.value) << "  +- " << fmt(q.error, 3) << '\n'
    << "omega_infty monte carlo " << fmt(m.value, 8) << "  +- " << fmt(m.error, 3) << "  (" << m.samples
    << " samples, seed " << m.seed << ")\n"
    << "c_SH                  " << fmt(k.value) << '\n';
  return 0;
}

int cmd_asymptotic(const RunConfig& c) {
  auto hs = c.heights;
  if (hs.empty()) throw std::invalid_argument("asymptotic: --heights is required");
  const double cs = c_sh(c.cutoff, c.tol).value;
  const auto t = asymptotic_table(hs, cs, c.workers);
  Sink s(c.output);
  auto& o = s.out();
  if (c.json) {
    Json rows = Json::array();
    for (const auto& r : t.rows) rows.push_back({{"B", r.B}, {"N", r.N}, {"N_over_Blog6B", r.per_log6}, {"ratio", r.ratio}});
    Json j{{"c_sh", cs}, {"rows", rows}};
    if (t.fit) j["fit"] = {{"degree", kFitDegree}, {"points", t.fit->points}, {"coeffs", t.fit->coeffs}, {"leading", t.fit->leading()}};
    o << j.dump() << '\n';
    return 0;
  }
  o << std::left << std::setw(10) << "B" << std::setw(14) << "N(B)" << std::setw(18) << "N/(B log^6 B)"
    << "N/(c B log^6 B)\n";
  for (const auto& r : t.rows)
    o << std::setw(10) << r.B << std::setw(14) << r.N << std::setw(18) << fmt(r.per_log6, 6) << fmt(r.ratio, 6) << '\n';
  o << "c_SH " << fmt(cs, 8) << '\n';
  if (t.fit) o << "degree-6 fit leading coefficient " << fmt(t.fit->leading(), 6) << " (" << t.fit->points << " points)\n";
  return 0;
}

const std::vector<std::string> kAllChecks{"bijection", "base_case",  "alpha",    "quadratic_sums", "torsor_identity",
                                          "sigma_p",   "omega_infty", "euler_tail", "sum_h_k",      "psi_sums",
                                          "eta",       "s_I",         "congruence", "asymptotic"};

int cmd_verify(const RunConfig& c) {
  std::vector<std::string> names = c.checks;
  if (names.empty()) {
    names = kAllChecks;
    names.pop_back();  // asymptotic only on request
  }
  for (const auto& n : names)
    if (std::find(kAllChecks.begin(), kAllChecks.end(), n) == kAllChecks.end())
      throw std::invalid_argument("verify: unknown check " + n);
  SuiteOptions opt;
  opt.workers = c.workers;
  opt.seed = c.seed;
  opt.mc_seed = c.mc_seed;
  opt.mc_samples = c.mc_samples;
  opt.tol = c.tol;
  opt.euler_cutoff = c.cutoff;
  Sink s(c.output);
  bool ok = true;
  auto emit = [&](VerificationReport r) {
    ok = ok && r.pass;
    write_json_line(s.out(), r);
    s.out().flush();
  };
  auto one = [&](auto fn) { emit(timed_check(c.timing, fn)); };
  auto many = [&](auto fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto rs = fn();
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (auto& r : rs) {
      if (c.timing) r.wall_time = dt / static_cast<double>(rs.size());
      emit(r);
    }
  };
  for (const auto& n : names) {
    if (n == "bijection") one([&] { return check_bijection(c.max_B, c.workers); });
    if (n == "base_case") one([] { return check_base_case(); });
    if (n == "alpha") one([] { return check_alpha(); });
    if (n == "quadratic_sums") many([&] { return check_quadratic_sums(300, c.workers); });
    if (n == "torsor_identity") one([&] { return check_torsor_identity(10000, c.seed); });
    if (n == "sigma_p") {
      one([] { return check_sigma_p(2, 5, {2, 3}); });
      one([] { return check_sigma_p(3, 3, {2}); });
    }
    if (n == "omega_infty") one([&] { return check_omega_infty(opt); });
    if (n == "euler_tail") one([&] { return check_euler_tail(10000, c.cutoff); });
    if (n == "sum_h_k")
      for (int k : {1, 2, 4}) one([k] { return check_sum_h_k(k); });
    if (n == "psi_sums") many([&] { return check_psi_sums(c.seed, c.workers); });
    if (n == "eta") many([&] { return check_eta(3000, c.workers); });
    if (n == "s_I") one([] { return check_s_I(); });
    if (n == "congruence") one([] { return check_congruence(); });
    if (n == "asymptotic") {
      auto hs = c.heights.empty() ? std::vector<i64>{1000, 10000, 100000, 1000000} : c.heights;
      one([&] { return check_asymptotic(asymptotic_table(hs, c_sh(c.cutoff, c.tol).value, c.workers)); });
    }
  }
  return ok ? 0 : 1;
}

int run(const RunConfig& c) {
  if (c.command == "count") return cmd_count(c);
  if (c.command == "emit-points") return cmd_emit_points(c);
  if (c.command == "bijection-check") return cmd_bijection(c);
  if (c.command == "constant") return cmd_constant(c);
  if (c.command == "asymptotic") return cmd_asymptotic(c);
  if (c.command == "verify") return cmd_verify(c);
  throw std::invalid_argument("no command given");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  CLI::App app{"Rational points of bounded height on the D5 cubic surface"};
  app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");
  app.require_subcommand(1);
  auto* workers = app.add_option("-w,--workers", c.workers, "worker threads (default: $D5_WORKERS, else 1)")->check(CLI::Range(1u, 1024u));
  app.add_option("-o,--output", c.output, "write the main output here instead of stdout");

  const std::map<std::string, Method> methods{{"brute", Method::Brute}, {"torsor", Method::Torsor}};
  auto add_height = [&](CLI::App* s, bool required) {
    auto* o = s->add_option("--height,-B", c.height, "height bound B")->check(CLI::Range(i64{1}, i64{1} << 40));
    if (required) o->required();
  };
  auto add_method = [&](CLI::App* s) {
    s->add_option("--method", c.method, "brute or torsor")->transform(CLI::CheckedTransformer(methods, CLI::ignore_case));
  };
  auto add_constant_opts = [&](CLI::App* s) {
    s->add_option("--cutoff", c.cutoff, "Euler product prime cutoff")->check(CLI::Range(u64{2}, u64{1} << 32));
    s->add_option("--tol", c.tol, "quadrature tolerance")->check(CLI::PositiveNumber);
  };

  auto* count = app.add_subcommand("count", "count points of height <= B");
  add_height(count, true);
  add_method(count);
  count->add_option("--emit-points", c.emit_points, "also write the points as CSV");

  auto* emit = app.add_subcommand("emit-points", "write points (or torsor points) of height <= B as CSV");
  add_height(emit, true);
  add_method(emit);
  emit->add_flag("--torsor", c.torsor_csv, "emit torsor coordinates instead of surface points");

  auto* bij = app.add_subcommand("bijection-check", "compare torsor and brute-force counts for every B <= max-B");
  bij->add_option("--max-B", c.max_B, "largest height")->required()->check(CLI::Range(i64{1}, kDefaultBruteCeiling));
  bij->add_flag("--timing", c.timing, "record wall time");

  auto* cons = app.add_subcommand("constant", "the leading constant and its factors");
  add_constant_opts(cons);
  cons->add_option("--mc-samples", c.mc_samples, "Monte Carlo samples for omega_infty")->check(CLI::Range(u64{64}, u64{1} << 40));
  cons->add_option("--mc-seed", c.mc_seed, "Monte Carlo seed");
  cons->add_flag("--json", c.json, "print JSON instead of a table");

  auto* asym = app.add_subcommand("asymptotic", "N(B) against c B (log B)^6");
  asym->add_option("--heights", c.heights, "ascending height bounds")->delimiter(',')->required()->check(CLI::PositiveNumber);
  add_constant_opts(asym);
  asym->add_flag("--json", c.json, "print JSON instead of a table");

  auto* ver = app.add_subcommand("verify", "run named checks, one JSON line each");
  ver->add_option("--check", c.checks, "check names (default: all but asymptotic)")->delimiter(',');
  ver->add_option("--max-B", c.max_B, "largest height for the bijection check")->check(CLI::Range(i64{1}, kDefaultBruteCeiling));
  ver->add_option("--heights", c.heights, "heights for the asymptotic check")->delimiter(',');
  ver->add_option("--seed", c.seed, "seed for randomized checks");
  ver->add_option("--mc-samples", c.mc_samples, "Monte Carlo samples for omega_infty")->check(CLI::Range(u64{64}, u64{1} << 40));
  ver->add_option("--mc-seed", c.mc_seed, "Monte Carlo seed");
  add_constant_opts(ver);
  ver->add_flag("--timing", c.timing, "record wall time (output is then not byte-stable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  c.command = app.get_subcommands().front()->get_name();
  try {
    // Read by hand: CLI11 silently drops environment values that fail validation.
    if (workers->count() == 0)
      if (const char* env = std::getenv("D5_WORKERS"); env && *env) {
        char* end = nullptr;
        const unsigned long w = std::strtoul(env, &end, 10);
        if (*end != '\0' || w < 1 || w > 1024) throw std::invalid_argument("D5_WORKERS must be an integer in [1, 1024]");
        c.workers = static_cast<unsigned>(w);
      }
    return run(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
