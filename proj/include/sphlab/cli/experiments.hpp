#pragma once

#include <fftw3.h>
#include <fmt/format.h>

#include <boost/version.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sphlab/cli/config.hpp"
#include "sphlab/estimates/sweeps.hpp"
#include "sphlab/evolution/io.hpp"
#include "sphlab/evolution/nls.hpp"
#include "sphlab/evolution/strichartz.hpp"
#include "sphlab/evolution/xsb.hpp"
#include "sphlab/harmonics/families.hpp"
#include "sphlab/illposedness/inflation.hpp"
#include "sphlab/lattice/counting.hpp"
#include "sphlab/lattice/sweep.hpp"
#include "sphlab/spectral/serialize.hpp"

namespace sphlab::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kReportSchema = "sphlab.report/1";
inline constexpr const char* kManifestSchema = "sphlab.manifest/1";

inline const std::vector<std::string>& experiment_tags() {
  static const std::vector<std::string> tags = {"optimality", "projector", "strichartz", "lattice", "nls", "xsb", "inflation"};
  return tags;
}

struct RunOptions {
  std::uint64_t seed = 1;
  int workers = 1;
  bool fine = false;
};

/// Outputs of one run. `failure` is set when the run ended early (blow-up) but still produced data.
struct Artifacts {
  std::string csv;
  nlohmann::json report;
  std::optional<ErrorKind> failure;
  std::string message;
};

/// A validated experiment: resolved parameters plus the computation.
struct Prepared {
  std::string tag;
  nlohmann::json parameters;
  std::function<Artifacts()> run;
};

/// 0 ok; 2 configuration; 3 precision; 4 solver blow-up; 1 anything else.
inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::config:
    case ErrorKind::parameter:
    case ErrorKind::domain:
    case ErrorKind::index: return 2;
    case ErrorKind::precision: return 3;
    case ErrorKind::blow_up: return 4;
    case ErrorKind::degenerate: return 1;
  }
  return 1;
}

inline nlohmann::json library_versions() {
  return {{"sphlab", kVersion},
          {"fmt", FMT_VERSION},
          {"fftw", std::string(fftw_version)},
          {"boost", BOOST_LIB_VERSION},
          {"nlohmann_json", fmt::format("{}.{}.{}", NLOHMANN_JSON_VERSION_MAJOR, NLOHMANN_JSON_VERSION_MINOR,
                                        NLOHMANN_JSON_VERSION_PATCH)}};
}

namespace detail {

inline std::string num(double x) { return fmt::format("{:.17g}", x); }

inline void check(bool cond, const std::string& what) { require(cond, ErrorKind::config, what); }

inline void check_increasing(const std::vector<int>& s, const std::string& what, int lo = 1) {
  check(!s.empty(), what + ": empty schedule");
  for (size_t i = 0; i < s.size(); ++i) {
    check(s[i] >= lo, what + ": values must be >= " + std::to_string(lo));
    if (i) check(s[i] > s[i - 1], what + ": schedule must be increasing");
  }
}

inline bool dyadic(int n) { return n >= 1 && (n & (n - 1)) == 0; }

inline ManifoldSpec read_manifold(const Config& c, const std::string& sec, const std::string& def_kind, int def_dim = 3) {
  const auto kind = c.get_string(sec, "manifold", def_kind);
  const double rho = c.get_double(sec, "rho", 1.0);
  const int dim = c.get_int(sec, "dim", def_dim);
  check(rho > 0, "[" + sec + "] rho must be > 0");
  if (kind == "S2") return ManifoldSpec::sphere2(rho);
  if (kind == "S3") return ManifoldSpec::sphere3();
  if (kind == "S2xS1") return ManifoldSpec::product(rho);
  if (kind == "zonal") {
    check(dim >= 2 && dim <= 4, "[" + sec + "] zonal dim must be 2, 3 or 4");
    return ManifoldSpec::zonal(dim);
  }
  fail(ErrorKind::config, "[" + sec + "] unknown manifold '" + kind + "' (S2, S3, S2xS1, zonal)");
}

inline nlohmann::json fit_json(const ExponentFit& f) {
  return {{"slope", f.slope}, {"intercept", f.intercept}, {"residual_rms", f.residual_rms},
          {"x_min", f.x_min}, {"x_max", f.x_max}, {"first_used", f.first_used}};
}

inline std::string estimate_csv(const EstimateReport& r) {
  std::string out;
  for (const auto& n : r.param_names) out += n + ",";
  out += "x,ratio,model,under_resolved\n";
  for (const auto& p : r.points) {
    for (double v : p.params) out += num(v) + ",";
    out += fmt::format("{},{},{},{}\n", num(p.x), num(p.ratio), num(p.model), p.under_resolved ? 1 : 0);
  }
  return out;
}

inline nlohmann::json estimate_json(const EstimateReport& r, double precision) {
  nlohmann::json j = {{"schema", kReportSchema},
                      {"experiment", r.tag},
                      {"manifold", to_json(r.manifold)},
                      {"families", r.families},
                      {"model_exponent", r.model_exponent},
                      {"measured_exponent", r.fit.slope},
                      {"residual", r.fit.residual_rms},
                      {"fit", fit_json(r.fit)},
                      {"bound_constant", r.bound_constant},
                      {"under_resolved", r.under_resolved},
                      {"precision_estimate", precision},
                      {"status", "ok"}};
  if (r.fit_log_corrected) j["fit_log_corrected"] = fit_json(*r.fit_log_corrected);
  return j;
}

/// Quadrature-exact experiments: values move only by rounding under refinement.
inline constexpr double kExactPrecision = 1e-9;

inline Prepared prepare_optimality(const Config& c, const RunOptions& o) {
  OptimalitySpec s;
  s.d = c.get_int("optimality", "d", 2);
  const auto fam = c.get_string("optimality", "family", "highest-weight");
  check(fam == "highest-weight" || fam == "zonal", "[optimality] family must be highest-weight or zonal");
  s.family = fam == "zonal" ? Family::zonal : Family::highest_weight;
  s.arity = c.get_int("optimality", "arity", 2);
  s.schedule = c.get_int_list("optimality", "schedule", {8, 16, 32, 64, 128, 256});
  s.p_factor = c.get_int("optimality", "p_factor", 2);
  s.r_fixed = c.get_int("optimality", "r_fixed", 4);
  s.workers = o.workers;
  s.refine = o.fine ? 2 : 1;
  check(s.arity == 2 || s.arity == 3, "[optimality] arity must be 2 or 3");
  check(s.p_factor >= 1, "[optimality] p_factor must be >= 1");
  check(s.r_fixed >= 0, "[optimality] r_fixed must be >= 0");
  if (s.family == Family::highest_weight)
    check(s.d == 2 || s.d == 3, "[optimality] highest-weight family needs d = 2 or 3");
  else
    check(s.d >= 2 && s.d <= 4, "[optimality] zonal family needs d in 2..4");
  if (s.arity == 3) check(s.family == Family::highest_weight && s.d == 2, "[optimality] arity 3 needs d = 2 highest-weight");
  check_increasing(s.schedule, "[optimality] schedule");
  check(s.schedule.size() >= 3, "[optimality] need at least 3 degrees for the fit");
  nlohmann::json p = {{"d", s.d}, {"family", fam}, {"arity", s.arity}, {"schedule", s.schedule},
                      {"p_factor", s.p_factor}, {"r_fixed", s.r_fixed}};
  return {"optimality", p, [s] {
            const auto r = optimality_sweep(s);
            return Artifacts{estimate_csv(r), estimate_json(r, kExactPrecision), {}, {}};
          }};
}

inline Prepared prepare_projector(const Config& c, const RunOptions& o) {
  ProjectorSpec s;
  s.manifold = read_manifold(c, "projector", "zonal");
  const auto win = c.get_string("projector", "window", "bump");
  const double width = c.get_double("projector", "width", 1.0);
  check(win == "bump" || win == "gaussian", "[projector] window must be bump or gaussian");
  check(width > 0, "[projector] width must be > 0");
  s.chi = win == "bump" ? windows::bump(width) : windows::gaussian(width);
  s.chi_radius = win == "bump" ? width : 9 * width;
  s.centers = c.get_double_list("projector", "centers", {4, 8, 16, 32, 64});
  s.trials = c.get_int("projector", "trials", 4);
  s.seed = o.seed;
  s.workers = o.workers;
  s.refine = o.fine ? 2 : 1;
  check(s.centers.size() >= 3, "[projector] need at least 3 centers for the fit");
  for (size_t i = 0; i < s.centers.size(); ++i) {
    check(s.centers[i] >= 1, "[projector] centers must be >= 1");
    if (i) check(s.centers[i] > s.centers[i - 1], "[projector] centers must be increasing");
  }
  check(s.trials >= 1, "[projector] trials must be >= 1");
  nlohmann::json p = {{"manifold", to_json(s.manifold)}, {"window", win}, {"width", width},
                      {"centers", s.centers}, {"trials", s.trials}, {"seed", s.seed}};
  return {"projector", p, [s] {
            const auto r = projector_sweep(s);
            return Artifacts{estimate_csv(r), estimate_json(r, kExactPrecision), {}, {}};
          }};
}

inline Prepared prepare_strichartz(const Config& c, const RunOptions& o) {
  StrichartzSweepSpec s;
  s.manifold = read_manifold(c, "strichartz", "zonal");
  s.schedule = c.get_int_list("strichartz", "schedule", {1, 2, 4, 8, 16, 32});
  s.trials = c.get_int("strichartz", "trials", 4);
  const auto m = c.get_string("strichartz", "method", "resonance-sum");
  check(m == "resonance-sum" || m == "time-quadrature", "[strichartz] method must be resonance-sum or time-quadrature");
  s.method = m == "resonance-sum" ? StrichartzMethod::resonance_sum : StrichartzMethod::time_quadrature;
  s.seed = o.seed;
  s.workers = o.workers;
  s.refine = o.fine ? 2 : 1;
  check_increasing(s.schedule, "[strichartz] schedule");
  for (int n : s.schedule) check(dyadic(n), "[strichartz] scales must be powers of two");
  check(s.schedule.size() >= 3, "[strichartz] need at least 3 scales for the fit");
  check(s.trials >= 1, "[strichartz] trials must be >= 1");
  if (s.method == StrichartzMethod::resonance_sum)
    check(s.manifold.integer_spectrum(), "[strichartz] resonance-sum needs an integer spectrum");
  nlohmann::json p = {{"manifold", to_json(s.manifold)}, {"schedule", s.schedule}, {"trials", s.trials},
                      {"method", m}, {"seed", s.seed}};
  return {"strichartz", p, [s] {
            const auto r = strichartz_sweep(s);
            return Artifacts{estimate_csv(r), estimate_json(r, kExactPrecision), {}, {}};
          }};
}

inline Kappa parse_kappa(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      size_t a = 0, b = 0;
      const long long num = std::stoll(s.substr(0, slash), &a), den = std::stoll(s.substr(slash + 1), &b);
      check(a == slash && b == s.size() - slash - 1, "[lattice] malformed kappa '" + s + "'");
      check(num > 0 && den > 0, "[lattice] kappa must be positive");
      return Kappa::rational(num, den);
    }
    size_t a = 0;
    const double v = std::stod(s, &a);
    check(a == s.size() && v > 0 && std::isfinite(v), "[lattice] malformed kappa '" + s + "'");
    return Kappa::real(v);
  } catch (const std::logic_error&) {
    fail(ErrorKind::config, "[lattice] malformed kappa '" + s + "'");
  }
}

inline Prepared prepare_lattice(const Config& c, const RunOptions& o) {
  const auto counter = c.get_string("lattice", "counter", "gauss");
  check(counter == "gauss" || counter == "alpha" || counter == "lambda", "[lattice] counter must be gauss, alpha or lambda");
  const auto schedule = c.get_int_list("lattice", "schedule", {4, 8, 16, 32, 64});
  const int tau_max = c.get_int("lattice", "tau_max", 1000000);
  const auto kappa_s = c.get_string("lattice", "kappa", "1");
  const int n2 = c.get_int("lattice", "n2", 0);
  const int n3 = c.get_int("lattice", "n3", 1);
  check_increasing(schedule, "[lattice] schedule");
  check(tau_max >= 0, "[lattice] tau_max must be >= 0");
  const Kappa kappa = parse_kappa(kappa_s);
  if (counter != "gauss")
    for (int n : schedule) check(dyadic(n), "[lattice] scales must be powers of two");
  if (counter == "lambda") {
    check(dyadic(n3) && (n2 == 0 || dyadic(n2)), "[lattice] n2, n3 must be powers of two (n2 = 0 follows N)");
    for (int n : schedule) check(n >= (n2 ? n2 : n) && (n2 ? n2 : n) >= n3, "[lattice] need N >= n2 >= n3");
  }
  nlohmann::json p = {{"counter", counter}, {"schedule", schedule}};
  if (counter == "gauss") p["tau_max"] = tau_max;
  if (counter == "lambda") p.update({{"kappa", kappa.str()}, {"n2", n2}, {"n3", n3}});
  const int workers = o.workers;
  return {"lattice", p, [=] {
            Counter f;
            std::vector<std::string> names;
            double model = 0;
            if (counter == "gauss") {
              f = [=](i64 N) { return gauss_rep_max(N, tau_max); };
              names = {"tau"};
            } else if (counter == "alpha") {
              f = [](i64 N) { return alpha_sup(N, N); };
              names = {"tau"};
            } else {
              f = [=](i64 N) { return lambda_max(kappa, N, n2 ? n2 : N, n3); };
              names = {"l", "xi"};
              model = n2 ? 0 : 1;  // the N3^2 N2 scale
            }
            const std::vector<i64> sched(schedule.begin(), schedule.end());
            const auto r = count_sweep(counter, names, f, sched, workers);
            std::ostringstream os;
            write_csv(os, r);
            nlohmann::json j = {{"schema", kReportSchema},
                                {"experiment", "lattice"},
                                {"counter", counter},
                                {"model_exponent", model},
                                {"measured_exponent", r.growth ? nlohmann::json(r.growth->slope) : nlohmann::json(nullptr)},
                                {"residual", r.growth ? nlohmann::json(r.growth->residual_rms) : nlohmann::json(nullptr)},
                                {"overall_max", r.overall_max},
                                {"max_normalized", r.max_normalized},
                                {"guard_hits", r.guard_hits},
                                {"tie_convention", r.tie_convention},
                                {"precision_estimate", 0.0},
                                {"status", "ok"}};
            if (r.growth) j["fit"] = fit_json(*r.growth);
            return Artifacts{os.str(), j, {}, {}};
          }};
}

inline NonlinearitySpec read_nonlinearity(const Config& c, const std::string& sec) {
  const auto kind = c.get_string(sec, "nonlinearity", "pure");
  const double alpha = c.get_double(sec, "alpha", 3);
  check(kind == "pure" || kind == "smooth" || kind == "none", "[" + sec + "] nonlinearity must be pure, smooth or none");
  if (kind == "none") return NonlinearitySpec::none();
  check(alpha > 1, "[" + sec + "] alpha must be > 1");
  return kind == "pure" ? NonlinearitySpec::pure(alpha) : NonlinearitySpec::smooth(alpha);
}

/// "smooth": a e^{-p/2} (1 + 0.3 i p) on each degree-p basis element;
/// "random": a (1+p)^{-2} times a unit random harmonic per degree.
inline SpectralField initial_data(const ManifoldSpec& mf, const std::string& kind, double amp, int degree, std::uint64_t seed) {
  SpectralField u(mf);
  if (kind == "smooth") {
    for (const auto& i : enumerate_basis(mf, degree)) {
      const int p = sphlab::degree(mf, i);
      u.set(i, amp * std::exp(-0.5 * p) * cplx(1, 0.3 * p));
    }
  } else {
    for (int p = 0; p <= degree; ++p) u += (amp / ((1.0 + p) * (1.0 + p))) * random_harmonic(mf, p, seed + 31 * p).field;
  }
  return u;
}

inline Prepared prepare_nls(const Config& c, const RunOptions& o) {
  const auto mf = read_manifold(c, "nls", "zonal");
  const auto nl = read_nonlinearity(c, "nls");
  const auto data = c.get_string("nls", "data", "smooth");
  const double amp = c.get_double("nls", "amplitude", 2.0);
  const int deg = c.get_int("nls", "data_degree", 8);
  NlsOptions opt;
  opt.T = c.get_double("nls", "T", 1.0);
  opt.dt = c.get_double("nls", "dt", 0.005);
  opt.max_degree = c.get_int("nls", "max_degree", 64);
  opt.output_every = c.get_int("nls", "output_every", 10);
  opt.refine = o.fine ? 2 : 1;
  const bool save = c.get_bool("nls", "save_trajectory", false);
  check(data == "smooth" || data == "random", "[nls] data must be smooth or random");
  check(mf.kind != ManifoldKind::s2xs1 || data == "smooth", "[nls] random data needs a sphere or the zonal sector");
  check(deg >= 0 && deg <= opt.max_degree, "[nls] need 0 <= data_degree <= max_degree");
  check(amp != 0, "[nls] amplitude must be nonzero");
  check(opt.T > 0 && opt.dt > 0 && opt.dt <= opt.T, "[nls] need 0 < dt <= T");
  check(opt.output_every >= 1, "[nls] output_every must be >= 1");
  const auto u0 = initial_data(mf, data, amp, deg, o.seed);
  nlohmann::json p = {{"manifold", to_json(mf)}, {"nonlinearity", nl.str()}, {"data", data}, {"amplitude", amp},
                      {"data_degree", deg}, {"T", opt.T}, {"dt", opt.dt}, {"max_degree", opt.max_degree},
                      {"output_every", opt.output_every}, {"seed", o.seed}, {"save_trajectory", save}};
  return {"nls", p, [=] {
            const auto a = nls_simulate(u0, nl, opt);
            Artifacts out;
            std::ostringstream os;
            write_conservation_csv(os, a.conservation);
            out.csv = os.str();
            auto& j = out.report;
            j = {{"schema", kReportSchema},
                 {"experiment", "nls"},
                 {"scheme", a.trajectory.scheme},
                 {"model_exponent", 2},
                 {"mass_drift", a.conservation.mass_drift},
                 {"energy_drift", a.conservation.energy_drift},
                 {"aliasing_residual", a.conservation.aliasing_residual},
                 {"under_resolved", a.conservation.under_resolved},
                 {"steps", a.steps},
                 {"last_valid_time", a.last_valid_time},
                 {"precision_estimate", std::max(kExactPrecision, 10 * a.conservation.aliasing_residual)},
                 {"status", to_string(a.status)}};
            if (save) j["trajectory"] = to_json(a.trajectory);
            if (a.status == RunStatus::blow_up) {
              j["measured_exponent"] = nullptr;
              j["residual"] = nullptr;
              out.failure = ErrorKind::blow_up;
              out.message = a.message;
              return out;
            }
            // time order from the energy drift at dt and dt / 2
            auto half = opt;
            half.dt = opt.dt / 2;
            half.output_every = opt.output_every * 2;
            const auto b = nls_simulate(u0, nl, half);
            const double e1 = a.conservation.energy_drift, e2 = b.conservation.energy_drift;
            const bool ok = b.status == RunStatus::ok && e1 > 0 && e2 > 0;
            j["energy_drift_half_dt"] = e2;
            j["drift_ratio"] = ok ? nlohmann::json(e1 / e2) : nlohmann::json(nullptr);
            j["measured_exponent"] = ok ? nlohmann::json(std::log2(e1 / e2)) : nlohmann::json(nullptr);
            j["residual"] = a.conservation.mass_drift;
            return out;
          }};
}

inline Prepared prepare_xsb(const Config& c, const RunOptions& o) {
  const auto mf = read_manifold(c, "xsb", "S3");
  const int deg = c.get_int("xsb", "data_degree", 4);
  const auto degrees = c.get_int_list("xsb", "degrees", {1, 2, 4, 8, 16});
  const auto s_list = c.get_double_list("xsb", "s", {0, 1});
  const auto b_list = c.get_double_list("xsb", "b", {0.6, 0.75});
  const auto wname = c.get_string("xsb", "window", "plateau");
  const int samples = c.get_int("xsb", "samples", 4096) * (o.fine ? 2 : 1);
  check(wname == "plateau" || wname == "bump", "[xsb] window must be plateau or bump");
  check(samples >= 16, "[xsb] samples must be >= 16");
  check(mf.kind != ManifoldKind::s2xs1, "[xsb] needs a sphere or the zonal sector");
  check(deg >= 0, "[xsb] data_degree must be >= 0");
  check_increasing(degrees, "[xsb] degrees", 0);
  check(degrees.size() >= 3, "[xsb] need at least 3 degrees for the fit");
  for (double b : b_list) check(b > 0.5, "[xsb] b must be > 1/2");
  const auto w = wname == "plateau" ? WindowSpec::plateau(samples) : WindowSpec::bump(2, samples);
  const std::uint64_t seed = o.seed;
  nlohmann::json p = {{"manifold", to_json(mf)}, {"data_degree", deg}, {"degrees", degrees}, {"s", s_list},
                      {"b", b_list}, {"window", wname}, {"samples", samples}, {"seed", seed}};
  return {"xsb", p, [=] {
            // free identity on random data, then ||psi e^{it Delta} e_p||_{X^{s,b}} / ||psi||_{H^b} ~ <lambda_p>^{s/2}
            const auto u0 = initial_data(mf, "random", 1.0, deg, seed);
            const auto tr = windowed_free_trajectory(u0, w);
            std::string csv = "kind,s,b,degree,lambda,value,expected,rel_err\n";
            nlohmann::json fits = nlohmann::json::array();
            double worst = 0, max_err = 0, worst_model = 0, worst_slope = 0, worst_res = 0;
            for (double s : s_list)
              for (double b : b_list) {
                const double hb = w.hb_norm(b), val = xsb_norm(tr, s, b), expect = sobolev_norm(u0, s) * hb;
                const double err = std::abs(val - expect) / expect;
                max_err = std::max(max_err, err);
                csv += fmt::format("identity,{},{},{},,{},{},{}\n", num(s), num(b), deg, num(val), num(expect), num(err));
                std::vector<std::pair<double, double>> pts;
                for (int p : degrees) {
                  SpectralField e(mf);
                  e.set(eigenspace_basis(mf, p).front(), 1.0);
                  const double lam = eigenvalue(mf, eigenspace_basis(mf, p).front());
                  const double v = xsb_norm(windowed_free_trajectory(e, w), s, b) / hb;
                  const double ex = std::pow(japanese(lam), s / 2);
                  csv += fmt::format("mode,{},{},{},{},{},{},{}\n", num(s), num(b), p, num(lam), num(v), num(ex),
                                     num(std::abs(v - ex) / ex));
                  pts.emplace_back(japanese(lam), v);
                }
                const auto f = exponent_fit(pts, pts.front().first < 1.5 ? 1 : 0);
                fits.push_back({{"s", s}, {"b", b}, {"model_exponent", s / 2}, {"fit", fit_json(f)}});
                const double dev = std::abs(f.slope - s / 2);
                if (dev >= worst) worst = dev, worst_model = s / 2, worst_slope = f.slope, worst_res = f.residual_rms;
              }
            nlohmann::json j = {{"schema", kReportSchema},
                                {"experiment", "xsb"},
                                {"window_hb", nlohmann::json::object()},
                                {"model_exponent", worst_model},
                                {"measured_exponent", worst_slope},
                                {"residual", worst_res},
                                {"fits", fits},
                                {"identity_max_rel_err", max_err},
                                {"precision_estimate", std::max(kExactPrecision, 10 * max_err)},
                                {"status", "ok"}};
            for (double b : b_list) j["window_hb"][num(b)] = w.hb_norm(b);
            return Artifacts{csv, j, {}, {}};
          }};
}

inline Prepared prepare_inflation(const Config& c, const RunOptions& o) {
  InflationConfig s;
  s.alpha = c.get_double("inflation", "alpha", 7);
  s.delta = c.get_double("inflation", "delta", 0.01);
  s.schedule = c.get_int_list("inflation", "schedule", {8, 16, 32});
  s.truncation_factor = c.get_int("inflation", "truncation_factor", 8);
  s.min_truncation = c.get_int("inflation", "min_truncation", 128);
  s.dt_safety = c.get_double("inflation", "dt_safety", 0.1);
  s.time_samples = c.get_int("inflation", "time_samples", 8);
  s.refine = o.fine ? 2 : 1;
  s.workers = o.workers;
  check_increasing(s.schedule, "[inflation] schedule", 2);
  try {
    s.validate();
  } catch (const Error& e) {
    fail(ErrorKind::config, std::string("[inflation] ") + e.what());
  }
  nlohmann::json p = {{"alpha", s.alpha}, {"delta", s.delta}, {"schedule", s.schedule},
                      {"truncation_factor", s.truncation_factor}, {"min_truncation", s.min_truncation},
                      {"dt_safety", s.dt_safety}, {"time_samples", s.time_samples}};
  return {"inflation", p, [s] {
            const auto rep = inflation_experiment(s);
            std::ostringstream os;
            write_csv(os, rep);
            Artifacts out;
            out.csv = os.str();
            nlohmann::json runs = nlohmann::json::array();
            double alias = 0;
            std::vector<std::pair<double, double>> rates;
            for (const auto& r : rep.runs) {
              alias = std::max(alias, r.aliasing_residual);
              const auto g = gradient_lower_bound_check(r.n, s);
              rates.emplace_back(r.n, g.asymptotic_rate);
              runs.push_back({{"n", r.n}, {"kappa_n", r.kappa}, {"t_n", r.t_n}, {"truncation", r.truncation},
                              {"dt", r.dt}, {"steps", r.steps}, {"h1_0", r.h1_initial}, {"h1_tn", r.h1_final},
                              {"ratio", r.ratio}, {"en_relative", r.en_relative}, {"status", to_string(r.status)},
                              {"aliasing_residual", r.aliasing_residual}, {"gradient_rate", g.rate},
                              {"gradient_asymptotic_rate", g.asymptotic_rate}, {"c", g.c}, {"C", g.C},
                              {"gradient_check_rel_diff", g.max_rel_diff}});
              if (r.status == RunStatus::blow_up && !out.failure) {
                out.failure = ErrorKind::blow_up;
                out.message = "n = " + std::to_string(r.n) + ": " + r.message;
              }
            }
            out.report = {{"schema", kReportSchema},
                          {"experiment", "inflation"},
                          {"model_exponent", (s.alpha - 1) / 2},
                          {"runs", runs},
                          {"precision_estimate", std::max(kExactPrecision, 10 * alias)},
                          {"status", out.failure ? "blow-up" : "ok"}};
            if (rates.size() >= 2) {
              const auto f = exponent_fit(rates);
              out.report["measured_exponent"] = f.slope;
              out.report["residual"] = f.residual_rms;
              out.report["fit"] = fit_json(f);
            } else {
              out.report["measured_exponent"] = nullptr;
              out.report["residual"] = nullptr;
            }
            return out;
          }};
}

}  // namespace detail

/// Parse and validate the [tag] section (plus [run]); nothing is computed here.
inline Prepared prepare(const std::string& tag, const Config& c, const RunOptions& o) {
  require(o.workers >= 1, ErrorKind::config, "workers must be >= 1");
  Prepared p;
  if (tag == "optimality") p = detail::prepare_optimality(c, o);
  else if (tag == "projector") p = detail::prepare_projector(c, o);
  else if (tag == "strichartz") p = detail::prepare_strichartz(c, o);
  else if (tag == "lattice") p = detail::prepare_lattice(c, o);
  else if (tag == "nls") p = detail::prepare_nls(c, o);
  else if (tag == "xsb") p = detail::prepare_xsb(c, o);
  else if (tag == "inflation") p = detail::prepare_inflation(c, o);
  else fail(ErrorKind::config, "unknown experiment '" + tag + "'");
  c.reject_unknown({"run", tag});
  return p;
}

}  // namespace sphlab::cli
