// Command-line front end: densities, CDFs, characteristic functions,
// moment tables, Weyl-measure sampling, alcove membership, Weil
// validation and finite-field curve scans, emitted as plot-ready CSV or
// JSON with a reproducible provenance header.

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "usp/distribution.hpp"
#include "usp/frobenius.hpp"
#include "usp/quadrature.hpp"
#include "usp/symmetric.hpp"
#include "usp/version.hpp"
#include "usp/weyl.hpp"

namespace dist = usp::distribution;
namespace frob = usp::frobenius;
namespace sym = usp::symmetric;
using json = nlohmann::json;

namespace {

// exit codes: 0 ok, 2 usage, 3 accuracy, 4 internal consistency
constexpr int kExitUsage = 2;
constexpr int kExitAccuracy = 3;
constexpr int kExitConsistency = 4;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Output {
  std::optional<std::string> path;

  void write(const std::string& text) const {
    if (!path || *path == "-") {
      std::fwrite(text.data(), 1, text.size(), stdout);
      return;
    }
    std::ofstream out(*path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + *path);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
  }
};

std::string provenance(const std::string& subcommand,
                       const std::vector<std::pair<std::string, std::string>>& flags) {
  std::string line = "usp " + std::string(usp::kVersion) + " " + subcommand;
  for (const auto& [k, v] : flags) line += " --" + k + " " + v;
  return line;
}

json provenance_json(const std::string& subcommand,
                     const std::vector<std::pair<std::string, std::string>>& flags) {
  json meta;
  meta["tool"] = "usp";
  meta["version"] = usp::kVersion;
  meta["subcommand"] = subcommand;
  json jf = json::object();
  for (const auto& [k, v] : flags) jf[k] = v;
  meta["flags"] = jf;
  return meta;
}

dist::Character parse_character(const std::string& which, int g) {
  if (which == "tau") {
    if (g == 1) return dist::Character::tau_g1;
    if (g == 2) return dist::Character::tau_g2;
    if (g == 3) return dist::Character::tau_g3;
    throw CLI::ValidationError("--g", "tau requires g in {1,2,3}");
  }
  if (g != 2)
    throw CLI::ValidationError("--g", which + " is defined on USp(4) (g = 2)");
  if (which == "rho") return dist::Character::rho;
  if (which == "tau2") return dist::Character::tau2;
  if (which == "chi2") return dist::Character::chi2;
  throw CLI::ValidationError("--which", "unknown character " + which);
}

dist::Method parse_method(const std::string& name) {
  if (name == "hypergeometric") return dist::Method::hypergeometric;
  if (name == "legendre") return dist::Method::legendre;
  if (name == "elliptic") return dist::Method::elliptic;
  if (name == "meijer") return dist::Method::meijer;
  if (name == "slice") return dist::Method::slice;
  if (name == "auto") return dist::Method::auto_;
  throw CLI::ValidationError("--method", "unknown method " + name);
}

int run_density(const std::string& which, int g, const std::string& method,
                double xmin, double xmax, int npoints, bool have_range,
                const std::string& format, const Output& out) {
  const dist::Character c = parse_character(which, g);
  if (!have_range) dist::support_of(c, xmin, xmax);
  const dist::Method m = parse_method(method);
  const dist::DensityCurve curve = dist::density_curve(c, m, xmin, xmax, npoints);
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"which", which},         {"g", std::to_string(g)},
      {"method", method},       {"xmin", fmt17(xmin)},
      {"xmax", fmt17(xmax)},    {"n", std::to_string(npoints)},
      {"format", format}};
  if (format == "json") {
    json j;
    j["meta"] = provenance_json("density", flags);
    json rows = json::array();
    for (std::size_t i = 0; i < curve.xs.size(); ++i)
      rows.push_back({{"x", fmt17(curve.xs[i])}, {"f", fmt17(curve.ys[i])}});
    j["points"] = rows;
    out.write(j.dump(2) + "\n");
  } else {
    std::string text = "# " + provenance("density", flags) + "\nx,f\n";
    for (std::size_t i = 0; i < curve.xs.size(); ++i)
      text += fmt17(curve.xs[i]) + "," + fmt17(curve.ys[i]) + "\n";
    out.write(text);
  }
  return 0;
}

int run_cdf(double xmin, double xmax, int npoints, const std::string& format,
            const Output& out) {
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"xmin", fmt17(xmin)},
      {"xmax", fmt17(xmax)},
      {"n", std::to_string(npoints)},
      {"format", format}};
  std::string text = "# " + provenance("cdf", flags) + "\nx,F\n";
  json rows = json::array();
  for (int i = 0; i < npoints; ++i) {
    const double x = xmin + (xmax - xmin) * i / (npoints - 1.0);
    const double F = dist::cdf_tau_g2(x);
    if (format == "json")
      rows.push_back({{"x", fmt17(x)}, {"F", fmt17(F)}});
    else
      text += fmt17(x) + "," + fmt17(F) + "\n";
  }
  if (format == "json") {
    json j;
    j["meta"] = provenance_json("cdf", flags);
    j["points"] = rows;
    out.write(j.dump(2) + "\n");
  } else {
    out.write(text);
  }
  return 0;
}

int run_charfn(const std::string& which, double tmin, double tmax, int npoints,
               const std::string& format, const Output& out) {
  dist::Character c;
  if (which == "tau_g2") c = dist::Character::tau_g2;
  else if (which == "tau_g3") c = dist::Character::tau_g3;
  else if (which == "rho") c = dist::Character::rho;
  else throw CLI::ValidationError("--which", "charfn supports tau_g2, tau_g3, rho");
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"which", which},
      {"tmin", fmt17(tmin)},
      {"tmax", fmt17(tmax)},
      {"n", std::to_string(npoints)},
      {"format", format}};
  std::string text = "# " + provenance("charfn", flags) + "\nt,phi\n";
  json rows = json::array();
  for (int i = 0; i < npoints; ++i) {
    const double t = tmin + (tmax - tmin) * i / (npoints - 1.0);
    const double v = dist::charfn(c, t);
    if (format == "json")
      rows.push_back({{"t", fmt17(t)}, {"phi", fmt17(v)}});
    else
      text += fmt17(t) + "," + fmt17(v) + "\n";
  }
  if (format == "json") {
    json j;
    j["meta"] = provenance_json("charfn", flags);
    j["points"] = rows;
    out.write(j.dump(2) + "\n");
  } else {
    out.write(text);
  }
  return 0;
}

int run_moments(const std::string& which, int g, int count,
                const std::string& format, const Output& out) {
  const dist::Character c = parse_character(which, g);
  const dist::MomentSequence seq = dist::moments(c, count);
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"which", which},
      {"g", std::to_string(g)},
      {"count", std::to_string(count)},
      {"format", format}};
  if (format == "csv") {
    std::string text = "# " + provenance("moments", flags) + "\nn,M\n";
    for (std::size_t n = 0; n < seq.values.size(); ++n)
      text += std::to_string(n) + "," + std::to_string(seq.values[n]) + "\n";
    out.write(text);
  } else {
    json j;
    j["meta"] = provenance_json("moments", flags);
    j["which"] = dist::character_name(c);
    j["moments"] = seq.values;
    out.write(j.dump(2) + "\n");
  }
  return 0;
}

int run_sample(int g, std::uint64_t n, std::uint64_t seed, int threads,
               const std::string& format, const Output& out) {
  const usp::weyl::SampleBatch batch = usp::weyl::sample(g, n, seed, threads);
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"g", std::to_string(g)},
      {"n", std::to_string(n)},
      {"seed", std::to_string(seed)},
      {"format", format}};
  std::string text = "# " + provenance("sample", flags) + "\n";
  for (int j = 1; j <= g; ++j) text += "theta_" + std::to_string(j) + ",";
  for (int j = 1; j <= g; ++j) text += "t_" + std::to_string(j) + ",";
  text += "trace\n";
  for (const auto& cls : batch.classes) {
    for (double th : cls.theta) text += fmt17(th) + ",";
    const usp::weyl::CoefficientVector v = usp::weyl::angles_to_t(cls);
    for (double t : v.t) text += fmt17(t) + ",";
    text += fmt17(usp::weyl::trace_of(cls)) + "\n";
  }
  out.write(text);
  return 0;
}

int run_alcove(int g, const std::vector<double>& svals,
               const std::string& format, const Output& out) {
  if (static_cast<int>(svals.size()) != g)
    throw CLI::ValidationError("--s", "expected " + std::to_string(g) +
                                          " comma-separated values");
  const sym::SymmetricPoint p{g, svals};
  const sym::MembershipReport rep = sym::in_sigma(p);
  std::string sflag;
  for (std::size_t i = 0; i < svals.size(); ++i)
    sflag += (i ? "," : "") + fmt17(svals[i]);
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"g", std::to_string(g)}, {"s", sflag}, {"format", format}};
  json j;
  j["meta"] = provenance_json("alcove", flags);
  j["in_pi"] = rep.in_pi;
  j["in_theta"] = rep.in_theta;
  j["in_sigma"] = rep.in_sigma;
  json minors = json::array(), forms = json::array();
  for (double m : rep.minors) minors.push_back(fmt17(m));
  for (double f : rep.forms) forms.push_back(fmt17(f));
  j["minors"] = minors;
  j["forms"] = forms;
  out.write(j.dump(2) + "\n");
  return 0;
}

int run_weil_validate(std::int64_t p, std::int64_t c1, std::int64_t c2,
                      const Output& out) {
  const bool valid = frob::validate_weil(p, c1, c2);
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"p", std::to_string(p)},
      {"c1", std::to_string(c1)},
      {"c2", std::to_string(c2)}};
  json j;
  j["meta"] = provenance_json("weil-validate", flags);
  j["p"] = p;
  j["c1"] = c1;
  j["c2"] = c2;
  j["a1"] = fmt17(c1 / std::sqrt(static_cast<double>(p)));
  j["a2"] = fmt17(static_cast<double>(c2) / p);
  j["valid"] = valid;
  out.write(j.dump(2) + "\n");
  return 0;
}

int run_curves(std::int64_t p, const std::string& mode, std::uint64_t n,
               std::uint64_t seed, int threads, const std::string& curves_path,
               bool inject_corrupt, const Output& out) {
  frob::ScanOptions opts;
  opts.exhaustive = mode == "exhaustive";
  opts.n_samples = n;
  opts.seed = seed;
  opts.threads = threads;
  opts.keep_curves = !curves_path.empty();
  frob::ScanResult scan = frob::scan_curves(p, opts);

  if (inject_corrupt) {
    // test hook: shift one N1 beyond the Weil bound and run validation
    if (scan.dist.size() == 0) throw std::logic_error("empty scan");
    const std::int64_t c1 =
        std::llround(scan.dist.a1[0] * std::sqrt(static_cast<double>(p)));
    const std::int64_t bad_c1 = c1 + 5 * p;  // |a1| > 4 for every p >= 3
    const std::int64_t bad_c2 =
        std::llround(scan.dist.a2[0] * static_cast<double>(p));
    if (frob::validate_weil(p, bad_c1, bad_c2))
      throw std::runtime_error("corrupted count slipped past validation");
    throw std::logic_error("validate_weil rejected corrupted count c1=" +
                           std::to_string(bad_c1) + " (injected)");
  }

  const std::vector<std::pair<std::string, std::string>> flags = {
      {"p", std::to_string(p)},       {"mode", mode},
      {"n", std::to_string(n)},       {"seed", std::to_string(seed)},
      {"threads", std::to_string(threads)}};

  if (!curves_path.empty()) {
    std::string text = "# " + provenance("curves", flags) + "\n";
    text += "p,deg,f_packed,N1,N2,c1,c2,a1,a2\n";
    const double rp = std::sqrt(static_cast<double>(p));
    for (const frob::CurveRecord& c : scan.curves) {
      text += std::to_string(p) + "," + std::to_string(c.deg) + "," +
              std::to_string(c.packed_f) + "," + std::to_string(c.n1) + "," +
              std::to_string(c.n2) + "," + std::to_string(c.c1) + "," +
              std::to_string(c.c2) + "," + fmt17(c.c1 / rp) + "," +
              fmt17(static_cast<double>(c.c2) / p) + "\n";
    }
    Output curves_out;
    curves_out.path = curves_path;
    curves_out.write(text);
  }

  const frob::ReportRecord rep = frob::compare_to_theory(scan.dist);
  json j;
  j["meta"] = provenance_json("curves", flags);
  j["p"] = p;
  j["models"] = rep.models;
  j["mean_a1"] = fmt17(rep.mean_a1);
  j["mean_a2"] = fmt17(rep.mean_a2);
  j["mean_n1"] = fmt17(rep.mean_n1);
  j["mean_tau2"] = fmt17(rep.mean_tau2);
  j["sup_cdf_distance"] = fmt17(rep.sup_cdf_distance);
  json me = json::array(), mt = json::array();
  for (double m : rep.moments_a1) me.push_back(fmt17(m));
  for (double m : rep.moments_theory) mt.push_back(fmt17(m));
  j["moments_a1"] = me;
  j["moments_theory"] = mt;
  j["resid_a1_sqrtp"] = fmt17(rep.resid_a1);
  j["resid_a2_sqrtp"] = fmt17(rep.resid_a2);
  j["resid_n1_sqrtp"] = fmt17(rep.resid_n1);
  // the model measure is not the isomorphism-class measure; residuals
  // above carry that O(1/q)-scale distortion
  j["measure"] = "squarefree models of degree 5 and 6, not isomorphism classes";
  out.write(j.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distribution of the trace on USp(2g) and Frobenius statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", usp::kVersion);

  std::string format = "csv", out_path, which = "tau", method = "auto";
  std::string mode = "exhaustive", curves_path, svals_str;
  int g = 2, npoints = 201, count = 10, threads = 0;
  std::uint64_t n = 1000, seed = 0;
  std::int64_t p = 5, c1 = 0, c2 = 0;
  double xmin = 0, xmax = 0, tmin = 0, tmax = 10;
  bool inject_corrupt = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", out_path);
  };

  CLI::App* density = app.add_subcommand("density", "density curve data");
  density->add_option("--which", which);
  density->add_option("--g", g);
  density->add_option("--method", method);
  CLI::Option* optx0 = density->add_option("--xmin", xmin);
  CLI::Option* optx1 = density->add_option("--xmax", xmax);
  density->add_option("--n", npoints);
  add_common(density);

  CLI::App* cdf = app.add_subcommand("cdf", "repartition function of tau, g=2");
  cdf->add_option("--xmin", xmin)->default_val(-4.0);
  cdf->add_option("--xmax", xmax)->default_val(4.0);
  cdf->add_option("--n", npoints);
  add_common(cdf);

  CLI::App* charfn = app.add_subcommand("charfn", "characteristic function");
  charfn->add_option("--which", which)->default_val("tau_g2");
  charfn->add_option("--tmin", tmin)->default_val(0.0);
  charfn->add_option("--tmax", tmax)->default_val(10.0);
  charfn->add_option("--n", npoints);
  add_common(charfn);

  CLI::App* moments = app.add_subcommand("moments", "exact moment table");
  moments->add_option("--which", which);
  moments->add_option("--g", g);
  moments->add_option("--count", count);
  add_common(moments);

  CLI::App* sample = app.add_subcommand("sample", "Weyl-measure samples");
  sample->add_option("--g", g);
  sample->add_option("--n", n);
  sample->add_option("--seed", seed);
  sample->add_option("--threads", threads);
  add_common(sample);

  CLI::App* alcove = app.add_subcommand("alcove", "symmetric alcove membership");
  alcove->add_option("--g", g);
  alcove->add_option("--s", svals_str, "comma-separated s_1,...,s_g");
  add_common(alcove);

  CLI::App* weilv = app.add_subcommand("weil-validate", "Weil polynomial check");
  weilv->add_option("--p", p)->required();
  weilv->add_option("--c1", c1)->required();
  weilv->add_option("--c2", c2)->required();
  add_common(weilv);

  CLI::App* curves = app.add_subcommand("curves", "genus-2 curve scan");
  curves->add_option("--p", p)->required();
  curves->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "sample"}));
  curves->add_option("--n", n);
  curves->add_option("--seed", seed);
  curves->add_option("--threads", threads);
  curves->add_option("--curves-out", curves_path);
  curves->add_flag("--inject-corrupt", inject_corrupt)
      ->description("test hook: poison a count and require rejection");
  add_common(curves);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help, --version
    app.exit(e);
    return kExitUsage;
  }

  Output out;
  if (!out_path.empty()) out.path = out_path;

  try {
    if (density->parsed())
      return run_density(which, g, method, xmin, xmax, npoints,
                         optx0->count() > 0 && optx1->count() > 0, format, out);
    if (cdf->parsed()) return run_cdf(xmin, xmax, npoints, format, out);
    if (charfn->parsed())
      return run_charfn(which, tmin, tmax, npoints, format, out);
    if (moments->parsed()) return run_moments(which, g, count, format, out);
    if (sample->parsed()) return run_sample(g, n, seed, threads, format, out);
    if (alcove->parsed()) {
      std::vector<double> svals;
      std::stringstream ss(svals_str);
      std::string item;
      while (std::getline(ss, item, ',')) svals.push_back(std::stod(item));
      return run_alcove(g, svals, format, out);
    }
    if (weilv->parsed()) return run_weil_validate(p, c1, c2, out);
    if (curves->parsed())
      return run_curves(p, mode, n, seed, threads, curves_path, inject_corrupt,
                        out);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const usp::AccuracyError& e) {
    std::cerr << "accuracy failure: " << e.what()
              << " (best estimate " << fmt17(e.estimate()) << ")\n";
    return kExitAccuracy;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kExitConsistency;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
