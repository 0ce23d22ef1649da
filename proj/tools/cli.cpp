#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "yule/asymptotics.hpp"
#include "yule/density.hpp"
#include "yule/errors.hpp"
#include "yule/mgf.hpp"
#include "yule/parallel.hpp"
#include "yule/simulation.hpp"

namespace yule::cli {

using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

// Resolved parameters, echoed in every output header.
class Params {
 public:
  void set(const std::string& k, const std::string& v) { items_.emplace_back(k, v); }
  void set(const std::string& k, double v) { set(k, fmt(v)); }
  void set(const std::string& k, long v) { set(k, std::to_string(v)); }
  void set(const std::string& k, int v) { set(k, std::to_string(v)); }

  ojson json(const std::string& command) const {
    ojson h;
    h["tool"] = kToolVersion;
    h["command"] = command;
    ojson p = ojson::object();
    for (const auto& [k, v] : items_) p[k] = v;
    h["params"] = p;
    return h;
  }

  void csv_header(std::ostream& os, const std::string& command) const {
    os << "# tool: " << kToolVersion << "\n# command: " << command << "\n";
    for (const auto& [k, v] : items_) os << "# " << k << ": " << v << "\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

// Writes to --output when given, else to the command's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::vector<double> parse_weights(const std::string& s) {
  std::vector<double> w;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t pos = 0;
      w.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("malformed weight list '" + s + "'");
    }
  }
  if (w.empty()) throw UsageError("empty weight list");
  return w;
}

void warn_tail(const std::vector<double>& w, const char* name, std::ostream& err) {
  double s2 = 0.0;
  for (double x : w) s2 += x * x;
  if (std::fabs(w.back()) > 1e-3 * std::sqrt(s2))
    err << "warning: last " << name << " weight exceeds 1e-3 of the weight norm; truncation may matter\n";
}

struct Common {
  std::string output;
  std::string format;
  int threads = 0;
};

void add_common(CLI::App* sub, Common& c, const std::string& default_format) {
  c.format = default_format;
  sub->add_option("--output,-o", c.output, "Output path (default stdout)");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
}

int moment_cmd(int m, int n, double alpha, double r, double tol, long max_nodes, const Common& c, std::ostream& out) {
  MomentOptions opts;
  opts.tol_rel = tol;
  opts.max_nodes = max_nodes;
  opts.threads = c.threads;
  const MomentResult res = moment(m, n, alpha, r, opts);
  Params p;
  p.set("m", m);
  p.set("n", n);
  p.set("alpha", alpha);
  p.set("r", r);
  p.set("tol", tol > 0.0 ? tol : default_tol_rel(m));
  p.set("max_nodes", max_nodes);
  Sink sink(c.output, out);
  if (c.format == "csv") {
    p.csv_header(sink.stream(), "moment");
    sink.stream() << "m,n,alpha,r,value,error_estimate,nodes,converged\n"
                  << m << "," << n << "," << fmt(alpha) << "," << fmt(r) << "," << fmt(res.value) << ","
                  << fmt(res.quad.error_estimate) << "," << res.quad.nodes_used << ","
                  << (res.quad.converged ? "true" : "false") << "\n";
  } else {
    ojson j;
    j["header"] = p.json("moment");
    j["m"] = m;
    j["n"] = n;
    j["alpha"] = alpha;
    j["r"] = r;
    j["value"] = res.value;
    j["error_estimate"] = res.quad.error_estimate;
    j["nodes"] = res.quad.nodes_used;
    j["converged"] = res.quad.converged;
    sink.stream() << j.dump(2) << "\n";
  }
  return res.quad.converged ? kOk : kNonConvergence;
}

int table_cmd(const std::string& which, const Common& c, std::ostream& out, std::ostream& err) {
  const auto rows = compute_table(which, c.threads);
  Params p;
  p.set("table", which);
  Sink sink(c.output, out);
  auto& os = sink.stream();
  p.csv_header(os, "table");
  os << (which == "table1" ? "n" : "k") << ",reference,computed,abs_diff,rel_diff,tolerance,tolerance_kind,pass\n";
  bool ok = true, converged = true;
  for (const auto& r : rows) {
    os << r.label << "," << fmt(r.reference) << "," << fmt(r.computed) << "," << fmt(r.abs_diff) << ","
       << fmt(r.rel_diff) << "," << fmt(r.tol) << "," << (r.relative ? "relative" : "absolute") << ","
       << (r.pass ? "true" : "false") << "\n";
    ok = ok && r.pass;
    converged = converged && r.converged;
  }
  if (!ok) {
    err << which << ": cells outside tolerance:";
    for (const auto& r : rows)
      if (!r.pass) err << " " << r.label;
    err << "\n";
    return kTableDiff;
  }
  return converged ? kOk : kNonConvergence;
}

int density_cmd(const std::string& moments_file, const std::string& from_table, int n, double alpha, double r,
                int kmax, std::vector<double> support, int points, const Common& c, std::ostream& out) {
  std::vector<double> moments;
  Params p;
  if (!moments_file.empty()) {
    moments = read_moments_file(moments_file);
    p.set("moments_file", moments_file);
  } else if (!from_table.empty()) {
    if (from_table != "table2" && from_table != "table3") throw UsageError("--from-table must be table2 or table3");
    const bool corr = from_table == "table3";
    const int K = corr ? 9 : 10;
    MomentOptions opts;
    opts.threads = c.threads;
    moments.push_back(1.0);
    for (int k = 1; k <= K; ++k) moments.push_back(moment(k, 30, 0.05, corr ? 0.1 : 0.0, opts).value);
    p.set("from_table", from_table);
  } else {
    MomentOptions opts;
    opts.threads = c.threads;
    moments.push_back(1.0);
    for (int k = 1; k <= kmax; ++k) moments.push_back(moment(k, n, alpha, r, opts).value);
    p.set("n", n);
    p.set("alpha", alpha);
    p.set("r", r);
    p.set("kmax", kmax);
  }
  if (support.size() != 2) throw UsageError("--support takes two values");
  const DensityApprox d = legendre_from_moments(moments, support[0], support[1]);
  p.set("support", join(support));
  p.set("points", points);
  p.set("moments", join(moments));
  Sink sink(c.output, out);
  auto& os = sink.stream();
  p.csv_header(os, "density");
  os << "x,density\n";
  for (const auto& [x, f] : density_grid(d, points)) os << fmt(x) << "," << fmt(f) << "\n";
  return kOk;
}

ModelSpec build_spec(const std::string& family, int n, double alpha, double beta, bool beta_set, double r,
                     const std::string& sigma, const std::string& tau, std::ostream& err) {
  ModelSpec s;
  s.family = parse_family(family);
  s.n = n;
  s.alpha = alpha;
  s.r = r;
  if (s.family == Family::second_chaos) {
    s.beta = beta_set ? beta : alpha;
    s.sigma = parse_weights(sigma);
    s.tau = parse_weights(tau);
    warn_tail(s.sigma, "sigma", err);
    warn_tail(s.tau, "tau", err);
  } else {
    if (beta_set && beta != alpha) throw UsageError("--beta applies only to second_chaos");
    s.beta = alpha;
  }
  s.validate();
  return s;
}

void spec_params(Params& p, const ModelSpec& s) {
  p.set("family", family_name(s.family));
  p.set("n", s.n);
  p.set("alpha", s.alpha);
  if (s.family == Family::second_chaos) {
    p.set("beta", s.beta);
    p.set("sigma", join(s.sigma));
    p.set("tau", join(s.tau));
  } else {
    p.set("r", s.r);
  }
}

double target_variance(const ModelSpec& s) {
  const double c = scaling_constant(s.family, s.alpha, s.beta, s.r);
  return 1.0 / (c * c);
}

int simulate_cmd(const ModelSpec& spec, long reps, std::uint64_t seed, bool scale, const std::string& dump,
                 const Common& c, std::ostream& out) {
  long redraws = 0;
  const auto stats = sample_stats(spec, reps, seed, c.threads, &redraws);
  const double rn = std::sqrt(static_cast<double>(spec.n));
  double m = 0.0, m2 = 0.0, z = 0.0, z2 = 0.0;
  std::vector<double> values;
  values.reserve(stats.size());
  for (const auto& s : stats) {
    const double v = scale ? standardize_theta(spec, s.theta) : rn * s.theta;
    values.push_back(v);
    m += v;
    m2 += v * v;
    const double zz = rn * s.z12;
    z += zz;
    z2 += zz * zz;
  }
  const double N = static_cast<double>(reps);
  m /= N;
  const double var = (m2 / N - m * m) * N / std::max(1.0, N - 1.0);
  z /= N;
  const double zvar = (z2 / N - z * z) * N / std::max(1.0, N - 1.0);

  Params p;
  spec_params(p, spec);
  p.set("reps", reps);
  p.set("seed", std::to_string(seed));
  p.set("scale", scale ? "true" : "false");
  if (!dump.empty()) {
    std::ofstream f(dump);
    if (!f) throw UsageError("cannot open dump file '" + dump + "'");
    p.csv_header(f, "simulate");
    f << (scale ? "scaled_theta" : "sqrt_n_theta") << "\n";
    for (double v : values) f << fmt(v) << "\n";
  }
  ojson j;
  j["header"] = p.json("simulate");
  j["statistic"] = scale ? "scaled_theta" : "sqrt_n_theta";
  if (spec.family == Family::gaussian_correlated && !scale) j["statistic"] = "sqrt_n_theta";
  j["mean"] = m;
  j["variance"] = var;
  j["se_mean"] = std::sqrt(var / N);
  j["target_variance"] = scale ? 1.0 : target_variance(spec);
  j["mean_theta"] = m / (scale ? 1.0 : rn);
  j["variance_sqrt_n_z12"] = zvar;
  if (spec.family == Family::second_chaos) {
    const auto cc = chaos_constants(spec.alpha, spec.beta, spec.sigma, spec.tau);
    j["four_M3"] = 4.0 * cc.M3;
    j["deviation_bound"] = cc.deviation_bound(spec.n);
  }
  j["redraws"] = redraws;
  Sink sink(c.output, out);
  if (c.format == "csv") {
    p.csv_header(sink.stream(), "simulate");
    sink.stream() << "key,value\n";
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "header") continue;
      sink.stream() << it.key() << "," << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
    }
  } else {
    sink.stream() << j.dump(2) << "\n";
  }
  return kOk;
}

ojson fit_json(const RateFit& f) {
  ojson j;
  j["ns"] = f.ns;
  j["distances"] = f.distances;
  j["slope"] = f.slope;
  j["intercept"] = f.intercept;
  j["residual"] = f.residual;
  j["log_corrected_slope"] = f.log_corrected_slope;
  j["log_corrected_mean"] = f.log_corrected_mean;
  return j;
}

int rate_cmd(const ModelSpec& spec, const std::vector<int>& ns, long reps, std::uint64_t seed, const Common& c,
             std::ostream& out) {
  const RateReport rep = rate_fit(spec, ns, reps, seed, c.threads);
  Params p;
  spec_params(p, spec);
  p.set("ns", [&] {
    std::string s;
    for (std::size_t i = 0; i < ns.size(); ++i) s += (i ? "," : "") + std::to_string(ns[i]);
    return s;
  }());
  p.set("reps", reps);
  p.set("seed", std::to_string(seed));
  Sink sink(c.output, out);
  auto& os = sink.stream();
  if (c.format == "csv") {
    p.csv_header(os, "rate");
    os << "# kolmogorov_slope: " << fmt(rep.kolmogorov.slope) << "\n# wasserstein_slope: "
       << fmt(rep.wasserstein.slope) << "\n";
    os << "n,distance_kol,distance_w1,scaled_const\n";
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const double n = ns[i];
      os << ns[i] << "," << fmt(rep.kolmogorov.distances[i]) << "," << fmt(rep.wasserstein.distances[i]) << ","
         << fmt(rep.kolmogorov.distances[i] * std::sqrt(n / std::log(n))) << "\n";
    }
  } else {
    ojson j;
    j["header"] = p.json("rate");
    j["kolmogorov"] = fit_json(rep.kolmogorov);
    j["wasserstein"] = fit_json(rep.wasserstein);
    os << j.dump(2) << "\n";
  }
  return kOk;
}

int power_cmd(int n, double alpha, double r, const std::string& ca, double C13, long reps, std::uint64_t seed,
              const Common& c, std::ostream& out) {
  double c_a;
  if (ca == "auto") {
    c_a = auto_critical_value(alpha);
  } else {
    try {
      std::size_t pos = 0;
      c_a = std::stod(ca, &pos);
      if (pos != ca.size()) throw std::invalid_argument(ca);
    } catch (const std::exception&) {
      throw UsageError("--ca must be a number or 'auto'");
    }
  }
  const double power = mc_power(n, alpha, r, c_a, reps, seed, c.threads);
  const double bound = power_lower_bound(n, alpha, r, c_a, C13);
  Params p;
  p.set("n", n);
  p.set("alpha", alpha);
  p.set("r", r);
  p.set("ca", ca);
  p.set("C13", C13);
  p.set("reps", reps);
  p.set("seed", std::to_string(seed));
  ojson j;
  j["header"] = p.json("power");
  j["c_a"] = c_a;
  j["mc_power"] = power;
  j["se"] = std::sqrt(power * (1.0 - power) / static_cast<double>(reps));
  j["lower_bound"] = bound;
  Sink sink(c.output, out);
  if (c.format == "csv") {
    p.csv_header(sink.stream(), "power");
    sink.stream() << "n,alpha,r,c_a,mc_power,se,lower_bound\n"
                  << n << "," << fmt(alpha) << "," << fmt(r) << "," << fmt(c_a) << "," << fmt(power) << ","
                  << fmt(j["se"].get<double>()) << "," << fmt(bound) << "\n";
  } else {
    sink.stream() << j.dump(2) << "\n";
  }
  return kOk;
}

}  // namespace

std::vector<std::pair<std::string, double>> reference_table(const std::string& which) {
  if (which == "table1")
    return {{"10", 1.122613},  {"20", 1.068110},  {"30", 1.051453},  {"40", 1.043226},  {"50", 1.038489},
            {"60", 1.035362},  {"70", 1.033146},  {"80", 1.031493},  {"90", 1.030211},  {"100", 1.029190},
            {"200", 1.024627}, {"300", 1.023118}, {"400", 1.022367}, {"500", 1.021917}, {"600", 1.021616},
            {"700", 1.021402}, {"800", 1.021242}, {"inf", 1.020202}};
  if (which == "table2") return {{"2", 1.038702}, {"4", 3.026394}, {"6", 11.938520}, {"8", 73.447734}, {"10", 545.793589}};
  if (which == "table3")
    return {{"1", 0.538403},  {"2", 1.309724},   {"3", 1.697504},   {"4", 4.567613},  {"5", 8.285348},
            {"6", 24.081011}, {"7", 52.901232},  {"8", 165.222506}, {"9", 525.234538}};
  throw UsageError("unknown table '" + which + "' (expected table1, table2 or table3)");
}

std::vector<TableRow> compute_table(const std::string& which, int threads) {
  const auto ref = reference_table(which);
  MomentOptions opts;
  opts.threads = threads;
  std::vector<TableRow> rows;
  for (const auto& [label, value] : ref) {
    TableRow row{label, value, 0.0, 0.0, 0.0, 0.0, false, true, false};
    if (which == "table1") {
      if (label == "inf") {
        row.computed = limit_second_moment(0.1);
        row.tol = 1e-6;
      } else {
        const auto res = second_moment_scaled(std::stoi(label), 0.1, opts);
        row.computed = res.value;
        row.converged = res.quad.converged;
        row.tol = 2e-4;
      }
    } else {
      const int k = std::stoi(label);
      const double r = which == "table3" ? 0.1 : 0.0;
      const auto res = moment(k, 30, 0.05, r, opts);
      row.computed = res.value;
      row.converged = res.quad.converged;
      row.relative = true;
      if (which == "table2")
        row.tol = k <= 4 ? 5e-4 : (k == 6 ? 2e-3 : 1e-2);
      else
        row.tol = k <= 4 ? 2e-3 : 1e-2;
    }
    row.abs_diff = std::fabs(row.computed - row.reference);
    row.rel_diff = row.abs_diff / std::fabs(row.reference);
    row.pass = (row.relative ? row.rel_diff : row.abs_diff) <= row.tol;
    rows.push_back(row);
  }
  return rows;
}

std::vector<int> parse_int_range(const std::string& spec) {
  std::vector<int> out;
  auto to_int = [&](const std::string& t) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(t, &pos);
      if (pos != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      throw UsageError("malformed integer range '" + spec + "'");
    }
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3 || parts[2].size() < 2) throw UsageError("range must be start:stop:xK or start:stop:+K");
    const int a = to_int(parts[0]), b = to_int(parts[1]), k = to_int(parts[2].substr(1));
    if (parts[2][0] == 'x') {
      if (k < 2 || a < 1) throw UsageError("geometric range needs factor >= 2 and start >= 1");
      for (long v = a; v <= b; v *= k) out.push_back(static_cast<int>(v));
    } else if (parts[2][0] == '+') {
      if (k < 1) throw UsageError("arithmetic range needs step >= 1");
      for (long v = a; v <= b; v += k) out.push_back(static_cast<int>(v));
    } else {
      throw UsageError("range step must start with 'x' or '+'");
    }
  } else {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(to_int(tok));
  }
  if (out.empty()) throw UsageError("empty range '" + spec + "'");
  return out;
}

std::vector<double> read_moments_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read moments file '" + path + "'");
  std::vector<double> m;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char ch) { return std::isspace(ch); }),
               line.end());
    if (line.empty()) continue;
    const auto bad = [&] { return UsageError("malformed moments file line " + std::to_string(lineno)); };
    try {
      std::size_t pos = 0;
      if (const auto comma = line.find(','); comma != std::string::npos) {
        const int k = std::stoi(line.substr(0, comma), &pos);
        if (pos != comma || k != static_cast<int>(m.size())) throw bad();
        const std::string v = line.substr(comma + 1);
        m.push_back(std::stod(v, &pos));
        if (pos != v.size()) throw bad();
      } else {
        m.push_back(std::stod(line, &pos));
        if (pos != line.size()) throw bad();
      }
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception&) {
      throw bad();
    }
  }
  if (m.empty()) throw UsageError("moments file '" + path + "' has no moments");
  return m;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moments, densities and simulations of the empirical correlation of two AR(1) paths", "yule"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  int m = 2, n = 10, kmax = 10, points = 401;
  double alpha = 0.0, beta = 0.0, r = 0.0, tol = 0.0, C13 = 0.0;
  long max_nodes = 2'000'000, reps = 100'000;
  std::uint64_t seed = 1;
  std::string which, moments_file, from_table, family = "gaussian_independent", sigma = "1", tau = "1";
  std::string ns_spec = "50:3200:x2", dump, ca = "auto";
  std::vector<double> support{-5.0, 5.0};
  bool scale = false;
  Common c;

  auto* mo = app.add_subcommand("moment", "E[(sqrt(n) theta_n)^m] by quadrature");
  mo->add_option("--m", m, "Moment order (0..10)")->required();
  mo->add_option("--n", n, "Sample size")->required();
  mo->add_option("--alpha", alpha, "AR coefficient")->required();
  mo->add_option("--r", r, "Innovation correlation");
  mo->add_option("--tol", tol, "Relative tolerance (default by order)");
  mo->add_option("--max-nodes", max_nodes, "Quadrature node budget");
  add_common(mo, c, "json");

  auto* ta = app.add_subcommand("table", "Regenerate a reference table with differences");
  ta->add_option("which", which, "table1, table2 or table3")->required();
  add_common(ta, c, "csv");

  auto* de = app.add_subcommand("density", "Legendre density approximation from moments");
  de->add_option("--moments-file", moments_file, "Moments m_0..m_K (one per line or k,value)");
  de->add_option("--from-table", from_table, "Use computed moments of table2 or table3");
  de->add_option("--n", n, "Sample size when computing moments");
  de->add_option("--alpha", alpha, "AR coefficient when computing moments");
  de->add_option("--r", r, "Innovation correlation when computing moments");
  de->add_option("--kmax", kmax, "Highest moment when computing moments");
  de->add_option("--support", support, "Support endpoints a b")->expected(2);
  de->add_option("--points", points, "Grid points")->check(CLI::Range(2, 1000000));
  add_common(de, c, "csv");

  auto add_model = [&](CLI::App* s) {
    s->add_option("--family", family, "gaussian_independent, gaussian_correlated or second_chaos");
    s->add_option("--alpha", alpha, "AR coefficient of X");
    s->add_option("--beta", beta, "AR coefficient of Y (second_chaos)");
    s->add_option("--r", r, "Innovation correlation (gaussian_correlated)");
    s->add_option("--sigma", sigma, "Chaos weights of X, comma separated");
    s->add_option("--tau", tau, "Chaos weights of Y, comma separated");
    s->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
    s->add_option("--seed", seed, "RNG seed");
  };

  auto* si = app.add_subcommand("simulate", "Monte-Carlo draws of sqrt(n) theta_n");
  add_model(si);
  si->add_option("--n", n, "Sample size");
  si->add_flag("--scale", scale, "Apply the standardizing constant");
  si->add_option("--dump", dump, "Write raw draws as single-column CSV");
  add_common(si, c, "json");

  auto* ra = app.add_subcommand("rate", "Distances to N(0,1) and log-log rate fit");
  add_model(ra);
  ra->add_option("--ns", ns_spec, "Sample sizes: a:b:xK, a:b:+K or a,b,c");
  add_common(ra, c, "json");

  auto* po = app.add_subcommand("power", "Monte-Carlo power and its normal-approximation bound");
  po->add_option("--n", n, "Sample size")->required();
  po->add_option("--alpha", alpha, "AR coefficient");
  po->add_option("--r", r, "Innovation correlation");
  po->add_option("--ca", ca, "Critical value or 'auto'");
  po->add_option("--C13", C13, "Remainder constant of the bound");
  po->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
  po->add_option("--seed", seed, "RNG seed");
  add_common(po, c, "json");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c.threads > 0) set_default_threads(c.threads);
    if (*mo) return moment_cmd(m, n, alpha, r, tol, max_nodes, c, out);
    if (*ta) return table_cmd(which, c, out, err);
    if (*de) return density_cmd(moments_file, from_table, n, alpha, r, kmax, support, points, c, out);
    const bool beta_set = (*si && si->count("--beta")) || (*ra && ra->count("--beta"));
    if (*si) return simulate_cmd(build_spec(family, n, alpha, beta, beta_set, r, sigma, tau, err), reps, seed, scale,
                                 dump, c, out);
    if (*ra) {
      const auto ns = parse_int_range(ns_spec);
      const ModelSpec spec = build_spec(family, ns.front(), alpha, beta, beta_set, r, sigma, tau, err);
      return rate_cmd(spec, ns, reps, seed, c, out);
    }
    if (*po) return power_cmd(n, alpha, r, ca, C13, reps, seed, c, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ContractError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return kNonConvergence;
  }
  return kUsage;
}

}  // namespace yule::cli
