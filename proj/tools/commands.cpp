#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "ssflab/dirac.hpp"
#include "ssflab/doi.hpp"
#include "ssflab/ptf.hpp"
#include "ssflab/ssf.hpp"
#include "ssflab/transforms.hpp"
#include "ssflab/witten.hpp"

namespace ssflab::cli {

using nlohmann::json;

namespace {

class Stopwatch {
public:
  explicit Stopwatch(Report& r) : report_(r), last_(std::chrono::steady_clock::now()) {}
  void lap(const std::string& name) {
    const auto now = std::chrono::steady_clock::now();
    report_.timings.emplace_back(name, std::chrono::duration<double>(now - last_).count());
    last_ = now;
  }

private:
  Report& report_;
  std::chrono::steady_clock::time_point last_;
};

Report start(const std::string& command, const ExperimentConfig& c) {
  Report r;
  r.command = command;
  r.config = to_json(c);
  return r;
}

void check_le(Report& r, const std::string& name, double value, double tol) {
  r.checks.push_back({name, value, "<=", tol, value <= tol});
}

void check_ge(Report& r, const std::string& name, double value, double tol) {
  r.checks.push_back({name, value, ">=", tol, value >= tol});
}

SuspensionPair build_pair(const ExperimentConfig& c, const ResolvedModel& m) {
  SuspensionOptions o;
  o.scheme = c.scheme;
  return assemble(m.grid, m.path, o);
}

// Checked before the (expensive) assembly.
void check_heat_window(const std::vector<double>& ts) {
  for (double t : ts)
    if (!(t >= defaults::kHeatTimeMin && t <= defaults::kHeatTimeMax))
      throw ParameterError("t = " + format_number(t) + " is outside the validity window [" +
                           format_number(defaults::kHeatTimeMin) + ", " +
                           format_number(defaults::kHeatTimeMax) +
                           "] of the discretized heat trace");
}

json cell(double v) { return std::isfinite(v) ? json(v) : json(format_number(v)); }

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool Report::pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

json Report::payload() const {
  json j;
  j["command"] = command;
  j["config"] = config;
  json tabs = json::object();
  for (const Table& t : tables) tabs[t.name] = {{"columns", t.columns}, {"rows", t.rows}};
  j["tables"] = tabs;
  json cs = json::array();
  for (const Check& c : checks)
    cs.push_back({{"name", c.name},
                  {"value", cell(c.value)},
                  {"relation", c.relation},
                  {"threshold", c.threshold},
                  {"pass", c.pass}});
  j["checks"] = cs;
  j["pass"] = pass();
  return j;
}

json Report::to_json() const {
  json j = payload();
  json t = json::object();
  for (const auto& [name, sec] : timings) t[name] = sec;
  j["timings"] = t;
  return j;
}

void Report::write_csv(std::ostream& os) const {
  const auto put = [&os](const json& v) {
    if (v.is_number_float())
      os << format_number(v.get<double>());
    else if (v.is_string())
      os << v.get<std::string>();
    else if (v.is_null())
      os << "";
    else
      os << v.dump();
  };
  for (const Table& t : tables) {
    os << "# table " << t.name << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        put(row[i]);
      }
      os << '\n';
    }
  }
  os << "# table checks\nname,value,relation,threshold,pass\n";
  for (const Check& c : checks)
    os << c.name << ',' << format_number(c.value) << ',' << c.relation << ','
       << format_number(c.threshold) << ',' << (c.pass ? "pass" : "fail") << '\n';
  os << "# result " << (pass() ? "pass" : "fail") << '\n';
  os << "# timings\nstage,seconds\n";
  for (const auto& [name, sec] : timings) os << name << ',' << format_number(sec) << '\n';
}

Report cmd_ptf(const ExperimentConfig& c) {
  Report r = start("ptf", c);
  Stopwatch sw(r);
  const ResolvedModel m = resolve_model(c);
  const std::vector<double> ts = c.t_grid.value_or(std::vector<double>{0.5, 1.0, 2.0});
  PtfOptions o;
  o.nodes = c.s_nodes;
  o.refine = c.refine;
  o.quadrature_tolerance = c.tol.quadrature;
  check_heat_window(ts);
  const SuspensionPair pair = build_pair(c, m);
  sw.lap("assemble");
  const PtfReport p = verify(pair, ts, o);
  sw.lap("verify");

  Table t{"ptf", {"t", "lhs", "rhs_quad", "rhs_erf", "residual_lr", "residual_quad"}, {}};
  for (std::size_t i = 0; i < ts.size(); ++i) {
    t.rows.push_back({ts[i], p.lhs[i], p.rhs_quadrature[i], p.rhs_erf[i], p.residual_lr[i],
                      p.residual_quad[i]});
    check_le(r, "residual_lr[t=" + format_number(ts[i]) + "]", p.residual_lr[i], c.tol.ptf);
    check_le(r, "residual_quad[t=" + format_number(ts[i]) + "]", p.residual_quad[i],
             c.tol.quadrature);
  }
  r.tables.push_back(std::move(t));
  if (p.refinement) {
    const PtfRefinement& f = *p.refinement;
    Table rt{"refinement", {"t", "points", "points_fine", "lhs_fine", "residual_fine", "ratio"}, {}};
    for (std::size_t i = 0; i < ts.size(); ++i) {
      rt.rows.push_back({ts[i], p.points, f.points, f.lhs[i], f.residual_lr[i], cell(f.ratio[i])});
      // A residual already at rounding level has nothing left to reduce.
      if (p.residual_lr[i] > 1e-12)
        check_ge(r, "refinement_ratio[t=" + format_number(ts[i]) + "]", f.ratio[i],
                 c.tol.refinement_ratio);
    }
    r.tables.push_back(std::move(rt));
  }
  return r;
}

Report cmd_ssf(const ExperimentConfig& c) {
  Report r = start("ssf", c);
  Stopwatch sw(r);
  const ResolvedModel m = resolve_model(c);
  const HermitianOperator a_plus = m.path.a_plus();
  const StepFunction xi = ssf_pair(a_plus, m.path.a_minus);

  Table st{"ssf", {"breakpoint", "value"}, {}};
  st.rows.push_back({"-inf", xi.left_tail()});
  for (std::size_t i = 0; i < xi.breakpoints().size(); ++i)
    st.rows.push_back({xi.breakpoints()[i], xi.values()[i]});
  r.tables.push_back(std::move(st));

  Table kt{"krein", {"family", "lhs", "rhs", "residual"}, {}};
  for (const char* fam : {"identity", "cube", "exp", "gauss", "erf"}) {
    const KreinCheck k = krein_check(a_plus, m.path.a_minus, scalar_family(fam));
    kt.rows.push_back({fam, k.lhs, k.rhs, k.residual});
    check_le(r, std::string("krein[") + fam + "]", k.residual, c.tol.krein);
  }
  r.tables.push_back(std::move(kt));
  sw.lap("ssf");

  const std::vector<double> levels = c.cutoff_levels.value_or(cutoff_levels(m.path.a_minus));
  const CutoffLimit cl = ssf_cutoff_limit(m.path.a_minus, m.path.b_plus, levels);
  Table ct{"cutoff", {"level", "weighted_l1_gap"}, {}};
  for (std::size_t i = 0; i < levels.size(); ++i)
    ct.rows.push_back({levels[i], cl.l1_weighted_gaps[i]});
  r.tables.push_back(std::move(ct));
  if (!cl.l1_weighted_gaps.empty()) {
    check_le(r, "cutoff_gap_final", cl.l1_weighted_gaps.back(), c.tol.cutoff);
    const std::size_t n = cl.l1_weighted_gaps.size();
    if (n >= 2)
      check_le(r, "cutoff_gap_increase_last",
               cl.l1_weighted_gaps[n - 1] - cl.l1_weighted_gaps[n - 2], 0.0);
  }
  sw.lap("cutoff");
  return r;
}

Report cmd_pushnitski(const ExperimentConfig& c) {
  Report r = start("pushnitski", c);
  Stopwatch sw(r);
  const ResolvedModel m = resolve_model(c);
  const std::vector<double> lambdas =
      c.lambda_grid.value_or(std::vector<double>{0.25, 0.5, 4.0});
  const std::vector<double> ts = c.t_grid.value_or(std::vector<double>{0.5, 1.0, 2.0});
  const LambdaWindow win = lambda_window(m.grid);
  for (double l : lambdas)
    if (!(l >= win.lo && l <= win.hi))
      throw ParameterError("lambda = " + format_number(l) + " is outside the resolved window [" +
                           format_number(win.lo) + ", " + format_number(win.hi) + "]");
  check_heat_window(ts);
  const SuspensionPair pair = build_pair(c, m);
  sw.lap("assemble");
  const StepFunction xi = ssf_pair(m.path.a_plus(), m.path.a_minus);

  Table pt{"pushnitski", {"lambda", "window", "discrete", "predicted", "residual"}, {}};
  for (const PushnitskiRow& row : pushnitski_verify(pair, xi, lambdas)) {
    pt.rows.push_back({row.lambda, row.window, row.discrete, row.predicted, row.residual});
    check_le(r, "pushnitski[lambda=" + format_number(row.lambda) + "]", row.residual,
             c.tol.pushnitski);
  }
  r.tables.push_back(std::move(pt));
  sw.lap("pushnitski");

  Table lt{"laplace", {"t", "discrete", "continuum", "residual"}, {}};
  for (const LaplaceRow& row : laplace_consistency(pair, xi, ts)) {
    lt.rows.push_back({row.t, row.discrete, row.continuum, row.residual});
    check_le(r, "laplace[t=" + format_number(row.t) + "]", row.residual, c.tol.laplace);
  }
  r.tables.push_back(std::move(lt));
  sw.lap("laplace");
  return r;
}

Report cmd_witten(const ExperimentConfig& c) {
  Report r = start("witten", c);
  Stopwatch sw(r);
  const ResolvedModel m = resolve_model(c);
  IndexConfig ic{m.path, m.grid, {}};
  ic.options.scheme = c.scheme;
  if (c.t_grid) ic.t_grid = *c.t_grid;
  if (c.lambda_grid) ic.lambda_grid = *c.lambda_grid;
  ic.k_values = c.k_values;
  ic.tolerance = c.tol.index;
  const IndexReport ir = index_report(ic);
  sw.lap("index_report");

  const double tol = ir.gapped_endpoints ? c.tol.index : c.tol.index_gapless;
  const double target = ir.ssf_prediction;
  Table et{"estimates", {"quantity", "value", "method", "converged"}, {}};
  const auto add = [&](const std::string& name, double v, const std::string& method,
                       bool converged) {
    et.rows.push_back({name, v, method, converged ? 1 : 0});
    if (name != "ssf_prediction") check_le(r, name + "_vs_ssf", std::abs(v - target), tol);
  };
  add("w_s", ir.w_s.value, ir.w_s.method, ir.w_s.converged);
  for (const auto& [k, est] : ir.w_kr)
    add("w_" + std::to_string(k) + "_r", est.value, est.method, est.converged);
  if (ir.spectral_flow) add("spectral_flow", *ir.spectral_flow, "count", true);
  if (ir.fredholm.index) add("fredholm_index", *ir.fredholm.index, "kernel", true);
  add("ssf_prediction", ir.ssf_prediction, "lebesgue", true);
  r.tables.push_back(std::move(et));

  r.tables.push_back({"ssf_at_zero",
                      {"ssf_left", "ssf_right", "endpoint_gap", "gapped"},
                      {{ir.ssf_left, ir.ssf_right, ir.gap, ir.gapped_endpoints ? 1 : 0}}});
  r.tables.push_back({"fredholm",
                      {"index", "coarse_count", "fine_count", "diagnostic"},
                      {{ir.fredholm.index ? json(*ir.fredholm.index) : json(nullptr),
                        ir.fredholm.coarse_count, ir.fredholm.fine_count,
                        ir.fredholm.diagnostic}}});
  Table tt{"limit_traces", {"estimate", "x", "value"}, {}};
  for (const auto& [x, v] : ir.w_s.trace) tt.rows.push_back({"w_s", x, v});
  for (const auto& [k, est] : ir.w_kr)
    for (const auto& [x, v] : est.trace) tt.rows.push_back({"w_" + std::to_string(k) + "_r", x, v});
  r.tables.push_back(std::move(tt));
  return r;
}

Report cmd_dirac(const ExperimentConfig& c) {
  Report r = start("dirac", c);
  Stopwatch sw(r);
  const DiracConfig& dc = c.dirac;

  Table cl{"clifford", {"d", "size", "exact"}, {}};
  for (int d = 1; d <= 6; ++d) {
    const CliffordSet set = clifford(d);
    const bool ok = clifford_relations_exact(set);
    cl.rows.push_back({d, set.size, ok ? 1 : 0});
    check_ge(r, "clifford_exact[d=" + std::to_string(d) + "]", ok ? 1.0 : 0.0, 1.0);
  }
  r.tables.push_back(std::move(cl));
  sw.lap("clifford");

  const CliffordSet set = clifford(dc.d);
  const PotentialFn v = make_potential(dc.potential, set, dc.amplitude, dc.width);
  const DiracModel model = build_dirac(dc.d, dc.mass, dc.box, dc.modes, v);
  const RealVector computed = model.free.eigenvalues();
  const RealVector symbol = free_dirac_spectrum(dc.d, dc.mass, dc.box, dc.modes);
  Table sp{"spectrum", {"index", "computed", "symbol"}, {}};
  double worst = 0.0;
  for (Index i = 0; i < computed.size(); ++i) {
    sp.rows.push_back({i, computed(i), symbol(i)});
    worst = std::max(worst, std::abs(computed(i) - symbol(i)));
  }
  r.tables.push_back(std::move(sp));
  check_le(r, "free_spectrum_max_error", worst, c.tol.spectrum);
  sw.lap("spectrum");

  const HypothesisReport h = hypothesis_diagnostics(model, dc.p);
  Table ht{"hypothesis",
           {"kind", "j", "coarse_modes", "fine_modes", "coarse", "fine", "ratio"},
           {}};
  for (std::size_t i = 0; i < h.schatten_ratio.size(); ++i)
    ht.rows.push_back({"schatten", static_cast<int>(i + 1), h.coarse_modes, h.fine_modes,
                       h.schatten_coarse[i], h.schatten_fine[i], h.schatten_ratio[i]});
  for (std::size_t i = 0; i < h.commutator_ratio.size(); ++i)
    ht.rows.push_back({"commutator", static_cast<int>(i + 1), h.coarse_modes, h.fine_modes,
                       h.commutator_coarse[i], h.commutator_fine[i], h.commutator_ratio[i]});
  r.tables.push_back(std::move(ht));

  double growth = 0.0;
  for (double x : h.commutator_ratio) growth = std::max(growth, x);
  double lo = 1.0, hi = 1.0;
  for (double x : h.schatten_ratio) lo = std::min(lo, x), hi = std::max(hi, x);
  for (double x : h.commutator_ratio) lo = std::min(lo, x), hi = std::max(hi, x);
  std::string expect = dc.expect;
  if (expect == "auto") expect = dc.potential == "sharp" ? "unstable" : "stable";
  if (expect == "stable") {
    check_ge(r, "hypothesis_min_ratio", lo, defaults::kStableRatioLow);
    check_le(r, "hypothesis_max_ratio", hi, defaults::kStableRatioHigh);
  } else if (expect == "unstable") {
    check_ge(r, "hypothesis_commutator_growth", growth, defaults::kGrowthFactor);
  }
  r.tables.push_back({"verdict",
                      {"potential", "schatten_stable", "max_commutator_ratio", "flag"},
                      {{dc.potential, h.schatten_stable() ? 1 : 0, growth,
                        growth >= defaults::kGrowthFactor ? "unstable" : "stable"}}});
  sw.lap("hypothesis");
  return r;
}

}  // namespace ssflab::cli
