#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace ssflab::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    if (!known.count(item.key())) {
      std::string list;
      for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
      throw ConfigError(where + ": unknown key '" + item.key() + "' (allowed: " + list + ")");
    }
  }
}

template <typename T>
T get(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

std::vector<double> number_list(const json& obj, const std::string& key, const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(where + "." + key + ": expected a nonempty array");
  std::vector<double> out;
  for (const json& x : v) {
    if (!x.is_number()) throw ConfigError(where + "." + key + ": entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

// Entries are [re, im] pairs; a bare number is read as a real entry.
Complex entry(const json& x, const std::string& where) {
  if (x.is_number()) return {x.get<double>(), 0.0};
  if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number())
    return {x[0].get<double>(), x[1].get<double>()};
  throw ConfigError(where + ": matrix entries must be numbers or [re, im] pairs");
}

Matrix parse_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) throw ConfigError(where + ": expected a nonempty array of rows");
  const std::size_t n = v.size();
  Matrix m(static_cast<Index>(n), static_cast<Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i].is_array() || v[i].size() != n)
      throw ConfigError(where + ": the matrix must be square");
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Index>(i), static_cast<Index>(j)) = entry(v[i][j], where);
  }
  return m;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

void check_positive(double v, const std::string& what) {
  if (!(v > 0.0)) throw ConfigError(what + " must be positive");
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig c;
  reject_unknown(doc, "config",
                 {"model", "profile", "grid", "scheme", "t_grid", "lambda_grid", "k_values",
                  "s_nodes", "cutoff_levels", "refine", "tolerances", "seed", "output", "dirac"});
  if (doc.contains("model")) {
    const json& m = doc.at("model");
    if (m.is_string()) {
      c.fixture = m.get<std::string>();
      const auto names = fixture_names();
      if (std::find(names.begin(), names.end(), c.fixture) == names.end())
        throw ConfigError("model: unknown fixture '" + c.fixture + "'");
    } else {
      reject_unknown(m, "model", {"a_minus", "b_plus"});
      if (!m.contains("a_minus") || !m.contains("b_plus"))
        throw ConfigError("model: inline models need both a_minus and b_plus");
      c.a_minus = parse_matrix(m.at("a_minus"), "model.a_minus");
      c.b_plus = parse_matrix(m.at("b_plus"), "model.b_plus");
      if (c.a_minus->rows() != c.b_plus->rows())
        throw ConfigError("model: a_minus and b_plus have different sizes");
      c.fixture = "inline";
    }
  }
  if (doc.contains("profile")) {
    const json& p = doc.at("profile");
    reject_unknown(p, "profile", {"kind", "scale"});
    if (p.contains("kind")) c.profile_kind = get<std::string>(p, "kind", "profile");
    if (p.contains("scale")) c.profile_scale = get<double>(p, "scale", "profile");
    check_positive(c.profile_scale, "profile.scale");
    try {
      if (c.profile_kind) (void)parse_profile_kind(*c.profile_kind);
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("profile.kind: ") + e.what());
    }
  }
  if (doc.contains("grid")) {
    const json& g = doc.at("grid");
    reject_unknown(g, "grid", {"T", "N"});
    if (g.contains("T")) {
      c.half_width = get<double>(g, "T", "grid");
      check_positive(*c.half_width, "grid.T");
    }
    if (g.contains("N")) {
      const auto n = get<long long>(g, "N", "grid");
      if (n < 3 || n % 2 == 0) throw ConfigError("grid.N must be odd and at least 3");
      c.points = static_cast<Index>(n);
    }
  }
  if (doc.contains("scheme")) {
    const auto s = get<std::string>(doc, "scheme", "config");
    if (s == "box")
      c.scheme = Scheme::Box;
    else if (s == "central")
      c.scheme = Scheme::Central;
    else
      throw ConfigError("scheme must be 'box' or 'central'");
  }
  if (doc.contains("t_grid")) {
    c.t_grid = number_list(doc, "t_grid", "config");
    for (double t : *c.t_grid) check_positive(t, "t_grid entries");
  }
  if (doc.contains("lambda_grid")) c.lambda_grid = number_list(doc, "lambda_grid", "config");
  if (doc.contains("k_values")) {
    c.k_values.clear();
    for (double k : number_list(doc, "k_values", "config")) {
      if (k < 1 || k != static_cast<int>(k)) throw ConfigError("k_values must be positive integers");
      c.k_values.push_back(static_cast<int>(k));
    }
  }
  if (doc.contains("s_nodes")) {
    c.s_nodes = get<int>(doc, "s_nodes", "config");
    if (c.s_nodes < 4) throw ConfigError("s_nodes must be at least 4");
  }
  if (doc.contains("cutoff_levels")) c.cutoff_levels = number_list(doc, "cutoff_levels", "config");
  if (doc.contains("refine")) c.refine = get<bool>(doc, "refine", "config");
  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    reject_unknown(t, "tolerances",
                   {"ptf", "quadrature", "refinement_ratio", "krein", "cutoff", "pushnitski",
                    "laplace", "index", "index_gapless", "spectrum"});
    const auto set = [&](const char* key, double& field) {
      if (t.contains(key)) {
        field = get<double>(t, key, "tolerances");
        check_positive(field, std::string("tolerances.") + key);
      }
    };
    set("ptf", c.tol.ptf);
    set("quadrature", c.tol.quadrature);
    set("refinement_ratio", c.tol.refinement_ratio);
    set("krein", c.tol.krein);
    set("cutoff", c.tol.cutoff);
    set("pushnitski", c.tol.pushnitski);
    set("laplace", c.tol.laplace);
    set("index", c.tol.index);
    set("index_gapless", c.tol.index_gapless);
    set("spectrum", c.tol.spectrum);
  }
  if (doc.contains("seed")) c.seed = get<std::uint64_t>(doc, "seed", "config");
  if (doc.contains("output")) {
    const json& o = doc.at("output");
    reject_unknown(o, "output", {"path", "format"});
    if (o.contains("path")) c.out_path = get<std::string>(o, "path", "output");
    if (o.contains("format")) c.format = get<std::string>(o, "format", "output");
    if (c.format != "csv" && c.format != "json")
      throw ConfigError("output.format must be 'csv' or 'json'");
  }
  if (doc.contains("dirac")) {
    const json& d = doc.at("dirac");
    reject_unknown(d, "dirac",
                   {"d", "mass", "box", "modes", "potential", "amplitude", "width", "p", "expect"});
    DiracConfig& dc = c.dirac;
    if (d.contains("d")) dc.d = get<int>(d, "d", "dirac");
    if (d.contains("mass")) dc.mass = get<double>(d, "mass", "dirac");
    if (d.contains("box")) dc.box = get<double>(d, "box", "dirac");
    if (d.contains("modes")) dc.modes = get<Index>(d, "modes", "dirac");
    if (d.contains("potential")) dc.potential = get<std::string>(d, "potential", "dirac");
    if (d.contains("amplitude")) dc.amplitude = get<double>(d, "amplitude", "dirac");
    if (d.contains("width")) dc.width = get<double>(d, "width", "dirac");
    if (d.contains("p")) dc.p = get<int>(d, "p", "dirac");
    if (d.contains("expect")) dc.expect = get<std::string>(d, "expect", "dirac");
    if (dc.d < 1 || dc.d > 6) throw ConfigError("dirac.d must be in 1..6");
    if (dc.modes < 1 || dc.modes % 2 == 0) throw ConfigError("dirac.modes must be odd and positive");
    check_positive(dc.box, "dirac.box");
    check_positive(dc.width, "dirac.width");
    if (dc.p < 1) throw ConfigError("dirac.p must be positive");
    if (dc.expect != "auto" && dc.expect != "stable" && dc.expect != "unstable" &&
        dc.expect != "none")
      throw ConfigError("dirac.expect must be auto, stable, unstable or none");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
  json j;
  if (c.a_minus)
    j["model"] = {{"a_minus", matrix_json(*c.a_minus)}, {"b_plus", matrix_json(*c.b_plus)}};
  else
    j["model"] = c.fixture;
  j["profile"] = {{"kind", c.profile_kind.value_or("tanh")}, {"scale", c.profile_scale}};
  json grid = json::object();
  if (c.half_width) grid["T"] = *c.half_width;
  if (c.points) grid["N"] = *c.points;
  j["grid"] = grid;
  j["scheme"] = c.scheme == Scheme::Box ? "box" : "central";
  if (c.t_grid) j["t_grid"] = *c.t_grid;
  if (c.lambda_grid) j["lambda_grid"] = *c.lambda_grid;
  j["k_values"] = c.k_values;
  j["s_nodes"] = c.s_nodes;
  if (c.cutoff_levels) j["cutoff_levels"] = *c.cutoff_levels;
  j["refine"] = c.refine;
  j["tolerances"] = {{"ptf", c.tol.ptf},
                     {"quadrature", c.tol.quadrature},
                     {"refinement_ratio", c.tol.refinement_ratio},
                     {"krein", c.tol.krein},
                     {"cutoff", c.tol.cutoff},
                     {"pushnitski", c.tol.pushnitski},
                     {"laplace", c.tol.laplace},
                     {"index", c.tol.index},
                     {"index_gapless", c.tol.index_gapless},
                     {"spectrum", c.tol.spectrum}};
  j["seed"] = c.seed;
  j["output"] = {{"path", c.out_path}, {"format", c.format}};
  const DiracConfig& d = c.dirac;
  j["dirac"] = {{"d", d.d},           {"mass", d.mass},   {"box", d.box},
                {"modes", d.modes},   {"potential", d.potential},
                {"amplitude", d.amplitude}, {"width", d.width}, {"p", d.p},
                {"expect", d.expect}};
  return j;
}

ResolvedModel resolve_model(const ExperimentConfig& c) {
  const ProfileFunction profile = make_profile(c.profile_kind.value_or("tanh"), c.profile_scale);
  if (c.a_minus) {
    try {
      PerturbationPath path(HermitianOperator(*c.a_minus), HermitianOperator(*c.b_plus), profile);
      return {"inline", std::move(path),
              make_grid(c.half_width.value_or(defaults::kHalfWidth),
                        c.points.value_or(defaults::kPoints))};
    } catch (const ContractError& e) {
      throw ConfigError(std::string("model: ") + e.what());
    }
  }
  Fixture f = fixture(c.fixture, c.seed);
  PerturbationPath path(f.path.a_minus, f.path.b_plus, profile);
  return {f.name, std::move(path),
          make_grid(c.half_width.value_or(f.half_width), c.points.value_or(f.points))};
}

std::string config_help() {
  const ExperimentConfig d;
  std::ostringstream os;
  os << "Config file (--config, JSON; unknown keys are rejected):\n"
     << "  model          fixture name or {\"a_minus\": M, \"b_plus\": M}, rows of [re, im]\n"
     << "                 pairs or numbers (default " << d.fixture << ")\n"
     << "  profile        {\"kind\": tanh|erf|smoothstep-compact, \"scale\": s}"
     << " (default tanh, 1)\n"
     << "  grid           {\"T\": half width, \"N\": odd point count} (default: fixture's,"
     << " otherwise " << defaults::kHalfWidth << ", " << defaults::kPoints << ")\n"
     << "  scheme         box|central (default box)\n"
     << "  t_grid         ptf, pushnitski: [0.5, 1, 2]; witten: [1, 2, 4]\n"
     << "  lambda_grid    pushnitski: [0.25, 0.5, 4]; witten: [-0.2, -0.1, -0.05]\n"
     << "  k_values       resolvent powers for witten (default [1, 2])\n"
     << "  s_nodes        Gauss-Legendre nodes on [0, 1] (default " << d.s_nodes << ")\n"
     << "  cutoff_levels  ssf cutoff sweep (default: the distinct |eigenvalues| of A-)\n"
     << "  refine         ptf: repeat on the grid with 2N-1 points (default false)\n"
     << "  tolerances     ptf " << d.tol.ptf << ", quadrature " << d.tol.quadrature
     << ", refinement_ratio " << d.tol.refinement_ratio << ", krein " << d.tol.krein
     << ",\n                 cutoff " << d.tol.cutoff << ", pushnitski " << d.tol.pushnitski
     << ", laplace " << d.tol.laplace << ", index " << d.tol.index << ",\n"
     << "                 index_gapless " << d.tol.index_gapless << ", spectrum "
     << d.tol.spectrum << "\n"
     << "  seed           seed for FIX-RAND8 (default " << d.seed << ")\n"
     << "  output         {\"path\": file, \"format\": csv|json} (default stdout, csv)\n"
     << "  dirac          {\"d\": " << d.dirac.d << ", \"mass\": " << d.dirac.mass
     << ", \"box\": " << d.dirac.box << ", \"modes\": " << d.dirac.modes
     << ",\n                  \"potential\": zero|gaussian|sharp|magnetic (" << d.dirac.potential
     << "), \"amplitude\": " << d.dirac.amplitude << ", \"width\": " << d.dirac.width
     << ",\n                  \"p\": " << d.dirac.p
     << ", \"expect\": auto|stable|unstable|none (auto)}\n"
     << "Fixtures:";
  for (const auto& n : fixture_names()) os << ' ' << n;
  os << '\n';
  return os.str();
}

}  // namespace ssflab::cli
