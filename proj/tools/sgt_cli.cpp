// Command-line surface for the gasket spectral-triple library: dimensions,
// zeta values, volumes, Kigami energies, residue reconstructions, Connes
// distance bounds, Clausen kernel tables, K-homology pairings and the
// acceptance selftest, with reproducible CSV/JSON output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "sgt/circle.hpp"
#include "sgt/energy.hpp"
#include "sgt/gasket.hpp"
#include "sgt/io.hpp"
#include "sgt/khomology.hpp"
#include "sgt/metric.hpp"
#include "sgt/selftest.hpp"
#include "sgt/special_functions.hpp"
#include "sgt/spectral.hpp"

using json = nlohmann::ordered_json;
using std::numbers::pi;

namespace {

struct Config {
  double alpha = 0.85;
  double beta = 1.0;
  int depth_m = 4;
  int modes_k = 48;
  int lacuna_l = 5;
  std::vector<double> offsets = {0.2, 0.1, 0.05};
  std::string format = "json";
  unsigned seed = 1;
  unsigned workers = 1;
  bool force = false;
  std::string output;
};

std::ostream& open_output(const Config& cfg, std::ofstream& file) {
  if (cfg.output.empty()) return std::cout;
  file.open(cfg.output, std::ios::binary);  // binary: LF line endings everywhere
  if (!file) throw sgt::ParseError("cannot open output file: " + cfg.output);
  return file;
}

void emit_json(const Config& cfg, const json& j) {
  std::ofstream file;
  auto& os = open_output(cfg, file);
  os << j.dump(2) << "\n";
}

sgt::TripleParams make_params(const Config& cfg) {
  return sgt::TripleParams(cfg.alpha, cfg.beta);
}

void require_regime(const Config& cfg, bool ok, const std::string& what) {
  if (!ok && !cfg.force)
    throw sgt::RegimeError(what + " (pass --force to run anyway)");
}

// "v0,v1,v2" inline boundary data or a CSV path of (vertex id, value) rows.
sgt::VertexFunction<double> parse_boundary(const std::string& spec) {
  if (spec.find(',') != std::string::npos && spec.find(".csv") == std::string::npos) {
    std::vector<double> vals;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        std::size_t used = 0;
        vals.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw sgt::ParseError("boundary: malformed number '" + tok + "'");
      }
    }
    if (vals.size() != 3)
      throw sgt::ParseError("boundary: expected exactly three values v0,v1,v2");
    return sgt::VertexFunction<double>::boundary(vals[0], vals[1], vals[2]);
  }
  std::ifstream in(spec);
  if (!in) throw sgt::ParseError("boundary: cannot open file " + spec);
  std::vector<std::pair<int, double>> rows;
  std::string line;
  int max_id = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("vertex", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw sgt::ParseError("boundary csv: missing comma");
    try {
      const int id = std::stoi(line.substr(0, comma));
      const double v = std::stod(line.substr(comma + 1));
      rows.emplace_back(id, v);
      max_id = std::max(max_id, id);
    } catch (const std::exception&) {
      throw sgt::ParseError("boundary csv: malformed row '" + line + "'");
    }
  }
  int level = 0;
  while (level <= sgt::kMaxGraphLevel &&
         int(sgt::build_graph(level)->vertices.size()) != max_id + 1)
    ++level;
  if (level > sgt::kMaxGraphLevel)
    throw sgt::ParseError("boundary csv: row count matches no graph level");
  sgt::VertexFunction<double> f;
  f.level = level;
  f.values.assign(sgt::build_graph(level)->vertices.size(), 0.0);
  for (const auto& [id, v] : rows) f.values[std::size_t(id)] = v;
  return f;
}

sgt::GasketPoint parse_point(const std::string& tok) {
  if (tok == "p0") return sgt::vertex_p0();
  if (tok == "p1") return sgt::vertex_p1();
  if (tok == "p2") return sgt::vertex_p2();
  if (tok == "m01") return sgt::midpoint(sgt::vertex_p0(), sgt::vertex_p1());
  if (tok == "m12") return sgt::midpoint(sgt::vertex_p1(), sgt::vertex_p2());
  if (tok == "m02") return sgt::midpoint(sgt::vertex_p0(), sgt::vertex_p2());
  // vertex address: a word over {0,1,2} followed by :corner
  const auto colon = tok.find(':');
  if (colon != std::string::npos) {
    const sgt::Word w = sgt::Word::parse(tok.substr(0, colon));
    const int corner = std::stoi(tok.substr(colon + 1));
    if (corner < 0 || corner > 2) throw sgt::ParseError("point: corner must be 0, 1 or 2");
    const sgt::GasketPoint base[3] = {sgt::vertex_p0(), sgt::vertex_p1(), sgt::vertex_p2()};
    return sgt::apply_word(w, base[std::size_t(corner)]);
  }
  throw sgt::ParseError("point: unknown token '" + tok + "'");
}

int cmd_dims(const Config& cfg) {
  const auto params = make_params(cfg);
  const auto rep = sgt::dimension_report(params, 3);
  if (cfg.format == "json") {
    json j;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["d"] = rep.d;
    j["delta"] = rep.delta;
    j["d_D"] = rep.d_metric;
    j["inv_alpha"] = rep.inv_alpha;
    j["volume_ok"] = rep.volume_ok;
    j["energy_ok"] = rep.energy_ok;
    j["metric_ok"] = rep.metric_ok;
    json poles = json::array();
    for (const auto& z : rep.poles) poles.push_back({{"re", z.real()}, {"im", z.imag()}});
    j["poles"] = poles;
    emit_json(cfg, j);
  } else {
    std::ofstream file;
    auto& os = open_output(cfg, file);
    sgt::csv_row(os, {"quantity", "value"});
    sgt::csv_row(os, {"d", sgt::format_g17(rep.d)});
    sgt::csv_row(os, {"delta", sgt::format_g17(rep.delta)});
    sgt::csv_row(os, {"d_D", sgt::format_g17(rep.d_metric)});
    sgt::csv_row(os, {"inv_alpha", sgt::format_g17(rep.inv_alpha)});
  }
  return 0;
}

int cmd_spectrum(const Config& cfg, int word_length) {
  std::ofstream file;
  auto& os = open_output(cfg, file);
  const auto spec = sgt::dirac_spectrum_circle(cfg.alpha, cfg.beta, word_length,
                                               std::max(1, cfg.modes_k));
  sgt::csv_row(os, {"k", "eigenvalue", "multiplicity"});
  for (std::size_t i = 0; i < spec.size(); i += 4)
    sgt::csv_row(os, {std::to_string(i / 4 + 1), sgt::format_g17(spec[i]), "4"});
  return 0;
}

int cmd_zeta(const Config& cfg, double s, bool with_brute) {
  const auto params = make_params(cfg);
  const auto z = sgt::zeta_D({s, 0.0}, params);
  double brute = 0.0, tail = 0.0;
  if (with_brute) {
    sgt::CompensatedSum modes;
    const int max_k = cfg.modes_k;
    for (int k = 1; k <= max_k; ++k) modes.add(std::pow(double(k), -cfg.alpha * s));
    const double p = cfg.alpha * s;
    const double mode_tail = std::pow(double(max_k), 1.0 - p) / (p - 1.0);
    const double r = 3.0 * std::pow(2.0, -s * cfg.beta);
    sgt::CompensatedSum words;
    double term = 1.0;
    for (int n = 0; n <= cfg.depth_m; ++n) {
      words.add(term);
      term *= r;
    }
    brute = 4.0 * std::pow(2.0 * pi, -s) * modes.value() * words.value();
    tail = 4.0 * std::pow(2.0 * pi, -s) *
           (mode_tail * (words.value() + term / (1.0 - r)) +
            modes.value() * term / (1.0 - r));
  }
  std::ofstream file;
  auto& os = open_output(cfg, file);
  if (cfg.format == "json") {
    json j;
    j["s"] = s;
    j["zeta_D_re"] = z.real();
    j["zeta_D_im"] = z.imag();
    if (with_brute) {
      j["brute_truncated"] = brute;
      j["tail_bound"] = tail;
    }
    os << j.dump(2) << "\n";
  } else {
    sgt::csv_row(os, {"s", "zeta_D_re", "zeta_D_im", "brute_truncated", "tail_bound"});
    sgt::csv_row(os, {sgt::format_g17(s), sgt::format_g17(z.real()),
                      sgt::format_g17(z.imag()), sgt::format_g17(brute),
                      sgt::format_g17(tail)});
  }
  return 0;
}

int cmd_volume(const Config& cfg, const std::string& tau_str, bool check) {
  const auto params = make_params(cfg);
  require_regime(cfg, params.volume_ok(), "volume: outside the volume regime");
  const sgt::Word tau = sgt::Word::parse(tau_str);
  const double exact = sgt::cell_volume(tau, params);
  json j;
  j["tau"] = tau.str();
  j["cell_volume"] = exact;
  if (check) {
    const auto est = sgt::volume_residue_check(tau, params, std::max(cfg.depth_m, 14),
                                               std::max(cfg.modes_k, 10000), cfg.offsets);
    j["residue_estimate"] = est.value;
    j["tail_bound"] = est.tail_bound;
    j["rel_dev"] = std::abs(est.value - exact) / exact;
  }
  if (cfg.format == "json") {
    emit_json(cfg, j);
  } else {
    std::ofstream file;
    auto& os = open_output(cfg, file);
    std::vector<std::string> hdr = {"tau", "cell_volume"};
    std::vector<std::string> row = {tau.str(), sgt::format_g17(exact)};
    if (check) {
      hdr.insert(hdr.end(), {"residue_estimate", "tail_bound"});
      row.insert(row.end(), {sgt::format_g17(j["residue_estimate"].get<double>()),
                             sgt::format_g17(j["tail_bound"].get<double>())});
    }
    sgt::csv_row(os, hdr);
    sgt::csv_row(os, row);
  }
  return 0;
}

int cmd_energy(const Config& cfg, const std::string& boundary, const std::string& dump) {
  auto f = parse_boundary(boundary);
  std::ofstream file;
  auto& os = open_output(cfg, file);
  std::vector<std::array<std::string, 3>> rows;
  double prev = -1.0;
  for (int m = f.level; m <= std::max(cfg.depth_m, f.level); ++m) {
    const auto ext = sgt::harmonic_extend(f, m);
    const double e = sgt::graph_energy(ext);
    const double dev = (prev < 0.0) ? 0.0 : std::abs(e - prev);
    rows.push_back({std::to_string(m), sgt::format_g17(e), sgt::format_g17(dev)});
    prev = e;
  }
  if (cfg.format == "json") {
    json j;
    j["boundary"] = boundary;
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"level", std::stoi(r[0])},
                     {"energy", std::stod(r[1])},
                     {"invariance_dev", std::stod(r[2])}});
    j["levels"] = arr;
    os << j.dump(2) << "\n";
  } else {
    sgt::csv_row(os, {"level", "energy", "invariance_dev"});
    for (const auto& r : rows) sgt::csv_row(os, {r[0], r[1], r[2]});
  }
  if (!dump.empty()) {
    std::ofstream out(dump, std::ios::binary);
    const auto ext = sgt::harmonic_extend(f, std::max(cfg.depth_m, f.level));
    sgt::csv_row(out, {"vertex", "value"});
    for (std::size_t i = 0; i < ext.values.size(); ++i)
      sgt::csv_row(out, {std::to_string(i), sgt::format_g17(ext.values[i])});
  }
  return 0;
}

int cmd_residue(const Config& cfg, const std::string& boundary) {
  const auto params = make_params(cfg);
  require_regime(cfg, params.energy_ok(), "residue: outside the energy regime");
  const auto f = parse_boundary(boundary);
  const double energy = sgt::graph_energy(f);
  const auto data = sgt::precompute_energy_trace(f, params, cfg.depth_m, cfg.modes_k,
                                                 cfg.lacuna_l);
  const double delta = params.energy_dimension();
  json rows = json::array();
  for (const double h : cfg.offsets) {
    const auto tr = sgt::energy_trace_at(data, delta + h);
    rows.push_back({{"s", delta + h},
                    {"trace", tr.value},
                    {"s_minus_delta_times_trace", h * tr.value},
                    {"tail_bound", tr.tail_bound}});
  }
  const auto res = sgt::energy_residue(f, params, cfg.depth_m, cfg.modes_k, cfg.lacuna_l,
                                       cfg.offsets);
  const auto hc = sgt::harmonic_constants(params, cfg.lacuna_l, cfg.modes_k);
  const double closed =
      (2.0 * hc.k2 * sgt::riemann_zeta(params.alpha * delta).value + hc.c_of(delta)) * energy /
      (params.beta * std::log(2.0));
  if (cfg.format == "json") {
    json j;
    j["boundary"] = boundary;
    j["graph_energy"] = energy;
    j["delta"] = delta;
    j["K2"] = hc.k2;
    j["C_delta"] = hc.c_of(delta);
    j["residue"] = res.value;
    j["residue_tail_bound"] = res.tail_bound;
    j["closed_form_harmonic"] = closed;
    j["trace_samples"] = rows;
    emit_json(cfg, j);
  } else {
    std::ofstream file;
    auto& os = open_output(cfg, file);
    sgt::csv_row(os, {"s", "trace", "s_minus_delta_times_trace", "tail_bound"});
    for (const auto& r : rows)
      sgt::csv_row(os, {sgt::format_g17(r["s"].get<double>()),
                        sgt::format_g17(r["trace"].get<double>()),
                        sgt::format_g17(r["s_minus_delta_times_trace"].get<double>()),
                        sgt::format_g17(r["tail_bound"].get<double>())});
    sgt::csv_row(os, {"residue", sgt::format_g17(res.value),
                      sgt::format_g17(res.tail_bound), sgt::format_g17(closed)});
  }
  return 0;
}

int cmd_distance(const Config& cfg, const std::string& points_str,
                 const std::string& diag_path) {
  const auto params = make_params(cfg);
  require_regime(cfg, params.metric_ok(), "distance: outside the metric regime");
  std::vector<std::string> toks;
  std::stringstream ss(points_str);
  std::string tok;
  while (std::getline(ss, tok, ';')) toks.push_back(tok);
  if (toks.size() < 2) throw sgt::ParseError("distance: need at least two points");
  std::vector<sgt::GasketPoint> pts;
  for (const auto& t : toks) pts.push_back(parse_point(t));

  json diagnostics = json::array();
  std::ofstream file;
  auto& os = open_output(cfg, file);
  std::vector<std::string> hdr = {"point"};
  for (const auto& t : toks) hdr.push_back(t);
  sgt::csv_row(os, hdr);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<std::string> row = {toks[i]};
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) {
        row.push_back("0");
        continue;
      }
      const auto b = sgt::connes_distance_lower(pts[i], pts[j], params, cfg.depth_m,
                                                std::min(cfg.lacuna_l, 4), 60, cfg.seed);
      row.push_back(sgt::format_g17(b.lower));
      diagnostics.push_back({{"from", toks[i]},
                             {"to", toks[j]},
                             {"lower", b.lower},
                             {"envelope_low", b.envelope_low},
                             {"envelope_high", b.envelope_high},
                             {"rho_geo", b.rho_geo},
                             {"iterations", b.diagnostics.iterations},
                             {"final_constraint", b.diagnostics.final_constraint},
                             {"feasible", b.diagnostics.feasible}});
    }
    sgt::csv_row(os, row);
  }
  if (!diag_path.empty()) {
    std::ofstream dj(diag_path, std::ios::binary);
    dj << diagnostics.dump(2) << "\n";
  }
  return 0;
}

int cmd_clausen(const Config& cfg, int grid) {
  std::ofstream file;
  auto& os = open_output(cfg, file);
  sgt::csv_row(os, {"theta", "clausen_cos", "phi_alpha", "abs_error_bound"});
  for (int i = 1; i <= grid; ++i) {
    const double theta = pi * double(i) / double(grid);
    const auto ci = sgt::clausen_cos(-2.0 * cfg.alpha, theta);
    const auto phi = sgt::phi_alpha(cfg.alpha, theta);
    sgt::csv_row(os, {sgt::format_g17(theta), sgt::format_g17(ci.value),
                      sgt::format_g17(phi.value), sgt::format_g17(ci.abs_error_bound)});
  }
  return 0;
}

int cmd_pairing(const Config& cfg, const std::string& sigma_str, int level, int samples) {
  const sgt::Word sigma = sgt::Word::parse(sigma_str);
  const auto vec = sgt::gasket_pairing_vector(sigma, level, samples);
  json j;
  j["generator"] = sigma.str();
  json arr = json::array();
  for (const auto& [tau, idx] : vec)
    arr.push_back({{"lacuna", tau.str()}, {"pairing", idx}});
  j["pairings"] = arr;
  emit_json(cfg, j);
  return 0;
}

int cmd_graph(const Config& cfg, int level) {
  const auto g = sgt::build_graph(level);
  std::ofstream file;
  auto& os = open_output(cfg, file);
  sgt::csv_row(os, {"vertex", "x", "y", "edges"});
  std::vector<std::vector<int>> adj(g->vertices.size());
  for (const auto& e : g->edges) {
    adj[std::size_t(e.a)].push_back(e.b);
    adj[std::size_t(e.b)].push_back(e.a);
  }
  for (std::size_t i = 0; i < g->vertices.size(); ++i) {
    const auto p = g->vertices[i].to_plane();
    std::string edges;
    for (std::size_t k = 0; k < adj[i].size(); ++k) {
      if (k) edges.push_back(' ');
      edges += std::to_string(adj[i][k]);
    }
    sgt::csv_row(os, {std::to_string(i), sgt::format_g17(p.x()), sgt::format_g17(p.y()),
                      edges});
  }
  return 0;
}

int cmd_selftest(const Config& cfg) {
  bool ok = false;
  const std::string report = sgt::selftest::run_full(&ok);
  std::ofstream file;
  auto& os = open_output(cfg, file);
  os << report;
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  CLI::App app{"Spectral-triple computations on the Sierpinski gasket"};
  app.add_option("--alpha", cfg.alpha, "circle deformation exponent in (0,1]");
  app.add_option("--beta", cfg.beta, "metric scaling exponent");
  app.add_option("--m", cfg.depth_m, "word depth");
  app.add_option("--modes", cfg.modes_k, "mode truncation K");
  app.add_option("--lacuna-level", cfg.lacuna_l, "lacuna sampling level L (3*2^L points)");
  app.add_option("--offsets", cfg.offsets, "Richardson offsets above the abscissa")
      ->expected(3);
  app.add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", cfg.seed, "solver seed");
  app.add_option("--workers", cfg.workers, "worker count (results are identical)");
  app.add_flag("--force", cfg.force, "run outside the admissible regime");
  app.add_option("--output", cfg.output, "output file (default stdout)");

  auto* dims = app.add_subcommand("dims", "dimension report and pole ladder");
  double zeta_s = 3.0;
  bool zeta_brute = false;
  int spectrum_word = -1;
  auto* zeta = app.add_subcommand("zeta", "zeta function of the triple");
  zeta->add_option("--s", zeta_s, "evaluation point");
  zeta->add_flag("--brute", zeta_brute, "emit the truncated eigenvalue sum");
  zeta->add_option("--spectrum", spectrum_word,
                   "export the Dirac spectrum CSV for this word length instead");
  std::string tau_str;
  bool vol_check = false;
  auto* volume = app.add_subcommand("volume", "residue volumes of cells");
  volume->add_option("--tau", tau_str, "cell word over {0,1,2}");
  volume->add_flag("--check", vol_check, "run the residue extrapolation check");
  std::string boundary = "1,0,0", dump_values;
  auto* energy = app.add_subcommand("energy", "Kigami energy of boundary data");
  energy->add_option("--boundary", boundary, "v0,v1,v2 or CSV path");
  energy->add_option("--dump-values", dump_values, "write (vertex,value) CSV");
  std::string res_boundary = "1,0,0";
  auto* residue = app.add_subcommand("residue", "energy residue at delta");
  residue->add_option("--boundary", res_boundary, "v0,v1,v2 or CSV path");
  std::string points = "p0;p1", diag_path;
  auto* distance = app.add_subcommand("distance", "Connes distance lower bounds");
  distance->add_option("--points", points,
                       "semicolon list: p0,p1,p2,m01,... or word:corner");
  distance->add_option("--diagnostics", diag_path, "solver diagnostics JSON path");
  int grid = 100;
  auto* clausen = app.add_subcommand("clausen", "Clausen kernel table");
  clausen->add_option("--grid", grid, "number of grid points on (0, pi]");
  std::string sigma_str;
  int pairing_level = 2, pairing_samples = 96;
  auto* pairing = app.add_subcommand("pairing", "K-homology pairing per lacuna");
  pairing->add_option("--sigma", sigma_str, "generator word");
  pairing->add_option("--level", pairing_level, "max lacuna level");
  pairing->add_option("--samples", pairing_samples, "samples per loop");
  int graph_level = 3;
  auto* graph = app.add_subcommand("graph", "adjacency export of the level graph");
  graph->add_option("--m", graph_level, "graph level");
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");

  app.require_subcommand(1);
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 3;
  }

  sgt::set_worker_count(cfg.workers);
  try {
    if (*dims) return cmd_dims(cfg);
    if (*zeta)
      return (spectrum_word >= 0) ? cmd_spectrum(cfg, spectrum_word)
                                  : cmd_zeta(cfg, zeta_s, zeta_brute);
    if (*volume) return cmd_volume(cfg, tau_str, vol_check);
    if (*energy) return cmd_energy(cfg, boundary, dump_values);
    if (*residue) return cmd_residue(cfg, res_boundary);
    if (*distance) return cmd_distance(cfg, points, diag_path);
    if (*clausen) return cmd_clausen(cfg, grid);
    if (*pairing) return cmd_pairing(cfg, sigma_str, pairing_level, pairing_samples);
    if (*graph) return cmd_graph(cfg, graph_level);
    if (*selftest) return cmd_selftest(cfg);
  } catch (const sgt::RegimeError& e) {
    std::cerr << "regime violation: " << e.what() << "\n";
    return 2;
  } catch (const sgt::PoleError& e) {
    std::cerr << "pole/domain violation: " << e.what() << "\n";
    return 2;
  } catch (const sgt::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 3;
  } catch (const sgt::ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 4;
  } catch (const sgt::StabilizationError& e) {
    std::cerr << "non-stabilized result: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
