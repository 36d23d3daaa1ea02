// alcove-mcf: mean curvature flow on Weyl alcoves of restricted root systems.
// Commands: catalog, flow, minimal, strata, singularity, basin, identity-check.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <alcove_mcf/serialize.hpp>
#include <alcove_mcf/svg.hpp>

using namespace alcove_mcf;

namespace {

struct Options {
  std::string preset_name, custom_file;
  int n = -1, p = -1, q = -1;
  std::string start_csv;
  int grid = 16;
  int dim = 1;
  double tol = 1e-10;
  double eps_wall = 1e-9;
  std::string out_file, svg_file, csv_file;
  long seed = 1;
  double theta = -1.0;
  long terms = 100000;
  bool with_minimal = false;
};

ActionData resolve_system(const Options& o) {
  if (!o.custom_file.empty()) {
    if (!o.preset_name.empty())
      throw std::invalid_argument("choose exactly one of --preset / --custom");
    return load_custom_file(o.custom_file);
  }
  if (o.preset_name.empty())
    throw std::invalid_argument("choose exactly one of --preset / --custom");
  std::map<std::string, int> params;
  if (o.n >= 0) params["n"] = o.n;
  if (o.p >= 0) params["p"] = o.p;
  if (o.q >= 0) params["q"] = o.q;
  return preset(o.preset_name, params);
}

Vec parse_start(const std::string& csv) {
  Vec x;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) x.push_back(std::stod(item));
  if (x.empty()) throw std::invalid_argument("empty --start");
  return x;
}

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt_point(const Vec& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? ", " : "") + fmt(x[i]);
  return s + ")";
}

std::string wall_name(const ActionData& d, const Alcove& alc, int wi) {
  const WallConstraint& w = alc.walls[wi];
  return d.roots[w.root_index].label + (w.sense > 0 ? " > " : " < ") + fmt(w.level);
}

int cmd_catalog() {
  std::printf("%-16s %-12s %-8s %-12s %s\n", "name", "params", "rank", "roots", "notes");
  std::printf("%-16s %-12s %-8s %-12s %s\n", "sp-isotropy", "n >= 2", "n-1",
              "n(n-1)/2", "A-type, multiplicity 4");
  std::printf("%-16s %-12s %-8s %-12s %s\n", "so2n-on-su2n", "n >= 2", "n-1",
              "n(n-1)/2", "A-type, multiplicities (2,2)");
  std::printf("%-16s %-12s %-8s %-12s %s\n", "supq-isotropy", "2<=p<q", "p", "p(p+1)",
              "BC-type, axis multiplicity 2(q-p)");
  std::printf("%-16s %-12s %-8s %-12s %s\n", "supp-isotropy", "p >= 2", "p",
              "p(p-1)+p", "C-type");
  std::printf("%-16s %-12s %-8s %-12s %s\n", "sopq-hermann", "2<=p<q", "p", "p(p+1)",
              "BC-type, dual multiplicities");
  std::printf("%-16s %-12s %-8s %-12s %s\n", "so2p-hermann", "p >= 2", "p",
              "p(p-1)+p", "C-type, dual multiplicities");
  return 0;
}

int cmd_flow(const Options& o) {
  ActionData d = resolve_system(o);
  Alcove alc = build_alcove(d);
  if (o.start_csv.empty()) throw std::invalid_argument("--start is required");
  Vec x0 = parse_start(o.start_csv);
  if (classify(d, alc, x0).where != PointClass::Interior)
    throw std::invalid_argument("start point not in alcove interior");
  FlowOpts fo;
  fo.eps_wall = o.eps_wall;
  FlowResult fr = integrate(d, alc, x0, fo);
  std::printf("status: %s\n", status_name(fr.status));
  std::printf("terminal: %s\n", fmt_point(fr.terminal).c_str());
  if (std::isfinite(fr.hit_time)) std::printf("hit_time: %s\n", fmt(fr.hit_time).c_str());
  for (int wi : fr.terminal_walls)
    std::printf("wall: %s\n", wall_name(d, alc, wi).c_str());
  write_json(o.out_file, to_json(d, alc, fr));
  if (!o.svg_file.empty()) {
    SvgPlot plot(alc);
    plot.add_quiver(d);
    plot.add_walls();
    plot.add_trajectory(fr);
    plot.add_marker(fr.terminal);
    plot.write(o.svg_file);
  }
  if (!o.csv_file.empty()) {
    std::ofstream csv(o.csv_file);
    csv << "t";
    for (std::size_t i = 0; i < d.ambient_dim(); ++i) csv << ",x" << i + 1;
    csv << "\n";
    for (const auto& [t, x] : fr.samples) {
      csv << fmt(t);
      for (double c : x) csv << "," << fmt(c);
      csv << "\n";
    }
  }
  return 0;
}

int cmd_minimal(const Options& o) {
  ActionData d = resolve_system(o);
  Alcove alc = build_alcove(d);
  auto zeros = find_minimal(d, alc, std::max(2, o.grid), o.tol);
  json arr = json::array();
  for (const ZeroReport& z : zeros) {
    std::printf("%s  residual %s  div %s\n", fmt_point(z.point).c_str(),
                fmt(z.residual).c_str(), fmt(z.jacobian_divergence).c_str());
    arr.push_back(to_json(d, alc, z));
  }
  if (zeros.empty()) std::printf("no interior zeros found\n");
  write_json(o.out_file, json{{"zeros", arr}});
  if (!o.csv_file.empty()) {
    std::ofstream csv(o.csv_file);
    csv << "residual,divergence";
    for (std::size_t i = 0; i < d.ambient_dim(); ++i) csv << ",x" << i + 1;
    csv << "\n";
    for (const ZeroReport& z : zeros) {
      csv << fmt(z.residual) << "," << fmt(z.jacobian_divergence);
      for (double c : z.point) csv << "," << fmt(c);
      csv << "\n";
    }
  }
  if (!o.svg_file.empty()) {
    SvgPlot plot(alc);
    plot.add_quiver(d);
    plot.add_walls();
    for (const ZeroReport& z : zeros) plot.add_marker(z.point);
    plot.write(o.svg_file);
  }
  return 0;
}

int cmd_strata(const Options& o) {
  ActionData d = resolve_system(o);
  Alcove alc = build_alcove(d);
  if (o.dim < 0 || o.dim >= d.rank)
    throw std::invalid_argument("--dim must be in [0, rank)");
  auto strata = enumerate_strata(d, alc, o.dim);
  json arr = json::array();
  for (const StratumSpec& s : strata) {
    std::string walls;
    for (int wi : s.active_walls) walls += "{" + wall_name(d, alc, wi) + "} ";
    std::printf("dim %d  walls %s rep %s\n", s.dim, walls.c_str(),
                fmt_point(s.representative).c_str());
    json js = to_json(d, alc, s);
    if (o.with_minimal && s.dim > 0) {
      json zj = json::array();
      for (const ZeroReport& z : find_minimal_on_stratum(d, alc, s, o.tol)) {
        std::printf("  minimal: %s  residual %s\n", fmt_point(z.point).c_str(),
                    fmt(z.residual).c_str());
        zj.push_back(to_json(d, alc, z));
      }
      js["minimal"] = zj;
    }
    arr.push_back(js);
  }
  write_json(o.out_file, json{{"strata", arr}});
  return 0;
}

int cmd_singularity(const Options& o) {
  ActionData d = resolve_system(o);
  Alcove alc = build_alcove(d);
  if (o.start_csv.empty()) throw std::invalid_argument("--start is required");
  Vec x0 = parse_start(o.start_csv);
  SingularityOpts so;
  so.flow.eps_wall = o.eps_wall;
  SingularityReport r = type_I_estimate(d, alc, x0, so);
  std::printf("dominant root: %s\n", d.roots[r.dominant_family].label.c_str());
  std::printf("wall multiplicity: %d\n", r.m_e_dominant);
  std::printf("predicted limit: %s\n", fmt(r.predicted_limit).c_str());
  std::printf("estimated limit: %s\n", fmt(r.estimated_limit).c_str());
  std::printf("relative error: %s\n", fmt(r.relative_error).c_str());
  std::printf("T estimate: %s  (sensitivity %s)\n", fmt(r.T_est).c_str(),
              fmt(r.T_sensitivity).c_str());
  write_json(o.out_file, to_json(r));
  if (!o.csv_file.empty()) {
    std::ofstream csv(o.csv_file);
    csv << "t,Q\n";
    for (const auto& [t, q] : r.samples) csv << fmt(t) << "," << fmt(q) << "\n";
  }
  return 0;
}

int cmd_basin(const Options& o) {
  ActionData d = resolve_system(o);
  Alcove alc = build_alcove(d);
  auto entries = basin_map(d, alc, std::max(2, o.grid));
  json arr = json::array();
  for (const BasinEntry& e : entries) {
    json j{{"seed", e.seed}, {"status", status_name(e.status)}};
    if (std::isfinite(e.hit_time)) j["hit_time"] = e.hit_time;
    if (!e.terminal_walls.empty())
      j["stratum"] = json{{"walls", stratum_to_json(d, alc, e.terminal_walls)}};
    arr.push_back(std::move(j));
  }
  std::printf("seeds: %zu\n", entries.size());
  write_json(o.out_file, json{{"basin", arr}});
  if (!o.csv_file.empty()) {
    std::ofstream csv(o.csv_file);
    csv << "status,hit_time,walls";
    for (std::size_t i = 0; i < d.ambient_dim(); ++i) csv << ",x" << i + 1;
    csv << "\n";
    for (const BasinEntry& e : entries) {
      std::string walls;
      for (int wi : e.terminal_walls) walls += (walls.empty() ? "" : ";") + wall_name(d, alc, wi);
      csv << status_name(e.status) << "," << (std::isfinite(e.hit_time) ? fmt(e.hit_time) : "")
          << ",\"" << walls << "\"";
      for (double c : e.seed) csv << "," << fmt(c);
      csv << "\n";
    }
  }
  if (!o.svg_file.empty()) {
    SvgPlot plot(alc);
    plot.add_walls();
    const char* palette[] = {"#bb2233", "#2266bb", "#117733", "#aa7700",
                             "#7733aa", "#116677"};
    std::vector<std::vector<int>> seen;
    for (const BasinEntry& e : entries) {
      std::size_t ci = seen.size();
      for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i] == e.terminal_walls) ci = i;
      if (ci == seen.size()) seen.push_back(e.terminal_walls);
      plot.add_marker(e.seed, palette[ci % 6]);
    }
    plot.write(o.svg_file);
  }
  return 0;
}

int cmd_identity_check(const Options& o) {
  std::vector<double> thetas;
  if (o.theta > 0)
    thetas.push_back(o.theta);
  else
    for (int k = 1; k <= 20; ++k) thetas.push_back(std::numbers::pi * k / 21);
  std::printf("%-18s %-18s %-18s %-18s\n", "theta", "closed", "partial", "corrected");
  double worst = 0.0;
  for (double th : thetas) {
    const double closed = cot_identity_closed(th);
    const double partial = cot_identity_partial(th, o.terms);
    const double corrected = cot_identity_corrected(th, o.terms);
    worst = std::max(worst, std::fabs(corrected - closed));
    std::printf("%-18s %-18s %-18s %-18s\n", fmt(th).c_str(), fmt(closed).c_str(),
                fmt(partial).c_str(), fmt(corrected).c_str());
  }
  std::printf("max corrected deviation: %s\n", fmt(worst).c_str());
  if (!(worst < 1e-6)) throw std::runtime_error("identity check failed");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean curvature flow on the fundamental alcove of a restricted root system"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--preset", o.preset_name, "preset system name (see catalog)");
    c->add_option("--custom", o.custom_file, "custom system JSON file");
    c->add_option("--n", o.n, "parameter n");
    c->add_option("--p", o.p, "parameter p");
    c->add_option("--q", o.q, "parameter q");
    c->add_option("--tol", o.tol, "solver tolerance")->check(CLI::PositiveNumber);
    c->add_option("--eps-wall", o.eps_wall, "wall-hit slack")->check(CLI::PositiveNumber);
    c->add_option("--out", o.out_file, "JSON report path");
    c->add_option("--svg", o.svg_file, "SVG phase portrait path (rank 2)");
    c->add_option("--csv", o.csv_file, "CSV table path");
    c->add_option("--seed", o.seed, "RNG seed");
  };

  CLI::App* catalog = app.add_subcommand("catalog", "list preset systems");
  CLI::App* flow = app.add_subcommand("flow", "integrate the flow from a start point");
  add_common(flow);
  flow->add_option("--start", o.start_csv, "start point, comma separated");
  CLI::App* minimal = app.add_subcommand("minimal", "interior minimal orbits (zeros of X)");
  add_common(minimal);
  minimal->add_option("--grid", o.grid, "Newton multistart grid size");
  CLI::App* strata = app.add_subcommand("strata", "enumerate boundary strata");
  add_common(strata);
  strata->add_option("--dim", o.dim, "stratum dimension");
  strata->add_flag("--minimal", o.with_minimal, "also solve for stratum minimal orbits");
  CLI::App* sing = app.add_subcommand("singularity", "type-I singularity estimate");
  add_common(sing);
  sing->add_option("--start", o.start_csv, "start point, comma separated");
  CLI::App* basin = app.add_subcommand("basin", "terminal-stratum map over a seed grid");
  add_common(basin);
  basin->add_option("--grid", o.grid, "seed grid size per axis");
  CLI::App* ident = app.add_subcommand("identity-check", "cotangent series identity check");
  ident->add_option("--theta", o.theta, "angle in (0, pi); omit for a 20-point grid");
  ident->add_option("--terms", o.terms, "series truncation N");

  CLI11_PARSE(app, argc, argv);

  try {
    if (catalog->parsed()) return cmd_catalog();
    if (flow->parsed()) return cmd_flow(o);
    if (minimal->parsed()) return cmd_minimal(o);
    if (strata->parsed()) return cmd_strata(o);
    if (sing->parsed()) return cmd_singularity(o);
    if (basin->parsed()) return cmd_basin(o);
    if (ident->parsed()) return cmd_identity_check(o);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
  return 0;
}
