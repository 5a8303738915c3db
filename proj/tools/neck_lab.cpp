#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "necklab/bubbles.hpp"
#include "necklab/bubbletree.hpp"
#include "necklab/config.hpp"
#include "necklab/elliptic.hpp"
#include "necklab/hopf.hpp"
#include "necklab/laurent.hpp"
#include "necklab/lorentz.hpp"
#include "necklab/ops.hpp"
#include "necklab/pipeline.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace necklab;

struct GlobalOpts {
  std::string config;
  std::string out;
  int jobs = 1;
  std::optional<unsigned long> seed;
};

ExperimentConfig load_config(const GlobalOpts& g, bool required) {
  if (g.config.empty()) {
    if (required)
      throw CLI::ValidationError("--config", "this subcommand needs a config");
    return ExperimentConfig{};
  }
  return parse_config_file(g.config);
}

int run_config_pipeline(const GlobalOpts& g, const std::string& name,
                        bool config_required) {
  ExperimentConfig cfg = load_config(g, config_required);
  const std::string out = g.out.empty() ? cfg.out_dir : g.out;
  const unsigned long seed = g.seed.value_or(cfg.seed);
  PipelineResult r = run_pipeline(cfg, name, out, seed);
  for (const auto& f : r.failures)
    std::cerr << "contract failed: " << f << "\n";
  return r.ok() ? 0 : 1;
}

json lorentz_report(const Field& f) {
  RearrangedProfile p = RearrangedProfile::from_field(f);
  return json{{"l21", p.norm_L21()},
              {"l2weak", p.norm_L2weak()},
              {"l2_layercake", p.norm_L2_layercake()},
              {"llogl", norm_LlogL(f)},
              {"breakpoints", p.values()},
              {"cumulative", p.cumulative()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Lorentz-space estimates, Hopf "
               "differentials, Wente solves and bubble-tree analysis"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--config", g.config, "experiment config file");
  app.add_option("--out", g.out, "output directory override");
  app.add_option("--jobs", g.jobs, "worker count (reports are assembled "
                 "single-threaded either way)");
  unsigned long seed_val = 0;
  auto* seed_opt = app.add_option("--seed", seed_val, "RNG seed override");

  std::string field_file, map_file, f_file, g_file, coeffs_file, a_file,
      b_file, report_path, seq_dir;
  double lambda = 0.25, eps = 1e-3;
  std::vector<double> annulus;
  int k_index = -1;

  auto* c_lorentz = app.add_subcommand("lorentz", "Lorentz norms of a field");
  c_lorentz->add_option("--field", field_file, "input field file");
  c_lorentz->add_option("--report", report_path, "report output path");

  auto* c_hopf = app.add_subcommand("hopf", "Hopf differential + identities");
  c_hopf->add_option("--map", map_file, "input map field");
  c_hopf->add_option("--f", f_file, "forcing field f");
  c_hopf->add_option("--g", g_file, "forcing field g");

  auto* c_harm = app.add_subcommand("harm", "harmonic-annulus estimates");
  c_harm->add_option("--coeffs", coeffs_file, "Laurent coefficients (json)");
  c_harm->add_option("--lambda", lambda, "outer radius lambda");
  c_harm->add_option("--eps", eps, "inner-scale eps");

  auto* c_wente = app.add_subcommand("wente", "Wente solve on an annulus");
  c_wente->add_option("--a", a_file, "scalar field a");
  c_wente->add_option("--b", b_file, "scalar field b");
  c_wente->add_option("--annulus", annulus, "inner radius r and lambda")
      ->expected(2);

  auto* c_synth = app.add_subcommand("synth", "synthesize a bubbling index");
  c_synth->add_option("--k", k_index, "sequence index (default: full run)");

  auto* c_tree = app.add_subcommand("tree", "bubble-tree decomposition");
  c_tree->add_option("--seq", seq_dir, "directory of |Omega| field files");
  c_tree->add_option("--eps", eps, "concentration threshold");

  app.add_subcommand("verify", "energy identities and global bounds");
  app.add_subcommand("all", "every pipeline on one config");

  // global flags may appear after the subcommand name
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count()) g.seed = seed_val;

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();

    if (name == "lorentz" && !field_file.empty()) {
      json j = lorentz_report(read_field(field_file).magnitude());
      if (report_path.empty()) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::ofstream os(report_path);
        os << j.dump(2) << "\n";
      }
      return 0;
    }
    if (name == "hopf" && !map_file.empty()) {
      Field u = read_field(map_file);
      HopfData h = hopf_differential(u);
      const fs::path out = g.out.empty() ? fs::path(".") : fs::path(g.out);
      fs::create_directories(out);
      write_field((out / "phi.field").string(), h.phi);
      json j{{"polar_identity_residual", polar_identity_residual(h)},
             {"radial_bound_margin", radial_bound_margin(h)},
             {"max_gradient", max_gradient(h)}};
      if (!f_file.empty() || !g_file.empty()) {
        Field ff = f_file.empty() ? Field(u.grid_ptr(), u.dim())
                                  : read_field(f_file);
        Field gg = g_file.empty() ? Field(u.grid_ptr(), u.dim())
                                  : read_field(g_file);
        j["dbar_residual_l1"] = dbar_residual(u, ff, gg);
      } else {
        j["dbar_residual_l1"] = dbar_residual(u);
      }
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (name == "harm" && !coeffs_file.empty()) {
      std::ifstream is(coeffs_file);
      if (!is) throw std::runtime_error("cannot open " + coeffs_file);
      json spec = json::parse(is);
      std::vector<std::complex<double>> c, d;
      for (const auto& v : spec.value("c", json::array()))
        c.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
      for (const auto& v : spec.value("d", json::array()))
        d.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
      LaurentSeries s(spec.value("c0", 0.0), spec.value("d0", 0.0),
                      std::move(c), std::move(d));
      Prop32Ratios r = prop32_ratio(s, lambda, eps);
      std::cout << "lhs_31,lhs_32,rhs,hr_l21,ratio_31,ratio_32\n"
                << r.lhs_31 << "," << r.lhs_32 << "," << r.rhs << ","
                << r.hr_l21 << "," << r.ratio_31() << "," << r.ratio_32()
                << "\n";
      return 0;
    }
    if (name == "wente" && !a_file.empty()) {
      if (annulus.size() != 2)
        throw std::runtime_error("wente: --annulus r lambda required");
      Field a = read_field(a_file), b = read_field(b_file);
      const double r = annulus[0], lam = annulus[1];
      const int n_r = std::max(48, static_cast<int>(48 * std::log10(1.0 / r)));
      GridPtr ann = Grid::annulus(r, 1.0, n_r, a.grid().n_theta());
      WenteReport w = wente_solve(a, b, ann, lam);
      const fs::path out = g.out.empty() ? fs::path(".") : fs::path(g.out);
      fs::create_directories(out);
      write_field((out / "psi.field").string(), w.psi);
      json j{{"hess_l1", w.hess_l1},
             {"grad_l21", w.grad_l21},
             {"denom", w.denom},
             {"ratio", w.ratio}};
      std::cout << j.dump(2) << "\n";
      return 0;
    }
    if (name == "tree" && !seq_dir.empty()) {
      // scalar |Omega| fields, lexicographic file order = sequence order
      std::vector<fs::path> files;
      for (const auto& e : fs::directory_iterator(seq_dir))
        if (e.path().extension() == ".field") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      std::vector<SampleCloud> clouds;
      for (const auto& p : files) {
        Field f = read_field(p.string());
        SampleCloud c;
        const Grid& gr = f.grid();
        for (int i = 0; i < gr.n_r(); ++i)
          for (int j = 0; j < gr.n_theta(); ++j)
            c.pts.push_back({gr.radius(i) * std::cos(gr.theta(j)),
                             gr.radius(i) * std::sin(gr.theta(j)),
                             gr.cell_measure(i), f.at(i, j)});
        clouds.push_back(std::move(c));
      }
      ExperimentConfig cfg = load_config(g, false);
      ExtractionResult ext =
          extract_point_scales(clouds, eps, cfg.setup.theta);
      BubbleTree tree = group_strings(ext, cfg.setup.theta);
      json seqs = json::array();
      for (const auto& s : ext.retained)
        seqs.push_back({{"id", s.id},
                        {"x", s.x},
                        {"y", s.y},
                        {"rho", s.rho}});
      std::cout << json{{"sequences", seqs}, {"gamma", tree.gamma}}.dump(2)
                << "\n";
      return 0;
    }

    if (name == "synth" && k_index >= 0) {
      ExperimentConfig cfg = load_config(g, true);
      cfg.setup.ks = {k_index};
      const std::string out = g.out.empty() ? cfg.out_dir : g.out;
      PipelineResult r =
          run_pipeline(cfg, "synth", out, g.seed.value_or(cfg.seed));
      return r.ok() ? 0 : 1;
    }
    const bool needs_config =
        name == "synth" || name == "tree" || name == "verify" || name == "all";
    return run_config_pipeline(g, name, needs_config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
