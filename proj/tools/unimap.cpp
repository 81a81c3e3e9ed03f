#include "unimap/core_decomp.hpp"
#include "unimap/errors.hpp"
#include "unimap/expansion.hpp"
#include "unimap/experiments.hpp"
#include "unimap/samplers.hpp"
#include "unimap/series.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace unimap;

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return nlohmann::json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

Multigraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    return underlying_graph(map_from_json(nlohmann::json::parse(in)));
  }
  return read_edge_list(in);
}

DegreeSequence parse_degrees(const std::string& text) {
  DegreeSequence d;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) d.push_back(std::stoi(part));
  return d;
}

std::vector<DegreeSequence> parse_degree_list(const std::vector<std::string>& items) {
  std::vector<DegreeSequence> out;
  for (const auto& s : items) out.push_back(parse_degrees(s));
  return out;
}

int finish(const ExperimentReport& r, const std::string& out_dir) {
  if (!out_dir.empty()) persist_report(r, out_dir);
  std::cout << to_json(r).dump(2) << '\n';
  return r.verdict() == Verdict::Fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unicellular maps: sampling, cores, expansion"};
  app.require_subcommand(1);

  // sample-unicellular
  auto* su = app.add_subcommand("sample-unicellular", "uniform rooted one-face maps with n edges and genus g");
  int su_n = 0, su_g = 0, su_count = 1;
  std::uint64_t su_seed = 0, su_attempts = 1000000;
  std::string su_method = "exact";
  su->add_option("--n", su_n)->required();
  su->add_option("--genus", su_g)->required();
  su->add_option("--seed", su_seed)->required();
  su->add_option("--count", su_count);
  su->add_option("--method", su_method)->check(CLI::IsMember({"exact", "rejection"}));
  su->add_option("--max-attempts", su_attempts);

  auto* scm = app.add_subcommand("sample-cm", "configuration model map on a degree sequence");
  std::string scm_degrees;
  std::uint64_t scm_seed = 0;
  int scm_count = 1;
  scm->add_option("--degrees", scm_degrees)->required();
  scm->add_option("--seed", scm_seed)->required();
  scm->add_option("--count", scm_count);

  auto* en = app.add_subcommand("enumerate", "histogram over all gluings of a 2n-gon");
  int en_n = 0;
  std::string en_key = "genus";
  en->add_option("--n", en_n)->required();
  en->add_option("--classify", en_key)->check(CLI::IsMember({"genus", "faces", "vertices"}));

  auto* co = app.add_subcommand("core", "core and branches of a one-face map");
  std::string co_in, co_out = "-", co_branches;
  int co_M = 0;
  co->add_option("--in", co_in)->required();
  co->add_option("--M", co_M, "output core^{<M} instead of the core");
  co->add_option("--out", co_out);
  co->add_option("--branches", co_branches);

  auto* gr = app.add_subcommand("graph", "graph utilities");
  auto* ge = gr->add_subcommand("export", "underlying multigraph of a map as an edge list");
  gr->require_subcommand(1);
  std::string ge_in, ge_out = "-";
  ge->add_option("--in", ge_in)->required();
  ge->add_option("--out", ge_out);

  auto* ch = app.add_subcommand("cheeger", "Cheeger constant of a multigraph");
  std::string ch_in, ch_out = "-", ch_kappa;
  bool ch_exact = false, ch_spectral = false;
  int ch_cap = kDefaultCheegerCap;
  ch->add_option("--in", ch_in, "edge list, or a map in JSON")->required();
  ch->add_flag("--exact", ch_exact);
  ch->add_flag("--spectral", ch_spectral);
  ch->add_option("--kappa", ch_kappa);
  ch->add_option("--cap", ch_cap);
  ch->add_option("--out", ch_out);

  auto* cs = app.add_subcommand("constants", "derive beta*, A, B, W, M, c, delta, kappa");
  double cs_theta = 0, cs_eps = 0, cs_eta = 0.05;
  std::string cs_out = "-";
  cs->add_option("--theta", cs_theta)->required();
  cs->add_option("--epsilon", cs_eps)->required();
  cs->add_option("--eta", cs_eta);
  cs->add_option("--out", cs_out);

  auto* se = app.add_subcommand("series", "coefficients of T, D or C");
  std::string se_which = "T", se_format = "csv";
  unsigned se_order = 10;
  se->add_option("--which", se_which)->check(CLI::IsMember({"T", "D", "C"}));
  se->add_option("--order", se_order)->required();
  se->add_option("--format", se_format)->check(CLI::IsMember({"csv"}));

  auto* ve = app.add_subcommand("verify", "exact or seeded check of one claim");
  std::string ve_claim, ve_out;
  std::vector<int> ve_p{2, 4, 6};
  std::vector<std::string> ve_degrees{"3,3", "3,3,4,4", "3,3,3,3", "3,4", "3,3,3,3,4,4,4,4,4"};
  int ve_n = 6, ve_g = 1, ve_instances = 500, ve_vertices = 6, ve_M = 4;
  std::uint64_t ve_trials = 100000, ve_seed = 1;
  ve->add_option("--claim", ve_claim)
      ->required()
      ->check(CLI::IsMember({"one-vertex-law", "cm-unicellular", "decomposition-identity", "branch-profile",
                             "lemma-5.1", "branch-substitution", "rate-function"}));
  ve->add_option("--p", ve_p);
  ve->add_option("--degrees", ve_degrees, "comma separated, one sequence per value");
  ve->add_option("--n", ve_n);
  ve->add_option("--genus", ve_g);
  ve->add_option("--trials", ve_trials);
  ve->add_option("--instances", ve_instances);
  ve->add_option("--max-vertices", ve_vertices);
  ve->add_option("--max-M", ve_M);
  ve->add_option("--seed", ve_seed);
  ve->add_option("--out", ve_out);

  auto* ex = app.add_subcommand("experiment", "sampled experiments");
  auto* ce = ex->add_subcommand("core-expander", "cores of sampled U(n, ceil(theta n))");
  ex->require_subcommand(1);
  CoreExpanderConfig cfg;
  std::string ce_out;
  ce->add_option("--theta", cfg.theta);
  ce->add_option("--epsilon", cfg.epsilon);
  ce->add_option("--eta", cfg.eta);
  ce->add_option("--n", cfg.n_list);
  ce->add_option("--trials", cfg.trials);
  ce->add_option("--seed", cfg.seed);
  ce->add_option("--cap", cfg.cheeger_cap);
  ce->add_option("--out", ce_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*su) {
      const auto g = su_g;
      if (su_method == "exact") {
        const UnicellularSampler sampler(su_n, g);
        for (int i = 0; i < su_count; ++i) {
          Rng rng(derive_seed(su_seed, static_cast<std::uint64_t>(i)));
          std::cout << to_json(sampler.sample(rng)).dump() << '\n';
        }
      } else {
        for (int i = 0; i < su_count; ++i) {
          Rng rng(derive_seed(su_seed, static_cast<std::uint64_t>(i)));
          const auto res = sample_unicellular_fixed_genus(su_n, g, rng, su_attempts);
          std::cout << to_json(res.map).dump() << '\n';
          std::cerr << "attempts " << res.attempts << '\n';
        }
      }
    } else if (*scm) {
      const auto d = parse_degrees(scm_degrees);
      for (int i = 0; i < scm_count; ++i) {
        Rng rng(derive_seed(scm_seed, static_cast<std::uint64_t>(i)));
        std::cout << to_json(sample_configuration_model(d, rng)).dump() << '\n';
      }
    } else if (*en) {
      std::map<long, std::uint64_t> hist;
      std::uint64_t total = 0;
      for_each_pairing(en_n, [&](const Pairing& p) {
        const auto m = CombinatorialMap::from_polygon_gluing(p);
        long key = 0;
        if (en_key == "genus") key = genus(m);
        else if (en_key == "faces") key = static_cast<long>(face_count(m));
        else key = static_cast<long>(vertex_count(m));
        ++hist[key];
        ++total;
      });
      std::cout << "key,count,total\n";
      for (const auto& [k, c] : hist) std::cout << k << ',' << c << ',' << total << '\n';
    } else if (*co) {
      const auto m = map_from_json(read_json(co_in));
      const auto dec = core(m);
      const auto shown = co_M > 0 ? collapse_branches(dec, co_M) : dec;
      const auto out_map = co_M > 0 ? reconstruct(shown) : shown.core;
      write_text(co_out, to_json(out_map).dump(2) + "\n");
      if (!co_branches.empty()) write_text(co_branches, branches_to_json(dec).dump(2) + "\n");
    } else if (*ge) {
      std::ostringstream s;
      write_edge_list(s, underlying_graph(map_from_json(read_json(ge_in))));
      write_text(ge_out, s.str());
    } else if (*ch) {
      const auto graph = load_graph(ch_in);
      nlohmann::json out;
      if (!ch_spectral || ch_exact) {
        const auto w = cheeger_exact(graph, ch_cap);
        out = to_json(w);
        if (!ch_kappa.empty()) {
          const auto v = is_kappa_expander(graph, parse_rational(ch_kappa), ch_cap);
          out["kappa"] = ch_kappa;
          out["expander"] = v.holds;
        }
      }
      if (ch_spectral) {
        const auto b = spectral_cheeger_bounds(graph);
        nlohmann::json s{{"lambda2", b.lambda2}, {"lower", b.lower}, {"upper", b.upper}};
        if (ch_exact) out["spectral"] = s;
        else out = s;
      }
      write_text(ch_out, out.dump(2) + "\n");
    } else if (*cs) {
      write_text(cs_out, to_json(derive_constants(cs_theta, cs_eps, cs_eta)).dump(2) + "\n");
    } else if (*se) {
      const auto s = se_which == "T" ? series_T(se_order) : se_which == "D" ? series_D(se_order) : series_C(se_order);
      std::cout << "k,coefficient\n";
      for (unsigned k = 0; k <= se_order; ++k) std::cout << k << ',' << to_string(s[k]) << '\n';
    } else if (*ve) {
      ExperimentReport r;
      if (ve_claim == "one-vertex-law") r = verify_one_vertex_law(ve_p);
      else if (ve_claim == "cm-unicellular") r = verify_cm_unicellular(parse_degree_list(ve_degrees), ve_trials, ve_seed);
      else if (ve_claim == "decomposition-identity") r = verify_decomposition_identity(ve_n, ve_g);
      else if (ve_claim == "branch-profile") r = verify_branch_profile_law(ve_n, ve_g);
      else if (ve_claim == "rate-function")
        r = sweep_rate_function({0.01, 0.02, 0.05, 0.1, 0.2}, {0.001, 0.01, 0.05, 0.1});
      else r = verify_branch_substitution(ve_instances, ve_vertices, ve_M, ve_seed);
      return finish(r, ve_out);
    } else if (*ce) {
      return finish(run_core_expander_experiment(cfg), ce_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
