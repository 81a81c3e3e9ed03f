#include "unimap/experiments.hpp"

#include "unimap/core_decomp.hpp"
#include "unimap/errors.hpp"
#include "unimap/expansion.hpp"
#include "unimap/series.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace unimap {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Informational: return "informational";
  }
  return "?";
}

Verdict ExperimentReport::verdict() const {
  for (const auto& c : checks) {
    if (c.asserted && !c.holds) return Verdict::Fail;
  }
  return informational ? Verdict::Informational : Verdict::Pass;
}

void ExperimentReport::check(std::string quantity, std::string observed, std::string expected,
                             std::string provenance, bool holds, bool asserted) {
  checks.push_back({std::move(quantity), std::move(observed), std::move(expected), std::move(provenance), asserted,
                    holds});
}

nlohmann::json to_json(const ExperimentReport& r) {
  auto checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"quantity", c.quantity},
                      {"observed", c.observed},
                      {"expected", c.expected},
                      {"provenance", c.provenance},
                      {"asserted", c.asserted},
                      {"holds", c.holds}});
  }
  return nlohmann::json{{"experiment", r.name},
                        {"claim", r.claim},
                        {"verdict", to_string(r.verdict())},
                        {"parameters", r.parameters},
                        {"checks", checks}};
}

namespace {

std::string format_double(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<DataRow>& rows) {
  out << "experiment,n,quantity,value\n";
  for (const auto& r : rows) {
    out << r.experiment << ',' << (r.n ? std::to_string(*r.n) : std::string()) << ',' << r.quantity << ','
        << format_double(r.value) << '\n';
  }
}

std::string git_blob_hash(const std::string& text) {
  const std::string blob = "blob " + std::to_string(text.size()) + std::string(1, '\0') + text;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr) != 1) {
    throw Error("SHA-1 digest failed");
  }
  std::ostringstream hex;
  for (unsigned i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

void persist_report(const ExperimentReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto body = to_json(report);
  {
    std::ofstream out(dir / "report.json");
    out << body.dump(2) << '\n';
  }
  {
    std::ofstream out(dir / "data.csv");
    write_csv(out, report.data);
  }
  {
    std::ofstream out(dir / "results.jsonl", std::ios::app);
    out << body.dump() << '\n';
  }
  const std::string config = nlohmann::json{{"experiment", report.name}, {"parameters", report.parameters}}.dump();
  std::ofstream out(dir / "manifest.json");
  out << nlohmann::json{{"experiment", report.name},
                        {"config", report.parameters},
                        {"config_hash", git_blob_hash(config)},
                        {"verdict", to_string(report.verdict())},
                        {"runtime_seconds", report.runtime_seconds},
                        {"files", {"report.json", "data.csv", "results.jsonl"}}}
             .dump(2)
      << '\n';
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, unsigned workers) {
  if (workers == 0) workers = std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex guard;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += workers) {
        try {
          body(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(guard);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

void for_each_unicellular(int n, int g, const std::function<void(const CombinatorialMap&)>& visit) {
  const auto target = static_cast<std::size_t>(n + 1 - 2 * g);
  for_each_pairing(n, [&](const Pairing& p) {
    const auto m = CombinatorialMap::from_polygon_gluing(p);
    if (vertex_count(m) == target) visit(m);
  });
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

TruncatedSeries cd_power(unsigned order, int e) {
  const auto c = series_C(order);
  const auto d = series_D(order);
  auto acc = c;
  for (int j = 1; j < e; ++j) acc = acc * d;
  return acc;
}

bool min_degree_at_least_3(const CombinatorialMap& m) {
  const auto deg = vertex_degrees(m);
  return deg.empty() || deg.front() >= 3;
}

}  // namespace

ExperimentReport verify_one_vertex_law(const std::vector<int>& p_list) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.name = "one-vertex-law";
  r.claim = "a uniform gluing of a 2p-gon has one vertex with probability 1/(p+1) for even p";
  r.parameters = {{"p", p_list}};
  for (int p : p_list) {
    std::uint64_t total = 0;
    std::uint64_t one = 0;
    for_each_pairing(p, [&](const Pairing& pairing) {
      ++total;
      if (vertex_count(CombinatorialMap::from_polygon_gluing(pairing)) == 1) ++one;
    });
    const std::string tag = "p=" + std::to_string(p);
    const BigInt expected_total = double_factorial_odd(static_cast<unsigned>(p));
    r.check("pairings " + tag, std::to_string(total), expected_total.str(), "formula", BigInt(total) == expected_total);
    const auto formula = count_one_vertex_maps(p);
    const Rational observed(one, total);
    if (p % 2 == 0) {
      r.check("one-vertex count " + tag, std::to_string(one), to_string(formula.value), "formula",
              formula.integral && Rational(one) == formula.value);
      r.check("P(one vertex) " + tag, to_string(observed), to_string(Rational(1, p + 1)), "formula",
              observed == Rational(1, p + 1));
    } else {
      r.check("one-vertex count " + tag, std::to_string(one), "0", "identity", one == 0);
    }
    r.data.push_back({r.name, p, "P_one_vertex", to_double(observed)});
  }
  r.runtime_seconds = seconds_since(t0);
  return r;
}

ExperimentReport verify_cm_unicellular(const std::vector<DegreeSequence>& d_list, std::uint64_t trials,
                                       std::uint64_t seed) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.name = "cm-unicellular";
  r.claim = "the configuration model on d (all parts >= 3) is unicellular with probability of order 1/(3n)";
  r.informational = true;
  r.parameters = {{"degrees", d_list}, {"trials", trials}, {"seed", seed}};
  for (std::size_t i = 0; i < d_list.size(); ++i) {
    const auto& d = d_list[i];
    const long total = std::accumulate(d.begin(), d.end(), 0L);
    if (total <= 0) throw DomainError("degree sum must be positive");
    const long n = total / 2;
    std::ostringstream key;
    for (std::size_t j = 0; j < d.size(); ++j) key << (j ? "," : "") << d[j];
    const std::string tag = "d=(" + key.str() + ")";
    if (total % 2 != 0) {
      r.check("P(unicellular) " + tag + " [U(d) empty]", "0", "0", "identity", true);
      r.data.push_back({r.name, std::nullopt, "P_unicellular " + tag, 0.0});
      continue;
    }
    const Rational floor_value(1, 6 * n);
    const bool parity = parity_allows_unicellular(d);
    if (total <= 14) {
      std::uint64_t all = 0;
      std::uint64_t one = 0;
      for_each_pairing(static_cast<int>(n), [&](const Pairing& p) {
        ++all;
        if (face_count(configuration_model_map(d, p, 0)) == 1) ++one;
      });
      const Rational prob(one, all);
      if (!parity) {
        r.check("P(unicellular) " + tag + " [U(d) empty]", to_string(prob), "0", "identity", prob == 0);
      } else {
        r.check("P(unicellular) " + tag + " >= 1/(6n)", to_string(prob), ">= " + to_string(floor_value),
                "enumeration", prob >= floor_value);
        r.check("P(unicellular) " + tag + " vs 1/(3n)", to_string(prob), to_string(Rational(1, 3 * n)), "formula",
                prob >= Rational(1, 3 * n), false);
      }
      r.data.push_back({r.name, static_cast<int>(n), "P_unicellular " + tag, to_double(prob)});
      continue;
    }
    Rng rng(derive_seed(seed, i));
    std::uint64_t one = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
      if (face_count(sample_configuration_model(d, rng)) == 1) ++one;
    }
    const auto [lo, hi] = wilson_interval(one, trials);
    const double freq = trials ? static_cast<double>(one) / static_cast<double>(trials) : 0.0;
    const std::string observed = format_double(freq) + " [" + format_double(lo) + ", " + format_double(hi) + "]";
    if (!parity) {
      r.check("P(unicellular) " + tag + " [U(d) empty]", observed, "0", "identity", one == 0);
    } else {
      r.check("P(unicellular) " + tag + " >= 1/(6n)", observed, ">= " + to_string(floor_value), "measured",
              hi >= to_double(floor_value));
      r.check("P(unicellular) " + tag + " vs 1/(3n)", observed, to_string(Rational(1, 3 * n)), "formula",
              freq >= 1.0 / (3.0 * static_cast<double>(n)), false);
    }
    r.data.push_back({r.name, static_cast<int>(n), "P_unicellular " + tag, freq});
  }
  r.runtime_seconds = seconds_since(t0);
  return r;
}

ExperimentReport verify_decomposition_identity(int n, int g) {
  const auto t0 = Clock::now();
  if (g < 1 || 2 * g > n) throw DomainError("decomposition identity needs 1 <= g <= n/2");
  ExperimentReport r;
  r.name = "decomposition-identity";
  r.claim = "#{m in U(n,g): core has e edges} = N(e,g) [z^n] C D^(e-1)";
  r.parameters = {{"n", n}, {"g", g}};
  std::map<int, std::uint64_t> by_core;
  for_each_unicellular(n, g, [&](const CombinatorialMap& m) { ++by_core[static_cast<int>(core(m).core.edge_count())]; });
  for (int e = 2 * g; e <= n; ++e) {
    std::uint64_t cores = 0;
    for_each_unicellular(e, g, [&](const CombinatorialMap& m) {
      if (min_degree_at_least_3(m)) ++cores;
    });
    const auto coeff = cd_power(static_cast<unsigned>(n), e)[static_cast<unsigned>(n)];
    const Rational rhs = Rational(cores) * coeff;
    const std::uint64_t lhs = by_core.count(e) ? by_core[e] : 0;
    r.check("e=" + std::to_string(e), std::to_string(lhs),
            std::to_string(cores) + " * " + to_string(coeff) + " = " + to_string(rhs), "enumeration",
            Rational(lhs) == rhs);
    r.data.push_back({r.name, n, "maps_with_core_edges=" + std::to_string(e), static_cast<double>(lhs)});
  }
  r.runtime_seconds = seconds_since(t0);
  return r;
}

ExperimentReport verify_branch_profile_law(int n, int g) {
  const auto t0 = Clock::now();
  if (g < 1 || 2 * g > n) throw DomainError("branch profile law needs 1 <= g <= n/2");
  ExperimentReport r;
  r.name = "branch-profile";
  r.claim = "given e core edges, branch sizes follow (X, Y_1..Y_{e-1}) conditioned on total n, for any beta";
  r.parameters = {{"n", n}, {"g", g}};
  std::map<int, std::map<std::vector<int>, std::uint64_t>> counts;
  for_each_unicellular(n, g, [&](const CombinatorialMap& m) {
    const auto p = branch_size_profile(m);
    std::vector<int> key{p.root_size};
    key.insert(key.end(), p.other_sizes.begin(), p.other_sizes.end());
    ++counts[static_cast<int>(key.size())][key];
  });
  const auto order = static_cast<unsigned>(n);
  const auto c = series_C(order);
  const auto d = series_D(order);
  for (const auto& [e, table] : counts) {
    std::uint64_t total = 0;
    for (const auto& [key, cnt] : table) total += cnt;
    const Rational norm = cd_power(order, e)[order];
    // enumerate all compositions of n into e positive parts
    std::size_t mismatches = 0;
    std::size_t compositions = 0;
    const Rational betas[2] = {Rational(1, 10), Rational(1, 5)};
    Rational beta_total[2] = {0, 0};
    std::vector<std::pair<Rational, std::vector<int>>> weights;
    std::vector<int> parts(static_cast<std::size_t>(e), 1);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == parts.size()) {
        parts[i] = left;
        Rational w = c[static_cast<unsigned>(parts[0])];
        for (std::size_t j = 1; j < parts.size(); ++j) w *= d[static_cast<unsigned>(parts[j])];
        weights.emplace_back(w, parts);
        return;
      }
      for (int x = 1; x <= left - static_cast<int>(parts.size() - i - 1); ++x) {
        parts[i] = x;
        rec(i + 1, left - x);
      }
    };
    rec(0, n);
    for (const auto& [w, key] : weights) {
      ++compositions;
      const auto it = table.find(key);
      const std::uint64_t cnt = it == table.end() ? 0 : it->second;
      if (Rational(cnt, total) != w / norm) ++mismatches;
      for (int b = 0; b < 2; ++b) {
        Rational bw = w;
        for (int k = 0; k < n; ++k) bw *= betas[b];
        beta_total[b] += bw;
      }
    }
    std::size_t beta_mismatches = 0;
    for (const auto& [w, key] : weights) {
      Rational law[2];
      for (int b = 0; b < 2; ++b) {
        Rational bw = w;
        for (int k = 0; k < n; ++k) bw *= betas[b];
        law[b] = bw / beta_total[b];
      }
      if (law[0] != law[1] || law[0] != w / norm) ++beta_mismatches;
    }
    const std::string tag = "e=" + std::to_string(e);
    r.check("profiles " + tag, std::to_string(compositions - mismatches) + "/" + std::to_string(compositions) + " equal",
            std::to_string(compositions) + "/" + std::to_string(compositions), "enumeration",
            mismatches == 0 && table.size() == compositions);
    r.check("beta 1/10 vs 1/5 " + tag, std::to_string(beta_mismatches) + " differences", "0", "identity",
            beta_mismatches == 0);
    r.data.push_back({r.name, n, "maps_with_core_edges=" + std::to_string(e), static_cast<double>(total)});
  }
  r.runtime_seconds = seconds_since(t0);
  return r;
}

namespace {

Multigraph random_small_multigraph(int max_vertices, int max_edges, Rng& rng) {
  const int nv = 2 + static_cast<int>(uniform_below(static_cast<std::uint64_t>(max_vertices - 1), rng));
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < nv; ++v) edges.emplace_back(static_cast<int>(uniform_below(static_cast<std::uint64_t>(v), rng)), v);
  const int extra = static_cast<int>(uniform_below(static_cast<std::uint64_t>(max_edges - (nv - 1) + 1), rng));
  for (int i = 0; i < extra; ++i) {
    const int u = static_cast<int>(uniform_below(static_cast<std::uint64_t>(nv), rng));
    const int w = static_cast<int>(uniform_below(static_cast<std::uint64_t>(nv), rng));
    edges.emplace_back(u, w);
  }
  return Multigraph(nv, std::move(edges));
}

}  // namespace

ExperimentReport verify_branch_substitution(int instances, int max_vertices, int max_M, std::uint64_t seed) {
  const auto t0 = Clock::now();
  if (max_vertices < 2 || max_vertices > 6 || max_M < 1 || max_M > 4) {
    throw DomainError("branch substitution check supports 2..6 vertices and M in 1..4");
  }
  ExperimentReport r;
  r.name = "branch-substitution";
  r.claim = "replacing each edge of H by a doubly rooted tree of size <= M gives h_G >= h_H/(2M+1)";
  r.parameters = {{"instances", instances}, {"max_vertices", max_vertices}, {"max_M", max_M}, {"seed", seed}};
  constexpr int kMaxEdges = 6;
  std::vector<std::optional<TransferInstance>> results(static_cast<std::size_t>(instances));
  std::vector<int> ms(static_cast<std::size_t>(instances));
  parallel_for(static_cast<std::size_t>(instances), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const auto H = random_small_multigraph(max_vertices, kMaxEdges, rng);
    const int M = 1 + static_cast<int>(uniform_below(static_cast<std::uint64_t>(max_M), rng));
    ms[i] = M;
    results[i] = branch_substitution_transfer_check(H, M, rng);
  });
  std::size_t violations = 0;
  Rational worst = -1;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& t = *results[i];
    if (!t.holds) ++violations;
    if (t.h_H > 0) {
      const Rational ratio = t.h_G * (2 * ms[i] + 1) / t.h_H;
      if (worst < 0 || ratio < worst) worst = ratio;
    }
    r.data.push_back({r.name, t.G.vertex_count(), "h_G_times_2M+1_over_h_H",
                      t.h_H > 0 ? to_double(t.h_G * (2 * ms[i] + 1) / t.h_H) : 0.0});
  }
  r.check("violations", std::to_string(violations), "0", "formula", violations == 0);
  r.check("smallest h_G (2M+1) / h_H", to_string(worst), ">= 1", "measured", worst >= 1);
  r.runtime_seconds = seconds_since(t0);
  return r;
}

ExperimentReport run_core_expander_experiment(const CoreExpanderConfig& cfg) {
  const auto t0 = Clock::now();
  const auto pipeline = derive_constants(cfg.theta, cfg.epsilon, cfg.eta);
  ExperimentReport r;
  r.name = "core-expander";
  r.claim =
      "core^{<M} keeps more than (1-eps)n edges and is a kappa-expander, the core is a delta-expander (whp); "
      "h(core^{<M}) >= h(core)/(2M+1) always";
  r.informational = true;
  r.parameters = {{"theta", cfg.theta},   {"epsilon", cfg.epsilon}, {"eta", cfg.eta},
                  {"n", cfg.n_list},      {"trials", cfg.trials},   {"seed", cfg.seed},
                  {"m_curve", cfg.m_curve}, {"cheeger_cap", cfg.cheeger_cap}, {"pipeline", to_json(pipeline)}};
  std::vector<int> ms{3, pipeline.M};
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::vector<int> curve = cfg.m_curve;
  curve.push_back(pipeline.M);
  std::sort(curve.begin(), curve.end());
  curve.erase(std::unique(curve.begin(), curve.end()), curve.end());
  const Rational delta(static_cast<long>(std::llround(pipeline.delta * 1000)), 1000);
  const Rational kappa = delta / (2 * pipeline.M - 1);

  struct Trial {
    bool core_ok = true;
    bool bookkeeping_ok = true;
    int core_vertices = 0;
    int core_edges = 0;
    std::optional<Rational> h_core;
    std::vector<std::optional<Rational>> h_less;  // per ms
    std::vector<double> fractions;               // per curve
  };

  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const int n = cfg.n_list[ni];
    const int g = static_cast<int>(std::ceil(cfg.theta * n - 1e-9));
    const UnicellularSampler sampler(n, g);
    std::vector<Trial> trials(static_cast<std::size_t>(cfg.trials));
    parallel_for(trials.size(), [&](std::size_t i) {
      Rng rng(derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(n)), i));
      const auto m = sampler.sample(rng);
      const auto dec = core(m);
      auto& t = trials[i];
      t.core_edges = static_cast<int>(dec.core.edge_count());
      t.core_vertices = static_cast<int>(vertex_count(dec.core));
      t.core_ok = genus(dec.core) == g && min_degree_at_least_3(dec.core) && face_count(dec.core) == 1;
      const auto core_graph = underlying_graph(dec.core);
      if (core_graph.vertex_count() >= 2) t.h_core = cheeger_exact(core_graph, cfg.cheeger_cap).h;
      for (int M : ms) {
        const auto less = reconstruct(collapse_branches(dec, M));
        long big = 0;
        for (const auto& br : dec.branches) {
          if (br.tree.size() >= M) big += br.tree.size() - 1;
        }
        if (static_cast<long>(less.edge_count()) + big != n) t.bookkeeping_ok = false;
        const auto gl = underlying_graph(less);
        t.h_less.push_back(gl.vertex_count() >= 2 ? std::optional<Rational>(cheeger_exact(gl, cfg.cheeger_cap).h)
                                                  : std::nullopt);
      }
      for (int M : curve) {
        long kept = n;
        for (const auto& br : dec.branches) {
          if (br.tree.size() >= M) kept -= br.tree.size() - 1;
        }
        t.fractions.push_back(static_cast<double>(kept) / n);
      }
    });

    const std::string tag = "n=" + std::to_string(n) + ",g=" + std::to_string(g);
    std::size_t single_vertex = 0;
    std::size_t positive = 0;
    std::size_t measured = 0;
    std::size_t core_bad = 0;
    std::size_t books_bad = 0;
    std::size_t delta_ok = 0;
    std::optional<Rational> h_min;
    double h_sum = 0;
    for (const auto& t : trials) {
      if (!t.core_ok) ++core_bad;
      if (!t.bookkeeping_ok) ++books_bad;
      if (!t.h_core) {
        ++single_vertex;
        continue;
      }
      ++measured;
      if (*t.h_core > 0) ++positive;
      if (*t.h_core >= delta) ++delta_ok;
      if (!h_min || *t.h_core < *h_min) h_min = *t.h_core;
      h_sum += to_double(*t.h_core);
    }
    r.check("core degree >= 3, genus g, one face " + tag, std::to_string(trials.size() - core_bad), std::to_string(trials.size()),
            "identity", core_bad == 0);
    r.check("edges(core^{<M}) + sum big (size-1) = n " + tag, std::to_string(trials.size() - books_bad),
            std::to_string(trials.size()), "identity", books_bad == 0);
    r.check("h(core) > 0 " + tag, std::to_string(positive) + "/" + std::to_string(measured),
            std::to_string(measured) + "/" + std::to_string(measured), "identity", positive == measured);
    r.check("h(core) >= delta " + tag, std::to_string(delta_ok) + "/" + std::to_string(measured),
            "delta=" + format_double(pipeline.delta), "measured", true, false);
    for (std::size_t k = 0; k < ms.size(); ++k) {
      const int M = ms[k];
      std::size_t ok = 0;
      std::size_t checked = 0;
      std::size_t kappa_ok = 0;
      std::size_t with_graph = 0;
      std::optional<Rational> hm_min;
      for (const auto& t : trials) {
        if (t.h_less[k]) {
          ++with_graph;
          if (*t.h_less[k] >= kappa) ++kappa_ok;
          if (!hm_min || *t.h_less[k] < *hm_min) hm_min = *t.h_less[k];
        }
        if (!t.h_core || !t.h_less[k]) continue;
        ++checked;
        if (*t.h_less[k] * (2 * M + 1) >= *t.h_core) ++ok;
      }
      const std::string mt = tag + ",M=" + std::to_string(M);
      r.check("h(core^{<M}) >= h(core)/(2M+1) " + mt, std::to_string(ok) + "/" + std::to_string(checked),
              std::to_string(checked) + "/" + std::to_string(checked), "formula", ok == checked);
      r.check("h(core^{<M}) >= kappa " + mt, std::to_string(kappa_ok) + "/" + std::to_string(with_graph),
              "kappa=" + format_double(pipeline.kappa), "measured", true, false);
      if (hm_min) r.data.push_back({r.name, n, "h_core_less_min_M=" + std::to_string(M), to_double(*hm_min)});
    }
    for (std::size_t k = 0; k < curve.size(); ++k) {
      double sum = 0;
      for (const auto& t : trials) sum += t.fractions[k];
      const double mean = trials.empty() ? 0.0 : sum / static_cast<double>(trials.size());
      r.data.push_back({r.name, n, "edge_fraction_M=" + std::to_string(curve[k]), mean});
      if (curve[k] == pipeline.M) {
        r.check("mean edge fraction of core^{<M} at pipeline M " + tag, format_double(mean),
                "> " + format_double(1.0 - cfg.epsilon), "measured", mean > 1.0 - cfg.epsilon, false);
      }
    }
    r.data.push_back({r.name, n, "single_vertex_cores", static_cast<double>(single_vertex)});
    if (h_min) r.data.push_back({r.name, n, "h_core_min", to_double(*h_min)});
    if (measured) r.data.push_back({r.name, n, "h_core_mean", h_sum / static_cast<double>(measured)});
    double edges = 0;
    for (const auto& t : trials) edges += t.core_edges;
    if (!trials.empty()) r.data.push_back({r.name, n, "core_edges_mean", edges / static_cast<double>(trials.size())});
  }
  r.runtime_seconds = seconds_since(t0);
  return r;
}

ExperimentReport sweep_rate_function(const std::vector<double>& eta_grid, const std::vector<double>& delta_grid) {
  const auto t0 = Clock::now();
  ExperimentReport r;
  r.name = "rate-function";
  r.claim = "f(u,0) decreases to 0 as u -> 0; for small delta, f(u, eta delta) < -c on u >= eta";
  r.informational = true;
  r.parameters = {{"eta", eta_grid}, {"delta", delta_grid}};
  std::size_t column_mismatch = 0;
  for (int i = 1; i <= 100; ++i) {
    const double u = i / 100.0;
    const double f = rate_function(u, 0.0);
    const double direct = (u * std::log(u) + (2 - u) * std::log(2 - u)) / 6.0 - std::log(2.0) / 3.0;
    if (std::fabs(f - direct) > 1e-12) ++column_mismatch;
    r.data.push_back({r.name, std::nullopt, "f(u,0)|u=" + format_double(u), f});
  }
  r.check("f(u,0) column", std::to_string(column_mismatch) + " mismatches", "0", "identity", column_mismatch == 0);
  std::vector<double> frontier;
  std::size_t frontier_bad = 0;
  for (double eta : eta_grid) {
    const double c = -rate_function(eta, 0.0) / 2.0;
    const double delta = delta_frontier(eta, c);
    frontier.push_back(delta);
    r.data.push_back({r.name, std::nullopt, "c|eta=" + format_double(eta), c});
    r.data.push_back({r.name, std::nullopt, "delta_frontier|eta=" + format_double(eta), delta});
    if (delta > 0) {
      double worst = -1e300;
      for (int j = 0;; ++j) {
        const double u = std::min(1.0, eta + j * 1e-3);
        worst = std::max(worst, rate_function(u, eta * delta));
        if (u >= 1.0) break;
      }
      if (!(worst < -c)) ++frontier_bad;
    }
    for (double dl : delta_grid) {
      if (!(eta * dl < eta)) continue;
      double worst = -1e300;
      for (int j = 0;; ++j) {
        const double u = std::min(1.0, eta + j * 1e-3);
        worst = std::max(worst, rate_function(u, eta * dl));
        if (u >= 1.0) break;
      }
      r.data.push_back({r.name, std::nullopt, "sup_f|eta=" + format_double(eta) + ";delta=" + format_double(dl), worst});
    }
  }
  r.check("frontier entries satisfy sup f < -c", std::to_string(frontier.size() - frontier_bad) + "/" + std::to_string(frontier.size()),
          std::to_string(frontier.size()) + "/" + std::to_string(frontier.size()), "identity", frontier_bad == 0);
  bool nonincreasing = true;
  for (std::size_t i = 1; i < frontier.size(); ++i) {
    if (eta_grid[i] > eta_grid[i - 1] && frontier[i] > frontier[i - 1]) nonincreasing = false;
  }
  r.check("delta frontier nonincreasing in eta", nonincreasing ? "yes" : "no", "recorded", "measured", nonincreasing, false);
  r.runtime_seconds = seconds_since(t0);
  return r;
}

}  // namespace unimap
