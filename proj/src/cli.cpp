// Copyright 2026 The hcembed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hcembed/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "hcembed/adversary.hpp"
#include "hcembed/bigraph.hpp"
#include "hcembed/blocks.hpp"
#include "hcembed/condensation.hpp"
#include "hcembed/drc.hpp"
#include "hcembed/embedding.hpp"
#include "hcembed/errors.hpp"
#include "hcembed/exact.hpp"
#include "hcembed/harness.hpp"
#include "hcembed/hypercube.hpp"
#include "hcembed/report.hpp"
#include "hcembed/trichotomy.hpp"

namespace hcembed {

namespace {

std::string command_line(int argc, const char* const* argv) {
  std::string s = "hcembed";
  for (int i = 1; i < argc; ++i) {
    s += ' ';
    s += argv[i];
  }
  return s;
}

void emit(const ExperimentReport& rep, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << rep.str();
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << rep.str();
  if (!f) throw IoError("write failed: " + path);
}

void params_and_notes(ExperimentReport& rep, const std::vector<std::pair<std::string, std::string>>& params,
                      const std::vector<std::string>& notes) {
  rep.section("params");
  for (const auto& [k, v] : params) rep.field(k, v);
  if (!notes.empty()) {
    rep.section("notes");
    for (const auto& n : notes) rep.line(n);
  }
}

void write_pattern_embedding(ExperimentReport& rep, const PatternEmbedding& e) {
  rep.section("pattern embedding");
  const char* up = e.up_side == Side::Upper ? "upper" : "lower";
  const char* down = e.up_side == Side::Upper ? "lower" : "upper";
  for (std::size_t i = 0; i < e.upper_image.size(); ++i)
    rep.line("U " + std::to_string(i) + " " + up + " " + std::to_string(e.upper_image[i]));
  for (std::size_t i = 0; i < e.lower_image.size(); ++i)
    rep.line("L " + std::to_string(i) + " " + down + " " + std::to_string(e.lower_image[i]));
}

std::vector<ScheduleOverride> parse_overrides(const std::vector<std::string>& raw) {
  std::vector<ScheduleOverride> out;
  for (const auto& s : raw) out.push_back(parse_override(s));
  return out;
}

void describe_schedule(ExperimentReport& rep, const ParameterSchedule& s) {
  rep.section("schedule");
  rep.field("mu", s.mu);
  rep.field("alpha", s.alpha);
  rep.field("alpha0", s.alpha0);
  rep.field("c_prime", s.c_prime);
  rep.field("c", s.c);
  rep.field("c_chernoff", s.c_chernoff);
  rep.field("C_standard", s.C_standard);
  rep.field("c_condense", s.c_condense);
  rep.field("n", s.n);
  rep.field("r", s.r);
  rep.field("m", s.m);
  rep.field("M", s.M);
  rep.field("p", s.p);
  rep.field("u", s.u);
  rep.field("w", s.w);
  rep.field("h", s.h);
  rep.field("g", s.g_size);
  rep.field("k", s.k);
  rep.field("block delta", s.block_delta);
  rep.field("block gamma", s.block_gamma);
  rep.section("audit");
  for (const auto& a : s.audit) rep.line(a);
}

void describe_trichotomy(ExperimentReport& rep, const BipartiteGraph& g, const TrichotomyReport& t,
                         const ParameterSchedule& s) {
  rep.section("iterations");
  for (const auto& it : t.iterations) {
    std::ostringstream l;
    l << "l=" << it.iteration << " density=" << format_number(it.density)
      << " floor=" << format_number(it.density_floor) << " pair=(" << it.v1 << "," << it.v2 << ")"
      << " cn=" << it.cn_size << " p_hat=" << format_number(it.p_hat) << " radius=" << format_number(it.radius)
      << " samples=" << it.samples << " E=" << format_number(it.expectation) << " branch=" << it.branch;
    if (it.raw_block_size) l << " raw_block=" << it.raw_block_size;
    rep.line(l.str());
  }
  if (!t.notes.empty()) {
    rep.section("driver notes");
    for (const auto& n : t.notes) rep.line(n);
  }
  rep.section("certificate");
  if (!t.certificate) {
    rep.field("failure stage", t.failure_stage);
    rep.field("failure iteration", t.failure_iteration);
    return;
  }
  const auto& cert = *t.certificate;
  rep.field("kind", certificate_kind(cert));
  if (const auto* a = std::get_if<NonCondensedCertificate>(&cert)) {
    rep.field("iteration", a->iteration);
    rep.field("removed lowers", a->removed_lowers.count());
    rep.field("v1", a->pair.v1);
    rep.field("v2", a->pair.v2);
    rep.field("cn size", a->pair.cn_size);
    rep.field("p_hat", a->estimate.p_hat);
    rep.field("radius", a->estimate.wilson_radius);
    rep.field("samples", a->estimate.samples);
    rep.field("p", a->p);
    rep.field("M", a->M);
  } else if (const auto* b = std::get_if<DenseSubgraphCertificate>(&cert)) {
    rep.field("iteration", b->iteration);
    rep.field("v1", b->v1);
    rep.field("v2", b->v2);
    rep.field("uppers", b->uppers.count());
    rep.field("lowers", b->lowers.count());
    rep.field("density", rational_str(b->measured.exact));
    rep.field("claimed bound", b->claimed_bound);
    rep.field("upper floor (statement)", b->upper_floor_stated);
    rep.field("upper floor (construction)", b->upper_floor_built);
  } else {
    const auto& c = std::get<BlockCertificate>(cert);
    rep.field("k", c.blocks.k);
    rep.field("g", c.blocks.g_size);
    rep.field("delta", c.blocks.delta);
    rep.field("gamma", c.blocks.gamma);
    for (std::uint32_t l = 0; l < c.blocks.k; ++l) {
      std::string ids;
      for (std::uint32_t j = 0; j < c.blocks.g_size; ++j)
        ids += (j ? " " : "") + std::to_string(c.lower_ids[l * c.blocks.g_size + j]);
      rep.line("block " + std::to_string(l) + " up=" + std::to_string(c.blocks.upper_sets[l].count()) +
               " down: " + ids);
    }
  }
  const RecheckResult rc = recheck_certificate(g, cert, s);
  rep.field("recheck", rc.ok() ? "ok" : "failed");
  for (const auto& p : rc.problems) rep.line("problem: " + p);
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"hcembed: hypercube embeddings into dense bipartite graphs", "hcembed"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string graph_path, blocks_path, out_path, report_path, pattern_path, embedding_path;
  std::uint64_t seed = 0;
  unsigned n = 0, u = 2, w = 2, r = 2;
  std::uint32_t trials = 1, budget = 32, k = 0, g_size = 0, uppers = 0, lowers = 0, attempts = 100;
  double dens = 0.5, gamma = 0.25, delta = 0.05, M = 1, p = 1, alpha0 = 0.1, mu = 0.05, c = 0.25;
  std::uint64_t samples = 4096;
  std::optional<std::uint32_t> v1, v2;
  std::optional<double> p_decide;
  std::vector<std::string> overrides;
  std::vector<double> t_grid;
  bool force = false, exhaustive = false;
  std::uint64_t budget_ms = 10'000;
  std::function<int()> run;

  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", seed, "RNG seed")->capture_default_str(); };
  auto add_report = [&](CLI::App* s) { s->add_option("--report", report_path, "Write the report here, not stdout"); };

  auto* gen = app.add_subcommand("gen", "Random bipartite graph with independent edges");
  gen->add_option("--upper", uppers, "Upper part size")->required();
  gen->add_option("--lower", lowers, "Lower part size")->required();
  gen->add_option("--density", dens, "Edge probability")->required();
  gen->add_option("--out", out_path, "Graph file")->required();
  add_seed(gen);

  auto* gen_blocks = app.add_subcommand("gen-blocks", "Random block-structured graph plus .blocks sidecar");
  gen_blocks->add_option("--k", k, "Number of blocks")->required();
  gen_blocks->add_option("--g", g_size, "Lower vertices per block")->required();
  gen_blocks->add_option("--uppers", uppers, "Upper part size")->required();
  gen_blocks->add_option("--gamma", gamma, "Upper-set fraction")->required();
  gen_blocks->add_option("--delta", delta, "Allowed in-block density loss")->required();
  gen_blocks->add_option("--out", out_path, "Graph file")->required();
  add_seed(gen_blocks);

  auto* gen_gamma = app.add_subcommand("gen-gamma", "Adversarial half-of-the-blocks graph plus .blocks sidecar");
  gen_gamma->add_option("--k", k, "Number of blocks (even)")->required();
  gen_gamma->add_option("--g", g_size, "Lower vertices per block")->required();
  gen_gamma->add_option("--uppers", uppers, "Upper part size")->required();
  gen_gamma->add_option("--out", out_path, "Graph file")->required();
  add_seed(gen_gamma);

  auto* embed_drc = app.add_subcommand("embed-drc", "Dependent random choice embedding of Q_n");
  embed_drc->add_option("--graph", graph_path, "Graph file")->required();
  embed_drc->add_option("--n", n, "Cube dimension")->required();
  embed_drc->add_option("--trials", trials, "Independent trials")->capture_default_str();
  embed_drc->add_option("--budget", budget, "Resamples of A per trial")->capture_default_str();
  embed_drc->add_option("--out", out_path, "Write the embedding file here");
  add_seed(embed_drc);
  add_report(embed_drc);

  auto* embed_blocks = app.add_subcommand("embed-blocks", "Block-structured embedding of Q_n");
  embed_blocks->add_option("--graph", graph_path, "Graph file")->required();
  embed_blocks->add_option("--blocks", blocks_path, "Block sidecar file")->required();
  embed_blocks->add_option("--n", n, "Cube dimension")->required();
  embed_blocks->add_option("--w", w, "Facet split width")->required();
  embed_blocks->add_option("--u", u, "Conditioning vertices")->required();
  embed_blocks->add_option("--trials", trials, "Independent trials")->capture_default_str();
  embed_blocks->add_option("--budget", budget, "Selection draws per trial")->capture_default_str();
  embed_blocks->add_flag("--force", force, "Run even if the feasibility check fails");
  embed_blocks->add_option("--out", out_path, "Write the embedding file here");
  add_seed(embed_blocks);
  add_report(embed_blocks);

  auto* embed_h = app.add_subcommand("embed-h", "Standard pair plus non-condensed embedding of a regular pattern");
  embed_h->add_option("--graph", graph_path, "Graph file")->required();
  embed_h->add_option("--pattern", pattern_path, "Pattern graph file (default: Q_n)");
  embed_h->add_option("--n", n, "Cube dimension when no pattern is given");
  embed_h->add_option("--r", r, "Tuple length")->required();
  embed_h->add_option("--M", M, "Overlap threshold")->capture_default_str();
  embed_h->add_option("--p", p, "Condensation probability")->capture_default_str();
  embed_h->add_option("--alpha0", alpha0, "Lowest grid density")->capture_default_str();
  embed_h->add_option("--mu", mu, "Slack")->capture_default_str();
  embed_h->add_option("--attempts", attempts, "Standard pair attempts")->capture_default_str();
  add_seed(embed_h);
  add_report(embed_h);

  auto* embed_auto_cmd = app.add_subcommand("embed-auto", "Trichotomy driver followed by the matching embedder");
  embed_auto_cmd->add_option("--graph", graph_path, "Graph file")->required();
  embed_auto_cmd->add_option("--n", n, "Cube dimension")->required();
  embed_auto_cmd->add_option("--override", overrides, "Schedule override key=value");
  embed_auto_cmd->add_option("--out", out_path, "Write the embedding file here");
  add_seed(embed_auto_cmd);
  add_report(embed_auto_cmd);

  auto* condense = app.add_subcommand("condense", "Estimate the condensation probability of a pair");
  condense->add_option("--graph", graph_path, "Graph file")->required();
  condense->add_option("--r", r, "Tuple length")->required();
  condense->add_option("--M", M, "Overlap threshold")->required();
  condense->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
  condense->add_option("--v1", v1, "First lower vertex (default: search a standard pair)");
  condense->add_option("--v2", v2, "Second lower vertex");
  condense->add_option("--p", p_decide, "Decide condensed / non-condensed against p");
  condense->add_option("--alpha0", alpha0, "Lowest grid density")->capture_default_str();
  condense->add_option("--mu", mu, "Slack")->capture_default_str();
  condense->add_option("--attempts", attempts, "Standard pair attempts")->capture_default_str();
  add_seed(condense);
  add_report(condense);

  auto* trich = app.add_subcommand("trichotomy", "Run the structural driver and print its certificate");
  trich->add_option("--graph", graph_path, "Graph file")->required();
  trich->add_option("--n", n, "Cube dimension")->required();
  trich->add_option("--override", overrides, "Schedule override key=value");
  add_seed(trich);
  add_report(trich);

  auto* defeat = app.add_subcommand("defeat", "Naive versus block embedder on the same host");
  defeat->add_option("--graph", graph_path, "Graph file")->required();
  defeat->add_option("--blocks", blocks_path, "Block sidecar file")->required();
  defeat->add_option("--n", n, "Cube dimension")->required();
  defeat->add_option("--trials", trials, "Trials per embedder")->required();
  defeat->add_option("--u", u, "Conditioning vertices")->capture_default_str();
  defeat->add_option("--w", w, "Facet split width")->capture_default_str();
  add_seed(defeat);
  add_report(defeat);

  auto* verify = app.add_subcommand("verify", "Check an embedding file against a graph");
  verify->add_option("--graph", graph_path, "Graph file")->required();
  verify->add_option("--embedding", embedding_path, "Embedding file")->required();

  auto* chern = app.add_subcommand("chernoff", "Empirical binomial tails against the concentration bound");
  chern->add_option("--p", p, "Bernoulli parameter")->required();
  chern->add_option("--n", lowers, "Number of variables")->required();
  chern->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
  chern->add_option("--c", c, "Bound constant")->capture_default_str();
  chern->add_option("--t", t_grid, "Deviations (default: p n times 0.1 0.25 0.5 0.75 1)");
  chern->add_flag("--exhaustive", exhaustive, "Enumerate all outcomes instead of sampling");
  add_seed(chern);

  auto* brute = app.add_subcommand("brute", "Exhaustive search for Q_n or a pattern");
  brute->add_option("--graph", graph_path, "Graph file")->required();
  brute->add_option("--n", n, "Cube dimension");
  brute->add_option("--pattern", pattern_path, "Pattern graph file");
  brute->add_option("--budget-ms", budget_ms, "Time budget in milliseconds")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kExitPrecondition;
  }

  const std::string cmd = command_line(argc, argv);
  auto finish = [&](ExperimentReport& rep, bool ok) {
    rep.set_outcome(ok ? "success" : "failure");
    emit(rep, report_path, out);
    return ok ? kExitOk : kExitStageFailure;
  };

  try {
    if (app.got_subcommand(gen)) {
      Rng rng(seed);
      const BipartiteGraph gr = gen_random_bipartite(uppers, lowers, dens, rng);
      write_graph(gr, out_path);
      ExperimentReport rep(cmd, seed);
      rep.section("graph");
      rep.field("edges", gr.edge_count());
      rep.field("density", density(gr).value);
      return finish(rep, true);
    }
    if (app.got_subcommand(gen_blocks) || app.got_subcommand(gen_gamma)) {
      Rng rng(seed);
      const BlockGraph bg = app.got_subcommand(gen_blocks)
                                ? generate_block_graph(k, g_size, uppers, gamma, delta, rng)
                                : generate_gamma(GammaShape{k, g_size, uppers}, rng);
      write_graph(bg.graph, out_path);
      write_blocks(bg.blocks, out_path + ".blocks");
      ExperimentReport rep(cmd, seed);
      rep.section("graph");
      rep.field("edges", bg.graph.edge_count());
      rep.field("density", rational_str(density(bg.graph).exact));
      rep.field("gamma", bg.blocks.gamma);
      rep.field("delta", bg.blocks.delta);
      const BlockValidation v = validate_block_structure(bg.graph, bg.blocks);
      rep.section("validation");
      for (unsigned b = 1; b <= 4; ++b) rep.field("condition " + std::to_string(b), v.bullet_ok(b));
      for (const auto& bad : v.violations) rep.line("block " + std::to_string(bad.block) + ": " + bad.detail);
      return finish(rep, true);
    }
    if (app.got_subcommand(embed_drc)) {
      const BipartiteGraph gr = read_graph(graph_path);
      DrcOptions opt;
      opt.trials = trials;
      opt.seed = seed;
      opt.resample_budget = budget;
      const EmbedReport er = drc_embed_cube(gr, n, opt);
      ExperimentReport rep(cmd, seed);
      params_and_notes(rep, er.params, er.notes);
      rep.section("counters");
      rep.counters(er.counters);
      if (!er.failure_stage.empty()) rep.field("failure stage", er.failure_stage);
      if (er.embedding) {
        rep.embedding(*er.embedding);
        if (!out_path.empty()) write_embedding(*er.embedding, gr, out_path);
      }
      return finish(rep, er.success());
    }
    if (app.got_subcommand(embed_blocks)) {
      const BipartiteGraph gr = read_graph(graph_path);
      const BlockStructure bs = read_blocks(blocks_path, gr.upper_count(), gr.lower_count());
      BlockEmbedOptions opt;
      opt.trials = trials;
      opt.seed = seed;
      opt.selection_budget = budget;
      opt.force = force;
      const BlockEmbedReport br = block_embed_cube(gr, bs, n, u, w, opt);
      ExperimentReport rep(cmd, seed);
      params_and_notes(rep, br.params, br.notes);
      rep.section("counters");
      rep.counters(br.counters);
      if (!br.failure_stage.empty()) rep.field("failure stage", br.failure_stage);
      if (br.embedding) {
        rep.embedding(*br.embedding);
        if (!out_path.empty()) write_embedding(*br.embedding, gr, out_path);
      }
      if (br.failure_stage.rfind("precondition", 0) == 0) {
        rep.set_outcome("precondition");
        emit(rep, report_path, out);
        return kExitPrecondition;
      }
      return finish(rep, br.success());
    }
    if (app.got_subcommand(embed_h)) {
      const BipartiteGraph gr = read_graph(graph_path);
      if (pattern_path.empty() && n == 0) throw InputError("embed-h needs --pattern or --n");
      const BipartiteGraph h = pattern_path.empty() ? cube_as_bipartite(n) : read_graph(pattern_path);
      const Rng root(seed);
      StandardPairOptions so;
      so.alpha0 = alpha0;
      so.mu = mu;
      so.r = r;
      so.attempts = attempts;
      const StandardPairResult pr = find_standard_pair(gr, so, root.stream(0));
      ExperimentReport rep(cmd, seed);
      if (!pr.certificate) {
        rep.section("standard pair");
        rep.field("failure stage", "standard pair: " + pr.failure);
        return finish(rep, false);
      }
      const HEmbedReport hr = embed_regular_noncondensed(gr, *pr.certificate, h, M, p, root.stream(1));
      rep.section("standard pair");
      rep.field("v1", pr.certificate->v1);
      rep.field("v2", pr.certificate->v2);
      rep.field("cn size", pr.certificate->cn_size);
      params_and_notes(rep, hr.params, hr.notes);
      rep.section("counters");
      rep.counters(hr.counters);
      if (!hr.failure_stage.empty()) rep.field("failure stage", hr.failure_stage);
      if (hr.embedding) write_pattern_embedding(rep, *hr.embedding);
      return finish(rep, hr.success());
    }
    if (app.got_subcommand(embed_auto_cmd) || app.got_subcommand(trich)) {
      const BipartiteGraph gr = read_graph(graph_path);
      const auto ovs = parse_overrides(overrides);
      const ParameterSchedule s = build_schedule(n, gr.upper_count(), gr.lower_count(), ovs);
      ExperimentReport rep(cmd, seed);
      describe_schedule(rep, s);
      if (app.got_subcommand(trich)) {
        const TrichotomyReport t = trichotomy_drive(gr, s, TrichotomyBudgets{}, Rng(seed));
        describe_trichotomy(rep, gr, t, s);
        return finish(rep, t.certificate.has_value());
      }
      const AutoEmbedReport a = embed_auto(gr, n, s, TrichotomyBudgets{}, seed);
      describe_trichotomy(rep, gr, a.trichotomy, s);
      rep.section("dispatch");
      rep.field("branch", a.branch.empty() ? "none" : a.branch);
      if (!a.embedder_stage.empty()) rep.field("embedder failure stage", a.embedder_stage);
      rep.field("fallback", a.fallback_used);
      if (a.fallback_status) rep.field("fallback status", brute_status_name(*a.fallback_status));
      for (const auto& note : a.notes) rep.line(note);
      if (a.embedding) {
        rep.embedding(*a.embedding);
        if (!out_path.empty()) write_embedding(*a.embedding, gr, out_path);
      }
      return finish(rep, a.embedding.has_value());
    }
    if (app.got_subcommand(condense)) {
      const BipartiteGraph gr = read_graph(graph_path);
      const Rng root(seed);
      ExperimentReport rep(cmd, seed);
      VertexId a = 0, b = 0;
      if (v1 && v2) {
        a = *v1;
        b = *v2;
        if (a >= gr.lower_count() || b >= gr.lower_count()) throw InputError("--v1/--v2 out of range");
      } else if (v1 || v2) {
        throw InputError("give both --v1 and --v2, or neither");
      } else {
        StandardPairOptions so;
        so.alpha0 = alpha0;
        so.mu = mu;
        so.r = r;
        so.attempts = attempts;
        const StandardPairResult pr = find_standard_pair(gr, so, root.stream(0));
        if (!pr.certificate) {
          rep.section("standard pair");
          rep.field("failure stage", "standard pair: " + pr.failure);
          return finish(rep, false);
        }
        a = pr.certificate->v1;
        b = pr.certificate->v2;
      }
      const CondensationEstimate e = estimate_condensation(gr, a, b, r, M, samples, root.stream(1));
      rep.section("estimate");
      rep.field("v1", a);
      rep.field("v2", b);
      rep.field("r", r);
      rep.field("M", M);
      rep.field("samples", e.samples);
      rep.field("hits", e.hits);
      rep.field("p_hat", e.p_hat);
      rep.field("radius", e.wilson_radius);
      rep.field("wilson low", e.wilson_low);
      rep.field("wilson high", e.wilson_high);
      if (p_decide) {
        const char* verdict = decisively_condensed(e, *p_decide)       ? "condensed"
                              : decisively_non_condensed(e, *p_decide) ? "non-condensed"
                                                                       : "ambiguous";
        rep.field("decision", verdict);
      }
      return finish(rep, true);
    }
    if (app.got_subcommand(defeat)) {
      const BipartiteGraph gr = read_graph(graph_path);
      const BlockStructure bs = read_blocks(blocks_path, gr.upper_count(), gr.lower_count());
      DefeatOptions opt;
      opt.u = u;
      opt.w = w;
      const DefeatReport d = drc_defeat_experiment(gr, bs, n, trials, Rng(seed), opt);
      ExperimentReport rep(cmd, seed);
      rep.section("naive");
      rep.field("successes", d.drc_successes);
      if (!d.drc_precondition.empty()) rep.field("precondition", d.drc_precondition);
      rep.counters(d.drc_counters);
      rep.section("blocks");
      rep.field("successes", d.block_successes);
      if (!d.block_precondition.empty()) rep.field("precondition", d.block_precondition);
      rep.counters(d.block_counters);
      err << "wall-clock: naive " << format_number(d.drc_seconds) << " s, blocks " << format_number(d.block_seconds)
          << " s\n";
      return finish(rep, true);
    }
    if (app.got_subcommand(verify)) {
      const BipartiteGraph gr = read_graph(graph_path);
      const EmbeddingFile ef = read_embedding(embedding_path);
      if (ef.upper_count != gr.upper_count() || ef.lower_count != gr.lower_count())
        throw InputError("embedding header sizes do not match the graph");
      const VerifyResult v = verify_embedding(gr, ef.embedding);
      ExperimentReport rep("hcembed verify", 0);
      rep.section("verification");
      rep.field("n", ef.embedding.n);
      rep.field("adjacency checks", v.adjacency_checks);
      for (const auto& bad : v.violations) rep.line("violation: " + bad);
      return finish(rep, v.ok());
    }
    if (app.got_subcommand(chern)) {
      const std::vector<double> grid = t_grid.empty() ? default_chernoff_grid(p, lowers) : t_grid;
      const ChernoffTable t = exhaustive ? chernoff_exhaustive(p, lowers, grid, c)
                                         : chernoff_empirical(p, lowers, grid, samples, Rng(seed), c);
      ExperimentReport rep(cmd, seed);
      rep.section("table");
      rep.line("t,empirical,exact,bound,flag");
      for (const auto& row : t.rows)
        rep.line(format_number(row.t) + "," + format_number(row.empirical) + "," + format_number(row.exact_tail) +
                 "," + format_number(row.bound) + "," + (row.flagged ? "1" : "0"));
      return finish(rep, !t.any_flag());
    }
    if (app.got_subcommand(brute)) {
      const BipartiteGraph gr = read_graph(graph_path);
      BruteOptions opt;
      opt.budget = std::chrono::milliseconds(budget_ms);
      ExperimentReport rep(cmd, 0);
      rep.section("search");
      if (!pattern_path.empty()) {
        const BruteResult br = brute_force_embed(gr, read_graph(pattern_path), opt);
        rep.field("status", brute_status_name(br.status));
        if (br.embedding) write_pattern_embedding(rep, *br.embedding);
        return finish(rep, br.status == BruteStatus::Found);
      }
      if (n == 0) throw InputError("brute needs --n or --pattern");
      const BruteCubeResult br = brute_force_embed_cube(gr, n, opt);
      rep.field("status", brute_status_name(br.status));
      if (br.embedding) rep.embedding(*br.embedding);
      return finish(rep, br.status == BruteStatus::Found);
    }
  } catch (const InputError& e) {
    err << "precondition: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const ParseError& e) {
    err << "bad input file: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    err << "i/o: " << e.what() << '\n';
    return kExitIo;
  } catch (const CapExceeded& e) {
    err << "budget: " << e.what() << '\n';
    return kExitStageFailure;
  }
  err << app.help();
  return kExitPrecondition;
}

int cli_main(int argc, const char* const* argv) { return cli_main(argc, argv, std::cout, std::cerr); }

}  // namespace hcembed
