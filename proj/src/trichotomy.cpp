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

#include "hcembed/trichotomy.hpp"

#include <algorithm>
#include <bit>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "hcembed/drc.hpp"
#include "hcembed/errors.hpp"
#include "hcembed/exact.hpp"
#include "hcembed/hypercube.hpp"

namespace hcembed {

double c_prime_root() { return (-25.0 + std::sqrt(881.0)) / 128.0; }

namespace {

constexpr const char* kOverrideKeys[] = {"mu", "alpha", "alpha0", "c_chernoff", "C_standard", "c_condense",
                                         "M",  "p",     "u",      "w",          "h",          "r"};

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(10);
  out << x;
  return out.str();
}

std::vector<std::uint64_t> degrees_into(const BipartiteGraph& g, const BitVec& uppers) {
  std::vector<std::uint64_t> deg(g.lower_count());
  for (VertexId v = 0; v < g.lower_count(); ++v) deg[v] = g.column(v).and_count(uppers);
  return deg;
}

// sum over lowers of (deg_v / base)^r, grouped by degree.
Rational power_sum(const std::vector<std::uint64_t>& deg, std::uint64_t base, unsigned r) {
  std::vector<std::uint64_t> hist(base + 1, 0);
  for (auto d : deg) ++hist[d];
  Rational sum = 0;
  for (std::uint64_t d = 1; d <= base; ++d)
    if (hist[d] != 0) sum += rational_u64(hist[d]) * rational_pow(rational_u64(d, base), r);
  return sum;
}

// Exact density of the subgraph on `uppers` x `lowers` given per-lower degrees into `uppers`.
Density subgraph_density(const std::vector<std::uint64_t>& deg, std::uint64_t upper_size, const BitVec& lowers) {
  std::uint64_t edges = 0;
  lowers.for_each_set([&](VertexId v) { edges += deg[v]; });
  const std::uint64_t cells = upper_size * lowers.count();
  Density d;
  d.exact = cells == 0 ? Rational(0) : rational_u64(edges, cells);
  d.value = d.exact.get_d();
  return d;
}

}  // namespace

ScheduleOverride parse_override(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw InputError("override '" + text + "' is not key=value");
  std::string key = text.substr(0, eq);
  const std::string value = text.substr(eq + 1);
  if (std::find(std::begin(kOverrideKeys), std::end(kOverrideKeys), key) == std::end(kOverrideKeys))
    throw InputError("unknown override key '" + key + "'");
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    throw InputError("override '" + text + "' has no numeric value");
  }
  if (used != value.size() || !std::isfinite(x)) throw InputError("override '" + text + "' has no numeric value");
  return {std::move(key), x};
}

ParameterSchedule build_schedule(unsigned n, std::uint32_t upper_count, std::uint32_t lower_count,
                                 std::span<const ScheduleOverride> overrides) {
  if (n < 2 || n > kMaxCubeDim) throw InputError("build_schedule: need 2 <= n <= 24");
  if (upper_count < 1 || lower_count < 2) throw InputError("build_schedule: graph too small");
  ParameterSchedule s;
  auto find = [&](const std::string& key) -> std::optional<double> {
    std::optional<double> out;
    for (const auto& [k, v] : overrides)
      if (k == key) out = v;
    return out;
  };
  for (const auto& [k, v] : overrides) s.audit.push_back("override " + k + " = " + fmt(v));

  s.mu = find("mu").value_or(s.mu);
  s.alpha = find("alpha").value_or(s.alpha);
  s.alpha0 = find("alpha0").value_or(s.alpha0);
  s.c_chernoff = find("c_chernoff").value_or(s.c_chernoff);
  s.C_standard = find("C_standard").value_or(s.C_standard);
  s.c_condense = find("c_condense").value_or(s.c_condense);
  if (!(s.mu > 0.0 && s.mu < 1.0)) throw InputError("build_schedule: mu must lie in (0, 1)");
  if (!(s.alpha > 0.0 && s.alpha <= 1.0)) throw InputError("build_schedule: alpha must lie in (0, 1]");
  if (!(s.alpha0 > 0.0 && s.c_chernoff > 0.0 && s.C_standard > 0.0 && s.c_condense > 0.0))
    throw InputError("build_schedule: constants must be positive");

  s.c_prime = c_prime_root();
  s.c = s.c_prime - 100.0 * s.mu;
  s.n = n;
  s.m = std::uint64_t{1} << (n - 1);
  s.upper_count = upper_count;
  s.lower_count = lower_count;
  if (auto r = find("r")) {
    if (*r < 1 || *r != std::floor(*r)) throw InputError("build_schedule: r must be a positive integer");
    s.r = static_cast<unsigned>(*r);
  } else {
    s.r = n;
  }

  const double D = lower_count;
  const double lnD = std::log(D);
  const double ln_a = std::log((1.0 - s.mu) * s.alpha);
  const double nn = n;
  const double ln_m = std::log(static_cast<double>(s.m));

  if (auto M = find("M")) {
    if (!(*M >= 1.0)) throw InputError("build_schedule: M must be >= 1");
    s.M = *M;
  } else {
    const double lnM = 2.0 * std::log(s.c_chernoff) + 4.0 * nn * ln_a + 4.0 * lnD -
                       (9.0 * std::log(2.0) + 2.0 * std::log(s.C_standard) + 3.0 * ln_m + 6.0 * std::log(nn) +
                        std::log(400.0) + 2.0 * std::log(lnD));
    const double raw = std::floor(std::exp(lnM));
    s.M = raw;
    if (!(raw >= 1.0)) {
      s.audit.push_back("clamp M: " + fmt(raw) + " < 1, set to 1");
      s.M = 1.0;
    } else if (raw > D) {
      s.audit.push_back("clamp M: " + fmt(raw) + " > |V^down|, set to " + fmt(D));
      s.M = D;
    }
  }

  if (auto p = find("p")) {
    if (!(*p > 0.0 && *p <= 1.0)) throw InputError("build_schedule: p must lie in (0, 1]");
    s.p = *p;
  } else {
    const double lnp = 2.0 * (std::log(s.c_chernoff) + 2.0 * nn * ln_a + 2.0 * lnD -
                              (std::log(16.0 * 2187.0 * 20.0) + std::log(s.C_standard) + 3.0 * std::log(nn) +
                               2.0 * ln_m + std::log(lnD)));
    const double raw = std::exp(lnp);
    s.p = raw;
    if (raw > 1.0) {
      s.audit.push_back("clamp p: " + fmt(raw) + " > 1, set to 1");
      s.p = 1.0;
    } else if (!(raw >= 1e-300)) {
      s.audit.push_back("clamp p: " + fmt(raw) + " underflows, set to 1e-300");
      s.p = 1e-300;
    }
  }

  if (auto u = find("u")) {
    if (*u < 1 || *u != std::floor(*u)) throw InputError("build_schedule: u must be a positive integer");
    s.u = static_cast<unsigned>(*u);
  } else {
    s.u = static_cast<unsigned>(std::floor(std::sqrt(nn)));
  }

  const double g_raw = std::ceil(s.c_condense * s.p * s.M);
  if (g_raw < 1.0) {
    s.audit.push_back("clamp g: " + fmt(g_raw) + " < 1, set to 1");
    s.g_size = 1;
  } else if (g_raw > D) {
    s.audit.push_back("clamp g: " + fmt(g_raw) + " > |V^down|, set to " + fmt(D));
    s.g_size = lower_count;
  } else {
    s.g_size = static_cast<std::uint32_t>(g_raw);
  }

  if (auto w = find("w")) {
    if (*w < 0 || *w > nn - 2 || *w != std::floor(*w)) throw InputError("build_schedule: w must be in 0..n-2");
    s.w = static_cast<unsigned>(*w);
  } else {
    const long long log_g = static_cast<long long>(std::bit_width(s.g_size)) - 1;
    const long long n_minus_w = log_g - static_cast<long long>(s.u) - 1;
    const long long w_raw = static_cast<long long>(n) - n_minus_w;
    if (w_raw < 0) {
      s.audit.push_back("clamp w: " + std::to_string(w_raw) + " < 0, set to 0");
      s.w = 0;
    } else if (w_raw > static_cast<long long>(n) - 2) {
      s.audit.push_back("clamp w: " + std::to_string(w_raw) + " > n - 2, set to " + std::to_string(n - 2));
      s.w = n - 2;
    } else {
      s.w = static_cast<unsigned>(w_raw);
    }
  }

  const double neg_log2_half_p = -std::log2(s.p / 2.0);
  if (auto h = find("h")) {
    if (!(*h > 0.0)) throw InputError("build_schedule: h must be positive");
    s.h = *h;
  } else {
    const double wn = s.w;
    const double ln_x = (2.0 * wn + s.c * nn - nn) * std::log(2.0) - 3.0 * nn * std::log1p(-s.mu);
    s.h = s.c_condense * s.p * s.M / (neg_log2_half_p * std::exp(ln_x * nn / (nn + wn)));
    if (!(s.h > 0.0) || !std::isfinite(s.h)) {
      s.audit.push_back("clamp h: " + fmt(s.h) + " not a positive number, set to 1");
      s.h = 1.0;
    }
  }

  s.k = static_cast<std::uint32_t>(std::max(1.0, std::ceil(s.mu * s.alpha * D / s.g_size)));
  s.block_gamma = std::pow(1.0 - s.mu, 3) * s.alpha * s.alpha;
  const double ratio = s.c_condense * s.p * s.M / (s.h * neg_log2_half_p);
  s.block_delta = 1.0 - std::pow(ratio, 1.0 / s.r);
  if (s.block_delta < 0.0) {
    s.audit.push_back("clamp delta: " + fmt(s.block_delta) + " < 0, set to 0");
    s.block_delta = 0.0;
  }
  return s;
}

std::optional<ExpectationDensify> densify_from_expectation(const BipartiteGraph& g, unsigned r, double h) {
  if (r < 1) throw InputError("densify_from_expectation: r must be >= 1");
  if (!(h > 0.0)) throw InputError("densify_from_expectation: h must be positive");
  if (g.upper_count() == 0 || g.lower_count() == 0) return std::nullopt;
  const BitVec all_up = BitVec::full(g.upper_count());
  const auto deg = degrees_into(g, all_up);
  ExpectationDensify out;
  out.expectation = power_sum(deg, g.upper_count(), r);
  const Rational h_exact = rational_from_double(h);
  if (out.expectation < h_exact) return std::nullopt;

  out.threshold = h_exact / rational_u64(2 * std::uint64_t{g.lower_count()});
  out.density_bound = std::pow(out.threshold.get_d(), 1.0 / r);
  out.lowers = VertexSet::none(Side::Lower, g.lower_count());
  for (VertexId v = 0; v < g.lower_count(); ++v)
    if (deg[v] > 0 && rational_pow(rational_u64(deg[v], g.upper_count()), r) >= out.threshold) out.lowers.bits.set(v);
  out.measured = subgraph_density(deg, g.upper_count(), out.lowers.bits);
  out.size_ok = rational_u64(2 * out.lowers.count()) >= h_exact;
  out.density_ok = rational_pow(out.measured.exact, r) >= out.threshold;
  return out;
}

CondensationDensifyResult densify_from_condensation(const BipartiteGraph& g, VertexId v1, VertexId v2, unsigned r,
                                                    double M, double p, double h, const Rng& rng,
                                                    const CondensationDensifyOptions& opt) {
  if (r < 1) throw InputError("densify_from_condensation: r must be >= 1");
  if (!(p > 0.0 && p <= 1.0) || !(h > 0.0) || !(M > 0.0))
    throw InputError("densify_from_condensation: need p in (0, 1], h > 0, M > 0");
  if (opt.outer_samples == 0 || opt.inner_samples == 0) throw InputError("densify_from_condensation: empty budget");
  CondensationDensifyResult res;
  res.class_histogram.assign(opt.max_class + 2, 0);

  const VertexId pair[2] = {v1, v2};
  const VertexSet base = common_neighborhood(g, Side::Lower, pair);
  if (base.count() == 0) {
    res.failure = "precondition: CN(v1, v2) is empty";
    return res;
  }
  const CondensationEstimate est =
      opt.estimate ? *opt.estimate : estimate_condensation(g, v1, v2, r, M, opt.condensation_samples, rng.stream(0));
  if (!decisively_condensed(est, p)) {
    res.failure = "precondition: not decisively condensed (p_hat " + fmt(est.p_hat) + ", radius " +
                  fmt(est.wilson_radius) + ", p " + fmt(p) + ")";
    return res;
  }
  const auto deg = degrees_into(g, base.bits);
  const std::uint64_t base_size = base.count();
  res.expectation = power_sum(deg, base_size, r);
  if (res.expectation > rational_from_double(h)) {
    res.failure = "precondition: expected |CN(Y)| exceeds h";
    return res;
  }

  const auto base_ids = base.ids();
  const std::uint64_t outer = opt.outer_samples;
  const std::uint64_t inner = opt.inner_samples;
  struct Outer {
    std::vector<VertexId> y;
    BitVec cn;
    int cls = -1;
  };
  std::vector<Outer> draws(outer);
  for (std::uint64_t t = 0; t < outer; ++t) {
    Rng local = rng.stream(t + 1);
    Outer& o = draws[t];
    o.cn = BitVec::full(g.lower_count());
    for (unsigned k = 0; k < r; ++k) {
      o.y.push_back(base_ids[local.uniform_below(base_ids.size())]);
      o.cn &= g.row(o.y.back());
    }
    std::uint64_t hits = 0;
    BitVec other(g.lower_count());
    for (std::uint64_t i = 0; i < inner; ++i) {
      other = BitVec::full(g.lower_count());
      for (unsigned k = 0; k < r; ++k) other &= g.row(base_ids[local.uniform_below(base_ids.size())]);
      if (static_cast<double>(o.cn.and_count(other)) >= M) ++hits;
    }
    if (hits == 0) {
      ++res.class_histogram.back();
      continue;
    }
    // class i: hits / inner in (2^-i-1, 2^-i]
    for (unsigned i = 0; i <= opt.max_class; ++i) {
      if (static_cast<long double>(hits) * std::ldexp(1.0L, static_cast<int>(i) + 1) > inner) {
        o.cls = static_cast<int>(i);
        break;
      }
    }
    if (o.cls < 0) o.cls = static_cast<int>(opt.max_class);
    ++res.class_histogram[static_cast<std::size_t>(o.cls)];
  }

  const double neg_log2_quarter_p = -std::log2(p / 4.0);
  const double bar = p / (2.0 * neg_log2_quarter_p);
  int best = -1;
  double best_score = 0.0;
  for (unsigned i = 0; i <= opt.max_class; ++i) {
    const double score = std::ldexp(static_cast<double>(res.class_histogram[i]) / outer, -static_cast<int>(i));
    if (score >= bar && score > best_score) {
      best = static_cast<int>(i);
      best_score = score;
    }
  }
  if (best < 0) {
    res.failure = "no dyadic class reaches the bar " + fmt(bar);
    return res;
  }

  CondensationDensify out;
  out.i0 = static_cast<unsigned>(best);
  out.class_score = best_score;
  out.bar = bar;
  out.upper_base = base;
  out.cn_y_bound = h * 2.0 * neg_log2_quarter_p / (std::ldexp(1.0, best) * p);
  out.threshold = rational_from_double(p) * rational_from_double(M) /
                  (rational_from_double(8.0 * h) * rational_from_double(neg_log2_quarter_p));
  out.density_bound = std::pow(out.threshold.get_d(), 1.0 / r);
  out.size_floor = std::ldexp(M, -best - 2);

  const Outer* chosen = nullptr;
  BitVec chosen_s;
  for (const Outer& o : draws) {
    if (o.cls != best || static_cast<double>(o.cn.count()) > out.cn_y_bound) continue;
    BitVec s(g.lower_count());
    o.cn.for_each_set([&](VertexId v) {
      if (deg[v] > 0 && rational_pow(rational_u64(deg[v], base_size), r) >= out.threshold) s.set(v);
    });
    if (chosen == nullptr || s.count() > chosen_s.count()) {
      chosen = &o;
      chosen_s = std::move(s);
    }
  }
  if (chosen == nullptr) {
    res.failure = "no sampled tuple of class " + std::to_string(best) + " within the size bound " + fmt(out.cn_y_bound);
    return res;
  }
  if (chosen_s.none()) {
    res.failure = "selected tuple gives an empty S";
    return res;
  }
  out.y = chosen->y;
  out.cn_y_size = chosen->cn.count();
  out.lowers = VertexSet{Side::Lower, std::move(chosen_s)};
  out.measured = subgraph_density(deg, base_size, out.lowers.bits);
  out.size_ok = static_cast<double>(out.lowers.count()) >= out.size_floor;
  out.density_ok = rational_pow(out.measured.exact, r) >= out.threshold;
  res.result = std::move(out);
  return res;
}

const char* certificate_kind(const TrichotomyCertificate& c) {
  switch (c.index()) {
    case 0: return "non-condensed";
    case 1: return "dense-subgraph";
    default: return "block-structured";
  }
}

namespace {

// Shared estimate for re-checking: the stored seed makes it reproducible.
CondensationEstimate recheck_estimate(const BipartiteGraph& gl, const NonCondensedCertificate& c) {
  return estimate_condensation(gl, c.pair.v1, c.pair.v2, c.r, c.M, c.estimate.samples, Rng(c.check_seed, 7));
}

void recheck(const BipartiteGraph& g, const NonCondensedCertificate& c, const ParameterSchedule& s,
             RecheckResult& out) {
  if (c.removed_lowers.bits.size() != g.lower_count() || c.pair.v1 >= g.lower_count() ||
      c.pair.v2 >= g.lower_count()) {
    out.problems.push_back("certificate does not match the graph");
    return;
  }
  const BipartiteGraph gl = remove_edges_at_lowers(g, c.removed_lowers);
  const Rational alpha1 = (Rational(1) - rational_from_double(s.mu)) * rational_from_double(s.alpha);
  if (density(gl).exact < alpha1) out.problems.push_back("density of G^(l) below (1 - mu) alpha");
  const VertexId pair[2] = {c.pair.v1, c.pair.v2};
  const std::uint64_t cn = common_neighborhood(gl, Side::Lower, pair).count();
  const Rational floor =
      (Rational(1) - rational_from_double(s.mu) / rational_u64(c.r)) * alpha1 * alpha1 * rational_u64(g.upper_count());
  if (rational_u64(cn) < floor) out.problems.push_back("|CN(v1, v2)| below the standard-pair size condition");
  if (cn == 0) return;
  const CondensationEstimate e = recheck_estimate(gl, c);
  if (!decisively_non_condensed(e, c.p))
    out.problems.push_back("re-estimate p_hat " + fmt(e.p_hat) + " + radius " + fmt(e.wilson_radius) +
                           " is not below p " + fmt(c.p));
}

void recheck(const BipartiteGraph& g, const DenseSubgraphCertificate& c, const ParameterSchedule&,
             RecheckResult& out) {
  if (c.removed_lowers.bits.size() != g.lower_count() || c.uppers.bits.size() != g.upper_count() ||
      c.lowers.bits.size() != g.lower_count() || c.v1 >= g.lower_count() || c.v2 >= g.lower_count()) {
    out.problems.push_back("certificate does not match the graph");
    return;
  }
  const BipartiteGraph gl = remove_edges_at_lowers(g, c.removed_lowers);
  const VertexId pair[2] = {c.v1, c.v2};
  if (!(common_neighborhood(gl, Side::Lower, pair).bits == c.uppers.bits))
    out.problems.push_back("upper set is not CN(v1, v2) in G^(l)");
  if (c.uppers.count() == 0 || c.lowers.count() == 0) {
    out.problems.push_back("empty side");
    return;
  }
  const Rational h = rational_from_double(c.h);
  if (rational_u64(2 * c.lowers.count()) < h) out.problems.push_back("fewer than h / 2 lowers");
  const auto deg = degrees_into(gl, c.uppers.bits);
  const Density d = subgraph_density(deg, c.uppers.count(), c.lowers.bits);
  if (d.exact != c.measured.exact) out.problems.push_back("recorded density differs from the recomputed one");
  if (rational_pow(d.exact, c.r) < h / rational_u64(2 * std::uint64_t{g.lower_count()}))
    out.problems.push_back("density " + fmt(d.value) + " below the claimed bound " + fmt(c.claimed_bound));
}

void recheck(const BipartiteGraph& g, const BlockCertificate& c, const ParameterSchedule& s, RecheckResult& out) {
  if (c.graph.upper_count() != g.upper_count() || c.lower_ids.size() != c.graph.lower_count()) {
    out.problems.push_back("certificate does not match the graph");
    return;
  }
  std::vector<VertexId> up(g.upper_count());
  for (VertexId u = 0; u < up.size(); ++u) up[u] = u;
  BitVec seen(g.lower_count());
  for (VertexId v : c.lower_ids) {
    if (v >= g.lower_count() || seen.test(v)) {
      out.problems.push_back("lower map is not injective into V^down");
      return;
    }
    seen.set(v);
  }
  if (!is_subgraph_of(c.graph, g, up, c.lower_ids)) out.problems.push_back("block graph is not a subgraph of g");
  const BlockValidation v = validate_block_structure(c.graph, c.blocks);
  for (const auto& bad : v.violations)
    out.problems.push_back("block " + std::to_string(bad.block) + " condition " + std::to_string(bad.bullet) + ": " +
                           bad.detail);
  if (c.blocks.g_size != s.g_size || c.blocks.k != s.k || c.blocks.delta != s.block_delta ||
      c.blocks.gamma != s.block_gamma)
    out.problems.push_back("block parameters differ from the schedule's (delta, gamma, k, g)");
}

}  // namespace

RecheckResult recheck_certificate(const BipartiteGraph& g, const TrichotomyCertificate& cert,
                                  const ParameterSchedule& schedule) {
  RecheckResult out;
  std::visit([&](const auto& c) { recheck(g, c, schedule, out); }, cert);
  return out;
}

TrichotomyReport trichotomy_drive(const BipartiteGraph& g, const ParameterSchedule& s, const TrichotomyBudgets& b,
                                  const Rng& rng) {
  const Rational alpha = rational_from_double(s.alpha);
  if (g.upper_count() == 0 || g.lower_count() == 0 || density(g).exact < alpha)
    throw InputError("trichotomy_drive: density(g) is below alpha");
  const double alpha1 = (1.0 - s.mu) * s.alpha;
  if (alpha1 * alpha1 * g.upper_count() < double(s.r) * s.r)
    throw InputError("trichotomy_drive: ((1 - mu) alpha)^2 |V^up| < r^2");
  if (s.g_size == 0 || s.g_size > g.lower_count()) throw InputError("trichotomy_drive: block size out of range");

  TrichotomyReport rep;
  if (s.alpha0 > s.alpha / 2.0) rep.notes.push_back("alpha0 > alpha / 2");
  if (s.mu > s.alpha0 / 2.0) rep.notes.push_back("mu > alpha0 / 2");
  auto fail = [&](std::string stage, std::uint32_t l) {
    rep.failure_stage = std::move(stage);
    rep.failure_iteration = l;
    return rep;
  };

  const Rational exit_level = rational_from_double(s.mu) * alpha * rational_u64(g.lower_count()) /
                              rational_u64(s.g_size);
  const Rational h_exact = rational_from_double(s.h);
  BipartiteGraph gl = g;
  VertexSet removed = VertexSet::none(Side::Lower, g.lower_count());
  std::vector<VertexSet> ups;
  std::vector<std::vector<VertexId>> downs;
  std::vector<std::pair<VertexId, VertexId>> pairs;

  StandardPairOptions pair_opts;
  pair_opts.alpha0 = s.alpha0;
  pair_opts.mu = s.mu;
  pair_opts.r = s.r;
  pair_opts.attempts = b.pair_attempts;
  pair_opts.alpha = alpha1;
  pair_opts.C_standard = s.C_standard;
  pair_opts.tuple_samples = b.tuple_samples;

  for (std::uint32_t l = 1;; ++l) {
    if (l > b.max_iterations) return fail("iteration budget", l);
    const Rng level = rng.stream(l);
    IterationRecord rec;
    rec.iteration = l;
    const Density d = density(gl);
    const Rational floor = alpha - rational_u64(std::uint64_t{l - 1} * s.g_size, g.lower_count());
    rec.density = d.value;
    rec.density_floor = floor.get_d();
    if (d.exact < floor) {
      rep.iterations.push_back(rec);
      return fail("density floor", l);
    }

    const StandardPairResult pr = find_standard_pair(gl, pair_opts, level.stream(0));
    if (!pr.certificate) {
      rep.iterations.push_back(rec);
      rep.notes.push_back("standard pair: " + pr.failure);
      return fail("standard pair", l);
    }
    const StandardPairCertificate& cert = *pr.certificate;
    rec.v1 = cert.v1;
    rec.v2 = cert.v2;
    rec.cn_size = cert.cn_size;

    CondensationEstimate est;
    bool condensed = false;
    for (std::uint64_t samples = b.condensation_samples, round = 0;; samples *= 2, ++round) {
      est = estimate_condensation(gl, cert.v1, cert.v2, s.r, s.M, samples, level.stream(1).stream(round));
      if (decisively_non_condensed(est, s.p)) break;
      if (decisively_condensed(est, s.p)) {
        condensed = true;
        break;
      }
      if (samples * 2 > b.condensation_max_samples) {
        rec.p_hat = est.p_hat;
        rec.radius = est.wilson_radius;
        rec.samples = est.samples;
        rep.iterations.push_back(rec);
        return fail("condensation ambiguous", l);
      }
    }
    rec.p_hat = est.p_hat;
    rec.radius = est.wilson_radius;
    rec.samples = est.samples;

    if (!condensed) {
      rec.branch = "non-condensed";
      rep.iterations.push_back(rec);
      NonCondensedCertificate c{l, removed, cert, est, s.p, s.M, s.r, level.stream(3).next_u64()};
      TrichotomyCertificate tc = std::move(c);
      const RecheckResult rc = recheck_certificate(g, tc, s);
      if (!rc.ok()) {
        rep.notes.insert(rep.notes.end(), rc.problems.begin(), rc.problems.end());
        return fail("certificate re-check", l);
      }
      rep.certificate = std::move(tc);
      return rep;
    }

    const VertexId pair[2] = {cert.v1, cert.v2};
    const VertexSet cn = common_neighborhood(gl, Side::Lower, pair);
    const auto deg = degrees_into(gl, cn.bits);
    const Rational expectation = power_sum(deg, cn.count(), s.r);
    rec.expectation = expectation.get_d();

    if (expectation >= h_exact) {
      rec.branch = "dense-subgraph";
      rep.iterations.push_back(rec);
      const InducedSubgraph sub = induced_subgraph(gl, cn, VertexSet::all(Side::Lower, g.lower_count()));
      const auto ex = densify_from_expectation(sub.graph, s.r, s.h);
      if (!ex) return fail("expectation densify", l);
      DenseSubgraphCertificate c;
      c.iteration = l;
      c.removed_lowers = removed;
      c.v1 = cert.v1;
      c.v2 = cert.v2;
      c.uppers = cn;
      c.lowers = VertexSet::none(Side::Lower, g.lower_count());
      ex->lowers.bits.for_each_set([&](VertexId v) { c.lowers.bits.set(sub.lower_ids[v]); });
      c.measured = subgraph_density(deg, cn.count(), c.lowers.bits);
      c.claimed_bound = std::pow(s.h / (2.0 * g.lower_count()), 1.0 / s.r);
      c.h = s.h;
      c.r = s.r;
      c.upper_floor_stated = s.alpha * s.alpha / 2.0 * g.upper_count();
      c.upper_floor_built = (1.0 - s.mu) * alpha1 * alpha1 * g.upper_count();
      TrichotomyCertificate tc = std::move(c);
      const RecheckResult rc = recheck_certificate(g, tc, s);
      if (!rc.ok()) {
        rep.notes.insert(rep.notes.end(), rc.problems.begin(), rc.problems.end());
        return fail("certificate re-check", l);
      }
      rep.certificate = std::move(tc);
      return rep;
    }

    CondensationDensifyOptions dopt;
    dopt.outer_samples = b.outer_samples;
    dopt.inner_samples = b.inner_samples;
    dopt.estimate = est;
    const CondensationDensifyResult dr =
        densify_from_condensation(gl, cert.v1, cert.v2, s.r, s.M, s.p, s.h, level.stream(2), dopt);
    if (!dr.result) {
      rec.branch = "condensation densify";
      rep.iterations.push_back(rec);
      rep.notes.push_back("condensation densify: " + dr.failure);
      return fail("condensation densify", l);
    }

    // Fix the block size: keep the highest q_v, pad with the best remaining non-isolated lowers.
    auto by_q = [&](VertexId a, VertexId b2) { return deg[a] != deg[b2] ? deg[a] > deg[b2] : a < b2; };
    std::vector<VertexId> block = dr.result->lowers.ids();
    rec.raw_block_size = block.size();
    std::sort(block.begin(), block.end(), by_q);
    if (block.size() > s.g_size) {
      block.resize(s.g_size);
    } else if (block.size() < s.g_size) {
      std::vector<VertexId> extra;
      for (VertexId v = 0; v < g.lower_count(); ++v)
        if (deg[v] > 0 && !dr.result->lowers.contains(v)) extra.push_back(v);
      std::sort(extra.begin(), extra.end(), by_q);
      if (block.size() + extra.size() < s.g_size) {
        rec.branch = "block padding";
        rep.iterations.push_back(rec);
        return fail("block padding", l);
      }
      extra.resize(s.g_size - block.size());
      block.insert(block.end(), extra.begin(), extra.end());
    }
    std::sort(block.begin(), block.end());
    const VertexSet block_set = VertexSet::of(Side::Lower, g.lower_count(), block);
    if (block_set.bits.and_count(removed.bits) != 0) {
      rep.iterations.push_back(rec);
      return fail("block overlap", l);
    }
    rec.branch = "block";
    rep.iterations.push_back(rec);
    ups.push_back(cn);
    downs.push_back(block);
    pairs.emplace_back(cert.v1, cert.v2);

    if (rational_u64(l) >= exit_level) break;
    gl = remove_edges_at_lowers(gl, block_set);
    removed.bits |= block_set.bits;
  }

  BlockCertificate c;
  c.pairs = pairs;
  const auto k = static_cast<std::uint32_t>(downs.size());
  GraphBuilder gb(g.upper_count(), k * s.g_size);
  c.blocks.delta = s.block_delta;
  c.blocks.gamma = s.block_gamma;
  c.blocks.k = k;
  c.blocks.g_size = s.g_size;
  for (std::uint32_t l = 0; l < k; ++l) {
    VertexSet lo = VertexSet::none(Side::Lower, std::size_t{k} * s.g_size);
    for (std::uint32_t j = 0; j < s.g_size; ++j) {
      const VertexId local = l * s.g_size + j;
      const VertexId v = downs[l][j];
      lo.bits.set(local);
      c.lower_ids.push_back(v);
      BitVec nb = g.column(v);
      nb &= ups[l].bits;
      nb.for_each_set([&](VertexId u) { gb.add_edge(u, local); });
    }
    c.blocks.lower_blocks.push_back(std::move(lo));
    c.blocks.upper_sets.push_back(ups[l]);
  }
  c.graph = std::move(gb).build();
  TrichotomyCertificate tc = std::move(c);
  const RecheckResult rc = recheck_certificate(g, tc, s);
  if (!rc.ok()) {
    rep.notes.insert(rep.notes.end(), rc.problems.begin(), rc.problems.end());
    return fail("certificate re-check", k);
  }
  rep.certificate = std::move(tc);
  return rep;
}

namespace {

CubeEmbedding map_back(const CubeEmbedding& e, std::span<const VertexId> upper_ids,
                       std::span<const VertexId> lower_ids) {
  CubeEmbedding out = e;
  for (auto& hv : out.image) hv.id = hv.side == Side::Upper ? upper_ids[hv.id] : lower_ids[hv.id];
  return out;
}

}  // namespace

AutoEmbedReport embed_auto(const BipartiteGraph& g, unsigned n, const ParameterSchedule& s,
                           const TrichotomyBudgets& budgets, std::uint64_t seed, const AutoEmbedOptions& opt) {
  if (n < 1 || n > kMaxCubeDim) throw InputError("embed_auto: n out of range");
  AutoEmbedReport rep;
  const Rng root(seed);
  try {
    rep.trichotomy = trichotomy_drive(g, s, budgets, root.stream(0));
  } catch (const InputError& e) {
    rep.notes.push_back(std::string("trichotomy precondition: ") + e.what());
  }

  if (rep.trichotomy.certificate) {
    const TrichotomyCertificate& cert = *rep.trichotomy.certificate;
    rep.branch = certificate_kind(cert);
    const std::uint64_t embed_seed = root.stream(1).next_u64();
    try {
      if (const auto* a = std::get_if<NonCondensedCertificate>(&cert)) {
        const BipartiteGraph gl = remove_edges_at_lowers(g, a->removed_lowers);
        const BipartiteGraph h = cube_as_bipartite(n);
        HEmbedReport hr = embed_regular_noncondensed(gl, a->pair, h, s.M, s.p, Rng(embed_seed));
        if (hr.embedding) rep.embedding = cube_embedding_from_pattern(n, *hr.embedding);
        else rep.embedder_stage = hr.failure_stage;
      } else if (const auto* bsub = std::get_if<DenseSubgraphCertificate>(&cert)) {
        const BipartiteGraph gl = remove_edges_at_lowers(g, bsub->removed_lowers);
        const InducedSubgraph sub = induced_subgraph(gl, bsub->uppers, bsub->lowers);
        DrcOptions dopt;
        dopt.trials = opt.embedder_trials;
        dopt.seed = embed_seed;
        EmbedReport er = drc_embed_cube(sub.graph, n, dopt);
        if (er.embedding) rep.embedding = map_back(*er.embedding, sub.upper_ids, sub.lower_ids);
        else rep.embedder_stage = er.failure_stage;
      } else {
        const auto& c = std::get<BlockCertificate>(cert);
        BlockEmbedOptions bopt;
        bopt.trials = opt.embedder_trials;
        bopt.seed = embed_seed;
        BlockEmbedReport br = block_embed_cube(c.graph, c.blocks, n, s.u, s.w, bopt);
        if (br.embedding) {
          std::vector<VertexId> up(g.upper_count());
          for (VertexId u = 0; u < up.size(); ++u) up[u] = u;
          rep.embedding = map_back(*br.embedding, up, c.lower_ids);
        } else {
          rep.embedder_stage = br.failure_stage;
        }
      }
    } catch (const InputError& e) {
      rep.embedder_stage = std::string("precondition: ") + e.what();
    }
    if (rep.embedding && !verify_embedding(g, *rep.embedding).ok()) {
      rep.notes.push_back("dispatched embedder output failed verification");
      rep.embedding.reset();
      rep.embedder_stage = "verify failed";
    }
  }

  if (!rep.embedding && n <= opt.brute_force_max_n) {
    rep.fallback_used = true;
    const BruteCubeResult br = brute_force_embed_cube(g, n, opt.brute);
    rep.fallback_status = br.status;
    if (br.embedding && verify_embedding(g, *br.embedding).ok()) rep.embedding = br.embedding;
  }
  return rep;
}

RamseyReduction ramsey_reduce(const EdgeColoring& col) {
  const std::uint32_t n = col.n;
  if (n == 0 || n % 2 != 0) throw InputError("ramsey_reduce: N must be even and positive");
  if (col.color.size() != std::size_t{n} * n) throw InputError("ramsey_reduce: colouring has the wrong size");
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j)
      if (col.at(i, j) > 1 || col.at(i, j) != col.at(j, i))
        throw InputError("ramsey_reduce: colouring is not a symmetric 2-colouring");
  const std::uint32_t half = n / 2;
  RamseyReduction out;
  for (std::uint32_t i = 0; i < half; ++i)
    for (std::uint32_t j = half; j < n; ++j) ++out.cut_edges[col.at(i, j)];
  out.color = out.cut_edges[1] > out.cut_edges[0] ? 1 : 0;
  GraphBuilder b(half, half);
  for (std::uint32_t i = 0; i < half; ++i)
    for (std::uint32_t j = half; j < n; ++j)
      if (col.at(i, j) == out.color) b.add_edge(i, j - half);
  out.graph = std::move(b).build();
  return out;
}

}  // namespace hcembed
