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

#include "hcembed/harness.hpp"

#include <algorithm>
#include <cmath>

#include "hcembed/errors.hpp"
#include "hcembed/hypercube.hpp"
#include "hcembed/parallel.hpp"
#include "hcembed/stats.hpp"

namespace hcembed {

const char* brute_status_name(BruteStatus s) {
  switch (s) {
    case BruteStatus::Found: return "found";
    case BruteStatus::Impossible: return "impossible";
    case BruteStatus::Timeout: return "timeout";
  }
  return "?";
}

namespace {

constexpr std::int64_t kUnset = -1;

class Search {
 public:
  Search(const BipartiteGraph& g, const BipartiteGraph& h, const std::vector<std::vector<std::uint32_t>>& adj,
         const std::vector<std::uint32_t>& order, Side up_side, std::chrono::steady_clock::time_point deadline,
         std::uint64_t node_limit, std::uint64_t& nodes)
      : g_(g),
        h_(h),
        adj_(adj),
        order_(order),
        up_side_(up_side),
        deadline_(deadline),
        node_limit_(node_limit),
        nodes_(nodes),
        image_(adj.size(), kUnset),
        used_upper_(g.upper_count()),
        used_lower_(g.lower_count()) {}

  // true: found, false: exhausted. Sets timed_out() on budget stop.
  bool run() { return place(0); }
  bool timed_out() const { return timed_out_; }

  PatternEmbedding result() const {
    PatternEmbedding e;
    e.up_side = up_side_;
    for (std::uint32_t x = 0; x < h_.upper_count(); ++x) e.upper_image.push_back(static_cast<VertexId>(image_[x]));
    for (std::uint32_t x = h_.upper_count(); x < adj_.size(); ++x)
      e.lower_image.push_back(static_cast<VertexId>(image_[x]));
    return e;
  }

 private:
  Side side_of(std::uint32_t x) const { return x < h_.upper_count() ? up_side_ : opposite(up_side_); }
  BitVec& used(Side s) { return s == Side::Upper ? used_upper_ : used_lower_; }

  BitVec domain(std::uint32_t x) {
    const Side s = side_of(x);
    BitVec d = BitVec::full(g_.part_size(s));
    for (std::uint32_t nb : adj_[x])
      if (image_[nb] != kUnset) d &= g_.adjacency(opposite(s), static_cast<VertexId>(image_[nb]));
    d.subtract(used(s));
    return d;
  }

  bool place(std::size_t depth) {
    if (depth == order_.size()) return true;
    const std::uint32_t x = order_[depth];
    const Side s = side_of(x);
    const BitVec d = domain(x);
    for (std::size_t c = d.find_first(); c != BitVec::npos; c = d.find_next(c + 1)) {
      ++nodes_;
      if ((nodes_ & 1023) == 0 && std::chrono::steady_clock::now() > deadline_) timed_out_ = true;
      if (node_limit_ != 0 && nodes_ > node_limit_) timed_out_ = true;
      if (timed_out_) return false;
      image_[x] = static_cast<std::int64_t>(c);
      used(s).set(c);
      bool ok = true;
      for (std::uint32_t y : adj_[x])
        if (image_[y] == kUnset && domain(y).none()) {
          ok = false;
          break;
        }
      if (ok && place(depth + 1)) return true;
      used(s).reset(c);
      image_[x] = kUnset;
      if (timed_out_) return false;
    }
    return false;
  }

  const BipartiteGraph& g_;
  const BipartiteGraph& h_;
  const std::vector<std::vector<std::uint32_t>>& adj_;
  const std::vector<std::uint32_t>& order_;
  Side up_side_;
  std::chrono::steady_clock::time_point deadline_;
  std::uint64_t node_limit_;
  std::uint64_t& nodes_;
  std::vector<std::int64_t> image_;
  BitVec used_upper_;
  BitVec used_lower_;
  bool timed_out_ = false;
};

std::vector<std::uint32_t> placement_order(const std::vector<std::vector<std::uint32_t>>& adj) {
  const std::size_t total = adj.size();
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> placed_nbrs(total, 0);
  std::vector<bool> done(total, false);
  for (std::size_t step = 0; step < total; ++step) {
    std::uint32_t best = 0;
    bool have = false;
    for (std::uint32_t x = 0; x < total; ++x) {
      if (done[x]) continue;
      if (!have || placed_nbrs[x] > placed_nbrs[best] ||
          (placed_nbrs[x] == placed_nbrs[best] && adj[x].size() > adj[best].size())) {
        best = x;
        have = true;
      }
    }
    done[best] = true;
    order.push_back(best);
    for (std::uint32_t y : adj[best]) ++placed_nbrs[y];
  }
  return order;
}

}  // namespace

BruteResult brute_force_embed(const BipartiteGraph& g, const BipartiteGraph& pattern, const BruteOptions& opt) {
  const std::uint32_t pu = pattern.upper_count();
  const std::uint32_t total = pu + pattern.lower_count();
  if (total > opt.max_pattern_vertices)
    throw InputError("brute_force_embed: pattern has " + std::to_string(total) + " vertices, limit " +
                     std::to_string(opt.max_pattern_vertices));
  std::vector<std::vector<std::uint32_t>> adj(total);
  for (auto [u, v] : pattern.edges()) {
    adj[u].push_back(pu + v);
    adj[pu + v].push_back(u);
  }
  const auto order = placement_order(adj);
  const auto deadline = std::chrono::steady_clock::now() + opt.budget;

  BruteResult res;
  bool timed_out = false;
  for (Side up : {Side::Upper, Side::Lower}) {
    if (pu > g.part_size(up) || pattern.lower_count() > g.part_size(opposite(up))) continue;
    Search search(g, pattern, adj, order, up, deadline, opt.node_limit, res.nodes);
    if (search.run()) {
      res.status = BruteStatus::Found;
      res.embedding = search.result();
      return res;
    }
    timed_out = timed_out || search.timed_out();
    if (timed_out) break;
  }
  res.status = timed_out ? BruteStatus::Timeout : BruteStatus::Impossible;
  return res;
}

BruteCubeResult brute_force_embed_cube(const BipartiteGraph& g, unsigned n, const BruteOptions& opt) {
  if (n < 1 || n > kMaxCubeDim) throw InputError("brute_force_embed_cube: n out of range");
  const BruteResult r = brute_force_embed(g, cube_as_bipartite(n), opt);
  BruteCubeResult out;
  out.status = r.status;
  out.nodes = r.nodes;
  if (r.embedding) out.embedding = cube_embedding_from_pattern(n, *r.embedding);
  return out;
}

bool ChernoffTable::any_flag() const {
  return std::any_of(rows.begin(), rows.end(), [](const ChernoffRow& r) { return r.flagged; });
}

std::vector<double> default_chernoff_grid(double p, std::uint32_t n_vars) {
  const double pn = p * n_vars;
  return {0.1 * pn, 0.25 * pn, 0.5 * pn, 0.75 * pn, pn};
}

namespace {

constexpr double kTailSlack = 1e-9;

bool in_tail(std::uint64_t k, double pn, double t) {
  return std::abs(static_cast<double>(k) - pn) >= t - kTailSlack;
}

void check_chernoff_args(double p, std::uint32_t n_vars, std::span<const double> t_grid) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("chernoff: p must lie in (0, 1)");
  if (n_vars == 0) throw InputError("chernoff: need at least one variable");
  for (double t : t_grid)
    if (!(t > 0.0 && t <= p * n_vars + kTailSlack)) throw InputError("chernoff: every t must lie in (0, p n]");
}

ChernoffRow make_row(double p, std::uint32_t n, double t, double c, double empirical) {
  ChernoffRow row;
  row.t = t;
  row.empirical = empirical;
  row.exact_tail = binomial_two_sided_tail(n, p, t);
  row.bound = 2.0 * std::exp(-c * t * t / (p * n));
  row.flagged = empirical > row.bound;
  return row;
}

struct Histogram {
  std::vector<std::uint64_t> counts;
  Histogram& operator+=(const Histogram& o) {
    if (counts.size() < o.counts.size()) counts.resize(o.counts.size(), 0);
    for (std::size_t i = 0; i < o.counts.size(); ++i) counts[i] += o.counts[i];
    return *this;
  }
};

}  // namespace

double binomial_two_sided_tail(std::uint32_t n, double p, double t) {
  const double pn = p * n;
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double ln_n1 = std::lgamma(n + 1.0);
  double sum = 0.0;
  for (std::uint32_t k = 0; k <= n; ++k) {
    if (!in_tail(k, pn, t)) continue;
    sum += std::exp(ln_n1 - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * lp + (n - k) * lq);
  }
  return std::min(1.0, sum);
}

ChernoffTable chernoff_empirical(double p, std::uint32_t n_vars, std::span<const double> t_grid, std::uint64_t samples,
                                 const Rng& rng, double c) {
  check_chernoff_args(p, n_vars, t_grid);
  if (samples == 0) throw InputError("chernoff: samples must be positive");
  const Histogram hist = parallel_chunked_sum<Histogram>(samples, 4096, rng, [&](Rng& local, std::uint64_t count) {
    Histogram h;
    h.counts.assign(n_vars + 1, 0);
    for (std::uint64_t i = 0; i < count; ++i) {
      std::uint32_t s = 0;
      for (std::uint32_t j = 0; j < n_vars; ++j) s += local.bernoulli(p) ? 1 : 0;
      ++h.counts[s];
    }
    return h;
  });
  ChernoffTable table{p, n_vars, samples, c, {}};
  const double pn = p * n_vars;
  for (double t : t_grid) {
    std::uint64_t hits = 0;
    for (std::size_t k = 0; k < hist.counts.size(); ++k)
      if (in_tail(k, pn, t)) hits += hist.counts[k];
    table.rows.push_back(make_row(p, n_vars, t, c, static_cast<double>(hits) / static_cast<double>(samples)));
  }
  return table;
}

ChernoffTable chernoff_exhaustive(double p, std::uint32_t n_vars, std::span<const double> t_grid, double c) {
  check_chernoff_args(p, n_vars, t_grid);
  if (n_vars > 24) throw InputError("chernoff: exhaustive mode needs n <= 24");
  std::vector<double> mass(n_vars + 1, 0.0);
  for (std::uint64_t outcome = 0; outcome < (std::uint64_t{1} << n_vars); ++outcome) {
    const auto k = static_cast<std::uint32_t>(__builtin_popcountll(outcome));
    mass[k] += std::pow(p, k) * std::pow(1.0 - p, n_vars - k);
  }
  ChernoffTable table{p, n_vars, 0, c, {}};
  const double pn = p * n_vars;
  for (double t : t_grid) {
    double tail = 0.0;
    for (std::uint32_t k = 0; k <= n_vars; ++k)
      if (in_tail(k, pn, t)) tail += mass[k];
    table.rows.push_back(make_row(p, n_vars, t, c, tail));
  }
  return table;
}

BipartiteGraph gen_random_bipartite(std::uint32_t upper_count, std::uint32_t lower_count, double density, Rng& rng) {
  if (!(density >= 0.0 && density <= 1.0)) throw InputError("gen_random_bipartite: density must lie in [0, 1]");
  GraphBuilder b(upper_count, lower_count);
  for (VertexId u = 0; u < upper_count; ++u)
    for (VertexId v = 0; v < lower_count; ++v)
      if (rng.bernoulli(density)) b.add_edge(u, v);
  return std::move(b).build();
}

}  // namespace hcembed
