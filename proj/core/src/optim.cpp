#include "polyent/optim.hpp"

#include "polyent/entropy.hpp"
#include "polyent/rng.hpp"
#include "polyent/states.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>

namespace polyent {

namespace {

constexpr double kMemberFloor = 1e-14;
constexpr double kInitialStep = 0.5;
constexpr double kMaxExtrapolation = 4.0;
constexpr int kMaxExtrapolationPowers = 6;

/// p * S(G / p) from the spectrum of an unnormalized Gram matrix; `gram`
/// is overwritten.
double weighted_entropy(CMatrix& gram, RVector& ev) {
  eigvalsh_inplace(gram, ev);
  double p = 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double l = ev(i);
    if (l <= 0.0) continue;
    p += l;
    acc -= l * std::log2(l);
  }
  if (p < kMemberFloor) return 0.0;
  return acc + p * std::log2(p);
}

// Members are evaluated from the combined row w (length K, the measured
// dimension) that weights K operator slices. Models keep scratch buffers and
// are used from one thread at a time.
class MemberModel {
 public:
  virtual ~MemberModel() = default;
  virtual double contribution(const CVector& w) const = 0;
};

// Member operator F = sum_b w_b S_b on target (x) rest, scored on the target
// reduced state F F^dagger.
class PureSliceModel final : public MemberModel {
 public:
  PureSliceModel(std::vector<CMatrix> slices, PureScore score)
      : slices_(std::move(slices)), score_(std::move(score)), f_(slices_.front().rows(), slices_.front().cols()) {}

  double contribution(const CVector& w) const override {
    const Eigen::Index dt = f_.rows();
    const Eigen::Index dr = f_.cols();
    f_.setZero();
    for (std::size_t b = 0; b < slices_.size(); ++b) {
      if (w(b) != cplx(0.0)) f_.noalias() += w(b) * slices_[b];
    }
    const double p = f_.squaredNorm();
    if (p < kMemberFloor) return 0.0;
    if (score_.kind == PureScore::Kind::custom) return p * score_.custom(f_ * f_.adjoint() / p);
    if (dt <= dr) {
      gram_.noalias() = f_ * f_.adjoint();
    } else {
      gram_.noalias() = f_.adjoint() * f_;
    }
    if (score_.kind == PureScore::Kind::concurrence) {
      return std::sqrt(std::max(0.0, 2.0 * (p * p - gram_.squaredNorm())));
    }
    return weighted_entropy(gram_, ev_);
  }

 private:
  std::vector<CMatrix> slices_;
  PureScore score_;
  mutable CMatrix f_;
  mutable CMatrix gram_;
  mutable RVector ev_;
};

// p rho_A^x = sum_{b b'} w_b conj(w_b') R_{b b'} with R_{b b'} = <b| rho |b'>
// blocks on A.
class MixedBlockModel final : public MemberModel {
 public:
  MixedBlockModel(const CMatrix& rho_ab, int dim_a, int dim_b) : da_(dim_a), db_(dim_b), acc_(dim_a, dim_a) {
    blocks_.resize(static_cast<std::size_t>(db_) * db_);
    for (int b = 0; b < db_; ++b)
      for (int bp = 0; bp < db_; ++bp) {
        CMatrix blk(da_, da_);
        for (int r = 0; r < da_; ++r)
          for (int rp = 0; rp < da_; ++rp) blk(r, rp) = rho_ab(r * db_ + b, rp * db_ + bp);
        blocks_[b * db_ + bp] = std::move(blk);
      }
  }

  double contribution(const CVector& w) const override {
    acc_.setZero();
    for (int b = 0; b < db_; ++b) {
      if (w(b) == cplx(0.0)) continue;
      // Diagonal block plus both triangles from one pass over b' > b.
      acc_.noalias() += std::norm(w(b)) * blocks_[b * db_ + b];
      for (int bp = b + 1; bp < db_; ++bp) {
        if (w(bp) == cplx(0.0)) continue;
        const cplx c = w(b) * std::conj(w(bp));
        acc_.noalias() += c * blocks_[b * db_ + bp];
        acc_.noalias() += std::conj(c) * blocks_[bp * db_ + b];
      }
    }
    if (acc_.trace().real() < kMemberFloor) return 0.0;
    return weighted_entropy(acc_, ev_);
  }

 private:
  int da_;
  int db_;
  std::vector<CMatrix> blocks_;
  mutable CMatrix acc_;
  mutable RVector ev_;
};

using Candidate = std::vector<CMatrix>;

struct NamedCandidate {
  std::string origin;
  Candidate isometries;
};

CMatrix pad_rows(const CMatrix& w, int n) {
  if (w.rows() > n) throw DimensionError("candidate has more outcomes than the search allows");
  CMatrix out = CMatrix::Zero(n, w.cols());
  out.topRows(w.rows()) = w;
  return out;
}

struct SearchOutcome {
  Candidate isometries;
  double sum = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Derivative-free search over isometries by Givens rotations between row
// pairs of one factor; every move keeps W^dagger W = I exactly.
class Engine {
 public:
  Engine(const MemberModel& model, std::vector<int> factor_dims, bool maximize_sum, const OptimConfig& config)
      : model_(model), dims_(std::move(factor_dims)), maximize_(maximize_sum), config_(config) {}

  double total(const Candidate& w) const {
    const int n = static_cast<int>(w.front().rows());
    double s = 0.0;
    for (int m = 0; m < member_count(n); ++m) s += model_.contribution(combined(w, m, n));
    return s;
  }

  SearchOutcome search(Candidate w, CounterRng& rng) const {
    const int n = static_cast<int>(w.front().rows());
    const int members = member_count(n);
    std::vector<double> cache(members);
    for (int m = 0; m < members; ++m) cache[m] = model_.contribution(combined(w, m, n));

    SearchOutcome out;
    double step = kInitialStep;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

    std::vector<int> touched;
    std::vector<double> fresh;
    std::vector<double> best_fresh;
    std::vector<double> trial_cache(members);
    Candidate net(w.size());
    for (int it = 0; it < config_.max_iterations; ++it) {
      ++out.iterations;
      double sweep_gain = 0.0;
      double largest_move = 0.0;
      for (auto& u : net) u = CMatrix::Identity(n, n);
      for (std::size_t f = 0; f < w.size(); ++f) {
        shuffle(pairs, rng);
        for (const auto& [i, j] : pairs) {
          if (w[f].row(i).squaredNorm() == 0.0 && w[f].row(j).squaredNorm() == 0.0) continue;
          touched_members(f, i, j, n, touched);
          const double phi = 2.0 * std::numbers::pi * rng.uniform();
          sweep_gain += line_step(w, net, f, i, j, step, phi, touched, cache, fresh, best_fresh, largest_move);
        }
      }
      if (sweep_gain > config_.value_tolerance) sweep_gain += extrapolate(w, net, cache, trial_cache);
      // Halve on a sweep without improvement, and also when every accepted
      // move was far shorter than the probe distance.
      if (sweep_gain <= config_.value_tolerance || largest_move < 0.25 * step) {
        step *= 0.5;
        if (step < config_.step_tolerance) {
          out.converged = true;
          break;
        }
      }
    }
    out.sum = total(w);
    out.isometries = std::move(w);
    return out;
  }

  bool better(double a, double b) const { return maximize_ ? a > b : a < b; }

 private:
  int member_count(int n) const {
    int m = 1;
    for (std::size_t f = 0; f < dims_.size(); ++f) m *= n;
    return m;
  }

  CVector combined(const Candidate& w, int member, int n) const {
    if (w.size() == 1) return w[0].row(member).transpose();
    const int x = member / n;
    const int y = member % n;
    const int k2 = dims_[1];
    CVector out(dims_[0] * k2);
    for (int b1 = 0; b1 < dims_[0]; ++b1)
      for (int b2 = 0; b2 < k2; ++b2) out(b1 * k2 + b2) = w[0](x, b1) * w[1](y, b2);
    return out;
  }

  void touched_members(std::size_t f, int i, int j, int n, std::vector<int>& out) const {
    out.clear();
    if (dims_.size() == 1) {
      out = {i, j};
      return;
    }
    for (int other = 0; other < n; ++other) {
      if (f == 0) {
        out.push_back(i * n + other);
        out.push_back(j * n + other);
      } else {
        out.push_back(other * n + i);
        out.push_back(other * n + j);
      }
    }
  }

  static void rotate(Candidate& w, std::size_t f, int i, int j, double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cplx e = std::polar(1.0, phi);
    const Eigen::RowVectorXcd ri = w[f].row(i);
    const Eigen::RowVectorXcd rj = w[f].row(j);
    w[f].row(i) = c * ri - s * e * rj;
    w[f].row(j) = s * std::conj(e) * ri + c * rj;
  }

  // Objective gain of rotating rows (i, j) by theta; w is left unchanged and
  // the touched members' new contributions are written to `fresh`.
  double probe(Candidate& w, std::size_t f, int i, int j, double theta, double phi, int n,
               const std::vector<int>& touched, const std::vector<double>& cache, std::vector<double>& fresh) const {
    const Eigen::RowVectorXcd ri = w[f].row(i);
    const Eigen::RowVectorXcd rj = w[f].row(j);
    rotate(w, f, i, j, theta, phi);
    double delta = 0.0;
    fresh.resize(touched.size());
    for (std::size_t t = 0; t < touched.size(); ++t) {
      fresh[t] = model_.contribution(combined(w, touched[t], n));
      delta += fresh[t] - cache[touched[t]];
    }
    w[f].row(i) = ri;
    w[f].row(j) = rj;
    return maximize_ ? delta : -delta;
  }

  // Probes +-h along one direction, then the vertex of the parabola through
  // the three values when it curves the right way; applies the best move.
  // Pattern move: the sweep mapped W to U W; try U W, U^2 U W, ... while the
  // objective keeps improving.
  double extrapolate(Candidate& w, Candidate& net, std::vector<double>& cache, std::vector<double>& trial_cache) const {
    const int n = static_cast<int>(w.front().rows());
    double gained = 0.0;
    double current = std::accumulate(cache.begin(), cache.end(), 0.0);
    for (int k = 0; k < kMaxExtrapolationPowers; ++k) {
      Candidate trial(w.size());
      for (std::size_t f = 0; f < w.size(); ++f) trial[f] = net[f] * w[f];
      double value = 0.0;
      for (int m = 0; m < member_count(n); ++m) {
        trial_cache[m] = model_.contribution(combined(trial, m, n));
        value += trial_cache[m];
      }
      const double gain = maximize_ ? value - current : current - value;
      if (!(gain > 0.0)) break;
      gained += gain;
      current = value;
      w = std::move(trial);
      cache.swap(trial_cache);
      for (auto& u : net) u = u * u;
    }
    return gained;
  }

  double line_step(Candidate& w, Candidate& net, std::size_t f, int i, int j, double h, double phi, const std::vector<int>& touched,
                   std::vector<double>& cache, std::vector<double>& fresh, std::vector<double>& best_fresh,
                   double& largest_move) const {
    const int n = static_cast<int>(w.front().rows());
    double best = 0.0;
    double best_theta = 0.0;
    const double g_plus = probe(w, f, i, j, h, phi, n, touched, cache, fresh);
    if (g_plus > best) {
      best = g_plus;
      best_theta = h;
      best_fresh = fresh;
    }
    const double g_minus = probe(w, f, i, j, -h, phi, n, touched, cache, fresh);
    if (g_minus > best) {
      best = g_minus;
      best_theta = -h;
      best_fresh = fresh;
    }
    const double curv = g_plus + g_minus;
    if (curv < 0.0) {
      double t = 0.5 * h * (g_plus - g_minus) / -curv;
      t = std::clamp(t, -kMaxExtrapolation * h, kMaxExtrapolation * h);
      if (std::abs(t - h) > 1e-3 * h && std::abs(t + h) > 1e-3 * h && t != 0.0) {
        const double g_vertex = probe(w, f, i, j, t, phi, n, touched, cache, fresh);
        if (g_vertex > best) {
          best = g_vertex;
          best_theta = t;
          best_fresh = fresh;
        }
      }
    }
    if (best <= 0.0) return 0.0;
    rotate(w, f, i, j, best_theta, phi);
    rotate(net, f, i, j, best_theta, phi);
    largest_move = std::max(largest_move, std::abs(best_theta));
    for (std::size_t t = 0; t < touched.size(); ++t) cache[touched[t]] = best_fresh[t];
    return best;
  }

  static void shuffle(std::vector<std::pair<int, int>>& v, CounterRng& rng) {
    for (std::size_t k = v.size(); k > 1; --k) {
      const std::size_t pick = static_cast<std::size_t>(rng.below(k));
      std::swap(v[k - 1], v[pick]);
    }
  }

  const MemberModel& model_;
  std::vector<int> dims_;
  bool maximize_;
  const OptimConfig& config_;
};

std::uint64_t optimizer_stream(std::uint64_t stage, std::uint64_t purpose, std::uint64_t index) {
  return stream_id(StreamFamily::optimizer, (stage << 40) | (purpose << 32) | index);
}

// Runs the pool at a fixed outcome count, then escalates.
// `to_value` maps the member sum to the reported objective.
OptimResult run_search(const MemberModel& model, const std::vector<int>& factor_dims, bool maximize_sum,
                       std::vector<NamedCandidate> pool, int base_outcomes, const OptimConfig& config,
                       const std::function<double(double)>& to_value) {
  if (config.restarts < 0 || config.max_iterations < 1 || !(config.step_tolerance > 0.0) ||
      !(config.value_tolerance > 0.0)) {
    throw DomainError("optimizer config values must be positive");
  }
  int n = base_outcomes;
  for (const auto& cand : pool)
    for (const auto& w : cand.isometries) n = std::max(n, static_cast<int>(w.rows()));
  for (const auto& seed : config.seeds) {
    if (seed.size() != factor_dims.size()) throw DimensionError("seed candidate has the wrong number of factors");
    for (std::size_t f = 0; f < seed.size(); ++f) {
      if (seed[f].cols() != factor_dims[f]) throw DimensionError("seed candidate has the wrong measured dimension");
      const CMatrix gram = seed[f].adjoint() * seed[f];
      if (max_abs_diff(gram, CMatrix::Identity(factor_dims[f], factor_dims[f])) > 1e-8) {
        throw DomainError("seed candidate is not an isometry");
      }
      n = std::max(n, static_cast<int>(seed[f].rows()));
    }
  }
  for (std::size_t s = 0; s < config.seeds.size(); ++s) pool.push_back({"seed:" + std::to_string(s), config.seeds[s]});

  Engine engine(model, factor_dims, maximize_sum, config);
  OptimResult result;
  bool have_best = false;
  double best_sum = 0.0;

  auto run_stage = [&](std::uint64_t stage, int outcomes, std::vector<NamedCandidate> candidates, int randoms) {
    for (int r = 0; r < randoms; ++r) {
      CounterRng start_rng(config.seed, optimizer_stream(stage, 0, static_cast<std::uint64_t>(r)));
      Candidate cand;
      for (int k : factor_dims) cand.push_back(random_isometry(outcomes, k, start_rng));
      candidates.push_back({"random:" + std::to_string(r), std::move(cand)});
    }
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      Candidate padded;
      for (const auto& w : candidates[c].isometries) padded.push_back(pad_rows(w, outcomes));
      const double initial = engine.total(padded);
      CounterRng search_rng(config.seed, optimizer_stream(stage, 1, c));
      SearchOutcome found = engine.search(std::move(padded), search_rng);
      result.trace.push_back(
          {candidates[c].origin, outcomes, to_value(initial), to_value(found.sum), found.iterations, found.converged});
      if (!have_best || engine.better(found.sum, best_sum)) {
        have_best = true;
        best_sum = found.sum;
        result.isometries = std::move(found.isometries);
        result.origin = candidates[c].origin;
        result.converged = found.converged;
        result.outcome_count = outcomes;
      }
    }
  };

  run_stage(0, n, std::move(pool), config.restarts);

  const int cap = config.outcome_cap < 0 ? n : (config.outcome_cap == 0 ? n + 1 : std::max(config.outcome_cap, n));
  std::uint64_t stage = 1;
  while (n < cap) {
    const double before = best_sum;
    Candidate warm;
    for (const auto& w : result.isometries) warm.push_back(pad_rows(w, n + 1));
    std::vector<NamedCandidate> stage_pool{{"warm:" + std::to_string(n), std::move(warm)}};
    run_stage(stage++, n + 1, std::move(stage_pool), std::max(1, config.restarts / 4));
    const double gain = maximize_sum ? best_sum - before : before - best_sum;
    if (gain > config.value_tolerance) {
      result.events.push_back("escalated outcomes " + std::to_string(n) + " -> " + std::to_string(n + 1) +
                              " (gain " + std::to_string(gain) + ")");
      ++n;
    } else {
      result.events.push_back("escalation to " + std::to_string(n + 1) + " outcomes gave no gain");
      break;
    }
  }
  result.value = to_value(best_sum);
  return result;
}

std::vector<int> order_target_rest_measured(int subsystems, int target, const std::vector<int>& measured) {
  std::vector<int> order{target};
  for (int s = 0; s < subsystems; ++s) {
    if (s == target || std::find(measured.begin(), measured.end(), s) != measured.end()) continue;
    order.push_back(s);
  }
  order.insert(order.end(), measured.begin(), measured.end());
  return order;
}

// Slices S_b (target x rest) of a pure state along the trailing measured
// index; the state is reordered to (target, rest..., measured...).
std::vector<CMatrix> pure_slices(const CVector& psi, const DimList& dims, int target, const std::vector<int>& measured) {
  const int n = static_cast<int>(dims.size());
  if (target < 0 || target >= n) throw DimensionError("target subsystem out of range");
  for (int m : measured) {
    if (m < 0 || m >= n || m == target) throw DimensionError("measured subsystem out of range or equal to target");
  }
  if (measured.size() == 2 && measured[0] == measured[1]) throw DimensionError("measured subsystems must differ");
  if (psi.size() != dims.total()) throw DimensionError("state length does not match dims");
  const auto order = order_target_rest_measured(n, target, measured);
  const CVector permuted = permute_subsystems(psi, dims, order);
  const int dt = dims[target];
  int k = 1;
  for (int m : measured) k *= dims[m];
  const int dr = dims.total() / (dt * k);
  std::vector<CMatrix> slices(k, CMatrix(dt, dr));
  for (int t = 0; t < dt; ++t)
    for (int r = 0; r < dr; ++r)
      for (int b = 0; b < k; ++b) slices[b](t, r) = permuted((static_cast<Eigen::Index>(t) * dr + r) * k + b);
  return slices;
}

Objective flipped(Objective o) { return o == Objective::minimize ? Objective::maximize : Objective::minimize; }

std::vector<NamedCandidate> single_factor_pool(const CMatrix& rho_measured) {
  std::vector<NamedCandidate> pool;
  for (auto& c : povm_pool(rho_measured)) pool.push_back({c.origin, {std::move(c.isometry)}});
  return pool;
}

}  // namespace

int default_outcome_count(int r) {
  if (r < 1) throw DimensionError("outcome count needs a positive rank");
  return std::max(r, std::min(r * r, 2 * r + 2));
}

std::vector<PovmCandidate> povm_pool(const CMatrix& rho_measured) {
  const int d = static_cast<int>(rho_measured.rows());
  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix e = eig_hermitian(rho_measured).vectors;
  const CMatrix ef = fourier_basis(e);
  CMatrix mixed(2 * d, d);
  mixed.topRows(d) = e.adjoint();
  mixed.bottomRows(d) = ef.adjoint();
  mixed /= std::sqrt(2.0);
  return {
      {"computational", id},
      {"fourier", fourier_basis(id).adjoint()},
      {"eigen", e.adjoint()},
      {"eigen_fourier", ef.adjoint()},
      {"thm1", mixed},
  };
}

namespace {

struct Support {
  std::vector<double> values;
  std::vector<CVector> vectors;
};

Support eigen_support(const CMatrix& rho) {
  const auto eig = eig_hermitian(rho);
  Support out;
  for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i) {
    if (eig.values(i) <= kEigenClip) break;
    out.values.push_back(eig.values(i));
    out.vectors.emplace_back(eig.vectors.col(i));
  }
  return out;
}

}  // namespace

Ensemble ensemble_from_isometry(const CMatrix& rho, const DimList& dims, const CMatrix& u) {
  const Support sup = eigen_support(rho);
  if (static_cast<Eigen::Index>(sup.values.size()) != u.cols()) {
    throw DimensionError("isometry width does not match the rank of the state");
  }
  Ensemble out;
  out.dims = dims;
  for (Eigen::Index j = 0; j < u.rows(); ++j) {
    CVector v = CVector::Zero(rho.rows());
    for (std::size_t i = 0; i < sup.values.size(); ++i) v += u(j, i) * std::sqrt(sup.values[i]) * sup.vectors[i];
    const double p = v.squaredNorm();
    if (p < kMemberFloor) continue;
    out.weights.push_back(p);
    out.members.emplace_back(v / std::sqrt(p));
  }
  return out;
}

Povm povm_from_isometry(const CMatrix& w) {
  Povm out;
  out.rank1 = true;
  for (Eigen::Index x = 0; x < w.rows(); ++x) {
    const auto row = w.row(x);
    if (row.squaredNorm() < kMemberFloor) continue;
    out.elements.emplace_back(row.adjoint() * row);
  }
  return out;
}

OptimResult optimize_decomposition(const CMatrix& rho, const DimList& dims, Objective objective, const PureScore& score,
                                   const OptimConfig& config) {
  if (dims.size() != 2) throw DimensionError("optimize_decomposition needs a bipartite state");
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) throw DimensionError("density shape mismatch");
  if (score.kind == PureScore::Kind::custom && !score.custom) throw DomainError("custom score is empty");
  require_hermitian(rho, "optimize_decomposition");
  const Support sup = eigen_support(rho);
  std::vector<CMatrix> slices;
  for (std::size_t i = 0; i < sup.values.size(); ++i) {
    CMatrix s(dims[0], dims[1]);
    for (int a = 0; a < dims[0]; ++a)
      for (int c = 0; c < dims[1]; ++c) s(a, c) = std::sqrt(sup.values[i]) * sup.vectors[i](a * dims[1] + c);
    slices.push_back(std::move(s));
  }
  if (slices.empty()) throw DomainError("optimize_decomposition: zero operator");
  const int r = static_cast<int>(slices.size());
  const int n = config.outcome_count > 0 ? config.outcome_count : default_outcome_count(r);
  if (n < r) throw DimensionError("outcome count below the rank of the state");

  const CMatrix id = CMatrix::Identity(r, r);
  const CMatrix f = fourier_basis(id);
  CMatrix mixed(2 * r, r);
  mixed.topRows(r) = id;
  mixed.bottomRows(r) = f.adjoint();
  mixed /= std::sqrt(2.0);
  std::vector<NamedCandidate> pool{{"eigen", {id}}, {"fourier", {f.adjoint()}}, {"thm1", {mixed}}};

  PureSliceModel model(std::move(slices), score);
  return run_search(model, {r}, objective == Objective::maximize, std::move(pool), n, config,
                    [](double sum) { return sum; });
}

OptimResult optimize_povm(const CVector& psi, const DimList& dims, int target, int measured, Objective objective,
                          const OptimConfig& config) {
  auto slices = pure_slices(psi, dims, target, {measured});
  const int k = dims[measured];
  const double s_target = entropy(reduced_density(psi, dims, {target}));
  const int n = config.outcome_count > 0 ? config.outcome_count : default_outcome_count(k);
  if (n < k) throw DimensionError("POVM outcome count below the measured dimension");
  PureSliceModel model(std::move(slices), PureScore::entropy());
  return run_search(model, {k}, flipped(objective) == Objective::maximize,
                    single_factor_pool(reduced_density(psi, dims, {measured})), n, config,
                    [s_target](double sum) { return s_target - sum; });
}

OptimResult optimize_product_povm(const CVector& psi, const DimList& dims, int target, std::pair<int, int> measured,
                                  Objective objective, const OptimConfig& config) {
  auto slices = pure_slices(psi, dims, target, {measured.first, measured.second});
  const int k1 = dims[measured.first];
  const int k2 = dims[measured.second];
  const double s_target = entropy(reduced_density(psi, dims, {target}));
  const int n = config.outcome_count > 0 ? config.outcome_count
                                         : std::max(default_outcome_count(k1), default_outcome_count(k2));
  if (n < std::max(k1, k2)) throw DimensionError("POVM outcome count below the measured dimension");

  const auto pool1 = povm_pool(reduced_density(psi, dims, {measured.first}));
  const auto pool2 = povm_pool(reduced_density(psi, dims, {measured.second}));
  std::vector<NamedCandidate> pool;
  for (std::size_t c = 0; c < pool1.size(); ++c) {
    pool.push_back({pool1[c].origin + "*" + pool2[c].origin, {pool1[c].isometry, pool2[c].isometry}});
  }
  PureSliceModel model(std::move(slices), PureScore::entropy());
  return run_search(model, {k1, k2}, flipped(objective) == Objective::maximize, std::move(pool), n, config,
                    [s_target](double sum) { return s_target - sum; });
}

OptimResult optimize_mixed_povm(const CMatrix& rho_ab, const DimList& dims, Objective objective,
                                const OptimConfig& config) {
  if (dims.size() != 2) throw DimensionError("optimize_mixed_povm needs a bipartite state");
  if (rho_ab.rows() != dims.total() || rho_ab.cols() != dims.total()) throw DimensionError("density shape mismatch");
  require_hermitian(rho_ab, "optimize_mixed_povm");
  const int k = dims[1];
  const double s_a = entropy(partial_trace(rho_ab, dims, {0}));
  const int n = config.outcome_count > 0 ? config.outcome_count : default_outcome_count(k);
  if (n < k) throw DimensionError("POVM outcome count below the measured dimension");
  MixedBlockModel model(rho_ab, dims[0], k);
  return run_search(model, {k}, flipped(objective) == Objective::maximize,
                    single_factor_pool(partial_trace(rho_ab, dims, {1})), n, config,
                    [s_a](double sum) { return s_a - sum; });
}

}  // namespace polyent
