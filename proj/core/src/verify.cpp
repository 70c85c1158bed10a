#include "polyent/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace polyent {

namespace {

struct CheckInfo {
  CheckId id;
  const char* name;
  Classification classification;
  double tolerance;
  bool optimizer;
};

constexpr CheckInfo kChecks[] = {
    {CheckId::kw_identity, "kw_identity", Classification::exact, 1e-10, false},
    {CheckId::lemma1_equiv, "lemma1_equiv", Classification::optimizer_dependent, 2e-3, true},
    {CheckId::subadd, "subadd", Classification::conservative_by_seeding, 1e-9, true},
    {CheckId::lower_bound, "lower_bound", Classification::sanity, 1e-9, true},
    {CheckId::upper_bound, "upper_bound", Classification::conservative_by_seeding, 1e-9, true},
    {CheckId::omega_identities, "omega_identities", Classification::exact, 1e-9, false},
    {CheckId::tripartite_polygamy, "tripartite_polygamy", Classification::conservative, 1e-3, true},
    {CheckId::curly_e_property, "curly_e_property", Classification::exact, 1e-12, false},
    {CheckId::three_tangle, "three_tangle", Classification::exact, 1e-8, false},
    {CheckId::three_qubit_polygamy, "three_qubit_polygamy", Classification::conservative, 1e-8, false},
    {CheckId::rank2_bounds, "rank2_bounds", Classification::optimizer_dependent, 2e-3, true},
    {CheckId::coa_polygamy, "coa_polygamy", Classification::exact, 1e-8, false},
    {CheckId::nqubit_polygamy, "nqubit_polygamy", Classification::conservative, 1e-8, false},
    {CheckId::zero_ue_separable, "zero_ue_separable", Classification::exact, 1e-9, true},
    {CheckId::mixed_tradeoff, "mixed_tradeoff", Classification::conservative_by_seeding, 1e-9, true},
    {CheckId::cor2_tradeoff, "cor2_tradeoff", Classification::conservative_by_seeding, 1e-9, true},
};

const CheckInfo& info(CheckId id) {
  for (const auto& c : kChecks)
    if (c.id == id) return c;
  throw DomainError("unknown check");
}

constexpr double kZeroUeEpsilon = 1e-4;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string summarize(const std::string& what, const OptimResult& res) {
  std::ostringstream os;
  os << what << ": origin=" << res.origin << " outcomes=" << res.outcome_count << " value=" << fmt(res.value)
     << (res.converged ? " converged" : " not-converged");
  return os.str();
}

void note_events(CheckResult& r, const std::string& what, const OptimResult& res) {
  for (const auto& e : res.events) r.notes.push_back(what + ": " + e);
}

void record(CheckResult& r, const std::string& what, const MeasureValue& mv) {
  r.values.emplace_back(what, mv.value);
  if (mv.search) {
    r.certificates.push_back(summarize(what, *mv.search));
    note_events(r, what, *mv.search);
  }
}

void require_dims(const MultipartiteState& s, std::size_t n, const char* check) {
  if (s.subsystems() != n) {
    throw DimensionError(std::string(check) + ": needs " + std::to_string(n) + " subsystems, got dims " +
                         s.dims().to_string());
  }
}

void require_pure(const MultipartiteState& s, const char* check) {
  if (!s.is_pure()) throw DimensionError(std::string(check) + ": needs a pure state");
}

void require_qubits(const MultipartiteState& s, const char* check) {
  for (int d : s.dims())
    if (d != 2) throw DimensionError(std::string(check) + ": needs qubit subsystems, got " + s.dims().to_string());
}

CMatrix bipartite_density(const MultipartiteState& s, const char* check) {
  require_dims(s, 2, check);
  return s.density();
}

void set_inequality(CheckResult& r, double lhs, double rhs) {
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
}

void set_identity(CheckResult& r, double lhs, double rhs) {
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = -std::abs(rhs - lhs);
}

// Drops rows that carry no weight so that products of certificates stay small.
CMatrix compact_rows(const CMatrix& w) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < w.rows(); ++i)
    if (w.row(i).squaredNorm() > 1e-14) keep.push_back(i);
  CMatrix out(static_cast<Eigen::Index>(keep.size()), w.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = w.row(keep[k]);
  return out;
}

CMatrix row_kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index x = 0; x < a.rows(); ++x)
    for (Eigen::Index y = 0; y < b.rows(); ++y) {
      for (Eigen::Index i = 0; i < a.cols(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) out(x * b.rows() + y, i * b.cols() + j) = a(x, i) * b(y, j);
    }
  return out;
}

// ---------------------------------------------------------------------------

void check_kw(CheckResult& r, const MultipartiteState& state, const CheckOptions& opt) {
  require_dims(state, 3, "kw_identity");
  require_pure(state, "kw_identity");
  const DimList& dims = state.dims();
  const int da = dims[0], db = dims[1], dc = dims[2];
  const Povm povm = opt.povm ? *opt.povm : Povm::from_basis(CMatrix::Identity(db, db));
  if (povm.dim() != db) throw DimensionError("kw_identity: POVM dimension does not match subsystem B");
  povm.validate();
  if (!povm.rank1) throw DomainError("kw_identity: needs a rank-1 POVM");

  const double s_a = entropy(state.reduced({0}));
  // Route 1: measure B of the mixed marginal rho_AB.
  const CMatrix rho_ab = state.reduced({0, 1});
  const MultipartiteState ab = MultipartiteState::mixed(rho_ab, dims.select(std::vector<int>{0, 1}));
  const double avg = average_conditional_entropy(ab, povm, 1, 0);
  const double chi = s_a - avg;

  // Route 2: the decomposition of rho_AC induced on the purification.
  const CMatrix w = isometry_from_povm(povm);
  const CVector& psi = state.vector();
  const CMatrix rho_ac = state.reduced({0, 2});
  CMatrix realized = CMatrix::Zero(da * dc, da * dc);
  double ent = 0.0;
  for (Eigen::Index x = 0; x < w.rows(); ++x) {
    CVector phi = CVector::Zero(da * dc);
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < db; ++b)
        for (int c = 0; c < dc; ++c) phi(a * dc + c) += w(x, b) * psi((a * db + b) * dc + c);
    const double p = phi.squaredNorm();
    realized += phi * phi.adjoint();
    if (p < kOutcomeFloor) continue;
    ent += p * entropy(reduced_density(phi / std::sqrt(p), DimList{da, dc}, {0}));
  }
  const double recon = max_abs_diff(realized, rho_ac);
  r.values = {{"S_A", s_a}, {"chi", chi}, {"avg_entanglement", ent}, {"decomposition_residual", recon}};
  set_identity(r, chi + ent, s_a);
  r.margin = std::min(r.margin, -recon);
}

void check_lemma1(CheckResult& r, const MultipartiteState& state, const CheckOptions& opt) {
  const CMatrix rho = bipartite_density(state, "lemma1_equiv");
  const MeasureValue d = ue_direct(rho, state.dims(), opt.optim);
  const MeasureValue p = ue_via_purification(rho, state.dims(), opt.optim);
  record(r, "ue_direct", d);
  record(r, "ue_via_purification", p);
  set_identity(r, d.value, p.value);
}

void check_subadd(CheckResult& r, const MultipartiteState& state, const CheckOptions& opt) {
  const CMatrix rho = bipartite_density(state, "subadd");
  const MultipartiteState partner = opt.partner ? *opt.partner : state;
  const CMatrix sigma = bipartite_density(partner, "subadd");
  const MeasureValue er = ue_direct(rho, state.dims(), opt.optim);
  const MeasureValue es = ue_direct(sigma, partner.dims(), opt.optim);
  record(r, "ue_rho", er);
  record(r, "ue_sigma", es);

  const DimList& d1 = state.dims();
  const DimList& d2 = partner.dims();
  const MultipartiteState joint4 =
      MultipartiteState::mixed(tensor(rho, sigma), DimList{d1[0], d1[1], d2[0], d2[1]});
  const MultipartiteState joint = regroup(joint4, {{0, 2}, {1, 3}});
  // The product certificate already realizes the right-hand side; the joint
  // search only refines it, so it runs with a reduced budget.
  OptimConfig cfg = opt.optim;
  cfg.restarts = 0;
  cfg.max_iterations = std::max(1, opt.optim.max_iterations / 8);
  cfg.outcome_cap = -1;
  cfg.seeds = {{row_kron(compact_rows(er.search->isometries.front()), compact_rows(es.search->isometries.front()))}};
  const MeasureValue ej = ue_direct(joint.density(), joint.dims(), cfg);
  record(r, "ue_joint", ej);
  set_inequality(r, ej.value, er.value + es.value);
}

void check_lower(CheckResult& r, const MultipartiteState& state, const CheckOptions& opt) {
  const CMatrix rho = bipartite_density(state, "lower_bound");
  const double ic = coherent_information(rho, state.dims());
  const MeasureValue e = ue_direct(rho, state.dims(), opt.optim);
  r.values.emplace_back("coherent_information", ic);
  record(r, "ue_direct", e);
  set_inequality(r, std::max(ic, 0.0), e.value);
}

void check_upper(CheckResult& r, const MultipartiteState& state, const CheckOptions& opt) {
  const CMatrix rho = bipartite_density(state, "upper_bound");
  const double mi = mutual_information(rho, state.dims());
  const MeasureValue e = ue_direct(rho, state.dims(), opt.optim);
  r.values.emplace_back("mutual_information", mi);
  record(r, "ue_direct", e);
  set_inequality(r, e.value, 0.5 * mi);
}

void check_omega(CheckResult& r, const MultipartiteState& state, const CheckOptions&) {
  const CMatrix rho = bipartite_density(state, "omega_identities");
  const DimList& dims = state.dims();
  const int db = dims[1];
  const OmegaState omega(rho, dims);
  const Thm1Bound t = thm1_povm_bound(rho, dims);
  const double log_d = std::log2(static_cast<double>(db));
  const double s_b = entropy(partial_trace(rho, dims, {1}));
  const double ic = coherent_information(rho, dims);
  const double mi = mutual_information(rho, dims);
  const CMatrix rho_a = partial_trace(rho, dims, {0});
  const CMatrix product = tensor(rho_a, CMatrix::Identity(db, db) / static_cast<double>(db));

  const double r_x = std::abs(omega.mutual_x_ab() - (log_d - s_b + t.chi0));
  const double r_y = std::abs(omega.mutual_y_ab() - t.chi1);
  const double r_xy = std::abs(omega.mutual_xy_ab() - (log_d + ic));
  const double r_marginal = max_abs_diff(omega.marginal_ab(), product);
  const double r_value = std::abs(t.value - 0.5 * (t.chi0 + t.chi1));
  const double defects = mi - (t.chi0 + t.chi1);
  const double half = 0.5 * mi - t.value;

  r.values = {{"I_X_AB", omega.mutual_x_ab()},
              {"I_Y_AB", omega.mutual_y_ab()},
              {"I_XY_AB", omega.mutual_xy_ab()},
              {"chi0", t.chi0},
              {"chi1", t.chi1},
              {"mutual_information", mi},
              {"povm_value", t.value},
              {"residual_x", r_x},
              {"residual_y", r_y},
              {"residual_xy", r_xy},
              {"residual_marginal", r_marginal},
              {"residual_value", r_value}};
  set_inequality(r, t.chi0 + t.chi1, mi);
  r.margin = std::min({-r_x, -r_y, -r_xy, -r_marginal, -r_value, defects, half});
}

void check_tripartite(CheckResult& r, const MultipartiteState& state, const CheckOptions& opt) {
  require_dims(state, 3, "tripartite_polygamy");
  require_pure(state, "tripartite_polygamy");
  const DimList& dims = state.dims();
  const double s_a = entropy(state.reduced({0}));
  const MeasureValue ab = eoa_roof(state.reduced({0, 1}), DimList{dims[0], dims[1]}, opt.optim);
  const MeasureValue ac = eoa_roof(state.reduced({0, 2}), DimList{dims[0], dims[2]}, opt.optim);
  r.values.emplace_back("S_A", s_a);
  record(r, "eoa_AB", ab);
  record(r, "eoa_AC", ac);
  set_inequality(r, s_a, ab.value + ac.value);
}

void check_curly(CheckResult& r, const CheckOptions& opt) {
  const int n = opt.grid_size;
  if (n < 2) throw DomainError("curly_e_property: grid needs at least two points per axis");
  if (opt.grid_row < 0 || opt.grid_row >= n) throw DomainError("curly_e_property: grid row out of range");
  const double x = static_cast<double>(opt.grid_row) / (n - 1);
  const double ex = curly_e(x);
  bool first = true;
  int points = 0;
  for (int col = 0; col < n; ++col) {
    const double y = static_cast<double>(col) / (n - 1);
    const double rr = x * x + y * y;
    if (rr > 1.0 + 1e-15) break;
    const double lhs = curly_e(std::sqrt(std::min(rr, 1.0)));
    const double rhs = ex + curly_e(y);
    ++points;
    if (first || rhs - lhs < r.margin) {
      set_inequality(r, lhs, rhs);
      r.values = {{"x", x}, {"y", y}};
      first = false;
    }
  }
  r.values.emplace_back("points", points);
}

void check_three_tangle(CheckResult& r, const MultipartiteState& state, const CheckOptions&) {
  require_dims(state, 3, "three_tangle");
  require_pure(state, "three_tangle");
  require_qubits(state, "three_tangle");
  const double c_a = concurrence_pure(state.vector(), state.dims(), {0});
  const double c_ab = concurrence_2q(state.reduced({0, 1}));
  const double ca_ac = coa_2q(state.reduced({0, 2}));
  r.values = {{"C_A(BC)", c_a}, {"C_AB", c_ab}, {"Ca_AC", ca_ac}};
  set_identity(r, c_a * c_a, c_ab * c_ab + ca_ac * ca_ac);
}

void check_three_qubit_polygamy(CheckResult& r, const MultipartiteState& state, const CheckOptions&) {
  require_dims(state, 3, "three_qubit_polygamy");
  require_pure(state, "three_qubit_polygamy");
  require_qubits(state, "three_qubit_polygamy");
  const double s_a = entropy(state.reduced({0}));
  const double ef = eof_2q(state.reduced({0, 1}));
  const double ea_lb = curly_e(coa_2q(state.reduced({0, 2})));
  r.values = {{"S_A", s_a}, {"eof_AB", ef}, {"curly_e_coa_AC", ea_lb}};
  set_inequality(r, s_a, ef + ea_lb);
}

void check_rank2(CheckResult& r, const MultipartiteState& state, const CheckOptions& opt) {
  const CMatrix rho = bipartite_density(state, "rank2_bounds");
  require_qubits(state, "rank2_bounds");
  const int rank = numerical_rank(rho);
  if (rank > 2) throw DomainError("rank2_bounds: needs rank <= 2, got " + std::to_string(rank));
  const MeasureValue hv = henderson_vedral(rho, state.dims(), opt.optim);
  const MeasureValue ea = eoa_roof(rho, state.dims(), opt.optim);
  const MeasureValue eu = ue_direct(rho, state.dims(), opt.optim);
  const double ef = eof_2q(rho);
  record(r, "henderson_vedral", hv);
  record(r, "eoa", ea);
  record(r, "ue_direct", eu);
  r.values.emplace_back("eof", ef);
  const double m1 = ea.value - hv.value;
  const double m2 = ef - eu.value;
  if (m1 <= m2) {
    set_inequality(r, hv.value, ea.value);
  } else {
    set_inequality(r, eu.value, ef);
  }
}

void check_coa_polygamy(CheckResult& r, const MultipartiteState& state, const CheckOptions&) {
  require_pure(state, "coa_polygamy");
  require_qubits(state, "coa_polygamy");
  if (state.subsystems() < 3) throw DimensionError("coa_polygamy: needs at least three qubits");
  const double c = concurrence_pure(state.vector(), state.dims(), {0});
  double sum = 0.0;
  for (int i = 1; i < static_cast<int>(state.subsystems()); ++i) {
    const double ca = coa_2q(state.reduced({0, i}));
    r.values.emplace_back("Ca_A1A" + std::to_string(i + 1), ca);
    sum += ca * ca;
  }
  r.values.emplace_back("C_A1(rest)", c);
  set_inequality(r, c * c, sum);
}

void check_nqubit_polygamy(CheckResult& r, const MultipartiteState& state, const CheckOptions&) {
  require_pure(state, "nqubit_polygamy");
  require_qubits(state, "nqubit_polygamy");
  if (state.subsystems() < 3) throw DimensionError("nqubit_polygamy: needs at least three qubits");
  const double s = entropy(state.reduced({0}));
  double sum = 0.0;
  for (int i = 1; i < static_cast<int>(state.subsystems()); ++i) {
    const double e = curly_e(coa_2q(state.reduced({0, i})));
    r.values.emplace_back("curly_e_coa_A1A" + std::to_string(i + 1), e);
    sum += e;
  }
  r.values.emplace_back("S_A1", s);
  set_inequality(r, s, sum);
}

void check_zero_ue(CheckResult& r, const MultipartiteState& state, const CheckOptions& opt) {
  const CMatrix rho = bipartite_density(state, "zero_ue_separable");
  require_qubits(state, "zero_ue_separable");
  const MeasureValue eu = ue_direct(rho, state.dims(), opt.optim);
  const double pt = min_eigenvalue(partial_transpose(rho, state.dims(), 1));
  record(r, "ue_direct", eu);
  r.values.emplace_back("pt_min_eigenvalue", pt);
  r.values.emplace_back("epsilon", kZeroUeEpsilon);
  // Premise false (estimate at or above epsilon) passes vacuously; otherwise
  // the partial transpose must be positive.
  r.lhs = eu.value;
  r.rhs = kZeroUeEpsilon;
  r.margin = std::max(eu.value - kZeroUeEpsilon, pt);
}

void check_mixed_tradeoff(CheckResult& r, const MultipartiteState& state, const CheckOptions& opt) {
  require_dims(state, 4, "mixed_tradeoff");
  const DimList& dims = state.dims();
  const double s_a = entropy(state.reduced({0}));
  const MeasureValue loc = localizable_ea(state, ProductRoles{0, 2, 3}, opt.optim);
  record(r, "localizable_ea", loc);
  OptimConfig cfg = opt.optim;
  cfg.seeds = {{loc.search->isometries[0]}};
  const MeasureValue eu = ue_direct(state.reduced({0, 2}), DimList{dims[0], dims[2]}, cfg);
  record(r, "ue_AC", eu);
  r.values.emplace_back("S_A", s_a);
  set_inequality(r, loc.value + eu.value, s_a);
}

void check_cor2(CheckResult& r, const MultipartiteState& state, const CheckOptions& opt) {
  require_dims(state, 4, "cor2_tradeoff");
  const DimList& dims = state.dims();
  const double s_a = entropy(state.reduced({0}));
  const MeasureValue loc = localizable_ea(state, ProductRoles{0, 2, 3}, opt.optim);
  record(r, "localizable_ea", loc);
  // E_a of A|BC equals S_A - E_u(rho_AD) on the purification through D.
  OptimConfig cfg = opt.optim;
  cfg.seeds = {{loc.search->isometries[1]}};
  MeasureValue eu_ad = ue_direct(state.reduced({0, 3}), DimList{dims[0], dims[3]}, cfg);
  record(r, "ue_AD", eu_ad);
  const double ea = s_a - eu_ad.value;
  r.values.emplace_back("S_A", s_a);
  r.values.emplace_back("eoa_A(BC)", ea);
  set_inequality(r, loc.value, ea);
}

CheckResult evaluate(CheckId id, const MultipartiteState* state, const CheckOptions& opt) {
  const CheckInfo& ci = info(id);
  CheckResult r;
  r.check = ci.name;
  r.classification = ci.classification;
  r.tolerance = opt.tolerance ? *opt.tolerance : ci.tolerance;
  r.optimizer_seed = ci.optimizer ? opt.optim.seed : 0;
  if (state) r.state = (state->is_pure() ? "pure" : "mixed") + state->dims().to_string();
  switch (id) {
    case CheckId::kw_identity: check_kw(r, *state, opt); break;
    case CheckId::lemma1_equiv: check_lemma1(r, *state, opt); break;
    case CheckId::subadd: check_subadd(r, *state, opt); break;
    case CheckId::lower_bound: check_lower(r, *state, opt); break;
    case CheckId::upper_bound: check_upper(r, *state, opt); break;
    case CheckId::omega_identities: check_omega(r, *state, opt); break;
    case CheckId::tripartite_polygamy: check_tripartite(r, *state, opt); break;
    case CheckId::curly_e_property:
      r.state = "grid row " + std::to_string(opt.grid_row) + " of " + std::to_string(opt.grid_size);
      check_curly(r, opt);
      break;
    case CheckId::three_tangle: check_three_tangle(r, *state, opt); break;
    case CheckId::three_qubit_polygamy: check_three_qubit_polygamy(r, *state, opt); break;
    case CheckId::rank2_bounds: check_rank2(r, *state, opt); break;
    case CheckId::coa_polygamy: check_coa_polygamy(r, *state, opt); break;
    case CheckId::nqubit_polygamy: check_nqubit_polygamy(r, *state, opt); break;
    case CheckId::zero_ue_separable: check_zero_ue(r, *state, opt); break;
    case CheckId::mixed_tradeoff: check_mixed_tradeoff(r, *state, opt); break;
    case CheckId::cor2_tradeoff: check_cor2(r, *state, opt); break;
  }
  r.pass = r.margin >= -r.tolerance;
  return r;
}

// ---------------------------------------------------------------------------
// Default samplers.

struct Sample {
  std::optional<MultipartiteState> state;
  std::string descriptor;
  CheckOptions options;
};

template <class T>
const T& cycle(const std::vector<T>& v, std::uint64_t i) {
  return v[i % v.size()];
}

Sample pure_sample(const DimList& dims, std::uint64_t seed, std::uint64_t index) {
  return {random_pure(dims, seed, index), "haar_pure" + dims.to_string(), {}};
}

Sample mixed_sample(const DimList& dims, int rank, std::uint64_t seed, std::uint64_t index) {
  rank = std::clamp(rank, 1, dims.total());
  return {random_mixed(dims, rank, seed, index), "haar_mixed" + dims.to_string() + " rank " + std::to_string(rank), {}};
}

constexpr std::uint64_t kPartnerOffset = std::uint64_t{1} << 40;

Sample draw(CheckId id, const SuiteConfig& cfg, std::uint64_t index) {
  const SamplerSpec& sp = cfg.sampler;
  const std::uint64_t seed = cfg.seed;
  auto dims_or = [&](const std::vector<DimList>& fallback, std::uint64_t i) {
    return sp.dims.empty() ? cycle(fallback, i) : cycle(sp.dims, i);
  };
  auto rank_or = [&](const std::vector<int>& fallback, std::uint64_t i) {
    return sp.ranks.empty() ? cycle(fallback, i) : cycle(sp.ranks, i);
  };
  const DimList two{2, 2};
  switch (id) {
    case CheckId::kw_identity: {
      const DimList dims = dims_or({{2, 2, 2}, {2, 3, 2}, {3, 2, 2}, {2, 2, 3}, {3, 3, 2}}, index);
      Sample s = pure_sample(dims, seed, index);
      const int db = dims[1];
      const int n = cycle(std::vector<int>{db, db + 1, 2 * db, db * db}, index / 5);
      s.options.povm = random_povm(db, n, seed, index);
      s.descriptor += " povm " + std::to_string(n) + " outcomes";
      return s;
    }
    case CheckId::lemma1_equiv:
      return mixed_sample(dims_or({{2, 2}, {3, 2}}, index), rank_or({1, 2, 3}, index / 2), seed, index);
    case CheckId::subadd: {
      const DimList dims = dims_or({two}, index);
      Sample s = mixed_sample(dims, rank_or({2, 3, 1, 4}, index), seed, index);
      Sample p = mixed_sample(dims, rank_or({2, 3, 1, 4}, index + 1), seed, index + kPartnerOffset);
      s.descriptor += " x " + p.descriptor;
      s.options.partner = std::move(p.state);
      return s;
    }
    case CheckId::lower_bound:
    case CheckId::upper_bound:
      return mixed_sample(dims_or({{2, 2}, {2, 3}, {3, 2}, {3, 3}}, index), rank_or({1, 2, 3, 4}, index / 4), seed,
                          index);
    case CheckId::omega_identities: {
      const DimList dims = dims_or({{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {3, 4}}, index);
      return mixed_sample(dims, rank_or({dims.total(), 1, 2, 3}, index / 6), seed, index);
    }
    case CheckId::tripartite_polygamy:
    case CheckId::three_tangle:
    case CheckId::three_qubit_polygamy:
      return pure_sample(dims_or({{2, 2, 2}}, index), seed, index);
    case CheckId::rank2_bounds:
      return mixed_sample(dims_or({two}, index), rank_or({1, 2}, index), seed, index);
    case CheckId::coa_polygamy:
    case CheckId::nqubit_polygamy:
    case CheckId::mixed_tradeoff:
    case CheckId::cor2_tradeoff:
      return pure_sample(dims_or({{2, 2, 2, 2}}, index), seed, index);
    case CheckId::zero_ue_separable: {
      const DimList dims = dims_or({two}, index);
      if (index % 2 == 0) {
        const int k = rank_or({1, 2}, index / 2);
        return {random_separable(dims, k, seed, index),
                "separable" + dims.to_string() + " k " + std::to_string(k), {}};
      }
      return mixed_sample(dims, rank_or({2}, index / 2), seed, index);
    }
    case CheckId::curly_e_property: {
      Sample s;
      s.options.grid_row = static_cast<int>(index);
      return s;
    }
  }
  throw DomainError("unknown check");
}

std::size_t sample_count(CheckId id, const SuiteConfig& cfg) {
  if (id == CheckId::curly_e_property) return 201;
  return cfg.samples;
}

void finalize(SuiteReport& rep) {
  rep.violations.clear();
  rep.worst_margin = rep.results.empty() ? 0.0 : rep.results.front().margin;
  for (std::size_t i = 0; i < rep.results.size(); ++i) {
    rep.worst_margin = std::min(rep.worst_margin, rep.results[i].margin);
    if (!rep.results[i].pass) rep.violations.push_back(i);
  }
}

std::vector<CheckResult> run_check_suite(CheckId id, const SuiteConfig& cfg) {
  const std::size_t n = sample_count(id, cfg);
  std::vector<CheckResult> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t s = next++; s < n; s = next++) {
      try {
        const std::uint64_t index = id == CheckId::curly_e_property ? s : cfg.first_index + s;
        Sample smp = draw(id, cfg, index);
        smp.options.optim = cfg.optim;
        smp.options.optim.seed = sample_optimizer_seed(cfg.seed, id, index);
        smp.options.tolerance = cfg.tolerance;
        CheckResult r = evaluate(id, smp.state ? &*smp.state : nullptr, smp.options);
        if (!r.pass && info(id).optimizer) {
          CheckOptions again = smp.options;
          again.optim.restarts = 4 * std::max(1, again.optim.restarts);
          CheckResult r2 = evaluate(id, smp.state ? &*smp.state : nullptr, again);
          r2.escalated = true;
          r2.notes.push_back("re-run with " + std::to_string(again.optim.restarts) + " restarts; first margin " +
                             fmt(r.margin));
          r = std::move(r2);
        }
        if (!smp.descriptor.empty()) r.state = smp.descriptor;
        r.seed = cfg.seed;
        r.index = index;
        out[s] = std::move(r);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 16));
  if (threads == 1 || n < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

CheckResult fact(const std::string& name, double lhs, double rhs, double margin, double tol, Classification c) {
  CheckResult r;
  r.check = "remark1." + name;
  r.state = "remark1";
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = margin;
  r.tolerance = tol;
  r.classification = c;
  r.pass = margin >= -tol;
  return r;
}

}  // namespace

std::string to_string(CheckId id) { return info(id).name; }

std::string to_string(Classification c) {
  switch (c) {
    case Classification::exact:
      return "exact";
    case Classification::conservative:
      return "conservative";
    case Classification::conservative_by_seeding:
      return "conservative-by-seeding";
    case Classification::optimizer_dependent:
      return "optimizer-dependent";
    case Classification::sanity:
      return "sanity";
  }
  return "exact";
}

std::optional<CheckId> check_from_string(const std::string& name) {
  for (const auto& c : kChecks)
    if (name == c.name) return c.id;
  return std::nullopt;
}

const std::vector<CheckId>& all_checks() {
  static const std::vector<CheckId> ids = [] {
    std::vector<CheckId> v;
    for (const auto& c : kChecks) v.push_back(c.id);
    return v;
  }();
  return ids;
}

Classification classification_of(CheckId id) { return info(id).classification; }
double default_tolerance(CheckId id) { return info(id).tolerance; }
bool uses_optimizer(CheckId id) { return info(id).optimizer; }

CheckResult run_check(CheckId id, const MultipartiteState& state, const CheckOptions& options) {
  return evaluate(id, &state, options);
}

std::uint64_t sample_optimizer_seed(std::uint64_t seed, CheckId id, std::uint64_t index) {
  const auto ordinal = static_cast<std::uint64_t>(id);
  return splitmix64(seed ^ splitmix64(stream_id(StreamFamily::suite, (ordinal << 40) ^ index)));
}

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& c : kChecks) names.emplace_back(c.name);
  names.emplace_back("remark1");
  names.emplace_back("all");
  return names;
}

bool is_suite(const std::string& name) {
  const auto names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteReport run_suite(const std::string& suite, const SuiteConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = suite;
  rep.samples = config.samples;
  rep.seed = config.seed;
  if (suite == "remark1") {
    SuiteReport r1 = run_remark1(config.optim);
    rep.results = std::move(r1.results);
  } else if (suite == "all") {
    for (CheckId id : all_checks()) {
      auto part = run_check_suite(id, config);
      for (auto& r : part) rep.results.push_back(std::move(r));
    }
    for (auto& r : run_remark1(config.optim).results) rep.results.push_back(std::move(r));
  } else {
    const auto id = check_from_string(suite);
    if (!id) throw DomainError("unknown suite: " + suite);
    rep.results = run_check_suite(*id, config);
  }
  finalize(rep);
  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

SuiteReport run_remark1(const OptimConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = "remark1";
  rep.samples = 1;
  rep.seed = config.seed;

  const MultipartiteState psi = remark1_state();
  const DimList ab{2, 2};
  const DimList ac{2, 3};
  const CMatrix rho_ab = psi.reduced({0, 1});
  const CMatrix rho_ac = psi.reduced({0, 2});
  const double ea_exact = std::log2(3.0) - 2.0 / 3.0;
  const double eu_exact = 5.0 / 3.0 - std::log2(3.0);
  const double c_exact = 2.0 * std::sqrt(2.0) / 3.0;

  const double s_a = entropy(psi.reduced({0}));
  rep.results.push_back(fact("S_A", s_a, 1.0, -std::abs(s_a - 1.0), 1e-12, Classification::exact));

  const MeasureValue ea = eoa_roof(rho_ac, ac, config);
  const MeasureValue ef = eof_roof(rho_ac, ac, config);

  // Every decomposition of rho_AC: the certificates plus random ones.
  std::vector<Ensemble> decompositions;
  decompositions.push_back(std::get<Ensemble>(ea.certificate));
  decompositions.push_back(std::get<Ensemble>(ef.certificate));
  CounterRng rng(config.seed, stream_id(StreamFamily::unitary, 0x72316d));
  for (int k = 0; k < 8; ++k) decompositions.push_back(ensemble_from_isometry(rho_ac, ac, random_isometry(2 + k, 2, rng)));
  double worst = 0.0;
  double worst_value = c_exact;
  for (const auto& e : decompositions)
    for (const auto& m : e.members) {
      const double c = concurrence_pure(m, ac, {0});
      if (std::abs(c - c_exact) > worst) {
        worst = std::abs(c - c_exact);
        worst_value = c;
      }
    }
  CheckResult cr = fact("member_concurrence", worst_value, c_exact, -worst, 1e-6, Classification::exact);
  cr.values.emplace_back("decompositions", static_cast<double>(decompositions.size()));
  rep.results.push_back(std::move(cr));

  CheckResult rea = fact("E_a", ea.value, ea_exact, -std::abs(ea.value - ea_exact), 1e-4, Classification::optimizer_dependent);
  rea.certificates.push_back(summarize("eoa_AC", *ea.search));
  rep.results.push_back(std::move(rea));
  CheckResult ref = fact("E_f", ef.value, ea_exact, -std::abs(ef.value - ea_exact), 1e-4, Classification::optimizer_dependent);
  ref.certificates.push_back(summarize("eof_AC", *ef.search));
  rep.results.push_back(std::move(ref));

  const MeasureValue eu = ue_direct(rho_ab, ab, config);
  CheckResult reu = fact("E_u", eu.value, eu_exact, -std::abs(eu.value - eu_exact), 1e-4, Classification::optimizer_dependent);
  reu.certificates.push_back(summarize("ue_AB", *eu.search));
  rep.results.push_back(std::move(reu));

  const int rank = numerical_rank(rho_ab);
  rep.results.push_back(fact("rank", rank, 3.0, -std::abs(rank - 3.0), 0.0, Classification::exact));

  const double pt = min_eigenvalue(partial_transpose(rho_ab, ab, 1));
  rep.results.push_back(fact("ppt", 0.0, pt, pt, 1e-9, Classification::exact));

  for (auto& r : rep.results) r.seed = config.seed;
  finalize(rep);
  rep.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace polyent
