#pragma once

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "isingc/branch.hpp"
#include "isingc/circuit.hpp"
#include "isingc/errors.hpp"
#include "isingc/lattice.hpp"
#include "isingc/layout.hpp"
#include "isingc/models.hpp"
#include "isingc/overlap.hpp"
#include "isingc/tableau.hpp"

namespace isingc {

namespace detail {
inline complex ipow(int k) {
  static const complex table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[k & 3];
}
}  // namespace detail

/// Y-measuring every edge qubit of the decorated W x H cluster leaves the cluster state up to
/// sigma' = tensor_v S^{s_power[v]}:  sigma' |C> = 2^{|E|/2} (I (x) <b|) |phi_C~>,
/// where <b| is the Y bra of the recorded outcome on each edge qubit.
struct DecorationCorrection {
  int width = 0;
  int height = 0;
  std::vector<int> edge_outcomes;  // per lattice edge, Graph::grid order
  int r_prime = 0;
  std::vector<int> s_power;        // per site, mod 4
  bool tableau_checked = false;

  LocalCliffordOp op() const {
    LocalCliffordOp c(static_cast<int>(s_power.size()));
    for (std::size_t v = 0; v < s_power.size(); ++v) c.factors[v] = SingleCliffordImage::s_power(s_power[v]);
    return c;
  }
};

inline constexpr int kDecorationTableauMaxQubits = 5000;

/// Measures the decorated cluster's edge qubits in Y (preferred +1) on the stabilizer engine and
/// reads sigma' off the post-measurement group. The exponent of S at a site is fixed by which of
/// +-X Z_N, +-Y Z_N the group contains; it must agree with minus the sum of incident outcomes.
inline DecorationCorrection decoration_correction(int width, int height, bool use_tableau = true) {
  const Graph grid = Graph::grid(width, height);
  const DecoratedGraph dg(grid);
  const int m = grid.num_vertices();
  const auto adj = grid.adjacency();
  DecorationCorrection out;
  out.width = width;
  out.height = height;
  out.edge_outcomes.assign(static_cast<std::size_t>(grid.num_edges()), 1);
  out.r_prime = grid.num_edges();

  std::optional<StabilizerTableau> t;
  if (use_tableau && dg.num_qubits() <= kDecorationTableauMaxQubits) {
    t = decorated_tableau(dg);
    out.r_prime = 0;
    for (int e = 0; e < grid.num_edges(); ++e) {
      auto res = t->measure(dg.edge_qubit(e), PauliBasis::Y, 1);
      out.edge_outcomes[e] = res.outcome;
      out.r_prime += res.was_random;
    }
  }
  out.s_power.assign(static_cast<std::size_t>(m), 0);
  for (int e = 0; e < grid.num_edges(); ++e) {
    auto [a, b] = grid.edge(e);
    for (int v : {a, b}) out.s_power[v] = (out.s_power[v] - out.edge_outcomes[e] + 8) & 3;
  }
  if (t) {
    for (int v = 0; v < m; ++v) {
      PauliOperator g = PauliOperator::single(dg.num_qubits(), v, PauliBasis::X);
      for (int i = 0; i < out.s_power[v]; ++i) g.conjugate_s(v);
      for (int w : adj[v]) g.set_z(w, true);
      auto sign = t->sign_in_group(g);
      if (!sign || *sign != 1) throw CompileError("decoration_correction: S-power at site " + std::to_string(v) + " disagrees with the stabilizer group");
    }
    out.tableau_checked = true;
  }
  return out;
}

/// Product bra over the decorated cluster (sites first, then one qubit per lattice edge) with
/// Z_G = prefactor * <gamma|phi_C~>.
struct LiftResult {
  ProductBra gamma;
  ScaledComplex prefactor;
  DecorationCorrection correction;
};

/// Composes the model's bra with sigma, the branch bras and sigma'^-1 on the decorated cluster.
inline LiftResult lift_to_decorated_cluster(const BranchCertificate& cert, const IsingModel& model, std::optional<DecorationCorrection> correction = std::nullopt) {
  const auto& L = cert.layout;
  const DecoratedGraph dg(model.graph);
  if (L.num_outputs() != dg.num_qubits()) throw std::invalid_argument("lift_to_decorated_cluster: certificate does not match the model's decorated graph");
  if (!correction) correction = decoration_correction(L.width, L.height);
  if (correction->width != L.width || correction->height != L.height) throw std::invalid_argument("lift_to_decorated_cluster: correction geometry mismatch");

  const ProductBra alpha = alpha_from_model(model);
  const int m = L.num_sites();
  const int ne = static_cast<int>(correction->edge_outcomes.size());
  std::vector<LocalBra> f(static_cast<std::size_t>(m + ne));
  for (int v = 0; v < m; ++v) {
    const auto& role = L.roles[v];
    LocalBra w;
    if (role.output) {
      // <alpha_q| X^x Z^z
      w = alpha.factors[role.qubit];
      if (cert.sigma.x(role.qubit)) std::swap(w.w0, w.w1);
      if (cert.sigma.z(role.qubit)) w.w1 = -w.w1;
    } else {
      w = cert.beta_bras[v];
    }
    w.w1 *= detail::ipow(-correction->s_power[v]);  // <w| S^{-d}
    f[v] = w;
  }
  for (int e = 0; e < ne; ++e) f[m + e] = pauli_bra(PauliBasis::Y, correction->edge_outcomes[e]);

  LiftResult out;
  out.gamma = ProductBra(std::move(f));
  out.prefactor = ScaledComplex::sqrt2_pow(model.graph.num_vertices()) * cert.scalar * ScaledComplex(detail::ipow(cert.sigma.phase())) * ScaledComplex::sqrt2_pow(ne);
  out.correction = std::move(*correction);
  return out;
}

struct SiteOrigin {
  enum class Kind { VertexQubit, EdgeQubit, Measured };
  Kind kind = Kind::Measured;
  int target_qubit = -1;              // G~ qubit for outputs
  PauliBasis basis = PauliBasis::Z;   // measured sites
  int outcome = 0;                    // measured sites
  int s_power = 0;                    // decoration correction exponent at this site
};

struct EdgeOrigin {
  int decoration_qubit = -1;  // index in the decorated cluster
  int outcome = 0;            // Y outcome of that qubit
};

struct ReductionDiagnostics {
  int width = 0;
  int height = 0;
  int sites = 0;
  int target_qubits = 0;
  int circuit_gates = 0;
  int r = 0;
  int r_prime = 0;
  LayoutStats layout;
  double seconds_compile = 0.0;
  double seconds_branch = 0.0;
  double seconds_lift = 0.0;
};

/// Z_G = A_total * Z2D(instance).
struct ReductionResult {
  Ising2DInstance instance;
  ScaledComplex A_total;
  std::vector<SiteOrigin> site_origin;
  std::vector<EdgeOrigin> edge_origin;
  ReductionDiagnostics diagnostics;
};

/// Normalizes every weight pair to (1, ratio) or (0, 1) and folds the divisors, the prefactor and
/// the 2^{-WH/2} normalization of phi_C~ into A_total.
inline ReductionResult extract_instance(const ProductBra& gamma, const ScaledComplex& prefactor, int width, int height) {
  const Graph grid = Graph::grid(width, height);
  const int m = grid.num_vertices();
  if (gamma.num_qubits() != m + grid.num_edges()) throw std::invalid_argument("extract_instance: gamma does not cover the decorated lattice");
  ReductionResult out;
  ScaledComplex a = prefactor * gamma.scale * ScaledComplex::sqrt2_pow(-m);
  auto split = [&](const LocalBra& w) {
    if (w.w0 != complex(0.0, 0.0)) {
      a *= w.w0;
      return std::pair<complex, complex>{1.0, w.w1 / w.w0};
    }
    a *= w.w1;
    return std::pair<complex, complex>{0.0, 1.0};
  };
  Ising2DInstance& inst = out.instance;
  inst.width = width;
  inst.height = height;
  for (int v = 0; v < m; ++v) {
    auto [w0, w1] = split(gamma.factors[v]);
    inst.sites.push_back({w0, w1});
  }
  for (int e = 0; e < grid.num_edges(); ++e) {
    auto [u0, u1] = split(gamma.factors[m + e]);
    inst.edges.push_back({grid.edge(e).first, grid.edge(e).second, u0, u1});
  }
  inst.validate();
  out.A_total = a;
  out.diagnostics.width = width;
  out.diagnostics.height = height;
  out.diagnostics.sites = m;
  return out;
}

struct ReductionOptions {
  LayoutOptions layout;
  BranchOptions branch;
  /// Derive sigma' on the stabilizer engine (always cross-checked against the closed form).
  bool tableau_decoration = true;
};

/// decorate -> synthesize -> layout -> execute_branch -> lift -> extract.
inline ReductionResult reduce(const IsingModel& model, const ReductionOptions& options = {}) {
  model.validate();
  using clock = std::chrono::steady_clock;
  auto seconds = [](clock::time_point t0) { return std::chrono::duration<double>(clock::now() - t0).count(); };
  if (model.graph.num_vertices() == 0) {
    // Z of the empty model is 1: one pinned site.
    ReductionResult out;
    out.instance = Ising2DInstance::uniform(1, 1, 1.0, 1.0, 1.0, 0.0);
    out.A_total = ScaledComplex(1.0);
    out.site_origin.assign(1, SiteOrigin{});
    out.diagnostics.width = out.diagnostics.height = out.diagnostics.sites = 1;
    return out;
  }

  auto t0 = clock::now();
  const DecoratedGraph dg(model.graph);
  const CliffordCircuit circuit = synthesize_prep_circuit(dg);
  const ClusterLayout layout = layout_on_cluster(circuit, options.layout);
  double t_compile = seconds(t0);

  t0 = clock::now();
  const BranchCertificate cert = execute_branch(layout, dg, options.branch);
  double t_branch = seconds(t0);

  t0 = clock::now();
  LiftResult lift = lift_to_decorated_cluster(cert, model, decoration_correction(layout.width, layout.height, options.tableau_decoration));
  double t_lift = seconds(t0);

  ReductionResult out = extract_instance(lift.gamma, lift.prefactor, layout.width, layout.height);
  const int nv = dg.num_vertex_qubits();
  for (int v = 0; v < layout.num_sites(); ++v) {
    SiteOrigin o;
    const auto& role = layout.roles[v];
    if (role.output) {
      o.kind = role.qubit < nv ? SiteOrigin::Kind::VertexQubit : SiteOrigin::Kind::EdgeQubit;
      o.target_qubit = role.qubit;
    } else {
      o.basis = role.basis;
      o.outcome = cert.outcomes[v];
    }
    o.s_power = lift.correction.s_power[v];
    out.site_origin.push_back(o);
  }
  for (int e = 0; e < static_cast<int>(lift.correction.edge_outcomes.size()); ++e) out.edge_origin.push_back({layout.num_sites() + e, lift.correction.edge_outcomes[e]});
  auto& d = out.diagnostics;
  d.target_qubits = dg.num_qubits();
  d.circuit_gates = static_cast<int>(circuit.gates().size());
  d.r = cert.r;
  d.r_prime = lift.correction.r_prime;
  d.layout = layout.stats;
  d.seconds_compile = t_compile;
  d.seconds_branch = t_branch;
  d.seconds_lift = t_lift;
  return out;
}

/// Layout area bound W * H <= 2n * (6 * (g + 3 n c) + 8), with n target qubits, g circuit gates and
/// c CZ gates. It counts one bridge per CZ plus three per routing SWAP (at most n per CZ),
/// at most 6 columns per bridge to synchronize frames, and a constant tail to reach an output.
inline long long layout_area_bound(long long n, long long gates, long long cz) { return 2 * n * (6 * (gates + 3 * n * cz) + 8); }

struct VerificationReport {
  ScaledComplex z_brute;
  ScaledComplex z_overlap;
  ScaledComplex z2d;
  ScaledComplex reconstructed;  // A_total * z2d
  EvalReport evaluation;
  double overlap_error = 0.0;
  double reduction_error = 0.0;
  bool homogeneous = false;
  bool pass = false;
  std::string failed_stage;  // empty on pass
};

inline constexpr double kVerifyTolerance = 1e-8;

/// Relative error against max(|expected|, 1e-6 * magnitude_hint). The hint is the sum of the
/// Boltzmann weight magnitudes, so cancellation down to an exact zero stays comparable.
inline double verification_error(const ScaledComplex& got, const ScaledComplex& expected, const ScaledComplex& magnitude_hint) {
  if (expected.is_zero() && got.is_zero()) return 0.0;
  double floor = magnitude_hint.is_zero() ? 0.0 : std::abs((magnitude_hint * ScaledComplex(1e-6)).to_complex());
  return relative_error_floor(got, expected, floor);
}

/// Both sides of Z_G = A_total * Z2D, plus the overlap formula and the homogeneity check.
inline VerificationReport verify_reduction(const IsingModel& model, const ReductionResult& result, int max_bits = kDefaultEnumerationBits) {
  VerificationReport rep;
  rep.z_brute = brute_force_z_ising(model, max_bits);
  rep.z_overlap = z_via_overlap(model, max_bits);
  rep.evaluation = eval_transfer_matrix(result.instance);
  rep.z2d = rep.evaluation.value;
  rep.reconstructed = result.A_total * rep.z2d;
  // Scale for an absolute floor: the sum of |Boltzmann weights| is at most 2^|V| max|w|.
  IsingModel abs_model = model;
  for (auto& k : abs_model.couplings) k = std::abs(k.real());
  for (auto& g : abs_model.fields) g = std::abs(g.real());
  ScaledComplex hint = brute_force_z_ising(abs_model, max_bits);
  rep.overlap_error = verification_error(rep.z_overlap, rep.z_brute, hint);
  rep.reduction_error = verification_error(rep.reconstructed, rep.z_brute, hint);
  rep.homogeneous = edge_ratios_homogeneous(result.instance);
  if (rep.overlap_error > kVerifyTolerance) {
    rep.failed_stage = "overlap";
  } else if (!rep.homogeneous) {
    rep.failed_stage = "homogeneity";
  } else if (rep.reduction_error > kVerifyTolerance) {
    rep.failed_stage = "transfer-matrix";
  }
  rep.pass = rep.failed_stage.empty();
  return rep;
}

}  // namespace isingc
