#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "isingc/circuit.hpp"
#include "isingc/errors.hpp"
#include "isingc/pauli.hpp"

namespace isingc {

/// Single-qubit Clifford modulo Pauli, as its 2x2 GF(2) symplectic matrix acting on (x, z) columns.
/// The group is S3; H = [[0,1],[1,0]], S = [[1,0],[1,1]].
class Frame {
 public:
  constexpr Frame() = default;
  static constexpr Frame identity() { return {}; }
  static constexpr Frame hadamard() { return Frame(0, 1, 1, 0); }
  static constexpr Frame phase() { return Frame(1, 0, 1, 1); }

  constexpr Frame operator*(Frame o) const {
    return Frame((a_ & o.a_) ^ (b_ & o.c_), (a_ & o.b_) ^ (b_ & o.d_), (c_ & o.a_) ^ (d_ & o.c_), (c_ & o.b_) ^ (d_ & o.d_));
  }
  /// Diagonal Cliffords (Z maps to Z): the ones that commute with CZ up to Pauli.
  constexpr bool diagonal() const { return b_ == 0; }
  constexpr bool is_identity() const { return a_ == 1 && b_ == 0 && c_ == 0 && d_ == 1; }
  constexpr int code() const { return a_ | (b_ << 1) | (c_ << 2) | (d_ << 3); }
  friend constexpr bool operator==(Frame, Frame) = default;

 private:
  constexpr Frame(int a, int b, int c, int d) : a_(a), b_(b), c_(c), d_(d) {}
  int a_ = 1, b_ = 0, c_ = 0, d_ = 1;
};

/// Effect on a wire's frame of measuring its head in X or Y: F -> H F or F -> H S F.
inline constexpr Frame move_frame(PauliBasis b, Frame f) {
  return b == PauliBasis::X ? Frame::hadamard() * f : Frame::hadamard() * Frame::phase() * f;
}

namespace detail {

inline constexpr int kFrameHorizon = 16;

/// reach[t][code] = some sequence of exactly t moves takes the frame into the target set.
struct FrameReach {
  std::array<std::array<bool, 16>, kFrameHorizon + 1> to_diagonal{};
  std::array<std::array<bool, 16>, kFrameHorizon + 1> to_identity{};

  FrameReach() {
    std::vector<Frame> all;
    for (Frame f : {Frame::identity(), Frame::hadamard(), Frame::phase()}) all.push_back(f);
    for (int grow = 0; grow < 4; ++grow) {
      auto cur = all;
      for (Frame a : cur)
        for (Frame b : cur) {
          Frame p = a * b;
          if (std::find(all.begin(), all.end(), p) == all.end()) all.push_back(p);
        }
    }
    for (Frame f : all) {
      to_diagonal[0][f.code()] = f.diagonal();
      to_identity[0][f.code()] = f.is_identity();
    }
    for (int t = 1; t <= kFrameHorizon; ++t)
      for (Frame f : all)
        for (PauliBasis m : {PauliBasis::X, PauliBasis::Y}) {
          Frame g = move_frame(m, f);
          to_diagonal[t][f.code()] = to_diagonal[t][f.code()] || to_diagonal[t - 1][g.code()];
          to_identity[t][f.code()] = to_identity[t][f.code()] || to_identity[t - 1][g.code()];
        }
  }
};

inline const FrameReach& frame_reach() {
  static const FrameReach r;
  return r;
}

inline int frame_distance(const std::array<std::array<bool, 16>, kFrameHorizon + 1>& table, Frame f) {
  for (int t = 0; t <= kFrameHorizon; ++t)
    if (table[t][f.code()]) return t;
  return kFrameHorizon + 1;
}

}  // namespace detail

struct SiteRole {
  bool output = false;
  PauliBasis basis = PauliBasis::Z;  // measured sites only
  int qubit = -1;                    // output sites only: circuit qubit delivered here
};

struct LayoutStats {
  int wires = 0;
  int logical_gates = 0;
  int logical_cz = 0;
  int routing_swaps = 0;
  int bridges = 0;
  int x_measurements = 0;
  int y_measurements = 0;
  int z_measurements = 0;
};

struct LayoutOptions {
  /// Outputs never sit left of this column; pads short wires with X-measurement pairs.
  int min_output_column = 0;
  /// Circuit qubit placed on each wire, top to bottom. Empty selects a bandwidth-reducing order.
  std::vector<int> wire_order;
};

/// Measurement pattern on a W x H cluster. Site index is row * W + col.
///
/// Circuit wires run left to right along even rows. Odd rows separate them: Z-measured,
/// except Y-measured bridge sites that realize a CZ between the two wires they touch.
struct ClusterLayout {
  int width = 0;
  int height = 0;
  std::vector<SiteRole> roles;
  std::vector<int> measurement_order;
  std::vector<int> output_site;  // circuit qubit -> site
  LayoutStats stats;

  int num_sites() const { return width * height; }
  int site(int row, int col) const { return row * width + col; }
  int num_outputs() const { return static_cast<int>(output_site.size()); }
  int num_measured() const { return static_cast<int>(measurement_order.size()); }

  void validate() const {
    if (width <= 0 || height <= 0) throw CompileError("ClusterLayout: empty geometry");
    if (static_cast<int>(roles.size()) != num_sites()) throw CompileError("ClusterLayout: role count mismatch");
    std::vector<int> seen(output_site.size(), 0);
    int outputs = 0;
    for (int s = 0; s < num_sites(); ++s) {
      if (!roles[s].output) continue;
      ++outputs;
      int q = roles[s].qubit;
      if (q < 0 || q >= num_outputs() || output_site[q] != s || seen[q]++) throw CompileError("ClusterLayout: output map is not a bijection");
    }
    if (outputs != num_outputs()) throw CompileError("ClusterLayout: output count mismatch");
    if (num_measured() + outputs != num_sites()) throw CompileError("ClusterLayout: measurement order does not cover measured sites");
    std::vector<char> listed(static_cast<std::size_t>(num_sites()), 0);
    for (int s : measurement_order) {
      if (s < 0 || s >= num_sites() || roles[s].output || listed[s]++) throw CompileError("ClusterLayout: bad measurement order");
    }
  }

  /// One character per site: digits are outputs (qubit mod 10), X/Y/Z measured bases.
  std::string render() const {
    std::ostringstream os;
    for (int r = 0; r < height; ++r) {
      for (int c = 0; c < width; ++c) {
        const auto& role = roles[site(r, c)];
        os << (role.output ? static_cast<char>('0' + role.qubit % 10) : basis_char(role.basis));
      }
      os << '\n';
    }
    return os.str();
  }
};

/// Reverse-free Cuthill-McKee order of the CZ interaction graph.
inline std::vector<int> interaction_order(const CliffordCircuit& circuit) {
  const int n = circuit.num_wires();
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (const auto& g : circuit.gates())
    if (g.kind == GateKind::CZ) {
      adj[g.a].insert(g.b);
      adj[g.b].insert(g.a);
    }
  auto deg = [&](int v) { return static_cast<int>(adj[v].size()); };
  std::vector<int> order;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  while (static_cast<int>(order.size()) < n) {
    int start = -1;
    for (int v = 0; v < n; ++v)
      if (!seen[v] && (start < 0 || deg(v) < deg(start))) start = v;
    std::deque<int> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      order.push_back(v);
      std::vector<int> next;
      for (int w : adj[v])
        if (!seen[w]) next.push_back(w);
      std::stable_sort(next.begin(), next.end(), [&](int a, int b) { return deg(a) < deg(b); });
      for (int w : next) {
        seen[w] = 1;
        queue.push_back(w);
      }
    }
  }
  return order;
}

namespace detail {

struct WireOp {
  bool cz = false;
  GateKind gate = GateKind::H;  // single-qubit ops
  int id = -1;                  // shared by both halves of a CZ
};

}  // namespace detail

/// Compiles a circuit acting on |+>^n into a measurement pattern on a cluster state.
///
/// Each wire carries a frame F (Clifford mod Pauli) with physical head = F * logical state.
/// Measuring the head in X or Y advances the wire one column and left-multiplies F by H or H S.
/// Logical H and S are free: F -> F G^-1. A bridge needs both frames diagonal and applies
/// F -> S F to each. A wire ends on the first site where its queue is empty and F = I.
inline ClusterLayout layout_on_cluster(const CliffordCircuit& circuit, const LayoutOptions& options = {}) {
  const int n = circuit.num_wires();
  if (n <= 0) throw std::invalid_argument("layout_on_cluster: circuit has no wires");
  std::vector<int> order = options.wire_order.empty() ? interaction_order(circuit) : options.wire_order;
  {
    auto sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> iota(static_cast<std::size_t>(n));
    std::iota(iota.begin(), iota.end(), 0);
    if (sorted != iota) throw std::invalid_argument("layout_on_cluster: wire_order is not a permutation of the circuit qubits");
  }

  ClusterLayout layout;
  LayoutStats& stats = layout.stats;
  stats.wires = n;
  stats.logical_gates = static_cast<int>(circuit.gates().size());

  // Static routing: per-wire op queues.
  std::vector<int> pos(static_cast<std::size_t>(n)), at = order;
  for (int p = 0; p < n; ++p) pos[order[p]] = p;
  std::vector<std::deque<detail::WireOp>> queue(static_cast<std::size_t>(n));
  int next_id = 0;
  auto push_cz = [&](int p, int q) {
    queue[p].push_back({true, GateKind::CZ, next_id});
    queue[q].push_back({true, GateKind::CZ, next_id});
    ++next_id;
  };
  auto push_h = [&](int p) { queue[p].push_back({false, GateKind::H, -1}); };
  auto physical_swap = [&](int p, int q) {
    // CX(p->q) CX(q->p) CX(p->q), each CX(a->b) = H_b CZ H_b
    for (int k = 0; k < 3; ++k) {
      int target = k == 1 ? p : q;
      push_h(target);
      push_cz(p, q);
      push_h(target);
    }
    std::swap(at[p], at[q]);
    pos[at[p]] = p;
    pos[at[q]] = q;
    ++stats.routing_swaps;
  };
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::H:
      case GateKind::S: queue[pos[g.a]].push_back({false, g.kind, -1}); break;
      case GateKind::SWAP: {
        std::swap(pos[g.a], pos[g.b]);
        at[pos[g.a]] = g.a;
        at[pos[g.b]] = g.b;
        break;
      }
      case GateKind::CZ: {
        ++stats.logical_cz;
        int pa = pos[g.a];
        int pb = pos[g.b];
        while (std::abs(pa - pb) > 1) {
          int step = pa > pb ? pb + 1 : pb - 1;
          physical_swap(pb, step);
          pb = step;
        }
        push_cz(std::min(pa, pb), std::max(pa, pb));
        break;
      }
    }
  }

  // Column sweep.
  const auto& reach = detail::frame_reach();
  const int height = 2 * n - 1;
  std::vector<std::vector<SiteRole>> columns;
  std::vector<Frame> frame(static_cast<std::size_t>(n));
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  std::vector<int> last_bridge(static_cast<std::size_t>(std::max(n - 1, 0)), -2);
  layout.output_site.assign(static_cast<std::size_t>(n), -1);
  std::vector<std::pair<int, int>> output_cell(static_cast<std::size_t>(n));
  int remaining = n;
  const long long column_limit = 64 + 16LL * (next_id + 1) + 2LL * options.min_output_column;

  auto drain = [&](int p) {
    while (!queue[p].empty() && !queue[p].front().cz) {
      frame[p] = frame[p] * (queue[p].front().gate == GateKind::H ? Frame::hadamard() : Frame::phase());
      queue[p].pop_front();
    }
  };
  auto front_cz = [&](int p) { return queue[p].empty() || !queue[p].front().cz ? -1 : queue[p].front().id; };

  for (int c = 0; remaining > 0; ++c) {
    if (c > column_limit) throw CompileError("layout_on_cluster: scheduler made no progress");
    std::vector<SiteRole> col(static_cast<std::size_t>(height));
    std::vector<char> touched(static_cast<std::size_t>(n), 0);
    for (int p = 0; p < n; ++p)
      if (!done[p]) drain(p);
    for (bool changed = true; changed;) {
      changed = false;
      for (int p = 0; p + 1 < n; ++p) {
        if (done[p] || done[p + 1] || last_bridge[p] >= c - 1) continue;
        int id = front_cz(p);
        if (id < 0 || id != front_cz(p + 1) || !frame[p].diagonal() || !frame[p + 1].diagonal()) continue;
        col[2 * p + 1].basis = PauliBasis::Y;
        last_bridge[p] = c;
        ++stats.bridges;
        for (int w : {p, p + 1}) {
          frame[w] = Frame::phase() * frame[w];
          queue[w].pop_front();
          drain(w);
          touched[w] = 1;
        }
        changed = true;
      }
    }
    for (int p = 0; p < n; ++p) {
      if (done[p] || !queue[p].empty() || !frame[p].is_identity() || c < options.min_output_column || touched[p]) continue;
      col[2 * p] = SiteRole{true, PauliBasis::Z, at[p]};
      output_cell[at[p]] = {2 * p, c};
      done[p] = 1;
      --remaining;
    }
    std::vector<PauliBasis> moves(static_cast<std::size_t>(n), PauliBasis::Z);
    for (int p = 0; p < n; ++p) {
      if (done[p]) continue;
      PauliBasis& choice = moves[p];
      choice = PauliBasis::X;
      int id = front_cz(p);
      int partner = -1;
      if (id >= 0) {
        if (p > 0 && front_cz(p - 1) == id) partner = p - 1;
        if (p + 1 < n && front_cz(p + 1) == id) partner = p + 1;
      }
      if (partner >= 0) {
        int row = std::min(p, partner);
        int target = -1;
        for (int t = 1; t <= detail::kFrameHorizon && target < 0; ++t) {
          if (last_bridge[row] >= c + t - 1) continue;
          if (reach.to_diagonal[t][frame[p].code()] && reach.to_diagonal[t][frame[partner].code()]) target = t;
        }
        if (target < 0) throw CompileError("layout_on_cluster: cannot synchronize frames for CZ");
        if (!reach.to_diagonal[target - 1][move_frame(PauliBasis::X, frame[p]).code()]) choice = PauliBasis::Y;
      } else {
        const auto& table = queue[p].empty() ? reach.to_identity : reach.to_diagonal;
        int dx = detail::frame_distance(table, move_frame(PauliBasis::X, frame[p]));
        int dy = detail::frame_distance(table, move_frame(PauliBasis::Y, frame[p]));
        if (dy < dx) choice = PauliBasis::Y;
      }
    }
    for (int p = 0; p < n; ++p) {
      if (done[p]) continue;
      col[2 * p].basis = moves[p];
      frame[p] = move_frame(moves[p], frame[p]);
    }
    columns.push_back(std::move(col));
  }

  layout.width = static_cast<int>(columns.size());
  layout.height = height;
  layout.roles.resize(static_cast<std::size_t>(layout.width) * height);
  for (int c = 0; c < layout.width; ++c)
    for (int r = 0; r < height; ++r) layout.roles[layout.site(r, c)] = columns[c][r];
  for (int q = 0; q < n; ++q) layout.output_site[q] = layout.site(output_cell[q].first, output_cell[q].second);
  for (int s = 0; s < layout.num_sites(); ++s) {
    const auto& role = layout.roles[s];
    if (role.output) continue;
    layout.measurement_order.push_back(s);
    (role.basis == PauliBasis::X ? stats.x_measurements : role.basis == PauliBasis::Y ? stats.y_measurements : stats.z_measurements)++;
  }
  layout.validate();
  return layout;
}

}  // namespace isingc
