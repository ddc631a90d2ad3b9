// isingc: evaluate, reduce and verify complex-coupling Ising and clock partition functions.
//
// Exit codes: 0 pass, 1 verification failure, 2 input or size-bound error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "isingc/isingc.hpp"

namespace {

using namespace isingc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr double kDisplayAgreement = 1e-10;

struct Common {
  std::string model_path;
  std::optional<std::uint64_t> seed;
  int max_bits = kDefaultEnumerationBits;
  bool json_out = false;
};

/// Human-readable value; exact mantissa/exponent when outside double range.
std::string describe(const ScaledComplex& v) {
  std::ostringstream os;
  os.precision(17);
  if (v.is_zero()) return "0";
  if (std::abs(v.log2_abs()) < 1000.0) {
    complex c = v.to_complex();
    os << c.real() << (c.imag() < 0 ? " - " : " + ") << std::abs(c.imag()) << "i";
  } else {
    os << "(" << v.mantissa().real() << (v.mantissa().imag() < 0 ? " - " : " + ") << std::abs(v.mantissa().imag()) << "i) * 2^" << v.exponent2();
  }
  return os.str();
}

json value_json(const ScaledComplex& v) {
  json j = to_json(v);
  if (std::abs(v.log2_abs()) < 1000.0 || v.is_zero()) j["approx"] = to_json(v.to_complex());
  return j;
}

class Report {
 public:
  Report(const std::string& command, const std::vector<std::string>& argv) {
    doc_["schema"] = "ising-complete/1";
    doc_["command"] = command;
    doc_["argv"] = argv;
    doc_["inputs"] = json::object();
    doc_["diagnostics"] = json::object();
    doc_["values"] = json::object();
    doc_["checks"] = json::array();
    doc_["seconds"] = json::object();
  }

  void input(const std::string& name, const std::string& text) { doc_["inputs"][name] = json{{"digest", "fnv1a64:" + fnv1a_hex(text)}, {"bytes", text.size()}}; }
  void diagnostic(const std::string& key, json v) { doc_["diagnostics"][key] = std::move(v); }
  void value(const std::string& key, const ScaledComplex& v) {
    doc_["values"][key] = value_json(v);
    lines_.push_back(key + " = " + describe(v));
  }
  void line(const std::string& s) { lines_.push_back(s); }
  void timing(const std::string& stage, double s) { doc_["seconds"][stage] = s; }

  /// Records a pass/fail check; the first failing one becomes failed_stage.
  bool check(const std::string& stage, bool ok, double error, double tolerance) {
    doc_["checks"].push_back(json{{"stage", stage}, {"pass", ok}, {"error", error}, {"tolerance", tolerance}});
    std::ostringstream os;
    os << (ok ? "PASS " : "FAIL ") << stage << " (error " << error << ", tolerance " << tolerance << ")";
    lines_.push_back(os.str());
    if (!ok && !failed_) failed_ = stage;
    return ok;
  }

  int finish(bool json_out) {
    doc_["pass"] = !failed_;
    doc_["failed_stage"] = failed_ ? json(*failed_) : json(nullptr);
    if (json_out) {
      std::cout << doc_.dump(2) << "\n";
    } else {
      for (const auto& l : lines_) std::cout << l << "\n";
      std::cout << (failed_ ? "result: FAIL at " + *failed_ : std::string("result: PASS")) << "\n";
    }
    return failed_ ? kExitFail : kExitPass;
  }

  json& doc() { return doc_; }

 private:
  json doc_;
  std::vector<std::string> lines_;
  std::optional<std::string> failed_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }

/// The model file, or a random model when only --seed is given.
json load_model_json(const Common& c, Report& rep, RandomModelShape shape = {}) {
  if (!c.model_path.empty()) {
    std::ifstream in(c.model_path);
    if (!in) throw InputError(c.model_path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    rep.input("model", ss.str());
    return parse_json_text(ss.str(), c.model_path);
  }
  if (!c.seed) throw InputError("a model file or --seed is required");
  json j = to_json(random_model(*c.seed, shape));
  rep.input("model", j.dump());
  rep.doc()["inputs"]["seed"] = *c.seed;
  return j;
}

double rel(const ScaledComplex& a, const ScaledComplex& b) { return a.is_zero() && b.is_zero() ? 0.0 : relative_error(a, b); }

int cmd_z_eval(const Common& c, const std::string& method, Report& rep) {
  IsingModel m = ising_from_json(load_model_json(c, rep));
  rep.diagnostic("vertices", m.graph.num_vertices());
  rep.diagnostic("edges", m.graph.num_edges());
  std::optional<ScaledComplex> brute, overlap;
  if (method == "brute" || method == "both") {
    auto t0 = std::chrono::steady_clock::now();
    brute = brute_force_z_ising(m, c.max_bits);
    rep.timing("brute", seconds_since(t0));
    rep.value("brute", *brute);
  }
  if (method == "overlap" || method == "both") {
    auto t0 = std::chrono::steady_clock::now();
    overlap = z_via_overlap(m, c.max_bits);
    rep.timing("overlap", seconds_since(t0));
    rep.value("overlap", *overlap);
  }
  if (brute && overlap) rep.check("overlap-vs-brute", rel(*overlap, *brute) <= kDisplayAgreement, rel(*overlap, *brute), kDisplayAgreement);
  return rep.finish(c.json_out);
}

void record_reduction(const ReductionResult& r, Report& rep) {
  const auto& d = r.diagnostics;
  rep.diagnostic("W", d.width);
  rep.diagnostic("H", d.height);
  rep.diagnostic("M", d.sites);
  rep.diagnostic("target_qubits", d.target_qubits);
  rep.diagnostic("circuit_gates", d.circuit_gates);
  rep.diagnostic("r", d.r);
  rep.diagnostic("r_prime", d.r_prime);
  rep.diagnostic("layout", json{{"wires", d.layout.wires},
                                {"logical_gates", d.layout.logical_gates},
                                {"logical_cz", d.layout.logical_cz},
                                {"routing_swaps", d.layout.routing_swaps},
                                {"bridges", d.layout.bridges},
                                {"x_measurements", d.layout.x_measurements},
                                {"y_measurements", d.layout.y_measurements},
                                {"z_measurements", d.layout.z_measurements}});
  rep.timing("compile", d.seconds_compile);
  rep.timing("branch", d.seconds_branch);
  rep.timing("lift", d.seconds_lift);
  rep.line("lattice " + std::to_string(d.width) + " x " + std::to_string(d.height) + " (" + std::to_string(d.sites) + " sites, r = " + std::to_string(d.r) + ")");
  rep.value("A_total", r.A_total);
}

int cmd_reduce(const Common& c, const std::string& out_path, Report& rep) {
  IsingModel m = ising_from_json(load_model_json(c, rep));
  ReductionResult r = reduce(m);
  record_reduction(r, rep);
  bool homogeneous = edge_ratios_homogeneous(r.instance);
  rep.check("homogeneity", homogeneous, homogeneous ? 0.0 : 1.0, 0.0);
  if (!out_path.empty()) {
    json j = to_json(r.instance);
    j["A_total"] = to_json(r.A_total);
    std::ofstream out(out_path);
    if (!out) throw InputError(out_path + ": cannot write file");
    out << j.dump(1) << "\n";
    rep.doc()["output"] = out_path;
    rep.line("wrote " + out_path);
  }
  return rep.finish(c.json_out);
}

int cmd_verify(const Common& c, bool corrupt, const std::string& instance_path, Report& rep) {
  IsingModel m = ising_from_json(load_model_json(c, rep));
  ReductionResult r;
  if (!instance_path.empty()) {
    json j = read_json_file(instance_path);
    rep.input("instance", j.dump());
    r.instance = instance_from_json(j);
    r.A_total = scaled_from_json(detail::field(j, "A_total", "instance"), "A_total");
    rep.value("A_total", r.A_total);
  } else {
    auto t0 = std::chrono::steady_clock::now();
    r = reduce(m);
    rep.timing("reduce", seconds_since(t0));
    record_reduction(r, rep);
  }
  if (corrupt) {
    // Negative control: negate one edge weight.
    auto& e = r.instance.edges.empty() ? r.instance.sites.front().w0 : r.instance.edges[r.instance.edges.size() / 2].u1;
    e = -e;
    rep.diagnostic("corrupted", true);
  }
  auto t0 = std::chrono::steady_clock::now();
  VerificationReport v = verify_reduction(m, r, c.max_bits);
  rep.timing("verify", seconds_since(t0));
  rep.timing("transfer_matrix", v.evaluation.seconds);
  rep.value("brute", v.z_brute);
  rep.value("overlap", v.z_overlap);
  rep.value("Z2D", v.z2d);
  rep.value("A_total*Z2D", v.reconstructed);
  rep.check("overlap", v.overlap_error <= kVerifyTolerance, v.overlap_error, kVerifyTolerance);
  rep.check("homogeneity", v.homogeneous, v.homogeneous ? 0.0 : 1.0, 0.0);
  rep.check("transfer-matrix", v.reduction_error <= kVerifyTolerance, v.reduction_error, kVerifyTolerance);
  return rep.finish(c.json_out);
}

int cmd_potts(const Common& c, Report& rep) {
  ClockModel m = clock_from_json(load_model_json(c, rep));
  rep.diagnostic("q", m.q);
  rep.diagnostic("vertices", m.graph.num_vertices());
  rep.diagnostic("edges", m.graph.num_edges());
  auto t0 = std::chrono::steady_clock::now();
  ScaledComplex brute = brute_force_z_clock(m, c.max_bits);
  rep.timing("brute", seconds_since(t0));
  t0 = std::chrono::steady_clock::now();
  ScaledComplex overlap = z_clock_via_overlap(m, c.max_bits);
  rep.timing("overlap", seconds_since(t0));
  rep.value("brute", brute);
  rep.value("overlap", overlap);
  rep.check("overlap-vs-brute", rel(overlap, brute) <= kDisplayAgreement, rel(overlap, brute), kDisplayAgreement);
  return rep.finish(c.json_out);
}

int cmd_demo(Common c, Report& rep) {
  if (!c.seed) c.seed = 1;
  c.model_path.clear();
  json j = load_model_json(c, rep);
  rep.doc()["model"] = j;
  rep.line("model " + j.dump());
  return cmd_verify(c, false, "", rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex-coupling Ising partition functions via a reduction to the 2D square lattice"};
  app.require_subcommand(1);
  std::vector<std::string> args(argv, argv + argc);

  Common common;
  std::string method = "both";
  std::string out_path;
  std::string instance_path;
  bool corrupt = false;

  auto add_common = [&](CLI::App* sub, bool model_arg) {
    if (model_arg) sub->add_option("model", common.model_path, "model JSON file (or use --seed)")->check(CLI::ExistingFile);
    sub->add_option("--seed", common.seed, "generate a random model from this seed");
    sub->add_option("--max-bits", common.max_bits, "enumeration bound override (spins)")->check(CLI::Range(1, 40));
    sub->add_flag("--json", common.json_out, "machine-readable report on stdout");
  };
  auto* z = app.add_subcommand("z-eval", "evaluate Z by enumeration and/or the overlap formula");
  add_common(z, true);
  z->add_option("--method", method, "brute | overlap | both")->check(CLI::IsMember({"brute", "overlap", "both"}));
  auto* red = app.add_subcommand("reduce", "emit the equivalent square-lattice instance");
  add_common(red, true);
  red->add_option("--out", out_path, "instance JSON output path");
  auto* ver = app.add_subcommand("verify", "run every stage and check Z_G = A_total * Z2D");
  add_common(ver, true);
  ver->add_option("--instance", instance_path, "check a previously emitted instance instead of reducing")->check(CLI::ExistingFile);
  ver->add_flag("--corrupt", corrupt, "negate one emitted edge weight (negative control)");
  auto* potts = app.add_subcommand("potts", "evaluate a clock or Potts model");
  add_common(potts, true);
  auto* demo = app.add_subcommand("demo", "verify the pipeline on a random model");
  add_common(demo, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitInput;
  }

  auto* sub = app.get_subcommands().front();
  Report rep(sub->get_name(), args);
  try {
    if (sub == z) return cmd_z_eval(common, method, rep);
    if (sub == red) return cmd_reduce(common, out_path, rep);
    if (sub == ver) return cmd_verify(common, corrupt, instance_path, rep);
    if (sub == potts) return cmd_potts(common, rep);
    return cmd_demo(common, rep);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
  } catch (const SizeBoundError& e) {
    std::cerr << (sub == ver ? "unverifiable size: " : "size bound: ") << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitInput;
}
