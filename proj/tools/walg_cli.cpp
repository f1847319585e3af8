// walg: batch front end for the W-algebra engine.
//
// Subcommands: algebra, wgen, bracket, verify, hier. Identical invocations
// produce byte-identical output; OMP_NUM_THREADS controls the linear-algebra
// thread count. Exit codes: 0 success/pass, 1 verification failure, 2 usage
// or configuration error.
#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "walg/jsonio.hpp"

using namespace walg;

namespace {

struct Config {
  std::string type = "A1";
  std::string nilpotent = "principal";
  std::vector<int> partition;
  std::string y = "default";
  std::string level = "symbolic";
  std::string format = "text";
  int weight_max = 2;
  int N = 4;
  unsigned long seed = 12345;
  bool generators = false;
  std::string suite = "axioms";
  std::vector<int> weights{2, 4};
  std::string left, right;
};

LieAlg make_alg(const Config& c) {
  if (c.type.rfind("gl", 0) == 0) return build_reductive(c.type);
  return build_simple(c.type);
}

Sl2Triple make_triple(const LieAlg& g, const Config& c) {
  if (c.nilpotent == "principal") return principal_triple(g);
  if (c.nilpotent == "partition") {
    if (c.partition.empty())
      throw std::invalid_argument(
          "--partition is required with --nilpotent partition");
    return partition_triple(g, c.partition);
  }
  throw std::invalid_argument("unknown nilpotent spec: " + c.nilpotent);
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q(s);
  q.canonicalize();
  return q;
}

Elt make_y(const LieAlg& g, const AdxGrading& gr, const Config& c) {
  if (c.y == "default") return default_y(g, gr);
  if (c.y == "zero" || c.y == "0") return zero_elt(g);
  for (int i = 0; i < g.dim; ++i)
    if (g.labels[i] == c.y) return basis_elt(g, i);
  Elt v = zero_elt(g);
  std::stringstream ss(c.y);
  std::string item;
  int i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= g.dim)
      throw std::invalid_argument("y has more coefficients than dim g");
    v[i++] = parse_rational(item);
  }
  return v;
}

RatFunc make_level(const Config& c) {
  if (c.level == "symbolic") return RatFunc::sym();
  return RatFunc(parse_rational(c.level));
}

Json config_json(const Config& c) {
  Json j;
  j["type"] = c.type;
  j["nilpotent"] = c.nilpotent;
  j["partition"] = c.partition;
  j["y"] = c.y;
  j["level"] = c.level;
  j["seed"] = c.seed;
  return j;
}

Json doc_head(const Config& c, const std::string& command) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["config"] = config_json(c);
  return j;
}

const char* yn(bool b) { return b ? "yes" : "no"; }

int cmd_algebra(const Config& c) {
  LieAlg g = make_alg(c);
  Sl2Triple t = make_triple(g, c);
  AdxGrading gr = grade(g, t);
  FReport fr = check_condition_F(g, t, gr, make_y(g, gr, c));
  if (c.format == "json") {
    Json j = doc_head(c, "algebra");
    j["algebra"] = algebra_json(g, gr);
    j["condition_F"] = freport_json(fr);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << g.type << ": dim " << g.dim << ", rank " << g.cartan_dim
            << "\n";
  std::cout << "grading: depth " << weight_str(gr.depth2)
            << (gr.integral ? " (integral)" : " (half-integral)") << "\n";
  for (const auto& [d2, ix] : gr.pieces) {
    std::cout << "  deg " << weight_str(d2) << ":";
    for (int i : ix) std::cout << " " << g.labels[i];
    std::cout << "\n";
  }
  std::cout << "Pi:";
  for (int i : gr.Pi) std::cout << " " << g.labels[i];
  std::cout << "\n";
  std::cout << "condition (F): " << (fr.pass() ? "pass" : "fail") << " [F1 "
            << yn(fr.f1) << ", F2 " << yn(fr.f2) << ", F3 abelian "
            << yn(fr.f3_abelian) << ", F3 image " << yn(fr.f3_image) << "]\n";
  std::cout << "min poly of ad_s: " << render_upoly(fr.min_poly, "x", "t")
            << "\n";
  return 0;
}

int cmd_wgen(const Config& c) {
  if (c.weight_max < 0)
    throw std::invalid_argument("weight_max must be nonnegative");
  if (c.weight_max > 6)
    throw std::invalid_argument(
        "resource budget exceeded: weight_max is capped at 6");
  LieAlg g = make_alg(c);
  Sl2Triple t = make_triple(g, c);
  WSetup S = build_w_setup(g, t, make_level(c));
  KernelBasis kb = joint_kernel(S, 2 * c.weight_max);
  std::map<int, std::vector<DiffPoly>> gens;
  if (c.generators) gens = kernel_generators(S, kb);
  if (c.format == "json") {
    Json j = doc_head(c, "wgen");
    j["weight_max"] = c.weight_max;
    j["kernel"] = kernel_json(kb);
    if (c.generators) j["generators"] = generators_json(gens);
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "joint kernel up to weight " << c.weight_max << ":\n";
  for (const auto& [w2, basis] : kb.by_weight2) {
    std::cout << "  weight " << weight_str(w2) << " (dim " << basis.size()
              << "):\n";
    for (const DiffPoly& p : basis) std::cout << "    " << p.render() << "\n";
  }
  std::cout << "excluded k:";
  if (kb.bad_k.empty()) std::cout << " none";
  for (const Poly& p : kb.bad_k)
    std::cout << " roots of " << render_poly(p, "k");
  std::cout << "\n";
  if (c.generators) {
    std::cout << "generators modulo d-images:\n";
    for (const auto& [w2, basis] : gens) {
      std::cout << "  weight " << weight_str(w2) << " (dim " << basis.size()
                << "):\n";
      for (const DiffPoly& p : basis)
        std::cout << "    " << p.render() << "\n";
    }
  }
  return 0;
}

int cmd_bracket(const Config& c) {
  LieAlg g = make_alg(c);
  auto P = affine_pva(g, make_level(c));
  DiffPoly f = parse_diffpoly(&P->vt, c.left);
  DiffPoly h = parse_diffpoly(&P->vt, c.right);
  LambdaPoly b = master_bracket(f, h, P->H);
  if (c.format == "json") {
    Json j = doc_head(c, "bracket");
    j["left"] = f.render();
    j["right"] = h.render();
    Json coeffs = Json::array();
    for (int s = 0; s <= b.degree(); ++s) coeffs.push_back(b.coeff(s).render());
    j["coefficients"] = coeffs;
    j["result"] = b.render();
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "{" << f.render() << " lam " << h.render()
            << "} = " << b.render() << "\n";
  return 0;
}

int hierarchy_common(const Config& c, Json* out, std::string* text) {
  if (c.weights.empty())
    throw std::invalid_argument("--weights must list at least one weight");
  for (int w : c.weights)
    if (w < 1 || w > 6)
      throw std::invalid_argument("hierarchy weights must lie in 1..6");
  LieAlg g = make_alg(c);
  Sl2Triple t = make_triple(g, c);
  WSetup S = build_w_setup(g, t, make_level(c));
  int wm = *std::max_element(c.weights.begin(), c.weights.end());
  KernelBasis kb = joint_kernel(S, 2 * wm);
  Hierarchy h = hamiltonians(S, kb, c.weights);
  *out = hierarchy_json(h);
  std::ostringstream os;
  os << "hamiltonians:\n";
  for (size_t i = 0; i < h.hams.size(); ++i)
    os << "  weight " << h.weight_of[i] << ": " << h.hams[i].render() << "\n";
  for (const auto& [a, b, ok] : h.pairs)
    os << "[H" << a << ", H" << b << "] "
       << (ok ? "= 0" : "does not vanish") << "\n";
  os << (h.all_commute ? "all brackets vanish\n" : "commutativity fails\n");
  *text = os.str();
  return h.all_commute && !h.hams.empty() ? 0 : 1;
}

int cmd_hier(const Config& c) {
  Json payload;
  std::string text;
  int rc = hierarchy_common(c, &payload, &text);
  if (c.format == "json") {
    Json j = doc_head(c, "hier");
    j["weights"] = c.weights;
    j["hierarchy"] = payload;
    j["pass"] = rc == 0;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  return rc;
}

int cmd_verify(const Config& c) {
  Json reports = Json::array();
  std::ostringstream os;
  bool pass = false;
  if (c.suite == "axioms") {
    LieAlg g = make_alg(c);
    auto P = affine_pva(g, make_level(c));
    AxiomWitness sk = check_skew(P->H), ja = check_jacobi(P->H);
    pass = sk.ok && ja.ok;
    Json a, b;
    a["identity"] = "skew";
    a["pass"] = sk.ok;
    b["identity"] = "jacobi";
    b["pass"] = ja.ok;
    reports.push_back(a);
    reports.push_back(b);
    os << "skew: " << (sk.ok ? "pass" : "fail") << "\n";
    os << "jacobi: " << (ja.ok ? "pass" : "fail") << "\n";
  } else if (c.suite == "geometry") {
    LieAlg g = make_alg(c);
    Sl2Triple t = make_triple(g, c);
    AdxGrading gr = grade(g, t);
    auto C = build_loop_ctx(g, t, make_y(g, gr, c), make_level(c), c.N);
    VerifyReport l31 = verify_lemma_3_1_suite(*C);
    Main2Report m2 = verify_main2(*C);
    VerifyReport l42 = verify_lemma_4_2(*C);
    pass = l31.ok && m2.pass() && l42.ok;
    reports.push_back(report_json(l31));
    reports.push_back(report_json(m2.pairing));
    reports.push_back(report_json(m2.commutator));
    reports.push_back(report_json(m2.cotangent));
    reports.push_back(report_json(l42));
    for (const auto& r : {l31, m2.pairing, m2.commutator, m2.cotangent, l42})
      os << r.identity << ": " << (r.ok ? "pass" : "fail") << " (checked "
         << r.checked << ", window " << r.window << ")\n";
  } else if (c.suite == "hierarchy") {
    Json payload;
    std::string text;
    pass = hierarchy_common(c, &payload, &text) == 0;
    Json e;
    e["identity"] = "hierarchy";
    e["pass"] = pass;
    e["detail"] = payload;
    reports.push_back(e);
    os << text;
  } else {
    throw std::invalid_argument("unknown suite: " + c.suite);
  }
  if (c.format == "json") {
    Json j = doc_head(c, "verify");
    j["suite"] = c.suite;
    j["reports"] = reports;
    j["pass"] = pass;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << os.str();
    std::cout << "suite " << c.suite << ": " << (pass ? "pass" : "fail")
              << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"classical W-algebra workbench"};
  app.require_subcommand(1);
  Config c;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--type", c.type, "algebra: A1..A9, C2..C9, gl1, gl2");
    s->add_option("--nilpotent", c.nilpotent, "principal | partition");
    s->add_option("--partition", c.partition,
                  "partition parts, e.g. --partition 2,2")
        ->delimiter(',');
    s->add_option("--y", c.y,
                  "default | zero | basis label | comma-separated rationals");
    s->add_option("--level", c.level, "symbolic | rational value");
    s->add_option("--format", c.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    s->add_option("--seed", c.seed, "seed echoed into reports");
  };
  CLI::App* alg =
      app.add_subcommand("algebra", "grading and condition (F) report");
  add_common(alg);
  CLI::App* wg = app.add_subcommand("wgen", "joint screening kernel");
  add_common(wg);
  wg->add_option("--weight-max", c.weight_max, "top plain weight (<= 6)");
  wg->add_flag("--generators", c.generators,
               "also report generators modulo d-images");
  CLI::App* br =
      app.add_subcommand("bracket", "lambda bracket in V^k(g)");
  add_common(br);
  br->add_option("--left", c.left, "left element")->required();
  br->add_option("--right", c.right, "right element")->required();
  CLI::App* ver =
      app.add_subcommand("verify", "axioms | geometry | hierarchy suite");
  add_common(ver);
  ver->add_option("--suite", c.suite, "axioms | geometry | hierarchy");
  ver->add_option("-N,--truncation", c.N, "loop truncation order");
  ver->add_option("--weights", c.weights, "hierarchy weights")->delimiter(',');
  CLI::App* hi =
      app.add_subcommand("hier", "hierarchy commutativity certificate");
  add_common(hi);
  hi->add_option("--weights", c.weights, "hamiltonian weights")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (alg->parsed()) return cmd_algebra(c);
    if (wg->parsed()) return cmd_wgen(c);
    if (br->parsed()) return cmd_bracket(c);
    if (ver->parsed()) return cmd_verify(c);
    if (hi->parsed()) return cmd_hier(c);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
