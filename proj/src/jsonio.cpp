#include "walg/jsonio.hpp"

namespace walg {

std::string weight_str(int w2) {
  if (w2 % 2 == 0) return std::to_string(w2 / 2);
  return std::to_string(w2) + "/2";
}

Json freport_json(const FReport& r) {
  Json j;
  j["f1_integral"] = r.f1;
  j["f2_squarefree"] = r.f2;
  j["f3_abelian"] = r.f3_abelian;
  j["f3_image"] = r.f3_image;
  j["pass"] = r.pass();
  j["min_poly"] = render_upoly(r.min_poly, "x", "t");
  j["kernel_dim"] = r.kernel_dim;
  j["image_rank"] = r.image_rank;
  j["g0_dim"] = r.g0_dim;
  return j;
}

Json algebra_json(const LieAlg& g, const AdxGrading& gr) {
  Json j;
  j["type"] = g.type;
  j["dim"] = g.dim;
  j["cartan_dim"] = g.cartan_dim;
  j["depth"] = weight_str(gr.depth2);
  j["integral"] = gr.integral;
  Json pieces = Json::object();
  for (const auto& [d2, ix] : gr.pieces) {
    Json labels = Json::array();
    for (int i : ix) labels.push_back(g.labels[i]);
    pieces[weight_str(d2)] = labels;
  }
  j["pieces"] = pieces;
  Json pi = Json::array();
  for (int i : gr.Pi) pi.push_back(g.labels[i]);
  j["Pi"] = pi;
  Json pih = Json::array(), pi1 = Json::array();
  for (int i : gr.Pi_half) pih.push_back(g.labels[i]);
  for (int i : gr.Pi_1) pi1.push_back(g.labels[i]);
  j["Pi_half"] = pih;
  j["Pi_1"] = pi1;
  return j;
}

Json report_json(const VerifyReport& r) {
  Json j;
  j["identity"] = r.identity;
  j["truncation"] = r.N;
  j["window"] = r.window;
  j["checked"] = r.checked;
  j["pass"] = r.ok;
  j["counterexample"] = r.counterexample;
  return j;
}

Json main2_json(const Main2Report& r) {
  Json j;
  j["pairing"] = report_json(r.pairing);
  j["commutator"] = report_json(r.commutator);
  j["cotangent"] = report_json(r.cotangent);
  j["pass"] = r.pass();
  return j;
}

Json kernel_json(const KernelBasis& kb) {
  Json j;
  j["weight2_max"] = kb.weight2_max;
  Json per = Json::array();
  for (const auto& [w2, basis] : kb.by_weight2) {
    Json e;
    e["weight"] = weight_str(w2);
    e["dim"] = (int)basis.size();
    Json b = Json::array();
    for (const DiffPoly& p : basis) b.push_back(p.render());
    e["basis"] = b;
    per.push_back(e);
  }
  j["kernel"] = per;
  Json bad = Json::array();
  for (const Poly& p : kb.bad_k) bad.push_back(render_poly(p, "k"));
  j["bad_k"] = bad;
  return j;
}

Json generators_json(const std::map<int, std::vector<DiffPoly>>& gens) {
  Json per = Json::array();
  for (const auto& [w2, basis] : gens) {
    Json e;
    e["weight"] = weight_str(w2);
    e["dim"] = (int)basis.size();
    Json b = Json::array();
    for (const DiffPoly& p : basis) b.push_back(p.render());
    e["basis"] = b;
    per.push_back(e);
  }
  return per;
}

Json hierarchy_json(const Hierarchy& h) {
  Json j;
  Json hs = Json::array();
  for (size_t i = 0; i < h.hams.size(); ++i) {
    Json e;
    e["weight"] = h.weight_of[i];
    e["density"] = h.hams[i].render();
    hs.push_back(e);
  }
  j["hamiltonians"] = hs;
  Json ps = Json::array();
  for (const auto& [a, b, ok] : h.pairs) {
    Json e;
    e["i"] = a;
    e["j"] = b;
    e["commute"] = ok;
    ps.push_back(e);
  }
  j["pairs"] = ps;
  j["all_commute"] = h.all_commute;
  return j;
}

}  // namespace walg
