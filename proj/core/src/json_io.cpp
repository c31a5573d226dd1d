#include "deltachow/json_io.hpp"

#include "deltachow/error.hpp"
#include "deltachow/io.hpp"

namespace deltachow {

Json poly_json(const DiffPoly& p) {
  // format_poly(Json) is the single source of truth for the wire shape
  return Json::parse(format_poly(p, FormatStyle::Json));
}

Json chain_json(const DiffChain& chain) {
  Json j;
  j["ranking"] = chain.ranking().spec();
  Json polys = Json::array();
  for (const auto& e : chain.elements()) polys.push_back(poly_json(e.poly));
  j["elements"] = polys;
  Json leaders = Json::array();
  for (const auto& e : chain.elements())
    leaders.push_back(chain.ring()->dervar_name(e.leader));
  j["leaders"] = leaders;
  return j;
}

Json chow_json(const ChowForm& C) {
  Json j;
  j["poly"] = poly_json(C.poly);
  j["n"] = C.n;
  j["d"] = C.d;
  j["h"] = C.h;
  j["g"] = C.g;
  Json shapes = Json::array();
  for (const auto& s : C.shapes) {
    Json sh;
    sh["order"] = s.order;
    sh["degree"] = s.degree;
    shapes.push_back(sh);
  }
  j["shapes"] = shapes;
  Json degs = Json::array(), ords = Json::array();
  for (const auto& b : C.blocks) {
    degs.push_back(b.degree);
    ords.push_back(b.order);
  }
  j["block_degrees"] = degs;
  j["block_orders"] = ords;
  Json base = Json::array();
  for (std::uint32_t i = 0; i < C.base_ring->size(); ++i)
    base.push_back(C.base_ring->name(i));
  j["base_vars"] = base;
  j["nterms"] = C.poly.nterms();
  Json warn = Json::array();
  for (const auto& w : C.warnings) warn.push_back(w);
  j["warnings"] = warn;
  return j;
}

Json report_json(const VerificationReport& rep) {
  Json j;
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json jc;
    jc["name"] = c.name;
    jc["status"] = c.status == CheckStatus::Pass
                       ? "pass"
                       : (c.status == CheckStatus::Fail ? "fail" : "skipped");
    jc["witness"] = c.witness;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  j["all_passed"] = rep.all_passed();
  return j;
}

Json quasivariety_json(const QuasiVarietyPresentation& Q) {
  Json j;
  Json rel = Json::array();
  for (const auto& r : Q.relations) rel.push_back(format_poly(r));
  j["relations"] = rel;
  Json red = Json::array();
  for (const auto& r : Q.interreduced()) red.push_back(format_poly(r));
  j["interreduced"] = red;
  Json exc = Json::array();
  for (std::uint32_t v : Q.excluded) exc.push_back(Q.tmpl.ring->name(v));
  j["excluded"] = exc;
  return j;
}

Json matrix_json(const MatrixCertificate& cert) {
  Json j;
  j["rows"] = cert.row_labels;
  j["cols"] = cert.col_labels;
  Json m = Json::array();
  for (const auto& row : cert.matrix) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(format_poly(e));
    m.push_back(r);
  }
  j["matrix"] = m;
  j["determinant"] = format_poly(cert.determinant);
  j["extraneous"] = format_poly(cert.extraneous);
  return j;
}

RingPtr ring_from_json(const Json& j) {
  FieldKind field =
      j.at("field").get<std::string>() == "Qt" ? FieldKind::RationalFunctionsT
                                               : FieldKind::Rationals;
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  for (const auto& v : j.at("ring")) {
    names.push_back(v.at("name").get<std::string>());
    kinds.push_back(v.at("kind").get<std::string>() == "parameter"
                        ? VarKind::Parameter
                        : VarKind::Main);
  }
  return RingContext::make(field, std::move(names), std::move(kinds));
}

DiffPoly poly_from_json(const Json& j) {
  RingPtr ring = ring_from_json(j);
  if (j.contains("text")) return parse_poly(j.at("text").get<std::string>(), ring);
  // reconstruct from the term list
  std::string text;
  for (const auto& t : j.at("terms")) {
    std::string mono;
    for (const auto& [k, v] : t.at("monomial").items()) {
      if (!mono.empty()) mono += "*";
      mono += k;
      if (v.get<int>() > 1) mono += "^" + std::to_string(v.get<int>());
    }
    std::string piece = "(" + t.at("coeff").get<std::string>() + ")";
    if (!mono.empty()) piece += "*" + mono;
    text += text.empty() ? piece : "+" + piece;
  }
  if (text.empty()) text = "0";
  return parse_poly(text, ring);
}

DiffChain chain_from_json(const Json& j) {
  const auto& els = j.at("elements");
  if (els.empty()) throw MathError("bad_input", "empty chain in JSON");
  std::vector<DiffPoly> polys;
  RingPtr ring;
  for (const auto& e : els) {
    DiffPoly p = poly_from_json(e);
    if (!ring) ring = p.ring();
    polys.push_back(p.mapped_by_name(ring));
  }
  Ranking rk = Ranking::parse(ring, j.value("ranking", std::string("orderly")));
  return DiffChain(std::move(polys), std::move(rk));
}

ChowForm chow_from_json(const Json& j) {
  std::vector<std::string> base_names;
  for (const auto& v : j.at("base_vars")) base_names.push_back(v.get<std::string>());
  FieldKind field = j.at("poly").at("field").get<std::string>() == "Qt"
                        ? FieldKind::RationalFunctionsT
                        : FieldKind::Rationals;
  RingPtr base = RingContext::make(field, base_names);
  std::vector<GenericShape> shapes;
  for (const auto& s : j.at("shapes"))
    shapes.push_back({s.at("order").get<int>(), s.at("degree").get<int>()});
  DiffPoly poly = poly_from_json(j.at("poly"));
  return assemble_chow_form(std::move(base), std::move(shapes), poly);
}

}  // namespace deltachow
