#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "deltachow/io.hpp"
#include "deltachow/json_io.hpp"

using namespace deltachow;

namespace {

struct GlobalOpts {
  bool json = false;
  std::string field = "Q";
  double deadline = 0.0;
  std::uint64_t seed = 20100815;
  std::string trace_gb;
  ResourceGuard guard;

  FieldKind field_kind() const {
    if (field == "Q") return FieldKind::Rationals;
    if (field == "Qt") return FieldKind::RationalFunctionsT;
    throw CLI::ValidationError("--field must be Q or Qt");
  }
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string piece = s.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!piece.empty()) out.push_back(piece);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<int> split_ints(const std::string& s) {
  std::vector<int> out;
  for (const auto& piece : split_commas(s)) out.push_back(std::stoi(piece));
  return out;
}

RingPtr make_ring(const GlobalOpts& g, const std::string& ring_spec) {
  auto names = split_commas(ring_spec);
  if (names.empty()) throw MathError("bad_ring", "--ring needs at least one variable");
  return RingContext::make(g.field_kind(), names);
}

std::vector<DiffPoly> parse_all(const RingPtr& ring, const std::vector<std::string>& texts) {
  std::vector<DiffPoly> out;
  for (const auto& t : texts) out.push_back(parse_poly(t, ring));
  return out;
}

DiffChain charset_or_die(std::vector<DiffPoly> polys, const Ranking& rk) {
  CharsetResult cs = charset(std::move(polys), rk);
  if (cs.unit_ideal || !cs.chain)
    throw MathError("unit_ideal", "the system generates the unit ideal");
  return *cs.chain;
}

void emit(const GlobalOpts& g, const Json& j, const std::string& text) {
  if (g.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::function<void(const GroebnerBasis&)> make_trace(GlobalOpts& g) {
  if (g.trace_gb.empty()) return {};
  auto path = g.trace_gb;
  return [path](const GroebnerBasis& gb) {
    std::ofstream out(path, std::ios::app);
    Json j;
    Json gens = Json::array();
    for (const auto& p : gb.generators) gens.push_back(format_poly(p));
    j["generators"] = gens;
    out << j.dump() << "\n";
  };
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MathError("io_error", "cannot open " + path);
  Json j;
  in >> j;
  return j;
}

std::string chow_text(const ChowForm& C) {
  std::string out = "F = " + format_poly(C.poly) + "\n";
  out += "n=" + std::to_string(C.n) + " d=" + std::to_string(C.d) +
         " h=" + std::to_string(C.h) + " g=" + std::to_string(C.g) + "\n";
  out += "block_orders=[";
  for (std::size_t i = 0; i < C.blocks.size(); ++i)
    out += (i ? "," : "") + std::to_string(C.blocks[i].order);
  out += "] block_degrees=[";
  for (std::size_t i = 0; i < C.blocks.size(); ++i)
    out += (i ? "," : "") + std::to_string(C.blocks[i].degree);
  out += "] nterms=" + std::to_string(C.poly.nterms()) + "\n";
  for (const auto& w : C.warnings) out += "warning: " + w + "\n";
  return out;
}

std::vector<GenericShape> shapes_from(const std::string& orders, const std::string& degrees) {
  auto os = split_ints(orders);
  auto ds = split_ints(degrees);
  if (os.size() != ds.size() || os.empty())
    throw MathError("bad_input", "--orders and --degrees must list the same count");
  std::vector<GenericShape> shapes;
  for (std::size_t i = 0; i < os.size(); ++i) shapes.push_back({os[i], ds[i]});
  return shapes;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delta-chow: differential Chow forms, generalized Chow forms and "
               "differential resultants for characteristic-set presented ideals"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_flag("--json", g.json, "machine-readable JSON output");
  app.add_option("--field", g.field, "base field: Q or Qt")->default_str("Q");
  app.add_option("--deadline", g.deadline, "cooperative deadline in seconds");
  app.add_option("--seed", g.seed, "seed for the numeric fiber sampler");
  app.add_option("--trace-gb", g.trace_gb, "append intermediate Groebner bases to a JSONL file");

  std::string ring_spec, ranking_spec = "orderly";
  std::vector<std::string> polys, chain_polys;
  std::string orders, degrees, chow_file, ideal_file, index_spec, support_file;
  int nvars = 1;
  bool with_matrix = false;
  int fiber_samples = 5;

  auto* c_charset = app.add_subcommand("charset", "Ritt-Wu characteristic set");
  c_charset->add_option("--ring", ring_spec)->required();
  c_charset->add_option("--ranking", ranking_spec);
  c_charset->add_option("polys", polys, "generators")->required();

  auto* c_dims = app.add_subcommand("dims", "dimension and order of sat(charset)");
  c_dims->add_option("--ring", ring_spec)->required();
  c_dims->add_option("polys", polys)->required();

  auto* c_reduce = app.add_subcommand("reduce", "Ritt reduction modulo a chain");
  c_reduce->add_option("--ring", ring_spec)->required();
  c_reduce->add_option("--ranking", ranking_spec);
  c_reduce->add_option("--chain", chain_polys, "chain elements")->required();
  c_reduce->add_option("--poly", polys, "polynomial to reduce")->required();

  auto* c_chow = app.add_subcommand("chow", "differential Chow form via elimination");
  c_chow->add_option("--ring", ring_spec)->required();
  c_chow->add_option("polys", polys)->required();

  auto* c_hyper = app.add_subcommand("chow-hyper", "hypersurface Chow form, closed formula");
  c_hyper->add_option("--ring", ring_spec)->required();
  c_hyper->add_option("polys", polys)->required();

  auto* c_gchow = app.add_subcommand("gchow", "generalized Chow form");
  c_gchow->add_option("--ring", ring_spec)->required();
  c_gchow->add_option("--orders", orders)->required();
  c_gchow->add_option("--degrees", degrees)->required();
  c_gchow->add_option("polys", polys)->required();

  auto* c_dres = app.add_subcommand("dres", "differential resultant of n+1 generic polynomials");
  c_dres->add_option("--n", nvars)->required();
  c_dres->add_option("--orders", orders)->required();
  c_dres->add_option("--degrees", degrees)->required();
  c_dres->add_flag("--matrix", with_matrix, "also emit the matrix certificate (fixed instance)");

  auto* c_verify = app.add_subcommand("verify", "verification report for a Chow form");
  c_verify->add_option("--chow", chow_file)->required();
  c_verify->add_option("--ideal", ideal_file);
  c_verify->add_option("--fiber-samples", fiber_samples);

  auto* c_quasi = app.add_subcommand("quasivariety", "delta-Chow quasi-variety relations (g = 1)");
  c_quasi->add_option("--index", index_spec, "n,d,h,g,m")->required();
  c_quasi->add_option("--support", support_file, "JSON array of support monomials")->required();

  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (g.deadline > 0) g.guard.set_deadline(g.deadline);

    if (*c_charset) {
      RingPtr ring = make_ring(g, ring_spec);
      Ranking rk = Ranking::parse(ring, ranking_spec);
      DiffChain chain = charset_or_die(parse_all(ring, polys), rk);
      Json j;
      j["chain"] = chain_json(chain);
      std::string text;
      for (const auto& e : chain.elements()) text += format_poly(e.poly) + "\n";
      if (rk.kind() == RankingKind::Orderly) {
        DimOrder d = dim_order(chain);
        j["dimension"] = d.dimension;
        j["order"] = d.order;
        Json ps = Json::array();
        for (auto v : d.parametric_set) ps.push_back(ring->name(v));
        j["parametric_set"] = ps;
        text += "dimension=" + std::to_string(d.dimension) +
                " order=" + std::to_string(d.order) + "\n";
      }
      emit(g, j, text);
    } else if (*c_dims) {
      RingPtr ring = make_ring(g, ring_spec);
      DiffChain chain = charset_or_die(parse_all(ring, polys), Ranking::orderly(ring));
      DimOrder d = dim_order(chain);
      Json j;
      j["dim"] = d.dimension;
      j["order"] = d.order;
      Json ps = Json::array();
      for (auto v : d.parametric_set) ps.push_back(ring->name(v));
      j["parametric_set"] = ps;
      emit(g, j,
           "dim=" + std::to_string(d.dimension) + " order=" + std::to_string(d.order) + "\n");
    } else if (*c_reduce) {
      RingPtr ring = make_ring(g, ring_spec);
      Ranking rk = Ranking::parse(ring, ranking_spec);
      DiffChain chain(parse_all(ring, chain_polys), rk);
      DiffPoly f = parse_poly(polys.at(0), ring);
      ReductionCertificate cert = ritt_reduce(f, chain);
      Json j;
      j["remainder"] = poly_json(cert.remainder);
      Json exps = Json::array();
      for (auto [d, e] : cert.multiplier_exponents) {
        Json pe;
        pe["separant"] = d;
        pe["initial"] = e;
        exps.push_back(pe);
      }
      j["exponents"] = exps;
      j["is_zero"] = cert.remainder.is_zero();
      emit(g, j, "remainder = " + format_poly(cert.remainder) + "\n");
    } else if (*c_chow) {
      RingPtr ring = make_ring(g, ring_spec);
      DiffChain chain = charset_or_die(parse_all(ring, polys), Ranking::orderly(ring));
      ChowForm C = chow_form(chain, g.guard, make_trace(g));
      emit(g, chow_json(C), chow_text(C));
    } else if (*c_hyper) {
      RingPtr ring = make_ring(g, ring_spec);
      ChowForm C = chow_hypersurface(parse_poly(polys.at(0), ring));
      emit(g, chow_json(C), chow_text(C));
    } else if (*c_gchow) {
      RingPtr ring = make_ring(g, ring_spec);
      DiffChain chain = charset_or_die(parse_all(ring, polys), Ranking::orderly(ring));
      ChowForm C = generalized_chow(chain, ring, shapes_from(orders, degrees), g.guard,
                                    make_trace(g));
      emit(g, chow_json(C), chow_text(C));
    } else if (*c_dres) {
      std::vector<std::string> names;
      for (int i = 1; i <= nvars; ++i) names.push_back("y" + std::to_string(i));
      RingPtr ring = RingContext::make(g.field_kind(), names);
      ChowForm R = generalized_chow(std::nullopt, ring, shapes_from(orders, degrees),
                                    g.guard, make_trace(g));
      Json j = chow_json(R);
      std::string text = chow_text(R);
      if (with_matrix) {
        MatrixCertificate cert = resultant_matrix_1var(R, g.guard);
        j["matrix_certificate"] = matrix_json(cert);
        text += "matrix: " + std::to_string(cert.matrix.size()) + "x" +
                std::to_string(cert.matrix.size()) +
                ", det = R * (" + format_poly(cert.extraneous) + ")\n";
      }
      emit(g, j, text);
    } else if (*c_verify) {
      ChowForm C = chow_from_json(read_json_file(chow_file));
      VerificationReport rep = verify_chow_invariants(C);
      std::optional<DiffChain> chain;
      if (!ideal_file.empty()) chain = chain_from_json(read_json_file(ideal_file));
      if (chain) {
        rep.add("defining_identity",
                defining_identity_holds(C, &*chain) ? CheckStatus::Pass : CheckStatus::Fail);
        rep.add("generic_point",
                generic_point_check(C, *chain) ? CheckStatus::Pass : CheckStatus::Fail);
        bool linear0 = C.shapes[0] == GenericShape{0, 1};
        if (C.d == 0 && linear0 && C.uring()->field() == FieldKind::Rationals) {
          FiberCheckResult fr = numeric_fiber_check(C, *chain, fiber_samples, g.seed);
          rep.add("numeric_fiber",
                  fr.max_residual < 1e-9 ? CheckStatus::Pass : CheckStatus::Fail,
                  "max residual " + std::to_string(fr.max_residual));
        } else {
          rep.add("numeric_fiber", CheckStatus::Skipped,
                  "applies to dimension-zero hyperplane forms over Q");
        }
      } else if (C.d == C.n) {
        // a resultant: the defining ideal is the zero ideal
        rep.add("defining_identity",
                defining_identity_holds(C, nullptr) ? CheckStatus::Pass : CheckStatus::Fail,
                "zero ideal");
        rep.add("generic_point", CheckStatus::Skipped, "zero ideal");
        rep.add("numeric_fiber", CheckStatus::Skipped, "zero ideal");
      } else {
        rep.add("defining_identity", CheckStatus::Skipped, "no ideal supplied");
        rep.add("generic_point", CheckStatus::Skipped, "no ideal supplied");
        rep.add("numeric_fiber", CheckStatus::Skipped, "no ideal supplied");
      }
      std::string text;
      for (const auto& c : rep.checks) {
        text += c.name + ": " +
                (c.status == CheckStatus::Pass
                     ? "pass"
                     : (c.status == CheckStatus::Fail ? "FAIL" : "skipped"));
        if (!c.witness.empty()) text += " (" + c.witness + ")";
        text += "\n";
      }
      emit(g, report_json(rep), text);
      if (!rep.all_passed()) return 1;
    } else if (*c_quasi) {
      auto idx = split_ints(index_spec);
      if (idx.size() != 5) throw MathError("bad_input", "--index wants n,d,h,g,m");
      if (idx[3] != 1)
        throw MathError("bad_input", "only leading differential degree g = 1 is supported");
      Json sup = read_json_file(support_file);
      std::vector<std::string> support;
      for (const auto& s : sup) support.push_back(s.get<std::string>());
      ChowTemplate T = build_template(idx[0], idx[1], idx[2], idx[4], support);
      QuasiVarietyPresentation Q = cv1_generate(T, g.guard);
      std::string text;
      for (const auto& r : Q.relations) text += format_poly(r) + "\n";
      text += "excluded:";
      for (std::uint32_t v : Q.excluded) text += " " + T.ring->name(v);
      text += "\n";
      emit(g, quasivariety_json(Q), text);
    }
  } catch (const SyntaxError& e) {
    Json j;
    j["error"] = "syntax_error";
    j["detail"] = e.what();
    std::cerr << j.dump() << "\n";
    return 2;
  } catch (const MathError& e) {
    Json j;
    j["error"] = e.code();
    j["detail"] = e.what();
    std::cout << j.dump() << "\n";
    return 1;
  }
  return 0;
}
