#include "tori/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace tori::report {

namespace {

std::string pair_string(const std::array<int, 2>& p) {
  return "{" + std::to_string(p[0] + 1) + "," + std::to_string(p[1] + 1) + "}";
}

Json one_based(const std::array<int, 3>& t) { return Json::array({t[0] + 1, t[1] + 1, t[2] + 1}); }

Json ball(const ComplexBall& b) {
  return Json{{"re", rational(b.re)}, {"im", rational(b.im)}, {"rad", rational(b.rad)}, {"approx", b.str(15)}};
}

Json orbits_json(const std::vector<PairOrbit>& orbits) {
  Json out = Json::array();
  for (const auto& o : orbits) {
    Json pairs = Json::array();
    for (const auto& p : o) pairs.push_back(pair_string(p));
    out.push_back(Json{{"size", o.size()}, {"pairs", pairs}});
  }
  return out;
}

Json settings_json(const Settings& s) {
  return Json{{"precision_bits", s.precision_bits}, {"a_max", s.a_max}, {"c_max", s.c_max}};
}

const char* modulus_json(ModulusClass m) { return modulus_name(m); }

IntPoly parse_poly(const std::string& s) { return IntPoly::parse(s); }

Triple parse_triple(const std::string& s) {
  std::array<int, 3> t{};
  std::stringstream in(s);
  std::string item;
  int k = 0;
  while (std::getline(in, item, ',')) {
    if (k == 3) throw Error(Errc::ParseError, "triple needs exactly three labels");
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 1 || v > 6) throw Error(Errc::ParseError, "labels are 1..6");
      t[k++] = v - 1;
    } catch (const std::logic_error&) {
      throw Error(Errc::ParseError, "bad triple label: " + item);
    }
  }
  if (k != 3) throw Error(Errc::ParseError, "triple needs exactly three labels");
  return normalize_triple(t);
}

template <class F>
Json guarded(Json doc, F&& body) {
  try {
    doc["results"] = body();
  } catch (const Error& e) {
    doc["error"] = error(e);
  } catch (const std::exception& e) {
    doc["error"] = Json{{"code", "InvariantViolation"}, {"message", e.what()}};
  }
  return doc;
}

}  // namespace

Json integer(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

Json rational(const mpq_class& q) { return q.get_str(); }

Json interval(const RealInterval& r) {
  const mpq_class c = r.mid(), rad = r.width() / 2;
  return Json{{"lo", rational(r.lo)}, {"hi", rational(r.hi)}, {"approx", decimal(c, 15) + " ± " + decimal(rad, 3)}};
}

Json polynomial(const IntPoly& p) {
  Json c = Json::array();
  for (const auto& a : p.coeffs()) c.push_back(integer(a));
  return Json{{"coefficients", c}, {"text", p.pretty()}};
}

Json matrix(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Json classification(const SpecialClassification& c) {
  Json checks = Json::array();
  for (const auto& r : c.reasons) checks.push_back(Json{{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
  Json out{{"is_special", c.is_special}, {"checks", checks}};
  if (c.trace_poly) out["trace_poly"] = polynomial(*c.trace_poly);
  if (c.real_trace_root_interval) out["real_trace_root"] = interval(*c.real_trace_root_interval);
  if (c.subcase) out["subcase_of_triple_134"] = subcase_name(*c.subcase);
  if (c.roots) {
    Json roots = Json::array();
    for (std::size_t i = 0; i < c.roots->size(); ++i)
      roots.push_back(Json{{"label", "z" + std::to_string(i + 1)},
                           {"ball", ball(c.roots->roots[i])},
                           {"modulus", modulus_json(c.roots->modulus[i])}});
    out["roots"] = roots;
  }
  return out;
}

Json galois(const GaloisReport& g) {
  Json gens = Json::array();
  for (const auto& p : minimal_generators(g.group)) gens.push_back(cycle_string(p));
  Json evidence = Json::array();
  for (const auto& e : g.evidence) evidence.push_back(Json{{"resolvent", e.resolvent}, {"degrees", e.degrees}, {"consistent", e.consistent}});
  Json out{{"class", g.class_label},
           {"order", g.order},
           {"ambiguity", g.ambiguity},
           {"generators", gens},
           {"pair_orbits", orbits_json(g.pair_orbits)},
           {"evidence", evidence},
           {"resolvent_c", g.resolvent_c}};
  out["ap_triple"] = g.ap_triple ? one_based(*g.ap_triple) : Json(nullptr);
  return out;
}

Json triple_info(const TripleInfo& t) {
  return Json{{"triple", one_based(t.triple)},
              {"ap", t.ap},
              {"product", t.product},
              {"unity_order", t.unity_order},
              {"subcase", subcase_name(t.subcase)}};
}

Json picard(const TorusModel& m, const PicardReport& r) {
  Json hodge = Json::object();
  for (const auto& [pr, h] : r.hodge_types) hodge[pair_string(pr)] = hodge_name(h);
  return Json{{"triple", one_based(m.triple)},
              {"ap", m.ap_flag},
              {"product", m.triple_product},
              {"unity_order", m.unity_order},
              {"subcase", subcase_name(m.subcase)},
              {"rho", r.rho},
              {"projective", r.projective},
              {"ns_orbits", orbits_json(r.ns_orbits)},
              {"hodge_types", hodge}};
}

Json fibration(const FibrationReport& f) {
  Json subs = Json::array();
  for (const auto& s : f.submodules)
    subs.push_back(Json{{"rank", s.rank},
                        {"basis", matrix(s.lattice.basis())},
                        {"induced_char_poly", polynomial(s.induced_char_poly)},
                        {"quotient_char_poly", polynomial(s.quotient_char_poly)},
                        {"base_dimension", s.base_dimension}});
  Json out{{"exists", f.exists ? Json(*f.exists) : Json("undetermined")},
           {"route", route_name(f.route)},
           {"char_poly", polynomial(f.char_poly)},
           {"minimal_polynomial", polynomial(f.minimal_polynomial)},
           {"submodules", subs},
           {"reason", f.reason}};
  if (f.bezout)
    out["bezout"] = Json{{"h1", polynomial(f.bezout->h1)}, {"h2", polynomial(f.bezout->h2)}, {"N", integer(f.bezout->n)}};
  return out;
}

Json degrees(const DegreeReport& d) {
  Json lambdas = Json::array();
  for (const auto& l : d.lambdas) lambdas.push_back(interval(l));
  Json eq = Json::array();
  for (auto [p, q] : d.exact_equalities) eq.push_back(Json::array({p, q}));
  return Json{{"lambdas", lambdas},
              {"exact_equalities", eq},
              {"salem_first", d.salem_first ? Json(*d.salem_first) : Json(nullptr)},
              {"moduli", Json{{"gt1", d.count_gt1}, {"eq1", d.count_eq1}, {"lt1", d.count_lt1}}}};
}

Json salem(const SalemCertificate& s) {
  Json out{{"is_salem", s.is_salem}, {"degree", s.degree}, {"count_gt2", s.count_gt2}, {"count_in_m2_2", s.count_in_m2_2}};
  if (s.trace_poly) out["trace_poly"] = polynomial(*s.trace_poly);
  if (s.lambda) out["lambda"] = interval(*s.lambda);
  out["reason"] = s.reason;
  return out;
}

Json error(const Error& e) { return Json{{"code", errc_name(e.code())}, {"message", e.what()}}; }

Json document(const std::string& command, const Json& input, const Settings& s) {
  set_default_precision_bits(s.precision_bits);
  return Json{{"schema", kSchema},
              {"tool", "tori"},
              {"version", kVersion},
              {"command", command},
              {"input", input},
              {"settings", settings_json(s)}};
}

// ------------------------------------------------------------ subcommands

Json run_classify(const std::string& poly, const Settings& s) {
  return guarded(document("classify", Json{{"poly", poly}}, s), [&] {
    IntPoly p = parse_poly(poly);
    return Json{{"polynomial", polynomial(p)}, {"classification", classification(classify_special(p))}};
  });
}

Json run_galois(const std::string& poly, const Settings& s) {
  return guarded(document("galois", Json{{"poly", poly}}, s), [&] {
    IntPoly p = parse_poly(poly);
    return Json{{"polynomial", polynomial(p)}, {"galois", galois(galois_class(p, s.c_max))}};
  });
}

Json run_picard(const std::string& poly, const std::string& triple, bool all_triples, const Settings& s) {
  Json input{{"poly", poly}, {"triple", triple.empty() ? Json(nullptr) : Json(triple)}, {"all_triples", all_triples}};
  return guarded(document("picard", input, s), [&] {
    IntPoly p = parse_poly(poly);
    std::vector<Triple> triples;
    if (all_triples) {
      for (const auto& t : admissible_triples(p)) triples.push_back(t.triple);
    } else {
      triples.push_back(parse_triple(triple.empty() ? "1,3,4" : triple));
    }
    Json rows = Json::array();
    std::optional<std::vector<PairOrbit>> orbits;
    for (const auto& t : triples) {
      TorusModel m = standard_construction(p, t);
      if (!orbits) orbits = pair_orbit_partition(p, {s.c_max, false});
      rows.push_back(picard(m, picard_from_orbits(*orbits, m.triple)));
    }
    return Json{{"polynomial", polynomial(p)}, {"pair_orbits", orbits_json(*orbits)}, {"models", rows}};
  });
}

Json run_fibration(const std::string& text, const Settings& s) {
  return guarded(document("fibration", Json{{"input", text}}, s), [&] {
    Json out = Json::object();
    IntMatrix a;
    if (text.find(';') != std::string::npos) {
      a = IntMatrix::parse(text);
      out["matrix"] = matrix(a);
    } else {
      IntPoly p = parse_poly(text);
      out["polynomial"] = polynomial(p);
      out["fibration_exists"] = fibration_exists(p);
      a = companion(p);
    }
    try {
      out["fibration"] = fibration(build_fibrations(a));
    } catch (const Error& e) {
      if (e.code() != Errc::NoDecomposition) throw;
      out["fibration"] = Json{{"exists", "undetermined"},
                              {"route", route_name(FibrationRoute::None)},
                              {"char_poly", polynomial(char_poly(a))},
                              {"minimal_polynomial", polynomial(minimal_polynomial(a))},
                              {"submodules", Json::array()},
                              {"reason", e.what()}};
    }
    return out;
  });
}

Json run_degrees(const std::string& text, int dim, const Settings& s) {
  return guarded(document("degrees", Json{{"matrix", text}, {"dim", dim}}, s), [&] {
    IntMatrix a = IntMatrix::parse(text);
    return Json{{"matrix", matrix(a)}, {"degrees", degrees(dynamical_degrees(a, dim))}};
  });
}

Json run_salem_gen(int two_k, const Settings& s) {
  return guarded(document("salem-gen", Json{{"degree", two_k}}, s), [&] {
    IntPoly p = gross_mcmullen(two_k, s.a_max);
    return Json{{"polynomial", polynomial(p)}, {"certificate", salem(is_salem(p))}};
  });
}

namespace {

// Salem quadratics and quartics times cyclotomic factors: reducible sextics
// whose first dynamical degree is a Salem number.
std::vector<IntPoly> reducible_corpus() {
  std::vector<IntPoly> salem{IntPoly{1, -3, 1}, IntPoly{1, -4, 1}, IntPoly{1, -5, 1}, IntPoly{1, -6, 1},
                             IntPoly{1, -5, 7, -5, 1}, IntPoly{1, -1, -1, -1, 1}};
  std::vector<IntPoly> quartic{cyclotomic(5), cyclotomic(8), cyclotomic(10), cyclotomic(12),
                               cyclotomic(3) * cyclotomic(4), cyclotomic(4) * cyclotomic(6), cyclotomic(3) * cyclotomic(6)};
  std::vector<IntPoly> quadratic{cyclotomic(3), cyclotomic(4), cyclotomic(6)};
  std::vector<IntPoly> out;
  for (const auto& f : salem)
    for (const auto& c : f.degree() == 2 ? quartic : quadratic) out.push_back(f * c);
  return out;
}

Triple conjugate_triple(const Triple& t) {
  const int conj[6] = {1, 0, 5, 4, 3, 2};
  return normalize_triple({conj[t[0]], conj[t[1]], conj[t[2]]});
}

}  // namespace

Json run_sweep(int bound, const Settings& s) {
  Json doc = document("sweep", Json{{"trace_coeff_bound", bound}}, s);
  Json violations = Json::array();
  auto violate = [&](const IntPoly& p, const std::string& what) {
    violations.push_back(Json{{"poly", p.to_string()}, {"property", what}});
  };
  try {
    if (bound < 0) throw Error(Errc::InvalidArgument, "bound must be nonnegative");
    int cubics = 0, special = 0;
    std::map<std::string, int> classes, rhos;
    Json instances = Json::array();
    for (int b = -bound; b <= bound; ++b)
      for (int c = -bound; c <= bound; ++c)
        for (int d = -bound; d <= bound; ++d) {
          ++cubics;
          IntPoly p = from_trace(IntPoly{d, c, b, 1});
          SpecialClassification cls = classify_special(p);
          if (!cls.is_special) continue;
          ++special;
          if (!is_irreducible(p)) violate(p, "special implies irreducible");
          if (fibration_exists(p)) violate(p, "no fibration for special");
          if (first_dynamical_degree_salem(p)) violate(p, "first dynamical degree not Salem");

          GaloisReport g = galois_class(p, s.c_max);
          ++classes[g.class_label];
          const auto& cand = std::find_if(candidate_groups().begin(), candidate_groups().end(),
                                          [&](const CandidateGroup& x) { return x.label == g.class_label; });
          if (g.evidence[0].degrees != cand->prediction(kWedge2).alternatives[0])
            violate(p, "exterior square degrees match the class");

          DegreeReport dr = dynamical_degrees(companion(p), 3);
          const auto& eq = dr.exact_equalities;
          if (std::find(eq.begin(), eq.end(), std::make_pair(1, 2)) == eq.end()) violate(p, "lambda_1 = lambda_2");
          for (int q = 1; q < 3; ++q)
            if (dr.lambdas[q].hi * dr.lambdas[q].hi < dr.lambdas[q - 1].lo * dr.lambdas[q + 1].lo)
              violate(p, "log-concavity");

          Json rho_row = Json::array();
          std::map<Triple, int> rho;
          for (const auto& t : admissible_triples(p)) {
            PicardReport r = picard_from_orbits(g.pair_orbits, t.triple);
            rho[t.triple] = r.rho;
            rho_row.push_back(r.rho);
            ++rhos[std::to_string(r.rho)];
            if (r.rho != 0 && r.rho != 3 && r.rho != 9) violate(p, "rho in {0,3,9}");
            if (r.projective != (r.rho == 9)) violate(p, "projective iff rho = 9");
            if (r.rho == 9 && t.unity_order == 0) violate(p, "rho = 9 needs a root-of-unity triple product");
            if (t.unity_order != 0 && g.class_label != "H6" && g.class_label != "G12")
              violate(p, "root-of-unity triple product forces H6 or G12");
          }
          for (const auto& [t, r] : rho)
            if (rho.at(conjugate_triple(t)) != r) violate(p, "rho invariant under conjugating the triple");
          instances.push_back(Json{{"trace", Json::array({d, c, b})},
                                   {"poly", p.to_string()},
                                   {"class", g.class_label},
                                   {"rho", rho_row}});
        }
    int reducible = 0;
    for (const auto& p : reducible_corpus()) {
      ++reducible;
      if (!first_dynamical_degree_salem(p)) violate(p, "reducible Salem corpus has Salem first degree");
    }
    doc["results"] = Json{{"cubics", cubics},
                          {"special", special},
                          {"classes", classes},
                          {"rho_histogram", rhos},
                          {"reducible_corpus", reducible},
                          {"violations", violations},
                          {"instances", instances}};
    if (!violations.empty())
      doc["error"] = Json{{"code", "VerificationFailed"}, {"message", std::to_string(violations.size()) + " violations"}};
  } catch (const Error& e) {
    doc["error"] = error(e);
  }
  return doc;
}

Json run_verify_paper(const Settings& s) {
  Json doc = document("verify-paper", Json::object(), s);
  Json rows = Json::array(), mismatches = Json::array();
  auto check = [&](Json& row, const std::string& name, const Json& expected, const Json& computed) {
    bool ok = expected == computed;
    row["checks"].push_back(Json{{"name", name}, {"expected", expected}, {"computed", computed}, {"ok", ok}});
    if (!ok)
      mismatches.push_back(Json{{"poly", row["poly"]}, {"check", name}, {"expected", expected}, {"computed", computed}});
  };
  auto model_rho = [&](const IntPoly& p, const Triple& t) {
    TorusModel m = standard_construction(p, t);
    return picard(m, picard_number(m, s.c_max));
  };
  auto no_fibration = [](const IntPoly& p) {
    FibrationReport f = build_fibrations(companion(p));
    return !fibration_exists(p) && f.exists && !*f.exists;
  };
  try {
    const IntPoly p1{1, 3, 5, 5, 5, 3, 1}, p2{1, -5, 13, -11, 13, -5, 1}, p3{1, 1, 3, 1, 3, 1, 1};
    {
      Json row{{"poly", p1.to_string()}, {"checks", Json::array()}};
      GaloisReport g = galois_class(p1, s.c_max);
      check(row, "class", "H6", g.class_label);
      check(row, "order", 6, g.order);
      auto ts = admissible_triples(p1);
      auto ap = std::find_if(ts.begin(), ts.end(), [](const TripleInfo& t) { return t.ap; });
      auto non = std::find_if(ts.begin(), ts.end(), [](const TripleInfo& t) { return !t.ap; });
      check(row, "ap triple exists", true, ap != ts.end());
      if (ap != ts.end()) {
        Json m = model_rho(p1, ap->triple);
        row["ap_model"] = m;
        check(row, "rho with ap triple", 9, m["rho"]);
        check(row, "projective with ap triple", true, m["projective"]);
      }
      if (non != ts.end()) {
        Json m = model_rho(p1, non->triple);
        row["non_ap_model"] = m;
        check(row, "rho with non-ap triple", 3, m["rho"]);
        check(row, "projective with non-ap triple", false, m["projective"]);
      }
      check(row, "no fibration", true, no_fibration(p1));
      rows.push_back(row);
    }
    {
      Json row{{"poly", p2.to_string()}, {"checks", Json::array()}};
      GaloisReport g = galois_class(p2, s.c_max);
      check(row, "class", "G12", g.class_label);
      check(row, "order", 12, g.order);
      auto ts = admissible_triples(p2);
      auto ap = std::find_if(ts.begin(), ts.end(), [](const TripleInfo& t) { return t.ap; });
      check(row, "ap triple exists", true, ap != ts.end());
      if (ap != ts.end()) {
        Json m = model_rho(p2, ap->triple);
        row["ap_model"] = m;
        check(row, "rho with ap triple", 9, m["rho"]);
        check(row, "projective with ap triple", true, m["projective"]);
      }
      check(row, "no fibration", true, no_fibration(p2));
      rows.push_back(row);
    }
    {
      Json row{{"poly", p3.to_string()}, {"checks", Json::array()}};
      GaloisReport g = galois_class(p3, s.c_max);
      check(row, "class", "G48", g.class_label);
      check(row, "order", 48, g.order);
      Json m = model_rho(p3, {0, 2, 3});
      row["model"] = m;
      check(row, "rho with triple 1,3,4", 0, m["rho"]);
      check(row, "projective", false, m["projective"]);
      check(row, "no fibration", true, no_fibration(p3));
      rows.push_back(row);
    }
    doc["results"] = Json{{"rows", rows}, {"passed", mismatches.empty()}};
    if (!mismatches.empty())
      doc["error"] = Json{{"code", "VerificationFailed"}, {"message", "expected table differs"}, {"diff", mismatches}};
  } catch (const Error& e) {
    doc["error"] = error(e);
  }
  return doc;
}

// ------------------------------------------------------------ exit codes and text

int exit_code_for(Errc e) {
  switch (e) {
    case Errc::VerificationFailed: return 1;
    case Errc::InvariantViolation:
    case Errc::NoCandidateMatches:
    case Errc::PrecisionExhausted:
    case Errc::CollisionUnresolved:
    case Errc::Ambiguous: return 3;
    default: return 2;
  }
}

int exit_code(const Json& doc) {
  if (!doc.contains("error")) return 0;
  const std::string code = doc["error"]["code"].get<std::string>();
  for (int i = 0; i <= static_cast<int>(Errc::VerificationFailed); ++i)
    if (code == errc_name(static_cast<Errc>(i))) return exit_code_for(static_cast<Errc>(i));
  return 3;
}

namespace {

bool scalar_array(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive() || scalar_array(x); });
}

std::string scalar(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(std::ostringstream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        out << pad << k << ": " << scalar(v) << "\n";
      } else if (scalar_array(v)) {
        out << pad << k << ": " << v.dump() << "\n";
      } else {
        out << pad << k << ":\n";
        render(out, v, indent + 1);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive() || scalar_array(v)) {
        out << pad << "- " << (v.is_primitive() ? scalar(v) : v.dump()) << "\n";
      } else {
        out << pad << "-\n";
        render(out, v, indent + 1);
      }
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& doc) {
  std::ostringstream out;
  render(out, doc, 0);
  return out.str();
}

}  // namespace tori::report
