#include "tori/salem.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace tori {

const char* subcase_name(Subcase s) {
  return s == Subcase::RecipEqualsConj ? "recip_equals_conj_on_big_pair" : "recip_crosses_conj";
}

Subcase subcase_of_triple(int i, int j, int k) {
  const std::array<int, 3> t{i, j, k};
  int big = 0, small = 0, unit = 0;
  for (int x : t) {
    if (x == 1 || x == 2)
      unit = x;
    else if (x == 3 || x == 6)
      big = x;
    else if (x == 4 || x == 5)
      small = x;
  }
  if (!unit || !big || !small) throw Error(Errc::InadmissibleTriple, "triple must take one label from each of {1,2}, {3,6}, {4,5}");
  // z4 = 1/z3 and z5 = 1/z6.
  bool reciprocal = (big == 3 && small == 4) || (big == 6 && small == 5);
  return reciprocal ? Subcase::RecipCrossesConj : Subcase::RecipEqualsConj;
}

RealInterval bisect_root(const IntPoly& p, mpq_class lo, mpq_class hi, const mpq_class& width) {
  int slo = p.sign_at(lo), shi = p.sign_at(hi);
  if (slo == 0) return RealInterval{lo, lo};
  if (shi == 0) return RealInterval{hi, hi};
  if (slo == shi) throw Error(Errc::InvariantViolation, "no sign change on the bracket");
  while (hi - lo > width) {
    mpq_class mid = (lo + hi) / 2;
    int s = p.sign_at(mid);
    if (s == 0) return RealInterval{mid, mid};
    if (s == slo)
      lo = mid;
    else
      hi = mid;
  }
  return RealInterval{lo, hi};
}

// ------------------------------------------------------------ classification

SpecialClassification classify_special(const IntPoly& p) {
  SpecialClassification c;
  auto add = [&](const std::string& name, bool ok, const std::string& detail) {
    c.reasons.push_back(Check{name, ok, detail});
    return ok;
  };
  bool ok = true;
  ok &= add("monic", p.is_monic(), p.is_zero() ? "zero polynomial" : "leading coefficient " + p.leading().get_str());
  ok &= add("degree 6", p.degree() == 6, "degree " + std::to_string(p.degree()));
  ok &= add("p(0)=1", !p.is_zero() && p[0] == 1, "p(0) = " + (p.is_zero() ? std::string("0") : p[0].get_str()));
  bool irr = p.degree() >= 1 && is_irreducible(p);
  ok &= add("irreducible", irr, irr ? "irreducible over Z" : "reducible or constant");
  bool rec = p.degree() >= 1 && is_reciprocal(p);
  ok &= add("reciprocal", rec, rec ? "t^d p(1/t) = p(t)" : "not reciprocal");

  bool pattern = false;
  std::string detail = "needs a reciprocal polynomial of even degree";
  if (rec && p.degree() % 2 == 0) {
    IntPoly q = trace_polynomial(p);
    c.trace_poly = q;
    if (q.sign_at(-2) == 0 || q.sign_at(2) == 0) {
      detail = "trace polynomial vanishes at +-2";
    } else {
      int real = real_root_count(q), inside = sturm_count(q, -2, 2);
      pattern = real == 1 && inside == 1;
      detail = std::to_string(real) + " real trace roots, " + std::to_string(inside) + " in (-2,2)";
      if (pattern) c.real_trace_root_interval = bisect_root(q, -2, 2, pow2(-64));
    }
  }
  ok &= add("trace-root pattern", pattern, detail);
  c.is_special = ok;
  if (ok) {
    try {
      c.roots = canonical_special_order(isolate_roots(p, pow2(-64)));
    } catch (const Error& e) {
      if (e.code() == Errc::NotSpecial)
        throw Error(Errc::InvariantViolation, "special polynomial violates the root pattern");
      throw;
    }
    c.subcase = subcase_of_triple(1, 3, 4);
  }
  return c;
}

// ------------------------------------------------------------ Salem test

namespace {

// Salem pattern on the trace polynomial: one root > 2, the rest in (-2, 2).
bool trace_pattern(const IntPoly& q, int* gt2 = nullptr, int* inside = nullptr) {
  if (q.sign_at(2) == 0 || q.sign_at(-2) == 0) return false;
  mpz_class b = cauchy_bound(q);
  int g = b > 2 ? sturm_count(q, 2, mpq_class(b)) : 0;
  int in = sturm_count(q, -2, 2);
  if (gt2) *gt2 = g;
  if (inside) *inside = in;
  return g == 1 && in == q.degree() - 1;
}

}  // namespace

SalemCertificate is_salem(const IntPoly& p, const mpq_class& width) {
  SalemCertificate c;
  c.degree = p.degree();
  if (!p.is_monic()) {
    c.reason = "not monic";
    return c;
  }
  if (p.degree() < 2 || p.degree() % 2) {
    c.reason = "degree is not a positive even number";
    return c;
  }
  if (!is_reciprocal(p)) {
    c.reason = "not reciprocal";
    return c;
  }
  IntPoly q = trace_polynomial(p);
  c.trace_poly = q;
  if (q.sign_at(2) == 0 || q.sign_at(-2) == 0) {
    c.reason = "root at +1 or -1";
    return c;
  }
  bool pattern = trace_pattern(q, &c.count_gt2, &c.count_in_m2_2);
  if (!pattern) {
    c.reason = "trace roots do not have the Salem pattern";
    return c;
  }
  if (!is_irreducible(p)) {
    c.reason = "reducible";
    return c;
  }
  c.is_salem = true;
  c.lambda = bisect_root(p, 1, mpq_class(cauchy_bound(p)), width);
  return c;
}

// ------------------------------------------------------------ generator

IntPoly cyclotomic(int n) {
  static std::map<int, IntPoly> cache;
  if (n < 1) throw Error(Errc::InvariantViolation, "cyclotomic index must be positive");
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  IntPoly f = IntPoly::monomial(1, n) - IntPoly{1};
  for (int d = 1; d < n; ++d)
    if (n % d == 0) f = divexact(f, cyclotomic(d));
  cache.emplace(n, f);
  return f;
}

IntPoly cyclotomic_trace(int n) {
  if (n < 3) throw Error(Errc::InvariantViolation, "trace form needs n >= 3");
  return trace_polynomial(cyclotomic(n));
}

IntPoly gm_block(int m) {
  if (m < 0) throw Error(Errc::InvariantViolation, "negative block degree");
  if (m == 0) return IntPoly{1};
  if (m % 2) return IntPoly::x() * gm_block(m - 1);
  static const std::vector<IntPoly> quads{{-2, 0, 1}, {-3, 0, 1}, {-1, 0, 1}, {-1, 1, 1}, {-1, -1, 1}};
  static const int quartic_n[] = {15, 16, 20, 24, 30};
  int nq = std::min<int>(5, m / 2);
  int rem = m - 2 * nq;
  if (rem % 4 == 2) {
    --nq;
    rem += 2;
  }
  if (rem / 4 > 5) throw Error(Errc::SearchExhausted, "block degree too large");
  IntPoly c{1};
  for (int i = 0; i < nq; ++i) c = c * quads[i];
  for (int i = 0; i < rem / 4; ++i) c = c * cyclotomic_trace(quartic_n[i]);
  if (c.degree() != m || sturm_count(c, -2, 2) != m)
    throw Error(Errc::InvariantViolation, "block roots are not distinct in (-2,2)");
  return c;
}

IntPoly gross_mcmullen(int two_k, int a_max) {
  if (two_k < 2 || two_k % 2) throw Error(Errc::OddDegreeRequested, "degree must be even and positive");
  const int k = two_k / 2;
  auto accept = [](const IntPoly& r) -> std::optional<IntPoly> {
    if (!trace_pattern(r)) return std::nullopt;
    IntPoly p = from_trace(r);
    if (!is_salem(p).is_salem) return std::nullopt;
    return p;
  };
  if (k == 3) {
    // Smallest height first, then lexicographic (b, c, d) for t^3 + b t^2 + c t + d.
    for (int h = 1; h <= a_max; ++h)
      for (int b = -h; b <= h; ++b)
        for (int c = -h; c <= h; ++c)
          for (int d = -h; d <= h; ++d) {
            if (std::max({std::abs(b), std::abs(c), std::abs(d)}) != h) continue;
            if (auto p = accept(IntPoly{d, c, b, 1})) return *p;
          }
    throw Error(Errc::SearchExhausted, "no Salem trace cubic found");
  }
  IntPoly base;
  if (k == 1)
    base = IntPoly{1};
  else if (k % 2 == 0)
    base = gm_block(k - 2) * IntPoly{-2, 1};
  else
    base = gm_block(k - 3) * IntPoly{-4, 0, 1};
  for (int a = 3; a <= a_max; ++a) {
    IntPoly r = base * IntPoly{-a, 1};
    if (k > 1) r = r - IntPoly{1};
    if (auto p = accept(r)) return *p;
  }
  throw Error(Errc::SearchExhausted, "no a up to the bound gives a Salem polynomial");
}

// ------------------------------------------------------------ top root

namespace {

struct RootData {
  FactorList factors;
  IntPoly squarefree;
  RootSystem rs;
  /// Index into factors.factors for each root of rs.
  std::vector<std::size_t> owner;
};

RootData root_data(const IntPoly& p, const mpq_class& eps) {
  RootData d;
  d.factors = factor_over_z(p);
  IntPoly s{1};
  FactorList distinct;
  for (const auto& [f, m] : d.factors.factors) {
    s = s * f;
    distinct.factors.emplace_back(f, 1);
  }
  d.squarefree = s;
  d.rs = isolate_roots(s, eps);
  if (distinct.factors.size() == 1) {
    d.owner.assign(d.rs.size(), 0);
  } else {
    std::vector<RootExpr> single;
    for (std::size_t i = 0; i < d.rs.size(); ++i) single.push_back(RootExpr::product({static_cast<int>(i)}));
    d.owner = certify_value_match(d.rs, single, distinct);
  }
  return d;
}

int multiplicity(const RootData& d, int i) { return d.factors.factors[d.owner[i]].second; }

// Indices of the roots whose modulus may be maximal, after refining until the
// candidates are either a conjugate pair, a single root, or stable.
std::vector<int> max_modulus_candidates(RootData& d) {
  for (int round = 0;; ++round) {
    std::vector<RealInterval> abs;
    mpq_class best = 0;
    for (const auto& b : d.rs.roots) {
      abs.push_back(b.abs());
      best = std::max(best, abs.back().lo);
    }
    std::vector<int> cand;
    for (std::size_t i = 0; i < abs.size(); ++i)
      if (abs[i].hi >= best) cand.push_back(static_cast<int>(i));
    bool pair = cand.size() == 2 && d.rs.conj[cand[0]] == cand[1];
    if (cand.size() == 1 || pair || round >= 6) return cand;
    d.rs = d.rs.refine(d.rs.eps / pow2(32));
  }
}

struct TopRoot {
  IntPoly norm_minpoly;
  /// Minimal polynomial of |alpha| when alpha is real.
  IntPoly abs_minpoly;
  bool alpha_real = false;
  /// Number of roots, with multiplicity, of maximal modulus when certified.
  int tie_count = 0;
};

TopRoot top_root(const IntPoly& p) {
  RootData d = root_data(p, pow2(-40));
  std::vector<int> cand = max_modulus_candidates(d);
  const RootSystem& rs = d.rs;
  const int n = static_cast<int>(rs.size());
  // Owning factor of |z|^2 for each candidate z.
  std::optional<FactorList> wedge, squares;
  std::vector<RootExpr> pairs, sq;
  std::set<std::size_t> owners_seen;
  TopRoot t;
  IntPoly owner;
  for (int i : cand) {
    IntPoly f;
    if (rs.conj[i] == i) {
      if (!squares) {
        squares = factor_over_z(graeffe(d.squarefree));
        for (int j = 0; j < n; ++j) sq.push_back(RootExpr::product({j, j}));
      }
      auto a = certify_value_match(rs, sq, *squares);
      f = squares->factors[a[i]].first;
      t.alpha_real = true;
      IntPoly own = d.factors.factors[d.owner[i]].first;
      t.abs_minpoly = d.rs.roots[i].re > 0 ? own : (own.degree() % 2 ? -own.negated_variable() : own.negated_variable());
    } else {
      if (!wedge) {
        wedge = factor_over_z(char_poly(wedge_power(companion(d.squarefree), 2)));
        for (const auto& s : k_subsets(n, 2)) pairs.push_back(RootExpr::product(s));
      }
      auto a = certify_value_match(rs, pairs, *wedge);
      int lo = std::min(i, rs.conj[i]), hi = std::max(i, rs.conj[i]);
      std::size_t pos = 0;
      for (; pos < pairs.size(); ++pos)
        if (pairs[pos].idx[0] == lo && pairs[pos].idx[1] == hi) break;
      f = wedge->factors[a[pos]].first;
    }
    if (!owner.is_zero() && !(owner == f)) throw Error(Errc::Ambiguous, "maximal-modulus roots have different norms");
    owner = f;
  }
  t.norm_minpoly = owner;
  // Certified ties: a conjugate pair, or one root of higher multiplicity.
  bool pair = cand.size() == 2 && rs.conj[cand[0]] == cand[1];
  if (pair)
    t.tie_count = 2 * multiplicity(d, cand[0]);
  else if (cand.size() == 1)
    t.tie_count = multiplicity(d, cand[0]);
  return t;
}

}  // namespace

IntPoly first_degree_minimal_polynomial(const IntPoly& p) {
  if (!p.is_monic() || p.degree() < 2 || p.degree() % 2 || abs(p[0]) != 1)
    throw Error(Errc::ClassificationRequired, "needs a monic even-degree polynomial with p(0) = +-1");
  if (p.degree() == 6 && is_irreducible(p) && !classify_special(p).is_special)
    throw Error(Errc::ClassificationRequired, "irreducible sextic is not special");
  return top_root(p).norm_minpoly;
}

bool first_dynamical_degree_salem(const IntPoly& p) { return is_salem(first_degree_minimal_polynomial(p)).is_salem; }

// ------------------------------------------------------------ dynamical degrees

DegreeReport dynamical_degrees(const IntMatrix& a, int n, const mpq_class& width) {
  if (n < 1 || a.rows() != static_cast<std::size_t>(2 * n) || a.cols() != a.rows())
    throw Error(Errc::DimensionMismatch, "expected a 2n x 2n matrix");
  if (abs(det(a)) != 1) throw Error(Errc::NotUnimodular, "|det A| must be 1");
  DegreeReport r;
  r.lambdas.assign(n + 1, RealInterval{1, 1});

  // Modulus classes of the eigenvalues of A, with multiplicity.
  IntPoly cp = char_poly(a);
  RootData d = root_data(cp, pow2(floor_log2(width) - 8));
  for (std::size_t i = 0; i < d.rs.size(); ++i) {
    int m = multiplicity(d, static_cast<int>(i));
    switch (d.rs.modulus[i]) {
      case ModulusClass::Gt1: r.count_gt1 += m; break;
      case ModulusClass::Eq1: r.count_eq1 += m; break;
      case ModulusClass::Lt1: r.count_lt1 += m; break;
    }
  }

  // lambda_p is the spectral radius on the 2p-th exterior power: the product of
  // the 2p largest moduli. Sorting lower and upper bounds separately encloses it.
  for (int round = 0;; ++round) {
    std::vector<mpq_class> lo, hi;
    for (std::size_t i = 0; i < d.rs.size(); ++i) {
      RealInterval m = d.rs.roots[i].abs();
      for (int k = 0; k < multiplicity(d, static_cast<int>(i)); ++k) {
        lo.push_back(m.lo);
        hi.push_back(m.hi);
      }
    }
    std::sort(lo.begin(), lo.end(), std::greater<>());
    std::sort(hi.begin(), hi.end(), std::greater<>());
    bool narrow = true;
    mpq_class pl = 1, ph = 1;
    for (int p = 1; p < n; ++p) {
      for (int i = 2 * p - 2; i < 2 * p; ++i) {
        pl = dyadic_lower(pl * lo[i], 96);
        ph = dyadic_upper(ph * hi[i], 96);
      }
      r.lambdas[p] = RealInterval{pl, ph};
      if (ph - pl > width) narrow = false;
    }
    if (narrow || round >= 8) break;
    d.rs = d.rs.refine(d.rs.eps / pow2(32));
  }

  const int g = r.count_gt1, e = r.count_eq1, total = 2 * n;
  const bool mirrored = cp.reversed() == cp || cp.reversed() == -cp;
  auto in_e = [&](int i) { return i > g && i <= g + e; };
  for (int p = 0; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q) {
      // lambda_q / lambda_p is the product of the moduli at positions 2p+1..2q.
      int lo = 2 * p + 1, hi = 2 * q;
      bool block_e = true, comp_e = true;
      for (int i = 1; i <= total; ++i) {
        bool in = i >= lo && i <= hi;
        if (in && !in_e(i)) block_e = false;
        if (!in && !in_e(i)) comp_e = false;
      }
      bool equal = block_e || comp_e;
      if (!equal && mirrored) {
        // Moduli at mirrored positions multiply to 1.
        bool rest_e = true;
        for (int i = lo; i <= hi; ++i) {
          int mirror = total + 1 - i;
          if ((mirror < lo || mirror > hi) && !in_e(i)) rest_e = false;
        }
        equal = rest_e;
      }
      if (equal) r.exact_equalities.emplace_back(p, q);
    }

  // Exactly equal degrees share one enclosure; lambda_0 = 1.
  std::vector<int> cls(n + 1);
  for (int p = 0; p <= n; ++p) cls[p] = p;
  for (auto [p, q] : r.exact_equalities) cls[q] = std::min(cls[q], cls[p]);
  for (int p = 0; p <= n; ++p) {
    int c = cls[p];
    if (c == p) continue;
    r.lambdas[c].lo = std::max(r.lambdas[c].lo, r.lambdas[p].lo);
    r.lambdas[c].hi = std::min(r.lambdas[c].hi, r.lambdas[p].hi);
  }
  for (int p = 0; p <= n; ++p) r.lambdas[p] = r.lambdas[cls[p]];

  // lambda_1 is |alpha|^2 when the top modulus is attained at least twice.
  TopRoot t = top_root(cp);
  if (t.tie_count >= 2) {
    r.salem_first = is_salem(t.norm_minpoly).is_salem;
  } else if (t.tie_count == 1 && t.alpha_real && g == 1 && e >= 1) {
    // lambda_1 = |alpha| times a modulus-one eigenvalue.
    r.salem_first = is_salem(t.abs_minpoly).is_salem;
  } else if (g == 0) {
    r.salem_first = false;
  }
  return r;
}

}  // namespace tori
