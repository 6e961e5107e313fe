#include "tori/perm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "tori/error.hpp"

namespace tori {

Perm perm_identity() { return Perm{0, 1, 2, 3, 4, 5}; }

Perm compose(const Perm& a, const Perm& b) {
  Perm r{};
  for (int i = 0; i < 6; ++i) r[i] = a[b[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r{};
  for (int i = 0; i < 6; ++i) r[p[i]] = static_cast<std::uint8_t>(i);
  return r;
}

Perm parse_cycles(std::string_view s) {
  Perm p = perm_identity();
  std::vector<int> cyc;
  bool open = false;
  std::array<bool, 6> used{};
  for (char ch : s) {
    if (ch == '(') {
      if (open) throw Error(Errc::ParseError, "nested cycle");
      open = true;
      cyc.clear();
    } else if (ch == ')') {
      if (!open) throw Error(Errc::ParseError, "unbalanced cycle");
      for (std::size_t i = 0; i < cyc.size(); ++i) p[cyc[i]] = static_cast<std::uint8_t>(cyc[(i + 1) % cyc.size()]);
      open = false;
    } else if (ch >= '1' && ch <= '6') {
      if (!open) throw Error(Errc::ParseError, "point outside a cycle");
      int x = ch - '1';
      if (used[x]) throw Error(Errc::ParseError, "repeated point");
      used[x] = true;
      cyc.push_back(x);
    } else if (ch != ' ' && ch != ',') {
      throw Error(Errc::ParseError, std::string("unexpected character in cycle: ") + ch);
    }
  }
  if (open) throw Error(Errc::ParseError, "unterminated cycle");
  return p;
}

std::string cycle_string(const Perm& p) {
  std::string out;
  std::array<bool, 6> seen{};
  for (int i = 0; i < 6; ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    for (int j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      out += static_cast<char>('1' + j);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

int perm_order(const Perm& p) {
  int k = 1;
  for (Perm q = p; q != perm_identity(); q = compose(p, q)) ++k;
  return k;
}

Group closure(const std::vector<Perm>& gens) {
  std::set<Perm> s{perm_identity()};
  std::vector<Perm> frontier{perm_identity()};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        Perm y = compose(g, x);
        if (s.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return Group(s.begin(), s.end());
}

bool contains(const Group& g, const Perm& p) { return std::binary_search(g.begin(), g.end(), p); }

bool is_subgroup(const Group& h, const Group& g) {
  return std::includes(g.begin(), g.end(), h.begin(), h.end());
}

Group conjugate(const Group& g, const Perm& s) {
  Perm si = inverse(s);
  Group r;
  for (const auto& x : g) r.push_back(compose(compose(s, x), si));
  std::sort(r.begin(), r.end());
  return r;
}

bool conjugate_in_s6(const Group& g, const Group& h) {
  if (g.size() != h.size()) return false;
  Perm s = perm_identity();
  do {
    if (conjugate(g, s) == h) return true;
  } while (std::next_permutation(s.begin(), s.end()));
  return false;
}

bool is_transitive(const Group& g) {
  std::set<int> img;
  for (const auto& x : g) img.insert(x[0]);
  return img.size() == 6;
}

const Group& wreath48() {
  static const Group w = [] {
    Group out;
    Perm s = perm_identity();
    do {
      bool ok = true;
      for (int b = 0; b < 3 && ok; ++b) ok = s[2 * b] / 2 == s[2 * b + 1] / 2;
      if (ok) out.push_back(s);
    } while (std::next_permutation(s.begin(), s.end()));
    return out;
  }();
  return w;
}

const std::vector<Group>& wreath48_subgroups() {
  static const std::vector<Group> subs = [] {
    // Every subgroup of the wreath product is generated by at most three elements;
    // grow by adjoining single elements to already-found subgroups.
    std::set<Group> found{Group{perm_identity()}};
    std::vector<Group> frontier{Group{perm_identity()}};
    while (!frontier.empty()) {
      std::vector<Group> next;
      for (const auto& h : frontier)
        for (const auto& x : wreath48()) {
          if (contains(h, x)) continue;
          std::vector<Perm> gens(h.begin(), h.end());
          gens.push_back(x);
          Group g = closure(gens);
          if (found.insert(g).second) next.push_back(g);
        }
      frontier = std::move(next);
    }
    std::vector<Group> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const Group& a, const Group& b) { return a.size() < b.size(); });
    return out;
  }();
  return subs;
}

int block_quotient_order(const Group& g) {
  std::set<std::array<int, 3>> img;
  for (const auto& x : g) img.insert({x[0] / 2, x[2] / 2, x[4] / 2});
  return static_cast<int>(img.size());
}

std::vector<Perm> minimal_generators(const Group& g) {
  if (g.size() == 1) return {};
  for (const auto& a : g)
    if (closure({a}) == g) return {a};
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (closure({g[i], g[j]}) == g) return {g[i], g[j]};
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      for (std::size_t k = j + 1; k < g.size(); ++k)
        if (closure({g[i], g[j], g[k]}) == g) return {g[i], g[j], g[k]};
  return std::vector<Perm>(g.begin(), g.end());
}

std::vector<std::array<int, 2>> index_pairs() {
  std::vector<std::array<int, 2>> out;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) out.push_back({i, j});
  return out;
}

std::vector<std::array<int, 3>> transversal_triples() {
  std::vector<std::array<int, 3>> out;
  for (int a : {0, 1})
    for (int b : {2, 3})
      for (int c : {4, 5}) out.push_back({a, b, c});
  return out;
}

namespace {

template <std::size_t K>
std::vector<int> orbits_on(const Group& g, const std::vector<std::array<int, K>>& objs) {
  std::map<std::array<int, K>, int> index;
  for (std::size_t i = 0; i < objs.size(); ++i) index[objs[i]] = static_cast<int>(i);
  std::vector<int> id(objs.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (id[i] >= 0) continue;
    for (const auto& x : g) {
      std::array<int, K> img;
      for (std::size_t k = 0; k < K; ++k) img[k] = x[objs[i][k]];
      std::sort(img.begin(), img.end());
      id[index.at(img)] = next;
    }
    ++next;
  }
  return id;
}

}  // namespace

std::vector<int> pair_orbits(const Group& g) { return orbits_on(g, index_pairs()); }

std::vector<int> triple_orbits(const Group& g) { return orbits_on(g, transversal_triples()); }

std::vector<int> orbit_sizes(const std::vector<int>& orbit_ids) {
  int n = orbit_ids.empty() ? 0 : *std::max_element(orbit_ids.begin(), orbit_ids.end()) + 1;
  std::vector<int> s(n, 0);
  for (int i : orbit_ids) ++s[i];
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace tori
