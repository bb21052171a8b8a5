#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include "axioms.hpp"
#include "io.hpp"

namespace ofs {

inline Report check_hypergraph_morphism(const FaceStructure& S, const FaceStructure& T, const FaceMap& f) {
  Report rep;
  for (int a = 0; a < S.size(); ++a) {
    if (f.collapsed(a) || f.img[a] < 0 || f.img[a] >= T.size()) {
      rep.add("total", {a}, "face has no face image");
      continue;
    }
    int b = f.img[a];
    if (T[b].dim != S[a].dim) {
      rep.add("dimension", {a}, "image of different dimension");
      continue;
    }
    if (S[a].dim == 0) continue;
    if (f.img[S[a].gamma] != T[b].gamma) rep.add("gamma", {a}, "gamma square does not commute");
    if (S.eps(a)) {
      if (!T.eps(b) || T[b].empty_on != f.img[S[a].empty_on]) rep.add("delta", {a}, "empty domain not preserved");
      continue;
    }
    if (T.eps(b) || T[b].delta.size() != S[a].delta.size()) {
      rep.add("delta", {a}, "delta is not mapped bijectively");
      continue;
    }
    std::vector<int> im;
    for (int x : S[a].delta) im.push_back(f.img[x]);
    std::sort(im.begin(), im.end());
    if (std::adjacent_find(im.begin(), im.end()) != im.end() || im != T[b].delta)
      rep.add("delta", {a}, "delta is not mapped bijectively");
  }
  return rep;
}

inline Report check_monotone(const FaceStructure& S, const FaceStructure& T, const FaceMap& f) {
  Report rep = check_hypergraph_morphism(S, T, f);
  if (!rep.valid()) return rep;
  Rel ss = closure_of(S.size(), S.sim), ts = closure_of(T.size(), T.sim);
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b)
      if (ss(a, b) && !ts(f.img[a], f.img[b])) rep.add("monotone", {a, b}, "sim pair not preserved");
  return rep;
}

inline Report check_local(const FaceStructure& S, const FaceStructure& T, const FaceMap& f) {
  Report rep = check_hypergraph_morphism(S, T, f);
  if (!rep.valid()) return rep;
  Rel ss = closure_of(S.size(), S.sim), ts = closure_of(T.size(), T.sim);
  for (int a = 0; a < S.size(); ++a)
    for (int x : S[a].delta)
      for (int y : S[a].delta)
        if (ss(x, y) != ts(f.img[x], f.img[y])) rep.add("local", {a, x, y}, "delta order not transported");
  return rep;
}

// images as elements of faces or empty faces: v >= 0 is a face, v < 0 is ~u for 1_u
inline int elt(const FaceMap& f, int a) { return f.collapsed(a) ? ~f.empty_on[a] : f.img[a]; }

struct CollapseReport {
  Report report;
  std::vector<int> kernel;
  bool kernel_is_ideal = false;
};

inline bool is_ideal(const FaceStructure& T, const std::vector<int>& J) {
  FaceSet in(T.size(), 0), cod(T.size(), 0), dom(T.size(), 0);
  for (int a : J) in[a] = 1;
  for (int a = 0; a < T.size(); ++a)
    if (T[a].dim > 0) cod[T[a].gamma] = 1;
  for (int a : J)
    for (int x : T[a].delta) dom[x] = 1;
  for (int a : J)
    if (!T.unary(a) || T[a].dim == 0 || cod[a] || dom[a]) return false;
  return true;
}

inline CollapseReport check_collapsing(const FaceStructure& S, const FaceStructure& T, const FaceMap& f) {
  CollapseReport out;
  Report& rep = out.report;
  Rel ss = closure_of(S.size(), S.sim), ts = closure_of(T.size(), T.sim);
  auto gam = [&](int e) { return e >= 0 ? T[e].gamma : ~e; };
  for (int a = 0; a < S.size(); ++a) {
    if (f.collapsed(a)) {
      out.kernel.push_back(a);
      if (T[f.empty_on[a]].dim + 1 != S[a].dim) rep.add("dimension", {a}, "collapsed to an empty face of wrong dimension");
    } else if (f.img[a] < 0 || T[f.img[a]].dim != S[a].dim) {
      rep.add("dimension", {a}, "image of different dimension");
    }
  }
  if (!rep.valid()) return out;
  for (int a = 0; a < S.size(); ++a) {
    if (S[a].dim == 0) continue;
    int ea = elt(f, a), eg = elt(f, S[a].gamma);
    if (eg < 0 || eg != gam(ea)) rep.add("gamma", {a}, "f(gamma a) differs from gamma f(a)");
    Bound lhs, rhs;
    if (S.eps(a)) {
      int u = elt(f, S[a].empty_on);
      if (u < 0) {
        rep.add("delta", {a}, "base of empty domain collapsed");
        continue;
      }
      lhs.empties.push_back(u);
    } else {
      for (int x : S[a].delta) {
        int e = elt(f, x);
        if (e >= 0) lhs.faces.push_back(e);
        else lhs.empties.push_back(~e);
      }
    }
    if (ea >= 0) rhs = delta_of(T, ea);
    else rhs.faces.push_back(~ea);
    if (!one_equal(T, lhs, rhs)) rep.add("delta", {a}, "f(delta a) not 1-equal to delta f(a)");
  }
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b)
      if (ss(a, b) && !f.collapsed(a) && !f.collapsed(b) && !ts(f.img[a], f.img[b]))
        rep.add("monotone", {a, b}, "sim pair not preserved");
  out.kernel_is_ideal = is_ideal(S, out.kernel);
  return out;
}

// f^{-1}(b) sorted by <+; nullopt when the fiber is not linear
inline std::optional<std::vector<int>> fiber(const FaceStructure& S, const Relations& R, const FaceMap& f, int b) {
  std::vector<int> xs;
  for (int a = 0; a < S.size(); ++a)
    if (!f.collapsed(a) && f.img[a] == b) xs.push_back(a);
  if (!linear_on(R.plus, xs)) return std::nullopt;
  std::sort(xs.begin(), xs.end(), [&](int x, int y) { return R.plus(x, y); });
  return xs;
}

// backtracking search over hypergraph morphisms preserving sim; `bijective` also demands reflection
inline void search_monotone(const FaceStructure& S, const FaceStructure& T, bool bijective,
                            const std::function<bool(const FaceMap&)>& visit) {
  if (bijective && (S.size() != T.size() || S.counts() != T.counts())) return;
  Rel ss = closure_of(S.size(), S.sim), ts = closure_of(T.size(), T.sim);
  std::vector<int> order(S.size());
  for (int i = 0; i < S.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return S[a].dim < S[b].dim; });
  FaceMap f(S.size());
  std::vector<char> used(T.size(), 0);
  bool stop = false;
  std::function<void(size_t)> go = [&](size_t i) {
    if (stop) return;
    if (i == order.size()) {
      stop = !visit(f);
      return;
    }
    int a = order[i];
    for (int b = 0; b < T.size() && !stop; ++b) {
      if (T[b].dim != S[a].dim || (bijective && used[b])) continue;
      if (S[a].dim > 0) {
        if (f.img[S[a].gamma] != T[b].gamma) continue;
        if (S.eps(a) != T.eps(b)) continue;
        if (S.eps(a)) {
          if (T[b].empty_on != f.img[S[a].empty_on]) continue;
        } else {
          if (S[a].delta.size() != T[b].delta.size()) continue;
          std::vector<int> im;
          for (int x : S[a].delta) im.push_back(f.img[x]);
          std::sort(im.begin(), im.end());
          if (std::adjacent_find(im.begin(), im.end()) != im.end() || im != T[b].delta) continue;
        }
      }
      bool ok = true;
      for (size_t j = 0; j < i && ok; ++j) {
        int c = order[j];
        if (S[c].dim != S[a].dim) continue;
        int d = f.img[c];
        if (ss(a, c) && !ts(b, d)) ok = false;
        if (ss(c, a) && !ts(d, b)) ok = false;
        if (bijective && (ts(b, d) != ss(a, c) || ts(d, b) != ss(c, a))) ok = false;
      }
      if (!ok) continue;
      f.img[a] = b;
      used[b] = 1;
      go(i + 1);
      used[b] = 0;
      f.img[a] = -1;
    }
  };
  go(0);
}

// rank-wise candidate checked directly; falls back to search when orders are not linear
inline std::optional<FaceMap> find_iso(const FaceStructure& S, const FaceStructure& T) {
  if (S.size() != T.size() || S.counts() != T.counts()) return std::nullopt;
  Relations RS(S), RT(T);
  auto rs = ranked(S, RS), rt = ranked(T, RT);
  if (rs && rt) {
    FaceMap f(S.size());
    for (size_t k = 0; k < rs->size(); ++k)
      for (size_t i = 0; i < (*rs)[k].size(); ++i) f.img[(*rs)[k][i]] = (*rt)[k][i];
    if (!check_hypergraph_morphism(S, T, f).valid()) return std::nullopt;
    for (int a = 0; a < S.size(); ++a)
      for (int b = 0; b < S.size(); ++b)
        if (RS.sim(a, b) != RT.sim(f.img[a], f.img[b])) return std::nullopt;
    return f;
  }
  std::optional<FaceMap> found;
  search_monotone(S, T, true, [&](const FaceMap& f) {
    found = f;
    return false;
  });
  return found;
}

inline bool isomorphic(const FaceStructure& S, const FaceStructure& T) { return find_iso(S, T).has_value(); }

inline std::string dim_letter(int k) {
  static const char* L[] = {"v", "e", "f", "g"};
  return k < 4 ? L[k] : "c" + std::to_string(k) + "_";
}

struct Canonical {
  FaceStructure S;           // renamed, faces in (dim, rank) order
  std::vector<int> old2new;  // index map from the input
  std::string key;
};

inline Canonical canonical(const FaceStructure& S) {
  Relations R(S);
  auto rk = ranked(S, R);
  if (!rk) throw Error(Errc::NotValidated, "global order is not linear");
  Canonical c;
  c.old2new.assign(S.size(), -1);
  std::vector<std::string> ids(S.size());
  for (size_t k = 0; k < rk->size(); ++k)
    for (size_t i = 0; i < (*rk)[k].size(); ++i) {
      int a = (*rk)[k][i];
      ids[a] = dim_letter(static_cast<int>(k)) + std::to_string(i);
      c.old2new[a] = c.S.add_face(ids[a], static_cast<int>(k));
    }
  std::ostringstream key;
  for (int k = 0; k < static_cast<int>(rk->size()); ++k) {
    key << "|" << k << ":" << (*rk)[k].size();
    for (int a : (*rk)[k]) {
      int n = c.old2new[a];
      if (k == 0) continue;
      c.S.set_gamma(n, c.old2new[S[a].gamma]);
      key << " " << c.old2new[S[a].gamma];
      if (S.eps(a)) {
        c.S.set_empty(n, c.old2new[S[a].empty_on]);
        key << "e" << c.old2new[S[a].empty_on];
      } else {
        std::vector<int> d;
        for (int x : S[a].delta) d.push_back(c.old2new[x]);
        c.S.set_delta(n, d);
        std::sort(d.begin(), d.end());
        key << "[";
        for (int x : d) key << x << ",";
        key << "]";
      }
    }
  }
  Rel sim(S.size());
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b)
      if (R.sim(a, b)) sim.set(c.old2new[a], c.old2new[b]);
  c.S.sim = sim.reduction();
  key << "|~";
  for (auto [a, b] : sim.pairs()) key << " " << a << "<" << b;
  c.key = key.str();
  c.S.name = S.name;
  return c;
}

inline std::string canonical_key(const FaceStructure& S) { return canonical(S).key; }

}  // namespace ofs
