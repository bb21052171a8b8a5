#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "morphisms.hpp"

namespace ofs {

// cut naming shared by stretching and covers
inline std::string cut_name(const FaceStructure& T, int x, const std::vector<int>& cluster, int p) {
  if (cluster.empty()) return T[x].id;
  std::string s = T[x].id + "@L=[";
  for (int i = 0; i < p; ++i) s += (i ? "," : "") + T[cluster[i]].id;
  return s + "]";
}

// position of the cut whose upper part is U (or lower part L) in a cluster
inline int cut_from_upper(const std::vector<int>& cluster, const std::vector<char>& inU) {
  int p = 0;
  while (p < static_cast<int>(cluster.size()) && !inU[cluster[p]]) ++p;
  for (int i = p; i < static_cast<int>(cluster.size()); ++i)
    if (!inU[cluster[i]]) throw Error(Errc::NotACut, "upper part is not a suffix");
  return p;
}
inline int cut_from_lower(const std::vector<int>& cluster, const std::vector<char>& inL) {
  int p = 0;
  while (p < static_cast<int>(cluster.size()) && inL[cluster[p]]) ++p;
  for (int i = p; i < static_cast<int>(cluster.size()); ++i)
    if (inL[cluster[i]]) throw Error(Errc::NotACut, "lower part is not a prefix");
  return p;
}

struct Stretched {
  FaceStructure S;                        // [X]
  FaceMap nu;                             // [X] -> T
  std::vector<int> lower;                 // |L| of each cut
  std::vector<std::vector<int>> cluster;  // E^X_x per face of T
  std::vector<int> first;                 // index of (x, empty L) or -1

  int cut(int x, int p) const { return first[x] < 0 ? -1 : first[x] + p; }
  int base(int c) const { return nu.img[c]; }
};

inline Stretched stretch(const FaceStructure& T, const Relations& R, FaceSet X) {
  X = saturate(T, X);
  if (!is_convex(T, R, X)) throw Error(Errc::NotConvex, "subset is not convex");
  int n = T.size();
  Stretched st;
  FaceSet cod = codomains_of_nonloops(T, X);
  st.cluster.assign(n, {});
  for (int l = 0; l < n; ++l)
    if (X[l] && T.loop(l) && !cod[l]) st.cluster[T[l].gamma].push_back(l);
  for (auto& cl : st.cluster) sort_by(cl, [&](int a, int b) { return R.sim(a, b); });
  auto up = [&](int x) {  // members of E_{gamma x} above x
    std::vector<char> m(n, 0);
    for (int b : st.cluster[T[x].gamma])
      if (R.sim(x, b)) m[b] = 1;
    return m;
  };
  auto down = [&](int t, int x) {
    std::vector<char> m(n, 0);
    for (int b : st.cluster[t])
      if (R.sim(b, x)) m[b] = 1;
    return m;
  };
  st.first.assign(n, -1);
  std::vector<int> order;
  for (int a = 0; a < n; ++a)
    if (X[a]) order.push_back(a);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return T[a].dim < T[b].dim; });
  for (int x : order) {
    int m = static_cast<int>(st.cluster[x].size());
    for (int p = 0; p <= m; ++p) {
      int c = st.S.add_face(cut_name(T, x, st.cluster[x], p), T[x].dim);
      if (p == 0) st.first[x] = c;
      st.nu.img.push_back(x);
      st.nu.empty_on.push_back(-1);
      st.lower.push_back(p);
    }
  }
  for (int c = 0; c < st.S.size(); ++c) {
    int x = st.nu.img[c];
    if (T[x].dim == 0) continue;
    int g = T[x].gamma;
    st.S.set_gamma(c, st.cut(g, cut_from_upper(st.cluster[g], up(x))));
    if (T.eps(x)) {
      int w = T[x].empty_on;
      std::vector<char> m(n, 0);
      for (int b : st.cluster[w])
        if (R.sim(g, b)) m[b] = 1;
      st.S.set_empty(c, st.cut(w, cut_from_upper(st.cluster[w], m)));
    } else {
      std::vector<int> d;
      for (int t : T[x].delta) d.push_back(st.cut(t, cut_from_lower(st.cluster[t], down(t, x))));
      st.S.set_delta(c, d);
    }
  }
  Rel sim(st.S.size());
  for (int a = 0; a < st.S.size(); ++a)
    for (int b = 0; b < st.S.size(); ++b)
      if (R.sim(st.nu.img[a], st.nu.img[b])) sim.set(a, b);
  st.S.sim = sim.reduction();
  st.S.name = T.name;
  return st;
}

inline Stretched stretch(const FaceStructure& T, const FaceSet& X) { return stretch(T, Relations(T), X); }

inline FaceSet empty_loops(const FaceStructure& T, const FaceSet& X) {
  FaceSet cod = codomains_of_nonloops(T, X), e(T.size(), 0);
  for (int a = 0; a < T.size(); ++a) e[a] = X[a] && T.loop(a) && !cod[a];
  return e;
}

struct Quotient {
  FaceStructure S;
  FaceMap q;                // T -> T/J, collapsing
  std::vector<int> cls;     // class index for faces outside J, else -1
  bool strict_ideal = false;
};

// J-loops: the least X with delta(alpha) in J u X implying gamma(alpha) in X
inline FaceSet j_loops(const FaceStructure& T, const FaceSet& J) {
  FaceSet X(T.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int al = 0; al < T.size(); ++al) {
      if (T[al].dim == 0 || T.eps(al) || X[T[al].gamma]) continue;
      bool in = true;
      for (int x : T[al].delta) in &= J[x] || X[x];
      if (in) X[T[al].gamma] = 1, changed = true;
    }
  }
  return X;
}

// quotient of a positive structure; J may be a strict ideal or the extended form
// (disjoint from codomains, |delta(a) - J| = 1 for every a in J)
inline Quotient quotient(const FaceStructure& T, const std::vector<int>& Jv, bool check = true) {
  int n = T.size();
  if (check) {
    Report rp = validate_positive(T);
    if (!rp.valid()) throw Error(Errc::NotPositive, rp.violations.front().tag);
  }
  FaceSet J(n, 0), cod(n, 0);
  for (int a : Jv) J[a] = 1;
  for (int a = 0; a < n; ++a)
    if (T[a].dim > 0) cod[T[a].gamma] = 1;
  std::vector<int> par(n);
  std::iota(par.begin(), par.end(), 0);
  std::function<int(int)> find = [&](int x) { return par[x] == x ? x : par[x] = find(par[x]); };
  for (int a : Jv) {
    if (T[a].dim == 0 || T.eps(a) || cod[a]) throw Error(Errc::NotIdeal, T[a].id);
    int rest = -1, cnt = 0;
    for (int x : T[a].delta)
      if (!J[x]) rest = x, ++cnt;
    if (cnt != 1) throw Error(Errc::NotIdeal, T[a].id + " does not collapse onto one face");
    par[find(rest)] = find(T[a].gamma);
  }
  Quotient Q;
  Q.strict_ideal = is_ideal(T, Jv);
  Relations R(T);
  std::vector<std::vector<int>> members(n);
  for (int a = 0; a < n; ++a)
    if (!J[a]) members[find(a)].push_back(a);
  std::vector<int> rep(n, -1);
  Q.cls.assign(n, -1);
  std::vector<int> order;
  for (int a = 0; a < n; ++a)
    if (!J[a] && find(a) == a) order.push_back(a);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (T[a].dim != T[b].dim) return T[a].dim < T[b].dim;
    return members[a].front() < members[b].front();
  });
  for (int root : order) {
    auto& ms = members[root];
    int r = ms.front();
    for (int m : ms)
      if (R.plus(m, r)) r = m;
    std::string id = ms.size() == 1 ? T[r].id : "q(" + T[r].id + ")";
    int c = Q.S.add_fresh(id, T[r].dim);
    rep[c] = r;
    for (int m : ms) Q.cls[m] = c;
  }
  rep.resize(Q.S.size());
  for (int c = 0; c < Q.S.size(); ++c) {
    if (Q.S[c].dim == 0) continue;
    Bound first;
    bool have = false;
    for (int a : members[find(rep[c])]) {
      Bound b;
      if (T[a].delta.empty() && T.eps(a)) throw Error(Errc::NotPositive, T[a].id);
      bool all = true;
      for (int x : T[a].delta) all &= static_cast<bool>(J[x]);
      if (all) b.empties.push_back(Q.cls[T[T[a].gamma].gamma]);
      else
        for (int x : T[a].delta)
          if (!J[x]) b.faces.push_back(Q.cls[x]);
      b.normalize();
      if (have && !(b == first)) throw Error(Errc::NotIdeal, "class of " + T[a].id + " has different domains");
      if (Q.cls[T[a].gamma] != Q.cls[T[rep[c]].gamma])
        throw Error(Errc::NotIdeal, "class of " + T[a].id + " has different codomains");
      first = b, have = true;
    }
    Q.S.set_gamma(c, Q.cls[T[rep[c]].gamma]);
    if (!first.empties.empty()) Q.S.set_empty(c, first.empties.front());
    else Q.S.set_delta(c, first.faces);
  }
  Rel sim(Q.S.size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (!J[a] && !J[b] && Q.cls[a] != Q.cls[b] && T[a].dim > 0 && R.minus(a, b)) sim.set(Q.cls[a], Q.cls[b]);
  sim.close();
  Q.S.sim = sim.reduction();
  Q.S.name = T.name.empty() ? "" : T.name + "/J";
  Q.q = FaceMap(n);
  for (int a = 0; a < n; ++a) {
    if (J[a]) Q.q.empty_on[a] = Q.cls[T[a].gamma];
    else Q.q.img[a] = Q.cls[a];
  }
  if (!Q.strict_ideal) {
    Report rp = validate_ordered(Q.S);
    if (!rp.valid()) throw Error(Errc::NotIdeal, "quotient is not an ordered face structure: " + rp.violations.front().tag);
  }
  return Q;
}

struct Cover {
  FaceStructure S;          // S-dagger
  FaceMap q;                // S-dagger -> S
  std::vector<int> bars;    // the ideal of bars
  std::vector<int> base;    // underlying face of a cut, or the alpha of a bar
  std::vector<char> is_bar;
  std::vector<int> lower;   // |L| of a cut
  std::vector<int> first;   // first cut over a face of S
  Classes cls;              // classes of S

  int cut(int x, int p) const { return first[x] + p; }
};

inline Cover positive_cover(const FaceStructure& S, const Relations& R) {
  int n = S.size();
  Cover cv;
  cv.cls = classify(S, R);
  const auto& I = cv.cls.cluster;
  auto up = [&](int a) {  // members of I_{gamma a} above a
    std::vector<char> m(n, 0);
    for (int b : I[S[a].gamma])
      if (R.sim(a, S[b].gamma)) m[b] = 1;
    return m;
  };
  auto down = [&](int x, int a) {
    std::vector<char> m(n, 0);
    for (int b : I[x])
      if (R.sim(S[b].gamma, a)) m[b] = 1;
    return m;
  };
  cv.first.assign(n, -1);
  std::vector<int> bar_of(n, -1);
  for (int k = 0; k <= S.dim(); ++k) {
    for (int x : S.of_dim(k)) {
      int m = static_cast<int>(I[x].size());
      for (int p = 0; p <= m; ++p) {
        int c = cv.S.add_face(cut_name(S, x, I[x], p), k);
        if (p == 0) cv.first[x] = c;
        cv.base.push_back(x);
        cv.is_bar.push_back(0);
        cv.lower.push_back(p);
      }
    }
    for (int al : S.of_dim(k + 1)) {
      if (!cv.cls.initial[al]) continue;
      int c = cv.S.add_face("bar(" + S[al].id + ")", k);
      bar_of[al] = c;
      cv.base.push_back(al);
      cv.is_bar.push_back(1);
      cv.lower.push_back(-1);
      cv.bars.push_back(c);
    }
  }
  for (int c = 0; c < cv.S.size(); ++c) {
    int a = cv.base[c];
    if (cv.is_bar[c]) {
      int ga = S[a].gamma, w = S[ga].gamma;
      cv.S.set_gamma(c, cv.cut(w, cut_from_upper(I[w], up(ga))));
      cv.S.set_delta(c, {cv.cut(w, cut_from_lower(I[w], down(w, ga)))});
      continue;
    }
    if (S[a].dim == 0) continue;
    int g = S[a].gamma;
    cv.S.set_gamma(c, cv.cut(g, cut_from_upper(I[g], up(a))));
    std::vector<int> d;
    for (int b : S.of_dim(S[a].dim))
      if (cv.cls.initial[b] && R.le_plus(b, a)) d.push_back(bar_of[b]);
    for (int x : S[a].delta) d.push_back(cv.cut(x, cut_from_lower(I[x], down(x, a))));
    if (d.empty()) throw Error(Errc::NotValidated, "cut of " + S[a].id + " has empty domain");
    cv.S.set_delta(c, d);
  }
  Relations RD(cv.S);
  Rel m = RD.minus;
  for (int a = 0; a < cv.S.size(); ++a)
    if (cv.S[a].dim == 0)
      for (int b = 0; b < cv.S.size(); ++b) m.reset(a, b);
  cv.S.sim = m.reduction();
  cv.S.name = S.name.empty() ? "" : S.name + "+cover";
  cv.q = FaceMap(cv.S.size());
  for (int c = 0; c < cv.S.size(); ++c) {
    if (cv.is_bar[c]) cv.q.empty_on[c] = S[cv.base[c]].empty_on;
    else cv.q.img[c] = cv.base[c];
  }
  return cv;
}

inline Cover positive_cover(const FaceStructure& S) { return positive_cover(S, Relations(S)); }

// N-bullet for a k-normal N
inline FaceStructure principal_extension(const FaceStructure& N, int k) {
  if (!is_normal(N, k)) throw Error(Errc::NotNormal, "structure is not " + std::to_string(k) + "-normal");
  FaceStructure E = N;
  E.name = N.name.empty() ? "" : N.name + "-bullet";
  FaceSet dom(N.size(), 0);
  for (int a = 0; a < N.size(); ++a)
    if (N[a].dim > 0 && !N.loop(a))
      for (int x : N[a].delta) dom[x] = 1;
  auto p = [&](int l) {  // unique face of N_l - delta(N_{l+1})
    for (int a : N.of_dim(l))
      if (!dom[a]) return a;
    return -1;
  };
  auto Nk = N.of_dim(k);
  if (k == 0) {
    int p0 = E.add_fresh("p0", 0), p1 = E.add_fresh("p1", 1);
    E.set_gamma(p1, p0);
    E.set_delta(p1, Nk);
    return E;
  }
  int pk = E.add_fresh("p" + std::to_string(k), k);
  int pk1 = E.add_fresh("p" + std::to_string(k + 1), k + 1);
  int pkm = p(k - 1);
  E.set_gamma(pk, pkm);
  E.set_gamma(pk1, pk);
  if (!Nk.empty()) {
    E.set_delta(pk1, Nk);
    std::vector<int> d;
    FaceSet g(N.size(), 0);
    for (int a : Nk) g[N[a].gamma] = 1;
    for (int a : Nk)
      for (int x : N[a].delta)
        if (!g[x]) d.push_back(x);
    if (d.empty()) throw Error(Errc::NotNormal, "top faces have no free domain");
    E.set_delta(pk, d);
  } else {
    E.set_delta(pk, {pkm});
    E.set_empty(pk1, pkm);
  }
  return E;
}

}  // namespace ofs
