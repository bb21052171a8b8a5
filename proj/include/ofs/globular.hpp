#pragma once

#include <optional>
#include <string>
#include <vector>

#include "constructions.hpp"

namespace ofs {

// d^(k)Y and c^(k)Y as masks over X, for a convex Y
inline FaceSet domain_set(const FaceStructure& X, const FaceSet& Y, int k) {
  FaceSet cod(X.size(), 0), out(X.size(), 0);
  for (int a = 0; a < X.size(); ++a)
    if (Y[a] && X[a].dim == k + 1 && !X.loop(a)) cod[X[a].gamma] = 1;
  for (int a = 0; a < X.size(); ++a)
    out[a] = Y[a] && (X[a].dim < k || (X[a].dim == k && !cod[a]));
  return out;
}

inline FaceSet codomain_set(const FaceStructure& X, const FaceSet& Y, int k) {
  FaceSet dom(X.size(), 0), in(X.size(), 0), out(X.size(), 0);
  for (int a = 0; a < X.size(); ++a) {
    if (!Y[a] || X[a].dim != k + 1) continue;
    if (!X.loop(a))
      for (int x : X[a].delta) dom[x] = 1;
    for (int x : iota_of(X, a)) in[x] = 1;
  }
  for (int a = 0; a < X.size(); ++a) {
    int d = X[a].dim;
    out[a] = Y[a] && (d < k - 1 || (d == k - 1 && !in[a]) || (d == k && !dom[a]));
  }
  return out;
}

inline FaceSet all_faces(const FaceStructure& X) { return FaceSet(X.size(), 1); }

inline Stretched domain(const FaceStructure& S, int k) {
  if (k >= S.dim()) return stretch(S, all_faces(S));
  return stretch(S, domain_set(S, all_faces(S), k));
}

inline Stretched codomain(const FaceStructure& S, int k) {
  if (k >= S.dim()) return stretch(S, all_faces(S));
  return stretch(S, codomain_set(S, all_faces(S), k));
}

struct Tensor {
  FaceStructure S;
  std::vector<int> kS, kT;  // kappa maps into the result
};

inline Tensor tensor(const FaceStructure& A, const FaceStructure& B, int k) {
  Stretched cA = codomain(A, k), dB = domain(B, k);
  auto h = find_iso(dB.S, cA.S);
  if (!h) throw Error(Errc::BoundaryMismatch, "codomain of the first does not match the domain of the second");
  Tensor t;
  t.S = A;
  t.S.name = A.name + "*" + B.name;
  t.kS.resize(A.size());
  std::iota(t.kS.begin(), t.kS.end(), 0);
  t.kT.assign(B.size(), -1);
  FaceSet dmask = domain_set(B, all_faces(B), k);
  if (k >= B.dim()) dmask = all_faces(B);
  std::vector<char> shared(B.size(), 0);
  for (int b = 0; b < B.size(); ++b) {
    if (!dmask[b] || B[b].dim > k) continue;
    int c = dB.first[b];
    t.kT[b] = cA.nu.img[h->img[c]];
    shared[b] = 1;
  }
  for (int b = 0; b < B.size(); ++b)
    if (!shared[b]) t.kT[b] = t.S.add_fresh(B[b].id, B[b].dim);
  for (int b = 0; b < B.size(); ++b) {
    if (shared[b] || B[b].dim == 0) continue;
    int r = t.kT[b];
    t.S.set_gamma(r, t.kT[B[b].gamma]);
    if (B.eps(b)) {
      t.S.set_empty(r, t.kT[B[b].empty_on]);
    } else {
      std::vector<int> d;
      for (int x : B[b].delta) d.push_back(t.kT[x]);
      t.S.set_delta(r, d);
    }
  }
  FaceStructure glued = t.S;
  glued.sim.clear();
  Relations G(glued), RA(A), RB(B);
  int n = t.S.size();
  Rel sim(n);
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < A.size(); ++b)
      if (RA.sim(a, b)) sim.set(a, b);
  for (int a = 0; a < B.size(); ++a)
    for (int b = 0; b < B.size(); ++b)
      if (RB.sim(a, b) && B[a].dim >= k) sim.set(t.kT[a], t.kT[b]);
  std::vector<int> tinv(n, -1);
  for (int b = 0; b < B.size(); ++b) tinv[t.kT[b]] = b;
  std::vector<char> from_a(n, 0), t_only(n, 0), sh(n, 0);
  for (int a = 0; a < A.size(); ++a) from_a[a] = 1;
  for (int b = 0; b < B.size(); ++b) {
    if (shared[b]) sh[t.kT[b]] = 1;
    else t_only[t.kT[b]] = 1;
  }
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < n; ++b)
      if (A[a].dim == k + 1 && t_only[b] && t.S[b].dim == k + 1 && G.minus(a, b)) sim.set(a, b);
  for (int x = 0; x < A.size(); ++x) {
    if (A[x].dim != k || sh[x]) continue;
    for (int y = 0; y < n; ++y) {
      if (!t_only[y] || t.S[y].dim != k) continue;
      bool fwd = false, back = false;
      for (int z = 0; z < A.size(); ++z) {
        if (!sh[z] || A[z].dim != k) continue;
        int zb = tinv[z];
        if (RA.plus(x, z) && RB.sim(zb, tinv[y])) fwd = true;
        if (RA.plus(x, z) && RB.sim(tinv[y], zb)) back = true;
      }
      if (fwd) sim.set(x, y);
      if (back && G.minus(y, x)) sim.set(y, x);
    }
  }
  sim.close();
  t.S.sim = sim.reduction();
  return t;
}

// a cut of the cover at face index `c`; its base face and dimension
struct SaddleCut {
  int cover_face;
  int face;   // underlying face of S
  int lower;  // |L|
  int dim;
};

struct DecompContext {
  const FaceStructure* X;
  Relations R;
  Cover cov;
  Relations RD;
  FaceSet gamma_nonloop;  // gamma(X^{-lambda})

  explicit DecompContext(const FaceStructure& S) : X(&S), R(S), cov(positive_cover(S, R)), RD(cov.S) {
    gamma_nonloop = codomains_of_nonloops(S, all_faces(S));
  }

  // (gamma^(k) alpha, -, up gamma^(k+1) alpha) as a cover face
  int key(int al, int k) const {
    const FaceStructure& S = *X;
    int z = gamma_to(S, al, k), b = gamma_to(S, al, k + 1);
    const auto& I = cov.cls.cluster[z];
    std::vector<char> U(S.size(), 0);
    for (int be : I)
      if (R.sim(b, S[be].gamma)) U[be] = 1;
    return cov.cut(z, cut_from_upper(I, U));
  }
  int cut_index(int face, int lower) const { return cov.cut(face, lower); }
};

inline std::vector<SaddleCut> saddles(const DecompContext& ctx) {
  const FaceStructure& S = *ctx.X;
  const FaceStructure& D = ctx.cov.S;
  Classes dc = classify(D, ctx.RD);
  std::vector<SaddleCut> out;
  for (int c = 0; c < D.size(); ++c) {
    if (ctx.cov.is_bar[c] || dc.iota_all[c]) continue;
    int a = ctx.cov.base[c], k = S[a].dim;
    bool under = false, over = false;
    for (int al : S.of_dim(k + 1)) {
      if (ctx.RD.le_plus(ctx.key(al, k), c)) under = true;
      else over = true;
    }
    if (under && over) out.push_back({c, a, ctx.cov.lower[c], k});
  }
  return out;
}

inline std::vector<SaddleCut> saddles(const FaceStructure& S) { return saddles(DecompContext(S)); }

inline FaceSet down_set(const DecompContext& ctx, const FaceSet& Y, int c) {
  const FaceStructure& X = *ctx.X;
  int a = ctx.cov.base[c], k = X[a].dim;
  FaceSet cod(X.size(), 0), out(X.size(), 0);
  for (int b = 0; b < X.size(); ++b)
    if (Y[b] && X[b].dim == k + 1 && !X.loop(b)) cod[X[b].gamma] = 1;
  for (int b = 0; b < X.size(); ++b) {
    if (!Y[b]) continue;
    int d = X[b].dim;
    if (d > k) out[b] = ctx.RD.le_plus(ctx.key(b, k), c);
    else if (d == k) out[b] = ctx.R.le_plus(b, a) || !cod[b];
    else out[b] = 1;
  }
  return out;
}

inline FaceSet up_set(const DecompContext& ctx, const FaceSet& Y, int c) {
  const FaceStructure& X = *ctx.X;
  int a = ctx.cov.base[c], k = X[a].dim;
  FaceSet dn = down_set(ctx, Y, c);
  FaceSet in(X.size(), 0), out(X.size(), 0);
  for (int b = 0; b < X.size(); ++b)
    if (dn[b] && X[b].dim == k + 1)
      for (int x : iota_of(X, b)) in[x] = 1;
  for (int b = 0; b < X.size(); ++b) {
    if (!Y[b]) continue;
    int d = X[b].dim;
    if (d > k) out[b] = !ctx.RD.le_plus(ctx.key(b, k), c);
    else if (d == k) out[b] = !ctx.R.plus(b, a);
    else if (d == k - 1) out[b] = !in[b];
    else out[b] = 1;
  }
  return out;
}

// stretch of an upper part; the split codomain of a loop cut is renamed
inline Stretched stretch_part(const DecompContext& ctx, const FaceSet& m) {
  const FaceStructure& X = *ctx.X;
  Stretched st = stretch(X, ctx.R, m);
  for (int x = 0; x < X.size(); ++x) {
    const auto& cl = st.cluster[x];
    if (cl.size() != 1 || st.first[x] < 0) continue;
    st.S.rename(st.first[x], X[x].id + "-");
    st.S.rename(st.first[x] + 1, X[x].id + "+");
  }
  return st;
}

struct Decomposition {
  Stretched lower, upper;
  int k;
};

inline Decomposition decompose(const DecompContext& ctx, int c) {
  if (c < 0 || c >= ctx.cov.S.size() || ctx.cov.is_bar[c]) throw Error(Errc::NotACut, "not a cut of the cover");
  const FaceStructure& X = *ctx.X;
  FaceSet all = all_faces(X);
  Decomposition d;
  d.k = X[ctx.cov.base[c]].dim;
  d.lower = stretch_part(ctx, down_set(ctx, all, c));
  d.upper = stretch_part(ctx, up_set(ctx, all, c));
  d.lower.S.name = X.name + "-lower";
  d.upper.S.name = X.name + "-upper";
  return d;
}

// find the cover face of the cut (face, L) given by lower part ids
inline int find_cut(const DecompContext& ctx, int face, const std::vector<int>& L) {
  const auto& I = ctx.cov.cls.cluster[face];
  std::vector<char> in(ctx.X->size(), 0);
  for (int l : L) {
    if (std::find(I.begin(), I.end(), l) == I.end()) throw Error(Errc::NotACut, ctx.X->operator[](l).id + " is not in the cluster");
    in[l] = 1;
  }
  return ctx.cov.cut(face, cut_from_lower(I, in));
}

// the same split computed on the cover and divided by the bars in each part
inline std::pair<FaceStructure, FaceStructure> decompose_via_cover(const DecompContext& ctx, int c) {
  const FaceStructure& D = ctx.cov.S;
  DecompContext dctx(D);
  int cd = dctx.cov.cut(c, 0);
  FaceSet all = all_faces(D);
  auto part = [&](const FaceSet& m) {
    Stretched st = stretch(D, dctx.R, m);
    std::vector<int> J;
    for (int f = 0; f < st.S.size(); ++f)
      if (ctx.cov.is_bar[st.nu.img[f]]) J.push_back(f);
    return quotient(st.S, J, false).S;
  };
  return {part(down_set(dctx, all, cd)), part(up_set(dctx, all, cd))};
}

}  // namespace ofs
