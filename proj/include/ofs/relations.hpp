#pragma once

#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "face_structure.hpp"

namespace ofs {

// dense binary relation on face indices
class Rel {
 public:
  Rel() = default;
  explicit Rel(int n) : n_(n), w_((n + 63) / 64), bits_(static_cast<size_t>(n) * w_, 0) {}

  int n() const { return n_; }
  bool operator()(int i, int j) const { return (bits_[i * w_ + (j >> 6)] >> (j & 63)) & 1u; }
  void set(int i, int j) { bits_[i * w_ + (j >> 6)] |= std::uint64_t{1} << (j & 63); }
  void reset(int i, int j) { bits_[i * w_ + (j >> 6)] &= ~(std::uint64_t{1} << (j & 63)); }

  void close() {
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        if ((*this)(i, k))
          for (int w = 0; w < w_; ++w) bits_[i * w_ + w] |= bits_[k * w_ + w];
  }

  bool irreflexive() const {
    for (int i = 0; i < n_; ++i)
      if ((*this)(i, i)) return false;
    return true;
  }
  bool subset_of(const Rel& o) const {
    for (size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~o.bits_[i]) return false;
    return true;
  }
  bool empty() const {
    for (auto b : bits_)
      if (b) return false;
    return true;
  }
  bool operator==(const Rel& o) const { return n_ == o.n_ && bits_ == o.bits_; }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> r;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if ((*this)(i, j)) r.emplace_back(i, j);
    return r;
  }
  // covering pairs of a transitive strict relation
  std::vector<std::pair<int, int>> reduction() const {
    std::vector<std::pair<int, int>> r;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        if (!(*this)(i, j)) continue;
        bool cover = true;
        for (int c = 0; c < n_ && cover; ++c)
          if (c != i && c != j && (*this)(i, c) && (*this)(c, j)) cover = false;
        if (cover) r.emplace_back(i, j);
      }
    return r;
  }

 private:
  int n_ = 0;
  int w_ = 0;
  std::vector<std::uint64_t> bits_;
};

inline Rel closure_of(int n, const std::vector<std::pair<int, int>>& gens) {
  Rel r(n);
  for (auto [a, b] : gens) r.set(a, b);
  r.close();
  return r;
}

struct Relations {
  Rel plus, minus, sim;

  Relations() = default;
  explicit Relations(const FaceStructure& S) : plus(S.size()), minus(S.size()), sim(S.size()) {
    int n = S.size();
    for (int al = 0; al < n; ++al) {
      const Face& f = S[al];
      if (f.dim == 0 || S.loop(al)) continue;
      for (int x : f.delta) plus.set(x, f.gamma);
    }
    plus.close();
    for (int a = 0; a < n; ++a) {
      if (S[a].dim == 0) continue;
      for (int b = 0; b < n; ++b) {
        if (S[b].dim != S[a].dim) continue;
        const auto& d = S[b].delta;
        if (std::binary_search(d.begin(), d.end(), S[a].gamma)) minus.set(a, b);
      }
    }
    minus.close();
    for (auto [a, b] : S.sim) sim.set(a, b);
    sim.close();
  }

  bool le_plus(int a, int b) const { return a == b || plus(a, b); }
  bool perp_plus(int a, int b) const { return plus(a, b) || plus(b, a); }
  bool perp_sim(int a, int b) const { return sim(a, b) || sim(b, a); }
};

// gamma iterated down to dimension l (identity when dim(a) <= l)
inline int gamma_to(const FaceStructure& S, int a, int l) {
  while (S[a].dim > l) a = S[a].gamma;
  return a;
}

// a <~_l b
inline bool sim_at(const FaceStructure& S, const Relations& R, int a, int b, int l) {
  return R.sim(gamma_to(S, a, l), gamma_to(S, b, l));
}

inline Rel global_order(const FaceStructure& S, const Relations& R) {
  Rel g(S.size());
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b) {
      if (a == b || S[a].dim != S[b].dim) continue;
      bool lt = R.plus(a, b);
      for (int l = S[a].dim; l >= 0 && !lt; --l) lt = sim_at(S, R, a, b, l);
      if (lt) g.set(a, b);
    }
  return g;
}

inline bool linear_on(const Rel& r, const std::vector<int>& xs) {
  for (size_t i = 0; i < xs.size(); ++i) {
    if (r(xs[i], xs[i])) return false;
    for (size_t j = i + 1; j < xs.size(); ++j) {
      bool ab = r(xs[i], xs[j]), ba = r(xs[j], xs[i]);
      if (ab == ba) return false;
    }
  }
  return true;
}

// faces of each dimension sorted by the global order; requires linearity
inline std::optional<std::vector<std::vector<int>>> ranked(const FaceStructure& S, const Relations& R) {
  Rel g = global_order(S, R);
  std::vector<std::vector<int>> out;
  for (int k = 0; k <= S.dim(); ++k) {
    auto xs = S.of_dim(k);
    if (!linear_on(g, xs)) return std::nullopt;
    std::sort(xs.begin(), xs.end(), [&](int a, int b) { return g(a, b); });
    out.push_back(std::move(xs));
  }
  return out;
}

struct Classes {
  FaceSet eps, lambda, unary, initial;
  std::vector<std::vector<int>> iota;     // iota(alpha) per face
  FaceSet iota_all;                       // union of all iota(alpha)
  std::vector<std::vector<int>> cluster;  // I_x per face x, cluster order
};

// sort a list by a relation, ties kept in index order
inline void sort_by(std::vector<int>& xs, const std::function<bool(int, int)>& lt) {
  std::vector<std::pair<int, int>> keyed;
  for (int x : xs) {
    int rank = 0;
    for (int y : xs)
      if (y != x && lt(y, x)) ++rank;
    keyed.emplace_back(rank, x);
  }
  std::sort(keyed.begin(), keyed.end());
  for (size_t i = 0; i < xs.size(); ++i) xs[i] = keyed[i].second;
}

inline std::vector<int> iota_of(const FaceStructure& S, int al) {
  std::vector<int> cod, dom;
  if (S[al].dim < 2) return {};
  for (int x : S[al].delta) {
    if (S.loop(x)) continue;
    cod.push_back(S[x].gamma);
    for (int y : S[x].delta) dom.push_back(y);
  }
  std::sort(cod.begin(), cod.end());
  std::sort(dom.begin(), dom.end());
  std::vector<int> r;
  std::set_intersection(cod.begin(), cod.end(), dom.begin(), dom.end(), std::back_inserter(r));
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

inline Classes classify(const FaceStructure& S, const Relations& R) {
  int n = S.size();
  Classes c;
  c.eps.assign(n, 0);
  c.lambda.assign(n, 0);
  c.unary.assign(n, 0);
  c.initial.assign(n, 0);
  c.iota_all.assign(n, 0);
  c.iota.resize(n);
  c.cluster.resize(n);
  FaceSet gam(n, 0);
  for (int a = 0; a < n; ++a) {
    if (S[a].dim == 0) continue;
    c.eps[a] = S.eps(a);
    c.lambda[a] = S.loop(a);
    c.unary[a] = S.unary(a);
    if (!S.loop(a)) gam[S[a].gamma] = 1;
    c.iota[a] = iota_of(S, a);
    for (int x : c.iota[a]) c.iota_all[x] = 1;
  }
  for (int a = 0; a < n; ++a)
    if (c.eps[a] && !gam[a]) {
      c.initial[a] = 1;
      c.cluster[S[a].empty_on].push_back(a);
    }
  for (auto& cl : c.cluster)
    sort_by(cl, [&](int a, int b) { return R.sim(S[a].gamma, S[b].gamma) || (S[a].gamma == S[b].gamma && R.sim(a, b)); });
  return c;
}

// gamma(S^{-lambda}) restricted to a mask
inline FaceSet codomains_of_nonloops(const FaceStructure& S, const FaceSet& X) {
  FaceSet r(S.size(), 0);
  for (int a = 0; a < S.size(); ++a)
    if (X[a] && S[a].dim > 0 && !S.loop(a)) r[S[a].gamma] = 1;
  return r;
}

// flat upper paths from x to y whose faces lie in `allowed`
inline std::vector<std::vector<int>> flat_upper_paths(const FaceStructure& S, const FaceSet& allowed, int x, int y,
                                                      size_t limit = 64) {
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  FaceSet used(S.size(), 0);
  std::function<void(int)> go = [&](int from) {
    if (out.size() >= limit) return;
    for (int al = 0; al < S.size(); ++al) {
      if (!allowed[al] || used[al] || S[al].dim != S[from].dim + 1 || S.loop(al)) continue;
      if (!std::binary_search(S[al].delta.begin(), S[al].delta.end(), from)) continue;
      used[al] = 1;
      path.push_back(al);
      if (S[al].gamma == y) out.push_back(path);
      go(S[al].gamma);
      path.pop_back();
      used[al] = 0;
    }
  };
  go(x);
  return out;
}

// wt(a) = |{b in S^{-lambda} : b <+ a}|
inline std::vector<int> weights(const FaceStructure& S, const Relations& R) {
  std::vector<int> w(S.size(), 0);
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b)
      if (S[b].dim == S[a].dim && !S.loop(b) && R.plus(b, a)) ++w[a];
  return w;
}

// X-depth and X-height: longest flat upper (X - gamma(X^{-lambda}))-paths from / to a face
struct Depths {
  std::vector<int> dh, ht;
};

inline Depths depths(const FaceStructure& S, const FaceSet& X) {
  int n = S.size();
  FaceSet cod = codomains_of_nonloops(S, X);
  auto ok = [&](int al) { return X[al] && S[al].dim > 0 && !S.loop(al) && !cod[al]; };
  Depths d;
  d.dh.assign(n, -1);
  d.ht.assign(n, -1);
  std::function<int(int)> dh = [&](int a) -> int {
    if (d.dh[a] >= 0) return d.dh[a];
    d.dh[a] = 0;
    int best = 0;
    for (int al = 0; al < n; ++al)
      if (ok(al) && std::binary_search(S[al].delta.begin(), S[al].delta.end(), a))
        best = std::max(best, 1 + dh(S[al].gamma));
    return d.dh[a] = best;
  };
  std::function<int(int)> ht = [&](int a) -> int {
    if (d.ht[a] >= 0) return d.ht[a];
    d.ht[a] = 0;
    int best = 0;
    for (int al = 0; al < n; ++al) {
      if (!ok(al) || S[al].gamma != a) continue;
      int m = 0;
      for (int x : S[al].delta) m = std::max(m, ht(x));
      best = std::max(best, 1 + m);
    }
    return d.ht[a] = best;
  };
  for (int a = 0; a < n; ++a)
    if (X[a]) dh(a), ht(a);
  return d;
}

struct CompareStep {
  int level;
  std::string verdict;  // "=", "<+", ">+", "<~", ">~", "none"
};

// walk codomains down from dim n until the faces separate
inline std::vector<CompareStep> compare(const FaceStructure& S, const Relations& R, int a, int b) {
  if (a == b) throw Error(Errc::EqualFaces, S[a].id);
  if (S[a].dim != S[b].dim) throw Error(Errc::MixedDimensions, S[a].id + "," + S[b].id);
  std::vector<CompareStep> out;
  for (int l = S[a].dim; l >= 0; --l) {
    int x = gamma_to(S, a, l), y = gamma_to(S, b, l);
    std::string v = "none";
    if (x == y) v = "=";
    else if (R.plus(x, y)) v = "<+";
    else if (R.plus(y, x)) v = ">+";
    else if (R.sim(x, y)) v = "<~";
    else if (R.sim(y, x)) v = ">~";
    out.push_back({l, v});
  }
  return out;
}

// sub-structure on a mask; sim restricted from the closure and reduced
inline FaceStructure induced(const FaceStructure& S, const FaceSet& keep, std::vector<int>* old2new = nullptr) {
  FaceStructure T;
  T.name = S.name;
  std::vector<int> m(S.size(), -1);
  for (int a = 0; a < S.size(); ++a)
    if (keep[a]) m[a] = T.add_face(S[a].id, S[a].dim);
  for (int a = 0; a < S.size(); ++a) {
    if (m[a] < 0 || S[a].dim == 0) continue;
    T.set_gamma(m[a], m[S[a].gamma]);
    if (S.eps(a)) {
      T.set_empty(m[a], m[S[a].empty_on]);
    } else {
      std::vector<int> d;
      for (int x : S[a].delta) d.push_back(m[x]);
      T.set_delta(m[a], d);
    }
  }
  Rel sim = closure_of(S.size(), S.sim);
  Rel r(T.size());
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b)
      if (m[a] >= 0 && m[b] >= 0 && sim(a, b)) r.set(m[a], m[b]);
  T.sim = r.reduction();
  if (old2new) *old2new = m;
  return T;
}

inline FaceStructure truncate(const FaceStructure& S, int k) {
  FaceSet keep(S.size(), 0);
  for (int a = 0; a < S.size(); ++a) keep[a] = S[a].dim <= k;
  FaceStructure T = induced(S, keep);
  if (k >= S.dim()) T.sim = S.sim;
  return T;
}

inline FaceSet generated_set(const FaceStructure& S, const std::vector<int>& Z) {
  FaceSet m(S.size(), 0);
  for (int z : Z) m[z] = 1;
  return saturate(S, m);
}

inline FaceStructure generated(const FaceStructure& S, const std::vector<int>& Z) {
  return induced(S, generated_set(S, Z));
}

// <^{X,+} computed from witnesses inside X equals the ambient <+ on X
inline bool is_convex(const FaceStructure& S, const Relations& R, const FaceSet& X) {
  bool any = false;
  for (auto c : X) any |= c;
  if (!any) return false;
  if (saturate(S, X) != X) return false;
  Rel px(S.size());
  for (int al = 0; al < S.size(); ++al) {
    if (!X[al] || S[al].dim == 0 || S.loop(al)) continue;
    for (int x : S[al].delta) px.set(x, S[al].gamma);
  }
  px.close();
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b)
      if (X[a] && X[b] && px(a, b) != R.plus(a, b)) return false;
  return true;
}

}  // namespace ofs
