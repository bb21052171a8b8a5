#pragma once

#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "relations.hpp"

namespace ofs {

struct Violation {
  std::string tag;
  std::vector<int> witness;
  std::string reason;
};

struct Report {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  bool has(const std::string& tag) const {
    for (auto& v : violations)
      if (v.tag == tag) return true;
    return false;
  }
  void add(std::string tag, std::vector<int> w, std::string reason) {
    violations.push_back({std::move(tag), std::move(w), std::move(reason)});
  }
};

// a set of faces together with empty faces 1_u (stored by base u)
struct Bound {
  std::vector<int> faces, empties;
  void normalize() {
    for (auto* v : {&faces, &empties}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
  }
  bool operator==(const Bound& o) const { return faces == o.faces && empties == o.empties; }
};

inline Bound minus_faces(Bound b, const std::vector<int>& rm) {
  std::vector<int> out;
  std::vector<int> r = rm;
  std::sort(r.begin(), r.end());
  std::set_difference(b.faces.begin(), b.faces.end(), r.begin(), r.end(), std::back_inserter(out));
  b.faces = out;
  return b;
}

inline bool one_equal(const FaceStructure& S, Bound A, Bound B) {
  A.normalize();
  B.normalize();
  int dim = -1;
  for (auto* s : {&A, &B}) {
    for (int x : s->faces) {
      if (dim >= 0 && S[x].dim != dim) throw Error(Errc::MixedDimensions, S[x].id);
      dim = S[x].dim;
    }
  }
  for (auto* s : {&A, &B})
    for (int u : s->empties)
      if (dim >= 0 && S[u].dim != dim - 1) throw Error(Errc::MixedDimensions, "1_" + S[u].id);
  if (A.faces != B.faces) return false;
  auto absorb = [&](Bound X) {
    for (int x : X.faces)
      if (S[x].dim > 0)
        for (int t : theta_dot(S, x)) X.empties.push_back(t);
    X.normalize();
    return X.empties;
  };
  return absorb(A) == absorb(B);
}

inline Bound delta_of(const FaceStructure& S, int a) {
  Bound b;
  if (S.eps(a)) b.empties.push_back(S[a].empty_on);
  else b.faces = S[a].delta;
  return b;
}

// delta(delta(a)); delta(1_u) = u
inline Bound delta_delta(const FaceStructure& S, int a) {
  Bound b;
  if (S.eps(a)) {
    b.faces.push_back(S[a].empty_on);
  } else {
    for (int x : S[a].delta) {
      if (S.eps(x)) b.empties.push_back(S[x].empty_on);
      else b.faces.insert(b.faces.end(), S[x].delta.begin(), S[x].delta.end());
    }
  }
  b.normalize();
  return b;
}

inline std::vector<int> gamma_nonloop_delta(const FaceStructure& S, int a) {
  std::vector<int> r;
  for (int x : S[a].delta)
    if (!S.loop(x)) r.push_back(S[x].gamma);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

inline bool gamma_globular(const FaceStructure& S, int a) {
  int gg = S[S[a].gamma].gamma;
  if (S.eps(a)) return S[a].empty_on == gg;
  std::vector<int> gd, dd;
  for (int x : S[a].delta) {
    gd.push_back(S[x].gamma);
    if (!S.loop(x)) dd.insert(dd.end(), S[x].delta.begin(), S[x].delta.end());
  }
  std::sort(gd.begin(), gd.end());
  gd.erase(std::unique(gd.begin(), gd.end()), gd.end());
  std::sort(dd.begin(), dd.end());
  std::vector<int> r;
  std::set_difference(gd.begin(), gd.end(), dd.begin(), dd.end(), std::back_inserter(r));
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r == std::vector<int>{gg};
}

inline bool delta_globular(const FaceStructure& S, int a) {
  return one_equal(S, delta_of(S, S[a].gamma), minus_faces(delta_delta(S, a), gamma_nonloop_delta(S, a)));
}

// the same condition split into faces / empty faces and gamma(a) in S^eps or not
inline bool delta_globular_cases(const FaceStructure& S, int a) {
  int g = S[a].gamma;
  Bound dd = delta_delta(S, a);
  std::vector<int> drop = gamma_nonloop_delta(S, a);
  Bound rest = minus_faces(dd, drop);
  std::vector<int> ggde;  // gamma gamma of the empty-domain faces in delta(a)
  for (int x : S[a].delta)
    if (S.eps(x)) ggde.push_back(S[x].empty_on);
  std::sort(ggde.begin(), ggde.end());
  ggde.erase(std::unique(ggde.begin(), ggde.end()), ggde.end());
  if (!S.eps(g)) {
    if (S[g].delta != rest.faces) return false;
    std::vector<int> th;
    for (int x : S[g].delta)
      if (S[x].dim > 0)
        for (int t : theta_dot(S, x)) th.push_back(t);
    std::sort(th.begin(), th.end());
    return std::includes(th.begin(), th.end(), ggde.begin(), ggde.end());
  }
  if (!rest.faces.empty()) return false;
  return ggde == std::vector<int>{S[g].empty_on};
}

inline bool local_discrete(const FaceStructure& S, const Relations& R, int a) {
  for (int x : S[a].delta)
    for (int y : S[a].delta)
      if (R.plus(x, y)) return false;
  return true;
}

inline std::vector<int> theta_marked(const FaceStructure& S, int a) {
  std::vector<int> t = theta_dot(S, a);
  if (S.eps(a)) t.push_back(~S[a].empty_on);
  std::sort(t.begin(), t.end());
  return t;
}

inline bool meets(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) ++i;
    else ++j;
  }
  return false;
}

// a closure `sim` at dimension k passes disjointness, containment and non-incident agreement
inline bool sim_consistent(const FaceStructure& S, const Relations& R, const Rel& sim, const std::vector<int>& dk) {
  for (int a : dk)
    for (int b : dk) {
      if (!sim(a, b)) continue;
      if (a == b || !R.minus(a, b) || R.perp_plus(a, b)) return false;
    }
  (void)S;
  return true;
}

// disjointness, maximality and both pencil clauses for the faces of dimension k >= 1
inline void check_sim_level(const FaceStructure& S, const Relations& R, int k, Report& rep, bool first_only = false) {
  auto dk = S.of_dim(k);
  std::vector<std::vector<int>> th(S.size()), thd(S.size());
  for (int a : dk) th[a] = theta_marked(S, a), thd[a] = theta_dot(S, a);
  auto stop = [&] { return first_only && !rep.valid(); };
  for (int a : dk)
    for (int b : dk) {
      if (a == b) continue;
      if (R.sim(a, b) && R.perp_plus(a, b))
        rep.add("disjointness", {a, b}, "sim and upper comparable");
      if (R.sim(a, b) && !R.minus(a, b)) rep.add("disjointness", {a, b}, "sim pair not in lower order");
      if (!meets(th[a], th[b]) && R.minus(a, b) != R.sim(a, b))
        rep.add("disjointness", {a, b}, "non-incident faces: sim differs from lower order");
      if (stop()) return;
    }
  for (int a : dk)
    for (int b : dk) {
      if (a >= b) continue;
      if (meets(thd[a], thd[b]) && !R.perp_sim(a, b) && !R.perp_plus(a, b))
        rep.add("pencil-linearity-1", {a, b}, "incident faces not comparable");
      if (stop()) return;
    }
  if (k >= 2) {
    for (int a : dk) {
      if (!S.eps(a)) continue;
      int gg = S[a].empty_on;
      for (int b : dk) {
        if (a == b) continue;
        auto io = iota_of(S, b);
        if (std::binary_search(io.begin(), io.end(), gg) && !R.sim(a, b) && !R.plus(a, b))
          rep.add("pencil-linearity-2", {a, b}, "empty-domain face over an internal face not below");
        if (stop()) return;
      }
    }
  }
  if (!rep.valid()) return;
  for (int a : dk)
    for (int b : dk) {
      if (a == b || !R.minus(a, b) || R.perp_plus(a, b) || R.perp_sim(a, b)) continue;
      Rel s = R.sim;
      s.set(a, b);
      s.close();
      if (s.irreflexive() && sim_consistent(S, R, s, dk)) {
        rep.add("disjointness-maximality", {a, b}, "pair can be added to sim");
        if (first_only) return;
      }
    }
}

struct ValidateOptions {
  bool loop_filling = true;
  bool first_only = false;
};

inline Report validate_ordered(const FaceStructure& S, const Relations& R, ValidateOptions opt = {}) {
  Report rep;
  auto stop = [&] { return opt.first_only && !rep.valid(); };
  if (S.of_dim(0).empty()) {
    rep.add("nonempty", {}, "no faces of dimension 0");
    return rep;
  }
  for (int a = 0; a < S.size(); ++a) {
    if (S[a].dim < 2) continue;
    if (!gamma_globular(S, a))
      rep.add(S.eps(a) ? "unit-globularity" : "globularity-gamma", {a}, "gamma gamma differs from gamma delta - delta delta");
    else if (!delta_globular(S, a))
      rep.add("globularity-delta", {a}, "delta gamma not 1-equal to delta delta - gamma delta");
    if (stop()) return rep;
  }
  if (!rep.valid()) return rep;
  for (int a = 0; a < S.size(); ++a)
    if (S[a].dim > 0 && !local_discrete(S, R, a)) {
      rep.add("local-discreteness", {a}, "two domain faces are upper comparable");
      if (stop()) return rep;
    }
  if (!R.plus.irreflexive()) rep.add("strictness", {}, "upper order has a cycle");
  if (!R.sim.irreflexive()) rep.add("strictness", {}, "sim has a cycle");
  if (!linear_on(R.plus, S.of_dim(0))) rep.add("strictness", {}, "upper order on points is not linear");
  if (!rep.valid()) return rep;
  for (int a : S.of_dim(0))
    for (int b : S.of_dim(0))
      if (R.sim(a, b)) rep.add("disjointness", {a, b}, "sim on points");
  for (int k = 1; k <= S.dim(); ++k) {
    check_sim_level(S, R, k, rep, opt.first_only);
    if (stop()) return rep;
  }
  if (opt.loop_filling) {
    FaceSet all(S.size(), 1);
    FaceSet cod = codomains_of_nonloops(S, all);
    for (int a = 0; a < S.size(); ++a)
      if (S.loop(a) && !cod[a]) {
        rep.add("loop-filling", {a}, "empty loop");
        if (stop()) return rep;
      }
  }
  return rep;
}

inline Report validate_ordered(const FaceStructure& S, ValidateOptions opt = {}) {
  return validate_ordered(S, Relations(S), opt);
}

inline bool is_valid(const FaceStructure& S) { return validate_ordered(S, {true, true}).valid(); }

inline Report validate_positive(const FaceStructure& S) {
  Report rep = validate_ordered(S);
  for (int a = 0; a < S.size(); ++a)
    if (S.eps(a)) rep.add("positivity", {a}, "empty-domain face");
  return rep;
}

inline Report validate_local(const FaceStructure& S) {
  Report rep;
  Rel sim = closure_of(S.size(), S.sim);
  for (int a = 0; a < S.size(); ++a)
    for (int x : S[a].delta)
      if (sim(x, x)) rep.add("local-order", {a, x}, "sim restricted to delta is not strict");
  return rep;
}

inline std::string describe(const FaceStructure& S, const Report& rep) {
  std::ostringstream o;
  if (rep.valid()) return "valid\n";
  for (auto& v : rep.violations) {
    o << v.tag;
    for (size_t i = 0; i < v.witness.size(); ++i) o << (i ? "," : " ") << S[v.witness[i]].id;
    o << ": " << v.reason << "\n";
  }
  return o.str();
}

// size_n = |S_n - delta(S^{-lambda}_{n+1})|
inline std::vector<int> size_vector(const FaceStructure& S) {
  int d = S.dim();
  std::vector<int> sz(std::max(d + 1, 0), 0);
  FaceSet dom(S.size(), 0);
  for (int a = 0; a < S.size(); ++a)
    if (S[a].dim > 0 && !S.loop(a))
      for (int x : S[a].delta) dom[x] = 1;
  for (int a = 0; a < S.size(); ++a)
    if (!dom[a]) ++sz[S[a].dim];
  return sz;
}

inline int size_at(const std::vector<int>& sz, int l) { return l < static_cast<int>(sz.size()) ? sz[l] : 0; }

inline bool is_normal(const FaceStructure& S, int k) {
  if (S.dim() > k) return false;
  auto sz = size_vector(S);
  for (int l = 0; l < k; ++l)
    if (size_at(sz, l) != 1) return false;
  return true;
}

inline bool is_principal(const FaceStructure& S) {
  for (int v : size_vector(S))
    if (v > 1) return false;
  return !S.empty();
}

}  // namespace ofs
