#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <ofs/ofs.hpp>

namespace ofs::props {

struct Tally {
  long checked = 0;
  long failed = 0;
  std::vector<std::string> samples;

  void check(bool ok, const std::function<std::string()>& what) {
    ++checked;
    if (ok) return;
    ++failed;
    if (samples.size() < 5) samples.push_back(what());
  }
  bool ok() const { return failed == 0; }
};

inline std::string label(const FaceStructure& S) { return S.name.empty() ? canonical_key(S) : S.name; }

inline std::string ids(const FaceStructure& S, const std::vector<int>& xs) {
  std::string s;
  for (int x : xs) s += (s.empty() ? "" : ",") + S[x].id;
  return s;
}

inline bool contains(const std::vector<int>& xs, int x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

inline bool iso(const FaceStructure& A, const FaceStructure& B) { return isomorphic(A, B); }

// convex subsets used by the sweeps: S, its boundaries and the sets generated by single faces
inline std::vector<FaceSet> sample_convex(const FaceStructure& S, const Relations& R) {
  std::vector<FaceSet> cand{all_faces(S)};
  for (int k = 0; k < S.dim(); ++k) {
    cand.push_back(domain_set(S, all_faces(S), k));
    cand.push_back(codomain_set(S, all_faces(S), k));
  }
  for (int a = 0; a < S.size(); ++a) cand.push_back(generated_set(S, {a}));
  std::vector<FaceSet> out;
  std::set<FaceSet> seen;
  for (auto& m : cand) {
    FaceSet x = saturate(S, m);
    if (seen.insert(x).second && is_convex(S, R, x)) out.push_back(x);
  }
  return out;
}

// ---- lemma suite -----------------------------------------------------

inline void face_basics(const FaceStructure& S, Tally& t) {
  Relations R(S);
  Classes c = classify(S, R);
  for (int a = 0; a < S.size(); ++a) {
    const Face& f = S[a];
    if (f.dim == 0) continue;
    auto tag = [&](const char* item) { return [&S, a, item] { return label(S) + " " + S[a].id + ": " + item; }; };
    if (S.eps(a)) {
      t.check(f.empty_on == S[f.gamma].gamma, tag("(1) delta(a)=1_x gives x=gamma gamma(a)"));
      t.check(S.loop(f.gamma), tag("(2) gamma of an empty-domain face is a loop"));
    }
    if (f.dim >= 2 && S.eps(f.gamma)) {
      bool any = false;
      for (int x : f.delta) any |= S.eps(x);
      t.check(any, tag("(3) delta^eps(a) nonempty"));
    }
    if (!S.loop(a)) t.check(!contains(f.delta, f.gamma), tag("(4) gamma(a) not in delta(a)"));
    if (f.dim >= 2) {
      std::set<int> lhs, rhs;
      for (int y : theta_dot(S, a))
        if (S.eps(y)) lhs.insert(S[y].empty_on);
      for (int y : f.delta)
        if (S.eps(y)) rhs.insert(S[y].empty_on);
      t.check(lhs == rhs, tag("(5) empty faces of theta theta(a)"));
    }
  }
  for (int x = 0; x < S.size(); ++x)
    for (int y = 0; y < S.size(); ++y)
      if (R.plus(x, y)) t.check(!c.initial[y], [&] { return label(S) + " " + S[y].id + ": (6) initial face above " + S[x].id; });
}

inline void largest_domain_face(const FaceStructure& S, Tally& t) {
  Relations R(S);
  for (int al = 0; al < S.size(); ++al) {
    if (S[al].dim < 2 || S.eps(al)) continue;
    int top = -1;
    for (int a : S[al].delta) {
      bool largest = true;
      for (int b : S[al].delta)
        if (b != a && !R.sim(b, a)) largest = false;
      if (largest) top = a;
    }
    t.check(top >= 0 && S[top].gamma == S[S[al].gamma].gamma,
            [&] { return label(S) + " " + S[al].id + ": no sim-largest domain face with gamma = gamma gamma"; });
  }
}

inline void iota_of_domain(const FaceStructure& S, Tally& t) {
  Relations R(S);
  Classes c = classify(S, R);
  for (int al = 0; al < S.size(); ++al) {
    if (S[al].dim < 2) continue;
    std::set<int> lhs, rhs(c.iota[S[al].gamma].begin(), c.iota[S[al].gamma].end());
    for (int a : S[al].delta) lhs.insert(c.iota[a].begin(), c.iota[a].end());
    t.check(lhs == rhs, [&] { return label(S) + " " + S[al].id + ": iota delta != iota gamma"; });
  }
}

inline void codomain_in_domain(const FaceStructure& S, Tally& t) {
  Relations R(S);
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b) {
      if (S[a].dim == 0 || S[b].dim != S[a].dim || S.loop(a) || S.loop(b)) continue;
      if (!contains(S[b].delta, S[a].gamma)) continue;
      t.check(R.sim(a, b), [&] { return label(S) + ": " + S[a].id + " not sim-below " + S[b].id; });
    }
}

inline void weights_sweep(const FaceStructure& S, Tally& t) {
  Relations R(S);
  auto wt = weights(S, R);
  FaceSet cod = codomains_of_nonloops(S, all_faces(S));
  for (int a = 0; a < S.size(); ++a)
    t.check((wt[a] == 0) == (S.loop(a) || !cod[a]), [&] { return label(S) + " " + S[a].id + ": wt zero criterion"; });
  for (int al = 0; al < S.size(); ++al) {
    if (S[al].dim == 0 || S.eps(al) || S.loop(al)) continue;
    std::vector<int> D;
    for (int a : S[al].delta)
      if (!S.loop(a)) D.push_back(a);
    std::vector<int> path;
    std::function<void(int)> go = [&](int sum) {
      t.check(wt[S[al].gamma] > sum,
              [&] { return label(S) + " " + S[al].id + ": path " + ids(S, path) + " outweighs gamma"; });
      if (S[path.back()].dim == 0) return;
      for (int b : D)
        if (!contains(path, b) && contains(S[b].delta, S[path.back()].gamma)) {
          path.push_back(b);
          go(sum + wt[b]);
          path.pop_back();
        }
    };
    for (int a : D) {
      path = {a};
      go(wt[a]);
    }
  }
}

inline void flat_path_uniqueness(const FaceStructure& S, Tally& t) {
  Relations R(S);
  for (const FaceSet& X : sample_convex(S, R)) {
    FaceSet cod = codomains_of_nonloops(S, X), allowed(S.size(), 0);
    for (int a = 0; a < S.size(); ++a) allowed[a] = X[a] && !cod[a];
    for (int x = 0; x < S.size(); ++x)
      for (int y = 0; y < S.size(); ++y) {
        if (!X[x] || !X[y] || !R.plus(x, y)) continue;
        auto ps = flat_upper_paths(S, allowed, x, y, 2);
        t.check(ps.size() == 1, [&] {
          return label(S) + ": " + std::to_string(ps.size()) + " flat upper paths " + S[x].id + " to " + S[y].id;
        });
      }
  }
}

inline void upper_chains(const FaceStructure& S, Tally& t) {
  Relations R(S);
  for (int a = 0; a < S.size(); ++a) {
    std::vector<int> up;
    for (int b = 0; b < S.size(); ++b)
      if (R.le_plus(a, b)) up.push_back(b);
    bool lin = true;
    for (int b : up)
      for (int c : up) lin &= b == c || R.perp_plus(b, c);
    t.check(lin, [&] { return label(S) + " " + S[a].id + ": faces above are not a chain"; });
  }
}

inline void plus_then_sim(const FaceStructure& S, Tally& t) {
  Relations R(S);
  for (int a = 0; a < S.size(); ++a)
    for (int b = 0; b < S.size(); ++b) {
      if (!R.plus(a, b)) continue;
      for (int c = 0; c < S.size(); ++c)
        if (R.sim(b, c))
          t.check(R.sim(a, c), [&] { return label(S) + ": " + S[a].id + "<+" + S[b].id + "<~" + S[c].id; });
    }
}

// maximal lower paths of non-loops in dimension k
inline std::vector<std::vector<int>> maximal_lower_paths(const FaceStructure& S, int k) {
  FaceSet cod(S.size(), 0), dom(S.size(), 0);
  for (int a : S.of_dim(k)) {
    if (S.loop(a)) continue;
    cod[S[a].gamma] = 1;
    for (int x : S[a].delta) dom[x] = 1;
  }
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::function<void()> go = [&] {
    int last = path.back();
    if (!dom[S[last].gamma]) out.push_back(path);
    for (int b : S.of_dim(k))
      if (!S.loop(b) && !contains(path, b) && contains(S[b].delta, S[last].gamma)) {
        path.push_back(b);
        go();
        path.pop_back();
      }
  };
  for (int a0 : S.of_dim(k)) {
    if (S.loop(a0)) continue;
    bool start = true;
    for (int x : S[a0].delta) start &= !cod[x];
    if (!start) continue;
    path = {a0};
    go();
  }
  return out;
}

inline void lower_paths(const FaceStructure& S, Tally& t) {
  Relations R(S);
  Classes c = classify(S, R);
  for (int k = 1; k <= S.dim(); ++k)
    for (const auto& P : maximal_lower_paths(S, k)) {
      int n = static_cast<int>(P.size());
      for (int b : S.of_dim(k))
        for (int s = 0; s < n; ++s) {
          if (!R.plus(P[s], b)) continue;
          int l = s, p = s;
          while (l > 0 && R.plus(P[l - 1], b)) --l;
          while (p + 1 < n && R.plus(P[p + 1], b)) ++p;
          auto tag = [&](const char* cl) {
            return [&S, &P, b, s, cl] { return label(S) + " path " + ids(S, P) + " b=" + S[b].id + " s=" + std::to_string(s) + ": " + cl; };
          };
          t.check(S[P[p]].gamma == S[b].gamma, tag("clause 2"));
          bool c3;
          if (l > 0) {
            c3 = contains(S[b].delta, S[P[l - 1]].gamma);
          } else if (S.eps(P[0])) {
            int gg = S[S[P[0]].gamma].gamma;
            c3 = S.eps(b) ? S[b].empty_on == gg : false;
            for (int y : S[b].delta) c3 |= contains(theta(S, y), gg);
          } else {
            c3 = !S.eps(b) && std::includes(S[b].delta.begin(), S[b].delta.end(), S[P[0]].delta.begin(), S[P[0]].delta.end());
          }
          t.check(c3, tag("clause 3"));
          bool c4 = true;
          for (int i = 1; i < l; ++i) c4 &= R.sim(P[i], b);
          for (int j = p + 1; j < n; ++j) c4 &= R.sim(b, P[j]);
          t.check(c4, tag("clause 4"));
          bool c5 = true;
          for (int i = l; i < p; ++i) c5 &= c.iota_all[S[P[i]].gamma] != 0;
          t.check(c5, tag("clause 5"));
        }
    }
}

inline void theta_induction(const FaceStructure& S, Tally& t) {
  for (int al = 0; al < S.size(); ++al) {
    if (S[al].dim < 2) continue;
    std::set<int> lhs, rhs{S[S[al].gamma].gamma};
    for (int y : theta_dot(S, al))
      for (int z : theta_dot(S, y)) lhs.insert(z);
    if (S.eps(al)) lhs.insert(S[al].empty_on);
    for (int a : S[al].delta)
      if (!S.loop(a) && !S.eps(a)) rhs.insert(S[a].delta.begin(), S[a].delta.end());
    t.check(lhs == rhs, [&] { return label(S) + " " + S[al].id + ": theta theta != gamma gamma + delta delta"; });
  }
}

inline void convex_subsets(const FaceStructure& T, Tally& t) {
  Relations R(T);
  for (const FaceSet& X : sample_convex(T, R)) {
    Stretched st = stretch(T, R, X);
    const FaceStructure& S = st.S;
    Relations RX(S);
    FaceSet E = empty_loops(T, X);
    auto nu = [&](int c) { return st.nu.img[c]; };
    auto tag = [&](const char* item, int c, int d) {
      return [&T, &S, item, c, d] {
        return label(T) + " [X] " + S[c].id + (d >= 0 ? "," + S[d].id : std::string()) + ": " + item;
      };
    };
    for (int c = 0; c < S.size(); ++c) {
      int a = nu(c);
      t.check(S.eps(c) == T.eps(a), tag("(1) empty domain", c, -1));
      if (S[c].dim > 0) {
        bool loop = T.loop(a);
        for (int l = 0; l < T.size(); ++l)
          if (E[l] && R.le_plus(l, a)) loop = false;
        t.check(S.loop(c) == loop, tag("(2) loop", c, -1));
      }
      for (int d = 0; d < S.size(); ++d) {
        if (S[d].dim != S[c].dim) continue;
        int b = nu(d);
        bool plus = R.plus(a, b) || (a == b && st.lower[c] < st.lower[d]);
        t.check(RX.plus(c, d) == plus, tag("(3) upper order", c, d));
        if (S[c].dim == 0) continue;
        bool minus = R.minus(a, b);
        if (minus && !T.eps(b) && contains(T[b].delta, T[a].gamma)) {
          for (int l : st.cluster[T[a].gamma]) minus &= R.sim(a, l) || R.sim(l, b);
        }
        t.check(RX.minus(c, d) == minus, tag("(4) lower order", c, d));
      }
      if (S[c].dim > 0 && !S.eps(c)) {
        // delta(c) is delta(a) with colors
        std::vector<int> pre(T.size(), -1);
        for (int y : S[c].delta) pre[nu(y)] = y;
        bool bij = S[c].delta.size() == T[a].delta.size();
        for (int x : T[a].delta) bij &= pre[x] >= 0;
        t.check(bij, tag("(5) delta(c) over delta(a)", c, -1));
        if (!bij) continue;
        for (int x : T[a].delta)
          for (int y : T[a].delta) {
            if (!R.sim(x, y)) continue;
            bool next = true;
            for (int z : T[a].delta) next &= !(R.sim(x, z) && R.sim(z, y));
            if (!next) continue;
            bool cnext = RX.sim(pre[x], pre[y]);
            for (int z : S[c].delta) cnext &= !(RX.sim(pre[x], z) && RX.sim(z, pre[y]));
            t.check(cnext, tag("(5) successor in delta", pre[x], pre[y]));
            if (contains(T[y].delta, T[x].gamma))
              t.check(contains(S[pre[y]].delta, S[pre[x]].gamma), tag("(5) gamma into delta", pre[x], pre[y]));
          }
      }
      if (S.eps(c)) {
        int g = T[a].gamma, gg = T[g].gamma, e = S[c].empty_on;
        int below = 0;
        for (int l : st.cluster[gg])
          if (R.sim(l, g)) ++below;
        t.check(nu(e) == gg && st.lower[e] == below, tag("(6) empty domain cut", c, -1));
      }
    }
  }
}

struct Lemma {
  const char* name;
  void (*run)(const FaceStructure&, Tally&);
};

inline const std::vector<Lemma>& lemma_suite() {
  static const std::vector<Lemma> all = {
      {"face basics", face_basics},
      {"largest domain face", largest_domain_face},
      {"iota of domains", iota_of_domain},
      {"codomain in domain", codomain_in_domain},
      {"weights", weights_sweep},
      {"flat path uniqueness", flat_path_uniqueness},
      {"upper chains", upper_chains},
      {"plus then sim", plus_then_sim},
      {"lower paths", lower_paths},
      {"theta induction", theta_induction},
      {"convex subsets", convex_subsets},
  };
  return all;
}

// ---- boundaries, covers, quotients -----------------------------------

inline void globularity(const FaceStructure& S, Tally& t) {
  int n = S.dim();
  for (int l = 1; l <= n; ++l) {
    Stretched dl = domain(S, l), cl = codomain(S, l);
    for (int k = 0; k < l; ++k) {
      FaceStructure dk = domain(S, k).S, ck = codomain(S, k).S;
      auto tag = [&](const char* law) { return [&S, k, l, law] { return label(S) + " k=" + std::to_string(k) + " l=" + std::to_string(l) + ": " + law; }; };
      t.check(iso(domain(dl.S, k).S, dk), tag("dd=d"));
      t.check(iso(codomain(cl.S, k).S, ck), tag("cc=c"));
      t.check(iso(domain(cl.S, k).S, dk), tag("dc=d"));
      t.check(iso(codomain(dl.S, k).S, ck), tag("cd=c"));
    }
  }
}

inline void cover_round_trip(const FaceStructure& S, Tally& t) {
  Cover cv = positive_cover(S);
  t.check(validate_positive(cv.S).valid(), [&] { return label(S) + ": cover is not positive"; });
  t.check(iso(quotient(cv.S, cv.bars).S, S), [&] { return label(S) + ": quotient of the cover is not S"; });
  t.check(size_vector(cv.S) == size_vector(S), [&] { return label(S) + ": size of the cover"; });
}

// faces lying in the domain of some non-loop
inline FaceSet nonloop_domains(const FaceStructure& T) {
  FaceSet m(T.size(), 0);
  for (int a = 0; a < T.size(); ++a)
    if (T[a].dim > 0 && !T.loop(a))
      for (int x : T[a].delta) m[x] = 1;
  return m;
}

// every ideal of a positive structure: subsets of its unary faces passing is_ideal.
// inside_domains keeps only ideals J with J in delta(T^{-lambda}), outside_domains only the rest
enum class IdealFilter { all, inside_domains, outside_domains };

inline void quotient_sizes(const FaceStructure& T, Tally& t, IdealFilter filter = IdealFilter::all) {
  if (!validate_positive(T).valid()) return;
  FaceSet dom = nonloop_domains(T);
  std::vector<int> un;
  for (int a = 0; a < T.size(); ++a)
    if (T[a].dim > 0 && T.unary(a)) un.push_back(a);
  if (un.size() > 12) return;
  for (unsigned m = 1; m < (1u << un.size()); ++m) {
    std::vector<int> J;
    for (size_t i = 0; i < un.size(); ++i)
      if (m >> i & 1) J.push_back(un[i]);
    if (!is_ideal(T, J)) continue;
    bool inside = std::all_of(J.begin(), J.end(), [&](int a) { return dom[a] != 0; });
    if (filter == IdealFilter::inside_domains && !inside) continue;
    if (filter == IdealFilter::outside_domains && inside) continue;
    bool ok = false;
    try {
      ok = size_vector(quotient(T, J).S) == size_vector(T);
    } catch (const Error&) {
    }
    t.check(ok, [&] { return label(T) + " J=" + ids(T, J) + ": quotient size"; });
  }
}

// ---- tensors ---------------------------------------------------------

inline bool size_additive(const FaceStructure& A, const FaceStructure& B, const FaceStructure& AB, int k) {
  auto sa = size_vector(A), sb = size_vector(B), sab = size_vector(AB);
  int top = std::max({static_cast<int>(sa.size()), static_cast<int>(sb.size()), static_cast<int>(sab.size())});
  for (int l = 0; l < top; ++l) {
    int want = l > k ? size_at(sa, l) + size_at(sb, l) : size_at(sb, l);
    if (size_at(sab, l) != want) return false;
  }
  return true;
}

struct TensorSweep {
  long pairs = 0, triples = 0, squares = 0;
};

// composable pairs, triples and middle-exchange squares drawn from the corpus
inline TensorSweep tensor_laws(const std::vector<FaceStructure>& corpus, Tally& t, size_t max_pairs, size_t max_triples,
                               size_t max_squares, unsigned seed = 7) {
  int D = 0;
  for (auto& S : corpus) D = std::max(D, S.dim());
  size_t n = corpus.size();
  std::vector<std::vector<std::string>> dk(n), ck(n);
  for (size_t i = 0; i < n; ++i)
    for (int k = 0; k < D; ++k) {
      dk[i].push_back(canonical_key(domain(corpus[i], k).S));
      ck[i].push_back(canonical_key(codomain(corpus[i], k).S));
    }
  std::vector<std::map<std::string, std::vector<size_t>>> by_dom(D);
  for (size_t i = 0; i < n; ++i)
    for (int k = 0; k < D; ++k) by_dom[k][dk[i][k]].push_back(i);
  struct Pair {
    size_t a, b;
    int k;
  };
  std::vector<Pair> pairs;
  for (size_t i = 0; i < n; ++i)
    for (int k = 0; k < D; ++k) {
      if (k >= corpus[i].dim()) continue;
      auto it = by_dom[k].find(ck[i][k]);
      if (it == by_dom[k].end()) continue;
      for (size_t j : it->second)
        if (k < corpus[j].dim()) pairs.push_back({i, j, k});
    }
  std::mt19937 rng(seed);
  std::shuffle(pairs.begin(), pairs.end(), rng);
  TensorSweep sw;
  auto name = [&](size_t i) { return label(corpus[i]); };
  for (const Pair& p : pairs) {
    if (static_cast<size_t>(sw.pairs) >= max_pairs) break;
    ++sw.pairs;
    const FaceStructure &A = corpus[p.a], &B = corpus[p.b];
    auto tag = [&](const char* what) { return [&, what] { return name(p.a) + " *" + std::to_string(p.k) + " " + name(p.b) + ": " + what; }; };
    try {
      Tensor ab = tensor(A, B, p.k);
      t.check(validate_ordered(ab.S).valid(), tag("tensor does not validate"));
      t.check(size_additive(A, B, ab.S, p.k), tag("size additivity"));
    } catch (const Error& e) {
      t.check(false, tag("tensor threw"));
    }
  }
  for (const Pair& p : pairs) {
    if (static_cast<size_t>(sw.triples) >= max_triples) break;
    auto it = by_dom[p.k].find(ck[p.b][p.k]);
    if (it == by_dom[p.k].end()) continue;
    for (size_t c : it->second) {
      if (static_cast<size_t>(sw.triples) >= max_triples) break;
      if (p.k >= corpus[c].dim() || (rng() % 4) != 0) continue;
      ++sw.triples;
      const FaceStructure &A = corpus[p.a], &B = corpus[p.b], &C = corpus[c];
      bool ok = false;
      try {
        FaceStructure l = tensor(tensor(A, B, p.k).S, C, p.k).S;
        FaceStructure r = tensor(A, tensor(B, C, p.k).S, p.k).S;
        ok = iso(l, r);
      } catch (const Error&) {
      }
      t.check(ok, [&] { return name(p.a) + "," + name(p.b) + "," + name(c) + " k=" + std::to_string(p.k) + ": associativity"; });
    }
  }
  // (A *k B) *j (C *k E) = (A *j C) *k (B *j E) for j < k
  for (const Pair& p : pairs) {
    if (static_cast<size_t>(sw.squares) >= max_squares) break;
    int j = p.k;
    const FaceStructure &A = corpus[p.a], &C = corpus[p.b];
    for (int k = j + 1; k < D && static_cast<size_t>(sw.squares) < max_squares; ++k) {
      if (k >= A.dim() || k >= C.dim()) continue;
      auto ia = by_dom[k].find(ck[p.a][k]), ic = by_dom[k].find(ck[p.b][k]);
      if (ia == by_dom[k].end() || ic == by_dom[k].end()) continue;
      size_t b = ia->second[rng() % ia->second.size()], e = ic->second[rng() % ic->second.size()];
      if (k >= corpus[b].dim() || k >= corpus[e].dim()) continue;
      ++sw.squares;
      const FaceStructure &B = corpus[b], &E = corpus[e];
      bool ok = false;
      try {
        FaceStructure l = tensor(tensor(A, B, k).S, tensor(C, E, k).S, j).S;
        FaceStructure r = tensor(tensor(A, C, j).S, tensor(B, E, j).S, k).S;
        ok = iso(l, r);
      } catch (const Error&) {
      }
      t.check(ok, [&] {
        return name(p.a) + "," + name(b) + "," + name(p.b) + "," + name(e) + " j=" + std::to_string(j) + " k=" + std::to_string(k) + ": middle exchange";
      });
    }
  }
  return sw;
}

// ---- decompositions --------------------------------------------------

// cover cuts of a part lying over the cut c of X; a cluster member of the part that is
// not initial in X is placed by the key of its codomain
inline std::vector<int> transport_cut(const DecompContext& ctx, int c, const Stretched& part, const DecompContext& pctx) {
  const Cover& cv = ctx.cov;
  int a = cv.base[c], k = (*ctx.X)[a].dim;
  const auto& I = cv.cls.cluster[a];
  std::vector<char> inI(ctx.X->size(), 0), inL(ctx.X->size(), 0);
  for (size_t i = 0; i < I.size(); ++i) inI[I[i]] = 1, inL[I[i]] = static_cast<int>(i) < cv.lower[c];
  std::vector<int> out;
  for (int f = 0; f < part.S.size(); ++f) {
    if (part.nu.img[f] != a) continue;
    const auto& J = pctx.cov.cls.cluster[f];
    std::vector<char> m(part.S.size(), 0);
    for (int j : J) {
      int b = part.nu.img[j];
      m[j] = inI[b] ? inL[b] : ctx.RD.le_plus(ctx.key(part.nu.img[part.S[j].gamma], k), c);
    }
    try {
      out.push_back(pctx.cov.cut(f, cut_from_lower(J, m)));
    } catch (const Error&) {
    }
  }
  return out;
}

inline bool is_saddle(const DecompContext& ctx, int c) {
  for (auto& s : saddles(ctx))
    if (s.cover_face == c) return true;
  return false;
}

inline bool saddle_in_part(const DecompContext& ctx, int c, const Stretched& part) {
  DecompContext pctx(part.S);
  for (int d : transport_cut(ctx, c, part, pctx))
    if (is_saddle(pctx, d)) return true;
  return false;
}

// some cut over c splits the part as a k-tensor, properly or not
inline bool splits_part(const DecompContext& ctx, int c, const Stretched& part) {
  DecompContext pctx(part.S);
  for (int d : transport_cut(ctx, c, part, pctx)) {
    try {
      Decomposition e = decompose(pctx, d);
      if (iso(tensor(e.lower.S, e.upper.S, e.k).S, part.S)) return true;
    } catch (const Error&) {
    }
  }
  return false;
}

// cuts of X-dagger outside bars and iota(X-dagger)
inline std::vector<int> proper_cuts(const DecompContext& ctx) {
  Classes dc = classify(ctx.cov.S, ctx.RD);
  std::vector<int> out;
  for (int c = 0; c < ctx.cov.S.size(); ++c)
    if (!ctx.cov.is_bar[c] && !dc.iota_all[c]) out.push_back(c);
  return out;
}

inline void decomposition_square(const FaceStructure& X, Tally& t) {
  DecompContext ctx(X);
  for (auto& s : saddles(ctx)) {
    const FaceStructure& D = ctx.cov.S;
    auto tag = [&](const char* what) { return [&X, &D, s, what] { return label(X) + " cut " + D[s.cover_face].id + ": " + what; }; };
    Decomposition d = decompose(ctx, s.cover_face);
    int k = d.k;
    bool ok = false;
    try {
      ok = iso(tensor(d.lower.S, d.upper.S, k).S, X);
    } catch (const Error&) {
    }
    t.check(ok, tag("lower *k upper != X"));
    t.check(validate_ordered(d.lower.S).valid() && validate_ordered(d.upper.S).valid(), tag("parts do not validate"));
    t.check(iso(domain(d.lower.S, k).S, domain(X, k).S), tag("d(lower) != d(X)"));
    t.check(iso(codomain(d.upper.S, k).S, codomain(X, k).S), tag("c(upper) != c(X)"));
    t.check(iso(codomain(d.lower.S, k).S, domain(d.upper.S, k).S), tag("c(lower) != d(upper)"));
    auto [lo, up] = decompose_via_cover(ctx, s.cover_face);
    t.check(iso(lo, d.lower.S) && iso(up, d.upper.S), tag("cover route disagrees"));
  }
}

inline void decomp_mixed_commute(const FaceStructure& X, Tally& t) {
  DecompContext ctx(X);
  FaceSet all = all_faces(X);
  auto sd = saddles(ctx);
  std::set<int> sdset;
  for (auto& s : sd) sdset.insert(s.cover_face);
  const FaceStructure& D = ctx.cov.S;
  auto cuts = proper_cuts(ctx);
  for (int cx : cuts)
    for (int ca : cuts) {
      int k = D[cx].dim, m = D[ca].dim;
      if (k >= m) continue;
      auto tag = [&](std::string what) { return [&X, &D, cx, ca, what] { return label(X) + " x=" + D[cx].id + " a=" + D[ca].id + ": " + what; }; };
      FaceSet dx = down_set(ctx, all, cx), ux = up_set(ctx, all, cx);
      FaceSet da = down_set(ctx, all, ca), ua = up_set(ctx, all, ca);
      FaceSet dxda = down_set(ctx, dx, ca), dxua = up_set(ctx, dx, ca);
      FaceSet uxda = down_set(ctx, ux, ca), uxua = up_set(ctx, ux, ca);
      t.check(dxda == down_set(ctx, da, cx), tag("down x down a"));
      t.check(dxua == down_set(ctx, ua, cx), tag("down x up a"));
      t.check(uxda == up_set(ctx, da, cx), tag("up x down a"));
      t.check(uxua == up_set(ctx, ua, cx), tag("up x up a"));
      if (!sdset.count(cx) || !sdset.count(ca)) continue;
      Stretched pda = stretch_part(ctx, da), pua = stretch_part(ctx, ua);
      t.check(splits_part(ctx, cx, pda) && splits_part(ctx, cx, pua), tag("x does not split the a-parts"));
      try {
        FaceStructure s1 = stretch_part(ctx, dxda).S, s2 = stretch_part(ctx, dxua).S;
        FaceStructure s3 = stretch_part(ctx, uxda).S, s4 = stretch_part(ctx, uxua).S;
        FaceStructure c1 = codomain(s1, k).S;
        t.check(iso(c1, codomain(s2, k).S) && iso(c1, domain(s3, k).S) && iso(c1, domain(s4, k).S), tag("k-boundaries"));
        t.check(iso(codomain(s1, m).S, domain(s2, m).S) && iso(codomain(s3, m).S, domain(s4, m).S), tag("m-boundaries"));
        t.check(iso(tensor(s1, s2, m).S, stretch_part(ctx, dx).S), tag("down x = xda *m xua"));
        t.check(iso(tensor(s3, s4, m).S, stretch_part(ctx, ux).S), tag("up x = uda *m uua"));
        t.check(iso(tensor(s1, s3, k).S, pda.S), tag("down a = dxda *k uxda"));
        t.check(iso(tensor(s2, s4, k).S, pua.S), tag("up a = dxua *k uxua"));
      } catch (const Error& e) {
        t.check(false, tag(std::string("threw ") + e.what()));
      }
    }
}

inline void decomp_level_commute(const FaceStructure& X, Tally& t) {
  DecompContext ctx(X);
  FaceSet all = all_faces(X);
  std::set<int> sdset;
  for (auto& s : saddles(ctx)) sdset.insert(s.cover_face);
  const FaceStructure& D = ctx.cov.S;
  auto cuts = proper_cuts(ctx);
  for (int ca : cuts)
    for (int cb : cuts) {
      if (ca == cb || D[ca].dim != D[cb].dim) continue;
      int m = D[ca].dim, a = ctx.cov.base[ca], b = ctx.cov.base[cb];
      auto tag = [&](std::string what) { return [&X, &D, ca, cb, what] { return label(X) + " a=" + D[ca].id + " b=" + D[cb].id + ": " + what; }; };
      FaceSet da = down_set(ctx, all, ca), ua = up_set(ctx, all, ca);
      FaceSet db = down_set(ctx, all, cb), ub = up_set(ctx, all, cb);
      t.check(down_set(ctx, da, cb) == down_set(ctx, db, ca), tag("down down commute"));
      t.check(up_set(ctx, ua, cb) == up_set(ctx, ub, ca), tag("up up commute"));
      if (ctx.RD.plus(ca, cb)) {
        t.check(ub == up_set(ctx, ua, cb), tag("up b = up a up b"));
        t.check(da == down_set(ctx, da, cb), tag("down a = down a down b"));
        t.check(up_set(ctx, db, ca) == down_set(ctx, ua, cb), tag("down b up a = up a down b"));
        if (sdset.count(ca) && sdset.count(cb)) {
          t.check(splits_part(ctx, ca, stretch_part(ctx, db)), tag("a does not split down b"));
          t.check(splits_part(ctx, cb, stretch_part(ctx, ua)), tag("b does not split up a"));
        }
      }
      for (int l = 0; l < m; ++l) {
        if (!sim_at(X, ctx.R, a, b, l) || !sdset.count(ca) || !sdset.count(cb)) continue;
        bool ok = false;
        try {
          FaceStructure lhs = tensor(stretch_part(ctx, da).S, stretch_part(ctx, down_set(ctx, ua, cb)).S, m).S;
          FaceStructure rhs = tensor(stretch_part(ctx, db).S, stretch_part(ctx, down_set(ctx, ub, ca)).S, m).S;
          ok = iso(lhs, rhs);
        } catch (const Error&) {
        }
        t.check(ok, tag("level " + std::to_string(l) + " exchange"));
        break;
      }
    }
}

// decompositions along low saddles commute with the top boundaries
inline void decomp_boundaries(const FaceStructure& T, Tally& t) {
  int n = T.dim();
  if (n < 2) return;
  DecompContext ctx(T);
  const FaceStructure& D = ctx.cov.S;
  Stretched bd[2] = {domain(T, n - 1), codomain(T, n - 1)};
  for (auto& s : saddles(ctx)) {
    if (s.dim >= n - 1) continue;
    Decomposition d = decompose(ctx, s.cover_face);
    for (int side = 0; side < 2; ++side) {
      const Stretched& B = bd[side];
      auto bdry = [&](const FaceStructure& Y) { return side == 0 ? domain(Y, n - 1).S : codomain(Y, n - 1).S; };
      DecompContext bctx(B.S);
      bool found = false;
      for (int c : transport_cut(ctx, s.cover_face, B, bctx)) {
        Decomposition e = decompose(bctx, c);
        found = iso(bdry(d.lower.S), e.lower.S) && iso(bdry(d.upper.S), e.upper.S) &&
                iso(tensor(e.lower.S, e.upper.S, e.k).S, B.S);
        if (found) break;
      }
      t.check(found, [&, side] { return label(T) + " cut " + D[s.cover_face].id + ": " + (side ? "c" : "d") + " boundary"; });
    }
  }
}

// ---- order -----------------------------------------------------------

inline void linear_orders(const FaceStructure& S, Tally& t) {
  t.check(ranked(S, Relations(S)).has_value(), [&] { return label(S) + ": global order not linear"; });
}

inline void rigid(const FaceStructure& S, Tally& t) {
  int maps = 0;
  bool identity = false;
  search_monotone(S, S, false, [&](const FaceMap& f) {
    ++maps;
    identity = true;
    for (int a = 0; a < S.size(); ++a) identity &= f.img[a] == a;
    return maps < 3;
  });
  t.check(maps == 1 && identity, [&] { return label(S) + ": " + std::to_string(maps) + " endomorphisms"; });
}

// monotone maps nu from stretched convex subsets and decomposition parts
inline std::vector<std::pair<Stretched, const FaceStructure*>> monotone_maps(const std::vector<FaceStructure>& corpus, size_t want) {
  std::vector<std::pair<Stretched, const FaceStructure*>> out, injective;
  for (auto& T : corpus) {
    Relations R(T);
    auto add = [&](Stretched st) {
      bool inj = st.S.size() == static_cast<int>(std::set<int>(st.nu.img.begin(), st.nu.img.end()).size());
      (inj ? injective : out).emplace_back(std::move(st), &T);
    };
    for (auto& X : sample_convex(T, R)) add(stretch(T, R, X));
    DecompContext ctx(T);
    for (auto& s : saddles(ctx)) {
      Decomposition d = decompose(ctx, s.cover_face);
      add(std::move(d.lower));
      add(std::move(d.upper));
    }
    if (out.size() >= want) break;
  }
  for (auto& m : injective) {
    if (out.size() >= want) break;
    out.push_back(std::move(m));
  }
  if (out.size() > want) out.resize(want);
  return out;
}

inline void fibers(const Stretched& st, const FaceStructure& T, Tally& t) {
  t.check(check_monotone(st.S, T, st.nu).valid(), [&] { return label(T) + ": nu is not monotone"; });
  Relations R(st.S);
  for (int b = 0; b < T.size(); ++b)
    t.check(fiber(st.S, R, st.nu, b).has_value(), [&] { return label(T) + " " + T[b].id + ": fiber not linear"; });
}

// ---- cells -----------------------------------------------------------

// split id_T along a saddle and recompose; shapes and boundaries must agree
inline void cell_arithmetic(const FaceStructure& T, const SaddleCut& s, Tally& t) {
  DecompContext ctx(T);
  Cell id = identity_cell(T);
  CellSplit sp = split_cell(ctx, id, s);
  auto tag = [&](std::string what) { return [&T, &ctx, s, what] { return label(T) + " cut " + ctx.cov.S[s.cover_face].id + ": " + what; }; };
  try {
    Cell c = cell_compose(sp.lower, sp.upper, sp.k);
    t.check(check_cell(T, c).valid(), tag("composite is not a cell"));
    t.check(iso(c.shape, tensor(sp.lower.shape, sp.upper.shape, sp.k).S), tag("shape(compose) != tensor"));
    t.check(same_cell(T, c, id), tag("composite != identity"));
    for (int j = 0; j < c.shape.dim(); ++j) {
      t.check(iso(cell_domain(c, j).shape, domain(c.shape, j).S), tag("shape(d) != d(shape) at " + std::to_string(j)));
      t.check(iso(cell_codomain(c, j).shape, codomain(c.shape, j).S), tag("shape(c) != c(shape) at " + std::to_string(j)));
      t.check(same_cell(T, cell_domain(c, j), cell_domain(id, j)), tag("boundary cell at " + std::to_string(j)));
    }
  } catch (const Error& e) {
    t.check(false, tag(std::string("threw ") + e.what()));
  }
}

inline void fold_invariance(const FaceStructure& T, Tally& t) {
  FoldAllOrders f(T);
  Cell id = identity_cell(T);
  const auto& nfs = f.run(id);
  t.check(nfs.size() == 1 && nfs.begin()->first == normal_form(T, id),
          [&] { return label(T) + ": " + std::to_string(nfs.size()) + " normal forms"; });
}

}  // namespace ofs::props
