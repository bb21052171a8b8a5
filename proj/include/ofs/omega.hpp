#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "globular.hpp"

namespace ofs {

// a local map from a shape into a fixed target structure
struct Cell {
  FaceStructure shape;
  std::vector<int> phi;
};

inline FaceMap as_map(const Cell& c) {
  FaceMap f(c.shape.size());
  f.img = c.phi;
  return f;
}

inline Cell identity_cell(const FaceStructure& T) {
  Cell c{T, {}};
  c.phi.resize(T.size());
  std::iota(c.phi.begin(), c.phi.end(), 0);
  return c;
}

inline Report check_cell(const FaceStructure& T, const Cell& c) { return check_local(c.shape, T, as_map(c)); }

// image in the terminal computad
inline FaceStructure shape(const Cell& c) { return canonical(c.shape).S; }

// c factored as phi after the identity cell of its shape
struct CellDescription {
  FaceStructure shape;
  Cell inner;   // id of the shape
  FaceMap map;  // shape -> T
};

inline CellDescription describe_cell(const Cell& c) { return {c.shape, identity_cell(c.shape), as_map(c)}; }

inline Cell restrict_cell(const Cell& c, const Stretched& st) {
  Cell r{st.S, std::vector<int>(st.S.size())};
  for (int a = 0; a < st.S.size(); ++a) r.phi[a] = c.phi[st.nu.img[a]];
  return r;
}

inline Cell cell_domain(const Cell& c, int k) { return restrict_cell(c, domain(c.shape, k)); }
inline Cell cell_codomain(const Cell& c, int k) { return restrict_cell(c, codomain(c.shape, k)); }

inline Cell cell_compose(const Cell& c1, const Cell& c2, int k) {
  Tensor t = tensor(c1.shape, c2.shape, k);
  Cell r{t.S, std::vector<int>(t.S.size(), -1)};
  for (int a = 0; a < c1.shape.size(); ++a) r.phi[t.kS[a]] = c1.phi[a];
  for (int b = 0; b < c2.shape.size(); ++b) {
    int x = t.kT[b];
    if (x < c1.shape.size()) {
      if (r.phi[x] != c2.phi[b]) throw Error(Errc::BoundaryMismatch, "cells disagree on the shared boundary");
    } else {
      r.phi[x] = c2.phi[b];
    }
  }
  return r;
}

// canonical shape key plus labels in (dimension, global order) position
inline std::string normal_form(const FaceStructure& T, const Cell& c) {
  Canonical cn = canonical(c.shape);
  std::vector<std::string> lab(c.shape.size());
  for (int a = 0; a < c.shape.size(); ++a) lab[cn.old2new[a]] = T[c.phi[a]].id;
  std::string s = cn.key + "#";
  for (int i = 0; i < cn.S.size(); ++i) s += (i ? "," : "") + std::to_string(cn.S[i].dim) + ":" + lab[i];
  return s;
}

inline bool same_cell(const FaceStructure& T, const Cell& a, const Cell& b) {
  auto h = find_iso(a.shape, b.shape);
  if (!h) return false;
  for (int x = 0; x < a.shape.size(); ++x)
    if (b.phi[h->img[x]] != a.phi[x]) return false;
  (void)T;
  return true;
}

struct Term {
  bool gen = true;
  int level = 0;
  Cell leaf;  // for generators
  std::shared_ptr<const Term> left, right;
};

inline std::string show(const FaceStructure& T, const Term& t) {
  if (t.gen) {
    int top = -1;
    for (int a = 0; a < t.leaf.shape.size(); ++a)
      if (top < 0 || t.leaf.shape[a].dim > t.leaf.shape[top].dim) top = a;
    return T[t.leaf.phi[top]].id;
  }
  return "(" + show(T, *t.left) + " ;" + std::to_string(t.level) + " " + show(T, *t.right) + ")";
}

inline Cell evaluate(const Term& t) {
  if (t.gen) return t.leaf;
  return cell_compose(evaluate(*t.left), evaluate(*t.right), t.level);
}

struct CellSplit {
  Cell lower, upper;
  int k;
};

inline CellSplit split_cell(const DecompContext& ctx, const Cell& c, const SaddleCut& s) {
  Decomposition d = decompose(ctx, s.cover_face);
  return {restrict_cell(c, d.lower), restrict_cell(c, d.upper), d.k};
}

// fold by always taking the saddle chosen by `pick`
inline std::shared_ptr<const Term> fold(const Cell& c, const std::function<size_t(size_t)>& pick) {
  auto t = std::make_shared<Term>();
  if (is_principal(c.shape)) {
    t->leaf = c;
    return t;
  }
  DecompContext ctx(c.shape);
  auto sd = saddles(ctx);
  if (sd.empty()) throw Error(Errc::NotValidated, "non-principal shape without saddles");
  CellSplit sp = split_cell(ctx, c, sd[pick(sd.size()) % sd.size()]);
  t->gen = false;
  t->level = sp.k;
  t->left = fold(sp.lower, pick);
  t->right = fold(sp.upper, pick);
  return t;
}

// normal forms reachable over every order of saddle choices
class FoldAllOrders {
 public:
  explicit FoldAllOrders(const FaceStructure& T) : T_(T) {}

  const std::map<std::string, Cell>& run(const Cell& c) {
    std::string key = normal_form(T_, c);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::map<std::string, Cell> out;
    if (is_principal(c.shape)) {
      out.emplace(key, c);
    } else {
      DecompContext ctx(c.shape);
      for (auto& s : saddles(ctx)) {
        ++splits_;
        CellSplit sp = split_cell(ctx, c, s);
        auto lo = run(sp.lower);
        auto up = run(sp.upper);
        for (auto& [k1, a] : lo)
          for (auto& [k2, b] : up) {
            Cell r = cell_compose(a, b, sp.k);
            out.emplace(normal_form(T_, r), r);
          }
      }
    }
    return memo_[key] = std::move(out);
  }
  size_t splits() const { return splits_; }

 private:
  const FaceStructure& T_;
  std::map<std::string, std::map<std::string, Cell>> memo_;
  size_t splits_ = 0;
};

// indeterminates: nu_a for each face a of dimension n
inline std::vector<Cell> indets(const FaceStructure& T, int n) {
  std::vector<Cell> out;
  Relations R(T);
  for (int a : T.of_dim(n)) {
    Stretched st = stretch(T, R, generated_set(T, {a}));
    out.push_back({st.S, st.nu.img});
  }
  return out;
}

// ---- enumeration -------------------------------------------------------

struct Budget {
  int max_faces = 9;
  int max_dim = 3;
};

class Enumerator {
 public:
  Enumerator(int F, int D, std::vector<int> profile = {}) : F_(F), D_(D), profile_(std::move(profile)) {}

  std::vector<FaceStructure> run() {
    for (int n0 = 1; n0 <= F_; ++n0) {
      if (!profile_.empty() && n0 != profile_[0]) continue;
      FaceStructure S;
      for (int i = 0; i < n0; ++i) S.add_face("v" + std::to_string(i), 0);
      grow(S, 1, F_ - n0);
    }
    std::vector<FaceStructure> out;
    for (auto& [k, s] : found_) out.push_back(s);
    std::stable_sort(out.begin(), out.end(), [](const FaceStructure& a, const FaceStructure& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a.counts() < b.counts();
    });
    for (size_t i = 0; i < out.size(); ++i) out[i].name = "c" + std::to_string(i);
    return out;
  }

 private:
  int F_, D_;
  std::vector<int> profile_;  // exact face counts per dimension, if given
  std::map<std::string, FaceStructure> found_;

  void emitted(const FaceStructure& S) {
    if (!validate_ordered(S, {true, true}).valid()) return;
    Canonical c = canonical(S);
    found_.emplace(c.key, c.S);
  }

  struct Cand {
    int gamma;
    std::vector<int> delta;
    int empty_on;
  };

  static void add(FaceStructure& S, const Cand& c, int k, int idx) {
    int a = S.add_face(std::string(1, "veft"[k]) + std::to_string(idx), k);
    S.set_gamma(a, c.gamma);
    if (c.empty_on >= 0) S.set_empty(a, c.empty_on);
    else S.set_delta(a, c.delta);
  }

  std::vector<Cand> candidates(const FaceStructure& S, int k) const {
    std::vector<Cand> out;
    auto lower = S.of_dim(k - 1);
    if (k == 1) {
      for (size_t i = 0; i < lower.size(); ++i)
        for (size_t j = i; j < lower.size(); ++j) out.push_back({lower[j], {lower[i]}, -1});
      return out;
    }
    auto lower2 = S.of_dim(k - 2);
    int m = static_cast<int>(lower.size());
    for (int g : lower) {
      std::vector<Cand> opts;
      for (int u : lower2) opts.push_back({g, {}, u});
      for (int mask = 1; mask < (1 << m); ++mask) {
        Cand c{g, {}, -1};
        for (int i = 0; i < m; ++i)
          if (mask >> i & 1) c.delta.push_back(lower[i]);
        opts.push_back(c);
      }
      for (auto& c : opts) {
        FaceStructure T = S;
        add(T, c, k, 0);
        int a = T.size() - 1;
        if (gamma_globular(T, a) && delta_globular(T, a)) out.push_back(c);
      }
    }
    return out;
  }

  // checks that become final once the faces of dimension k are fixed
  bool level_ok(const FaceStructure& S, const Relations& R, int k) const {
    for (int a : S.of_dim(k))
      if (!local_discrete(S, R, a)) return false;
    auto lower = S.of_dim(k - 1);
    for (int x : lower)
      if (R.plus(x, x)) return false;
    if (k == 1 && !linear_on(R.plus, lower)) return false;
    if (k == 1)
      for (size_t i = 0; i + 1 < lower.size(); ++i)
        if (!R.plus(lower[i], lower[i + 1])) return false;
    FaceSet cod = codomains_of_nonloops(S, all_faces(S));
    for (int x : lower)
      if (S.loop(x) && !cod[x]) return false;
    return true;
  }


 public:
  // every admissible sim on dimension j, each given once by its closure
  static std::vector<FaceStructure> sims(const FaceStructure& S, int j) {
    std::vector<FaceStructure> out;
    Relations R(S);
    auto dj = S.of_dim(j);
    std::vector<std::vector<int>> th(S.size());
    for (int a : dj) th[a] = theta_marked(S, a);
    std::vector<std::pair<int, int>> forced;
    std::vector<std::pair<int, int>> free_pairs;
    for (size_t x = 0; x < dj.size(); ++x)
      for (size_t y = 0; y < dj.size(); ++y) {
        int a = dj[x], b = dj[y];
        if (a == b) continue;
        if (!meets(th[a], th[b])) {
          if (R.minus(a, b)) forced.emplace_back(a, b);
        } else if (x < y && !R.perp_plus(a, b) && (R.minus(a, b) || R.minus(b, a))) {
          free_pairs.emplace_back(a, b);
        }
      }
    std::set<std::vector<std::pair<int, int>>> seen;
    std::vector<int> choice(free_pairs.size(), 0);
    std::function<void(size_t)> go = [&](size_t i) {
      if (i == free_pairs.size()) {
        FaceStructure T = S;
        for (auto p : forced) T.sim.push_back(p);
        for (size_t f = 0; f < free_pairs.size(); ++f) {
          auto [a, b] = free_pairs[f];
          if (choice[f] == 1) T.sim.emplace_back(a, b);
          if (choice[f] == 2) T.sim.emplace_back(b, a);
        }
        Relations RT = R;
        RT.sim = closure_of(T.size(), T.sim);
        if (!RT.sim.irreflexive()) return;
        Report rep;
        check_sim_level(T, RT, j, rep, true);
        if (!rep.valid()) return;
        Rel only(T.size());
        for (int a : dj)
          for (int b : dj)
            if (RT.sim(a, b)) only.set(a, b);
        auto red = only.reduction();
        if (!seen.insert(red).second) return;
        T.sim.clear();
        for (auto p : S.sim) T.sim.push_back(p);
        for (auto p : red) T.sim.push_back(p);
        out.push_back(std::move(T));
        return;
      }
      auto [a, b] = free_pairs[i];
      for (int o = 0; o < 3; ++o) {
        if (o == 1 && !R.minus(a, b)) continue;
        if (o == 2 && !R.minus(b, a)) continue;
        choice[i] = o;
        go(i + 1);
      }
    };
    go(0);
    return out;
  }

 private:
  void grow(const FaceStructure& S, int k, int budget) {
    std::vector<Cand> cands;
    if (k <= D_ && budget > 0) cands = candidates(S, k);
    std::vector<int> pick;
    int want = k < static_cast<int>(profile_.size()) ? profile_[k] : 0;
    std::function<void(size_t, int)> multiset = [&](size_t from, int left) {
      if (!profile_.empty() && static_cast<int>(pick.size()) < want) {
        if (left == 0) return;
        for (size_t c = from; c < cands.size(); ++c) {
          pick.push_back(static_cast<int>(c));
          multiset(c, left - 1);
          pick.pop_back();
        }
        return;
      }
      FaceStructure T = S;
      for (size_t i = 0; i < pick.size(); ++i) add(T, cands[pick[i]], k, static_cast<int>(i));
      finish(T, k, budget - static_cast<int>(pick.size()), pick.empty());
      if (left == 0 || !profile_.empty()) return;
      for (size_t c = from; c < cands.size(); ++c) {
        pick.push_back(static_cast<int>(c));
        multiset(c, left - 1);
        pick.pop_back();
      }
    };
    multiset(0, budget);
  }

  void finish(const FaceStructure& T, int k, int budget, bool top) {
    Relations R(T);
    if (!level_ok(T, R, k)) return;
    std::vector<FaceStructure> next;
    if (k - 1 >= 1) next = sims(T, k - 1);
    else next.push_back(T);
    for (auto& U : next) {
      if (top) emitted(U);
      else grow(U, k + 1, budget);
    }
  }
};

// structures with exactly the given face counts; no budget guard
inline std::vector<FaceStructure> enumerate_profile(const std::vector<int>& counts) {
  int F = 0;
  for (int c : counts) F += c;
  return Enumerator(F, static_cast<int>(counts.size()) - 1, counts).run();
}

inline std::vector<FaceStructure> enumerate(int F, int D, bool force = false) {
  Budget b;
  if (!force && (F > b.max_faces || D > b.max_dim))
    throw Error(Errc::BudgetExceeded, "bounds beyond F=" + std::to_string(b.max_faces) + ", D=" + std::to_string(b.max_dim));
  if (F < 1 || D < 0) return {};
  return Enumerator(F, D).run();
}

}  // namespace ofs
