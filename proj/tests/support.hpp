#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include <ofs/ofs.hpp>

namespace ofs::test {

inline FaceStructure fx(const std::string& name) { return load(std::string(OFS_FIXTURES) + "/" + name + ".json"); }

inline std::set<std::string> names(const FaceStructure& S, const std::vector<int>& xs) {
  std::set<std::string> r;
  for (int x : xs) r.insert(S[x].id);
  return r;
}

inline std::set<std::string> names(const FaceStructure& S, const FaceSet& m) {
  std::set<std::string> r;
  for (int x = 0; x < S.size(); ++x)
    if (m[x]) r.insert(S[x].id);
  return r;
}

inline FaceStructure point() {
  FaceStructure S;
  S.add_face("s", 0);
  return S;
}

inline FaceStructure arrow() {
  FaceStructure S;
  int u = S.add_face("u", 0), v = S.add_face("v", 0), f = S.add_face("f", 1);
  S.set_delta(f, {u});
  S.set_gamma(f, v);
  return S;
}

// the n-arrow path v0 -> ... -> vn
inline FaceStructure path(int n) {
  FaceStructure S;
  for (int i = 0; i <= n; ++i) S.add_face("v" + std::to_string(i), 0);
  for (int i = 0; i < n; ++i) {
    int e = S.add_face("e" + std::to_string(i), 1);
    S.set_delta(e, {i});
    S.set_gamma(e, i + 1);
  }
  for (int i = 0; i + 1 < n; ++i) S.sim.emplace_back(n + 1 + i, n + 2 + i);
  return S;
}

// relabel every face and reverse the face order
inline FaceStructure relabeled(const FaceStructure& S) {
  int n = S.size();
  FaceStructure R;
  for (int i = n - 1; i >= 0; --i) R.add_face("r_" + S[i].id, S[i].dim);
  auto m = [n](int i) { return n - 1 - i; };
  for (int i = 0; i < n; ++i) {
    const Face& f = S[i];
    if (f.gamma >= 0) R.set_gamma(m(i), m(f.gamma));
    if (f.empty_on >= 0) {
      R.set_empty(m(i), m(f.empty_on));
    } else if (f.dim > 0) {
      std::vector<int> d;
      for (int x : f.delta) d.push_back(m(x));
      R.set_delta(m(i), d);
    }
  }
  for (auto [a, b] : S.sim) R.sim.emplace_back(m(a), m(b));
  return R;
}

// generate-and-filter: every assignment of gamma, delta and sim generators on every profile,
// kept when it validates, then reduced up to find_iso
inline std::vector<FaceStructure> raw_enumerate(int F, int D) {
  std::vector<FaceStructure> reps;
  auto keep = [&](const FaceStructure& S) {
    if (!is_valid(S)) return;
    for (auto& r : reps)
      if (r.counts() == S.counts() && isomorphic(r, S)) return;
    reps.push_back(S);
  };
  std::vector<int> prof;
  std::function<void(int)> profiles = [&](int left) {
    if (!prof.empty()) {
      FaceStructure S;
      std::vector<std::vector<int>> by(prof.size());
      for (size_t k = 0; k < prof.size(); ++k)
        for (int i = 0; i < prof[k]; ++i) by[k].push_back(S.add_face("f" + std::to_string(k) + "_" + std::to_string(i), k));
      std::vector<int> todo;
      for (size_t k = 1; k < prof.size(); ++k) todo.insert(todo.end(), by[k].begin(), by[k].end());
      std::vector<std::pair<int, int>> pairs;
      for (size_t k = 1; k < prof.size(); ++k)
        for (int a : by[k])
          for (int b : by[k])
            if (a != b) pairs.emplace_back(a, b);
      std::function<void(size_t)> face = [&](size_t i) {
        if (i == todo.size()) {
          for (unsigned m = 0; m < (1u << pairs.size()); ++m) {
            S.sim.clear();
            for (size_t p = 0; p < pairs.size(); ++p)
              if (m >> p & 1) S.sim.push_back(pairs[p]);
            keep(S);
          }
          return;
        }
        int a = todo[i], k = S[a].dim;
        const auto& below = by[k - 1];
        for (int g : below) {
          S.set_gamma(a, g);
          for (unsigned m = 1; m < (1u << below.size()); ++m) {
            std::vector<int> d;
            for (size_t j = 0; j < below.size(); ++j)
              if (m >> j & 1) d.push_back(below[j]);
            S.set_delta(a, d);
            face(i + 1);
          }
          if (k >= 2)
            for (int u : by[k - 2]) {
              S.set_empty(a, u);
              face(i + 1);
            }
        }
      };
      face(0);
    }
    if (static_cast<int>(prof.size()) > D) return;
    for (int n = 1; n <= left; ++n) {
      prof.push_back(n);
      profiles(left - n);
      prof.pop_back();
    }
  };
  profiles(F);
  return reps;
}

}  // namespace ofs::test
