#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ofs {

enum class Errc {
  UnknownFace,
  DimensionMismatch,
  DuplicateId,
  EmptyDeltaSet,
  MalformedDocument,
  ZeroDimFace,
  NotConvex,
  NotPositive,
  NotIdeal,
  NotNormal,
  NotValidated,
  BoundaryMismatch,
  NotACut,
  BudgetExceeded,
  EqualFaces,
  MixedDimensions,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::UnknownFace: return "UnknownFace";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::EmptyDeltaSet: return "EmptyDeltaSet";
    case Errc::MalformedDocument: return "MalformedDocument";
    case Errc::ZeroDimFace: return "ZeroDimFace";
    case Errc::NotConvex: return "NotConvex";
    case Errc::NotPositive: return "NotPositive";
    case Errc::NotIdeal: return "NotIdeal";
    case Errc::NotNormal: return "NotNormal";
    case Errc::NotValidated: return "NotValidated";
    case Errc::BoundaryMismatch: return "BoundaryMismatch";
    case Errc::NotACut: return "NotACut";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::EqualFaces: return "EqualFaces";
    case Errc::MixedDimensions: return "MixedDimensions";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

using FaceSet = std::vector<char>;  // membership mask over face indices

// delta holds face indices (sorted); empty_on >= 0 marks delta = 1_u
struct Face {
  std::string id;
  int dim = 0;
  int gamma = -1;
  std::vector<int> delta;
  int empty_on = -1;
};

class FaceStructure {
 public:
  std::string name;
  std::vector<std::pair<int, int>> sim;  // generators

  int size() const { return static_cast<int>(faces_.size()); }
  bool empty() const { return faces_.empty(); }
  const Face& operator[](int i) const { return faces_[i]; }
  const std::vector<Face>& faces() const { return faces_; }

  int add_face(const std::string& id, int dim) {
    if (id.empty()) throw Error(Errc::MalformedDocument, "empty face id");
    if (index_.count(id)) throw Error(Errc::DuplicateId, id);
    Face f;
    f.id = id;
    f.dim = dim;
    faces_.push_back(std::move(f));
    index_[id] = size() - 1;
    return size() - 1;
  }

  // picks a fresh id by appending primes
  int add_fresh(std::string id, int dim) {
    while (index_.count(id)) id += "'";
    return add_face(id, dim);
  }

  void set_gamma(int a, int g) { faces_[a].gamma = g; }
  void set_delta(int a, std::vector<int> d) {
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    faces_[a].delta = std::move(d);
    faces_[a].empty_on = -1;
  }
  void set_empty(int a, int u) {
    faces_[a].delta.clear();
    faces_[a].empty_on = u;
  }
  void rename(int a, const std::string& id) {
    if (faces_[a].id == id) return;
    if (index_.count(id)) throw Error(Errc::DuplicateId, id);
    index_.erase(faces_[a].id);
    faces_[a].id = id;
    index_[id] = a;
  }

  int find(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? -1 : it->second;
  }
  int at(std::string_view id) const {
    int i = find(id);
    if (i < 0) throw Error(Errc::UnknownFace, std::string(id));
    return i;
  }

  int dim() const {
    int d = -1;
    for (auto& f : faces_) d = std::max(d, f.dim);
    return d;
  }
  std::vector<int> of_dim(int k) const {
    std::vector<int> r;
    for (int i = 0; i < size(); ++i)
      if (faces_[i].dim == k) r.push_back(i);
    return r;
  }
  std::vector<int> counts() const {
    std::vector<int> c(std::max(0, dim() + 1), 0);
    for (auto& f : faces_) ++c[f.dim];
    return c;
  }

  bool eps(int a) const { return faces_[a].empty_on >= 0; }
  bool loop(int a) const {
    const Face& f = faces_[a];
    return f.dim >= 1 && f.empty_on < 0 && f.delta.size() == 1 && f.delta[0] == f.gamma;
  }
  bool unary(int a) const { return faces_[a].empty_on < 0 && faces_[a].delta.size() == 1; }

  // structural sanity: ids resolve, dimensions line up
  void check() const {
    if (!faces_.empty()) {
      bool has0 = false;
      for (auto& f : faces_) has0 |= f.dim == 0;
      if (!has0) throw Error(Errc::MalformedDocument, "no faces of dimension 0");
    }
    for (int i = 0; i < size(); ++i) {
      const Face& f = faces_[i];
      if (f.dim < 0) throw Error(Errc::DimensionMismatch, f.id);
      if (f.dim == 0) {
        if (f.gamma >= 0 || !f.delta.empty() || f.empty_on >= 0)
          throw Error(Errc::DimensionMismatch, f.id + " is a point with boundary");
        continue;
      }
      if (f.gamma < 0 || f.gamma >= size()) throw Error(Errc::MalformedDocument, "no gamma for " + f.id);
      if (faces_[f.gamma].dim != f.dim - 1)
        throw Error(Errc::DimensionMismatch, "gamma(" + f.id + ") = " + faces_[f.gamma].id);
      if (f.empty_on >= 0) {
        if (f.dim < 2 || faces_[f.empty_on].dim != f.dim - 2)
          throw Error(Errc::DimensionMismatch, "empty_on of " + f.id);
      } else {
        if (f.delta.empty()) throw Error(Errc::EmptyDeltaSet, f.id);
        for (int x : f.delta)
          if (faces_[x].dim != f.dim - 1)
            throw Error(Errc::DimensionMismatch, "delta(" + f.id + ") contains " + faces_[x].id);
        if (f.dim == 1 && f.delta.size() != 1)
          throw Error(Errc::DimensionMismatch, "delta of arrow " + f.id + " must be one point");
      }
    }
    for (auto [a, b] : sim) {
      if (a == b) throw Error(Errc::MalformedDocument, "sim pair on one face " + faces_[a].id);
      if (faces_[a].dim != faces_[b].dim)
        throw Error(Errc::DimensionMismatch, "sim pair " + faces_[a].id + "," + faces_[b].id);
    }
  }

 private:
  std::vector<Face> faces_;
  std::unordered_map<std::string, int> index_;
};

// theta(a) as faces; the empty face 1_u is reported through `empties`
inline std::vector<int> theta_dot(const FaceStructure& S, int a) {
  if (S[a].dim == 0) throw Error(Errc::ZeroDimFace, S[a].id);
  std::vector<int> r = S[a].delta;
  r.push_back(S[a].gamma);
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

// undotted theta: the empty face 1_u contributes its base u
inline std::vector<int> theta(const FaceStructure& S, int a) {
  std::vector<int> r = theta_dot(S, a);
  if (S.eps(a)) {
    r.push_back(S[a].empty_on);
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }
  return r;
}

// closure of a set under gamma and delta (empty_on bases included)
inline FaceSet saturate(const FaceStructure& S, FaceSet m) {
  m.resize(S.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < S.size(); ++i) {
      if (!m[i] || S[i].dim == 0) continue;
      auto mark = [&](int x) {
        if (!m[x]) m[x] = 1, changed = true;
      };
      mark(S[i].gamma);
      for (int x : S[i].delta) mark(x);
      if (S[i].empty_on >= 0) mark(S[i].empty_on);
    }
  }
  return m;
}

}  // namespace ofs
