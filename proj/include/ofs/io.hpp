#pragma once

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <json.hpp>

#include "relations.hpp"

namespace ofs {

using json = nlohmann::json;

// image of a face: a face of the target, or an empty face over `empty_on`
struct FaceMap {
  std::vector<int> img;       // -1 when collapsed
  std::vector<int> empty_on;  // -1 unless collapsed

  FaceMap() = default;
  explicit FaceMap(int n) : img(n, -1), empty_on(n, -1) {}
  int size() const { return static_cast<int>(img.size()); }
  bool collapsed(int a) const { return empty_on[a] >= 0; }
  static FaceMap identity(int n) {
    FaceMap m(n);
    for (int i = 0; i < n; ++i) m.img[i] = i;
    return m;
  }
};

// g after f
inline FaceMap compose(const FaceMap& f, const FaceMap& g) {
  FaceMap h(f.size());
  for (int a = 0; a < f.size(); ++a) {
    if (f.collapsed(a)) throw Error(Errc::MalformedDocument, "collapsing maps do not compose");
    h.img[a] = g.img[f.img[a]];
    h.empty_on[a] = g.empty_on[f.img[a]];
  }
  return h;
}

namespace detail {

inline std::string str_of(const json& j, const std::string& what) {
  if (!j.is_string()) throw Error(Errc::MalformedDocument, what + " is not a string");
  return j.get<std::string>();
}

}  // namespace detail

inline FaceStructure from_json(const json& doc) {
  using detail::str_of;
  if (!doc.is_object()) throw Error(Errc::MalformedDocument, "document is not an object");
  FaceStructure S;
  if (doc.contains("name")) S.name = str_of(doc["name"], "name");
  if (!doc.contains("faces") || !doc["faces"].is_object()) throw Error(Errc::MalformedDocument, "missing faces");
  std::vector<std::pair<int, const json*>> dims;
  for (auto& [k, v] : doc["faces"].items()) {
    int d;
    try {
      size_t pos;
      d = std::stoi(k, &pos);
      if (pos != k.size() || d < 0) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      throw Error(Errc::MalformedDocument, "bad dimension key " + k);
    }
    if (!v.is_array()) throw Error(Errc::MalformedDocument, "faces of dimension " + k);
    dims.emplace_back(d, &v);
  }
  std::sort(dims.begin(), dims.end());
  for (auto& [d, arr] : dims)
    for (auto& id : *arr) S.add_face(str_of(id, "face id"), d);

  const json empty = json::object();
  const json& gam = doc.contains("gamma") ? doc["gamma"] : empty;
  const json& del = doc.contains("delta") ? doc["delta"] : empty;
  if (!gam.is_object() || !del.is_object()) throw Error(Errc::MalformedDocument, "gamma/delta must be objects");
  for (auto& [k, v] : gam.items()) {
    int a = S.at(k);
    int g = S.at(str_of(v, "gamma of " + k));
    if (S[g].dim + 1 != S[a].dim) throw Error(Errc::DimensionMismatch, "gamma(" + k + ") = " + S[g].id);
    S.set_gamma(a, g);
  }
  for (auto& [k, v] : del.items()) {
    int a = S.at(k);
    if (S[a].dim == 0) throw Error(Errc::DimensionMismatch, "delta of point " + k);
    if (v.is_object()) {
      if (!v.contains("empty_on")) throw Error(Errc::MalformedDocument, "delta of " + k);
      int u = S.at(str_of(v["empty_on"], "empty_on of " + k));
      if (S[u].dim + 2 != S[a].dim) throw Error(Errc::DimensionMismatch, "empty_on of " + k);
      S.set_empty(a, u);
    } else if (v.is_array()) {
      if (v.empty()) throw Error(Errc::EmptyDeltaSet, k);
      std::vector<int> d;
      for (auto& x : v) {
        int i = S.at(str_of(x, "delta member of " + k));
        if (S[i].dim + 1 != S[a].dim) throw Error(Errc::DimensionMismatch, "delta(" + k + ") contains " + S[i].id);
        d.push_back(i);
      }
      S.set_delta(a, d);
    } else {
      throw Error(Errc::MalformedDocument, "delta of " + k);
    }
  }
  if (doc.contains("sim")) {
    if (!doc["sim"].is_object()) throw Error(Errc::MalformedDocument, "sim must be an object");
    for (auto& [k, v] : doc["sim"].items()) {
      if (!v.is_array()) throw Error(Errc::MalformedDocument, "sim of dimension " + k);
      int d = std::atoi(k.c_str());
      for (auto& p : v) {
        if (!p.is_array() || p.size() != 2) throw Error(Errc::MalformedDocument, "sim pair");
        int a = S.at(str_of(p[0], "sim")), b = S.at(str_of(p[1], "sim"));
        if (S[a].dim != d || S[b].dim != d) throw Error(Errc::DimensionMismatch, "sim pair in dimension " + k);
        S.sim.emplace_back(a, b);
      }
    }
  }
  for (int a = 0; a < S.size(); ++a)
    if (S[a].dim > 0 && (S[a].gamma < 0 || (S[a].delta.empty() && S[a].empty_on < 0)))
      throw Error(Errc::MalformedDocument, "face " + S[a].id + " lacks gamma or delta");
  S.check();
  return S;
}

inline FaceStructure parse(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedDocument, e.what());
  }
  return from_json(doc);
}

inline json to_json(const FaceStructure& S) {
  json doc;
  doc["name"] = S.name;
  json faces = json::object(), gam = json::object(), del = json::object(), sim = json::object();
  for (int k = 0; k <= S.dim(); ++k) {
    json arr = json::array();
    for (int a : S.of_dim(k)) arr.push_back(S[a].id);
    faces[std::to_string(k)] = arr;
  }
  for (int a = 0; a < S.size(); ++a) {
    if (S[a].dim == 0) continue;
    gam[S[a].id] = S[S[a].gamma].id;
    if (S.eps(a)) {
      del[S[a].id] = {{"empty_on", S[S[a].empty_on].id}};
    } else {
      json arr = json::array();
      for (int x : S[a].delta) arr.push_back(S[x].id);
      del[S[a].id] = arr;
    }
  }
  for (auto [a, b] : S.sim) sim[std::to_string(S[a].dim)].push_back(json::array({S[a].id, S[b].id}));
  doc["faces"] = faces;
  doc["gamma"] = gam;
  doc["delta"] = del;
  doc["sim"] = sim;
  return doc;
}

inline std::string emit(const json& j) { return j.dump() + "\n"; }
inline std::string emit(const FaceStructure& S) { return emit(to_json(S)); }

inline std::string read_input(const std::string& path) {
  if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path);
  if (!in) throw Error(Errc::MalformedDocument, "cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

inline FaceStructure load(const std::string& path) { return parse(read_input(path)); }

inline json map_to_json(const FaceStructure& src, const FaceStructure& tgt, const FaceMap& f) {
  json assign = json::object();
  for (int a = 0; a < src.size(); ++a) {
    if (f.collapsed(a)) assign[src[a].id] = {{"empty_on", tgt[f.empty_on[a]].id}};
    else if (f.img[a] >= 0) assign[src[a].id] = tgt[f.img[a]].id;
  }
  return {{"source", src.name}, {"target", tgt.name}, {"assign", assign}};
}

inline FaceMap map_from_json(const FaceStructure& src, const FaceStructure& tgt, const json& doc) {
  if (!doc.is_object() || !doc.contains("assign") || !doc["assign"].is_object())
    throw Error(Errc::MalformedDocument, "map document needs assign");
  FaceMap f(src.size());
  for (auto& [k, v] : doc["assign"].items()) {
    int a = src.at(k);
    if (v.is_object()) f.empty_on[a] = tgt.at(detail::str_of(v["empty_on"], "empty_on"));
    else f.img[a] = tgt.at(detail::str_of(v, "image of " + k));
  }
  for (int a = 0; a < src.size(); ++a)
    if (f.img[a] < 0 && f.empty_on[a] < 0) throw Error(Errc::MalformedDocument, "no image for " + src[a].id);
  return f;
}

inline std::string to_dot(const FaceStructure& S) {
  auto q = [](const std::string& s) { return json(s).dump(); };
  std::ostringstream o;
  o << "digraph " << q(S.name.empty() ? "S" : S.name) << " {\n  rankdir=BT;\n";
  for (int k = 0; k <= S.dim(); ++k) {
    o << "  { rank=same;";
    for (int a : S.of_dim(k)) o << " " << q(S[a].id) << ";";
    o << " }\n";
  }
  for (int a = 0; a < S.size(); ++a) {
    if (S[a].dim == 0) continue;
    o << "  " << q(S[a].id) << " -> " << q(S[S[a].gamma].id) << ";\n";
    for (int x : S[a].delta) o << "  " << q(S[x].id) << " -> " << q(S[a].id) << " [style=dashed];\n";
    if (S.eps(a))
      o << "  " << q(S[S[a].empty_on].id) << " -> " << q(S[a].id) << " [style=dashed, label=\"1\"];\n";
  }
  for (auto [a, b] : S.sim) o << "  " << q(S[a].id) << " -> " << q(S[b].id) << " [style=dotted, constraint=false];\n";
  o << "}\n";
  return o.str();
}

}  // namespace ofs
