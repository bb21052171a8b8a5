#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <ofs/ofs.hpp>

using namespace ofs;

namespace {

struct DomainFailure {
  std::string msg;
};

std::vector<std::string> split_ids(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

std::vector<int> ids_of(const FaceStructure& S, const std::string& list) {
  std::vector<int> out;
  for (auto& id : split_ids(list)) out.push_back(S.at(id));
  return out;
}

json ids_json(const FaceStructure& S, const std::vector<int>& xs) {
  json a = json::array();
  for (int x : xs) a.push_back(S[x].id);
  return a;
}

json mask_json(const FaceStructure& S, const FaceSet& m) {
  std::vector<int> xs;
  for (int a = 0; a < S.size(); ++a)
    if (m[a]) xs.push_back(a);
  return ids_json(S, xs);
}

struct Out {
  std::string format = "text";
  std::string map_out;

  void structure(const FaceStructure& S) const {
    if (format == "dot") std::cout << to_dot(S);
    else std::cout << emit(S);
  }

  void with_map(const FaceStructure& S, const FaceStructure& src, const FaceStructure& tgt, const FaceMap& f) const {
    structure(S);
    if (map_out.empty()) return;
    std::ofstream o(map_out);
    if (!o) throw Error(Errc::MalformedDocument, "cannot write " + map_out);
    o << emit(map_to_json(src, tgt, f));
  }
};

json report_json(const FaceStructure& S, const Report& rep) {
  json v = json::array();
  for (auto& x : rep.violations) v.push_back({{"tag", x.tag}, {"witness", ids_json(S, x.witness)}, {"reason", x.reason}});
  return {{"valid", rep.valid()}, {"violations", v}};
}

json cell_json(const FaceStructure& T, const Cell& c) {
  FaceMap f(c.shape.size());
  f.img = c.phi;
  return {{"shape", to_json(c.shape)}, {"map", map_to_json(c.shape, T, f)}};
}

Cell cell_from_json(const FaceStructure& T, const json& doc) {
  if (!doc.is_object() || !doc.contains("shape") || !doc.contains("map"))
    throw Error(Errc::MalformedDocument, "cell document needs shape and map");
  Cell c{from_json(doc["shape"]), {}};
  FaceMap f = map_from_json(c.shape, T, doc["map"]);
  for (int a = 0; a < c.shape.size(); ++a)
    if (f.collapsed(a)) throw Error(Errc::MalformedDocument, "cell maps do not collapse");
  c.phi = f.img;
  Report rep = check_cell(T, c);
  if (!rep.valid()) throw DomainFailure{"cell map is not local:\n" + describe(c.shape, rep)};
  return c;
}

Budget envelope() {
  Budget b;
  if (const char* e = std::getenv("OFS_BUDGET")) {
    int F = 0, D = 0;
    char sep = 0;
    std::stringstream in(e);
    if (in >> F >> sep >> D && sep == ',') b = {F, D};
    else throw Error(Errc::MalformedDocument, "OFS_BUDGET must look like F,D");
  }
  return b;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ofs: ordered face structures"};
  app.require_subcommand(1);
  app.fallthrough();
  Out out;
  app.add_option("--format", out.format, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--map-out", out.map_out, "write the morphism document of a construction here");

  std::string file, file2, file3, faces, ideal, face, lower, rel = "plus", kind = "local", part = "both";
  int k = -1, dim = -1, max_faces = 1, max_dim = 0, n = 0;
  bool positive = false, local = false, count_only = false, force = false, list_indets = false, all_orders = false;

  auto* validate = app.add_subcommand("validate", "check the axioms");
  validate->add_option("file", file)->required();
  auto* vflags = validate->add_flag("--positive", positive);
  validate->add_flag("--local", local)->excludes(vflags);

  auto* classify_cmd = app.add_subcommand("classify", "print face classes");
  classify_cmd->add_option("file", file)->required();

  auto* derive = app.add_subcommand("derive", "print a derived relation");
  derive->add_option("file", file)->required();
  derive->add_option("--rel", rel)->check(CLI::IsMember({"plus", "minus", "sim", "global"}));
  derive->add_option("--dim", dim);

  auto* stretch_cmd = app.add_subcommand("stretch", "stretching of a convex set");
  stretch_cmd->add_option("file", file)->required();
  stretch_cmd->add_option("--faces", faces)->required();

  auto* quotient_cmd = app.add_subcommand("quotient", "quotient by an ideal");
  quotient_cmd->add_option("file", file)->required();
  quotient_cmd->add_option("--ideal", ideal)->required();

  auto* cover = app.add_subcommand("cover", "positive cover");
  cover->add_option("file", file)->required();

  auto* extend = app.add_subcommand("extend", "principal extension");
  extend->add_option("file", file)->required();
  extend->add_option("-k", k, "dimension of the extension (default: dim)");

  auto* dom = app.add_subcommand("dom", "k-domain");
  dom->add_option("file", file)->required();
  dom->add_option("-k", k)->required();
  auto* cod = app.add_subcommand("cod", "k-codomain");
  cod->add_option("file", file)->required();
  cod->add_option("-k", k)->required();

  auto* tensor_cmd = app.add_subcommand("tensor", "k-tensor A *k B");
  tensor_cmd->add_option("a", file)->required();
  tensor_cmd->add_option("b", file2)->required();
  tensor_cmd->add_option("-k", k)->required();

  auto* saddles_cmd = app.add_subcommand("saddles", "list saddle cuts");
  saddles_cmd->add_option("file", file)->required();

  auto* decompose_cmd = app.add_subcommand("decompose", "decompose at a cut");
  decompose_cmd->add_option("file", file)->required();
  decompose_cmd->add_option("--face", face)->required();
  decompose_cmd->add_option("--lower", lower);
  decompose_cmd->add_option("--part", part)->check(CLI::IsMember({"lower", "upper", "both"}));

  auto* enumerate_cmd = app.add_subcommand("enumerate", "all structures up to iso");
  enumerate_cmd->add_option("--max-faces", max_faces)->required();
  enumerate_cmd->add_option("--max-dim", max_dim)->required();
  enumerate_cmd->add_flag("--count-only", count_only);
  enumerate_cmd->add_flag("--force", force);

  auto* cells = app.add_subcommand("cells", "cells of the free category on T");
  cells->add_option("file", file)->required();
  cells->add_option("-n", n)->required();
  cells->add_flag("--list-indets", list_indets);

  auto* fold_cmd = app.add_subcommand("fold", "fold a cell into generators");
  fold_cmd->add_option("target", file)->required();
  fold_cmd->add_option("cell", file2)->required();
  fold_cmd->add_flag("--check-all-orders", all_orders);

  auto* iso = app.add_subcommand("iso", "find an isomorphism");
  iso->add_option("a", file)->required();
  iso->add_option("b", file2)->required();

  auto* map_check = app.add_subcommand("map-check", "check a map document");
  map_check->add_option("src", file)->required();
  map_check->add_option("tgt", file2)->required();
  map_check->add_option("map", file3)->required();
  map_check->add_option("--kind", kind)->check(CLI::IsMember({"hyper", "monotone", "local", "collapsing"}));

  auto* dot = app.add_subcommand("dot", "graphviz export");
  dot->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  bool text = out.format == "text";
  try {
    if (*validate) {
      FaceStructure S = load(file);
      Report rep = positive ? validate_positive(S) : local ? validate_local(S) : validate_ordered(S);
      if (out.format == "json") std::cout << emit(report_json(S, rep));
      else std::cout << describe(S, rep);
      return rep.valid() ? 0 : 1;
    }
    if (*classify_cmd) {
      FaceStructure S = load(file);
      Relations R(S);
      Classes c = classify(S, R);
      json j = {{"eps", mask_json(S, c.eps)},
                {"lambda", mask_json(S, c.lambda)},
                {"unary", mask_json(S, c.unary)},
                {"initial", mask_json(S, c.initial)},
                {"iota", mask_json(S, c.iota_all)}};
      json cl = json::object();
      for (int a = 0; a < S.size(); ++a)
        if (!c.cluster[a].empty()) cl[S[a].id] = ids_json(S, c.cluster[a]);
      j["clusters"] = cl;
      if (out.format == "json") {
        std::cout << emit(j);
      } else {
        for (const char* key : {"eps", "lambda", "unary", "initial", "iota"}) {
          std::cout << key << ":";
          for (auto& x : j[key]) std::cout << " " << x.get<std::string>();
          std::cout << "\n";
        }
        for (auto& [x, v] : cl.items()) {
          std::cout << "I(" << x << "):";
          for (auto& y : v) std::cout << " " << y.get<std::string>();
          std::cout << "\n";
        }
      }
      return 0;
    }
    if (*derive) {
      FaceStructure S = load(file);
      Relations R(S);
      Rel r = rel == "plus" ? R.plus : rel == "minus" ? R.minus : rel == "sim" ? R.sim : global_order(S, R);
      json arr = json::array();
      for (auto [a, b] : r.pairs()) {
        if (dim >= 0 && S[a].dim != dim) continue;
        if (text) std::cout << S[a].id << " < " << S[b].id << "\n";
        arr.push_back(json::array({S[a].id, S[b].id}));
      }
      if (!text) std::cout << emit(arr);
      return 0;
    }
    if (*stretch_cmd) {
      FaceStructure T = load(file);
      FaceSet X(T.size(), 0);
      for (int a : ids_of(T, faces)) X[a] = 1;
      Stretched st = stretch(T, X);
      out.with_map(st.S, st.S, T, st.nu);
      return 0;
    }
    if (*quotient_cmd) {
      FaceStructure T = load(file);
      Quotient q = quotient(T, ids_of(T, ideal));
      out.with_map(q.S, T, q.S, q.q);
      return 0;
    }
    if (*cover) {
      FaceStructure S = load(file);
      Cover c = positive_cover(S);
      out.with_map(c.S, c.S, S, c.q);
      return 0;
    }
    if (*extend) {
      FaceStructure N = load(file);
      FaceStructure P = principal_extension(N, k < 0 ? N.dim() : k);
      FaceMap inc(N.size());
      for (int a = 0; a < N.size(); ++a) inc.img[a] = P.at(N[a].id);
      out.with_map(P, N, P, inc);
      return 0;
    }
    if (*dom || *cod) {
      FaceStructure S = load(file);
      Stretched st = *dom ? domain(S, k) : codomain(S, k);
      out.with_map(st.S, st.S, S, st.nu);
      return 0;
    }
    if (*tensor_cmd) {
      FaceStructure A = load(file), B = load(file2);
      Tensor t = tensor(A, B, k);
      FaceMap f(B.size());
      f.img = t.kT;
      out.with_map(t.S, B, t.S, f);
      return 0;
    }
    if (*saddles_cmd) {
      FaceStructure S = load(file);
      DecompContext ctx(S);
      json arr = json::array();
      for (auto& s : saddles(ctx)) {
        const auto& I = ctx.cov.cls.cluster[s.face];
        std::vector<int> L(I.begin(), I.begin() + s.lower);
        if (text) std::cout << s.dim << " " << ctx.cov.S[s.cover_face].id << "\n";
        arr.push_back({{"cut", ctx.cov.S[s.cover_face].id}, {"face", S[s.face].id}, {"lower", ids_json(S, L)}, {"dim", s.dim}});
      }
      if (!text) std::cout << emit(arr);
      return 0;
    }
    if (*decompose_cmd) {
      FaceStructure S = load(file);
      DecompContext ctx(S);
      int c = find_cut(ctx, S.at(face), ids_of(S, lower));
      Decomposition d = decompose(ctx, c);
      if (part == "lower") out.structure(d.lower.S);
      else if (part == "upper") out.structure(d.upper.S);
      else std::cout << emit(json{{"k", d.k}, {"lower", to_json(d.lower.S)}, {"upper", to_json(d.upper.S)}});
      return 0;
    }
    if (*enumerate_cmd) {
      Budget b = envelope();
      bool inside = max_faces <= b.max_faces && max_dim <= b.max_dim;
      if (!force && !inside)
        throw Error(Errc::BudgetExceeded, "bounds beyond F=" + std::to_string(b.max_faces) + ", D=" + std::to_string(b.max_dim) + " (use --force or OFS_BUDGET)");
      auto corpus = enumerate(max_faces, max_dim, true);
      if (count_only) std::cout << corpus.size() << "\n";
      else
        for (auto& S : corpus) out.structure(S);
      return 0;
    }
    if (*cells) {
      FaceStructure T = load(file);
      if (list_indets) {
        for (auto& c : indets(T, n)) std::cout << emit(cell_json(T, c));
      } else {
        for (int l = 0; l <= n; ++l) std::cout << l << " " << T.of_dim(l).size() << "\n";
      }
      return 0;
    }
    if (*fold_cmd) {
      FaceStructure T = load(file);
      Cell c = cell_from_json(T, json::parse(read_input(file2)));
      auto term = fold(c, [](size_t) { return size_t{0}; });
      std::cout << show(T, *term) << "\n";
      if (all_orders) {
        FoldAllOrders fa(T);
        const auto& nfs = fa.run(c);
        bool ok = nfs.size() == 1 && nfs.begin()->first == normal_form(T, c);
        std::cout << "normal forms: " << nfs.size() << (ok ? " (order independent)" : " (ORDER DEPENDENT)") << "\n";
        return ok ? 0 : 1;
      }
      return 0;
    }
    if (*iso) {
      FaceStructure A = load(file), B = load(file2);
      auto h = find_iso(A, B);
      if (!h) {
        std::cout << (text ? "not isomorphic\n" : emit(json(nullptr)));
        return 1;
      }
      std::cout << emit(map_to_json(A, B, *h));
      return 0;
    }
    if (*map_check) {
      FaceStructure S = load(file), T = load(file2);
      FaceMap f = map_from_json(S, T, json::parse(read_input(file3)));
      Report rep;
      json extra = json::object();
      if (kind == "collapsing") {
        CollapseReport cr = check_collapsing(S, T, f);
        rep = cr.report;
        extra = {{"kernel", ids_json(S, cr.kernel)}, {"kernel_is_ideal", cr.kernel_is_ideal}};
      } else {
        bool collapsed = false;
        for (int a = 0; a < S.size(); ++a) collapsed = collapsed || f.collapsed(a);
        if (collapsed) rep.add("total", {}, "map collapses faces");
        else if (kind == "hyper") rep = check_hypergraph_morphism(S, T, f);
        else if (kind == "monotone") rep = check_monotone(S, T, f);
        else rep = check_local(S, T, f);
      }
      if (out.format == "json") {
        json j = report_json(S, rep);
        j.update(extra);
        std::cout << emit(j);
      } else {
        std::cout << describe(S, rep);
      }
      return rep.valid() ? 0 : 1;
    }
    if (*dot) {
      std::cout << to_dot(load(file));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainFailure& e) {
    std::cerr << "error: " << e.msg << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: MalformedDocument: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
