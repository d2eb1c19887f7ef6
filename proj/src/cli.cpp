#include "tenfact/cli.hpp"

#include "tenfact/builders.hpp"
#include "tenfact/cohomology.hpp"
#include "tenfact/error.hpp"
#include "tenfact/factor.hpp"
#include "tenfact/fpdim.hpp"
#include "tenfact/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <sstream>

namespace tenfact {

namespace {

namespace fs = std::filesystem;

struct Globals {
  bool json = false;
  bool timing = false;
  std::uint64_t seed = 0x5eed;
  unsigned threads = 1;
};

struct Outcome {
  int exit = kExitOk;
  std::string status = "OK";
  Json fields = Json::object();
  Json findings = Json::array();
  std::string text;
};

Json finding(const std::string& kind, const std::vector<Index>& witness,
             const std::string& detail) {
  return {{"kind", kind}, {"witness", witness}, {"detail", detail}};
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

std::string simple_list(const CategoryData& d, const SimpleSet& s) {
  std::vector<std::string> names;
  for (Index x : s) names.push_back(d.simples[x]);
  return "{" + join(names) + "}";
}

std::string element_list(const FiniteGroup& g, const std::vector<Index>& s) {
  std::vector<std::string> names;
  for (Index x : s) names.push_back(g.label(x));
  return "{" + join(names) + "}";
}

Json labels_json(const FiniteGroup& g, const std::vector<Index>& s) {
  Json a = Json::array();
  for (Index x : s) a.push_back(g.label(x));
  return a;
}

std::string integers_text(const std::vector<Integer>& v) {
  std::vector<std::string> parts;
  for (const Integer& x : v) parts.push_back(x.str());
  return "(" + join(parts) + ")";
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s.precision(12);
  s << v;
  return s.str();
}

Outcome cmd_check(const std::string& path) {
  const CategoryData d = load_category(path);
  const ValidationReport r = validate(d);
  Outcome o;
  o.fields["simples"] = d.rank();
  o.fields["ok"] = r.ok();
  o.fields["counts"] = r.counts;
  std::ostringstream t;
  t << "simples: " << d.rank() << "\n";
  for (const Violation& v : r.violations) {
    o.findings.push_back(finding(v.kind, v.witness, v.detail));
    std::vector<std::string> w;
    for (Index x : v.witness) w.push_back(std::to_string(x));
    t << "VIOLATION " << v.kind << " (" << join(w) << "): " << v.detail << "\n";
  }
  for (const auto& [kind, n] : r.counts) t << kind << ": " << n << " failing instance(s)\n";
  t << (r.ok() ? "OK" : "INVALID") << "\n";
  if (!r.ok()) {
    o.exit = kExitInput;
    o.status = "FAIL";
  }
  o.text = t.str();
  return o;
}

Outcome cmd_fpdim(const std::string& path, double tol) {
  const CategoryData d = load_category(path);
  const FpProfile p = fp_character(d, tol);
  const Predicates pr = predicates(d, p);
  const EigenCheck ec = eigen_equation_check(d, p);
  Outcome o;
  o.fields["simples"] = d.simples;
  o.fields["dims"] = p.dims;
  o.fields["cat_dim"] = p.cat_dim;
  o.fields["regular"] = p.regular.mults;
  o.fields["tolerance"] = p.tolerance;
  o.fields["integer_confirmed"] = p.integer_confirmed;
  o.fields["predicates"] = {{"pointed", pr.pointed},
                            {"integral", pr.integral},
                            {"weakly_integral", pr.weakly_integral},
                            {"fusion", pr.fusion}};
  o.fields["eigen_max_deviation"] = ec.max_deviation;
  std::ostringstream t;
  for (Index x = 0; x < d.rank(); ++x) t << "FPdim(" << d.simples[x] << ") = " << fmt_double(p.dims[x]) << "\n";
  t << "FPdim(A) = " << fmt_double(p.cat_dim) << (p.integer_confirmed ? " (integer character)" : "") << "\n";
  t << "pointed=" << pr.pointed << " integral=" << pr.integral
    << " weakly_integral=" << pr.weakly_integral << " fusion=" << pr.fusion << "\n";
  t << "eigen equation max deviation: " << ec.max_deviation << "\n";
  o.text = t.str();
  return o;
}

Json verdict_json(const FactorizationVerdict& v) {
  Json j;
  j["ok"] = v.ok;
  Json b = Json::array();
  for (const FactorPair& p : v.bijection) b.push_back({p.a_simple, p.c_simple, p.product});
  j["bijection"] = b;
  j["fpdim"] = {{"a", v.fpdim_a}, {"c", v.fpdim_c}, {"b", v.fpdim_b},
                {"product_equal", v.fpdim_product_equal}};
  return j;
}

Outcome cmd_factorize_pair(const std::string& b_path, const std::string& a_path,
                           const std::string& c_path) {
  auto b = std::make_shared<const CategoryData>(load_category(b_path));
  const Embedding a = load_embedding(a_path);
  const Embedding c = load_embedding(c_path);
  if (!(*a.target == *b) || !(*c.target == *b)) {
    fail(ErrorCode::kTargetMismatch, "embedding target differs from " + b_path);
  }
  const FactorizationVerdict v = check_exact_factorization(a, c);
  Outcome o;
  o.fields["mode"] = "pair";
  o.fields["verdict"] = verdict_json(v);
  std::ostringstream t;
  for (const CriterionFailure& f : v.failures) {
    o.findings.push_back(finding(f.criterion, f.witness, f.detail));
    std::vector<std::string> w;
    for (Index x : f.witness) w.push_back(std::to_string(x));
    t << "FAIL " << f.criterion << " (" << join(w) << "): " << f.detail << "\n";
  }
  t << "FPdim(A) FPdim(C) = " << fmt_double(v.fpdim_a * v.fpdim_c) << ", FPdim(B) = "
    << fmt_double(v.fpdim_b) << (v.fpdim_product_equal ? " (equal)" : " (differ)") << "\n";
  if (v.ok) {
    for (const FactorPair& p : v.bijection) {
      t << a.source->simples[p.a_simple] << " (x) " << c.source->simples[p.c_simple]
        << " = " << b->simples[p.product] << "\n";
    }
    t << "exact factorization (Grothendieck level)\n";
  } else {
    t << "not an exact factorization\n";
    o.exit = kExitNegative;
    o.status = "FAIL";
  }
  o.text = t.str();
  return o;
}

Outcome cmd_factorize_auto(const std::string& b_path, unsigned threads) {
  auto b = std::make_shared<const CategoryData>(load_category(b_path));
  const auto matches = search_exact_factorizations(b, SearchOptions{threads});
  Outcome o;
  o.fields["mode"] = "auto";
  Json list = Json::array();
  std::size_t nontrivial_classes = 0;
  std::ostringstream t;
  for (const FactorizationMatch& m : matches) {
    list.push_back({{"a", image(m.a)}, {"c", image(m.c)}, {"trivial", m.trivial},
                    {"representative", m.representative}, {"class_id", m.class_id}});
    if (!m.trivial && m.representative) ++nontrivial_classes;
    t << simple_list(*b, image(m.a)) << " . " << simple_list(*b, image(m.c))
      << (m.trivial ? "  [trivial]" : "") << "  class " << m.class_id << "\n";
  }
  o.fields["matches"] = list;
  o.fields["nontrivial_classes"] = nontrivial_classes;
  t << matches.size() << " factorization(s), " << nontrivial_classes
    << " nontrivial up to conjugacy and swap\n";
  o.text = t.str();
  return o;
}

Outcome cmd_closure(const std::string& b_path, const std::string& a_path,
                    const std::string& c_path) {
  auto b = std::make_shared<const CategoryData>(load_category(b_path));
  const Embedding a = load_embedding(a_path);
  const Embedding c = load_embedding(c_path);
  if (!(*a.target == *b) || !(*c.target == *b)) {
    fail(ErrorCode::kTargetMismatch, "embedding target differs from " + b_path);
  }
  Outcome o;
  const SimpleSet meet = intersect(a, c);
  const SimpleSet support = product_support(a, c);
  o.fields["intersection"] = meet;
  o.fields["support"] = support;
  std::ostringstream t;
  t << "A cap C = " << simple_list(*b, meet) << "\n";
  t << "AC support = " << simple_list(*b, support) << "\n";
  try {
    const FpdimRatioReport r = fpdim_ratio_check(a, c);
    o.fields["ratio"] = {
        {"mode", r.mode == FpdimRatioReport::Mode::kFullSupport ? "full-support" : "fusion-target"},
        {"fpdim_a", r.fpdim_a}, {"fpdim_c", r.fpdim_c}, {"fpdim_b", r.fpdim_b},
        {"fpdim_d", r.fpdim_d}, {"fpdim_ac", r.fpdim_ac}, {"lhs", r.lhs}, {"rhs", r.rhs},
        {"equal", r.equal}, {"inequality_holds", r.inequality_holds}};
    t << "FPdim(A) FPdim(C) = " << fmt_double(r.lhs) << ", FPdim(AC) FPdim(D) = "
      << fmt_double(r.rhs) << (r.equal ? " (equal)" : " (differ)") << "\n";
    t << "FPdim(B) >= FPdim(A) FPdim(C) / FPdim(D): " << (r.inequality_holds ? "holds" : "fails") << "\n";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnsupported) throw;
    o.status = "PARTIAL";
    o.findings.push_back(finding("ratio-unsupported", {}, e.what()));
    t << "FPdim ratio: unsupported (" << e.what() << ")\n";
  }
  o.text = t.str();
  return o;
}

Outcome cmd_subgroups(const std::string& path, std::uint64_t seed) {
  const FiniteGroup g = load_group(path, seed);
  const auto subs = subgroups(g);
  const auto ids = conjugacy_class_ids(g, subs);
  Outcome o;
  o.fields["order"] = g.order();
  Json list = Json::array();
  std::ostringstream t;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    list.push_back({{"order", subs[i].order()}, {"elements", labels_json(g, subs[i].elements)},
                    {"class_id", ids[i]}});
    t << "order " << subs[i].order() << "  class " << ids[i] << "  "
      << element_list(g, subs[i].elements) << "\n";
  }
  o.fields["subgroups"] = list;
  t << subs.size() << " subgroup(s)\n";
  o.text = t.str();
  return o;
}

Outcome cmd_exfac(const std::string& path, std::uint64_t seed) {
  const FiniteGroup g = load_group(path, seed);
  const auto pairs = enumerate_exact_factorizations(g);
  Outcome o;
  Json list = Json::array();
  std::size_t nontrivial_classes = 0;
  std::ostringstream t;
  for (const GroupFactorization& p : pairs) {
    list.push_back({{"first", labels_json(g, p.first.elements)},
                    {"second", labels_json(g, p.second.elements)},
                    {"trivial", p.trivial}, {"representative", p.representative},
                    {"class_id", p.class_id}});
    if (!p.trivial && p.representative) ++nontrivial_classes;
    t << element_list(g, p.first.elements) << " . " << element_list(g, p.second.elements)
      << (p.trivial ? "  [trivial]" : "") << "  class " << p.class_id << "\n";
  }
  o.fields["order"] = g.order();
  o.fields["pairs"] = list;
  o.fields["nontrivial_classes"] = nontrivial_classes;
  t << pairs.size() << " ordered pair(s), " << nontrivial_classes
    << " nontrivial up to conjugacy and swap\n";
  o.text = t.str();
  return o;
}

CohomologyOptions coh_options(std::size_t limit, std::ostream& err, const FiniteGroup& g) {
  CohomologyOptions opt;
  opt.order_limit = limit;
  if (g.order() > kGuaranteedCohomologyOrder && g.order() <= limit) {
    err << "computing H^4 for a group of order " << g.order() << " (best effort)\n";
    opt.smith.progress = [&err](const std::string& msg) { err << "  " << msg << "\n" << std::flush; };
  }
  return opt;
}

Outcome cmd_h3(const std::string& path, std::size_t limit, bool generators,
               std::uint64_t seed, std::ostream& err) {
  const FiniteGroup g = load_group(path, seed);
  const CohomologyGroup h = h4_integral(g, coh_options(limit, err, g));
  Outcome o;
  o.fields["group_order"] = g.order();
  o.fields["invariant_factors"] = integers_to_json(h.invariant_factors);
  o.fields["order"] = integer_to_json(h.order());
  o.fields["rank_d3"] = h.rank_d3;
  o.fields["rank_d4"] = h.rank_d4 ? Json(*h.rank_d4) : Json(nullptr);
  std::ostringstream t;
  t << "H^3(G, Q/Z) = H^4(G, Z) with invariant factors " << integers_text(h.invariant_factors)
    << ", order " << h.order() << "\n";
  if (generators) {
    Json gens = Json::array();
    for (std::size_t i = 0; i < h.generators.size(); ++i) {
      const QZCochain w = omega_from_z(h, h.generators[i]);
      gens.push_back({{"order", integer_to_json(h.invariant_factors[i])},
                      {"omega", qz_cochain_to_json(g, w)}});
      t << "generator " << i << " (order " << h.invariant_factors[i] << "):";
      const CellIndex cells(g, 3);
      std::size_t shown = 0;
      for (std::size_t c = 0; c < w.values.size() && shown < 8; ++c) {
        if (w.values[c] == 0) continue;
        t << " w" << element_list(g, cells.decode(c)) << "=" << to_string(w.values[c]);
        ++shown;
      }
      t << (shown == 8 ? " ..." : "") << "\n";
    }
    o.fields["generators"] = gens;
  }
  o.text = t.str();
  return o;
}

Outcome cmd_classify(const std::string& path, const std::string& g1s, const std::string& g2s,
                     std::size_t limit, std::uint64_t seed, std::ostream& err) {
  const FiniteGroup g = load_group(path, seed);
  const Subgroup g1 = make_subgroup(g, parse_elements(g, g1s));
  const Subgroup g2 = make_subgroup(g, parse_elements(g, g2s));
  const PointedClassification pc = classify_pointed(g, g1, g2, coh_options(limit, err, g));
  Outcome o;
  std::ostringstream t;
  if (pc.factor_is_ambient) {
    o.fields["ambient_invariant_factors"] = nullptr;
    o.fields["first_invariant_factors"] = nullptr;
    o.fields["second_invariant_factors"] = nullptr;
    t << "one factor is G, restriction to it is the identity\n";
  } else {
    o.fields["ambient_invariant_factors"] = integers_to_json(pc.ambient.invariant_factors);
    o.fields["first_invariant_factors"] = integers_to_json(pc.first.invariant_factors);
    o.fields["second_invariant_factors"] = integers_to_json(pc.second.invariant_factors);
    t << "H^3(G) = " << integers_text(pc.ambient.invariant_factors) << ", H^3(G1) = "
      << integers_text(pc.first.invariant_factors) << ", H^3(G2) = "
      << integers_text(pc.second.invariant_factors) << "\n";
  }
  o.fields["kernel_invariant_factors"] = integers_to_json(pc.invariant_factors);
  o.fields["kernel_order"] = integer_to_json(pc.order());
  Json gens = Json::array();
  t << "classes trivial on G1 and G2: " << integers_text(pc.invariant_factors)
    << ", order " << pc.order() << "\n";
  for (std::size_t i = 0; i < pc.generators.size(); ++i) {
    const QZCochain w = omega_from_z(pc.ambient, pc.generator_cocycles[i]);
    gens.push_back({{"order", integer_to_json(pc.invariant_factors[i])},
                    {"coordinates", integers_to_json(pc.generators[i])},
                    {"omega", qz_cochain_to_json(g, w)}});
    t << "generator " << i << ": coordinates " << integers_text(pc.generators[i]) << "\n";
  }
  o.fields["generators"] = gens;
  o.text = t.str();
  return o;
}

Outcome emit_category(const CategoryData& d, const std::string& out_path) {
  Outcome o;
  const Json j = category_to_json(d);
  if (out_path.empty()) {
    o.fields["data"] = j;
    o.text = j.dump(2) + "\n";
  } else {
    write_json_file(out_path, j);
    o.fields["written"] = out_path;
    o.text = "wrote " + out_path + " (" + std::to_string(d.rank()) + " simples)\n";
  }
  return o;
}

Outcome emit_group(const FiniteGroup& g, const std::string& out_path) {
  Outcome o;
  const Json j = group_to_json(g);
  if (out_path.empty()) {
    o.fields["data"] = j;
    o.text = j.dump() + "\n";
  } else {
    write_json_file(out_path, j);
    o.fields["written"] = out_path;
    o.text = "wrote " + out_path + " (order " + std::to_string(g.order()) + ")\n";
  }
  return o;
}

Outcome emit_deligne(const std::string& a_path, const std::string& c_path,
                     const std::string& out_path) {
  const DeligneProduct p = deligne_product(load_category(a_path), load_category(c_path));
  Outcome o = emit_category(*p.data, out_path);
  if (!out_path.empty()) {
    // Canonical embeddings next to the output; paths relative to it.
    const fs::path out(out_path);
    const fs::path dir = out.parent_path();
    std::string stem = out.filename().string();
    if (stem.size() > 9 && stem.ends_with(".cat.json")) stem.resize(stem.size() - 9);
    auto rel = [&](const std::string& p) {
      return fs::relative(fs::absolute(p), fs::absolute(dir.empty() ? "." : dir)).generic_string();
    };
    const fs::path left = dir / (stem + ".left.emb.json");
    const fs::path right = dir / (stem + ".right.emb.json");
    write_json_file(left, embedding_to_json(rel(a_path), out.filename().string(), p.left.map));
    write_json_file(right, embedding_to_json(rel(c_path), out.filename().string(), p.right.map));
    o.fields["embeddings"] = {left.generic_string(), right.generic_string()};
    o.text += "wrote " + left.generic_string() + " and " + right.generic_string() + "\n";
  } else {
    o.fields["left_map"] = p.left.map;
    o.fields["right_map"] = p.right.map;
  }
  return o;
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kResourceLimit:
    case ErrorCode::kSizeLimit:
    case ErrorCode::kOrderLimit:
      return kExitResource;
    default:
      return kExitInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grothendieck-level computations with finite tensor categories", "tenfact"};
  app.require_subcommand(1);
  Globals gl;
  app.add_flag("--json", gl.json, "Machine-readable output");
  app.add_flag("--timing", gl.timing, "Report elapsed time");
  app.add_option("--seed", gl.seed, "Seed for randomized checks");
  app.add_option("--threads", gl.threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  std::function<Outcome()> action;
  std::string command;
  auto sub = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    s->fallthrough();
    return s;
  };

  std::string cat_path;
  auto* check = sub(&app, "check", "Validate category data");
  check->add_option("category", cat_path, "Category .cat.json")->required();
  check->callback([&] { command = "check"; action = [&] { return cmd_check(cat_path); }; });

  double tol = kDefaultFpTolerance;
  auto* fpd = sub(&app, "fpdim", "Frobenius-Perron dimensions");
  fpd->add_option("category", cat_path)->required();
  fpd->add_option("--tol", tol, "Power iteration tolerance")->check(CLI::PositiveNumber);
  fpd->callback([&] { command = "fpdim"; action = [&] { return cmd_fpdim(cat_path, tol); }; });

  std::string a_path;
  std::string c_path;
  bool auto_mode = false;
  auto* fac = sub(&app, "factorize", "Exact factorization test or search");
  fac->add_option("category", cat_path)->required();
  fac->add_option("--a", a_path, "Embedding of A (.emb.json)");
  fac->add_option("--c", c_path, "Embedding of C (.emb.json)");
  fac->add_flag("--auto", auto_mode, "Search all subcategory pairs (fusion B)");
  fac->callback([&] {
    command = "factorize";
    action = [&] {
      if (auto_mode) return cmd_factorize_auto(cat_path, gl.threads);
      if (a_path.empty() || c_path.empty()) {
        fail(ErrorCode::kMalformedInput, "factorize needs --a and --c, or --auto");
      }
      return cmd_factorize_pair(cat_path, a_path, c_path);
    };
  });

  auto* clo = sub(&app, "closure", "Intersection, AC support and FPdim ratio");
  clo->add_option("category", cat_path)->required();
  clo->add_option("--a", a_path)->required();
  clo->add_option("--c", c_path)->required();
  clo->callback([&] { command = "closure"; action = [&] { return cmd_closure(cat_path, a_path, c_path); }; });

  std::string grp_path;
  auto* grp = sub(&app, "group", "Finite group commands");
  grp->require_subcommand(1);
  auto* gsub = sub(grp, "subgroups", "List subgroups");
  gsub->add_option("group", grp_path)->required();
  gsub->callback([&] { command = "group subgroups"; action = [&] { return cmd_subgroups(grp_path, gl.seed); }; });
  auto* gex = sub(grp, "exfac", "Exact factorizations G = G1 G2");
  gex->add_option("group", grp_path)->required();
  gex->callback([&] { command = "group exfac"; action = [&] { return cmd_exfac(grp_path, gl.seed); }; });

  std::size_t limit = kGuaranteedCohomologyOrder;
  bool show_generators = false;
  auto* coh = sub(&app, "coh", "Group cohomology");
  coh->require_subcommand(1);
  auto* h3 = sub(coh, "h3", "H^3(G, Q/Z) as H^4(G, Z)");
  h3->add_option("group", grp_path)->required();
  h3->add_option("--limit", limit, "Largest group order attempted");
  h3->add_flag("--generators", show_generators, "Print generator cocycles");
  h3->callback([&] {
    command = "coh h3";
    action = [&] { return cmd_h3(grp_path, limit, show_generators, gl.seed, err); };
  });

  std::string g1s;
  std::string g2s;
  auto* cls = sub(&app, "classify", "Classes trivial on both factors");
  cls->add_option("group", grp_path)->required();
  cls->add_option("--g1", g1s, "Elements of G1 (labels or indices)")->required();
  cls->add_option("--g2", g2s, "Elements of G2 (labels or indices)")->required();
  cls->add_option("--limit", limit, "Largest group order attempted");
  cls->callback([&] {
    command = "classify";
    action = [&] { return cmd_classify(grp_path, g1s, g2s, limit, gl.seed, err); };
  });

  std::string out_path;
  std::size_t n_arg = 0;
  std::string in1;
  std::string in2;
  auto* build = sub(&app, "build", "Construct data files");
  build->require_subcommand(1);
  auto with_out = [&](CLI::App* s) { s->add_option("-o,--output", out_path, "Output file"); };
  auto* bvec = sub(build, "vec", "Vec(G)");
  bvec->add_option("group", in1)->required();
  with_out(bvec);
  bvec->callback([&] {
    command = "build vec";
    action = [&] { return emit_category(vec_of_group(load_group(in1, gl.seed)), out_path); };
  });
  auto* brep = sub(build, "rep-zp", "Rep(Z/p) in characteristic p");
  brep->add_option("p", n_arg)->required();
  with_out(brep);
  brep->callback([&] { command = "build rep-zp"; action = [&] { return emit_category(rep_zp_char_p(n_arg), out_path); }; });
  auto* btaft = sub(build, "taft", "Pointed Z/n data with all-ones Cartan");
  btaft->add_option("n", n_arg)->required();
  with_out(btaft);
  btaft->callback([&] { command = "build taft"; action = [&] { return emit_category(taft_like(n_arg), out_path); }; });
  auto* bfib = sub(build, "fib", "Fibonacci ring");
  with_out(bfib);
  bfib->callback([&] { command = "build fib"; action = [&] { return emit_category(fibonacci(), out_path); }; });
  auto* bdel = sub(build, "deligne", "Deligne product with canonical embeddings");
  bdel->add_option("a", in1)->required();
  bdel->add_option("c", in2)->required();
  with_out(bdel);
  bdel->callback([&] { command = "build deligne"; action = [&] { return emit_deligne(in1, in2, out_path); }; });
  auto* bop = sub(build, "op", "Opposite category data");
  bop->add_option("a", in1)->required();
  with_out(bop);
  bop->callback([&] { command = "build op"; action = [&] { return emit_category(opposite(load_category(in1)), out_path); }; });

  auto* bgrp = sub(build, "group", "Groups");
  bgrp->require_subcommand(1);
  auto group_builder = [&](const std::string& name, const std::string& help,
                           std::function<FiniteGroup(std::size_t)> make) {
    auto* s = sub(bgrp, name, help);
    s->add_option("n", n_arg)->required();
    with_out(s);
    s->callback([&, name, make] {
      command = "build group " + name;
      action = [&, make] { return emit_group(make(n_arg), out_path); };
    });
  };
  group_builder("cyclic", "Z/n", cyclic_group);
  group_builder("dihedral", "Dihedral group of order 2n", dihedral_group);
  group_builder("symmetric", "S_n, n <= 4", symmetric_group);
  auto* bprod = sub(bgrp, "product", "Direct product");
  bprod->add_option("first", in1)->required();
  bprod->add_option("second", in2)->required();
  with_out(bprod);
  bprod->callback([&] {
    command = "build group product";
    action = [&] { return emit_group(direct_product(load_group(in1, gl.seed), load_group(in2, gl.seed)), out_path); };
  });

  std::vector<const char*> argv{"tenfact"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = action();
  } catch (const Error& e) {
    o = Outcome{};
    o.exit = exit_for(e);
    o.status = "FAIL";
    o.fields["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    if (!gl.json) return o.exit;
  } catch (const std::bad_alloc&) {
    o = Outcome{};
    o.exit = kExitResource;
    o.status = "FAIL";
    o.fields["error"] = {{"code", "RESOURCE_LIMIT"}, {"message", "out of memory"}};
    err << "error: RESOURCE_LIMIT: out of memory\n";
    if (!gl.json) return o.exit;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (gl.json) {
    Json report;
    report["command"] = command;
    report["status"] = o.status;
    for (auto& [k, v] : o.fields.items()) report[k] = v;
    report["findings"] = o.findings;
    if (gl.timing) report["timing"] = {{"total_ms", ms}};
    out << report.dump(2) << "\n";
  } else {
    out << o.text;
    if (gl.timing) out << "time: " << fmt_double(ms) << " ms\n";
  }
  return o.exit;
}

}  // namespace tenfact
