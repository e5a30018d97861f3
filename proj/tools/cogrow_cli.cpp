// cogrow_cli.cpp -- batch front-end: folds subgroup files into coset graphs,
// emits growth/cogrowth tables, checks the proved inequalities, drives the
// essential subgroup constructor and the right-ideal machinery.
//
// Exit codes: 0 success, 1 a proved inequality failed (bug signal), 2 usage
// or input error, 3 horizon or resource budget exhausted.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "acceptance_checks.hpp"
#include "cogrow/construction.hpp"
#include "cogrow/coset_graph.hpp"
#include "cogrow/ideal.hpp"
#include "cogrow/intersection.hpp"

namespace {

using namespace cogrow;

struct GlobalOptions {
  std::string format = "csv";
  std::size_t max_vertices = 1'000'000;
  std::size_t max_rows = 100'000;
};

void emit_table(const GrowthTable& t, const GlobalOptions& opts) {
  if (opts.format == "json")
    emit_json(t, std::cout);
  else
    emit_csv(t, std::cout);
}

std::vector<Word> read_subgroup(const std::string& path, bool allow_unreduced) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open subgroup file: " + path);
  return parse_subgroup_file(Alphabet(2), in, allow_unreduced);
}

PermutationRep read_perm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open permutation file: " + path);
  return parse_permutations(in);
}

// Folded graph from --gens or quotient graph from --perm.
CosetGraph make_graph(const std::string& gens_path,
                      const std::string& perm_path, bool allow_unreduced,
                      const GlobalOptions& opts) {
  if (gens_path.empty() == perm_path.empty())
    throw std::invalid_argument("need exactly one of --gens and --perm");
  CosetGraph g = gens_path.empty()
                     ? CosetGraph::from_permutations(read_perm(perm_path))
                     : CosetGraph::fold(Alphabet(2),
                                        read_subgroup(gens_path,
                                                      allow_unreduced));
  g.set_max_vertices(opts.max_vertices);
  return g;
}

AlgebraMode make_mode(const std::string& name) {
  if (name == "group") return group_algebra(2);
  if (name == "assoc") return free_assoc(2);
  throw std::invalid_argument("--mode must be group or assoc");
}

std::vector<Polynomial> read_ideal(const AlgebraMode& mode,
                                   const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open ideal file: " + path);
  return parse_ideal_file(mode, in);
}

void emit_certificates_json(const std::vector<EssentialityCertificate>& certs,
                            std::ostream& os) {
  os << "{\"certificates\": [";
  for (std::size_t i = 0; i < certs.size(); ++i) {
    os << (i ? ", " : "") << "{\"g\": \"" << to_string(certs[i].element)
       << "\", \"k\": " << certs[i].k << "}";
  }
  os << "]}\n";
}

void emit_construction_growth(const EssentialConstruction& c,
                              std::ostream& os) {
  unsigned n = c.interior_depth() / 2;
  GrowthTable alpha = c.alpha_table(n);
  GrowthTable tree = c.tree_table(n);
  CosetGraph g = c.export_graph();
  GrowthTable cog = g.cogrowth_table(n);
  os << "n,alpha,tree,cogrowth\n";
  for (unsigned i = 0; i <= n; ++i)
    os << i << ',' << alpha.at(i) << ',' << tree.at(i) << ',' << cog.at(i)
       << '\n';
}

int run_construct(const std::string& family, std::size_t elements,
                  unsigned depth, const std::string& out_prefix,
                  const GlobalOptions& opts) {
  CGFunction alpha = parse_family(family);
  if (alpha.bounded()) {
    // Eventually-constant targets are realized by a finite-index subgroup;
    // every element has a power inside it, so no certificates are needed.
    CosetGraph g = EssentialConstruction::finite_index_fallback(alpha);
    GrowthTable table = g.cogrowth_table(depth);
    GrowthTable target = partial_sums(alpha, depth);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_prefix.empty()) {
      file.open(out_prefix + ".growth.csv");
      os = &file;
    }
    *os << "n,alpha,cogrowth\n";
    for (unsigned i = 0; i <= depth; ++i)
      *os << i << ',' << target.at(i) << ',' << table.at(i) << '\n';
    if (out_prefix.empty()) {
      std::cout << "# graph\n";
      g.dump_edges(std::cout);
    } else {
      std::ofstream graph(out_prefix + ".graph.txt");
      g.dump_edges(graph);
    }
    return 0;
  }
  EssentialConstruction c{parse_family(family)};
  c.set_max_vertices(opts.max_vertices);
  ConstructionReport rep = c.run_until(elements, depth);
  if (out_prefix.empty()) {
    std::cout << "# certificates\n";
    emit_certificates_json(c.certificates(), std::cout);
    std::cout << "# growth\n";
    emit_construction_growth(c, std::cout);
    std::cout << "# graph\n";
    c.export_graph().dump_edges(std::cout);
  } else {
    auto write_atomic = [](const std::string& path,
                           const std::function<void(std::ostream&)>& emit) {
      std::string tmp = path + ".tmp";
      {
        std::ofstream out(tmp);
        emit(out);
      }
      if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot write " + path);
    };
    write_atomic(out_prefix + ".certs.json", [&](std::ostream& os) {
      emit_certificates_json(c.certificates(), os);
    });
    write_atomic(out_prefix + ".growth.csv", [&](std::ostream& os) {
      emit_construction_growth(c, os);
    });
    write_atomic(out_prefix + ".graph.txt", [&](std::ostream& os) {
      c.export_graph().dump_edges(os);
    });
  }
  if (rep.budget_exhausted) {
    std::cerr << "budget exhausted: " << rep.vertices << " vertices, "
              << rep.certificates << " certificates, frontier "
              << rep.frontier << "\n";
    return 3;
  }
  return 0;
}

int run_certify(const std::string& family, std::size_t elements,
                unsigned depth, const GlobalOptions& opts) {
  EssentialConstruction c{parse_family(family)};
  c.set_max_vertices(opts.max_vertices);
  ConstructionReport rep = c.run_until(elements, depth);
  if (rep.budget_exhausted) {
    std::cerr << "budget exhausted before certification finished\n";
    return 3;
  }
  CosetGraph g = c.export_graph();
  bool all_ok = true;
  for (const auto& cert : c.certificates()) {
    Word gk = power(cert.element, (std::size_t)cert.k);
    bool ok = gk.empty() || g.contains(gk);
    all_ok = all_ok && ok;
    std::cout << to_string(cert.element) << " k=" << cert.k << " "
              << (cert.kind == EssentialityCertificate::Kind::tie
                      ? "tie"
                      : "travel")
              << " replay=" << (ok ? "ok" : "FAILED") << "\n";
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "growth and cogrowth of free-group subgroups and of right ideals in "
      "free (group) algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  GlobalOptions opts;
  app.add_option("--format", opts.format, "table output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--max-vertices", opts.max_vertices, "graph vertex budget")
      ->capture_default_str();
  app.add_option("--max-rows", opts.max_rows, "echelon row budget")
      ->capture_default_str();

  std::function<int()> action;

  // ---- fold ----------------------------------------------------------------
  {
    auto* sub = app.add_subcommand("fold",
                                   "fold subgroup generators into the core "
                                   "graph and dump its edges");
    auto gens = std::make_shared<std::string>();
    auto allow = std::make_shared<bool>(false);
    sub->add_option("--gens", *gens, "subgroup generator file")->required();
    sub->add_flag("--reduce", *allow, "freely reduce unreduced input words");
    sub->callback([&action, gens, allow, &opts] {
      action = [gens, allow, &opts] {
        CosetGraph g = make_graph(*gens, "", *allow, opts);
        g.dump_edges(std::cout);
        return 0;
      };
    });
  }

  // ---- cogrowth --------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "cogrowth", "cogrowth table of the ShortLex-minimal transversal");
    auto gens = std::make_shared<std::string>();
    auto perm = std::make_shared<std::string>();
    auto depth = std::make_shared<unsigned>(6);
    auto words = std::make_shared<bool>(false);
    sub->add_option("--gens", *gens, "subgroup generator file");
    sub->add_option("--perm", *perm, "permutation quotient file");
    sub->add_option("--depth", *depth, "table depth")->required();
    sub->add_flag("--words", *words, "also list the transversal words");
    sub->callback([&action, gens, perm, depth, words, &opts] {
      action = [gens, perm, depth, words, &opts] {
        CosetGraph g = make_graph(*gens, *perm, false, opts);
        Transversal tv = g.minimal_transversal(*depth);
        emit_table(tv.table, opts);
        if (*words)
          for (const Word& w : tv.words) std::cout << to_string(w) << "\n";
        return 0;
      };
    });
  }

  // ---- subgroup-growth -------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "subgroup-growth",
        "growth of the subgroup in the ambient generators");
    auto gens = std::make_shared<std::string>();
    auto perm = std::make_shared<std::string>();
    auto depth = std::make_shared<unsigned>(6);
    sub->add_option("--gens", *gens, "subgroup generator file");
    sub->add_option("--perm", *perm, "permutation quotient file");
    sub->add_option("--depth", *depth, "table depth")->required();
    sub->callback([&action, gens, perm, depth, &opts] {
      action = [gens, perm, depth, &opts] {
        CosetGraph g = make_graph(*gens, *perm, false, opts);
        emit_table(g.subgroup_growth(*depth), opts);
        return 0;
      };
    });
  }

  // ---- basis ---------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "basis", "free basis from the chords of the BFS spanning tree");
    auto gens = std::make_shared<std::string>();
    auto perm = std::make_shared<std::string>();
    auto depth = std::make_shared<unsigned>(6);
    sub->add_option("--gens", *gens, "subgroup generator file");
    sub->add_option("--perm", *perm, "permutation quotient file");
    sub->add_option("--depth", *depth, "chord discovery radius");
    sub->callback([&action, gens, perm, depth, &opts] {
      action = [gens, perm, depth, &opts] {
        CosetGraph g = make_graph(*gens, *perm, false, opts);
        for (const Word& w : g.nielsen_schreier_basis(*depth))
          std::cout << to_string(w) << "\n";
        return 0;
      };
    });
  }

  // ---- intersect -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "intersect", "cogrowth of the intersection via the product graph");
    auto gens1 = std::make_shared<std::string>();
    auto gens2 = std::make_shared<std::string>();
    auto depth = std::make_shared<unsigned>(5);
    sub->add_option("--gens1", *gens1, "first subgroup file")->required();
    sub->add_option("--gens2", *gens2, "second subgroup file")->required();
    sub->add_option("--depth", *depth, "table depth")->required();
    sub->callback([&action, gens1, gens2, depth, &opts] {
      action = [gens1, gens2, depth, &opts] {
        CosetGraph g1 = make_graph(*gens1, "", false, opts);
        CosetGraph g2 = make_graph(*gens2, "", false, opts);
        Prop11Result r = prop11_check(g1, g2, *depth);
        std::cout << "n,Gamma1,Gamma2,Gamma_meet,product,max\n";
        for (unsigned n = 0; n <= *depth; ++n) {
          unsigned __int128 prod =
              (unsigned __int128)r.g1.at(n) * r.g2.at(n);
          std::cout << n << ',' << r.g1.at(n) << ',' << r.g2.at(n) << ','
                    << r.meet.at(n) << ',' << (Count)prod << ','
                    << std::max(r.g1.at(n), r.g2.at(n)) << "\n";
        }
        return r.ok ? 0 : 1;
      };
    });
  }

  // ---- prop11 ---------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "prop11", "verify max(G1,G2) <= G_meet <= G1*G2 level by level");
    auto gens1 = std::make_shared<std::string>();
    auto gens2 = std::make_shared<std::string>();
    auto depth = std::make_shared<unsigned>(5);
    sub->add_option("--gens1", *gens1, "first subgroup file")->required();
    sub->add_option("--gens2", *gens2, "second subgroup file")->required();
    sub->add_option("--depth", *depth, "check depth")->required();
    sub->callback([&action, gens1, gens2, depth, &opts] {
      action = [gens1, gens2, depth, &opts] {
        CosetGraph g1 = make_graph(*gens1, "", false, opts);
        CosetGraph g2 = make_graph(*gens2, "", false, opts);
        Prop11Result r = prop11_check(g1, g2, *depth);
        std::cout << (r.ok ? "prop11 holds to depth " : "prop11 VIOLATED at ")
                  << *depth << "\n";
        return r.ok ? 0 : 1;
      };
    });
  }

  // ---- eq5 -----------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "eq5", "verify the coset decomposition sandwich");
    auto gens = std::make_shared<std::string>();
    auto perm = std::make_shared<std::string>();
    auto depth = std::make_shared<unsigned>(6);
    sub->add_option("--gens", *gens, "subgroup generator file");
    sub->add_option("--perm", *perm, "permutation quotient file");
    sub->add_option("--depth", *depth, "check depth")->required();
    sub->callback([&action, gens, perm, depth, &opts] {
      action = [gens, perm, depth, &opts] {
        CosetGraph g = make_graph(*gens, *perm, false, opts);
        bool ok = g.sandwich_check_eq5(*depth);
        std::cout << (ok ? "eq5 holds to depth " : "eq5 VIOLATED at depth ")
                  << *depth << "\n";
        return ok ? 0 : 1;
      };
    });
  }

  // ---- eq6 -----------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "eq6", "verify the normal-subgroup cogrowth restriction");
    auto perm = std::make_shared<std::string>();
    auto n1 = std::make_shared<unsigned>(1);
    auto n2 = std::make_shared<unsigned>(1);
    sub->add_option("--perm", *perm, "permutation quotient file (normal H)")
        ->required();
    sub->add_option("--n1", *n1, "first length")->required();
    sub->add_option("--n2", *n2, "second length")->required();
    sub->callback([&action, perm, n1, n2, &opts] {
      action = [perm, n1, n2, &opts] {
        CosetGraph g = make_graph("", *perm, false, opts);
        bool ok = g.normality_check_eq6(*n1, *n2);
        std::cout << (ok ? "eq6 holds at (" : "eq6 VIOLATED at (") << *n1
                  << "," << *n2 << ")\n";
        return ok ? 0 : 1;
      };
    });
  }

  // ---- construct -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "construct",
        "build an essential subgroup with prescribed cogrowth; emits "
        "certificates, growth tables and a graph dump");
    auto family = std::make_shared<std::string>();
    auto elements = std::make_shared<std::size_t>(5);
    auto depth = std::make_shared<unsigned>(12);
    auto out = std::make_shared<std::string>();
    sub->add_option("--alpha", *family,
                    "target family: poly:K, exp:B, interm:BETA, finite:R")
        ->required();
    sub->add_option("--elements", *elements, "certificates to produce")
        ->capture_default_str();
    sub->add_option("--depth", *depth, "minimum frontier depth")
        ->capture_default_str();
    sub->add_option("--out", *out, "write PREFIX.{certs.json,growth.csv,graph.txt}");
    sub->callback([&action, family, elements, depth, out, &opts] {
      action = [family, elements, depth, out, &opts] {
        return run_construct(*family, *elements, *depth, *out, opts);
      };
    });
  }

  // ---- certify ---------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "certify",
        "rebuild a construction deterministically and replay every "
        "certificate through the exported graph");
    auto family = std::make_shared<std::string>();
    auto elements = std::make_shared<std::size_t>(5);
    auto depth = std::make_shared<unsigned>(12);
    sub->add_option("--alpha", *family, "target family")->required();
    sub->add_option("--elements", *elements, "certificates to produce")
        ->capture_default_str();
    sub->add_option("--depth", *depth, "minimum frontier depth")
        ->capture_default_str();
    sub->callback([&action, family, elements, depth, &opts] {
      action = [family, elements, depth, &opts] {
        return run_certify(*family, *elements, *depth, opts);
      };
    });
  }

  // ---- ideal-growth ------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "ideal-growth", "growth table of a right ideal at a fixed horizon");
    auto mode_name = std::make_shared<std::string>("group");
    auto path = std::make_shared<std::string>();
    auto n = std::make_shared<unsigned>(4);
    auto m = std::make_shared<unsigned>(0);
    sub->add_option("--mode", *mode_name, "group | assoc")
        ->capture_default_str();
    sub->add_option("--ideal", *path, "ideal generator file")->required();
    sub->add_option("--n", *n, "table depth")->required();
    sub->add_option("--m", *m, "product horizon (default n)");
    sub->callback([&action, mode_name, path, n, m, &opts] {
      action = [mode_name, path, n, m, &opts] {
        AlgebraMode mode = make_mode(*mode_name);
        auto gens = read_ideal(mode, *path);
        unsigned horizon = *m ? *m : *n;
        EchelonBasis basis =
            EchelonBasis::build(mode, gens, horizon, opts.max_rows);
        GrowthTable alg = algebra_growth(mode, *n);
        if (opts.format == "json") {
          std::cout << "{\"horizon\": " << *n << ", \"Gamma_R\": [";
          for (unsigned i = 0; i <= *n; ++i)
            std::cout << (i ? ", " : "") << alg.at(i);
          std::cout << "], \"Gamma_I\": [";
          for (unsigned i = 0; i <= *n; ++i)
            std::cout << (i ? ", " : "") << ideal_growth(basis, i);
          std::cout << "]}\n";
          return 0;
        }
        std::cout << "n,Gamma_R,Gamma_I\n";
        for (unsigned i = 0; i <= *n; ++i)
          std::cout << i << ',' << alg.at(i) << ',' << ideal_growth(basis, i)
                    << "\n";
        return 0;
      };
    });
  }

  // ---- ideal-cogrowth -----------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "ideal-cogrowth",
        "cogrowth of a right ideal with horizon stabilization");
    auto mode_name = std::make_shared<std::string>("group");
    auto path = std::make_shared<std::string>();
    auto n = std::make_shared<unsigned>(4);
    auto m0 = std::make_shared<unsigned>(0);
    sub->add_option("--mode", *mode_name, "group | assoc")
        ->capture_default_str();
    sub->add_option("--ideal", *path, "ideal generator file")->required();
    sub->add_option("--n", *n, "table depth")->required();
    sub->add_option("--m0", *m0, "initial product horizon (default n)");
    sub->callback([&action, mode_name, path, n, m0, &opts] {
      action = [mode_name, path, n, m0, &opts] {
        AlgebraMode mode = make_mode(*mode_name);
        auto gens = read_ideal(mode, *path);
        StabilizeResult st = stabilize(mode, gens, *n, *m0 ? *m0 : *n, 8, opts.max_rows);
        std::cerr << (st.stable ? "stabilized at m=" : "budget ended at m=")
                  << st.m_star << "\n";
        EchelonBasis basis =
            EchelonBasis::build(mode, gens, st.m_star, opts.max_rows);
        GrowthTable alg = algebra_growth(mode, *n);
        if (opts.format == "json") {
          std::cout << "{\"horizon\": " << *n << ", \"Gamma_R\": [";
          for (unsigned i = 0; i <= *n; ++i)
            std::cout << (i ? ", " : "") << alg.at(i);
          std::cout << "], \"Gamma_I\": [";
          for (unsigned i = 0; i <= *n; ++i)
            std::cout << (i ? ", " : "") << ideal_growth(basis, i);
          std::cout << "], \"Gamma_RmodI\": [";
          for (unsigned i = 0; i <= *n; ++i)
            std::cout << (i ? ", " : "") << cogrowth(mode, basis, i);
          std::cout << "]}\n";
        } else {
          std::cout << "n,Gamma_R,Gamma_I,Gamma_RmodI\n";
          for (unsigned i = 0; i <= *n; ++i)
            std::cout << i << ',' << alg.at(i) << ',' << ideal_growth(basis, i)
                      << ',' << cogrowth(mode, basis, i) << "\n";
        }
        return st.stable ? 0 : 3;
      };
    });
  }

  // ---- colon-search -------------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "colon-search",
        "search the right quotient (I : r) for a certified element");
    auto mode_name = std::make_shared<std::string>("group");
    auto path = std::make_shared<std::string>();
    auto r_text = std::make_shared<std::string>();
    auto n0 = std::make_shared<unsigned>(2);
    auto m = std::make_shared<unsigned>(4);
    sub->add_option("--mode", *mode_name, "group | assoc")
        ->capture_default_str();
    sub->add_option("--ideal", *path, "ideal generator file")->required();
    sub->add_option("--r", *r_text, "the element r as a polynomial")
        ->required();
    sub->add_option("--n0", *n0, "support length for s")->required();
    sub->add_option("--m", *m, "basis horizon")->required();
    sub->callback([&action, mode_name, path, r_text, n0, m, &opts] {
      action = [mode_name, path, r_text, n0, m, &opts] {
        AlgebraMode mode = make_mode(*mode_name);
        auto gens = read_ideal(mode, *path);
        EchelonBasis basis =
            EchelonBasis::build(mode, gens, *m, opts.max_rows);
        Polynomial r = parse_polynomial(mode, *r_text);
        auto s = quotient_search(mode, basis, r, *n0);
        if (s)
          std::cout << "s = " << to_string(*s) << "\n";
        else
          std::cout << "not found at horizon " << *n0 << "\n";
        return 0;
      };
    });
  }

  // ---- correspond -----------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "correspond",
        "compare subgroup cogrowth with its augmentation-ideal cogrowth");
    auto gens = std::make_shared<std::string>();
    auto depth = std::make_shared<unsigned>(4);
    auto m0 = std::make_shared<unsigned>(0);
    sub->add_option("--gens", *gens, "subgroup generator file")->required();
    sub->add_option("--depth", *depth, "comparison depth")->required();
    sub->add_option("--m0", *m0, "initial product horizon (default depth)");
    sub->callback([&action, gens, depth, m0, &opts] {
      action = [gens, depth, m0, &opts] {
        auto subgroup = read_subgroup(*gens, false);
        CosetGraph g = make_graph(*gens, "", false, opts);
        GrowthTable coset = g.cogrowth_table(*depth);
        AlgebraMode mode = group_algebra(2);
        auto ideal = augmentation_ideal(subgroup);
        StabilizeResult st = stabilize(mode, ideal, *depth,
                                       *m0 ? *m0 : *depth, 8, opts.max_rows);
        std::cerr << (st.stable ? "stabilized at m=" : "budget ended at m=")
                  << st.m_star << "\n";
        if (!st.stable) return 3;
        EchelonBasis basis =
            EchelonBasis::build(mode, ideal, st.m_star, opts.max_rows);
        bool match = true;
        std::cout << "n,subgroup,ideal\n";
        for (unsigned i = 0; i <= *depth; ++i) {
          Count ic = cogrowth(mode, basis, i);
          std::cout << i << ',' << coset.at(i) << ',' << ic << "\n";
          match = match && ic == coset.at(i);
        }
        std::cout << (match ? "tables coincide\n" : "tables DIFFER\n");
        return match ? 0 : 1;
      };
    });
  }

  // ---- verify-all -----------------------------------------------------------
  {
    auto* sub = app.add_subcommand(
        "verify-all", "run the full acceptance suite against the fixtures");
    auto fixtures = std::make_shared<std::string>();
    sub->add_option("--fixtures", *fixtures, "fixtures directory")->required();
    std::string self = "";
    sub->callback([&action, fixtures, argv] {
      action = [fixtures, argv] {
        auto results = acceptance::run_all(argv[0], *fixtures);
        bool all = true;
        for (const auto& r : results) {
          std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.id << " "
                    << r.name << ": " << r.note << "\n";
          all = all && r.pass;
        }
        return all ? 0 : 1;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    return action();
  } catch (const horizon_error& e) {
    std::cerr << "horizon/budget: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
