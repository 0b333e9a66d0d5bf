#include "commands.hpp"

#include "tricat/catalog.hpp"
#include "tricat/io.hpp"
#include "tricat/validate.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace tricat::cli {

namespace {

struct Common {
  std::size_t rank_bound = 2;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string out;
  std::string levels = "all";
};

void add_common(CLI::App* cmd, Common& c, bool levels) {
  cmd->add_option("--rank-bound", c.rank_bound, "Largest number of summands checked exhaustively")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "Seed for sampled searches");
  cmd->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", c.out, "Write the output here instead of stdout");
  if (levels) {
    cmd->add_option("--levels", c.levels,
                    "Comma-separated axiom levels (tr0..tr5, exactness, derotation, third-iso), 'all' or 'none'");
  }
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<Level> parse_levels(const std::string& s) {
  if (s == "all") return all_levels();
  if (s == "none" || s.empty()) return {};
  std::vector<Level> out;
  for (const auto& item : split(s)) {
    auto l = parse_level(item);
    if (!l) throw CLI::ValidationError("--levels", "unknown level '" + item + "'");
    out.push_back(*l);
  }
  return out;
}

Subcat resolve(const io::CategoryFile& f, const std::string& spec) {
  const Category& c = *f.category;
  if (spec == "all") return Subcat::all(c);
  if (spec == "none" || spec.empty()) return Subcat();
  if (auto it = f.subcats.find(spec); it != f.subcats.end()) return it->second;
  try {
    return Subcat::from_names(c, split(spec));
  } catch (const std::invalid_argument& e) {
    throw io::FormatError(std::string("subcategory '") + spec + "': " + e.what());
  }
}

void emit(const Common& c, const std::string& content, std::ostream& out) {
  if (c.out.empty()) {
    out << content;
  } else {
    io::write_atomic(c.out, content);
  }
}

std::string render(const Common& c, const Report& r) {
  return c.format == "json" ? render_json(r).dump(2) + "\n" : render_text(r);
}

std::shared_ptr<const Triangulation> triangulate(const io::CategoryFile& f, std::size_t rank_bound, Report& r) {
  try {
    return std::make_shared<const Triangulation>(f.category, f.triangles, rank_bound);
  } catch (const std::invalid_argument& e) {
    CheckResult bad("triangles well-formed");
    bad.fail(e.what());
    r.add(bad);
    return nullptr;
  }
}

// Presentation checks, then the requested axiom levels when the
// presentation is sound.
Report check_file(const io::CategoryFile& f, const Common& c, bool include_presentation) {
  const auto levels = parse_levels(c.levels);
  Report pres = validate_presentation(*f.category);
  Report r(include_presentation ? "validate" : "axioms");
  if (include_presentation || pres.verdict() == Verdict::fail) r.merge(pres);
  if (pres.verdict() == Verdict::fail) {
    if (!levels.empty()) r.checks.back().note("axioms skipped because the presentation is invalid");
    return r;
  }
  if (levels.empty()) return r;
  auto s = triangulate(f, c.rank_bound, r);
  if (!s) return r;
  AxiomOptions opt;
  opt.levels = levels;
  opt.seed = c.seed;
  r.merge(check_axioms(*s, opt));
  return r;
}

std::string witness_line(const Category& c, const MutationWitness& w) {
  return c.name(w.object) + ": " + describe(c, w.triangle) + (w.left_approximation ? " [left approximation]" : "") +
         (w.right_approximation ? " [right approximation]" : "");
}

std::string markdown(const io::CategoryFile& f, const Report& r) {
  const Category& c = *f.category;
  std::ostringstream out;
  out << "# Category report\n\n";
  out << "Field: F_" << c.field().characteristic() << ", " << c.size() << " indecomposables, " << f.triangles.size()
      << " generating triangles.\n\n";
  out << "## Hom dimensions\n\n| |";
  for (std::size_t y = 0; y < c.size(); ++y) out << " " << c.name(static_cast<int>(y)) << " |";
  out << "\n|---|";
  for (std::size_t y = 0; y < c.size(); ++y) out << "---|";
  out << "\n";
  for (std::size_t x = 0; x < c.size(); ++x) {
    out << "| " << c.name(static_cast<int>(x)) << " |";
    for (std::size_t y = 0; y < c.size(); ++y) out << " " << c.hom_dim(static_cast<int>(x), static_cast<int>(y)) << " |";
    out << "\n";
  }
  out << "\n## Shift on objects\n\n";
  for (std::size_t x = 0; x < c.size(); ++x) {
    out << "- T(" << c.name(static_cast<int>(x)) << ") = " << c.describe(c.presentation().shift.on_objects[x]) << "\n";
  }
  out << "\n## Triangles\n\n";
  if (f.triangles.empty()) out << "none\n";
  for (const auto& t : f.triangles) out << "- " << describe(c, t) << "\n";
  if (!f.subcats.empty()) {
    out << "\n## Subcategories\n\n";
    for (const auto& [k, v] : f.subcats) {
      out << "- " << k << ": ";
      const auto names = v.names(c);
      for (std::size_t i = 0; i < names.size(); ++i) out << (i ? ", " : "") << names[i];
      out << "\n";
    }
  }
  out << "\n## Verdicts\n\n| check | verdict | cases |\n|---|---|---|\n";
  for (const auto& ch : r.checks) out << "| " << ch.name << " | " << to_string(ch.verdict) << " | " << ch.cases << " |\n";
  out << "\nOverall: " << to_string(r.verdict()) << "\n";
  for (const auto& ch : r.checks)
    for (const auto& v : ch.violations) out << "\n- " << ch.name << ": " << v.message;
  return out.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checks right triangulated structures on finite presentations and builds quotients Z/D"};
  app.require_subcommand(1);
  Common common;
  std::string file, z_spec, d_spec, kind, report_path;
  int n = 4;
  std::uint32_t p = 2;
  bool check_quotient_axioms = false;

  auto* validate = app.add_subcommand("validate", "Validate a category file and its triangulation");
  validate->add_option("file", file, "Category file")->required();
  add_common(validate, common, true);

  auto* axioms = app.add_subcommand("axioms", "Run the axiom suite on a category file");
  axioms->add_option("file", file, "Category file")->required();
  add_common(axioms, common, true);

  auto* mutation = app.add_subcommand("mutation-check", "Check that (Z, Z) is a D-mutation pair");
  mutation->add_option("file", file, "Category file")->required();
  mutation->add_option("--z", z_spec, "Z: 'all', 'none', a subcategory of the file or comma-separated names");
  mutation->add_option("--d", d_spec, "D, in the same forms as --z");
  add_common(mutation, common, false);

  auto* quotient = app.add_subcommand("quotient", "Build Z/D and its induced triangulation");
  quotient->add_option("file", file, "Category file")->required();
  quotient->add_option("--z", z_spec, "Z: 'all', 'none', a subcategory of the file or comma-separated names");
  quotient->add_option("--d", d_spec, "D, in the same forms as --z");
  quotient->add_option("--report", report_path, "Write the report here instead of stdout");
  quotient->add_flag("--check-axioms", check_quotient_axioms, "Also run the axiom suite on the quotient");
  add_common(quotient, common, true);
  quotient->get_option("--out")->required()->description("Quotient category file");

  auto* catalog_cmd = app.add_subcommand("catalog", "Write a fixture category file");
  catalog_cmd->add_option("kind", kind, "nakayama, a2 or field")
      ->required()
      ->check(CLI::IsMember({"nakayama", "a2", "field"}));
  catalog_cmd->add_option("--n", n, "Nilpotency degree for nakayama")->check(CLI::Range(2, 6));
  catalog_cmd->add_option("--p", p, "Field characteristic")->check(CLI::IsMember({2U, 3U, 5U}));
  add_common(catalog_cmd, common, false);

  auto* report = app.add_subcommand("report", "Markdown summary of a category file");
  report->add_option("file", file, "Category file")->required();
  add_common(report, common, true);

  std::vector<std::string> argv_store{"tricat"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (*catalog_cmd) {
      catalog::Fixture fx = kind == "nakayama" ? catalog::nakayama_stable(n, p, common.rank_bound)
                            : kind == "a2"     ? catalog::a2_costable(p, common.rank_bound)
                                               : catalog::field_category(p, common.rank_bound);
      emit(common, io::to_json(*fx.category, fx.triangulation->generators()).dump(2) + "\n", out);
      return 0;
    }

    const io::CategoryFile f = io::load(file);
    const Category& c = *f.category;

    if (*validate || *axioms) {
      const Report r = check_file(f, common, validate->parsed());
      emit(common, render(common, r), out);
      return exit_code(r.verdict());
    }

    if (*report) {
      const Report r = check_file(f, common, true);
      emit(common, common.format == "json" ? render_json(r).dump(2) + "\n" : markdown(f, r), out);
      return exit_code(r.verdict());
    }

    const Subcat z = resolve(f, z_spec.empty() ? (f.subcats.count("Z") ? "Z" : "all") : z_spec);
    const Subcat d = resolve(f, d_spec.empty() ? (f.subcats.count("D") ? "D" : "none") : d_spec);
    Report r(mutation->parsed() ? "mutation-check" : "quotient");
    auto s = triangulate(f, common.rank_bound, r);
    if (!s) {
      emit(common, render(common, r), out);
      return 2;
    }
    Rng rng(common.seed);

    if (*mutation) {
      CheckResult pair("mutation pair");
      if (!z.includes(d)) {
        pair.fail("D is not contained in Z", {{"Z", z.names(c)}, {"D", d.names(c)}});
      } else {
        auto m = verify_mutation_pair(*s, z, d, rng);
        pair.cases = z.members.size();
        if (!m.holds) pair.fail(m.reason);
        for (const auto& w : m.left) pair.note("ending in " + witness_line(c, w));
        for (const auto& w : m.right) pair.note("starting at " + witness_line(c, w));
        for (const auto& note : m.notes) pair.note(note);
      }
      r.add(pair);
      emit(common, render(common, r), out);
      return exit_code(r.verdict());
    }

    // quotient
    Common report_to = common;
    report_to.out = report_path;
    auto finish = [&](const std::string& verdict_line) {
      CheckResult v("verdict");
      v.note(verdict_line);
      r.add(v);
      emit(report_to, render(report_to, r), out);
      return exit_code(r.verdict());
    };
    Report pre = quotient_preconditions(*s, z, d, rng);
    for (const auto& ch : pre.checks) {
      r.add(ch);
      if (ch.verdict == Verdict::fail) {
        r.checks.back().verdict = Verdict::fail;
        const std::string why = ch.violations.empty() ? "" : ": " + ch.violations.front().message;
        return finish("hypothesis failed: " + ch.name + why);
      }
    }
    QuotientPtr q;
    CheckResult sig("sigma triangles");
    try {
      q = std::make_shared<const Quotient>(s, z, d, SigmaChoice::canonical, common.seed);
      sig.cases = z.members.size();
      for (const auto& e : q->sigma_table())
        if (e.object >= 0) sig.note(c.name(e.object) + ": " + describe(c, e.triangle));
      r.add(sig);
    } catch (const QuotientError& e) {
      sig.fail(e.what());
      r.add(sig);
      return finish(std::string("hypothesis failed: sigma triangles: ") + e.what());
    }
    const Category& qc = *q->category();
    auto induced = induced_triangulation(q, rng);

    CheckResult pres("quotient presentation");
    const Report qv = validate_presentation(qc);
    pres.cases = qc.size();
    for (const auto& ch : qv.checks)
      for (const auto& v : ch.violations) pres.fail(ch.name + ": " + v.message, v.witness);
    std::string kept;
    for (std::size_t i = 0; i < qc.size(); ++i) kept += (i ? ", " : "") + qc.name(static_cast<int>(i));
    pres.note("indecomposables: " + (kept.empty() ? std::string("none") : kept));
    r.add(pres);

    // The stronger hypotheses: (Z, Z) a mutation pair, T full on Z and
    // sigma an equivalence.
    Report eq = equivalence_preconditions(*s, z, d, rng);
    // Failing these only weakens the conclusion, so they are notes.
    bool triangulated = true;
    std::string weaker;
    CheckResult stronger("hypotheses for a triangulated quotient");
    for (std::size_t i = pre.checks.size(); i < eq.checks.size(); ++i) {
      const CheckResult& ch = eq.checks[i];
      stronger.cases += ch.cases;
      const std::string why = ch.violations.empty() ? "" : ": " + ch.violations.front().message;
      stronger.note(ch.name + ": " + (ch.verdict == Verdict::pass ? "holds" : to_string(ch.verdict) + why));
      if (ch.verdict != Verdict::pass && triangulated) {
        triangulated = false;
        weaker = ch.name + why;
      }
    }
    r.add(stronger);
    CheckResult equiv("sigma is an equivalence");
    if (triangulated) {
      auto e = check_sigma_equivalence(*q, rng);
      ++equiv.cases;
      std::string perm;
      for (std::size_t i = 0; i < e.sigma_on_objects.size(); ++i) {
        const int t = e.sigma_on_objects[i];
        perm += (i ? ", " : "") + qc.name(static_cast<int>(i)) + " -> " + (t >= 0 ? qc.name(t) : std::string("?"));
      }
      equiv.note("sigma on indecomposables: " + perm);
      equiv.note(std::string("direct test: ") + (e.direct ? "yes" : "no") + ", through omega: " + (e.via_omega ? "yes" : "no"));
      if (e.direct != e.via_omega) {
        equiv.fail("the two equivalence tests disagree: " + e.reason);
      } else if (e.decision != Decision::yes) {
        triangulated = false;
        weaker = "sigma is an equivalence: " + e.reason;
      }
    } else {
      equiv.note("not checked");
    }
    r.add(equiv);

    if (check_quotient_axioms) {
      AxiomOptions opt;
      opt.levels = parse_levels(common.levels);
      opt.seed = common.seed;
      Report ax = check_axioms(*induced, opt);
      for (auto& ch : ax.checks) {
        ch.name = "quotient " + ch.name;
        r.add(std::move(ch));
      }
    }

    nlohmann::json doc = io::to_json(qc, induced->generators());
    doc["quotient"] = io::quotient_sidecar(*q);
    io::write_atomic(common.out, doc.dump(2) + "\n");

    return finish(triangulated ? "triangulated (sigma is an equivalence)"
                               : "right-triangulated (sigma need not be an equivalence: " + weaker + ")");
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace tricat::cli
