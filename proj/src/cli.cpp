#include "ulmforge/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "text_util.hpp"
#include "ulmforge/corpus.hpp"
#include "ulmforge/error.hpp"
#include "ulmforge/logic.hpp"
#include "ulmforge/reduction.hpp"
#include "ulmforge/tp.hpp"
#include "ulmforge/ulm.hpp"

namespace ulmforge {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// First non-comment line of a group file.
ExplicitPGroup read_group(const std::string& path) {
  const auto text = read_file(path);
  for (auto line : detail::split(text, '\n')) {
    line = detail::trim(line);
    if (!line.empty() && line.front() != '#') return ExplicitPGroup::parse(line);
  }
  throw ParseError("no group in " + path);
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

std::string short_profile(const UlmProfile& u) {
  const auto full = u.to_string();
  const auto start = full.find("u=");
  const auto end = full.find("; len=");
  return full.substr(start, end - start);
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  if (const char* s = std::getenv("ULMFORGE_SEED")) return detail::parse_u64(s, "ULMFORGE_SEED");
  return fallback;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ulm invariants, the theory T_p and the reduction to abelian p-groups", "ulmforge"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text"}));

  std::string file, file_b, output, formula, element, spec_text, dir;
  std::uint32_t m = 0, extra_bound = 0, denom_bound = 3, p = 0, max_m = 0;
  std::uint64_t seed = 0, max_size = 0, samples = 0;
  bool structures = false, inject = false, fixtures = false;

  auto* check = app.add_subcommand("check", "Check the axioms (A1)-(A8) on a structure file");
  check->add_option("file", file)->required();
  check->add_option("--extra-bound", extra_bound, "Instantiate schemas this far past N*+1");

  auto* ulm = app.add_subcommand("ulm", "Print the Ulm invariants of a group file");
  ulm->add_option("file", file)->required();

  auto* iso = app.add_subcommand("iso", "Decide isomorphism of two groups (or structures)");
  iso->add_option("a", file)->required();
  iso->add_option("b", file_b)->required();
  iso->add_flag("--structures", structures, "Inputs are structure files");

  auto* enc = app.add_subcommand("encode", "Write the structure M(G, m) of a finite group");
  enc->add_option("file", file)->required();
  enc->add_option("--m", m, "Number of relation-free points");
  enc->add_option("-o,--output", output);

  auto* dec = app.add_subcommand("decode", "Recover (G, #M) from a model");
  dec->add_option("file", file)->required();
  dec->add_option("-o,--output", output);

  auto* red = app.add_subcommand("reduce", "Write H(G(M), #M) for a model M");
  red->add_option("file", file)->required();
  red->add_option("-o,--output", output);

  auto* ev = app.add_subcommand("eval", "Evaluate a formula such as psi[2] or phi[0,=1] on a group");
  ev->add_option("formula", formula)->required();
  ev->add_option("file", file)->required();
  ev->add_option("--element", element, "Element for psi, e.g. \"cyclic=(2); prufer=()\"");
  ev->add_option("--denom-bound", denom_bound)->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "Verify the lemmas on H(G, m) for a finite group");
  ver->add_option("file", file)->required();
  ver->add_option("--m", m);

  auto* self = app.add_subcommand("selftest", "Run every cross-module check on a generated corpus");
  self->add_option("--spec", spec_text, "Corpus spec line, e.g. \"primes=2; max_size=8\"");
  self->add_option("--p", p, "Use this prime only");
  self->add_option("--seed", seed);
  self->add_option("--max-size", max_size);
  self->add_option("--max-m", max_m);
  self->add_option("--samples", samples);
  self->add_option("--denom-bound", denom_bound)->check(CLI::PositiveNumber);
  self->add_flag("--inject-mutations", inject, "Append the mutation fixtures (they fail)");

  auto* gen = app.add_subcommand("gen", "Print the corpus groups, or write structure files");
  gen->add_option("--spec", spec_text);
  gen->add_option("--p", p);
  gen->add_option("--seed", seed);
  gen->add_option("--max-size", max_size);
  gen->add_option("--samples", samples);
  gen->add_option("--out-dir", dir, "Write encode(G, m) for every corpus group and m");
  gen->add_option("--m", max_m, "Largest m written with --out-dir");
  gen->add_flag("--fixtures", fixtures, "Write the mutation fixtures to --out-dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  auto given = [](CLI::App* sub, const char* name) {
    const auto* o = sub->get_option_no_throw(name);
    return o && o->count() > 0;
  };
  auto build_spec = [&](CLI::App* sub) {
    CorpusSpec s = spec_text.empty() ? CorpusSpec{} : CorpusSpec::parse(spec_text);
    if (given(sub, "--p")) s.primes = {p};
    s.seed = given(sub, "--seed") ? seed : seed_from_env(s.seed);
    if (given(sub, "--max-size")) s.max_size = max_size;
    if (given(sub, "--samples")) s.samples = samples;
    if (given(sub, "--max-m")) s.max_m = max_m;
    if (given(sub, "--denom-bound")) s.denom_bound = denom_bound;
    if (inject) s.inject_mutations = true;
    for (auto q : s.primes)
      if (!is_prime(q)) throw UsageError("--p must be prime");
    return s;
  };

  try {
    if (check->parsed()) {
      const auto s = LpStructure::parse(read_file(file));
      const auto r = check_axioms(s, extra_bound);
      out << r.to_string();
      return r.is_model() ? kExitOk : kExitNegative;
    }
    if (ulm->parsed()) {
      out << short_profile(profile_of(read_group(file))) << "\n";
      return kExitOk;
    }
    if (iso->parsed()) {
      bool same = false;
      if (structures) {
        const auto a = LpStructure::parse(read_file(file));
        const auto b = LpStructure::parse(read_file(file_b));
        if (a.p() != b.p()) throw UsageError("structures for different primes");
        same = structure_iso(a, b).has_value();
      } else {
        const auto a = read_group(file), b = read_group(file_b);
        if (a.p() != b.p()) throw UsageError("groups for different primes");
        same = iso_by_ulm(a, b);
      }
      out << (same ? "isomorphic" : "not isomorphic") << "\n";
      return same ? kExitOk : kExitNegative;
    }
    if (enc->parsed()) {
      write_text(output, encode(read_group(file), m).to_string(), out);
      return kExitOk;
    }
    auto declined = [&](const LpStructure& s) {
      const auto r = check_axioms(s);
      if (r.is_model()) return false;
      err << "not a model; decoding declined\n" << r.to_string();
      return true;
    };
    if (dec->parsed()) {
      const auto s = LpStructure::parse(read_file(file));
      if (declined(s)) return kExitNegative;
      const auto d = decode(s);
      write_text(output, classify(d.table).to_string() + "\n# size=" + std::to_string(d.size_m) + "\n", out);
      return kExitOk;
    }
    if (red->parsed()) {
      const auto s = LpStructure::parse(read_file(file));
      if (declined(s)) return kExitNegative;
      write_text(output, borel_reduce(s).to_string() + "\n", out);
      return kExitOk;
    }
    if (ev->parsed()) {
      const auto f = FormulaId::parse(formula);
      const auto g = read_group(file);
      EvalOptions opt;
      opt.denom_bound = denom_bound;
      std::optional<GroupElement> x;
      if (!element.empty()) x = parse_element(g, element);
      const auto r = evaluate(f, g, opt, x ? &*x : nullptr);
      out << r.to_string();
      return r.verdict ? kExitOk : kExitNegative;
    }
    if (ver->parsed()) {
      const auto lines = verify_hred(read_group(file), m);
      bool ok = true;
      for (const auto& l : lines) {
        out << l.to_string() << "\n";
        ok = ok && l.pass;
      }
      return ok ? kExitOk : kExitNegative;
    }
    if (self->parsed()) {
      const auto s = build_spec(self);
      bool ok = true;
      for (const auto& l : run_selftest(s)) {
        out << l.to_string() << "\n";
        ok = ok && l.pass;
      }
      return ok ? kExitOk : kExitNegative;
    }
    if (gen->parsed()) {
      auto s = build_spec(gen);
      if (gen->count("--m")) s.max_m = max_m;
      const auto groups = corpus_groups(s);
      if (dir.empty()) {
        if (fixtures) throw UsageError("--fixtures needs --out-dir");
        out << "# " << s.to_string() << "\n";
        for (const auto& g : groups) out << g.to_string() << "\n";
        return kExitOk;
      }
      std::filesystem::create_directories(dir);
      std::size_t written = 0;
      if (fixtures) {
        for (const auto& f : mutation_fixtures()) {
          write_text(dir + "/" + f.name + ".lp", f.structure.to_string(), out);
          ++written;
        }
      } else {
        std::size_t i = 0;
        for (const auto& g : groups) {
          ++i;
          if (!g.is_finite()) continue;
          for (std::uint32_t k = 0; k <= s.max_m; ++k) {
            write_text(dir + "/g" + std::to_string(i) + "_m" + std::to_string(k) + ".lp", encode(g, k).to_string(), out);
            ++written;
          }
        }
      }
      out << "wrote " << written << " files to " << dir << "\n";
      return kExitOk;
    }
  } catch (const ParseError& e) {
    err << e.what() << "\n";
    return kExitParse;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ulmforge
