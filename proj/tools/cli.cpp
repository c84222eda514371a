// Copyright 2026 The teamltl Authors
// SPDX-License-Identifier: Apache-2.0

#include "teamltl/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "teamltl/formula.hpp"
#include "teamltl/hyper.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/propgen.hpp"
#include "teamltl/reduction.hpp"
#include "teamltl/team_eval.hpp"
#include "teamltl/translate.hpp"

namespace teamltl {

namespace {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path);
  if (!o) throw InputError("cannot write " + path);
  o << text;
}

struct Common {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

struct FormulaArg {
  std::string text, file;
  std::vector<std::string> relations;

  void attach(CLI::App* sc) {
    sc->add_option("formula", text, "formula text");
    sc->add_option("--formula-file", file, "read the formula from a file");
    sc->add_option("--relations", relations, "relation-family files (family name = file stem)");
  }
  FamilyRegistry families() const {
    FamilyRegistry reg;
    for (const auto& path : relations) {
      std::string name = std::filesystem::path(path).stem().string();
      reg[name] = std::make_shared<const BoolRelationFamily>(parse_relation_family(name, read_file(path)));
    }
    return reg;
  }
  std::string source() const {
    if (!file.empty()) return read_file(file);
    if (text.empty()) throw InputError("no formula given");
    return text;
  }
  Formula team() const { return parse_team_formula(source(), families()); }
};

json flags_json(const FragmentInfo& fi) {
  return {{"plain", fi.plain},
          {"kcoherent", fi.kcoherent},
          {"leftflat", fi.leftflat},
          {"borneflat", fi.borneflat},
          {"downward_closed", fi.downward_closed}};
}

std::string verdict_slug(McVerdict::Kind k) {
  switch (k) {
    case McVerdict::Kind::Holds: return "holds";
    case McVerdict::Kind::Refuted: return "refuted";
    case McVerdict::Kind::HoldsOnApprox: return "holds-on-approx";
    case McVerdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}

int verdict_exit(McVerdict::Kind k) {
  switch (k) {
    case McVerdict::Kind::Holds: return kExitOk;
    case McVerdict::Kind::Refuted: return kExitFalse;
    case McVerdict::Kind::HoldsOnApprox: return kExitApprox;
    case McVerdict::Kind::Unknown: return kExitUnknown;
  }
  return kExitUnknown;
}

GenFragment gen_fragment(const std::string& s) {
  for (GenFragment g : {GenFragment::Plain, GenFragment::LeftFlat, GenFragment::BorNEFlat, GenFragment::KCoherent,
                        GenFragment::Downward, GenFragment::IncOr})
    if (s == gen_fragment_name(g)) return g;
  throw InputError("unknown fragment " + s);
}

json trial_json(const TrialInput& in) {
  json j = {{"formula", render(in.formula)}, {"index", in.index}, {"team", json::parse(team_to_json(in.team))}};
  if (in.kripke) j["kripke"] = json::parse(kripke_to_json(*in.kripke));
  if (in.k) j["k"] = in.k;
  return j;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal team logic toolkit", "teamltl"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"text", "json"}));

  // parse
  FormulaArg parse_f;
  CLI::App* parse = app.add_subcommand("parse", "parse, classify and print a formula");
  parse_f.attach(parse);

  // eval
  FormulaArg eval_f;
  std::string team_file;
  long index = -1;
  bool explain = false, hyper = false;
  std::size_t stem_max = 0, loop_max = 0, bounds_cap = 0;
  CLI::App* evalc = app.add_subcommand("eval", "evaluate a formula on a team");
  eval_f.attach(evalc);
  evalc->add_option("--team", team_file, "team file (JSON)")->required();
  evalc->add_option("--index", index, "time index (default: the team file's index)");
  evalc->add_flag("--explain", explain, "print the chosen splits and until positions");
  evalc->add_flag("--hyper", hyper, "the formula is a hyper formula (closed)");
  evalc->add_option("--stem-max", stem_max, "hyper: level/lasso stem bound");
  evalc->add_option("--loop-max", loop_max, "hyper: loop length of unrestricted lassos");
  evalc->add_option("--bounds-cap", bounds_cap, "hyper: largest quantifier domain");

  // translate
  FormulaArg tr_f;
  std::string fragment;
  std::size_t k = 1;
  CLI::App* trans = app.add_subcommand("translate", "translate a team formula to a hyper formula");
  tr_f.attach(trans);
  trans->add_option("--fragment", fragment, "translation")
      ->required()
      ->check(CLI::IsMember({"kcoherent", "leftflat", "full"}));
  trans->add_option("--k", k, "coherence bound for kcoherent")->check(CLI::PositiveNumber);

  // mc
  FormulaArg mc_f;
  std::string kripke_file, mode = "bounded";
  McOptions mo;
  CLI::App* mc = app.add_subcommand("mc", "model-check a Kripke structure");
  mc_f.attach(mc);
  mc->add_option("--kripke", kripke_file, "Kripke file (JSON)")->required();
  mc->add_option("--mode", mode, "procedure")->check(CLI::IsMember({"kcoherent", "leftflat", "bounded"}));
  mc->add_option("--k", mo.k, "k for kcoherent")->check(CLI::PositiveNumber);
  mc->add_option("--stem-max", mo.stemMax, "stem bound (bounded, leftflat witnesses)");
  mc->add_option("--loop-max", mo.loopMax, "loop bound (bounded, leftflat witnesses)")->check(CLI::PositiveNumber);
  mc->add_option("--bounds-cap", mo.max_nodes, "leftflat search node cap");

  // reduce
  std::string machine_file, run_file, kind = "lossy", out_prefix, sat_kripke;
  std::size_t b = 0, max_traces = 64;
  CLI::App* reduce = app.add_subcommand("reduce", "build reduction instances");
  reduce->add_option("--kind", kind, "construction")->check(CLI::IsMember({"lossy", "nonlossy", "sat-embed"}));
  reduce->add_option("--machine", machine_file, "counter machine file (lossy, nonlossy)");
  reduce->add_option("--b", b, "recurring instruction label");
  reduce->add_option("--run", run_file, "run file; also emit its team encoding");
  reduce->add_option("--max-traces", max_traces, "trace budget of the encoding");
  reduce->add_option("--kripke", sat_kripke, "Kripke file (sat-embed)");
  reduce->add_option("--out", out_prefix, "write PREFIX.kripke.json, PREFIX.formula[, PREFIX.team.json]");

  // gen
  std::string what, gfrag = "kcoherent";
  uint64_t seed = 1;
  int depth = 3;
  std::size_t ap = 2, max_tr = 3, gstem = 2, gloop = 2, states = 4;
  bool finite = false;
  CLI::App* gen = app.add_subcommand("gen", "generate random formulas, teams or Kripke structures");
  gen->add_option("what", what, "formula | team | kripke")
      ->required()
      ->check(CLI::IsMember({"formula", "team", "kripke"}));
  gen->add_option("--seed", seed, "seed");
  gen->add_option("--depth", depth, "formula depth");
  gen->add_option("--fragment", gfrag, "formula fragment")
      ->check(CLI::IsMember({"plain", "leftflat", "borneflat", "kcoherent", "downward", "incor"}));
  gen->add_option("--ap", ap, "number of propositions")->check(CLI::Range(1, 26));
  gen->add_option("--max-traces", max_tr, "team size bound");
  gen->add_option("--stem-max", gstem, "stem bound");
  gen->add_option("--loop-max", gloop, "loop bound")->check(CLI::PositiveNumber);
  gen->add_option("--states", states, "state bound")->check(CLI::PositiveNumber);
  gen->add_flag("--finite", finite, "Kripke structure with finitely many traces");

  // check-props
  std::vector<std::string> suites;
  std::size_t trials = 100;
  uint64_t pseed = 1;
  CLI::App* props = app.add_subcommand("check-props", "run property suites");
  props->add_option("--suite", suites, "suite names (default: all)");
  props->add_option("--trials", trials, "trials per suite");
  props->add_option("--seed", pseed, "base seed");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (parse->parsed()) {
      Formula phi = parse_f.team();
      FragmentInfo fi = classify_fragment(phi);
      if (common.json()) {
        out << json{{"formula", render(phi)},
                    {"fragment", fragment_name(fi.primary())},
                    {"size", formula_size(phi)},
                    {"flags", flags_json(fi)}}
                   .dump()
            << "\n";
      } else {
        out << render(phi) << "\nfragment: " << fragment_name(fi.primary()) << "\nsize: " << formula_size(phi)
            << "\n";
      }
      return kExitOk;
    }

    if (evalc->parsed()) {
      Team T = parse_team_json(read_file(team_file));
      std::size_t i = index >= 0 ? static_cast<std::size_t>(index) : T.index;
      bool v;
      std::vector<std::string> trace;
      json extra = json::object();
      if (hyper) {
        HFormula h = parse_hyper(eval_f.source());
        QuantBounds qb;
        if (stem_max) qb.stemMax = stem_max;
        if (loop_max) qb.loopLcm = loop_max;
        if (bounds_cap) qb.cap = bounds_cap;
        v = eval_hyper(T, {}, i, h, qb);
        HyperStats st = last_hyper_stats();
        extra = {{"stem_max", st.stem_max}, {"loop_lcm", st.loop_lcm}, {"level_bound", st.level_bound}};
      } else {
        Formula phi = eval_f.team();
        TeamEvaluator ev(T);
        v = ev.eval(ev.full(), i, phi);
        if (explain) trace = ev.explain(ev.full(), i, phi);
      }
      if (common.json()) {
        json j = {{"verdict", v}, {"index", i}, {"traces", T.traces.size()}};
        if (hyper) j["bounds"] = extra;
        if (explain) j["explain"] = trace;
        out << j.dump() << "\n";
      } else {
        out << (v ? "true" : "false") << "\n";
        if (hyper) out << "bounds: " << extra.dump() << "\n";
        for (const auto& line : trace) out << line << "\n";
      }
      return v ? kExitOk : kExitFalse;
    }

    if (trans->parsed()) {
      Formula phi = tr_f.team();
      HFormula h = fragment == "kcoherent" ? kcoherent_translate(phi, k)
                   : fragment == "leftflat" ? leftflat_translate(phi)
                                            : full_translate(phi);
      if (common.json()) {
        json j = {{"fragment", fragment}, {"hyper", render_hyper(h)}, {"size", h_size(h)}, {"source_size", formula_size(phi)}};
        if (fragment == "kcoherent") j["k"] = k;
        out << j.dump() << "\n";
      } else {
        out << render_hyper(h) << "\n";
      }
      return kExitOk;
    }

    if (mc->parsed()) {
      Kripke K = parse_kripke_json(read_file(kripke_file));
      Formula phi = mc_f.team();
      mo.mode = mode == "kcoherent" ? McMode::KCoherent : mode == "leftflat" ? McMode::LeftFlat : McMode::Bounded;
      McVerdict v = mc_teamltl(K, phi, mo);
      if (common.json()) {
        json cex = json::array();
        for (const auto& t : v.counterexample) cex.push_back(trace_to_string(K.ap, t));
        out << json{{"verdict", verdict_slug(v.kind)}, {"mode", mode}, {"detail", v.detail}, {"counterexample", cex}}
                   .dump()
            << "\n";
      } else {
        out << verdict_slug(v.kind) << "\n" << v.detail << "\n";
        for (std::size_t j = 0; j < v.counterexample.size(); ++j)
          out << "pi" << j + 1 << " = " << trace_to_string(K.ap, v.counterexample[j]) << "\n";
      }
      return verdict_exit(v.kind);
    }

    if (reduce->parsed()) {
      std::string kjson, ftext;
      std::optional<std::string> tjson;
      if (kind == "sat-embed") {
        if (sat_kripke.empty()) throw InputError("sat-embed needs --kripke");
        SatEmbedding e = build_sat_embedding(parse_kripke_json(read_file(sat_kripke)));
        kjson = kripke_to_json(e.extended);
        ftext = render(e.theta);
      } else {
        if (machine_file.empty()) throw InputError(kind + " needs --machine");
        CounterMachine I = parse_machine(read_file(machine_file));
        kjson = kripke_to_json(build_kripke(I));
        ftext = render(kind == "lossy" ? build_formula_lossy(I, b) : build_formula_nonlossy(I, b));
        if (!run_file.empty()) {
          EncodeOptions eo;
          eo.lossy = kind == "lossy";
          eo.max_traces = max_traces;
          tjson = team_to_json(encode_computation(I, parse_run(read_file(run_file)), b, eo));
        }
      }
      if (!out_prefix.empty()) {
        write_file(out_prefix + ".kripke.json", kjson + "\n");
        write_file(out_prefix + ".formula", ftext + "\n");
        if (tjson) write_file(out_prefix + ".team.json", *tjson + "\n");
      }
      if (common.json()) {
        json j = {{"kind", kind}, {"kripke", json::parse(kjson)}, {"formula", ftext}};
        if (tjson) j["team"] = json::parse(*tjson);
        out << j.dump() << "\n";
      } else {
        json kj = json::parse(kjson);
        out << "kripke: " << kj["states"].size() << " states\n" << "formula: " << ftext << "\n";
        if (tjson) out << "team: " << *tjson << "\n";
      }
      return kExitOk;
    }

    if (gen->parsed()) {
      if (what == "formula") {
        GenOptions go;
        go.apCount = ap;
        std::string f = render(gen_formula(seed, depth, gen_fragment(gfrag), go));
        out << (common.json() ? json{{"formula", f}, {"seed", seed}, {"fragment", gfrag}}.dump() : f) << "\n";
      } else if (what == "team") {
        out << team_to_json(gen_team(seed, max_tr, gstem, gloop, ap)) << "\n";
      } else {
        out << kripke_to_json(gen_kripke(seed, states, ap, finite)) << "\n";
      }
      return kExitOk;
    }

    if (props->parsed()) {
      if (suites.empty()) suites = suite_names();
      bool bad = false;
      json reports = json::array();
      for (const auto& name : suites) {
        SuiteReport r = run_suite(name, trials, pseed);
        // The mutation suite checks a deliberately broken evaluator.
        const bool expected_failure = name == "mutation";
        if (r.failed && !expected_failure) bad = true;
        if (common.json()) {
          json j = {{"suite", r.name},       {"trials", r.trials}, {"passed", r.passed},
                    {"failed", r.failed},    {"skipped", r.skipped}, {"seconds", r.seconds},
                    {"detail", r.detail},    {"expected_failure", expected_failure}};
          if (r.counterexample) j["counterexample"] = trial_json(*r.counterexample);
          reports.push_back(j);
        } else {
          out << r.name << " trials=" << r.trials << " passed=" << r.passed << " failed=" << r.failed
              << " skipped=" << r.skipped << " seconds=" << r.seconds;
          if (!r.detail.empty()) out << " " << r.detail;
          if (expected_failure) out << " (expected to fail)";
          out << "\n";
          if (r.counterexample) out << "  counterexample: " << trial_json(*r.counterexample).dump() << "\n";
        }
      }
      if (common.json()) out << reports.dump() << "\n";
      return bad ? kExitFalse : kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace teamltl
