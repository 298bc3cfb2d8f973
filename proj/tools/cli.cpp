#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "realset/arith.hpp"
#include "realset/automaton_io.hpp"
#include "realset/lab.hpp"

namespace realset {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RNA load(const std::string& path) {
  auto l = load_automaton(path);
  return {l.automaton, l.saturated};
}

void emit(const RNA& r, const std::string& path, std::ostream& out) {
  if (path.empty()) out << write_automaton(r.automaton, r.saturated);
  else save_automaton(path, r.automaton, r.saturated);
}

Rational rat(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Domain domain(const std::string& text) {
  auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError("domain must look like lo..hi");
  Domain d;
  std::string lo = text.substr(0, dots), hi = text.substr(dots + 2);
  if (!lo.empty()) d.lo = rat(lo);
  if (!hi.empty()) d.hi = rat(hi);
  return d;
}

const char* flag(bool b) { return b ? "true" : "false"; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sets of reals as automata over base-r encodings", "realset"};
  app.require_subcommand(1);
  std::uint32_t base = 2, depth = 6, granularity = 2;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::string output, file, file2, text, dom, csv_path;
  std::vector<std::string> values;
  std::string a_text = "1", b_text = "0", factor, shift;
  unsigned up = 0, down = 0;
  std::uint32_t base2 = 0;

  auto* compile_cmd = app.add_subcommand("compile", "compile a formula");
  compile_cmd->add_option("--base", base)->required();
  compile_cmd->add_option("formula", text)->required();
  compile_cmd->add_option("-o", output);

  auto* member_cmd = app.add_subcommand("member", "membership of a rational vector or UP words");
  member_cmd->add_option("file", file)->required();
  member_cmd->add_option("values", values)->required();

  auto* classify_cmd = app.add_subcommand("classify", "topological class");
  classify_cmd->add_option("file", file)->required();
  bool witness = false;
  classify_cmd->add_flag("--witness", witness);

  auto* boundary_cmd = app.add_subcommand("boundary", "boundary points");
  boundary_cmd->add_option("file", file)->required();
  boundary_cmd->add_option("-o", output);

  auto* intervals_cmd = app.add_subcommand("intervals", "interval decomposition");
  intervals_cmd->add_option("file", file)->required();
  bool as_formula = false;
  intervals_cmd->add_flag("--formula", as_formula);

  auto* affine_cmd = app.add_subcommand("affine", "a*S + b");
  affine_cmd->add_option("file", file)->required();
  affine_cmd->add_option("--a", a_text);
  affine_cmd->add_option("--b", b_text);
  affine_cmd->add_option("-o", output);

  auto* clip_cmd = app.add_subcommand("clip", "S within a closed domain");
  clip_cmd->add_option("file", file)->required();
  clip_cmd->add_option("--domain", dom)->required();
  clip_cmd->add_option("-o", output);

  auto* basepow_cmd = app.add_subcommand("basepow", "convert between base r and r^l");
  basepow_cmd->add_option("file", file)->required();
  auto* up_opt = basepow_cmd->add_option("--up", up);
  auto* down_opt = basepow_cmd->add_option("--down", down);
  up_opt->excludes(down_opt);
  basepow_cmd->add_option("-o", output);

  auto* stability_cmd = app.add_subcommand("stability", "f-product-stability");
  stability_cmd->add_option("file", file)->required();
  stability_cmd->add_option("--factor", factor)->required();
  stability_cmd->add_option("--domain", dom);

  auto* sum_cmd = app.add_subcommand("sumstability", "t-sum-stability");
  sum_cmd->add_option("file", file)->required();
  sum_cmd->add_option("--shift", shift)->required();
  sum_cmd->add_option("--domain", dom);

  auto* star_cmd = app.add_subcommand("stardelay", "{r^k x : x in S}");
  star_cmd->add_option("file", file)->required();
  star_cmd->add_option("-o", output);

  auto* pipeline_cmd = app.add_subcommand("pipeline", "stability pipeline on one set in two bases");
  pipeline_cmd->add_option("file_r", file)->required();
  pipeline_cmd->add_option("file_s", file2)->required();
  pipeline_cmd->add_option("--seed", seed)->required();

  auto* dual_cmd = app.add_subcommand("dualset", "numbers with two encodings");
  dual_cmd->add_option("--base", base)->required();
  dual_cmd->add_option("-o", output);

  auto* compare_cmd = app.add_subcommand("compare", "rational battery across two automata");
  compare_cmd->add_option("file_a", file)->required();
  compare_cmd->add_option("file_b", file2)->required();
  compare_cmd->add_option("--samples", samples);
  compare_cmd->add_option("--seed", seed)->required();

  auto* osc_cmd = app.add_subcommand("oscillate", "dense oscillation witness");
  osc_cmd->add_option("file", file)->required();
  osc_cmd->add_option("--depth", depth);
  osc_cmd->add_option("--granularity", granularity);

  auto* suite_cmd = app.add_subcommand("suite", "definability experiments for two bases");
  suite_cmd->add_option("--base", base)->required();
  suite_cmd->add_option("--other-base", base2)->required();
  suite_cmd->add_option("--seed", seed)->required();
  suite_cmd->add_option("--csv", csv_path);

  auto* dot_cmd = app.add_subcommand("dot", "DOT export");
  dot_cmd->add_option("file", file)->required();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (*compile_cmd) {
      auto c = compile(text, Base(base));
      emit(c.rna, output, out);
      err << "tracks:";
      for (const auto& v : c.vars) err << ' ' << v;
      err << "\n";
    } else if (*member_cmd) {
      RNA r = load(file);
      if (values.size() != r.arity()) throw UsageError("expected " + std::to_string(r.arity()) + " values");
      bool words = values.front().find_first_of("*") != std::string::npos ||
                   values.front().find("⋆") != std::string::npos;
      bool result;
      if (words) {
        std::vector<UPWord> tracks;
        for (const auto& v : values) {
          try {
            tracks.push_back(UPWord::parse(v, r.base()));
          } catch (const Error& e) {
            throw UsageError(e.what());
          }
        }
        result = member_up(r.automaton, lasso_of(r.automaton.alphabet(), tracks));
      } else {
        std::vector<Rational> xs;
        for (const auto& v : values) xs.push_back(rat(v));
        result = member(r, xs);
      }
      out << flag(result) << "\n";
    } else if (*classify_cmd) {
      auto c = classify(load(file).automaton);
      out << to_string(c.kind) << "\n";
      if (witness && c.witness) {
        out << "inner:";
        for (State q : c.witness->inner) out << ' ' << q;
        out << "\nouter:";
        for (State q : c.witness->outer) out << ' ' << q;
        out << "\ninner_accepting: " << flag(c.witness->inner_accepting) << "\n";
      }
    } else if (*boundary_cmd) {
      emit(boundary(load(file)), output, out);
    } else if (*intervals_cmd) {
      auto res = interval_extract(load(file));
      if (std::holds_alternative<NotIntervalFinite>(res)) {
        out << "NOT_INTERVAL_FINITE\n";
        return 1;
      }
      const auto& d = std::get<IntervalDecomposition>(res);
      out << (as_formula ? d.formula() + "\n" : d.str());
    } else if (*affine_cmd) {
      emit(affine(load(file), rat(a_text), rat(b_text)), output, out);
    } else if (*clip_cmd) {
      emit(clip(load(file), domain(dom)), output, out);
    } else if (*basepow_cmd) {
      if (!up && !down) throw UsageError("basepow needs --up or --down");
      RNA r = load(file);
      emit(up ? base_power_up(r, up) : base_power_down(r, down), output, out);
    } else if (*stability_cmd) {
      out << flag(product_stability(load(file), rat(factor), dom.empty() ? Domain{} : domain(dom))) << "\n";
    } else if (*sum_cmd) {
      out << flag(sum_stability(load(file), rat(shift), dom.empty() ? Domain{} : domain(dom))) << "\n";
    } else if (*star_cmd) {
      emit(star_delay(load(file)), output, out);
    } else if (*pipeline_cmd) {
      auto rep = stability_pipeline(load(file), load(file2), seed);
      out << "y: " << rep.y.str() << "\nfrom_above: " << flag(rep.from_above) << "\ny_k:";
      for (const auto& y : rep.y_k) out << ' ' << y.str();
      out << "\np: " << rep.p << "\nq: " << rep.q << "\np_prime: " << rep.p_prime << "\nq_prime: " << rep.q_prime
          << "\nr_stable: " << flag(rep.r_stable) << "\ns_stable: " << flag(rep.s_stable) << "\n";
    } else if (*dual_cmd) {
      emit(dual_set(Base(base)), output, out);
    } else if (*compare_cmd) {
      auto rep = cross_base_compare(load(file), load(file2), samples, seed);
      out << "bases: " << rep.base_r << ' ' << rep.base_s << "\nsamples: " << rep.samples
          << "\nagreements: " << rep.agreements << "\n";
      if (rep.witness) out << "witness: " << rep.witness->str() << "\n";
      out << "classify_r: " << to_string(rep.verdict_r) << "\nclassify_s: " << to_string(rep.verdict_s) << "\n";
    } else if (*osc_cmd) {
      auto w = oscillation_witness(load(file), depth, granularity);
      if (!w) {
        out << "NONE_FOUND\n";
      } else {
        for (std::size_t i = 0; i < w->x.size(); ++i) {
          out << "x" << i + 1 << ": " << w->x[i].str() << (w->inside[i] ? " in" : " out");
          if (i < w->eps.size()) out << " eps " << w->eps[i].str();
          out << "\n";
        }
      }
    } else if (*suite_cmd) {
      auto rep = run_cobham_suite(Base(base), Base(base2), seed);
      out << rep.text();
      if (!csv_path.empty()) {
        std::ofstream f(csv_path);
        if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + csv_path);
        f << rep.csv();
      }
      return rep.ok() ? 0 : 1;
    } else if (*dot_cmd) {
      out << to_dot(load(file).automaton);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::Parse ? 2 : 1;
  }
  return 0;
}

}  // namespace realset
