#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "prk/classical.hpp"
#include "prk/judgment.hpp"
#include "prk/kripke.hpp"
#include "prk/rewrite.hpp"
#include "prk/semf.hpp"
#include "prk/text.hpp"

using namespace prk;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "plain";
  bool trace = false;
  bool eta = false;
  std::size_t fuel = 100000;
  std::size_t max_worlds = 3;
};

// Collects key=value pairs for machine output and lines for plain output.
class Out {
 public:
  explicit Out(bool machine) : machine_(machine) {}
  void kv(const std::string& k, const std::string& v) { pairs_.emplace_back(k, v); }
  void line(const std::string& s) { lines_.push_back(s); }
  void both(const std::string& k, const std::string& v) {
    kv(k, v);
    line(v);
  }
  void flush() const {
    if (machine_) {
      for (const auto& [k, v] : pairs_) std::cout << k << "=" << v << "\n";
    } else {
      for (const auto& l : lines_) std::cout << l << "\n";
    }
  }

 private:
  bool machine_;
  std::vector<std::pair<std::string, std::string>> pairs_;
  std::vector<std::string> lines_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Judgment load(const std::string& path, bool need_term) {
  Judgment j = parse_judgment(read_file(path));
  if (need_term && !j.term) throw UsageError(path + ": the judgment has no term");
  return j;
}

Derivation derive(const Judgment& j) {
  return j.type ? check_type(j.ctx, *j.term, *j.type) : infer_type(j.ctx, *j.term);
}

int ill_typed(Out& out, const TypeError& e) {
  out.kv("status", "ill-typed");
  out.kv("error", error_name(e.kind()));
  out.kv("message", e.what());
  out.line(std::string("ill-typed: ") + e.what());
  return kNegative;
}

int cmd_check(const std::string& file, Out& out) {
  Judgment j = load(file, true);
  try {
    Derivation d = derive(j);
    out.kv("status", "ok");
    out.both("type", to_string(d.conclusion));
    return kOk;
  } catch (const TypeError& e) {
    return ill_typed(out, e);
  }
}

int cmd_normalize(const std::string& file, const Options& o, Out& out) {
  Judgment j = load(file, true);
  RewriteMode mode = o.eta ? RewriteMode::Eta : RewriteMode::Plain;
  try {
    Normalized n = normalize(*j.term, mode, o.fuel, o.trace);
    out.kv("status", "ok");
    out.kv("steps", std::to_string(n.steps));
    if (o.trace) {
      Term cur = *j.term;
      for (std::size_t i = 0; i < n.trace.size(); ++i) {
        const auto& e = n.trace[i];
        Term next = apply(cur, e);
        std::string idx = std::to_string(i + 1);
        out.kv("trace." + idx, std::string(rule_name(e.rule)) + " " + position_string(e.pos) + " " +
                                   to_string(next));
        out.line(idx + ". " + rule_name(e.rule) + " at " + position_string(e.pos) + ": " +
                 to_string(cur) + "  -->  " + to_string(next));
        cur = next;
      }
    }
    out.both("normal", to_string(n.term));
    return kOk;
  } catch (const FuelExhausted& e) {
    out.kv("status", "fuel-exhausted");
    out.both("message", e.what());
    return kNegative;
  }
}

int cmd_classify(const std::string& file, Out& out) {
  Judgment j = load(file, true);
  std::optional<Derivation> d;
  try {
    d = derive(j);
  } catch (const TypeError&) {
  }
  ShapeReport r = classify(*j.term, d ? &*d : nullptr);
  auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
  out.kv("normal", yn(r.normal));
  out.kv("neutral", yn(r.neutral));
  out.kv("canonical", yn(r.canonical));
  out.kv("shape", r.shape);
  out.line("normal: " + yn(r.normal));
  out.line("neutral: " + yn(r.neutral));
  out.line("canonical: " + yn(r.canonical));
  out.line("shape: " + r.shape);
  if (d) {
    out.kv("type", to_string(d->conclusion));
    out.line("type: " + to_string(d->conclusion));
  } else {
    out.kv("type", "ill-typed");
    out.line("type: ill-typed");
  }
  if (r.clause) {
    out.kv("clause", std::to_string(*r.clause));
    // the clauses speak about normal forms only
    std::string verdict = !r.normal ? "n/a" : r.clause_holds ? "holds" : "fails";
    out.kv("clause_holds", verdict);
    out.line("canonicity clause " + std::to_string(*r.clause) + ": " +
             (r.normal ? verdict : "not applicable (not normal)"));
  }
  return kOk;
}

int cmd_translate(const std::string& file, Out& out) {
  Judgment j = load(file, true);
  try {
    Derivation d = derive(j);
    f::Term t = translate_term(d);
    f::Type ty = f::infer(translate_context(j.ctx), t);
    out.kv("status", "ok");
    out.both("term", f::to_string(t));
    out.kv("type", f::to_string(ty));
    out.kv("prop", f::to_string(translate_prop(d.conclusion)));
    out.line(": " + f::to_string(ty));
    return kOk;
  } catch (const TypeError& e) {
    return ill_typed(out, e);
  }
}

int cmd_dual(const std::string& file, Out& out) {
  Judgment j = load(file, false);
  Judgment dj;
  dj.ctx = dual(j.ctx);
  if (j.term) dj.term = dual(*j.term);
  if (j.type) dj.type = dual(*j.type);
  std::string text = to_string(dj);
  if (dj.term) out.kv("term", to_string(*dj.term));
  if (dj.type) out.kv("type", to_string(*dj.type));
  for (const auto& [x, p] : dj.ctx.entries()) out.kv("hyp." + x, to_string(p));
  text.pop_back();
  out.line(text);
  return kOk;
}

int cmd_decide(const std::string& file, Out& out) {
  Judgment j = load(file, false);
  if (!j.type) throw UsageError(file + ": decide needs a goal ': P'");
  std::vector<MProp> gamma;
  for (const auto& [x, p] : j.ctx.entries()) gamma.push_back(p);
  try {
    bool ok = decide_oplus(gamma, *j.type);
    out.both("result", ok ? "provable" : "unprovable");
    return ok ? kOk : kNegative;
  } catch (const ClassicalError& e) {
    throw UsageError(e.what());
  }
}

int cmd_embed(const std::string& file, Out& out) {
  NKProof p;
  try {
    p = nk_from_json(read_file(file));
  } catch (const ClassicalError& e) {
    if (e.kind() == ClassicalErrorKind::BadFile) throw UsageError(e.what());
    out.kv("status", "invalid");
    out.both("message", std::string("invalid proof: ") + e.what());
    return kNegative;
  }
  Term t = embed_nk(p);
  MProp goal{p.concl, kClassicalPlus};
  Context ctx = nk_context(p);
  Derivation d = check_type(ctx, t, goal);
  out.kv("status", "ok");
  for (const auto& [x, q] : ctx.entries()) {
    out.kv("hyp." + x, to_string(q));
    out.line(x + " : " + to_string(q));
  }
  out.kv("term", to_string(t));
  out.kv("type", to_string(d.conclusion));
  out.line("|- " + to_string(t) + " : " + to_string(d.conclusion));
  return kOk;
}

KripkeModel load_model(const std::string& path) {
  try {
    return model_from_json(read_file(path));
  } catch (const KripkeError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int cmd_eval(const std::string& model, const std::string& world, const std::string& prop,
             Out& out) {
  KripkeModel m = load_model(model);
  MProp p = parse_mprop(prop);
  try {
    out.both("forces", forces(m, world, p) ? "true" : "false");
    return kOk;
  } catch (const KripkeError& e) {
    throw UsageError(e.what());
  }
}

int cmd_validate(const std::string& model, Out& out) {
  KripkeModel m = load_model(model);
  ModelReport r = validate_model(m);
  out.both("valid", r.valid() ? "true" : "false");
  for (std::size_t i = 0; i < r.violations.size(); ++i) {
    out.kv("violation." + std::to_string(i + 1), r.violations[i].message);
    out.line("  " + r.violations[i].message);
  }
  return r.valid() ? kOk : kNegative;
}

int cmd_countermodel(const std::string& file, const Options& o, Out& out) {
  Judgment j = load(file, false);
  if (!j.type) throw UsageError(file + ": countermodel needs a goal ': P'");
  std::vector<MProp> gamma;
  for (const auto& [x, p] : j.ctx.entries()) gamma.push_back(p);
  std::optional<CounterModel> c;
  try {
    c = countermodel_search(gamma, *j.type, o.max_worlds);
  } catch (const KripkeError& e) {
    throw UsageError(e.what());
  }
  if (!c) {
    std::string n = std::to_string(o.max_worlds);
    out.kv("countermodel", "none");
    out.kv("max_worlds", n);
    out.line("no countermodel with at most " + n + " worlds (inconclusive beyond the bound)");
    return kOk;
  }
  out.kv("countermodel", "found");
  out.kv("world", c->world);
  nlohmann::ordered_json compact = nlohmann::ordered_json::parse(model_to_json(c->model));
  out.kv("model", compact.dump());
  out.line("countermodel at world " + c->world + ":");
  out.line(model_to_json(c->model));
  return kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Workbench for the PRK proof-term calculus"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"plain", "machine"}));
  app.add_flag("--trace", o.trace, "Print every rewrite step");
  app.add_flag("--eta", o.eta, "Enable the eta rule");
  app.add_option("--fuel", o.fuel, "Step limit for normalization");
  app.add_option("--max-worlds", o.max_worlds, "Bound for countermodel search")
      ->check(CLI::Range(1, 6));

  std::string file, model, world, prop;
  std::function<int(Out&)> run;
  auto simple = [&](const char* name, const char* help, auto fn) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("file", file)->required();
    sc->callback([&run, fn, &file] { run = [fn, &file](Out& out) { return fn(file, out); }; });
    return sc;
  };
  simple("check", "Type-check a judgment", cmd_check);
  simple("classify", "Report normality and canonicity", cmd_classify);
  simple("translate", "Translate into System F", cmd_translate);
  simple("dual", "Print the dual judgment", cmd_dual);
  simple("decide", "Decide a sequent of classical affirmations", cmd_decide);
  simple("embed", "Compile an NK proof", cmd_embed);
  auto* norm = app.add_subcommand("normalize", "Normalize a term");
  norm->add_option("file", file)->required();
  norm->callback([&] { run = [&](Out& out) { return cmd_normalize(file, o, out); }; });

  auto* kripke = app.add_subcommand("kripke", "Finite Kripke models");
  kripke->require_subcommand(1);
  auto* eval = kripke->add_subcommand("eval", "Does a world force a proposition");
  eval->add_option("model", model)->required();
  eval->add_option("world", world)->required();
  eval->add_option("prop", prop)->required();
  eval->callback([&] { run = [&](Out& out) { return cmd_eval(model, world, prop, out); }; });
  auto* val = kripke->add_subcommand("validate", "Check the model conditions");
  val->add_option("model", model)->required();
  val->callback([&] { run = [&](Out& out) { return cmd_validate(model, out); }; });
  auto* cm = kripke->add_subcommand("countermodel", "Search for a countermodel");
  cm->add_option("file", file)->required();
  cm->callback([&] { run = [&](Out& out) { return cmd_countermodel(file, o, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  Out out(o.format == "machine");
  try {
    int code = run(out);
    out.flush();
    return code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kUsage;
}
