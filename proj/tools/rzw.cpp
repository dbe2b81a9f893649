#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "rzw/assembly.hpp"
#include "rzw/classical.hpp"
#include "rzw/k1.hpp"
#include "rzw/modelfile.hpp"
#include "rzw/reduce.hpp"
#include "rzw/rtripos.hpp"
#include "rzw/suite.hpp"

using nlohmann::json;
using namespace rzw;

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kInputError = 2;

struct Global {
  size_t fuel = 10000;
  bool trace = false;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::vector<std::string> constants;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<std::string> const_set(const Global& g) {
  return {g.constants.begin(), g.constants.end()};
}

void emit(const Global& g, const json& j, const std::string& text) {
  if (g.format == "json")
    std::cout << j.dump() << "\n";
  else
    std::cout << text << "\n";
}

int fail_input(const Global& g, const std::string& msg) {
  if (g.format == "json")
    std::cout << json{{"ok", false}, {"error", msg}}.dump() << "\n";
  else
    std::cerr << "error: " << msg << "\n";
  return kInputError;
}

std::string dset_names(const FiniteOpca& a, Dset d) {
  std::string out = "{";
  bool first = true;
  for (size_t i = 0; i < a.size(); ++i)
    if (d >> i & 1) {
      if (!first) out += ' ';
      out += a.name(i);
      first = false;
    }
  return out + "}";
}

int cmd_term_parse(const Global& g, const std::string& text) {
  try {
    Term t = parse_term(text, const_set(g));
    emit(g, json{{"ok", true}, {"term", print_term(t)}}, print_term(t));
    return kOk;
  } catch (const ParseError& e) {
    return fail_input(g, "syntax error at byte " + std::to_string(e.offset) +
                             ": " + e.what());
  }
}

int cmd_term_reduce(const Global& g, const std::string& text) {
  Term t;
  try {
    t = parse_term(text, const_set(g));
  } catch (const ParseError& e) {
    return fail_input(g, "syntax error at byte " + std::to_string(e.offset) +
                             ": " + e.what());
  }
  if (!is_cl_pure(t)) return fail_input(g, "term is not CL-pure");
  ReductionOutcome out = reduce_whnf(t, g.fuel, g.trace);
  json j{{"ok", true},
         {"status", out.status == ReductionOutcome::Status::HeadNormal
                        ? "head-normal"
                        : "fuel-exhausted"},
         {"steps", out.steps},
         {"final", print_term(out.final)}};
  std::ostringstream text_out;
  if (g.trace && out.trace) {
    json steps = json::array();
    for (size_t i = 0; i < out.trace->size(); ++i) {
      steps.push_back(print_term((*out.trace)[i]));
      text_out << i << "  " << print_term((*out.trace)[i]) << "\n";
    }
    j["trace"] = steps;
  }
  text_out << (out.status == ReductionOutcome::Status::HeadNormal
                   ? "head-normal"
                   : "fuel-exhausted")
           << " after " << out.steps << " steps: " << print_term(out.final);
  emit(g, j, text_out.str());
  return kOk;
}

int cmd_term_compile(const Global& g, const std::string& text, bool stack) {
  try {
    Term t = parse_term(text, const_set(g));
    // adjoined constants are not free variables, so closedness still holds
    Term out = compile_lambda(t, stack, /*require_closed=*/true);
    emit(g, json{{"ok", true}, {"term", print_term(out)}}, print_term(out));
    return kOk;
  } catch (const ParseError& e) {
    return fail_input(g, "syntax error at byte " + std::to_string(e.offset) +
                             ": " + e.what());
  } catch (const std::invalid_argument& e) {
    return fail_input(g, e.what());
  }
}

int cmd_opca_validate(const Global& g, const std::string& path) {
  auto text = read_file(path);
  if (!text) return fail_input(g, "cannot read " + path);
  auto rep = parse_opca_file(*text);
  json j{{"ok", rep.ok}, {"violations", rep.violations}};
  if (rep.ok) {
    emit(g, j, "valid (preorder closed, monotone, filter ok)");
    return kOk;
  }
  std::ostringstream s;
  s << "invalid:";
  for (const auto& v : rep.violations) s << "\n  " << v;
  emit(g, j, s.str());
  return kPropertyFailure;
}

int cmd_opca_complete(const Global& g, const std::string& path) {
  auto text = read_file(path);
  if (!text) return fail_input(g, "cannot read " + path);
  auto rep = parse_opca_file(*text);
  if (!rep.ok) return fail_input(g, "opca file invalid");
  const FiniteOpca& a = *rep.opca;
  auto comp = check_completeness(a, a.phi);
  json j{{"ok", comp.complete},
         {"k_realizers", dset_names(a, comp.k_realizers)},
         {"s_realizers", dset_names(a, comp.s_realizers)},
         {"k_in_phi", comp.k_in_phi},
         {"s_in_phi", comp.s_in_phi},
         {"degenerate", comp.degenerate}};
  std::ostringstream s;
  s << (comp.complete ? "complete" : "incomplete") << ": [[k]] = "
    << dset_names(a, comp.k_realizers) << (comp.k_in_phi ? " (in phi)" : " (not in phi)")
    << ", [[s]] = " << dset_names(a, comp.s_realizers)
    << (comp.s_in_phi ? " (in phi)" : " (not in phi)");
  if (comp.degenerate) s << "; degenerate: phi accepts the empty downset";
  emit(g, j, s.str());
  return comp.complete ? kOk : kPropertyFailure;
}

int cmd_k1_apply(const Global& g, K1Code e, K1Code n) {
  try {
    auto r = k1_apply(e, n, g.fuel);
    if (!r) {
      emit(g, json{{"ok", true}, {"defined", false}}, "undefined");
      return kOk;
    }
    emit(g,
         json{{"ok", true},
              {"defined", true},
              {"code", *r},
              {"term", print_term(k1_decode(*r))}},
         std::to_string(*r) + "  " + print_term(k1_decode(*r)));
    return kOk;
  } catch (const K1Overflow& e) {
    return fail_input(g, e.what());
  }
}

std::optional<ModelFile> load_model(const Global& g, const std::string& path,
                                    int& rc) {
  auto text = read_file(path);
  if (!text) {
    rc = fail_input(g, "cannot read " + path);
    return std::nullopt;
  }
  auto dir = path.find_last_of('/') == std::string::npos
                 ? std::string{}
                 : path.substr(0, path.find_last_of('/') + 1);
  auto rep = parse_model_file(*text, [&](const std::string& p) {
    auto direct = read_file(p);
    if (direct) return direct;
    return read_file(dir + p);
  });
  if (!rep.ok) {
    std::ostringstream s;
    for (const auto& e : rep.errors) s << e << "; ";
    rc = fail_input(g, "model file: " + s.str());
    return std::nullopt;
  }
  return rep.file;
}

int cmd_logic_eval(const Global& g, const std::string& model_path,
                   const std::string& formula_text, bool check_valid) {
  int rc = kOk;
  auto mf = load_model(g, model_path, rc);
  if (!mf) return rc;
  FormulaP f;
  try {
    f = parse_formula(formula_text);
  } catch (const ParseError& e) {
    return fail_input(g, "formula error at byte " + std::to_string(e.offset) +
                             ": " + e.what());
  }
  try {
    Dset d = eval_formula(mf->model, f);
    bool valid = mf->model.phi.contains(d);
    if (check_valid) {
      emit(g, json{{"ok", true}, {"valid", valid}},
           valid ? "true" : "false");
      return valid ? kOk : kPropertyFailure;
    }
    emit(g,
         json{{"ok", true},
              {"realizers", dset_names(mf->model.opca, d)},
              {"valid", valid}},
         dset_names(mf->model.opca, d) + (valid ? "  (valid)" : "  (invalid)"));
    return kOk;
  } catch (const SortError& e) {
    return fail_input(g, e.what());
  }
}

int cmd_logic_schema(const Global& g, const std::string& model_path,
                     const std::string& kind, size_t count) {
  int rc = kOk;
  auto mf = load_model(g, model_path, rc);
  if (!mf) return rc;
  Model& m = mf->model;
  std::mt19937_64 rng(g.seed);
  auto ds = m.opca.all_downsets();
  auto rand_ds = [&] {
    return ds[std::uniform_int_distribution<size_t>(0, ds.size() - 1)(rng)];
  };
  size_t ok = 0, total = 0;
  json results = json::array();
  if (kind == "iu") {
    for (Dset u : ds) {
      FormulaP f = schema_iu(m, u);
      bool valid = is_valid(m, f);
      bool expected = m.phi.contains(u);
      ++total;
      if (valid == expected) ++ok;
      results.push_back({{"downset", dset_names(m.opca, u)},
                         {"valid", valid},
                         {"in_phi", expected}});
    }
  } else if (kind == "mct" || kind == "up") {
    for (size_t i = 0; i < count; ++i) {
      FormulaP f;
      if (kind == "mct") {
        MctData d;
        d.z_size = 1 + (rng() % 2);
        for (size_t z = 0; z < d.z_size; ++z) d.y.push_back(rand_ds());
        d.x.assign(m.opca.size(), {});
        for (auto& col : d.x)
          for (size_t z = 0; z < d.z_size; ++z) col.push_back(rand_ds());
        f = schema_mct(m, d);
      } else {
        UpData d;
        size_t ys = 1 + (rng() % 3);
        d.z_size = 1 + (rng() % 2);
        for (size_t y = 0; y < ys; ++y) {
          d.x.push_back(rand_ds());
          d.g.push_back(rng() % d.z_size);
        }
        f = schema_up(m, d);
      }
      bool valid = is_valid(m, f);
      ++total;
      if (valid) ++ok;
      results.push_back({{"instance", i}, {"valid", valid}});
    }
  } else {
    return fail_input(g, "schema kind must be mct, up or iu");
  }
  bool pass = ok == total;
  emit(g, json{{"ok", pass}, {"passed", ok}, {"total", total},
               {"results", results}},
       kind + ": " + std::to_string(ok) + "/" + std::to_string(total) +
           (pass ? " pass" : " FAIL"));
  return pass ? kOk : kPropertyFailure;
}

int cmd_asm(const Global& g, const std::string& verb,
            const std::string& model_path, const std::string& x_name,
            const std::string& y_name, const std::string& fun_name) {
  int rc = kOk;
  auto mf = load_model(g, model_path, rc);
  if (!mf) return rc;
  const FiniteOpca& a = mf->model.opca;
  if (verb == "check") {
    bool all = true;
    std::ostringstream s;
    json j = json::array();
    for (const auto& [name, asmb] : mf->assemblies) {
      bool ok = assembly_ok(a, asmb);
      bool part = is_partitioned(a, asmb);
      bool mod = is_modest(a, asmb);
      all &= ok;
      s << name << ": " << (ok ? "ok" : "uninhabited")
        << (part ? ", partitioned" : "") << (mod ? ", modest" : "") << "\n";
      j.push_back({{"name", name},
                   {"ok", ok},
                   {"partitioned", part},
                   {"modest", mod}});
    }
    std::string text = s.str();
    if (!text.empty()) text.pop_back();
    emit(g, json{{"ok", all}, {"assemblies", j}}, text);
    return all ? kOk : kPropertyFailure;
  }
  auto xit = mf->assemblies.find(x_name);
  if (xit == mf->assemblies.end())
    return fail_input(g, "unknown assembly '" + x_name + "'");
  if (verb == "product") {
    auto yit = mf->assemblies.find(y_name);
    if (yit == mf->assemblies.end())
      return fail_input(g, "unknown assembly '" + y_name + "'");
    auto prod = product(a, xit->second, yit->second);
    std::ostringstream s;
    json elems = json::array();
    for (size_t i = 0; i < prod.prod.size(); ++i) {
      s << prod.prod.elems[i] << " " << dset_names(a, prod.prod.e[i]) << "\n";
      elems.push_back({{"elem", prod.prod.elems[i]},
                       {"realizers", dset_names(a, prod.prod.e[i])}});
    }
    std::string text = s.str();
    if (!text.empty()) text.pop_back();
    emit(g, json{{"ok", prod.pairing_defined}, {"elements", elems}}, text);
    return prod.pairing_defined ? kOk : kPropertyFailure;
  }
  if (verb == "trackers") {
    auto yit = mf->assemblies.find(y_name);
    if (yit == mf->assemblies.end())
      return fail_input(g, "unknown assembly '" + y_name + "'");
    auto fit = mf->model.funs.find(fun_name);
    if (fit == mf->model.funs.end())
      return fail_input(g, "unknown function '" + fun_name + "'");
    if (fit->second.map.size() != xit->second.size())
      return fail_input(g, "function domain does not match assembly");
    auto tm = track(a, mf->model.phi, fit->second.map, xit->second,
                    yit->second);
    emit(g,
         json{{"ok", tm.tracked},
              {"trackers", dset_names(a, tm.tracker_set)},
              {"tracked", tm.tracked}},
         "trackers " + dset_names(a, tm.tracker_set) +
             (tm.tracked ? " (tracked)" : " (not tracked)"));
    return tm.tracked ? kOk : kPropertyFailure;
  }
  return fail_input(g, "unknown asm verb");
}

int cmd_appmorph_check(const Global& g, const std::string& path) {
  auto text = read_file(path);
  if (!text) return fail_input(g, "cannot read " + path);
  // file format: source <opca>, target <opca>, then 'pair b a' lines or
  // 'relation le'
  std::istringstream in(*text);
  std::string line, source_path, target_path;
  std::vector<std::pair<std::string, std::string>> pair_names;
  bool use_le = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "source") ls >> source_path;
    else if (kw == "target") ls >> target_path;
    else if (kw == "pair") {
      std::string b, a;
      ls >> b >> a;
      pair_names.push_back({b, a});
    } else if (kw == "relation") {
      std::string what;
      ls >> what;
      use_le = what == "le";
    }
  }
  auto dir = path.find_last_of('/') == std::string::npos
                 ? std::string{}
                 : path.substr(0, path.find_last_of('/') + 1);
  auto load = [&](const std::string& p) -> std::optional<FiniteOpca> {
    auto t = read_file(p);
    if (!t) t = read_file(dir + p);
    if (!t) return std::nullopt;
    auto rep = parse_opca_file(*t);
    if (!rep.ok) return std::nullopt;
    return rep.opca;
  };
  auto src = load(source_path);  // (A, phi)
  auto tgt = load(target_path);  // (B, chi)
  if (!src || !tgt) return fail_input(g, "cannot load source/target opca");
  ApplicativeMorphism c;
  if (use_le) {
    if (src->size() != tgt->size())
      return fail_input(g, "relation le needs source = target");
    c = le_morphism(*src);
  } else {
    c.pairs.assign(tgt->size(), std::vector<bool>(src->size(), false));
    for (const auto& [bn, an] : pair_names) {
      auto bi = tgt->index_of(bn);
      auto ai = src->index_of(an);
      if (!bi || !ai) return fail_input(g, "unknown element in pair");
      c.pairs[*bi][*ai] = true;
    }
    // downward closure in B is part of the definition; close it here
    for (size_t bb = 0; bb < tgt->size(); ++bb)
      for (size_t aa = 0; aa < src->size(); ++aa)
        if (c.pairs[bb][aa])
          for (size_t b2 = 0; b2 < tgt->size(); ++b2)
            if (tgt->le(b2, bb)) c.pairs[b2][aa] = true;
  }
  auto rep = check_applicative_morphism(*tgt, tgt->phi, *src, src->phi, c);
  json j{{"ok", rep.ok},
         {"monotone_realizers", dset_names(*tgt, rep.u_set)},
         {"application_realizers", dset_names(*tgt, rep.r_set)},
         {"filter_condition", rep.cond_filter},
         {"failures", rep.failures}};
  std::ostringstream s;
  s << (rep.ok ? "valid applicative morphism" : "invalid");
  for (const auto& f : rep.failures) s << "\n  " << f;
  emit(g, j, s.str());
  return rep.ok ? kOk : kPropertyFailure;
}

struct CrSetup {
  FiniteOpca a;
  InducedAks aks;
  Dset filter_c = 0;
};

std::optional<CrSetup> cr_setup(const Global& g, const std::string& opca_path,
                                const std::string& interp_name, int& rc) {
  auto text = read_file(opca_path);
  if (!text) {
    rc = fail_input(g, "cannot read " + opca_path);
    return std::nullopt;
  }
  auto rep = parse_opca_file(*text);
  if (!rep.ok) {
    rc = fail_input(g, "opca file invalid");
    return std::nullopt;
  }
  CrSetup s;
  s.a = *rep.opca;
  auto e = s.a.index_of(interp_name);
  if (!e) {
    rc = fail_input(g, "unknown interpretation element '" + interp_name + "'");
    return std::nullopt;
  }
  auto arep = induce_aks(s.a, Interp{*e, *e, *e, *e});
  if (!arep.ok) {
    std::ostringstream msg;
    msg << "interpretation laws fail:";
    for (const auto& v : arep.violations) msg << " " << v << ";";
    rc = fail_input(g, msg.str());
    return std::nullopt;
  }
  s.aks = *arep.aks;
  s.filter_c = s.a.filter_set ? s.a.filter_set : s.a.full();
  return s;
}

std::optional<Dset> parse_elem_set(const FiniteOpca& a,
                                   const std::string& spec) {
  Dset d = 0;
  std::istringstream ss(spec);
  std::string w;
  while (ss >> w) {
    auto i = a.index_of(w);
    if (!i) return std::nullopt;
    d |= Dset{1} << *i;
  }
  return d;
}

std::optional<StackPred> parse_stack_pred(const FiniteOpca& a,
                                          const std::string& spec) {
  // "e t ; ;" - per-index sets separated by ';'
  StackPred p;
  std::string chunk;
  std::istringstream ss(spec);
  std::vector<std::string> chunks;
  std::string cur;
  for (char c : spec) {
    if (c == ';') {
      chunks.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  chunks.push_back(cur);
  for (const auto& ch : chunks) {
    auto d = parse_elem_set(a, ch);
    if (!d) return std::nullopt;
    p.push_back(*d);
  }
  return p;
}

int cmd_cr_orthogonal(const Global& g, const std::string& opca_path,
                      const std::string& interp, const std::string& pole_spec,
                      const std::string& stacks_spec) {
  int rc = kOk;
  auto s = cr_setup(g, opca_path, interp, rc);
  if (!s) return rc;
  auto u = parse_elem_set(s->a, pole_spec);
  auto st = parse_elem_set(s->a, stacks_spec);
  if (!u || !st) return fail_input(g, "unknown element in pole/stack set");
  InducedPole pole{&s->a, s->a.down_closure(*u)};
  Dset orth = orthogonal_stacks(pole, *st);
  emit(g, json{{"ok", true}, {"orthogonal", dset_names(s->a, orth)}},
       dset_names(s->a, orth));
  return kOk;
}

int cmd_cr_entails(const Global& g, const std::string& opca_path,
                   const std::string& interp, const std::string& pole_spec,
                   const std::string& f_spec, const std::string& g_spec) {
  int rc = kOk;
  auto s = cr_setup(g, opca_path, interp, rc);
  if (!s) return rc;
  auto u = parse_elem_set(s->a, pole_spec);
  if (!u) return fail_input(g, "unknown element in pole");
  auto f = parse_stack_pred(s->a, f_spec);
  auto gg = parse_stack_pred(s->a, g_spec);
  if (!f || !gg || f->size() != gg->size())
    return fail_input(g, "bad stack predicates");
  InducedPole pole{&s->a, s->a.down_closure(*u)};
  auto res = cr_entails(s->aks, pole, s->filter_c, *f, *gg);
  json j{{"ok", res.holds}};
  std::string text = res.holds ? "entails" : "does not entail";
  if (res.witness) {
    j["witness"] = s->a.name(*res.witness);
    text += " (witness " + s->a.name(*res.witness) + ")";
  }
  emit(g, j, text);
  return res.holds ? kOk : kPropertyFailure;
}

int cmd_cr_trace(const Global& g, const std::string& m_text,
                 const std::string& pi_text) {
  try {
    Term m = parse_term(m_text, const_set(g));
    Term pi = parse_term(pi_text, const_set(g));
    Term proc = mk_app(m, pi);
    ReductionOutcome out = reduce_whnf(proc, g.fuel, true);
    std::ostringstream s;
    json steps = json::array();
    for (size_t i = 0; i < out.trace->size(); ++i) {
      s << i << "  " << print_term((*out.trace)[i]) << "\n";
      steps.push_back(print_term((*out.trace)[i]));
    }
    s << (out.status == ReductionOutcome::Status::HeadNormal
              ? "head-normal"
              : "fuel-exhausted");
    emit(g, json{{"ok", true}, {"trace", steps}}, s.str());
    return kOk;
  } catch (const ParseError& e) {
    return fail_input(g, "syntax error at byte " + std::to_string(e.offset) +
                             ": " + e.what());
  }
}

int cmd_suite_run(const Global& g, const std::string& name) {
  auto names = suite_names();
  if (name != "all" &&
      std::find(names.begin(), names.end(), name) == names.end()) {
    std::string all = "all";
    for (const auto& n : names) all += " " + n;
    return fail_input(g, "unknown suite '" + name + "'; options: " + all);
  }
  SuiteOptions opts;
  opts.seed = g.seed;
  opts.fuel = g.fuel;
  auto results = run_suite(name, opts);
  bool all_pass = true;
  json j = json::array();
  for (const auto& r : results) {
    all_pass &= r.pass;
    std::cout << (g.format == "json"
                      ? ""
                      : (r.pass ? "PASS " : "FAIL ") + std::string("criterion ") +
                            std::to_string(r.id) + ": " + r.name + " — " +
                            r.detail + "\n");
    j.push_back({{"id", r.id},
                 {"name", r.name},
                 {"pass", r.pass},
                 {"detail", r.detail}});
  }
  if (g.format == "json")
    std::cout << json{{"ok", all_pass}, {"criteria", j}}.dump() << "\n";
  return all_pass ? kOk : kPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rzw - realizability workbench"};
  app.require_subcommand(1);
  Global g;
  if (const char* env = std::getenv("RZW_FUEL")) g.fuel = std::strtoull(env, nullptr, 10);
  app.add_option("--fuel", g.fuel, "reduction fuel");
  app.add_flag("--trace", g.trace, "print reduction traces");
  app.add_option("--format", g.format, "text|json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--const", g.constants, "adjoined constant names");

  std::string arg1, arg2, arg3, arg4, arg5;
  K1Code ka = 0, kb = 0;
  bool stack = false;
  size_t count = 50;

  auto* term = app.add_subcommand("term", "term syntax and reduction");
  auto* tparse = term->add_subcommand("parse", "parse and print a term");
  tparse->add_option("text", arg1)->required();
  auto* treduce = term->add_subcommand("reduce", "head-reduce a term");
  treduce->add_option("text", arg1)->required();
  auto* tcompile = term->add_subcommand("compile", "compile lambdas away");
  tcompile->add_option("text", arg1)->required();
  tcompile->add_flag("--stack", stack, "use the stack abstraction");

  auto* opca = app.add_subcommand("opca", "finite OPCA checks");
  auto* ovalidate = opca->add_subcommand("validate", "validate an opca file");
  ovalidate->add_option("file", arg1)->required();
  auto* ocomplete = opca->add_subcommand("complete", "Feferman completeness");
  ocomplete->add_option("file", arg1)->required();

  auto* k1 = app.add_subcommand("k1", "Kleene's first model");
  auto* kapply = k1->add_subcommand("apply", "apply code e to code n");
  kapply->add_option("e", ka)->required();
  kapply->add_option("n", kb)->required();

  auto* logic = app.add_subcommand("logic", "formula evaluation");
  auto* leval = logic->add_subcommand("eval", "realizer set of a formula");
  leval->add_option("model", arg1)->required();
  leval->add_option("formula", arg2)->required();
  auto* lvalid = logic->add_subcommand("valid", "validity of a sentence");
  lvalid->add_option("model", arg1)->required();
  lvalid->add_option("formula", arg2)->required();
  auto* lschema = logic->add_subcommand("schema", "generated schema instances");
  lschema->add_option("model", arg1)->required();
  lschema->add_option("kind", arg2)->required();
  lschema->add_option("--count", count, "instances to generate");

  auto* asmc = app.add_subcommand("asm", "assemblies");
  auto* acheck = asmc->add_subcommand("check", "validate declared assemblies");
  acheck->add_option("model", arg1)->required();
  auto* atrack = asmc->add_subcommand("trackers", "tracker set of a map");
  atrack->add_option("model", arg1)->required();
  atrack->add_option("fun", arg2)->required();
  atrack->add_option("from", arg3)->required();
  atrack->add_option("to", arg4)->required();
  auto* aprod = asmc->add_subcommand("product", "binary product");
  aprod->add_option("model", arg1)->required();
  aprod->add_option("x", arg2)->required();
  aprod->add_option("y", arg3)->required();

  auto* amorph = app.add_subcommand("appmorph", "applicative morphisms");
  auto* amcheck = amorph->add_subcommand("check", "check the four conditions");
  amcheck->add_option("file", arg1)->required();

  auto* cr = app.add_subcommand("cr", "classical realizability");
  auto* crorth = cr->add_subcommand("orthogonal", "orthogonal complement");
  crorth->add_option("opca", arg1)->required();
  crorth->add_option("--interp", arg2, "element interpreting b,c,k,w")
      ->required();
  crorth->add_option("--pole", arg3, "downset generating the pole")->required();
  crorth->add_option("--stacks", arg4, "stack set")->required();
  auto* crent = cr->add_subcommand("entails", "classical entailment");
  crent->add_option("opca", arg1)->required();
  crent->add_option("--interp", arg2)->required();
  crent->add_option("--pole", arg3)->required();
  crent->add_option("--f", arg4, "stack predicate, ';' separates indices")
      ->required();
  crent->add_option("--g", arg5, "stack predicate")->required();
  auto* crtrace = cr->add_subcommand("trace", "machine trace of M * pi");
  crtrace->add_option("m", arg1)->required();
  crtrace->add_option("pi", arg2)->required();

  auto* suite = app.add_subcommand("suite", "acceptance suites");
  auto* srun = suite->add_subcommand("run", "run a named suite");
  srun->add_option("name", arg1)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (tparse->parsed()) return cmd_term_parse(g, arg1);
    if (treduce->parsed()) return cmd_term_reduce(g, arg1);
    if (tcompile->parsed()) return cmd_term_compile(g, arg1, stack);
    if (ovalidate->parsed()) return cmd_opca_validate(g, arg1);
    if (ocomplete->parsed()) return cmd_opca_complete(g, arg1);
    if (kapply->parsed()) return cmd_k1_apply(g, ka, kb);
    if (leval->parsed()) return cmd_logic_eval(g, arg1, arg2, false);
    if (lvalid->parsed()) return cmd_logic_eval(g, arg1, arg2, true);
    if (lschema->parsed()) return cmd_logic_schema(g, arg1, arg2, count);
    if (acheck->parsed()) return cmd_asm(g, "check", arg1, "", "", "");
    if (atrack->parsed()) return cmd_asm(g, "trackers", arg1, arg3, arg4, arg2);
    if (aprod->parsed()) return cmd_asm(g, "product", arg1, arg2, arg3, "");
    if (amcheck->parsed()) return cmd_appmorph_check(g, arg1);
    if (crorth->parsed()) return cmd_cr_orthogonal(g, arg1, arg2, arg3, arg4);
    if (crent->parsed()) return cmd_cr_entails(g, arg1, arg2, arg3, arg4, arg5);
    if (crtrace->parsed()) return cmd_cr_trace(g, arg1, arg2);
    if (srun->parsed()) return cmd_suite_run(g, arg1);
  } catch (const std::exception& e) {
    return fail_input(g, e.what());
  }
  std::cerr << app.help() << "\n";
  return kInputError;
}
