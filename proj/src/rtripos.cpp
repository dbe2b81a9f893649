#include "rzw/rtripos.hpp"

#include <sstream>

namespace rzw {

Dset arrow(const FiniteOpca& a, Dset v, Dset w) {
  Dset out = 0;
  for (size_t r = 0; r < a.size(); ++r) {
    bool good = true;
    for (size_t b = 0; b < a.size() && good; ++b) {
      if (!(v >> b & 1)) continue;
      auto ab = a.app(r, b);
      if (!ab || !(w >> *ab & 1)) good = false;
    }
    if (good) out |= Dset{1} << r;
  }
  return out;
}

AppDownResult app_down(const FiniteOpca& a, Dset u, Dset v) {
  AppDownResult res;
  Dset imgs = 0;
  for (size_t x = 0; x < a.size(); ++x) {
    if (!(u >> x & 1)) continue;
    for (size_t y = 0; y < a.size(); ++y) {
      if (!(v >> y & 1)) continue;
      auto xy = a.app(x, y);
      if (!xy) {
        res.offending = {x, y};
        return res;
      }
      imgs |= Dset{1} << *xy;
    }
  }
  res.value = a.down_closure(imgs);
  return res;
}

EntailResult entails(const FiniteOpca& a, const PhiPolicy& phi,
                     const Family& p, const Family& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("entails: family index mismatch");
  EntailResult r;
  r.witness = a.full();
  for (size_t i = 0; i < p.size(); ++i) r.witness &= arrow(a, p[i], q[i]);
  r.holds = phi.contains(r.witness);
  return r;
}

bool interderivable(const FiniteOpca& a, const PhiPolicy& phi, const Family& p,
                    const Family& q) {
  return entails(a, phi, p, q).holds && entails(a, phi, q, p).holds;
}

Family reindex(const IndexMap& f, const Family& over_y) {
  Family out;
  out.vals.reserve(f.size());
  for (size_t x = 0; x < f.size(); ++x) out.vals.push_back(over_y[f[x]]);
  return out;
}

Family exists_along(const IndexMap& f, const Family& over_x, size_t y_size,
                    const FiniteOpca&) {
  Family out;
  out.vals.assign(y_size, 0);
  for (size_t x = 0; x < f.size(); ++x) out[f[x]] |= over_x[x];
  return out;
}

Family forall_along(const IndexMap& f, const Family& over_x, size_t y_size,
                    const FiniteOpca& a) {
  Family out;
  out.vals.assign(y_size, a.full());
  for (size_t x = 0; x < f.size(); ++x) out[f[x]] &= over_x[x];
  return out;
}

FiberAlgebra::FiberAlgebra(const FiniteOpca& a) : opca(a) {
  auto p3 = [](size_t i) { return PolyExpr::proj(3, i); };
  auto p2 = [](size_t i) { return PolyExpr::proj(2, i); };
  p_set = realizer_object(
      a, PolyExpr::apply(PolyExpr::apply(p3(2), p3(0)), p3(1)));
  l_set = realizer_object(a, PolyExpr::apply(p3(1), p3(0)));
  r_set = realizer_object(a, PolyExpr::apply(p3(2), p3(0)));
  t_set = realizer_object(a, p2(0));
  f_set = realizer_object(a, p2(1));
  i_set = realizer_object(a, PolyExpr::proj(1, 0));
}

std::optional<Dset> FiberAlgebra::conj(Dset x, Dset y) const {
  auto px = app_down(opca, p_set, x);
  if (!px.value) return std::nullopt;
  auto pxy = app_down(opca, *px.value, y);
  return pxy.value;
}

std::optional<Dset> FiberAlgebra::disj(Dset x, Dset y) const {
  auto lx = app_down(opca, l_set, x);
  auto ry = app_down(opca, r_set, y);
  if (!lx.value || !ry.value) return std::nullopt;
  return *lx.value | *ry.value;
}

// ----- formulas -----

TermExprP te_var(std::string name) {
  auto t = std::make_shared<TermExpr>();
  t->kind = TermExpr::Kind::Var;
  t->name = std::move(name);
  return t;
}

TermExprP te_fun(std::string fun, TermExprP arg) {
  auto t = std::make_shared<TermExpr>();
  t->kind = TermExpr::Kind::Fun;
  t->name = std::move(fun);
  t->arg = std::move(arg);
  return t;
}

TermExprP te_app(TermExprP l, TermExprP r) {
  auto t = std::make_shared<TermExpr>();
  t->kind = TermExpr::Kind::AppOp;
  t->lhs = std::move(l);
  t->rhs = std::move(r);
  return t;
}

namespace {

FormulaP mk_f(Formula f) { return std::make_shared<Formula>(std::move(f)); }

}  // namespace

FormulaP f_top() { return mk_f({Formula::Kind::Top, {}, {}, {}, {}, {}, {}, {}, {}, {}}); }
FormulaP f_bot() { return mk_f({Formula::Kind::Bot, {}, {}, {}, {}, {}, {}, {}, {}, {}}); }

FormulaP f_eq(TermExprP a, TermExprP b) {
  Formula f{};
  f.kind = Formula::Kind::Eq;
  f.t1 = std::move(a);
  f.t2 = std::move(b);
  return mk_f(std::move(f));
}

FormulaP f_atom(std::string pred, std::vector<TermExprP> args) {
  Formula f{};
  f.kind = Formula::Kind::Atom;
  f.atom = std::move(pred);
  f.args = std::move(args);
  return mk_f(std::move(f));
}

FormulaP f_and(FormulaP a, FormulaP b) {
  Formula f{};
  f.kind = Formula::Kind::And;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return mk_f(std::move(f));
}

FormulaP f_or(FormulaP a, FormulaP b) {
  Formula f{};
  f.kind = Formula::Kind::Or;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return mk_f(std::move(f));
}

FormulaP f_imp(FormulaP a, FormulaP b) {
  Formula f{};
  f.kind = Formula::Kind::Imp;
  f.lhs = std::move(a);
  f.rhs = std::move(b);
  return mk_f(std::move(f));
}

FormulaP f_not(FormulaP a) { return f_imp(std::move(a), f_bot()); }

FormulaP f_forall(std::string var, std::string sort, FormulaP body) {
  Formula f{};
  f.kind = Formula::Kind::Forall;
  f.var = std::move(var);
  f.sort = std::move(sort);
  f.body = std::move(body);
  return mk_f(std::move(f));
}

FormulaP f_exists(std::string var, std::string sort, FormulaP body) {
  Formula f{};
  f.kind = Formula::Kind::Exists;
  f.var = std::move(var);
  f.sort = std::move(sort);
  f.body = std::move(body);
  return mk_f(std::move(f));
}

namespace {

void print_texpr(const TermExprP& t, std::string& out) {
  switch (t->kind) {
    case TermExpr::Kind::Var: out += t->name; return;
    case TermExpr::Kind::Fun:
      out += t->name;
      out += '(';
      print_texpr(t->arg, out);
      out += ')';
      return;
    case TermExpr::Kind::AppOp:
      out += "app(";
      print_texpr(t->lhs, out);
      out += ',';
      print_texpr(t->rhs, out);
      out += ')';
      return;
  }
}

void print_f(const FormulaP& f, std::string& out, int prec) {
  auto paren = [&](int mine, auto&& body) {
    if (mine < prec) out += '(';
    body();
    if (mine < prec) out += ')';
  };
  switch (f->kind) {
    case Formula::Kind::Top: out += 'T'; return;
    case Formula::Kind::Bot: out += 'F'; return;
    case Formula::Kind::Eq:
      print_texpr(f->t1, out);
      out += " = ";
      print_texpr(f->t2, out);
      return;
    case Formula::Kind::Atom: {
      out += f->atom;
      out += '(';
      for (size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ',';
        print_texpr(f->args[i], out);
      }
      out += ')';
      return;
    }
    case Formula::Kind::And:
      paren(2, [&] {
        print_f(f->lhs, out, 3);
        out += " /\\ ";
        print_f(f->rhs, out, 3);
      });
      return;
    case Formula::Kind::Or:
      paren(1, [&] {
        print_f(f->lhs, out, 2);
        out += " \\/ ";
        print_f(f->rhs, out, 2);
      });
      return;
    case Formula::Kind::Imp:
      if (f->rhs->kind == Formula::Kind::Bot) {
        out += '~';
        print_f(f->lhs, out, 4);
        return;
      }
      paren(0, [&] {
        print_f(f->lhs, out, 1);
        out += " -> ";
        print_f(f->rhs, out, 0);
      });
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      paren(0, [&] {
        out += f->kind == Formula::Kind::Forall ? "forall " : "exists ";
        out += f->var;
        out += ':';
        out += f->sort;
        out += ". ";
        print_f(f->body, out, 0);
      });
      return;
  }
}

struct FormulaParser {
  std::string_view src;
  size_t pos = 0;

  [[noreturn]] void fail(const std::string& m) { throw ParseError(pos, m); }

  void skip() {
    while (pos < src.size() &&
           std::isspace(static_cast<unsigned char>(src[pos])))
      ++pos;
  }

  bool eat(std::string_view tok) {
    skip();
    if (src.substr(pos, tok.size()) == tok) {
      pos += tok.size();
      return true;
    }
    return false;
  }

  bool peek_word(std::string_view w) {
    skip();
    if (src.substr(pos, w.size()) != w) return false;
    size_t end = pos + w.size();
    if (end < src.size() &&
        (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_'))
      return false;
    return true;
  }

  std::string ident() {
    skip();
    size_t start = pos;
    if (pos >= src.size() || !std::isalpha(static_cast<unsigned char>(src[pos])))
      fail("expected identifier");
    ++pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) ||
            src[pos] == '_'))
      ++pos;
    return std::string(src.substr(start, pos - start));
  }

  TermExprP term() {
    skip();
    if (peek_word("app")) {
      pos += 3;
      if (!eat("(")) fail("expected '(' after app");
      TermExprP l = term();
      if (!eat(",")) fail("expected ',' in app");
      TermExprP r = term();
      if (!eat(")")) fail("expected ')'");
      return te_app(l, r);
    }
    std::string name = ident();
    skip();
    if (pos < src.size() && src[pos] == '(') {
      ++pos;
      TermExprP a = term();
      if (!eat(")")) fail("expected ')'");
      return te_fun(name, a);
    }
    return te_var(name);
  }

  FormulaP formula() { return imp(); }

  FormulaP imp() {
    FormulaP l = disj();
    if (eat("->")) return f_imp(l, imp());
    return l;
  }

  FormulaP disj() {
    FormulaP l = conj();
    while (eat("\\/")) l = f_or(l, conj());
    return l;
  }

  FormulaP conj() {
    FormulaP l = unary();
    while (eat("/\\")) l = f_and(l, unary());
    return l;
  }

  FormulaP unary() {
    skip();
    if (eat("~")) return f_not(unary());
    if (peek_word("forall") || peek_word("exists")) {
      bool uni = peek_word("forall");
      pos += 6;
      std::string v = ident();
      if (!eat(":")) fail("expected ':' after quantified variable");
      std::string s = ident();
      if (!eat(".")) fail("expected '.' after sort");
      FormulaP b = formula();
      return uni ? f_forall(v, s, b) : f_exists(v, s, b);
    }
    return atom();
  }

  FormulaP atom() {
    skip();
    if (pos < src.size() && src[pos] == '(') {
      ++pos;
      FormulaP f = formula();
      if (!eat(")")) fail("expected ')'");
      return maybe_eq_tail(f);
    }
    if (peek_word("T")) {
      ++pos;
      return f_top();
    }
    if (peek_word("F")) {
      ++pos;
      return f_bot();
    }
    // a term, then either '=' (equality) or it was a predicate application
    if (peek_word("app")) {
      TermExprP t = term();
      if (!eat("=")) fail("expected '=' after application term");
      return f_eq(t, term());
    }
    std::string name = ident();
    skip();
    if (pos < src.size() && src[pos] == '(') {
      ++pos;
      std::vector<TermExprP> args;
      args.push_back(term());
      while (eat(",")) args.push_back(term());
      if (!eat(")")) fail("expected ')'");
      skip();
      if (pos < src.size() && src[pos] == '=') {
        ++pos;
        if (args.size() != 1) fail("function terms are unary");
        return f_eq(te_fun(name, args[0]), term());
      }
      return f_atom(name, std::move(args));
    }
    if (eat("=")) return f_eq(te_var(name), term());
    fail("expected predicate or equality");
  }

  FormulaP maybe_eq_tail(FormulaP f) { return f; }
};

}  // namespace

std::string print_formula(const FormulaP& f) {
  std::string out;
  print_f(f, out, 0);
  return out;
}

FormulaP parse_formula(const std::string& text) {
  FormulaParser p{text, 0};
  FormulaP f = p.formula();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return f;
}

// ----- evaluation -----

size_t Model::sort_size(const std::string& s) const {
  if (s == "A") return opca.size();
  auto it = sorts.find(s);
  if (it == sorts.end()) throw SortError("unknown sort '" + s + "'");
  return it->second.size();
}

Dset Model::t_set() const {
  if (!t_cache) t_cache = realizer_object(opca, PolyExpr::proj(2, 0));
  return *t_cache;
}

Dset Model::f_set() const {
  if (!f_cache) f_cache = realizer_object(opca, PolyExpr::proj(2, 1));
  return *f_cache;
}

namespace {

struct TValue {
  std::string sort;
  size_t elem;
};

std::optional<TValue> eval_texpr(const Model& m, const TermExprP& t,
                                 const Env& env) {
  switch (t->kind) {
    case TermExpr::Kind::Var: {
      auto it = env.find(t->name);
      if (it == env.end())
        throw SortError("unbound variable '" + t->name + "'");
      return TValue{it->second.first, it->second.second};
    }
    case TermExpr::Kind::Fun: {
      auto fit = m.funs.find(t->name);
      if (fit == m.funs.end())
        throw SortError("unknown function '" + t->name + "'");
      auto a = eval_texpr(m, t->arg, env);
      if (!a) return std::nullopt;
      if (a->sort != fit->second.from)
        throw SortError("argument sort mismatch for '" + t->name + "'");
      return TValue{fit->second.to, fit->second.map.at(a->elem)};
    }
    case TermExpr::Kind::AppOp: {
      auto l = eval_texpr(m, t->lhs, env);
      auto r = eval_texpr(m, t->rhs, env);
      if (!l || !r) return std::nullopt;
      if (l->sort != "A" || r->sort != "A")
        throw SortError("application terms need sort A");
      auto v = m.opca.app(l->elem, r->elem);
      if (!v) return std::nullopt;
      return TValue{"A", *v};
    }
  }
  return std::nullopt;
}

}  // namespace

Dset eval_formula(const Model& m, const FormulaP& f, const Env& env) {
  const FiniteOpca& a = m.opca;
  switch (f->kind) {
    case Formula::Kind::Top: return a.full();
    case Formula::Kind::Bot: return 0;
    case Formula::Kind::Eq: {
      auto l = eval_texpr(m, f->t1, env);
      auto r = eval_texpr(m, f->t2, env);
      if (!l || !r) return 0;
      if (l->sort != r->sort) throw SortError("equality across sorts");
      return l->elem == r->elem ? a.full() : 0;
    }
    case Formula::Kind::Atom: {
      if (f->atom == "C") {
        if (f->args.size() != 1) throw SortError("C takes one argument");
        auto x = eval_texpr(m, f->args[0], env);
        if (!x) return 0;
        if (x->sort != "A") throw SortError("C is a predicate on A");
        return a.principal_down(x->elem);
      }
      if (f->atom == "D") {
        if (f->args.size() != 2) throw SortError("D takes two arguments");
        auto x = eval_texpr(m, f->args[0], env);
        auto y = eval_texpr(m, f->args[1], env);
        if (!x || !y) return 0;
        if (x->sort != "A" || y->sort != "A")
          throw SortError("D is a predicate on A");
        return a.app(x->elem, y->elem) ? a.full() : 0;
      }
      auto pit = m.preds.find(f->atom);
      if (pit == m.preds.end())
        throw SortError("unknown predicate '" + f->atom + "'");
      const PredDef& pd = pit->second;
      if (pd.sorts.size() != f->args.size())
        throw SortError("arity mismatch for '" + f->atom + "'");
      std::vector<size_t> tuple;
      for (size_t i = 0; i < f->args.size(); ++i) {
        auto v = eval_texpr(m, f->args[i], env);
        if (!v) return 0;
        if (v->sort != pd.sorts[i])
          throw SortError("sort mismatch in '" + f->atom + "'");
        tuple.push_back(v->elem);
      }
      auto vit = pd.values.find(tuple);
      return vit == pd.values.end() ? 0 : vit->second;
    }
    case Formula::Kind::And: {
      Dset p = eval_formula(m, f->lhs, env);
      Dset q = eval_formula(m, f->rhs, env);
      return arrow(a, m.t_set(), p) & arrow(a, m.f_set(), q);
    }
    case Formula::Kind::Or: {
      Dset p = eval_formula(m, f->lhs, env);
      Dset q = eval_formula(m, f->rhs, env);
      Dset tt = m.t_set(), ff = m.f_set();
      Dset out = 0;
      for (size_t x = 0; x < a.size(); ++x) {
        bool good = true;
        for (size_t t = 0; t < a.size() && good; ++t) {
          if (!(tt >> t & 1)) continue;
          auto xt = a.app(x, t);
          if (!xt) { good = false; break; }
          for (size_t fe = 0; fe < a.size() && good; ++fe) {
            if (!(ff >> fe & 1)) continue;
            auto xf = a.app(x, fe);
            if (!xf) { good = false; break; }
            bool left = (tt >> *xt & 1) && (p >> *xf & 1);
            bool right = (ff >> *xt & 1) && (q >> *xf & 1);
            if (!left && !right) good = false;
          }
        }
        if (good) out |= Dset{1} << x;
      }
      return out;
    }
    case Formula::Kind::Imp:
      return arrow(a, eval_formula(m, f->lhs, env),
                   eval_formula(m, f->rhs, env));
    case Formula::Kind::Forall: {
      size_t n = m.sort_size(f->sort);
      Dset out = a.full();
      Env e = env;
      for (size_t c = 0; c < n; ++c) {
        e[f->var] = {f->sort, c};
        out &= eval_formula(m, f->body, e);
      }
      return out;
    }
    case Formula::Kind::Exists: {
      size_t n = m.sort_size(f->sort);
      Dset out = 0;
      Env e = env;
      for (size_t c = 0; c < n; ++c) {
        e[f->var] = {f->sort, c};
        out |= eval_formula(m, f->body, e);
      }
      return out;
    }
  }
  return 0;
}

bool is_valid(const Model& m, const FormulaP& sentence) {
  return m.phi.contains(eval_formula(m, sentence));
}

// ----- schemas -----

namespace {

void put_sort(Model& m, const std::string& name, size_t n) {
  std::vector<std::string> elems;
  for (size_t i = 0; i < n; ++i)
    elems.push_back(name + std::to_string(i));
  m.sorts[name] = std::move(elems);
}

}  // namespace

FormulaP schema_mct(Model& m, const MctData& d) {
  const FiniteOpca& a = m.opca;
  if (d.y.size() != d.z_size || d.x.size() != a.size())
    throw std::invalid_argument("schema_mct: data shape mismatch");
  for (Dset u : d.y)
    if (!a.is_downset(u))
      throw std::invalid_argument("schema_mct: Y data not downward closed");
  for (const auto& col : d.x) {
    if (col.size() != d.z_size)
      throw std::invalid_argument("schema_mct: data shape mismatch");
    for (Dset u : col)
      if (!a.is_downset(u))
        throw std::invalid_argument("schema_mct: X data not downward closed");
  }
  put_sort(m, "Zm", d.z_size);
  PredDef ypred;
  ypred.sorts = {"A", "Zm"};
  for (size_t y = 0; y < a.size(); ++y)
    for (size_t z = 0; z < d.z_size; ++z)
      if (d.y[z] >> y & 1) ypred.values[{y, z}] = a.full();
  m.preds["Ym"] = std::move(ypred);
  PredDef xpred;
  xpred.sorts = {"A", "A", "Zm"};
  for (size_t x = 0; x < a.size(); ++x)
    for (size_t y = 0; y < a.size(); ++y)
      for (size_t z = 0; z < d.z_size; ++z)
        if (d.x[y][z] >> x & 1) xpred.values[{x, y, z}] = a.full();
  m.preds["Xm"] = std::move(xpred);

  auto Y = [&](const char* y, const char* z) {
    return f_atom("Ym", {te_var(y), te_var(z)});
  };
  auto X = [&](TermExprP x, const char* y, const char* z) {
    return f_atom("Xm", {std::move(x), te_var(y), te_var(z)});
  };
  auto C = [&](const char* v) { return f_atom("C", {te_var(v)}); };

  FormulaP antecedent = f_forall(
      "y", "A",
      f_imp(f_and(Y("y", "z"), C("y")),
            f_exists("x", "A", f_and(X(te_var("x"), "y", "z"), C("x")))));
  FormulaP consequent = f_exists(
      "w", "A",
      f_and(C("w"),
            f_forall("y", "A",
                     f_imp(Y("y", "z"),
                           f_and(f_atom("D", {te_var("w"), te_var("y")}),
                                 X(te_app(te_var("w"), te_var("y")), "y",
                                   "z"))))));
  return f_forall("z", "Zm", f_imp(antecedent, consequent));
}

FormulaP schema_up(Model& m, const UpData& d) {
  const FiniteOpca& a = m.opca;
  size_t ysize = d.x.size();
  if (d.g.size() != ysize)
    throw std::invalid_argument("schema_up: data shape mismatch");
  for (Dset u : d.x)
    if (!a.is_downset(u))
      throw std::invalid_argument("schema_up: X data not downward closed");
  put_sort(m, "Yu", ysize);
  put_sort(m, "Zu", d.z_size);
  PredDef xpred;
  xpred.sorts = {"A", "Yu"};
  for (size_t x = 0; x < a.size(); ++x)
    for (size_t y = 0; y < ysize; ++y)
      if (d.x[y] >> x & 1) xpred.values[{x, y}] = a.full();
  m.preds["Xu"] = std::move(xpred);
  FunDef g;
  g.from = "Yu";
  g.to = "Zu";
  g.map = d.g;
  m.funs["gu"] = std::move(g);

  auto X = [&](const char* x, const char* y) {
    return f_atom("Xu", {te_var(x), te_var(y)});
  };
  auto C = [&](const char* v) { return f_atom("C", {te_var(v)}); };
  auto gy_eq_z = f_eq(te_fun("gu", te_var("y")), te_var("z"));

  FormulaP antecedent = f_forall(
      "y", "Yu",
      f_imp(gy_eq_z, f_exists("x", "A", f_and(X("x", "y"), C("x")))));
  FormulaP consequent =
      f_exists("x", "A",
               f_and(C("x"), f_forall("y", "Yu", f_imp(gy_eq_z, X("x", "y")))));
  return f_forall("z", "Zu", f_imp(antecedent, consequent));
}

FormulaP schema_iu(Model& m, Dset u) {
  if (!m.opca.is_downset(u))
    throw std::invalid_argument("schema_iu: data not downward closed");
  PredDef upred;
  upred.sorts = {"A"};
  for (size_t x = 0; x < m.opca.size(); ++x)
    if (u >> x & 1) upred.values[{x}] = m.opca.full();
  m.preds["Um"] = std::move(upred);
  return f_exists("x", "A",
                  f_and(f_atom("C", {te_var("x")}), f_atom("Um", {te_var("x")})));
}

}  // namespace rzw
