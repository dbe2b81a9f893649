#include "rzw/term.hpp"

#include <atomic>
#include <cctype>

namespace rzw {

Term mk_comb(Comb c) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Comb;
  n->comb = c;
  return n;
}

Term mk_var(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Var;
  n->name = std::move(name);
  return n;
}

Term mk_const(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Const;
  n->name = std::move(name);
  return n;
}

Term mk_app(Term f, Term a) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::App;
  n->left = std::move(f);
  n->right = std::move(a);
  return n;
}

Term mk_lam(std::string binder, Term body) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::Lam;
  n->name = std::move(binder);
  n->right = std::move(body);
  return n;
}

Term mk_apps(Term f, std::initializer_list<Term> args) {
  for (const auto& a : args) f = mk_app(std::move(f), a);
  return f;
}

bool term_equal(const Term& a, const Term& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermNode::Kind::Comb:
      return a->comb == b->comb;
    case TermNode::Kind::Var:
    case TermNode::Kind::Const:
      return a->name == b->name;
    case TermNode::Kind::App:
      return term_equal(a->left, b->left) && term_equal(a->right, b->right);
    case TermNode::Kind::Lam:
      return a->name == b->name && term_equal(a->right, b->right);
  }
  return false;
}

namespace {

char comb_letter(Comb c) {
  switch (c) {
    case Comb::B: return 'b';
    case Comb::C: return 'c';
    case Comb::K: return 'k';
    case Comb::W: return 'w';
  }
  return '?';
}

void print_rec(const Term& t, std::string& out, bool arg_position) {
  switch (t->kind) {
    case TermNode::Kind::Comb:
      out += comb_letter(t->comb);
      return;
    case TermNode::Kind::Var:
    case TermNode::Kind::Const:
      out += t->name;
      return;
    case TermNode::Kind::App: {
      bool paren = arg_position;
      if (paren) out += '(';
      print_rec(t->left, out, false);
      out += ' ';
      print_rec(t->right, out, true);
      if (paren) out += ')';
      return;
    }
    case TermNode::Kind::Lam: {
      if (arg_position) out += '(';
      out += '\\';
      out += t->name;
      out += ". ";
      print_rec(t->right, out, false);
      if (arg_position) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_term(const Term& t) {
  std::string out;
  print_rec(t, out, false);
  return out;
}

namespace {

struct Parser {
  std::string_view src;
  size_t pos = 0;
  const std::set<std::string>* constants;

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos, msg); }

  std::string ident() {
    size_t start = pos;
    if (pos >= src.size() || !std::isalpha(static_cast<unsigned char>(src[pos])))
      fail("expected identifier");
    ++pos;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
      ++pos;
    return std::string(src.substr(start, pos - start));
  }

  Term atom() {
    skip_ws();
    if (pos >= src.size()) fail("unexpected end of input");
    char c = src[pos];
    if (c == '(') {
      ++pos;
      Term t = expr();
      skip_ws();
      if (pos >= src.size() || src[pos] != ')') fail("expected ')'");
      ++pos;
      return t;
    }
    if (c == '\\') {
      ++pos;
      skip_ws();
      std::string binder = ident();
      skip_ws();
      if (pos >= src.size() || src[pos] != '.') fail("expected '.' after binder");
      ++pos;
      Term body = expr();
      return mk_lam(binder, body);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t here = pos;
      std::string name = ident();
      if (name.size() == 1) {
        switch (name[0]) {
          case 'b': return mk_comb(Comb::B);
          case 'c': return mk_comb(Comb::C);
          case 'k': return mk_comb(Comb::K);
          case 'w': return mk_comb(Comb::W);
          case 'i': return term_i();
          case 's': return term_s_macro();
          default: break;
        }
      }
      (void)here;
      if (constants && constants->count(name)) return mk_const(name);
      return mk_var(name);
    }
    fail("unexpected character");
  }

  bool atom_follows() {
    skip_ws();
    if (pos >= src.size()) return false;
    char c = src[pos];
    return c == '(' || c == '\\' || std::isalpha(static_cast<unsigned char>(c));
  }

  Term expr() {
    Term t = atom();
    while (atom_follows()) t = mk_app(t, atom());
    return t;
  }
};

}  // namespace

Term parse_term(std::string_view text, const std::set<std::string>& constants) {
  Parser p{text, 0, &constants};
  Term t = p.expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

namespace {

void free_vars_rec(const Term& t, std::set<std::string>& out,
                   std::vector<std::string>& bound) {
  switch (t->kind) {
    case TermNode::Kind::Var: {
      for (const auto& b : bound)
        if (b == t->name) return;
      out.insert(t->name);
      return;
    }
    case TermNode::Kind::App:
      free_vars_rec(t->left, out, bound);
      free_vars_rec(t->right, out, bound);
      return;
    case TermNode::Kind::Lam:
      bound.push_back(t->name);
      free_vars_rec(t->right, out, bound);
      bound.pop_back();
      return;
    default:
      return;
  }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  free_vars_rec(t, out, bound);
  return out;
}

bool is_cl_pure(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::Lam: return false;
    case TermNode::Kind::App:
      return is_cl_pure(t->left) && is_cl_pure(t->right);
    default: return true;
  }
}

bool is_closed_cl(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::Lam:
    case TermNode::Kind::Var: return false;
    case TermNode::Kind::App:
      return is_closed_cl(t->left) && is_closed_cl(t->right);
    default: return true;
  }
}

namespace {

std::atomic<unsigned long long> fresh_counter{0};

std::string fresh_name(const std::string& base) {
  return base + "_" + std::to_string(fresh_counter.fetch_add(1));
}

}  // namespace

Term substitute(const Term& m, const std::string& x, const Term& n) {
  switch (m->kind) {
    case TermNode::Kind::Var:
      return m->name == x ? n : m;
    case TermNode::Kind::Comb:
    case TermNode::Kind::Const:
      return m;
    case TermNode::Kind::App: {
      Term l = substitute(m->left, x, n);
      Term r = substitute(m->right, x, n);
      if (l.get() == m->left.get() && r.get() == m->right.get()) return m;
      return mk_app(l, r);
    }
    case TermNode::Kind::Lam: {
      if (m->name == x) return m;
      // thesis side-condition: binder must not capture free vars of n
      if (free_vars(n).count(m->name) && free_vars(m->right).count(x)) {
        std::string y = fresh_name(m->name);
        Term renamed = substitute(m->right, m->name, mk_var(y));
        return mk_lam(y, substitute(renamed, x, n));
      }
      Term body = substitute(m->right, x, n);
      if (body.get() == m->right.get()) return m;
      return mk_lam(m->name, body);
    }
  }
  return m;
}

Term bracket_abstract(const std::string& x, const Term& m) {
  switch (m->kind) {
    case TermNode::Kind::Lam:
      throw std::invalid_argument("bracket_abstract: term contains a lambda");
    case TermNode::Kind::Var:
      if (m->name == x) return mk_app(mk_comb(Comb::W), mk_comb(Comb::K));
      return mk_app(mk_comb(Comb::K), m);
    case TermNode::Kind::Comb:
    case TermNode::Kind::Const:
      return mk_app(mk_comb(Comb::K), m);
    case TermNode::Kind::App: {
      const Term& rhs = m->right;
      if (rhs->kind == TermNode::Kind::Var && rhs->name == x)
        return mk_app(mk_comb(Comb::W), bracket_abstract(x, m->left));
      if (rhs->kind == TermNode::Kind::App) {
        // h^x(M (N P)) = h^x(b M N P)
        Term rebuilt = mk_apps(mk_comb(Comb::B),
                               {m->left, rhs->left, rhs->right});
        return bracket_abstract(x, rebuilt);
      }
      if (rhs->kind == TermNode::Kind::Lam)
        throw std::invalid_argument("bracket_abstract: term contains a lambda");
      return mk_app(mk_app(mk_comb(Comb::C), bracket_abstract(x, m->left)),
                    rhs);
    }
  }
  throw std::logic_error("bracket_abstract: bad node");
}

namespace {

Term compile_rec(const Term& t, bool stack) {
  switch (t->kind) {
    case TermNode::Kind::Lam: {
      Term body = compile_rec(t->right, stack);
      Term abstracted = bracket_abstract(t->name, body);
      return stack ? mk_app(term_g(), abstracted) : abstracted;
    }
    case TermNode::Kind::App: {
      Term l = compile_rec(t->left, stack);
      Term r = compile_rec(t->right, stack);
      if (l.get() == t->left.get() && r.get() == t->right.get()) return t;
      return mk_app(l, r);
    }
    default:
      return t;
  }
}

}  // namespace

Term compile_lambda(const Term& t, bool stack_abstraction, bool require_closed) {
  if (require_closed) {
    auto fv = free_vars(t);
    if (!fv.empty())
      throw std::invalid_argument("compile_lambda: unbound variable '" +
                                  *fv.begin() + "'");
  }
  return compile_rec(t, stack_abstraction);
}

Term term_i() {
  static const Term t = mk_app(mk_comb(Comb::W), mk_comb(Comb::K));
  return t;
}

Term term_g() {
  static const Term t = mk_app(mk_comb(Comb::C), term_i());
  return t;
}

Term term_p() {
  static const Term t =
      mk_app(mk_app(mk_comb(Comb::B), mk_comb(Comb::C)), term_g());
  return t;
}

Term term_s_macro() {
  static const Term t = [] {
    Term x = mk_var("x"), y = mk_var("y"), z = mk_var("z");
    Term body = mk_app(mk_app(x, z), mk_app(y, z));
    return compile_lambda(mk_lam("x", mk_lam("y", mk_lam("z", body))));
  }();
  return t;
}

Term term_kappa() {
  static const Term t = [] {
    // kappa = h^x(lam* y. k (y x))
    Term inner = mk_app(mk_comb(Comb::K), mk_app(mk_var("y"), mk_var("x")));
    Term lam_star = mk_app(term_g(), bracket_abstract("y", inner));
    return bracket_abstract("x", lam_star);
  }();
  return t;
}

Term term_cc() {
  static const Term t = [] {
    // cc = lam* x. h^y(x (k_y . y))
    Term ky = mk_app(term_kappa(), mk_var("y"));
    Term body = mk_app(mk_var("x"), push_term(ky, mk_var("y")));
    Term inner = bracket_abstract("y", body);
    return mk_app(term_g(), bracket_abstract("x", inner));
  }();
  return t;
}

Term push_term(const Term& t, const Term& pi) {
  return mk_app(mk_app(term_p(), t), pi);
}

Term bullet_term(const Term& m, const Term& n) {
  return mk_app(mk_app(mk_comb(Comb::B), m), mk_app(term_p(), n));
}

Term continuation_term(const Term& pi) {
  return mk_app(term_kappa(), pi);
}

}  // namespace rzw
