#pragma once

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rzw {

// Combinatory/lambda term syntax. Terms are immutable trees with shared
// subterms; all operations build fresh spines and reuse unchanged children.

enum class Comb : unsigned char { B, C, K, W };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind : unsigned char { Comb, Var, Const, App, Lam } kind;
  Comb comb{};        // Kind::Comb
  std::string name;   // Var, Const, Lam binder
  Term left;          // App function
  Term right;         // App argument, Lam body
};

Term mk_comb(Comb c);
Term mk_var(std::string name);
Term mk_const(std::string name);
Term mk_app(Term f, Term a);
Term mk_lam(std::string binder, Term body);

// left-associated application f a1 a2 ... an
Term mk_apps(Term f, std::initializer_list<Term> args);

bool term_equal(const Term& a, const Term& b);
std::string print_term(const Term& t);

struct ParseError : std::runtime_error {
  size_t offset;
  ParseError(size_t off, const std::string& what)
      : std::runtime_error(what), offset(off) {}
};

// Grammar: identifiers [a-zA-Z][a-zA-Z0-9_]*, reserved leaves b c k w s i,
// juxtaposition (left assoc), parentheses, lambda `\x. M`, comments `# ...`.
// `s` and `i` are derived macros over the Curry basis, expanded at parse time.
// Identifiers in `constants` parse as adjoined constants, the rest as
// variables.
Term parse_term(std::string_view text,
                const std::set<std::string>& constants = {});

std::set<std::string> free_vars(const Term& t);
bool is_cl_pure(const Term& t);           // no lambda nodes
bool is_closed_cl(const Term& t);         // CL-pure and no variables

Term substitute(const Term& m, const std::string& x, const Term& n);

// The abstraction operator h^x. Requires a CL-pure term (variables and
// constants allowed); the result has no free occurrence of x.
Term bracket_abstract(const std::string& x, const Term& m);

// Eliminates lambda nodes innermost-first via bracket_abstract. With
// stack_abstraction every binder becomes g . h^x (the machine abstraction),
// otherwise plain h^x. With require_closed, free variables are an error.
Term compile_lambda(const Term& t, bool stack_abstraction = false,
                    bool require_closed = true);

// Fixed machine terms over the Curry basis.
Term term_i();       // wk
Term term_g();       // ci
Term term_p();       // bcg
Term term_s_macro(); // compile of \x.\y.\z. x z (y z)
Term term_kappa();   // h^x(lam* y. k (y x))
Term term_cc();      // lam* x. h^y(x (k_y . y))
Term push_term(const Term& t, const Term& pi);     // t . pi = p t pi
Term bullet_term(const Term& m, const Term& n);    // m * n = b m (p n)
Term continuation_term(const Term& pi);            // k_pi = kappa pi

}  // namespace rzw
