#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rzw/opca.hpp"

namespace rzw {

// Downset realizability algebra over a finite OPCA. Downsets are Dset masks;
// a Family maps a finite index set to downsets.

struct Family {
  std::vector<Dset> vals;
  size_t size() const { return vals.size(); }
  Dset& operator[](size_t i) { return vals[i]; }
  Dset operator[](size_t i) const { return vals[i]; }
  bool operator==(const Family&) const = default;
};

// V => W = {a | forall b in V: ab defined and ab in W}; downward closed.
Dset arrow(const FiniteOpca& a, Dset v, Dset w);

struct AppDownResult {
  std::optional<Dset> value;               // downset closure of pointwise apps
  std::optional<std::pair<size_t, size_t>> offending;  // first undefined pair
};

// UV defined iff app total on U x V; value is the downset closure of images.
AppDownResult app_down(const FiniteOpca& a, Dset u, Dset v);

struct EntailResult {
  bool holds = false;
  Dset witness = 0;  // intersection over indices of arrow(P(x), Q(x))
};

EntailResult entails(const FiniteOpca& a, const PhiPolicy& phi,
                     const Family& p, const Family& q);

// Both directions.
bool interderivable(const FiniteOpca& a, const PhiPolicy& phi, const Family& p,
                    const Family& q);

using IndexMap = std::vector<size_t>;  // f: X -> Y by position

Family reindex(const IndexMap& f, const Family& over_y);
Family exists_along(const IndexMap& f, const Family& over_x, size_t y_size,
                    const FiniteOpca& a);
Family forall_along(const IndexMap& f, const Family& over_x, size_t y_size,
                    const FiniteOpca& a);

// Fibrewise Heyting operations in the combinator encoding:
//   X x Y = p X Y,  X + Y = l X | r Y,  X => Y = arrow.
struct FiberAlgebra {
  explicit FiberAlgebra(const FiniteOpca& a);
  const FiniteOpca& opca;
  Dset p_set;  // [[(x,y,z) -> z x y]]
  Dset l_set;  // [[(x,y,z) -> y x]]
  Dset r_set;  // [[(x,y,z) -> z x]]
  Dset t_set;  // [[(x,y) -> x]]
  Dset f_set;  // [[(x,y) -> y]]
  Dset i_set;  // [[x -> x]]

  std::optional<Dset> conj(Dset x, Dset y) const;  // p X Y
  std::optional<Dset> disj(Dset x, Dset y) const;  // l X | r Y
};

// ----- many-sorted first-order formulas over a model -----

struct Model;

struct TermExpr;
using TermExprP = std::shared_ptr<const TermExpr>;

struct TermExpr {
  enum class Kind { Var, Fun, AppOp } kind;
  std::string name;       // Var name or Fun name
  TermExprP arg;          // Fun argument
  TermExprP lhs, rhs;     // AppOp (sort A only)
};

TermExprP te_var(std::string name);
TermExprP te_fun(std::string fun, TermExprP arg);
TermExprP te_app(TermExprP l, TermExprP r);

struct Formula;
using FormulaP = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    Top, Bot, Eq, Atom, And, Or, Imp, Forall, Exists
  } kind;
  TermExprP t1, t2;                 // Eq
  std::string atom;                 // Atom predicate name
  std::vector<TermExprP> args;      // Atom arguments
  FormulaP lhs, rhs;                // And/Or/Imp
  std::string var, sort;            // quantifiers
  FormulaP body;
};

FormulaP f_top();
FormulaP f_bot();
FormulaP f_eq(TermExprP a, TermExprP b);
FormulaP f_atom(std::string pred, std::vector<TermExprP> args);
FormulaP f_and(FormulaP a, FormulaP b);
FormulaP f_or(FormulaP a, FormulaP b);
FormulaP f_imp(FormulaP a, FormulaP b);
FormulaP f_not(FormulaP a);  // sugar: a -> F
FormulaP f_forall(std::string var, std::string sort, FormulaP body);
FormulaP f_exists(std::string var, std::string sort, FormulaP body);

std::string print_formula(const FormulaP& f);
FormulaP parse_formula(const std::string& text);

// A predicate over sorts: realizer-valued (a downset per index tuple) or
// crisp (full carrier / empty, from a plain subset).
struct PredDef {
  std::vector<std::string> sorts;
  std::map<std::vector<size_t>, Dset> values;  // missing tuple -> empty
};

struct FunDef {
  std::string from, to;
  std::vector<size_t> map;
};

// The sort named "A" is the carrier. Built-in predicates over it:
//   C(x)   - the canonical filter family, C(a) = down(a)
//   D(x,y) - crisp domain-of-application predicate
struct Model {
  FiniteOpca opca;
  PhiPolicy phi;
  std::map<std::string, std::vector<std::string>> sorts;
  std::map<std::string, PredDef> preds;
  std::map<std::string, FunDef> funs;

  size_t sort_size(const std::string& s) const;
  Dset t_set() const;  // cached [[ (x,y) -> x ]]
  Dset f_set() const;

  mutable std::optional<Dset> t_cache, f_cache;
};

struct SortError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// variable -> (sort, element index)
using Env = std::map<std::string, std::pair<std::string, size_t>>;

// Realizer downset of f under env (all free variables bound).
Dset eval_formula(const Model& m, const FormulaP& f, const Env& env = {});

bool is_valid(const Model& m, const FormulaP& sentence);

// ----- axiom schema instances -----

struct MctData {
  size_t z_size = 1;
  std::vector<Dset> y;                 // Y(.,z): a downset of A per z
  std::vector<std::vector<Dset>> x;    // X(.,y,z): downset per (y in A, z)
};

struct UpData {
  std::string y_sort;
  std::vector<Dset> x;                 // X(.,y): downset of A per y in Y
  std::vector<size_t> g;               // g : Y -> Z
  size_t z_size = 1;
};

// Registers the needed data predicates on the model and returns the formula.
FormulaP schema_mct(Model& m, const MctData& d);
FormulaP schema_up(Model& m, const UpData& d);
FormulaP schema_iu(Model& m, Dset u);

}  // namespace rzw
