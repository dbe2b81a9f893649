#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rzw/reduce.hpp"
#include "rzw/term.hpp"

namespace rzw {

// Subsets of a finite carrier are bit masks (element i = bit i).
using Dset = std::uint64_t;

constexpr size_t kMaxCarrier = 62;

enum class OpcaMode : unsigned char { Standard, Lazy };

// An external filter policy: decides which downsets count as valid.
struct PhiPolicy {
  enum class Kind { Inhabited, Intersects, PrincipalFamily } kind =
      Kind::Inhabited;
  Dset filter = 0;                  // Intersects
  std::vector<Dset> generators;     // PrincipalFamily: U in phi iff some g <= U

  bool contains(Dset u) const {
    switch (kind) {
      case Kind::Inhabited: return u != 0;
      case Kind::Intersects: return (u & filter) != 0;
      case Kind::PrincipalFamily:
        for (Dset g : generators)
          if ((g & ~u) == 0) return true;
        return false;
    }
    return false;
  }
};

// Finite order partial applicative structure. The preorder is stored as its
// reflexive-transitive closure; application is a table with -1 for undefined.
class FiniteOpca {
 public:
  FiniteOpca() = default;
  FiniteOpca(std::vector<std::string> names, OpcaMode mode);

  size_t size() const { return names_.size(); }
  const std::string& name(size_t i) const { return names_[i]; }
  std::optional<size_t> index_of(const std::string& name) const;
  OpcaMode mode() const { return mode_; }

  void add_le(size_t a, size_t b);   // order generator; closure via close()
  void set_app(size_t a, size_t b, size_t r);
  void close();                      // reflexive-transitive closure

  bool le(size_t a, size_t b) const { return (le_[a] >> b) & 1; }
  std::optional<size_t> app(size_t a, size_t b) const {
    int16_t r = app_[a * size() + b];
    if (r < 0) return std::nullopt;
    return static_cast<size_t>(r);
  }

  Dset full() const { return (Dset{1} << size()) - 1; }
  Dset down_closure(Dset s) const;
  bool is_downset(Dset s) const { return down_closure(s) == s; }
  Dset principal_down(size_t a) const;  // {a' | a' <= a}
  bool is_upset(Dset s) const;
  Dset up_closure(Dset s) const;

  // All downsets of the carrier, by increasing mask.
  std::vector<Dset> all_downsets() const;

  // Internal filter (upward + application closed); 0 when none given.
  Dset filter_set = 0;
  PhiPolicy phi;

 private:
  std::vector<std::string> names_;
  std::vector<Dset> le_;            // row a: bits of {b | a <= b}
  std::vector<int16_t> app_;
  OpcaMode mode_ = OpcaMode::Standard;
};

struct OpcaReport {
  bool ok = false;
  std::optional<FiniteOpca> opca;
  std::vector<std::string> violations;
};

// Checks the mode-appropriate monotonicity law exhaustively plus filter and
// phi closure; violations are listed per offending tuple.
OpcaReport validate_opca(FiniteOpca candidate);

// Parses the line-oriented OPCA file format and validates the result.
OpcaReport parse_opca_file(const std::string& text);
std::string format_opca_file(const FiniteOpca& a);

// Partial combinatory functions as expression trees over projections.
class PolyExpr {
 public:
  static PolyExpr proj(size_t arity, size_t index);
  static PolyExpr apply(const PolyExpr& f, const PolyExpr& g);

  size_t arity() const { return arity_; }
  std::optional<size_t> eval(const FiniteOpca& a,
                             std::span<const size_t> args) const;

 private:
  struct Node {
    int proj = -1;
    std::shared_ptr<const Node> l, r;
  };
  size_t arity_ = 0;
  std::shared_ptr<const Node> root_;
};

// The object of realizers [[f]]: every prefix application defined on all
// tuples, and r y... defined and <= f(y...) on dom f. Downward closed.
Dset realizer_object(const FiniteOpca& a, const PolyExpr& f);

struct CompletenessReport {
  Dset k_realizers = 0;
  Dset s_realizers = 0;
  bool k_in_phi = false;
  bool s_in_phi = false;
  bool complete = false;
  bool degenerate = false;  // empty downset accepted by phi
};

// Feferman basis check: phi contains [[k]] and [[s]].
CompletenessReport check_completeness(const FiniteOpca& a,
                                      const PhiPolicy& phi);

// The symbolic CT model: closed CL terms, juxtaposition, head-chain order.
struct CtModel {
  size_t fuel = 10000;
  bool le(const Term& m, const Term& n) const {
    return chain_reaches(m, n, fuel);
  }
  Term app(const Term& m, const Term& n) const { return mk_app(m, n); }
};

}  // namespace rzw
