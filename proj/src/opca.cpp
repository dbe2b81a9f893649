#include "rzw/opca.hpp"

#include <sstream>
#include <stdexcept>

namespace rzw {

FiniteOpca::FiniteOpca(std::vector<std::string> names, OpcaMode mode)
    : names_(std::move(names)), mode_(mode) {
  if (names_.size() > kMaxCarrier)
    throw std::invalid_argument("carrier too large");
  le_.assign(names_.size(), 0);
  for (size_t i = 0; i < names_.size(); ++i) le_[i] |= Dset{1} << i;
  app_.assign(names_.size() * names_.size(), -1);
}

std::optional<size_t> FiniteOpca::index_of(const std::string& name) const {
  for (size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

void FiniteOpca::add_le(size_t a, size_t b) { le_[a] |= Dset{1} << b; }

void FiniteOpca::set_app(size_t a, size_t b, size_t r) {
  app_[a * size() + b] = static_cast<int16_t>(r);
}

void FiniteOpca::close() {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t a = 0; a < size(); ++a)
      for (size_t b = 0; b < size(); ++b)
        if (le(a, b) && (le_[b] & ~le_[a])) {
          le_[a] |= le_[b];
          changed = true;
        }
  }
}

Dset FiniteOpca::down_closure(Dset s) const {
  Dset out = 0;
  for (size_t a = 0; a < size(); ++a)
    for (size_t b = 0; b < size(); ++b)
      if ((s >> b & 1) && le(a, b)) out |= Dset{1} << a;
  return out;
}

Dset FiniteOpca::principal_down(size_t a) const {
  return down_closure(Dset{1} << a);
}

bool FiniteOpca::is_upset(Dset s) const { return up_closure(s) == s; }

Dset FiniteOpca::up_closure(Dset s) const {
  Dset out = 0;
  for (size_t a = 0; a < size(); ++a)
    if (s >> a & 1) out |= le_[a];
  return out;
}

std::vector<Dset> FiniteOpca::all_downsets() const {
  std::vector<Dset> out;
  for (Dset s = 0; s <= full(); ++s)
    if (is_downset(s)) out.push_back(s);
  return out;
}

OpcaReport validate_opca(FiniteOpca a) {
  OpcaReport rep;
  a.close();
  const size_t n = a.size();
  for (size_t x = 0; x < n; ++x)
    for (size_t x2 = 0; x2 < n; ++x2) {
      if (!a.le(x, x2)) continue;
      for (size_t y = 0; y < n; ++y) {
        if (a.mode() == OpcaMode::Lazy) {
          auto up = a.app(x2, y);
          if (!up) continue;
          auto lo = a.app(x, y);
          if (!lo || !a.le(*lo, *up))
            rep.violations.push_back(
                "MonotonicityViolation(" + a.name(x) + "," + a.name(x2) + "," +
                a.name(y) + "): " + a.name(x2) + " " + a.name(y) +
                " defined but law fails");
        } else {
          for (size_t y2 = 0; y2 < n; ++y2) {
            if (!a.le(y, y2)) continue;
            auto up = a.app(x2, y2);
            if (!up) continue;
            auto lo = a.app(x, y);
            if (!lo || !a.le(*lo, *up))
              rep.violations.push_back(
                  "MonotonicityViolation(" + a.name(x) + "," + a.name(x2) +
                  "," + a.name(y) + "," + a.name(y2) + ")");
          }
        }
      }
    }
  if (a.filter_set) {
    a.filter_set = a.up_closure(a.filter_set);
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y)
        if ((a.filter_set >> x & 1) && (a.filter_set >> y & 1)) {
          auto r = a.app(x, y);
          if (r && !(a.filter_set >> *r & 1))
            rep.violations.push_back("FilterNotApplicationClosed(" +
                                     a.name(x) + "," + a.name(y) + ")");
        }
  }
  rep.ok = rep.violations.empty();
  if (rep.ok) rep.opca = std::move(a);
  return rep;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string w;
  while (ss >> w) out.push_back(w);
  return out;
}

}  // namespace

OpcaReport parse_opca_file(const std::string& text) {
  OpcaReport rep;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> names;
  std::vector<std::array<std::string, 2>> le_lines;
  std::vector<std::array<std::string, 3>> app_lines;
  OpcaMode mode = OpcaMode::Standard;
  std::vector<std::string> filter_names;
  std::string phi_kind = "inhabited";
  std::vector<std::vector<std::string>> phi_args;

  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto words = split_ws(line);
    if (words.empty()) continue;
    const std::string& kw = words[0];
    auto bad = [&](const std::string& why) {
      rep.violations.push_back("line " + std::to_string(lineno) + ": " + why);
    };
    if (kw == "elements") {
      names.assign(words.begin() + 1, words.end());
    } else if (kw == "le") {
      if (words.size() != 3) { bad("le needs two elements"); continue; }
      le_lines.push_back({words[1], words[2]});
    } else if (kw == "app") {
      if (words.size() != 4) { bad("app needs three elements"); continue; }
      app_lines.push_back({words[1], words[2], words[3]});
    } else if (kw == "mode") {
      if (words.size() != 2 || (words[1] != "standard" && words[1] != "lazy")) {
        bad("mode must be standard or lazy");
        continue;
      }
      mode = words[1] == "lazy" ? OpcaMode::Lazy : OpcaMode::Standard;
    } else if (kw == "filter") {
      filter_names.assign(words.begin() + 1, words.end());
    } else if (kw == "phi") {
      if (words.size() < 2) { bad("phi needs a kind"); continue; }
      phi_kind = words[1];
      phi_args.clear();
      if (phi_kind == "principal") {
        // remaining words are downsets separated by ';'
        std::vector<std::string> cur;
        for (size_t i = 2; i < words.size(); ++i) {
          if (words[i] == ";") {
            phi_args.push_back(cur);
            cur.clear();
          } else {
            cur.push_back(words[i]);
          }
        }
        phi_args.push_back(cur);
      } else if (phi_kind == "intersects") {
        phi_args.emplace_back(words.begin() + 2, words.end());
      }
    } else {
      bad("unknown keyword '" + kw + "'");
    }
  }
  if (names.empty()) rep.violations.push_back("no elements declared");
  if (!rep.violations.empty()) return rep;

  FiniteOpca a(names, mode);
  auto idx = [&](const std::string& n) -> std::optional<size_t> {
    auto i = a.index_of(n);
    if (!i) rep.violations.push_back("UnknownElement '" + n + "'");
    return i;
  };
  for (const auto& l : le_lines) {
    auto x = idx(l[0]), y = idx(l[1]);
    if (x && y) a.add_le(*x, *y);
  }
  for (const auto& l : app_lines) {
    auto x = idx(l[0]), y = idx(l[1]), r = idx(l[2]);
    if (x && y && r) a.set_app(*x, *y, *r);
  }
  for (const auto& f : filter_names) {
    auto x = idx(f);
    if (x) a.filter_set |= Dset{1} << *x;
  }
  if (!rep.violations.empty()) return rep;
  a.close();

  auto parse_dset = [&](const std::vector<std::string>& elems) {
    Dset s = 0;
    for (const auto& e : elems) {
      auto x = idx(e);
      if (x) s |= Dset{1} << *x;
    }
    return a.down_closure(s);
  };
  if (phi_kind == "inhabited") {
    a.phi.kind = PhiPolicy::Kind::Inhabited;
  } else if (phi_kind == "intersects") {
    a.phi.kind = PhiPolicy::Kind::Intersects;
    Dset f = phi_args.empty() ? a.filter_set : parse_dset(phi_args[0]);
    if (!f && !a.filter_set)
      rep.violations.push_back("phi intersects needs a filter");
    a.phi.filter = f ? f : a.filter_set;
  } else if (phi_kind == "principal") {
    a.phi.kind = PhiPolicy::Kind::PrincipalFamily;
    for (const auto& g : phi_args) a.phi.generators.push_back(parse_dset(g));
  } else {
    rep.violations.push_back("unknown phi kind '" + phi_kind + "'");
  }
  if (!rep.violations.empty()) return rep;
  return validate_opca(std::move(a));
}

std::string format_opca_file(const FiniteOpca& a) {
  std::ostringstream out;
  out << "elements";
  for (size_t i = 0; i < a.size(); ++i) out << ' ' << a.name(i);
  out << '\n';
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (i != j && a.le(i, j)) out << "le " << a.name(i) << ' ' << a.name(j) << '\n';
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (auto r = a.app(i, j))
        out << "app " << a.name(i) << ' ' << a.name(j) << ' ' << a.name(*r)
            << '\n';
  out << "mode " << (a.mode() == OpcaMode::Lazy ? "lazy" : "standard") << '\n';
  return out.str();
}

PolyExpr PolyExpr::proj(size_t arity, size_t index) {
  if (index >= arity) throw std::invalid_argument("projection out of range");
  PolyExpr e;
  e.arity_ = arity;
  auto n = std::make_shared<Node>();
  n->proj = static_cast<int>(index);
  e.root_ = n;
  return e;
}

PolyExpr PolyExpr::apply(const PolyExpr& f, const PolyExpr& g) {
  if (f.arity_ != g.arity_)
    throw std::invalid_argument("arity mismatch in PolyExpr::apply");
  PolyExpr e;
  e.arity_ = f.arity_;
  auto n = std::make_shared<Node>();
  n->l = f.root_;
  n->r = g.root_;
  e.root_ = n;
  return e;
}

namespace {

std::optional<size_t> eval_node(const FiniteOpca& a, const void* raw,
                                std::span<const size_t> args);

}  // namespace

std::optional<size_t> PolyExpr::eval(const FiniteOpca& a,
                                     std::span<const size_t> args) const {
  if (args.size() != arity_)
    throw std::invalid_argument("PolyExpr::eval arity mismatch");
  struct Rec {
    const FiniteOpca& a;
    std::span<const size_t> args;
    std::optional<size_t> go(const Node* n) {
      if (n->proj >= 0) return args[static_cast<size_t>(n->proj)];
      auto l = go(n->l.get());
      if (!l) return std::nullopt;
      auto r = go(n->r.get());
      if (!r) return std::nullopt;
      return a.app(*l, *r);
    }
  } rec{a, args};
  return rec.go(root_.get());
}

Dset realizer_object(const FiniteOpca& a, const PolyExpr& f) {
  const size_t n = a.size();
  const size_t arity = f.arity();
  Dset out = 0;
  std::vector<size_t> tuple(arity, 0);
  for (size_t r = 0; r < n; ++r) {
    bool good = true;
    // every prefix application defined on all tuples
    std::vector<size_t> prefix(arity > 0 ? arity - 1 : 0, 0);
    if (arity >= 1) {
      bool more = true;
      while (more && good) {
        size_t cur = r;
        for (size_t i = 0; i + 1 < arity && good; ++i) {
          auto next = a.app(cur, prefix[i]);
          if (!next) good = false;
          else cur = *next;
        }
        // advance odometer over A^(arity-1)
        more = false;
        for (size_t i = 0; i < prefix.size(); ++i) {
          if (++prefix[i] < n) { more = true; break; }
          prefix[i] = 0;
        }
        if (prefix.empty()) break;
      }
    }
    if (!good) continue;
    // on dom f: full application defined and below f
    std::fill(tuple.begin(), tuple.end(), 0);
    bool more = true;
    while (more && good) {
      auto fv = f.eval(a, tuple);
      if (fv) {
        size_t cur = r;
        for (size_t i = 0; i < arity && good; ++i) {
          auto next = a.app(cur, tuple[i]);
          if (!next) good = false;
          else cur = *next;
        }
        if (good && !a.le(cur, *fv)) good = false;
      }
      more = false;
      for (size_t i = 0; i < tuple.size(); ++i) {
        if (++tuple[i] < n) { more = true; break; }
        tuple[i] = 0;
      }
      if (tuple.empty()) break;
    }
    if (good) out |= Dset{1} << r;
  }
  return out;
}

CompletenessReport check_completeness(const FiniteOpca& a,
                                      const PhiPolicy& phi) {
  CompletenessReport rep;
  PolyExpr k = PolyExpr::proj(2, 0);
  // s(x,y,z) = xz(yz)
  PolyExpr x = PolyExpr::proj(3, 0), y = PolyExpr::proj(3, 1),
           z = PolyExpr::proj(3, 2);
  PolyExpr s = PolyExpr::apply(PolyExpr::apply(x, z), PolyExpr::apply(y, z));
  rep.k_realizers = realizer_object(a, k);
  rep.s_realizers = realizer_object(a, s);
  rep.k_in_phi = phi.contains(rep.k_realizers);
  rep.s_in_phi = phi.contains(rep.s_realizers);
  rep.complete = rep.k_in_phi && rep.s_in_phi;
  rep.degenerate = phi.contains(0);
  return rep;
}

}  // namespace rzw
