#include "rzw/modelfile.hpp"

#include <sstream>

namespace rzw {

namespace {

// splits "x1 {e t} ; x2 {}" into (key, braced list) pairs
struct ClauseParser {
  std::istringstream in;
  explicit ClauseParser(const std::string& s) : in(s) {}

  std::optional<std::pair<std::vector<std::string>, std::vector<std::string>>>
  next() {
    std::vector<std::string> keys, vals;
    std::string w;
    bool in_braces = false, seen = false;
    while (in >> w) {
      seen = true;
      if (w == ";") break;
      if (!in_braces && w.front() == '{') {
        in_braces = true;
        w.erase(0, 1);
      }
      if (in_braces) {
        bool close = !w.empty() && w.back() == '}';
        if (close) w.pop_back();
        if (!w.empty()) vals.push_back(w);
        if (close) in_braces = false;
      } else if (!w.empty()) {
        keys.push_back(w);
      }
    }
    if (!seen) return std::nullopt;
    return std::make_pair(keys, vals);
  }
};

}  // namespace

ModelFileReport parse_model_file(
    const std::string& text,
    const std::function<std::optional<std::string>(const std::string&)>&
        loader) {
  ModelFileReport rep;
  ModelFile mf;
  bool have_opca = false;
  std::istringstream in(text);
  std::string line;
  size_t lineno = 0;
  auto err = [&](const std::string& why) {
    rep.errors.push_back("line " + std::to_string(lineno) + ": " + why);
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "use") {
      std::string what, path;
      ls >> what >> path;
      if (what != "opca") { err("expected 'use opca <path>'"); continue; }
      auto contents = loader(path);
      if (!contents) { err("cannot read opca file '" + path + "'"); continue; }
      auto orep = parse_opca_file(*contents);
      if (!orep.ok) {
        for (const auto& v : orep.violations) err("opca: " + v);
        continue;
      }
      mf.model.opca = *orep.opca;
      mf.model.phi = mf.model.opca.phi;
      have_opca = true;
    } else if (kw == "sort") {
      std::string name, eq, w;
      ls >> name >> eq;
      if (eq != "=") { err("expected '='"); continue; }
      std::vector<std::string> elems;
      while (ls >> w) elems.push_back(w);
      if (name == "A") { err("sort name 'A' is reserved"); continue; }
      mf.model.sorts[name] = elems;
    } else if (kw == "pred") {
      if (!have_opca) { err("pred before use opca"); continue; }
      std::string name, colon, sortname, eq, rest;
      ls >> name >> colon >> sortname >> eq;
      if (colon != ":" || eq != "=") { err("expected 'pred P : S = ...'"); continue; }
      std::getline(ls, rest);
      if (name == "C" || name == "D") { err("predicate name reserved"); continue; }
      PredDef pd;
      pd.sorts = {sortname};
      size_t ssize = 0;
      try {
        ssize = mf.model.sort_size(sortname);
      } catch (const SortError& e) { err(e.what()); continue; }
      ClauseParser cp(rest);
      while (auto clause = cp.next()) {
        if (clause->first.size() != 1) { err("pred clause needs one index"); continue; }
        size_t idx = ssize;
        if (sortname == "A") {
          auto i = mf.model.opca.index_of(clause->first[0]);
          if (i) idx = *i;
        } else {
          const auto& elems = mf.model.sorts[sortname];
          for (size_t i = 0; i < elems.size(); ++i)
            if (elems[i] == clause->first[0]) idx = i;
        }
        if (idx >= ssize) { err("unknown index '" + clause->first[0] + "'"); continue; }
        Dset d = 0;
        for (const auto& e : clause->second) {
          auto i = mf.model.opca.index_of(e);
          if (!i) { err("unknown carrier element '" + e + "'"); continue; }
          d |= Dset{1} << *i;
        }
        d = mf.model.opca.down_closure(d);
        pd.values[{idx}] = d;
      }
      mf.model.preds[name] = std::move(pd);
    } else if (kw == "fun") {
      std::string name, colon, from, arr, to, eq, rest;
      ls >> name >> colon >> from >> arr >> to >> eq;
      if (colon != ":" || arr != "->" || eq != "=") {
        err("expected 'fun g : X -> Y = ...'");
        continue;
      }
      std::getline(ls, rest);
      size_t fsize = 0, tsize = 0;
      try {
        fsize = mf.model.sort_size(from);
        tsize = mf.model.sort_size(to);
      } catch (const SortError& e) { err(e.what()); continue; }
      auto lookup = [&](const std::string& s, const std::string& sortn,
                        size_t ssize) -> std::optional<size_t> {
        if (sortn == "A") return mf.model.opca.index_of(s);
        const auto& elems = mf.model.sorts[sortn];
        for (size_t i = 0; i < ssize; ++i)
          if (elems[i] == s) return i;
        return std::nullopt;
      };
      FunDef fd;
      fd.from = from;
      fd.to = to;
      fd.map.assign(fsize, 0);
      std::vector<bool> got(fsize, false);
      std::istringstream cs(rest);
      std::string xa, xb;
      while (cs >> xa) {
        if (xa == ";") continue;
        if (!(cs >> xb)) { err("fun clause needs a pair"); break; }
        auto i = lookup(xa, from, fsize);
        auto j = lookup(xb, to, tsize);
        if (!i || !j) { err("unknown element in fun clause"); continue; }
        fd.map[*i] = *j;
        got[*i] = true;
      }
      for (size_t i = 0; i < fsize; ++i)
        if (!got[i]) err("fun '" + name + "' missing value at index " +
                         std::to_string(i));
      mf.model.funs[name] = std::move(fd);
    } else if (kw == "asm") {
      if (!have_opca) { err("asm before use opca"); continue; }
      std::string name, eq, rest;
      ls >> name >> eq;
      if (eq != "=") { err("expected 'asm N = ...'"); continue; }
      std::getline(ls, rest);
      Assembly asmb;
      ClauseParser cp(rest);
      while (auto clause = cp.next()) {
        if (clause->first.size() != 1) { err("asm clause needs one element"); continue; }
        asmb.elems.push_back(clause->first[0]);
        Dset d = 0;
        for (const auto& e : clause->second) {
          auto i = mf.model.opca.index_of(e);
          if (!i) { err("unknown carrier element '" + e + "'"); continue; }
          d |= Dset{1} << *i;
        }
        asmb.e.vals.push_back(mf.model.opca.down_closure(d));
      }
      if (!assembly_ok(mf.model.opca, asmb))
        err("assembly '" + name + "' has an uninhabited realizer set");
      mf.assemblies[name] = std::move(asmb);
    } else {
      err("unknown keyword '" + kw + "'");
    }
  }
  if (!have_opca) rep.errors.push_back("no 'use opca' line");
  rep.ok = rep.errors.empty();
  if (rep.ok) rep.file = std::move(mf);
  return rep;
}

}  // namespace rzw
