#pragma once

#include <functional>
#include <map>
#include <string>

#include "rzw/assembly.hpp"
#include "rzw/rtripos.hpp"

namespace rzw {

struct ModelFile {
  Model model;
  std::map<std::string, Assembly> assemblies;
};

struct ModelFileReport {
  bool ok = false;
  std::optional<ModelFile> file;
  std::vector<std::string> errors;
};

// Format, one declaration per line ('#' comments):
//   use opca <path>
//   sort X = x1 x2
//   pred P : X = x1 {e t} ; x2 {}
//   fun  g : X -> Y = x1 y1 ; x2 y1
//   asm  N = x1 {e t} ; x2 {e}
// The loader maps an opca path to its file contents.
ModelFileReport parse_model_file(
    const std::string& text,
    const std::function<std::optional<std::string>(const std::string&)>&
        loader);

}  // namespace rzw
