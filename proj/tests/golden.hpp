#pragma once

// Golden proof files and single-line mutants of them.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ipj/error.hpp"
#include "ipj/ispec.hpp"
#include "ipj/proofcheck.hpp"

namespace ipj::testgen {

inline std::string data_path(const std::string& name) { return std::string(IPJ_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Golden {
  std::string proof;
  std::string spec;  // empty for none
};

inline std::vector<Golden> goldens() {
  return {{"pnec.proof", ""}, {"c_instance.proof", "interaction.spec"}, {"corollary.proof", "interaction.spec"}};
}

/// Parses and checks; a thrown Error counts as a rejection.
inline bool accepts(const std::string& text, const std::string& spec_file) {
  try {
    InteractionSpec spec = spec_file.empty() ? InteractionSpec{} : load_spec(read_data(spec_file));
    Derivation d = parse_derivation(text, spec, false, file_loader(IPJ_TEST_DATA));
    return check_derivation(d).valid;
  } catch (const Error&) {
    return false;
  }
}

/// Each mutant corrupts exactly one proof line: negating its formula,
/// citing a line that does not precede it, or naming a wrong schema.
inline std::vector<std::string> mutants(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  auto join = [&](std::size_t at, const std::string& repl) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) out += (i == at ? repl : lines[i]) + "\n";
    return out;
  };
  std::vector<std::string> out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& l = lines[i];
    auto dot = l.find('.');
    auto semi = l.rfind(';');
    if (l.empty() || l[0] == '#' || dot == std::string::npos || semi == std::string::npos) continue;
    std::string index = l.substr(0, dot);
    std::string formula = l.substr(dot + 1, semi - dot - 1);
    std::string just = l.substr(semi + 1);
    out.push_back(join(i, index + ". ~(" + formula + ") ;" + just));
    std::istringstream js(just);
    std::string op;
    js >> op;
    if (op == "mp" || op == "pnec" || op == "pnorm" || op.rfind("nec", 0) == 0) {
      std::string self = op == "mp" ? index + " " + index : index;
      out.push_back(join(i, index + "." + formula + "; " + op + " " + self));
      out.push_back(join(i, index + "." + formula + "; ax k"));
    } else if (op == "ax") {
      std::string schema;
      js >> schema;
      out.push_back(join(i, index + "." + formula + "; ax " + (schema == "jt" ? "t" : "jt")));
    } else if (op == "axnec") {
      out.push_back(join(i, index + "." + formula + "; axnec zz[P]"));
    }
  }
  return out;
}

}  // namespace ipj::testgen
