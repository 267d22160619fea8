#include "ipj/model_io.hpp"

#include <map>
#include <regex>
#include <sstream>
#include <vector>

#include "ipj/error.hpp"
#include "ipj/syntax.hpp"
#include "syntax_detail.hpp"

namespace ipj {

namespace {

struct Line {
  std::size_t number;
  std::string text;
};

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

std::string strip_comment(const std::string& s) {
  auto h = s.find('#');
  return h == std::string::npos ? s : s.substr(0, h);
}

World world_ref(const EpistemicModel& m, const std::string& name, const Line& l) {
  try {
    return m.world(name);
  } catch (const Error&) {
    throw SyntaxError(ErrorKind::Model, "unknown world " + name, l.number, 1);
  }
}

Agent agent_of(const std::string& tag, const Line& l) {
  if (tag == "P") return Agent::Prover;
  if (tag == "V") return Agent::Verifier;
  throw SyntaxError(ErrorKind::Syntax, "agent must be P or V", l.number, 1);
}

void declare_atoms(EpistemicModel& m, const Formula& f) {
  for (const std::string& a : atoms_of(f)) m.declare_atom(a);
}

}  // namespace

ModelFile load_model(std::string_view text) {
  static const std::regex kHeader(R"(^\s*(worlds|R\[P\]|R\[V\]|val|evidence|U|mu|w0|atoms|pool|terms):(.*)$)");
  std::map<std::string, std::vector<Line>> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::size_t number = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++number;
    std::string line = strip_comment(raw);
    std::smatch m;
    if (std::regex_match(line, m, kHeader)) {
      current = m[1].str();
      if (sections.count(current) != 0)
        throw SyntaxError(ErrorKind::Syntax, "section " + current + " repeated", number, 1);
      sections[current];
      if (!blank(m[2].str())) sections[current].push_back({number, m[2].str()});
      continue;
    }
    if (blank(line)) continue;
    if (current.empty()) throw SyntaxError(ErrorKind::Syntax, "content before any section header", number, 1);
    sections[current].push_back({number, line});
  }
  auto section = [&](const std::string& name) -> const std::vector<Line>& {
    static const std::vector<Line> none;
    auto it = sections.find(name);
    return it == sections.end() ? none : it->second;
  };

  ModelFile out;
  EpistemicModel& model = out.quasi.model;
  for (const Line& l : section("worlds"))
    for (const std::string& w : words(l.text)) model.add_world(w);
  if (model.size() == 0) throw Error(ErrorKind::Model, "model has no worlds");

  for (Agent a : {Agent::Prover, Agent::Verifier}) {
    for (const Line& l : section(a == Agent::Prover ? "R[P]" : "R[V]")) {
      auto arrow = l.text.find("->");
      if (arrow == std::string::npos) throw SyntaxError(ErrorKind::Syntax, "expected 'w -> u'", l.number, 1);
      auto from = words(l.text.substr(0, arrow));
      auto to = words(l.text.substr(arrow + 2));
      if (from.size() != 1 || to.empty()) throw SyntaxError(ErrorKind::Syntax, "expected 'w -> u'", l.number, 1);
      World w = world_ref(model, from[0], l);
      for (const std::string& u : to) model.add_edge(a, w, world_ref(model, u, l));
    }
  }

  for (const Line& l : section("atoms"))
    for (const std::string& a : words(l.text)) model.declare_atom(a);

  for (const Line& l : section("val")) {
    auto colon = l.text.find(':');
    if (colon == std::string::npos) throw SyntaxError(ErrorKind::Syntax, "expected 'w : atoms'", l.number, 1);
    auto head = words(l.text.substr(0, colon));
    if (head.size() != 1) throw SyntaxError(ErrorKind::Syntax, "expected one world before ':'", l.number, 1);
    World w = world_ref(model, head[0], l);
    for (const std::string& a : words(l.text.substr(colon + 1))) model.set_true(w, a);
  }

  ParseOptions opts;
  for (const Line& l : section("evidence")) {
    std::istringstream ls(l.text);
    std::string wname, tag;
    ls >> wname >> tag;
    if (tag.size() != 3 || tag.front() != '[' || tag.back() != ']')
      throw SyntaxError(ErrorKind::Syntax, "expected 'w [P] term : formula'", l.number, 1);
    World w = world_ref(model, wname, l);
    Agent a = agent_of(tag.substr(1, 1), l);
    std::string rest;
    std::getline(ls, rest);
    detail::Cursor cur(rest, l.number - 1);
    Term t = detail::read_term(cur, opts);
    cur.expect(":");
    EFormula f = parse_eformula(cur.rest(), [&] {
      ParseOptions o;
      o.line_offset = l.number - 1;
      return o;
    }());
    declare_atoms(model, f);
    model.add_evidence(w, a, t, f);
    if (t.kind() == Term::Kind::Proto) out.terms.insert(t.inner());
  }

  for (const Line& l : section("pool")) {
    ParseOptions o;
    o.line_offset = l.number - 1;
    EFormula f = parse_eformula(l.text, o);
    declare_atoms(model, f);
    model.add_to_pool(f);
  }

  for (const Line& l : section("terms")) {
    ParseOptions o;
    o.line_offset = l.number - 1;
    out.terms.insert(parse_term(l.text, o));
  }

  if (auto d = model.relation_defect()) throw Error(ErrorKind::Model, *d);

  bool any = sections.count("U") || sections.count("mu") || sections.count("w0");
  if (!any) return out;
  out.has_measure = true;
  Quasimodel& q = out.quasi;
  for (const Line& l : section("U"))
    for (const std::string& w : words(l.text)) q.sample.push_back(world_ref(model, w, l));
  for (const Line& l : section("mu")) {
    auto eq = l.text.find('=');
    if (eq == std::string::npos) throw SyntaxError(ErrorKind::Syntax, "expected 'w = value'", l.number, 1);
    auto head = words(l.text.substr(0, eq));
    if (head.size() != 1) throw SyntaxError(ErrorKind::Syntax, "expected one world before '='", l.number, 1);
    World w = world_ref(model, head[0], l);
    if (q.mass.count(w) != 0) throw SyntaxError(ErrorKind::Model, "mass for " + head[0] + " given twice", l.number, 1);
    try {
      q.mass.emplace(w, parse_qeps(l.text.substr(eq + 1)));
    } catch (const SyntaxError&) {
      throw;
    } catch (const Error& e) {
      throw SyntaxError(e.kind(), e.what(), l.number, eq + 2);
    }
  }
  const auto& w0 = section("w0");
  if (w0.size() != 1 || words(w0[0].text).size() != 1) throw Error(ErrorKind::Model, "w0 must name exactly one world");
  q.w0 = world_ref(model, words(w0[0].text)[0], w0[0]);
  q.validate();
  return out;
}

std::string write_model(const Quasimodel& q, const std::set<Term>& terms) {
  const EpistemicModel& m = q.model;
  std::string out = "worlds:";
  for (World w = 0; w < m.size(); ++w) out += " " + m.name(w);
  out += "\n";
  for (Agent a : {Agent::Prover, Agent::Verifier}) {
    out += std::string("R[") + agent_letter(a) + "]:\n";
    for (World w = 0; w < m.size(); ++w) {
      auto succ = m.successors(a, w);
      if (succ.empty()) continue;
      out += m.name(w) + " ->";
      for (World u : succ) out += " " + m.name(u);
      out += "\n";
    }
  }
  std::set<std::string> unused = m.atoms();
  out += "val:\n";
  for (World w = 0; w < m.size(); ++w) {
    out += m.name(w) + " :";
    for (const std::string& a : m.true_atoms(w)) {
      out += " " + a;
      unused.erase(a);
    }
    out += "\n";
  }
  if (!unused.empty()) {
    out += "atoms:";
    for (const std::string& a : unused) out += " " + a;
    out += "\n";
  }
  out += "evidence:\n";
  for (const auto& e : m.evidence())
    out += m.name(e.world) + " [" + agent_letter(e.agent) + "] " + to_string(e.term) + " : " + to_string(e.formula) +
           "\n";
  if (!m.witness_pool().empty()) {
    out += "pool:\n";
    for (const EFormula& f : m.witness_pool()) out += to_string(f) + "\n";
  }
  if (!terms.empty()) {
    out += "terms:\n";
    for (const Term& t : terms) out += to_string(t) + "\n";
  }
  if (!q.sample.empty()) {
    out += "U:";
    for (World u : q.sample) out += " " + m.name(u);
    out += "\nmu:\n";
    for (World u : q.sample) out += m.name(u) + " = " + to_string(q.mass.at(u)) + "\n";
    out += "w0: " + m.name(q.w0) + "\n";
  }
  return out;
}

}  // namespace ipj
