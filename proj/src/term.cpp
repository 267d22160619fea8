#include "ipj/term.hpp"

#include <optional>
#include <stdexcept>

namespace ipj {

namespace detail {

struct TermNode {
  Term::Kind kind;
  std::string name;
  std::optional<Term> left;
  std::optional<Term> right;
  Complexity complexity = Complexity::finite(0);
  bool protocol_free = true;
  std::size_t size = 1;
};

}  // namespace detail

using detail::TermNode;

Term Term::constant(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = Kind::Constant;
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::variable(std::string name) {
  auto n = std::make_shared<TermNode>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  return Term(std::move(n));
}

namespace {

std::shared_ptr<TermNode> binary(Term::Kind kind, Term l, Term r) {
  auto n = std::make_shared<TermNode>();
  n->kind = kind;
  n->protocol_free = l.is_protocol_free() && r.is_protocol_free();
  n->size = 1 + l.size() + r.size();
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

}  // namespace

Term Term::app(Term left, Term right) { return Term(binary(Kind::App, std::move(left), std::move(right))); }
Term Term::sum(Term left, Term right) { return Term(binary(Kind::Sum, std::move(left), std::move(right))); }

Term Term::bang(Term inner) {
  auto n = std::make_shared<TermNode>();
  n->kind = Kind::Bang;
  n->protocol_free = inner.is_protocol_free();
  n->size = 1 + inner.size();
  n->left = std::move(inner);
  return Term(std::move(n));
}

Term Term::proto(Complexity complexity, Term inner) {
  auto n = std::make_shared<TermNode>();
  n->kind = Kind::Proto;
  n->complexity = complexity;
  n->protocol_free = false;
  n->size = 1 + inner.size();
  n->left = std::move(inner);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }

const std::string& Term::name() const { return node_->name; }

const Term& Term::left() const {
  if (!node_->right) throw std::logic_error("Term::left on non-binary term");
  return *node_->left;
}

const Term& Term::right() const {
  if (!node_->right) throw std::logic_error("Term::right on non-binary term");
  return *node_->right;
}

const Term& Term::inner() const {
  if (node_->kind != Kind::Bang && node_->kind != Kind::Proto) throw std::logic_error("Term::inner on non-unary term");
  return *node_->left;
}

Complexity Term::complexity() const { return node_->complexity; }

bool Term::is_protocol_free() const { return node_->protocol_free; }

std::size_t Term::size() const { return node_->size; }

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Term::Kind::Constant:
    case Term::Kind::Variable:
      return a.name() <=> b.name();
    case Term::Kind::App:
    case Term::Kind::Sum:
      if (auto c = a.left() <=> b.left(); c != 0) return c;
      return a.right() <=> b.right();
    case Term::Kind::Bang:
      return a.inner() <=> b.inner();
    case Term::Kind::Proto:
      if (auto c = a.complexity() <=> b.complexity(); c != 0) return c;
      return a.inner() <=> b.inner();
  }
  return std::strong_ordering::equal;
}

void collect_subterms(const Term& t, std::set<Term>& out) {
  if (!out.insert(t).second) return;
  switch (t.kind()) {
    case Term::Kind::App:
    case Term::Kind::Sum:
      collect_subterms(t.left(), out);
      collect_subterms(t.right(), out);
      break;
    case Term::Kind::Bang:
    case Term::Kind::Proto:
      collect_subterms(t.inner(), out);
      break;
    default:
      break;
  }
}

}  // namespace ipj
