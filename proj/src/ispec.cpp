#include "ipj/ispec.hpp"

#include <limits>
#include <regex>
#include <sstream>

#include <gmpxx.h>

#include "ipj/error.hpp"
#include "ipj/syntax.hpp"

namespace ipj {

ThresholdFn ThresholdFn::constant(std::uint64_t m) {
  ThresholdFn f;
  f.kind_ = Kind::Constant;
  f.constant_ = m;
  return f;
}

ThresholdFn ThresholdFn::table(std::vector<std::pair<std::uint64_t, std::uint64_t>> entries,
                               std::optional<std::uint64_t> fallback) {
  ThresholdFn f;
  f.kind_ = Kind::Table;
  for (const auto& [k, m] : entries)
    if (!f.table_.emplace(k, m).second) throw Error(ErrorKind::Config, "table repeats k = " + std::to_string(k));
  f.fallback_ = fallback;
  return f;
}

ThresholdFn ThresholdFn::polynomial(std::vector<std::uint64_t> coeffs) {
  ThresholdFn f;
  f.kind_ = Kind::Polynomial;
  f.coeffs_ = std::move(coeffs);
  return f;
}

std::optional<std::uint64_t> ThresholdFn::at(std::uint64_t k) const {
  switch (kind_) {
    case Kind::Constant: return constant_;
    case Kind::Table: {
      auto it = table_.find(k);
      if (it != table_.end()) return it->second;
      return fallback_;
    }
    case Kind::Polynomial: {
      mpz_class sum = 0;
      mpz_class power = 1;
      mpz_class kk(std::to_string(k));
      for (auto c : coeffs_) {
        sum += mpz_class(std::to_string(c)) * power;
        power *= kk;
      }
      mpz_class cap(std::to_string(std::numeric_limits<std::uint64_t>::max()));
      if (sum > cap) return std::numeric_limits<std::uint64_t>::max();
      return std::stoull(sum.get_str());
    }
  }
  return std::nullopt;
}

std::string ThresholdFn::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Constant: out << "const " << constant_; break;
    case Kind::Polynomial:
      out << "poly";
      for (auto c : coeffs_) out << ' ' << c;
      break;
    case Kind::Table:
      out << "table";
      for (const auto& [k, m] : table_) out << ' ' << k << " -> " << m;
      if (fallback_) out << " default " << *fallback_;
      break;
  }
  return out.str();
}

void InteractionSpec::add(const EFormula& alpha, ThresholdFn fn) {
  std::string key = to_string(alpha);
  if (!entries_.emplace(key, Entry{alpha, std::move(fn)}).second)
    throw Error(ErrorKind::DuplicateEntry, "duplicate interaction entry for " + key);
}

const ThresholdFn* InteractionSpec::find(const EFormula& alpha) const {
  auto it = entries_.find(to_string(alpha));
  return it == entries_.end() ? nullptr : &it->second.threshold;
}

std::optional<std::uint64_t> InteractionSpec::threshold(const EFormula& alpha, std::uint64_t k) const {
  const ThresholdFn* fn = find(alpha);
  if (fn == nullptr) return std::nullopt;
  return fn->at(k);
}

bool InteractionSpec::member(const EFormula& alpha, std::uint64_t m, std::uint64_t k) const {
  auto t = threshold(alpha, k);
  return t.has_value() && m >= *t;
}

bool InteractionSpec::in_I(const EFormula& alpha) const {
  const ThresholdFn* fn = find(alpha);
  return fn != nullptr && fn->is_total();
}

std::vector<InteractionSpec::Entry> InteractionSpec::entries() const {
  std::vector<Entry> out;
  for (const auto& [key, e] : entries_) out.push_back(e);
  return out;
}

namespace {

std::uint64_t to_nat(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    if (s.empty() || s[0] == '-') throw std::invalid_argument(s);
    std::uint64_t v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw SyntaxError(ErrorKind::Syntax, "expected natural number, got '" + s + "'", line, 1);
  }
}

ThresholdFn parse_fn(const std::string& kind, std::istringstream& in, std::size_t line) {
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);
  if (kind == "const") {
    if (words.size() != 1) throw SyntaxError(ErrorKind::Syntax, "const takes one natural", line, 1);
    return ThresholdFn::constant(to_nat(words[0], line));
  }
  if (kind == "poly") {
    if (words.empty()) throw SyntaxError(ErrorKind::Syntax, "poly needs coefficients", line, 1);
    std::vector<std::uint64_t> c;
    for (const auto& w : words) c.push_back(to_nat(w, line));
    return ThresholdFn::polynomial(std::move(c));
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;
  std::optional<std::uint64_t> fallback;
  std::size_t i = 0;
  while (i < words.size()) {
    if (words[i] == "default") {
      if (i + 2 != words.size()) throw SyntaxError(ErrorKind::Syntax, "default must end the table", line, 1);
      fallback = to_nat(words[i + 1], line);
      break;
    }
    if (i + 2 >= words.size() || words[i + 1] != "->")
      throw SyntaxError(ErrorKind::Syntax, "table entries are 'k -> m'", line, 1);
    entries.emplace_back(to_nat(words[i], line), to_nat(words[i + 2], line));
    i += 3;
  }
  if (entries.empty() && !fallback) throw SyntaxError(ErrorKind::Syntax, "empty table", line, 1);
  try {
    return ThresholdFn::table(std::move(entries), fallback);
  } catch (const Error& e) {
    throw SyntaxError(ErrorKind::Syntax, e.what(), line, 1);
  }
}

}  // namespace

InteractionSpec load_spec(std::string_view text) {
  static const std::regex kSplit(R"(^(.*):\s*(const|poly|table)\b(.*)$)");
  InteractionSpec spec;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::smatch m;
    if (!std::regex_match(line, m, kSplit))
      throw SyntaxError(ErrorKind::Syntax, "expected 'formula : const|poly|table ...'", line_no, 1);
    ParseOptions opts;
    opts.line_offset = line_no - 1;
    EFormula alpha = parse_eformula(m[1].str(), opts);
    std::istringstream rest(m[3].str());
    spec.add(alpha, parse_fn(m[2].str(), rest, line_no));
  }
  return spec;
}

std::string to_text(const InteractionSpec& spec) {
  std::string out;
  for (const auto& e : spec.entries()) out += to_string(e.formula) + " : " + e.threshold.describe() + "\n";
  return out;
}

}  // namespace ipj
