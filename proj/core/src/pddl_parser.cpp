#include "antplan/pddl/parser.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "antplan/error.hpp"
#include "antplan/pddl/type_table.hpp"

namespace antplan::pddl {

namespace {

struct Sexp {
  bool is_list = false;
  std::string sym;           // when !is_list
  std::vector<Sexp> items;   // when is_list
  int line = 0;
  int col = 0;

  bool is_sym(const char* s) const { return !is_list && sym == s; }
  std::string where() const {
    return std::to_string(line) + ":" + std::to_string(col);
  }
};

[[noreturn]] void fail(ErrorCode code, const Sexp& at, const std::string& msg) {
  throw Error(code, msg + " (at " + at.where() + ")");
}

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  struct Token {
    enum Kind { LParen, RParen, Symbol, End } kind;
    std::string sym;
    int line;
    int col;
  };

  Token next() {
    skip_ws_and_comments();
    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= text_.size()) {
      t.kind = Token::End;
      return t;
    }
    char c = text_[pos_];
    if (c == '(') {
      advance();
      t.kind = Token::LParen;
      return t;
    }
    if (c == ')') {
      advance();
      t.kind = Token::RParen;
      return t;
    }
    t.kind = Token::Symbol;
    while (pos_ < text_.size()) {
      c = text_[pos_];
      if (c == '(' || c == ')' || c == ';' || std::isspace(static_cast<unsigned char>(c))) break;
      t.sym.push_back(c);
      advance();
    }
    return t;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws_and_comments() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

Sexp read_sexp(Lexer& lex, const Lexer::Token& tok) {
  Sexp node;
  node.line = tok.line;
  node.col = tok.col;
  if (tok.kind == Lexer::Token::Symbol) {
    node.sym = tok.sym;
    return node;
  }
  if (tok.kind != Lexer::Token::LParen) {
    throw Error(ErrorCode::LexError,
                "unexpected token at " + std::to_string(tok.line) + ":" +
                    std::to_string(tok.col));
  }
  node.is_list = true;
  for (;;) {
    Lexer::Token t = lex.next();
    if (t.kind == Lexer::Token::RParen) return node;
    if (t.kind == Lexer::Token::End) {
      throw Error(ErrorCode::LexError,
                  "unbalanced '(' opened at " + std::to_string(tok.line) +
                      ":" + std::to_string(tok.col));
    }
    node.items.push_back(read_sexp(lex, t));
  }
}

Sexp read_top_level(const std::string& text) {
  Lexer lex(text);
  Lexer::Token t = lex.next();
  if (t.kind == Lexer::Token::End) {
    throw Error(ErrorCode::ParseError, "empty input");
  }
  Sexp root = read_sexp(lex, t);
  Lexer::Token rest = lex.next();
  if (rest.kind != Lexer::Token::End) {
    throw Error(ErrorCode::ParseError,
                "trailing content after top-level form at " +
                    std::to_string(rest.line) + ":" + std::to_string(rest.col));
  }
  return root;
}

// `(a b - t c - (either u v) d)` -> typed names; trailing untyped names get
// the implicit "object" type. (either ...) is outside the subset.
std::vector<TypedName> parse_typed_list(const Sexp& list, size_t begin = 0) {
  std::vector<TypedName> out;
  std::vector<std::string> pending;
  for (size_t i = begin; i < list.items.size(); ++i) {
    const Sexp& it = list.items[i];
    if (it.is_list) {
      fail(ErrorCode::UnsupportedFeature, it,
           "(either ...) types are not supported");
    }
    if (it.sym == "-") {
      if (i + 1 >= list.items.size()) {
        fail(ErrorCode::ParseError, it, "dangling '-' in typed list");
      }
      const Sexp& ty = list.items[++i];
      if (ty.is_list) {
        fail(ErrorCode::UnsupportedFeature, ty,
             "(either ...) types are not supported");
      }
      if (pending.empty()) {
        fail(ErrorCode::ParseError, it, "type with no names before '-'");
      }
      for (auto& name : pending) out.push_back({std::move(name), ty.sym});
      pending.clear();
    } else {
      pending.push_back(it.sym);
    }
  }
  for (auto& name : pending) out.push_back({std::move(name), "object"});
  return out;
}

const std::unordered_set<std::string> kUnsupportedHeads = {
    "or", "forall", "exists", "imply", "when", "oneof", "either"};

Atom parse_atom(const Sexp& s) {
  if (!s.is_list || s.items.empty()) {
    fail(ErrorCode::ParseError, s, "expected (predicate args...)");
  }
  for (const Sexp& it : s.items) {
    if (it.is_list) fail(ErrorCode::ParseError, it, "nested list inside atom");
  }
  Atom a;
  a.predicate = s.items[0].sym;
  for (size_t i = 1; i < s.items.size(); ++i) a.args.push_back(s.items[i].sym);
  return a;
}

void check_supported_head(const Sexp& s) {
  if (s.is_list && !s.items.empty() && !s.items[0].is_list &&
      kUnsupportedHeads.count(s.items[0].sym)) {
    fail(ErrorCode::UnsupportedFeature, s,
         "'" + s.items[0].sym + "' is outside the supported STRIPS subset");
  }
}

std::vector<Literal> parse_condition(const Sexp& s) {
  check_supported_head(s);
  if (!s.is_list || s.items.empty()) {
    fail(ErrorCode::ParseError, s, "expected a condition");
  }
  std::vector<Literal> lits;
  if (s.items[0].is_sym("and")) {
    for (size_t i = 1; i < s.items.size(); ++i) {
      auto sub = parse_condition(s.items[i]);
      lits.insert(lits.end(), sub.begin(), sub.end());
    }
    return lits;
  }
  if (s.items[0].is_sym("not")) {
    if (s.items.size() != 2) fail(ErrorCode::ParseError, s, "(not ...) takes one atom");
    check_supported_head(s.items[1]);
    if (s.items[1].is_list && !s.items[1].items.empty() &&
        s.items[1].items[0].is_sym("not")) {
      fail(ErrorCode::UnsupportedFeature, s, "double negation is not supported");
    }
    lits.push_back({parse_atom(s.items[1]), true});
    return lits;
  }
  if (s.items[0].is_sym("=")) {
    fail(ErrorCode::UnsupportedFeature, s, "equality conditions are not supported");
  }
  lits.push_back({parse_atom(s), false});
  return lits;
}

std::optional<long long> parse_nonneg_int(const std::string& sym) {
  if (sym.empty()) return std::nullopt;
  long long value = 0;
  auto [ptr, ec] = std::from_chars(sym.data(), sym.data() + sym.size(), value);
  if (ec != std::errc() || ptr != sym.data() + sym.size() || value < 0) {
    return std::nullopt;
  }
  return value;
}

struct EffectParts {
  std::vector<Atom> add;
  std::vector<Atom> del;
  long long cost = 1;
  bool has_explicit_cost = false;
};

void parse_effect_item(const Sexp& s, EffectParts& out) {
  check_supported_head(s);
  if (!s.is_list || s.items.empty()) {
    fail(ErrorCode::ParseError, s, "expected an effect");
  }
  if (s.items[0].is_sym("and")) {
    for (size_t i = 1; i < s.items.size(); ++i) parse_effect_item(s.items[i], out);
    return;
  }
  if (s.items[0].is_sym("not")) {
    if (s.items.size() != 2) fail(ErrorCode::ParseError, s, "(not ...) takes one atom");
    out.del.push_back(parse_atom(s.items[1]));
    return;
  }
  if (s.items[0].is_sym("increase")) {
    if (s.items.size() != 3 || !s.items[1].is_list ||
        s.items[1].items.size() != 1 || !s.items[1].items[0].is_sym("total-cost")) {
      fail(ErrorCode::UnsupportedFeature, s,
           "only (increase (total-cost) N) is supported");
    }
    if (s.items[2].is_list) {
      fail(ErrorCode::UnsupportedFeature, s.items[2],
           "action cost must be a literal number");
    }
    auto n = parse_nonneg_int(s.items[2].sym);
    if (!n) {
      fail(ErrorCode::ParseError, s.items[2],
           "action cost must be a non-negative integer, got '" +
               s.items[2].sym + "'");
    }
    if (out.has_explicit_cost) {
      fail(ErrorCode::ParseError, s, "duplicate (increase (total-cost) ...)");
    }
    out.cost = *n;
    out.has_explicit_cost = true;
    return;
  }
  if (s.items[0].is_sym("decrease") || s.items[0].is_sym("assign") ||
      s.items[0].is_sym("scale-up") || s.items[0].is_sym("scale-down")) {
    fail(ErrorCode::UnsupportedFeature, s,
         "numeric effects other than (increase (total-cost) N) are not supported");
  }
  out.add.push_back(parse_atom(s));
}

// Semantic checking shared between domain actions and problem atoms.
class DomainChecker {
 public:
  DomainChecker(const DomainAst& domain, const TypeTable& types)
      : types_(types) {
    for (const auto& p : domain.predicates) predicates_[p.name] = &p;
    for (const auto& c : domain.constants) object_types_[c.name] = c.type;
  }

  void add_objects(const std::vector<TypedName>& objects, const Sexp& at) {
    for (const auto& o : objects) {
      if (object_types_.count(o.name)) {
        fail(ErrorCode::TypeError, at,
             "object '" + o.name + "' conflicts with an existing constant/object");
      }
      object_types_[o.name] = o.type;
    }
  }

  bool has_object(const std::string& name) const {
    return object_types_.count(name) > 0;
  }

  // `params` maps variable name -> type for the enclosing action, empty for
  // ground contexts.
  void check_atom(const Atom& atom, const Sexp& at,
                  const std::unordered_map<std::string, std::string>& params,
                  bool must_be_ground) const {
    auto it = predicates_.find(atom.predicate);
    if (it == predicates_.end()) {
      fail(ErrorCode::TypeError, at,
           "undeclared predicate '" + atom.predicate + "'");
    }
    const PredicateDecl& decl = *it->second;
    if (decl.params.size() != atom.args.size()) {
      fail(ErrorCode::TypeError, at,
           "predicate '" + atom.predicate + "' expects " +
               std::to_string(decl.params.size()) + " arguments, got " +
               std::to_string(atom.args.size()));
    }
    for (size_t i = 0; i < atom.args.size(); ++i) {
      const std::string& arg = atom.args[i];
      std::string arg_type;
      if (!arg.empty() && arg[0] == '?') {
        if (must_be_ground) {
          fail(ErrorCode::TypeError, at,
               "variable '" + arg + "' in a ground context");
        }
        auto pit = params.find(arg);
        if (pit == params.end()) {
          fail(ErrorCode::TypeError, at,
               "variable '" + arg + "' is not bound by the action parameters");
        }
        arg_type = pit->second;
      } else {
        auto oit = object_types_.find(arg);
        if (oit == object_types_.end()) {
          fail(ErrorCode::TypeError, at,
               "unknown constant/object '" + arg + "' in (" + atom.predicate + " ...)");
        }
        arg_type = oit->second;
      }
      if (!types_.is_subtype(arg_type, decl.params[i].type)) {
        fail(ErrorCode::TypeError, at,
             "argument " + std::to_string(i + 1) + " of (" + atom.predicate +
                 " ...) has type '" + arg_type + "', expected '" +
                 decl.params[i].type + "'");
      }
    }
  }

 private:
  const TypeTable& types_;
  std::unordered_map<std::string, const PredicateDecl*> predicates_;
  std::unordered_map<std::string, std::string> object_types_;
};

void expect_header(const Sexp& root, const char* kind) {
  if (!root.is_list || root.items.size() < 2 || !root.items[0].is_sym("define") ||
      !root.items[1].is_list || root.items[1].items.size() != 2 ||
      !root.items[1].items[0].is_sym(kind)) {
    fail(ErrorCode::ParseError, root,
         std::string("expected (define (") + kind + " NAME) ...)");
  }
}

const std::unordered_set<std::string> kKnownRequirements = {
    ":strips", ":typing", ":negative-preconditions", ":action-costs"};

}  // namespace

TypeTable::TypeTable(const DomainAst& domain) {
  parent_["object"] = "";
  for (const auto& t : domain.types) parent_[t.name] = t.type;
  // Parents referenced but never declared hang off the root.
  for (const auto& t : domain.types) {
    if (!parent_.count(t.type)) parent_[t.type] = "object";
  }
}

bool TypeTable::declared(const std::string& type) const {
  return parent_.count(type) > 0;
}

bool TypeTable::is_subtype(const std::string& type, const std::string& ancestor) const {
  std::string cur = type;
  for (int depth = 0; depth < 64; ++depth) {
    if (cur == ancestor) return true;
    auto it = parent_.find(cur);
    if (it == parent_.end() || it->second.empty()) return false;
    cur = it->second;
  }
  return false;  // cycle guard
}

DomainAst parse_domain(const std::string& text) {
  Sexp root = read_top_level(text);
  expect_header(root, "domain");

  DomainAst domain;
  domain.name = root.items[1].items[1].sym;

  std::vector<const Sexp*> action_nodes;
  for (size_t i = 2; i < root.items.size(); ++i) {
    const Sexp& sec = root.items[i];
    if (!sec.is_list || sec.items.empty() || sec.items[0].is_list) {
      fail(ErrorCode::ParseError, sec, "expected a (:section ...) block");
    }
    const std::string& head = sec.items[0].sym;
    if (head == ":requirements") {
      for (size_t j = 1; j < sec.items.size(); ++j) {
        const std::string& req = sec.items[j].sym;
        if (!kKnownRequirements.count(req)) {
          fail(ErrorCode::UnsupportedFeature, sec.items[j],
               "requirement '" + req + "' is outside the supported subset");
        }
        domain.requirements.push_back(req);
      }
    } else if (head == ":types") {
      domain.types = parse_typed_list(sec, 1);
      std::unordered_set<std::string> seen;
      for (const auto& t : domain.types) {
        if (!seen.insert(t.name).second) {
          fail(ErrorCode::TypeError, sec, "type '" + t.name + "' declared twice");
        }
      }
    } else if (head == ":constants") {
      domain.constants = parse_typed_list(sec, 1);
    } else if (head == ":predicates") {
      for (size_t j = 1; j < sec.items.size(); ++j) {
        const Sexp& p = sec.items[j];
        if (!p.is_list || p.items.empty() || p.items[0].is_list) {
          fail(ErrorCode::ParseError, p, "expected (name ?v - type ...)");
        }
        PredicateDecl decl;
        decl.name = p.items[0].sym;
        decl.params = parse_typed_list(p, 1);
        domain.predicates.push_back(std::move(decl));
      }
    } else if (head == ":functions") {
      for (size_t j = 1; j < sec.items.size(); ++j) {
        const Sexp& f = sec.items[j];
        if (f.is_list && f.items.size() == 1 && f.items[0].is_sym("total-cost")) {
          domain.has_total_cost = true;
        } else if (!f.is_sym("-") && !f.is_sym("number")) {
          fail(ErrorCode::UnsupportedFeature, f,
               "only the (total-cost) function is supported");
        }
      }
    } else if (head == ":action") {
      action_nodes.push_back(&sec);
    } else if (head == ":durative-action" || head == ":derived" ||
               head == ":axiom" || head == ":constraints") {
      fail(ErrorCode::UnsupportedFeature, sec,
           "'" + head + "' is outside the supported subset");
    } else {
      fail(ErrorCode::ParseError, sec, "unknown section '" + head + "'");
    }
  }

  TypeTable types(domain);
  for (const auto& t : domain.types) {
    if (!types.declared(t.type)) {
      fail(ErrorCode::TypeError, root, "type '" + t.type + "' is not declared");
    }
  }
  for (const auto& c : domain.constants) {
    if (!types.declared(c.type)) {
      fail(ErrorCode::TypeError, root,
           "constant '" + c.name + "' uses undeclared type '" + c.type + "'");
    }
  }
  std::unordered_set<std::string> pred_names;
  for (const auto& p : domain.predicates) {
    if (!pred_names.insert(p.name).second) {
      fail(ErrorCode::TypeError, root, "predicate '" + p.name + "' declared twice");
    }
    for (const auto& param : p.params) {
      if (!types.declared(param.type)) {
        fail(ErrorCode::TypeError, root,
             "predicate '" + p.name + "' uses undeclared type '" + param.type + "'");
      }
    }
  }

  DomainChecker checker(domain, types);
  for (const Sexp* node : action_nodes) {
    const Sexp& sec = *node;
    if (sec.items.size() < 2 || sec.items[1].is_list) {
      fail(ErrorCode::ParseError, sec, "expected (:action NAME ...)");
    }
    ActionSchema schema;
    schema.name = sec.items[1].sym;

    std::unordered_map<std::string, std::string> param_types;
    for (size_t j = 2; j < sec.items.size(); j += 2) {
      if (j + 1 >= sec.items.size()) {
        fail(ErrorCode::ParseError, sec.items[j],
             "action keyword without a value");
      }
      const std::string& key = sec.items[j].sym;
      const Sexp& val = sec.items[j + 1];
      if (key == ":parameters") {
        if (!val.is_list) fail(ErrorCode::ParseError, val, "expected (:parameters (...))");
        schema.parameters = parse_typed_list(val);
        for (const auto& p : schema.parameters) {
          if (p.name.empty() || p.name[0] != '?') {
            fail(ErrorCode::ParseError, val,
                 "parameter '" + p.name + "' must start with '?'");
          }
          if (!types.declared(p.type)) {
            fail(ErrorCode::TypeError, val,
                 "parameter '" + p.name + "' uses undeclared type '" + p.type + "'");
          }
          if (!param_types.emplace(p.name, p.type).second) {
            fail(ErrorCode::ParseError, val, "duplicate parameter '" + p.name + "'");
          }
        }
      } else if (key == ":precondition") {
        for (const Literal& lit : parse_condition(val)) {
          (lit.negated ? schema.pre_neg : schema.pre_pos).push_back(lit.atom);
        }
      } else if (key == ":effect") {
        EffectParts parts;
        parse_effect_item(val, parts);
        schema.add = std::move(parts.add);
        schema.del = std::move(parts.del);
        schema.cost = parts.cost;
        schema.has_explicit_cost = parts.has_explicit_cost;
      } else {
        fail(ErrorCode::UnsupportedFeature, sec.items[j],
             "action keyword '" + key + "' is not supported");
      }
    }
    if (schema.add.empty() && schema.del.empty()) {
      fail(ErrorCode::ParseError, sec,
           "action '" + schema.name + "' has no effect");
    }

    auto check_all = [&](const std::vector<Atom>& atoms) {
      for (const Atom& a : atoms) checker.check_atom(a, sec, param_types, false);
    };
    check_all(schema.pre_pos);
    check_all(schema.pre_neg);
    check_all(schema.add);
    check_all(schema.del);
    domain.actions.push_back(std::move(schema));
  }
  return domain;
}

ProblemAst parse_problem(const std::string& text, const DomainAst& domain) {
  Sexp root = read_top_level(text);
  expect_header(root, "problem");

  ProblemAst problem;
  problem.name = root.items[1].items[1].sym;

  TypeTable types(domain);
  DomainChecker checker(domain, types);
  const std::unordered_map<std::string, std::string> no_params;

  for (size_t i = 2; i < root.items.size(); ++i) {
    const Sexp& sec = root.items[i];
    if (!sec.is_list || sec.items.empty() || sec.items[0].is_list) {
      fail(ErrorCode::ParseError, sec, "expected a (:section ...) block");
    }
    const std::string& head = sec.items[0].sym;
    if (head == ":domain") {
      if (sec.items.size() != 2) fail(ErrorCode::ParseError, sec, "expected (:domain NAME)");
      problem.domain_name = sec.items[1].sym;
      if (problem.domain_name != domain.name) {
        fail(ErrorCode::ParseError, sec,
             "problem is for domain '" + problem.domain_name +
                 "', parsed against '" + domain.name + "'");
      }
    } else if (head == ":objects") {
      problem.objects = parse_typed_list(sec, 1);
      for (const auto& o : problem.objects) {
        if (!types.declared(o.type)) {
          fail(ErrorCode::TypeError, sec,
               "object '" + o.name + "' uses undeclared type '" + o.type + "'");
        }
      }
      checker.add_objects(problem.objects, sec);
    } else if (head == ":init") {
      for (size_t j = 1; j < sec.items.size(); ++j) {
        const Sexp& a = sec.items[j];
        if (a.is_list && !a.items.empty() && a.items[0].is_sym("=")) {
          // (= (total-cost) 0)
          if (a.items.size() == 3 && a.items[1].is_list &&
              a.items[1].items.size() == 1 &&
              a.items[1].items[0].is_sym("total-cost") && !a.items[2].is_list) {
            auto n = parse_nonneg_int(a.items[2].sym);
            if (!n) fail(ErrorCode::ParseError, a, "bad initial total-cost");
            problem.init_total_cost = *n;
            continue;
          }
          fail(ErrorCode::UnsupportedFeature, a,
               "only (= (total-cost) N) is supported in :init");
        }
        check_supported_head(a);
        Atom atom = parse_atom(a);
        checker.check_atom(atom, a, no_params, true);
        problem.init.push_back(std::move(atom));
      }
    } else if (head == ":goal") {
      if (sec.items.size() != 2) fail(ErrorCode::ParseError, sec, "expected (:goal ...)");
      for (const Literal& lit : parse_condition(sec.items[1])) {
        checker.check_atom(lit.atom, sec.items[1], no_params, true);
        problem.goal.push_back(lit);
      }
    } else if (head == ":metric") {
      if (sec.items.size() == 3 && sec.items[1].is_sym("minimize") &&
          sec.items[2].is_list && sec.items[2].items.size() == 1 &&
          sec.items[2].items[0].is_sym("total-cost")) {
        problem.metric_min_total_cost = true;
      } else {
        fail(ErrorCode::UnsupportedFeature, sec,
             "only (:metric minimize (total-cost)) is supported");
      }
    } else if (head == ":hints") {
      // Search-guidance rows; carried through but never interpreted.
      for (size_t j = 1; j < sec.items.size(); ++j) {
        const Sexp& h = sec.items[j];
        if (!h.is_list) fail(ErrorCode::ParseError, h, "expected (hint ...) rows");
        std::vector<std::string> row;
        for (const Sexp& it : h.items) {
          if (it.is_list) fail(ErrorCode::ParseError, it, "hint rows must be flat");
          row.push_back(it.sym);
        }
        problem.hints.push_back(std::move(row));
      }
    } else {
      fail(ErrorCode::ParseError, sec, "unknown section '" + head + "'");
    }
  }
  if (problem.domain_name.empty()) {
    fail(ErrorCode::ParseError, root, "problem lacks a (:domain ...) section");
  }
  return problem;
}

}  // namespace antplan::pddl
