#include "khoveq/frobenius.hpp"

#include <sstream>
#include <stdexcept>

namespace khoveq {

void SignCombo::add(std::vector<Sign> signs, const BivariatePoly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(signs);
  if (it == terms_.end()) {
    terms_.emplace(std::move(signs), c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SignCombo SignCombo::operator+(const SignCombo& o) const {
  SignCombo r = *this;
  for (const auto& [sg, c] : o.terms_) r.add(sg, c);
  return r;
}

SignCombo SignCombo::operator-(const SignCombo& o) const {
  SignCombo r = *this;
  for (const auto& [sg, c] : o.terms_) r.add(sg, -c);
  return r;
}

SignCombo SignCombo::scaled(const BivariatePoly& c) const {
  SignCombo r;
  for (const auto& [sg, k] : terms_) r.add(sg, k * c);
  return r;
}

BivariatePoly SignCombo::coeff(const std::vector<Sign>& signs) const {
  auto it = terms_.find(signs);
  return it == terms_.end() ? BivariatePoly() : it->second;
}

std::string SignCombo::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [sg, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")(";
    for (Sign s : sg) os << sign_char(s);
    os << ")";
  }
  return os.str();
}

FrobeniusCalculus FrobeniusCalculus::universal() {
  using P = BivariatePoly;
  const Sign p = Sign::Plus, m = Sign::Minus;
  FrobeniusCalculus c;
  // (f1)..(f4)
  c.set_merge(p, p, SignCombo::single({p}, P::s()) + SignCombo::single({m}, P::t()));
  c.set_merge(p, m, SignCombo::single({p}));
  c.set_merge(m, p, SignCombo::single({p}));
  c.set_merge(m, m, SignCombo::single({m}));
  // (f5)..(f6)
  c.set_split(p, SignCombo::single({p, p}) + SignCombo::single({m, m}, P::t()));
  c.set_split(m, SignCombo::single({p, m}) + SignCombo::single({m, p}) -
                     SignCombo::single({m, m}, P::s()));
  return c;
}

namespace {
SignCombo eval_combo(const SignCombo& in, const mpz_class& s, const mpz_class& t) {
  SignCombo out;
  for (const auto& [sg, c] : in.terms()) out.add(sg, BivariatePoly(c.eval(s, t)));
  return out;
}
}  // namespace

FrobeniusCalculus FrobeniusCalculus::universal_at(const mpz_class& s, const mpz_class& t) {
  FrobeniusCalculus u = universal(), c;
  for (Sign p : {Sign::Plus, Sign::Minus}) {
    for (Sign q : {Sign::Plus, Sign::Minus})
      c.set_merge(p, q, eval_combo(u.multiply(p, q), s, t));
    c.set_split(p, eval_combo(u.comultiply(p), s, t));
  }
  return c;
}

SignCombo FrobeniusCalculus::composite_split_of_merge(Sign p, Sign q) const {
  SignCombo out;
  for (const auto& [sg, c] : multiply(p, q).terms()) {
    if (sg.size() != 1) throw std::runtime_error("merge table arity != 1");
    out = out + comultiply(sg[0]).scaled(c);
  }
  return out;
}

nlohmann::json poly_to_json(const BivariatePoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [m, c] : p.terms())
    arr.push_back({m.a, m.b, c.get_str()});
  return arr;
}

BivariatePoly poly_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::runtime_error("polynomial: expected array of [a,b,coeff]");
  BivariatePoly p;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 3)
      throw std::runtime_error("polynomial term: expected [a,b,coeff]");
    int a = term[0].get<int>(), b = term[1].get<int>();
    std::string cs = term[2].is_string() ? term[2].get<std::string>()
                                         : term[2].dump();
    mpz_class c;
    if (c.set_str(cs, 10) != 0)
      throw std::runtime_error("polynomial term: bad coefficient '" + cs + "'");
    p.add_term(a, b, c);
  }
  return p;
}

namespace {

nlohmann::json combo_to_json(const SignCombo& combo) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [sg, c] : combo.terms()) {
    std::string s;
    for (Sign x : sg) s += sign_char(x);
    arr.push_back({{"signs", s}, {"coeff", poly_to_json(c)}});
  }
  return arr;
}

SignCombo combo_from_json(const nlohmann::json& j, size_t arity) {
  if (!j.is_array()) throw std::runtime_error("calculus entry: expected array");
  SignCombo out;
  for (const auto& term : j) {
    std::string s = term.at("signs").get<std::string>();
    if (s.size() != arity)
      throw std::runtime_error("calculus entry: wrong arity in signs '" + s + "'");
    std::vector<Sign> sg;
    for (char ch : s) {
      if (ch == '+') sg.push_back(Sign::Plus);
      else if (ch == '-') sg.push_back(Sign::Minus);
      else throw std::runtime_error("calculus entry: bad sign char");
    }
    out.add(std::move(sg), poly_from_json(term.at("coeff")));
  }
  return out;
}

}  // namespace

nlohmann::json FrobeniusCalculus::to_json() const {
  const Sign p = Sign::Plus, m = Sign::Minus;
  return {
      {"m",
       {{"++", combo_to_json(multiply(p, p))},
        {"+-", combo_to_json(multiply(p, m))},
        {"-+", combo_to_json(multiply(m, p))},
        {"--", combo_to_json(multiply(m, m))}}},
      {"delta", {{"+", combo_to_json(comultiply(p))}, {"-", combo_to_json(comultiply(m))}}}};
}

FrobeniusCalculus FrobeniusCalculus::from_json(const nlohmann::json& doc) {
  FrobeniusCalculus c;
  const auto& m = doc.at("m");
  const auto& d = doc.at("delta");
  auto get = [](const nlohmann::json& obj, const char* key) -> const nlohmann::json& {
    if (!obj.contains(key))
      throw std::runtime_error(std::string("calculus: missing table entry '") + key + "'");
    return obj.at(key);
  };
  c.set_merge(Sign::Plus, Sign::Plus, combo_from_json(get(m, "++"), 1));
  c.set_merge(Sign::Plus, Sign::Minus, combo_from_json(get(m, "+-"), 1));
  c.set_merge(Sign::Minus, Sign::Plus, combo_from_json(get(m, "-+"), 1));
  c.set_merge(Sign::Minus, Sign::Minus, combo_from_json(get(m, "--"), 1));
  c.set_split(Sign::Plus, combo_from_json(get(d, "+"), 2));
  c.set_split(Sign::Minus, combo_from_json(get(d, "-"), 2));
  return c;
}

}  // namespace khoveq
