#include "pzeta/dirichlet.hpp"

#include <cmath>
#include "json.hpp"

#include "pzeta/error.hpp"

namespace pzeta {

DirichletSeries DirichletSeries::constant(const BigInt& c) { return term(Rational(1), c); }

DirichletSeries DirichletSeries::term(const Rational& base, const BigInt& coefficient) {
  DirichletSeries out;
  out.add_term(base, coefficient);
  return out;
}

void DirichletSeries::add_term(const Rational& base, const BigInt& coefficient) {
  if (base <= 0) fail(ErrorCode::ParseError, "Dirichlet base must be positive, got " + to_string(base));
  if (coefficient == 0) return;
  Rational key = base;
  key.canonicalize();
  auto [it, inserted] = terms_.try_emplace(key, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

BigInt DirichletSeries::coefficient(const Rational& base) const {
  auto it = terms_.find(base);
  return it == terms_.end() ? BigInt(0) : it->second;
}

DirichletSeries add(const DirichletSeries& a, const DirichletSeries& b) {
  DirichletSeries out = a;
  for (const auto& [q, c] : b.terms()) out.add_term(q, c);
  return out;
}

DirichletSeries negate(const DirichletSeries& a) {
  DirichletSeries out;
  for (const auto& [q, c] : a.terms()) out.add_term(q, -c);
  return out;
}

DirichletSeries multiply(const DirichletSeries& a, const DirichletSeries& b) {
  DirichletSeries out;
  for (const auto& [q1, c1] : a.terms())
    for (const auto& [q2, c2] : b.terms()) out.add_term(Rational(q1 * q2), BigInt(c1 * c2));
  return out;
}

Rational evaluate_exact(const DirichletSeries& a, long s) {
  Rational total = 0;
  for (const auto& [q, c] : a.terms()) total += Rational(c) * pow(q, -s);
  total.canonicalize();
  return total;
}

std::complex<double> evaluate_numeric(const DirichletSeries& a, std::complex<double> s) {
  std::complex<double> total = 0;
  for (const auto& [q, c] : a.terms()) {
    const double log_q = std::log(q.get_num().get_d()) - std::log(q.get_den().get_d());
    total += c.get_d() * std::exp(-s * log_q);
  }
  return total;
}

bool is_ordinary(const DirichletSeries& a) {
  for (const auto& [q, c] : a.terms())
    if (!is_integer(q)) return false;
  return true;
}

std::string to_json(const DirichletSeries& a) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto& [q, c] : a.terms()) {
    nlohmann::ordered_json t;
    t["q"] = q.get_num().get_str() + "/" + q.get_den().get_str();
    t["c"] = c.get_str();
    terms.push_back(std::move(t));
  }
  nlohmann::ordered_json doc;
  doc["terms"] = std::move(terms);
  return doc.dump();
}

DirichletSeries series_from_json(const std::string& text) {
  DirichletSeries out;
  try {
    auto doc = nlohmann::json::parse(text);
    for (const auto& t : doc.at("terms")) {
      out.add_term(parse_rational(t.at("q").get<std::string>()), BigInt(t.at("c").get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad series document: ") + e.what());
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::ParseError, "bad coefficient in series document");
  }
  return out;
}

namespace {

std::string render(const DirichletSeries& a, bool shift) {
  if (a.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [q, c] : a.terms()) {
    BigInt mag = abs(c);
    std::string body;
    if (q == 1) {
      body = mag.get_str();
    } else {
      std::string base = is_integer(q) ? q.get_num().get_str() : "(" + to_string(q) + ")";
      if (shift && is_integer(q) && mag % q.get_num() == 0) {
        BigInt reduced = mag / q.get_num();
        body = reduced.get_str() + "/" + base + "^(s-1)";
      } else {
        body = mag.get_str() + "/" + base + "^s";
      }
    }
    if (first) {
      out += (c < 0 ? "-" : "") + body;
      first = false;
    } else {
      out += (c < 0 ? " - " : " + ") + body;
    }
  }
  return out;
}

}  // namespace

std::string render_pretty(const DirichletSeries& a) { return render(a, true); }
std::string render_plain(const DirichletSeries& a) { return render(a, false); }

}  // namespace pzeta
