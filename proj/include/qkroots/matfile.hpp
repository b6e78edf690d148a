#pragma once

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkroots/matrix.hpp"
#include "qkroots/prime_field.hpp"
#include "qkroots/ratfun.hpp"
#include "qkroots/rational.hpp"

namespace qk {

// Plain-text matrix format: one matrix row per line, entries separated by
// whitespace, '#' starts a comment.  Each entry is an arithmetic expression
// in the variable z over the rationals, e.g. (z^2+1)/(3*z-2) or -1/2.

namespace detail {

class EntryParser {
 public:
  explicit EntryParser(const std::string& text) : s_(text) {}

  RatFun<Rat> parse() {
    RatFun<Rat> v = expression();
    if (pos_ != s_.size()) fail("trailing characters");
    return v;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("matrix entry '" + s_ + "': " + what);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char take() { return s_[pos_++]; }

  RatFun<Rat> expression() {
    RatFun<Rat> v = term();
    while (peek() == '+' || peek() == '-') {
      char op = take();
      RatFun<Rat> rhs = term();
      v = (op == '+') ? v + rhs : v - rhs;
    }
    return v;
  }

  RatFun<Rat> term() {
    RatFun<Rat> v = unary();
    while (peek() == '*' || peek() == '/') {
      char op = take();
      RatFun<Rat> rhs = unary();
      if (op == '*') {
        v = v * rhs;
      } else {
        if (rhs.num.is_zero()) fail("division by zero");
        v = v / rhs;
      }
    }
    return v;
  }

  RatFun<Rat> unary() {
    if (peek() == '-') {
      take();
      return RatFun<Rat>::constant(Rat(0)) - unary();
    }
    if (peek() == '+') {
      take();
      return unary();
    }
    return power();
  }

  RatFun<Rat> power() {
    RatFun<Rat> base = atom();
    if (peek() != '^') return base;
    take();
    bool negative = false;
    if (peek() == '-') {
      take();
      negative = true;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be an integer");
    long e = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) e = e * 10 + (take() - '0');
    RatFun<Rat> v = RatFun<Rat>::constant(Rat(1));
    for (long i = 0; i < e; ++i) v = v * base;
    if (negative) {
      if (v.num.is_zero()) fail("zero to a negative power");
      v = RatFun<Rat>::constant(Rat(1)) / v;
    }
    return v;
  }

  RatFun<Rat> atom() {
    char c = peek();
    if (c == '(') {
      take();
      RatFun<Rat> v = expression();
      if (peek() != ')') fail("missing ')'");
      take();
      return v;
    }
    if (c == 'z') {
      take();
      return RatFun<Rat>::monomial(Rat(1), 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string digits;
      while (std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(take());
      return RatFun<Rat>::constant(Rat(digits));
    }
    fail("unexpected character");
  }
};

}  // namespace detail

inline RatFun<Rat> parse_matrix_entry(const std::string& text) {
  return detail::EntryParser(text).parse();
}

inline Mat<RatFun<Rat>> parse_matrix_text(const std::string& text) {
  std::vector<std::vector<RatFun<Rat>>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<RatFun<Rat>> row;
    std::string field;
    while (fields >> field) row.push_back(parse_matrix_entry(field));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix file: no rows");
  size_t cols = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw std::invalid_argument("matrix file: rows have unequal lengths");
  Mat<RatFun<Rat>> m(static_cast<long>(rows.size()), static_cast<long>(cols), RatFun<Rat>::constant(Rat(0)));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols; ++j) m(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
  return m;
}

inline Mat<RatFun<Rat>> parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("matrix file: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str());
}

// Reduction of a rational-coefficient matrix mod p.  Fails when any rational
// coefficient has p in its denominator or a denominator polynomial vanishes
// identically mod p (bad reduction).
inline Mat<RatFun<Fp>> reduce_matrix_mod_p(const Mat<RatFun<Rat>>& m, long p) {
  auto reduce_rat = [&](const Rat& r) {
    Int den = r.get_den();
    if (den % Int(p) == 0) throw std::domain_error("bad reduction: coefficient denominator divisible by p");
    Int num = r.get_num();
    long nv = static_cast<long>(mpz_fdiv_ui(num.get_mpz_t(), static_cast<unsigned long>(p)));
    long dv = static_cast<long>(mpz_fdiv_ui(den.get_mpz_t(), static_cast<unsigned long>(p)));
    return Fp(nv, p) / Fp(dv, p);
  };
  auto reduce_poly = [&](const Poly<Rat>& q) {
    Poly<Fp> out;
    for (const auto& c : q.c) out.c.push_back(reduce_rat(c));
    out.trim();
    return out;
  };
  Mat<RatFun<Fp>> out(m.n, m.m, RatFun<Fp>::constant(Fp(0, p)));
  for (long i = 0; i < m.n; ++i)
    for (long j = 0; j < m.m; ++j) {
      Poly<Fp> num = reduce_poly(m(i, j).num);
      Poly<Fp> den = reduce_poly(m(i, j).den);
      if (den.is_zero()) throw std::domain_error("bad reduction: denominator vanishes mod p");
      out(i, j) = RatFun<Fp>(num, den);
    }
  return out;
}

}  // namespace qk
