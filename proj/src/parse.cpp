#include "umk/parse.hpp"

#include <cctype>

#include "umk/error.hpp"

namespace umk {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

namespace {

class PolyParser {
 public:
  PolyParser(const PolyRing& R, std::string_view s) : R_(R), s_(s) {}

  Poly run() {
    skip();
    if (pos_ == s_.size()) fail("empty expression");
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial '" + std::string(s_) + "': " + what + " at offset " +
                     std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Poly expr() {
    Poly acc;
    bool first = true;
    for (;;) {
      bool negate = false;
      if (peek('+') || peek('-')) {
        negate = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = negate ? R_.sub(acc, t) : R_.add(acc, t);
      first = false;
      if (!(peek('+') || peek('-'))) break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = R_.mul(acc, power());
      } else if (peek('/')) {
        ++pos_;
        Poly d = power();
        if (d.empty() || d.front().mono.deg != 0 || d.size() != 1)
          fail("division only by nonzero constants");
        auto inv = R_.domain().inverse(d.front().coeff);
        if (!inv) fail("divisor is not invertible");
        acc = R_.scale(acc, *inv);
      } else if (starts_atom()) {
        acc = R_.mul(acc, power());
      } else {
        break;
      }
    }
    return acc;
  }

  Poly power() {
    Poly base = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (k > 10000) fail("exponent too large");
      base = R_.pow(base, static_cast<unsigned>(k));
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (c == '-' || c == '+') {
      ++pos_;
      Poly p = power();
      return c == '-' ? R_.neg(p) : p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class v(std::string(s_.substr(start, pos_ - start)));
      return R_.constant(mpq_class(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      const auto& vars = R_.vars();
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == name) return R_.variable(i);
      pos_ = start;
      fail("unknown variable '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const PolyRing& R_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (b < i) out.emplace_back(s.substr(b, i - b));
  }
  return out;
}

std::uint64_t parse_u64(const std::string& w, const char* what) {
  if (w.empty() || w.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(std::string("expected a non-negative integer for ") + what + ", got '" +
                     w + "'");
  try {
    return std::stoull(w);
  } catch (const std::exception&) {
    throw ParseError(std::string(what) + " out of range: " + w);
  }
}

void parse_options(const std::vector<std::string>& ws, std::size_t i, RingDescription& d,
                   bool allow_order, bool& saw_sdim) {
  while (i < ws.size()) {
    const std::string& w = ws[i];
    if (allow_order && (w == "grevlex" || w == "lex")) {
      d.order = w == "lex" ? MonomialOrder::Lex : MonomialOrder::Grevlex;
      ++i;
    } else if (w == "sdim") {
      if (i + 1 >= ws.size()) throw ParseError("missing value after sdim");
      d.sdim = parse_u64(ws[i + 1], "sdim");
      saw_sdim = true;
      i += 2;
    } else {
      throw ParseError("unexpected token '" + w + "' in ring description");
    }
  }
}

}  // namespace

Poly parse_poly(const PolyRing& R, std::string_view text) { return PolyParser(R, text).run(); }

RingDescription parse_ring_description(std::string_view text) {
  std::string s = trim(text);
  RingDescription d;
  if (s.rfind("zmod", 0) == 0) {
    auto ws = words(s);
    if (ws.size() < 2) throw ParseError("zmod needs a modulus");
    d.zmod = true;
    d.modulus = parse_u64(ws[1], "modulus");
    if (d.modulus == 0) throw ParseError("zero modulus");
    if (d.modulus == 1) throw ParseError("modulus must be at least 2");
    bool saw = false;
    parse_options(ws, 2, d, false, saw);
    return d;
  }
  if (s.rfind("poly", 0) != 0) throw ParseError("ring description must start with zmod or poly");
  std::size_t i = 4;
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  std::size_t lb = s.find('[', i);
  if (lb == std::string::npos) throw ParseError("expected '[' with the variable list");
  std::string coeff = trim(std::string_view(s).substr(i, lb - i));
  if (coeff == "Q") {
    d.modulus = 0;
  } else if (coeff.size() > 1 && coeff[0] == 'F') {
    d.modulus = parse_u64(coeff.substr(1), "characteristic");
    if (!is_prime(d.modulus))
      throw ParseError("non-field coefficient F" + coeff.substr(1) + " for poly ring");
  } else {
    throw ParseError("coefficient domain must be Q or Fp, got '" + coeff + "'");
  }
  std::size_t rb = s.find(']', lb);
  if (rb == std::string::npos) throw ParseError("unterminated variable list");
  std::string vlist = s.substr(lb + 1, rb - lb - 1);
  std::size_t p = 0;
  while (p <= vlist.size()) {
    std::size_t c = vlist.find(',', p);
    if (c == std::string::npos) c = vlist.size();
    std::string v = trim(std::string_view(vlist).substr(p, c - p));
    if (!v.empty()) {
      if (!(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_'))
        throw ParseError("bad variable name '" + v + "'");
      for (char ch : v)
        if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
          throw ParseError("bad variable name '" + v + "'");
      for (const auto& o : d.vars)
        if (o == v) throw ParseError("duplicate variable '" + v + "'");
      d.vars.push_back(v);
    } else if (c != vlist.size() || !d.vars.empty()) {
      throw ParseError("empty variable name");
    }
    p = c + 1;
  }
  std::size_t rest = rb + 1;
  while (rest < s.size() && std::isspace(static_cast<unsigned char>(s[rest]))) ++rest;
  std::string tail;
  if (rest < s.size() && s[rest] == '/') {
    std::size_t lp = s.find('(', rest);
    if (lp == std::string::npos) throw ParseError("expected '(' after '/'");
    int depth = 0;
    std::size_t rp = lp;
    for (; rp < s.size(); ++rp) {
      if (s[rp] == '(') ++depth;
      if (s[rp] == ')' && --depth == 0) break;
    }
    if (rp == s.size()) throw ParseError("unterminated relation list");
    std::string body = s.substr(lp + 1, rp - lp - 1);
    std::size_t q = 0;
    while (q <= body.size()) {
      std::size_t c = body.find(';', q);
      if (c == std::string::npos) c = body.size();
      std::string g = trim(std::string_view(body).substr(q, c - q));
      if (!g.empty()) d.relations.push_back(g);
      q = c + 1;
    }
    tail = s.substr(rp + 1);
  } else {
    tail = s.substr(rest);
  }
  bool saw_sdim = false;
  parse_options(words(tail), 0, d, true, saw_sdim);
  if (!saw_sdim) throw ParseError("poly ring description needs 'sdim <d>'");
  return d;
}

std::vector<std::string> split_bracket_list(std::string_view text) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("expected a bracketed list, got '" + s + "'");
  std::vector<std::string> out;
  std::string body = s.substr(1, s.size() - 2);
  if (trim(body).empty()) return out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced brackets in '" + s + "'");
    if (c == ',' && depth == 0) {
      out.push_back(trim(std::string_view(body).substr(start, i - start)));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced brackets in '" + s + "'");
  out.push_back(trim(std::string_view(body).substr(start)));
  for (const auto& item : out)
    if (item.empty()) throw ParseError("empty list item in '" + s + "'");
  return out;
}

}  // namespace umk
