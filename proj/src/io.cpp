#include "cone_closure/io.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

namespace cone {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Line {
  unsigned no;
  std::string text;
};

struct FileLines {
  std::string path;
  std::vector<Line> lines;
  std::size_t pos = 0;

  bool done() const { return pos >= lines.size(); }
  const Line& peek() const { return lines[pos]; }
  Line take() { return lines[pos++]; }

  [[noreturn]] void fail_at(unsigned no, const std::string& msg) const {
    throw UsageError(path + ":" + std::to_string(no) + ": " + msg);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const unsigned no = done() ? (lines.empty() ? 1 : lines.back().no) : lines[pos].no;
    fail_at(no, msg);
  }
};

FileLines load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  FileLines f;
  f.path = path;
  std::string raw;
  unsigned no = 0;
  while (std::getline(in, raw)) {
    ++no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string t = trim(raw);
    if (!t.empty()) f.lines.push_back({no, std::move(t)});
  }
  return f;
}

// matches "key = value" with optional spaces around '='
bool kv(const std::string& line, const char* key, std::string& val) {
  const std::size_t klen = std::strlen(key);
  if (line.size() <= klen || line.compare(0, klen, key) != 0) return false;
  std::size_t i = klen;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  if (i >= line.size() || line[i] != '=') return false;
  val = trim(line.substr(i + 1));
  return true;
}

// matches "WORD" or "WORD rest"
bool keyword(const std::string& line, const char* word, std::string& rest) {
  const std::size_t wlen = std::strlen(word);
  if (line.compare(0, wlen, word) != 0) return false;
  if (line.size() == wlen) {
    rest.clear();
    return true;
  }
  if (!std::isspace(static_cast<unsigned char>(line[wlen]))) return false;
  rest = trim(line.substr(wlen));
  return true;
}

std::string need_kv(FileLines& f, const char* key, unsigned* no = nullptr) {
  if (f.done()) f.fail(std::string("expected ") + key + "=...");
  std::string v;
  if (!kv(f.peek().text, key, v)) f.fail(std::string("expected ") + key + "=...");
  if (no) *no = f.peek().no;
  f.take();
  return v;
}

unsigned uint_at(const FileLines& f, unsigned no, const std::string& s) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size() || v < 0) throw std::runtime_error("");
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    f.fail_at(no, "malformed nonnegative integer: " + s);
  }
}

Rational rat_at(const FileLines& f, unsigned no, const std::string& s) {
  try {
    return parse_rational(s);
  } catch (const UsageError& e) {
    f.fail_at(no, e.what());
  }
}

MultiIndex index_at(const FileLines& f, unsigned no, std::string s, std::size_t arity) {
  std::replace(s.begin(), s.end(), '|', ',');
  try {
    return parse_multiindex(trim(s), arity);
  } catch (const UsageError& e) {
    f.fail_at(no, e.what());
  }
}

void add_elem_term(Polynomial& p, const FileLines& f, const Line& ln) {
  const auto colon = ln.text.find(':');
  if (colon == std::string::npos) f.fail_at(ln.no, "expected 'coefficient : index'");
  const Rational c = rat_at(f, ln.no, ln.text.substr(0, colon));
  const MultiIndex s = index_at(f, ln.no, ln.text.substr(colon + 1), p.arity());
  p.add_term(s, c);
}

void add_elem_term(StarElement& g, const FileLines& f, const Line& ln) {
  const auto colon = ln.text.find(':');
  if (colon == std::string::npos) f.fail_at(ln.no, "expected 're,im : index'");
  const std::string cf = ln.text.substr(0, colon);
  const auto comma = cf.find(',');
  if (comma == std::string::npos) f.fail_at(ln.no, "expected 're,im : index'");
  const Rational re = rat_at(f, ln.no, cf.substr(0, comma));
  const Rational im = rat_at(f, ln.no, cf.substr(comma + 1));
  const MultiIndex s =
      index_at(f, ln.no, ln.text.substr(colon + 1), g.semigroup().index_arity());
  g.add_term(s, ComplexQ(re, im));
}

StarSemigroup read_semigroup_header(FileLines& f) {
  unsigned kno = 0;
  const std::string kind = need_kv(f, "semigroup", &kno);
  unsigned nno = 0;
  const std::string n_str = need_kv(f, "n", &nno);
  const unsigned n = uint_at(f, nno, n_str);
  if (kind == "free_commutative") return StarSemigroup::free_commutative(n);
  if (kind == "conjugate_pair") return StarSemigroup::conjugate_pair(n);
  f.fail_at(kno, "unknown semigroup kind: " + kind);
}

void write_semigroup_header(const StarSemigroup& sg, std::ostream& os) {
  os << "semigroup="
     << (sg.kind == StarSemigroup::Kind::free_commutative ? "free_commutative"
                                                          : "conjugate_pair")
     << "\nn=" << sg.n << "\n";
}

std::string star_index_str(const StarSemigroup& sg, const MultiIndex& s) {
  if (sg.kind == StarSemigroup::Kind::free_commutative) return multiindex_str(s);
  std::ostringstream o;
  for (std::size_t i = 0; i < sg.n; ++i) o << (i ? "," : "") << s[i];
  o << " | ";
  for (std::size_t i = 0; i < sg.n; ++i) o << (i ? "," : "") << s[sg.n + i];
  return o.str();
}

void write_terms(const Polynomial& p, std::ostream& os) {
  for (const auto& [s, c] : p.terms())
    os << rational_str(c) << " : " << multiindex_str(s) << "\n";
}

void write_terms(const StarElement& g, std::ostream& os) {
  for (const auto& [s, c] : g.poly().terms())
    os << rational_str(c.re) << "," << rational_str(c.im) << " : "
       << star_index_str(g.semigroup(), s) << "\n";
}

template <class E>
CertificateT<E> read_cert_body(FileLines& f, const E& zero, std::size_t index_arity) {
  CertificateT<E> c{zero, Rational(0), {}, zero};
  enum class Sec { none, target, base, residual };
  Sec sec = Sec::none;
  bool have_slack = false;
  while (!f.done()) {
    const Line ln = f.take();
    std::string rest;
    if (ln.text == "TARGET") {
      sec = Sec::target;
      continue;
    }
    if (ln.text == "RESIDUAL") {
      sec = Sec::residual;
      continue;
    }
    if (keyword(ln.text, "SLACK", rest)) {
      c.slack = rat_at(f, ln.no, rest);
      have_slack = true;
      sec = Sec::none;
      continue;
    }
    if (keyword(ln.text, "PAIR", rest)) {
      try {
        c.pairs.emplace_back(SumOfPowersT<E>{}, parse_generator(rest, index_arity));
      } catch (const UsageError& e) {
        f.fail_at(ln.no, e.what());
      }
      sec = Sec::none;
      continue;
    }
    if (keyword(ln.text, "D", rest)) {
      if (c.pairs.empty()) f.fail_at(ln.no, "D outside a PAIR");
      c.pairs.back().first.d = uint_at(f, ln.no, rest);
      continue;
    }
    if (keyword(ln.text, "ENTRY", rest)) {
      if (c.pairs.empty()) f.fail_at(ln.no, "ENTRY outside a PAIR");
      c.pairs.back().first.entries.emplace_back(rat_at(f, ln.no, rest), zero);
      sec = Sec::base;
      continue;
    }
    E* dst = sec == Sec::target     ? &c.target
             : sec == Sec::residual ? &c.residual
             : sec == Sec::base     ? &c.pairs.back().first.entries.back().second
                                    : nullptr;
    if (!dst) f.fail_at(ln.no, "term line outside a section");
    add_elem_term(*dst, f, ln);
  }
  if (!have_slack) f.fail("missing SLACK");
  return c;
}

template <class E>
void write_cert_body(const CertificateT<E>& c, std::ostream& os) {
  os << "TARGET\n";
  write_terms(c.target, os);
  os << "SLACK " << rational_str(c.slack) << "\n";
  for (const auto& [sum, g] : c.pairs) {
    os << "PAIR " << generator_str(g) << "\n";
    os << "D " << sum.d << "\n";
    for (const auto& [w, base] : sum.entries) {
      os << "ENTRY " << rational_str(w) << "\n";
      write_terms(base, os);
    }
  }
  os << "RESIDUAL\n";
  write_terms(c.residual, os);
}

template <class E>
SumOfPowersT<E> read_sum_body(FileLines& f, const E& zero, unsigned d) {
  SumOfPowersT<E> s;
  s.d = d;
  bool in_entry = false;
  while (!f.done()) {
    const Line ln = f.take();
    std::string rest;
    if (keyword(ln.text, "ENTRY", rest)) {
      s.entries.emplace_back(rat_at(f, ln.no, rest), zero);
      in_entry = true;
      continue;
    }
    if (!in_entry) f.fail_at(ln.no, "term line outside an ENTRY");
    add_elem_term(s.entries.back().second, f, ln);
  }
  return s;
}

template <class E>
void write_sum_body(const SumOfPowersT<E>& s, std::ostream& os) {
  os << "d=" << s.d << "\n";
  for (const auto& [w, base] : s.entries) {
    os << "ENTRY " << rational_str(w) << "\n";
    write_terms(base, os);
  }
}

}  // namespace

Polynomial read_polynomial(const std::string& path) {
  FileLines f = load_file(path);
  unsigned no = 0;
  const std::string arity_str = need_kv(f, "arity", &no);
  const std::size_t arity = uint_at(f, no, arity_str);
  Polynomial p(arity);
  while (!f.done()) {
    const Line ln = f.take();
    add_elem_term(p, f, ln);
  }
  return p;
}

void write_polynomial(const Polynomial& p, std::ostream& os) {
  os << "arity=" << p.arity() << "\n";
  write_terms(p, os);
}

StarElement read_element(const std::string& path) {
  FileLines f = load_file(path);
  const StarSemigroup sg = read_semigroup_header(f);
  StarElement g(sg);
  while (!f.done()) {
    const Line ln = f.take();
    add_elem_term(g, f, ln);
  }
  return g;
}

void write_element(const StarElement& g, std::ostream& os) {
  write_semigroup_header(g.semigroup(), os);
  write_terms(g, os);
}

std::pair<std::size_t, std::map<MultiIndex, Rational, GradedLexLess>> read_raw_table(
    const std::string& path) {
  FileLines f = load_file(path);
  unsigned no = 0;
  const std::string arity_str = need_kv(f, "arity", &no);
  const std::size_t arity = uint_at(f, no, arity_str);
  std::map<MultiIndex, Rational, GradedLexLess> t;
  while (!f.done()) {
    const Line ln = f.take();
    const auto colon = ln.text.find(':');
    if (colon == std::string::npos) f.fail_at(ln.no, "expected 'index : value'");
    MultiIndex s = index_at(f, ln.no, ln.text.substr(0, colon), arity);
    Rational v = rat_at(f, ln.no, ln.text.substr(colon + 1));
    if (!t.emplace(std::move(s), std::move(v)).second)
      f.fail_at(ln.no, "duplicate table entry");
  }
  return {arity, std::move(t)};
}

AbsoluteValue read_phi_table(const std::string& path) {
  auto [arity, t] = read_raw_table(path);
  return AbsoluteValue::table(arity, std::move(t));
}

void write_phi_table(const AbsoluteValue& phi, std::ostream& os) {
  if (phi.kind() != PhiKind::table)
    throw UsageError("only table weights have a file form");
  os << "arity=" << phi.arity() << "\n";
  for (const auto& [s, v] : phi.entries())
    os << multiindex_str(s) << " : " << rational_str(v) << "\n";
}

AbsoluteValue parse_phi_spec(const std::string& spec, std::size_t arity) {
  if (spec == "one") return AbsoluteValue::one(arity);
  if (spec.rfind("geo:", 0) == 0) {
    std::vector<Rational> radii;
    std::string item;
    std::istringstream is(spec.substr(4));
    while (std::getline(is, item, ',')) radii.push_back(parse_rational(item));
    if (radii.size() == 1 && arity > 1) radii.assign(arity, radii.front());
    if (radii.size() != arity)
      throw UsageError("weight spec needs " + std::to_string(arity) + " radii, got " +
                       std::to_string(radii.size()));
    return AbsoluteValue::geometric(std::move(radii));
  }
  AbsoluteValue phi = read_phi_table(spec);
  if (phi.arity() != arity)
    throw UsageError(spec + ": weight table arity " + std::to_string(phi.arity()) +
                     " does not match the input arity " + std::to_string(arity));
  return phi;
}

std::vector<std::vector<Rational>> read_points(const std::string& path) {
  FileLines f = load_file(path);
  unsigned no = 0;
  const std::string n_str = need_kv(f, "n", &no);
  const std::size_t n = uint_at(f, no, n_str);
  std::vector<std::vector<Rational>> pts;
  while (!f.done()) {
    const Line ln = f.take();
    std::vector<Rational> x;
    std::string item;
    std::istringstream is(ln.text);
    while (std::getline(is, item, ',')) x.push_back(rat_at(f, ln.no, item));
    if (x.size() != n)
      f.fail_at(ln.no, "expected " + std::to_string(n) + " coordinates, got " +
                           std::to_string(x.size()));
    pts.push_back(std::move(x));
  }
  return pts;
}

MomentFunctional read_moments(const std::string& path, unsigned degree) {
  FileLines f = load_file(path);
  const StarSemigroup sg = read_semigroup_header(f);
  MomentFunctional::Table t;
  unsigned maxdeg = 0;
  while (!f.done()) {
    const Line ln = f.take();
    const auto colon = ln.text.find(':');
    if (colon == std::string::npos) f.fail_at(ln.no, "expected 'index : re,im'");
    MultiIndex s = index_at(f, ln.no, ln.text.substr(0, colon), sg.index_arity());
    const std::string cf = trim(ln.text.substr(colon + 1));
    const auto comma = cf.find(',');
    if (comma == std::string::npos) f.fail_at(ln.no, "expected 'index : re,im'");
    const Rational re = rat_at(f, ln.no, cf.substr(0, comma));
    const Rational im = rat_at(f, ln.no, cf.substr(comma + 1));
    maxdeg = std::max(maxdeg, s.degree());
    if (!t.emplace(std::move(s), ComplexQ(re, im)).second)
      f.fail_at(ln.no, "duplicate moment entry");
  }
  return MomentFunctional(sg, std::move(t), degree ? degree : maxdeg);
}

void write_moments(const MomentFunctional& L, std::ostream& os) {
  write_semigroup_header(L.semigroup(), os);
  for (const auto& [s, v] : L.values())
    os << star_index_str(L.semigroup(), s) << " : " << rational_str(v.re) << ","
       << rational_str(v.im) << "\n";
}

ModuleGenerator parse_generator(const std::string& desc, std::size_t index_arity) {
  std::istringstream is(desc);
  std::string word;
  if (!(is >> word)) throw UsageError("empty generator descriptor");
  bool have_rho = false;
  bool have_sign = false;
  bool have_s = false;
  Rational rho;
  int sign = 1;
  MultiIndex s;
  std::string tok;
  while (is >> tok) {
    std::string val;
    if (kv(tok, "rho", val)) {
      rho = parse_rational(val);
      have_rho = true;
    } else if (kv(tok, "sign", val)) {
      if (val != "+" && val != "-") throw UsageError("generator sign must be + or -");
      sign = val == "+" ? 1 : -1;
      have_sign = true;
    } else if (kv(tok, "s", val)) {
      s = parse_multiindex(val, index_arity);
      have_s = true;
    } else {
      throw UsageError("unknown generator field: " + tok);
    }
  }
  const auto need = [&](bool have, const char* what) {
    if (!have) throw UsageError(std::string("generator '") + word + "' needs " + what);
  };
  if (word == "one") return ModuleGenerator::constant_one();
  if (word == "poly") {
    need(have_rho, "rho=");
    need(have_sign, "sign=");
    need(have_s, "s=");
    return ModuleGenerator::poly_case(rho, sign, s);
  }
  if (word == "norm") {
    need(have_s, "s=");
    return ModuleGenerator::norm_case(s);
  }
  if (word == "real") {
    need(have_sign, "sign=");
    need(have_s, "s=");
    return ModuleGenerator::real_case(s, sign);
  }
  if (word == "imag") {
    need(have_sign, "sign=");
    need(have_s, "s=");
    return ModuleGenerator::imag_case(s, sign);
  }
  throw UsageError("unknown generator kind: " + word);
}

AnyCertificate read_certificate(const std::string& path) {
  FileLines f = load_file(path);
  if (f.done() || f.peek().text != "certificate") f.fail("expected 'certificate' header");
  f.take();
  unsigned no = 0;
  const std::string ring = need_kv(f, "ring", &no);
  if (ring == "polynomial") {
    unsigned ano = 0;
    const std::string arity_str = need_kv(f, "arity", &ano);
    const std::size_t arity = uint_at(f, ano, arity_str);
    return read_cert_body(f, Polynomial(arity), arity);
  }
  if (ring == "star") {
    const StarSemigroup sg = read_semigroup_header(f);
    return read_cert_body(f, StarElement(sg), sg.index_arity());
  }
  f.fail_at(no, "unknown ring: " + ring);
}

void write_certificate(const Certificate& c, std::ostream& os) {
  os << "certificate\nring=polynomial\narity=" << c.target.arity() << "\n";
  write_cert_body(c, os);
}

void write_certificate(const StarCertificate& c, std::ostream& os) {
  os << "certificate\nring=star\n";
  write_semigroup_header(c.target.semigroup(), os);
  write_cert_body(c, os);
}

AnySum read_sum(const std::string& path) {
  FileLines f = load_file(path);
  if (f.done() || f.peek().text != "sum-of-powers") f.fail("expected 'sum-of-powers' header");
  f.take();
  unsigned no = 0;
  const std::string ring = need_kv(f, "ring", &no);
  if (ring == "polynomial") {
    unsigned ano = 0;
    const std::string arity_str = need_kv(f, "arity", &ano);
    const std::size_t arity = uint_at(f, ano, arity_str);
    unsigned dno = 0;
    const std::string d_str = need_kv(f, "d", &dno);
    const unsigned d = uint_at(f, dno, d_str);
    return read_sum_body(f, Polynomial(arity), d);
  }
  if (ring == "star") {
    const StarSemigroup sg = read_semigroup_header(f);
    unsigned dno = 0;
    const std::string d_str = need_kv(f, "d", &dno);
    const unsigned d = uint_at(f, dno, d_str);
    return read_sum_body(f, StarElement(sg), d);
  }
  f.fail_at(no, "unknown ring: " + ring);
}

void write_sum(const SumOfPowers& s, std::size_t arity, std::ostream& os) {
  os << "sum-of-powers\nring=polynomial\narity=" << arity << "\n";
  write_sum_body(s, os);
}

void write_sum(const StarSumOfPowers& s, const StarSemigroup& sg, std::ostream& os) {
  os << "sum-of-powers\nring=star\n";
  write_semigroup_header(sg, os);
  write_sum_body(s, os);
}

}  // namespace cone
