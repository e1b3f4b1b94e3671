#include "cone_closure/multiindex.hpp"

#include <algorithm>
#include <sstream>

namespace cone {

unsigned MultiIndex::degree() const {
  unsigned d = 0;
  for (unsigned v : e) d += v;
  return d;
}

bool MultiIndex::is_zero() const {
  return std::all_of(e.begin(), e.end(), [](unsigned v) { return v == 0; });
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  if (arity() != o.arity()) throw UsageError("multi-index arity mismatch");
  MultiIndex r(arity());
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] + o.e[i];
  return r;
}

bool MultiIndex::leq(const MultiIndex& o) const {
  if (arity() != o.arity()) throw UsageError("multi-index arity mismatch");
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

MultiIndex MultiIndex::minus(const MultiIndex& o) const {
  if (!o.leq(*this)) throw UsageError("multi-index subtraction underflow");
  MultiIndex r(arity());
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] - o.e[i];
  return r;
}

MultiIndex MultiIndex::scaled(unsigned k) const {
  MultiIndex r(arity());
  for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = e[i] * k;
  return r;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return std::lexicographical_compare(a.e.begin(), a.e.end(), b.e.begin(), b.e.end());
}

std::string multiindex_str(const MultiIndex& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (i) os << ',';
    os << m.e[i];
  }
  return os.str();
}

MultiIndex parse_multiindex(const std::string& s, std::size_t arity) {
  MultiIndex m;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) {
    std::size_t pos = 0;
    long v;
    try {
      v = std::stol(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("malformed exponent: " + item);
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size() || v < 0) throw UsageError("malformed exponent: " + item);
    m.e.push_back(static_cast<unsigned>(v));
  }
  if (m.arity() != arity)
    throw UsageError("expected " + std::to_string(arity) + " exponents, got " +
                     std::to_string(m.arity()));
  return m;
}

std::vector<MultiIndex> indices_up_to(std::size_t arity, unsigned max_degree) {
  std::vector<MultiIndex> out;
  MultiIndex cur(arity);
  // Depth-first over positions; emits in lex order per degree, sorted after.
  auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
    if (pos == arity) {
      out.push_back(cur);
      return;
    }
    for (unsigned v = 0; v <= left; ++v) {
      cur.e[pos] = v;
      self(self, pos + 1, left - v);
    }
    cur.e[pos] = 0;
  };
  rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

}  // namespace cone
