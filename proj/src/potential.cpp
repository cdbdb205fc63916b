#include "mafol/potential.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace mafol {

MultiExponent::MultiExponent(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw Error("negative exponent in multi-index");
  }
}

int MultiExponent::total() const noexcept {
  return std::accumulate(entries_.begin(), entries_.end(), 0);
}

MultiExponent MultiExponent::decremented(int j) const {
  std::vector<int> e = entries_;
  --e.at(j);
  return MultiExponent(std::move(e));
}

PolyExpr::PolyExpr(int dim) : dim_(dim) {
  if (dim <= 0) throw DimensionError("polynomial dimension must be positive");
}

PolyExpr::PolyExpr(int dim, TermMap terms) : PolyExpr(dim) {
  for (auto& [key, c] : terms) add_term(key, c);
}

void PolyExpr::check_key(const MonomialKey& key) const {
  if (key.z_exp.size() != dim_ || key.zbar_exp.size() != dim_) {
    throw DimensionError("monomial exponent length " + std::to_string(key.z_exp.size()) + "/" +
                         std::to_string(key.zbar_exp.size()) + " does not match n = " +
                         std::to_string(dim_));
  }
}

Complex PolyExpr::coefficient(const MonomialKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Complex{} : it->second;
}

void PolyExpr::add_term(const MonomialKey& key, Complex c) {
  check_key(key);
  if (c == Complex{}) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex{}) terms_.erase(it);
  }
}

Complex PolyExpr::evaluate(const CPoint& z) const {
  if (z.size() != dim_) {
    throw DimensionError("point has " + std::to_string(z.size()) + " coordinates, expected " +
                         std::to_string(dim_));
  }
  if (terms_.empty()) return {};

  // Power tables up to the largest exponent seen for each variable.
  std::vector<int> max_deg(dim_, 0);
  for (const auto& [key, c] : terms_) {
    for (int j = 0; j < dim_; ++j) {
      max_deg[j] = std::max({max_deg[j], key.z_exp[j], key.zbar_exp[j]});
    }
  }
  std::vector<std::vector<Complex>> zp(dim_), zbp(dim_);
  for (int j = 0; j < dim_; ++j) {
    zp[j].resize(max_deg[j] + 1);
    zbp[j].resize(max_deg[j] + 1);
    zp[j][0] = zbp[j][0] = 1.0;
    for (int d = 1; d <= max_deg[j]; ++d) {
      zp[j][d] = zp[j][d - 1] * z[j];
      zbp[j][d] = std::conj(zp[j][d]);
    }
  }

  Complex sum{};
  for (const auto& [key, c] : terms_) {
    Complex m = c;
    for (int j = 0; j < dim_; ++j) m *= zp[j][key.z_exp[j]] * zbp[j][key.zbar_exp[j]];
    sum += m;
  }
  return sum;
}

PolyPotential::PolyPotential(PolyExpr expr) : expr_(std::move(expr)) {
  for (const auto& [key, c] : expr_.terms()) {
    if (expr_.coefficient(key.conjugate()) != std::conj(c)) {
      std::ostringstream os;
      os << "non-Hermitian term set: coefficient of a=[";
      for (int j = 0; j < key.z_exp.size(); ++j) os << (j ? "," : "") << key.z_exp[j];
      os << "] b=[";
      for (int j = 0; j < key.zbar_exp.size(); ++j) os << (j ? "," : "") << key.zbar_exp[j];
      os << "] has no matching conjugate term";
      throw Error(os.str());
    }
  }
}

namespace {

class StatementParser {
 public:
  StatementParser(std::string_view s, int line) : s_(s), line_(line) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  bool consume(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!consume(tok)) fail("expected '" + std::string(tok) + "'");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(line_, what + " near '" + std::string(s_.substr(pos_)) + "'");
  }

  int integer() {
    skip_ws();
    int v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected integer");
    pos_ = ptr - s_.data();
    return v;
  }

  double real() {
    skip_ws();
    double v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) fail("expected number");
    pos_ = ptr - s_.data();
    return v;
  }

  std::vector<int> int_list() {
    expect("[");
    std::vector<int> out;
    if (consume("]")) return out;
    do {
      out.push_back(integer());
    } while (consume(","));
    expect("]");
    return out;
  }

  // <re>, <re><sign><im>i, <im>i, or with the imaginary magnitude omitted.
  Complex coefficient() {
    skip_ws();
    double re = 0.0;
    double im = 0.0;
    auto signed_number = [&]() -> std::optional<double> {
      double sign = 1.0;
      if (consume("+")) {
      } else if (consume("-")) {
        sign = -1.0;
      }
      if (pos_ < s_.size() && s_[pos_] == 'i') return sign;
      return sign * real();
    };
    auto first = signed_number();
    if (consume("i")) return {0.0, *first};
    re = *first;
    skip_ws();
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      im = *signed_number();
      expect("i");
    }
    return {re, im};
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

PolyPotential parse_potential(std::string_view text) {
  int dim = 0;
  std::optional<PolyExpr> expr;
  int line_no = 0;

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t s0 = 0;
    while (s0 <= line.size()) {
      std::size_t s1 = line.find(';', s0);
      if (s1 == std::string_view::npos) s1 = line.size();
      std::string_view stmt = trim(line.substr(s0, s1 - s0));
      s0 = s1 + 1;
      if (stmt.empty()) continue;

      StatementParser ps(stmt, line_no);
      if (!expr) {
        ps.expect("n");
        ps.expect("=");
        dim = ps.integer();
        if (dim <= 0) throw ParseError(line_no, "dimension must be a positive integer");
        if (!ps.at_end()) ps.fail("trailing characters after dimension");
        expr.emplace(dim);
        continue;
      }

      ps.consume("monomial:");
      ps.expect("a");
      ps.expect("=");
      auto a = ps.int_list();
      ps.expect("b");
      ps.expect("=");
      auto b = ps.int_list();
      ps.expect("c");
      ps.expect("=");
      Complex c = ps.coefficient();
      if (!ps.at_end()) ps.fail("trailing characters after coefficient");

      if (static_cast<int>(a.size()) != dim || static_cast<int>(b.size()) != dim) {
        throw ParseError(line_no, "dimension mismatch: exponent lists must have " +
                                      std::to_string(dim) + " entries");
      }
      for (int e : a) if (e < 0) throw ParseError(line_no, "negative exponent");
      for (int e : b) if (e < 0) throw ParseError(line_no, "negative exponent");
      expr->add_term({MultiExponent(std::move(a)), MultiExponent(std::move(b))}, c);
    }
    if (end == text.size()) break;
  }

  if (!expr) throw ParseError(line_no, "missing dimension declaration 'n = <int>'");
  return PolyPotential(std::move(*expr));
}

Complex parse_complex(std::string_view text) {
  try {
    StatementParser ps(text, 1);
    const Complex c = ps.coefficient();
    if (!ps.at_end()) ps.fail("trailing characters after complex number");
    return c;
  } catch (const ParseError& e) {
    throw Error("invalid complex number '" + std::string(text) + "'");
  }
}

PolyPotential parse_potential(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_potential(buf.str());
}

PolyPotential load_potential(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open potential file " + path.string());
  return parse_potential(in);
}

std::string format_potential(const PolyPotential& p) {
  std::ostringstream os;
  os << "n = " << p.dim() << "\n";
  char buf[96];
  for (const auto& [key, c] : p.terms()) {
    os << "monomial: a=[";
    for (int j = 0; j < p.dim(); ++j) os << (j ? "," : "") << key.z_exp[j];
    os << "] b=[";
    for (int j = 0; j < p.dim(); ++j) os << (j ? "," : "") << key.zbar_exp[j];
    std::snprintf(buf, sizeof buf, "] c=%.17g%+.17gi\n", c.real(), c.imag());
    os << buf;
  }
  return os.str();
}

double evaluate(const PolyPotential& p, const CPoint& z) { return p.expr().evaluate(z).real(); }

Complex evaluate(const PolyExpr& p, const CPoint& z) { return p.evaluate(z); }

namespace {

template <bool OnZbar>
PolyExpr differentiate(const PolyExpr& p, int idx) {
  if (idx < 0 || idx >= p.dim()) {
    throw DimensionError("derivative index " + std::to_string(idx) + " out of range for n = " +
                         std::to_string(p.dim()));
  }
  PolyExpr out(p.dim());
  for (const auto& [key, c] : p.terms()) {
    const MultiExponent& e = OnZbar ? key.zbar_exp : key.z_exp;
    const int power = e[idx];
    if (power == 0) continue;
    MonomialKey k = key;
    (OnZbar ? k.zbar_exp : k.z_exp) = e.decremented(idx);
    out.add_term(k, c * static_cast<double>(power));
  }
  return out;
}

}  // namespace

PolyExpr wirtinger_z(const PolyExpr& p, int mu) { return differentiate<false>(p, mu); }

PolyExpr wirtinger_zbar(const PolyExpr& p, int nu) { return differentiate<true>(p, nu); }

std::map<Bidegree, PolyExpr> bidegree_decompose(const PolyPotential& p) {
  std::map<Bidegree, PolyExpr> out;
  for (const auto& [key, c] : p.terms()) {
    Bidegree bd{key.z_exp.total(), key.zbar_exp.total()};
    out.try_emplace(bd, p.dim()).first->second.add_term(key, c);
  }
  return out;
}

std::optional<int> homogeneous_degree(const PolyPotential& p) {
  std::optional<int> deg;
  for (const auto& [key, c] : p.terms()) {
    const int d = key.z_exp.total() + key.zbar_exp.total();
    if (deg && *deg != d) return std::nullopt;
    deg = d;
  }
  if (deg && *deg % 2 != 0) return std::nullopt;
  return deg;
}

}  // namespace mafol
