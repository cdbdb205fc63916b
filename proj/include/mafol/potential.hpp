#pragma once

// Real-valued polynomials in z and zbar stored as sparse monomial maps, with
// exact Wirtinger differentiation and bidegree bookkeeping.

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mafol/types.hpp"

namespace mafol {

/// Per-variable exponent vector of a monomial. Entries are non-negative.
class MultiExponent {
 public:
  MultiExponent() = default;
  explicit MultiExponent(std::vector<int> entries);

  static MultiExponent zeros(int n) { return MultiExponent(std::vector<int>(n, 0)); }

  int size() const noexcept { return static_cast<int>(entries_.size()); }
  int operator[](int j) const { return entries_[j]; }
  std::span<const int> entries() const noexcept { return entries_; }
  int total() const noexcept;

  /// Copy with entry j lowered by one. Requires entries()[j] > 0.
  MultiExponent decremented(int j) const;

  auto operator<=>(const MultiExponent&) const = default;

 private:
  std::vector<int> entries_;
};

/// Key of the monomial z^z_exp * conj(z)^zbar_exp.
struct MonomialKey {
  MultiExponent z_exp;
  MultiExponent zbar_exp;

  MonomialKey conjugate() const { return {zbar_exp, z_exp}; }
  auto operator<=>(const MonomialKey&) const = default;
};

using TermMap = std::map<MonomialKey, Complex>;

/// Complex-valued polynomial in z, zbar. Zero coefficients are never stored.
class PolyExpr {
 public:
  explicit PolyExpr(int dim);
  PolyExpr(int dim, TermMap terms);

  int dim() const noexcept { return dim_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Complex coefficient(const MonomialKey& key) const;

  /// Adds c to the coefficient of key; a resulting exact zero is removed.
  void add_term(const MonomialKey& key, Complex c);

  Complex evaluate(const CPoint& z) const;

  friend bool operator==(const PolyExpr&, const PolyExpr&) = default;

 private:
  void check_key(const MonomialKey& key) const;

  int dim_;
  TermMap terms_;
};

/// A PolyExpr whose coefficients satisfy c(a,b) == conj(c(b,a)) exactly, so
/// that it takes real values. Positivity and plurisubharmonicity are not
/// enforced here; they are properties that the analysis modules measure.
class PolyPotential {
 public:
  /// Throws Error("non-Hermitian ...") if the symmetry fails for any key.
  explicit PolyPotential(PolyExpr expr);
  PolyPotential(int dim, TermMap terms) : PolyPotential(PolyExpr(dim, std::move(terms))) {}

  int dim() const noexcept { return expr_.dim(); }
  const TermMap& terms() const noexcept { return expr_.terms(); }
  const PolyExpr& expr() const noexcept { return expr_; }

  friend bool operator==(const PolyPotential&, const PolyPotential&) = default;

 private:
  PolyExpr expr_;
};

/// Parses the potential file format:
///
///     n = 2
///     monomial: a=[1,0] b=[1,0] c=1+0i
///
/// '#' starts a comment and blank lines are skipped. ';' also separates
/// statements, and the "monomial:" prefix is optional. Repeated keys are
/// summed before the Hermitian check.
PolyPotential parse_potential(std::string_view text);
PolyPotential parse_potential(std::istream& in);
PolyPotential load_potential(const std::filesystem::path& path);

/// One complex number in the coefficient syntax: "1", "-2.5i", "1+0.5i",
/// "3e-2-1i". Throws Error on anything else.
Complex parse_complex(std::string_view text);

/// Writes p in the file format; parse_potential(format_potential(p)) == p.
std::string format_potential(const PolyPotential& p);

double evaluate(const PolyPotential& p, const CPoint& z);
Complex evaluate(const PolyExpr& p, const CPoint& z);

/// d/dz^mu with 0-based mu.
PolyExpr wirtinger_z(const PolyExpr& p, int mu);
inline PolyExpr wirtinger_z(const PolyPotential& p, int mu) { return wirtinger_z(p.expr(), mu); }

/// d/dzbar^nu with 0-based nu.
PolyExpr wirtinger_zbar(const PolyExpr& p, int nu);
inline PolyExpr wirtinger_zbar(const PolyPotential& p, int nu) { return wirtinger_zbar(p.expr(), nu); }

/// (l, m) -> the terms with |z_exp| = l and |zbar_exp| = m.
using Bidegree = std::pair<int, int>;
std::map<Bidegree, PolyExpr> bidegree_decompose(const PolyPotential& p);

/// 2k when every term has total degree 2k, otherwise nullopt. The zero
/// polynomial has no degree.
std::optional<int> homogeneous_degree(const PolyPotential& p);

}  // namespace mafol
