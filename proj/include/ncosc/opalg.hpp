#pragma once

// Exact symbolic algebra over the canonical operators {x, y, z, px, py, pz}
// with [x_i, p_j] = i*hbar*delta_ij.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncosc/coefficient.hpp"

namespace ncosc {

enum class SymbolKind : std::uint8_t { position, momentum };

/// Canonical symbol. The enumerator order is the canonical monomial order:
/// positions before momenta, axes ascending.
enum class Symbol : std::uint8_t { x, y, z, px, py, pz };

inline constexpr std::array<Symbol, 6> kAllSymbols = {Symbol::x,  Symbol::y,  Symbol::z,
                                                      Symbol::px, Symbol::py, Symbol::pz};

constexpr SymbolKind kind_of(Symbol s) {
  return static_cast<int>(s) < 3 ? SymbolKind::position : SymbolKind::momentum;
}
/// Axis index 1, 2 or 3.
constexpr int axis_of(Symbol s) { return static_cast<int>(s) % 3 + 1; }
constexpr Symbol make_symbol(SymbolKind kind, int axis) {
  return static_cast<Symbol>((kind == SymbolKind::position ? 0 : 3) + axis - 1);
}
std::string_view symbol_name(Symbol s);

using Word = std::vector<Symbol>;

struct Monomial {
  Word factors;
  Coefficient coeff;

  /// True iff the factors are sorted in canonical order.
  bool is_normal() const;
};

/// Polynomial in the canonical operators. Terms form a multiset until
/// normalize() is applied.
class OperatorExpr {
 public:
  OperatorExpr() = default;
  OperatorExpr(const Coefficient& scalar);  // NOLINT(google-explicit-constructor)
  OperatorExpr(Symbol s);                   // NOLINT(google-explicit-constructor)
  explicit OperatorExpr(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  /// Highest word length among the terms.
  std::size_t degree() const;

  OperatorExpr& operator+=(const OperatorExpr& other);
  OperatorExpr& operator-=(const OperatorExpr& other);
  OperatorExpr& operator*=(const OperatorExpr& other);
  OperatorExpr& operator*=(const Coefficient& c);
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  friend OperatorExpr operator*(OperatorExpr a, const OperatorExpr& b) { return a *= b; }
  friend OperatorExpr operator*(const Coefficient& c, OperatorExpr a) { return a *= c; }
  OperatorExpr operator-() const;

  /// Structural equality of the stored terms. Compare normalized forms for
  /// operator equality (see equivalent()).
  friend bool operator==(const OperatorExpr& a, const OperatorExpr& b);

 private:
  std::vector<Monomial> terms_;
};

/// Rewrites into normal form using p_i x_j -> x_j p_i - i*hbar*delta_ij.
/// Output terms are sorted by word and carry distinct words.
OperatorExpr normalize(const OperatorExpr& e);
bool is_normalized(const OperatorExpr& e);
bool equivalent(const OperatorExpr& a, const OperatorExpr& b);

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);

/// Formal adjoint: reversed words, conjugated coefficients (parameters are real).
OperatorExpr adjoint(const OperatorExpr& e);
bool is_hermitian(const OperatorExpr& e);

/// Replaces every canonical symbol by the given expression (indexed by Symbol).
OperatorExpr substitute(const OperatorExpr& e, const std::array<OperatorExpr, 6>& images);

/// Deterministic rendering, e.g. "x*px - (i*hbar)". Normalizes first.
std::string to_text(const OperatorExpr& e);

/// Parses the to_text format. Also accepts the shorthands Lx, Ly, Lz.
/// Throws ParseError on malformed input.
OperatorExpr parse_expr(std::string_view text);

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// L_axis = (r x p)_axis.
OperatorExpr angular_momentum(int axis);

// --- noncommutativity tensors and the Bopp shift -------------------------

enum class Space : std::uint8_t { plane, space };

/// Antisymmetric tensor lambda_ij. The plane tensor has only the 12/21
/// entries; the space tensor is cyclic in 12, 23, 31.
class AntisymTensor {
 public:
  static AntisymTensor plane();
  static AntisymTensor space();
  static AntisymTensor for_space(Space s) { return s == Space::plane ? plane() : space(); }

  int dim() const { return dim_; }
  /// Entry for axes 1..3. Axes beyond dim() read as zero.
  int operator()(int i, int j) const;
  bool is_antisymmetric() const;

 private:
  AntisymTensor(int dim, std::array<std::array<int, 3>, 3> entries) : dim_(dim), entries_(entries) {}
  int dim_;
  std::array<std::array<int, 3>, 3> entries_;
};

enum class Contraction : std::uint8_t {
  first_first,   // sum_mu lambda_{i mu} lambda_{j mu}
  first_second,  // sum_mu lambda_{i mu} lambda_{mu j}
};

/// Throws std::out_of_range for axes outside 1..dim.
int lambda_contract(const AntisymTensor& t, int i, int j, Contraction convention);

/// x_i -> alpha x_i - (theta / 2 alpha hbar) sum_j lambda_ij p_j,
/// p_i -> alpha p_i + (eta / 2 alpha hbar) sum_j lambda_ij x_j.
/// An axis outside the tensor's dimension is only rescaled by alpha.
OperatorExpr bopp_shift(Symbol s, const AntisymTensor& t);
std::array<OperatorExpr, 6> bopp_images(const AntisymTensor& t);

/// H0(x,p) = p^2/2m - (omega_c/2) L_z + (m omega_t^2/2)(x^2+y^2) + (m omega^2/2) z^2.
OperatorExpr commutative_hamiltonian();

/// (theta-power, eta-power)
using BucketKey = std::pair<int, int>;

inline constexpr std::array<BucketKey, 6> kBucketKeys = {
    BucketKey{0, 0}, BucketKey{0, 1}, BucketKey{1, 0},
    BucketKey{1, 1}, BucketKey{0, 2}, BucketKey{2, 0}};

/// "H_0", "H_eta", "H_theta", "H_eta_theta", "H_eta2", "H_theta2".
std::string bucket_label(BucketKey key);

/// Splits a normalized expression by powers of theta and eta. Each bucket has
/// theta^a eta^b removed and hbar^(a+b) multiplied in, so that
/// e = sum (theta^a eta^b / hbar^(a+b)) bucket(a,b).
std::map<BucketKey, OperatorExpr> collect_by_noncommutativity(const OperatorExpr& e);

/// Bopp-substituted H0 collected by powers of theta and eta. Bucket (0,0)
/// equals alpha^2 H0(x,p).
std::map<BucketKey, OperatorExpr> expand_nc_hamiltonian(Space space);

/// Memoized expand_nc_hamiltonian().
const std::map<BucketKey, OperatorExpr>& nc_hamiltonian_buckets(Space space);

}  // namespace ncosc
