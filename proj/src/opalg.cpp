#include "ncosc/opalg.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>

namespace ncosc {

namespace {

constexpr std::array<std::string_view, 6> kSymbolNames = {"x", "y", "z", "px", "py", "pz"};

constexpr std::size_t kNoDescent = static_cast<std::size_t>(-1);

bool commutes(Symbol a, Symbol b) { return axis_of(a) != axis_of(b) || kind_of(a) == kind_of(b); }

/// Index of the first adjacent pair out of canonical order, or npos.
std::size_t first_descent(const Word& w) {
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    if (w[k + 1] < w[k]) return k;
  }
  return kNoDescent;
}

Coefficient minus_i_hbar() { return -(Coefficient::imag_unit() * Coefficient::param(Param::hbar)); }

std::vector<Monomial> from_map(const std::map<Word, Coefficient>& m) {
  std::vector<Monomial> out;
  out.reserve(m.size());
  for (const auto& [w, c] : m) {
    if (!c.is_zero()) out.push_back({w, c});
  }
  return out;
}

}  // namespace

std::string_view symbol_name(Symbol s) { return kSymbolNames[static_cast<std::size_t>(s)]; }

bool Monomial::is_normal() const { return std::is_sorted(factors.begin(), factors.end()); }

OperatorExpr::OperatorExpr(const Coefficient& scalar) {
  if (!scalar.is_zero()) terms_.push_back({{}, scalar});
}

OperatorExpr::OperatorExpr(Symbol s) { terms_.push_back({{s}, Coefficient(1)}); }

OperatorExpr::OperatorExpr(std::vector<Monomial> terms) {
  for (auto& t : terms) {
    if (!t.coeff.is_zero()) terms_.push_back(std::move(t));
  }
}

std::size_t OperatorExpr::degree() const {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.factors.size());
  return d;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

OperatorExpr& OperatorExpr::operator-=(const OperatorExpr& other) {
  for (const auto& t : other.terms_) terms_.push_back({t.factors, -t.coeff});
  return *this;
}

OperatorExpr& OperatorExpr::operator*=(const OperatorExpr& other) {
  std::vector<Monomial> out;
  out.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      Monomial m{a.factors, a.coeff * b.coeff};
      if (m.coeff.is_zero()) continue;
      m.factors.insert(m.factors.end(), b.factors.begin(), b.factors.end());
      out.push_back(std::move(m));
    }
  }
  terms_ = std::move(out);
  return *this;
}

OperatorExpr& OperatorExpr::operator*=(const Coefficient& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

OperatorExpr OperatorExpr::operator-() const {
  OperatorExpr out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

bool operator==(const OperatorExpr& a, const OperatorExpr& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].factors != b.terms_[k].factors || !(a.terms_[k].coeff == b.terms_[k].coeff)) {
      return false;
    }
  }
  return true;
}

OperatorExpr normalize(const OperatorExpr& e) {
  std::map<Word, Coefficient> pending;
  for (const auto& t : e.terms()) pending[t.factors] += t.coeff;

  std::map<Word, Coefficient> done;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    Word w = std::move(node.key());
    Coefficient c = std::move(node.mapped());
    if (c.is_zero()) continue;

    // Commuting swaps are free, so sort through them until the first pair
    // that needs the canonical commutator.
    std::size_t k = first_descent(w);
    while (k != kNoDescent && commutes(w[k], w[k + 1])) {
      std::swap(w[k], w[k + 1]);
      k = first_descent(w);
    }
    if (k == kNoDescent) {
      done[w] += c;
      continue;
    }
    // w[k] = p_i, w[k+1] = x_i
    Word contracted;
    contracted.reserve(w.size() - 2);
    contracted.insert(contracted.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
    contracted.insert(contracted.end(), w.begin() + static_cast<std::ptrdiff_t>(k + 2), w.end());
    pending[contracted] += c * minus_i_hbar();
    std::swap(w[k], w[k + 1]);
    pending[w] += c;
  }
  return OperatorExpr(from_map(done));
}

bool is_normalized(const OperatorExpr& e) {
  const auto& t = e.terms();
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!t[k].is_normal() || t[k].coeff.is_zero()) return false;
    if (k > 0 && !(t[k - 1].factors < t[k].factors)) return false;
  }
  return true;
}

bool equivalent(const OperatorExpr& a, const OperatorExpr& b) { return normalize(a - b).empty(); }

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) { return normalize(a * b - b * a); }

OperatorExpr adjoint(const OperatorExpr& e) {
  std::vector<Monomial> out;
  out.reserve(e.terms().size());
  for (const auto& t : e.terms()) out.push_back({Word(t.factors.rbegin(), t.factors.rend()), t.coeff.conj()});
  return OperatorExpr(std::move(out));
}

bool is_hermitian(const OperatorExpr& e) { return equivalent(adjoint(e), e); }

OperatorExpr substitute(const OperatorExpr& e, const std::array<OperatorExpr, 6>& images) {
  OperatorExpr out;
  for (const auto& t : e.terms()) {
    OperatorExpr product(t.coeff);
    for (Symbol s : t.factors) product *= images[static_cast<std::size_t>(s)];
    out += product;
  }
  return normalize(out);
}

std::string to_text(const OperatorExpr& e) {
  OperatorExpr n = normalize(e);
  std::vector<Monomial> terms = n.terms();
  std::stable_sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) {
    if (a.factors.size() != b.factors.size()) return a.factors.size() > b.factors.size();
    return a.factors < b.factors;
  });
  if (terms.empty()) return "0";

  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    std::string word;
    for (std::size_t i = 0; i < t.factors.size();) {
      std::size_t j = i;
      while (j < t.factors.size() && t.factors[j] == t.factors[i]) ++j;
      if (!word.empty()) word += '*';
      word += symbol_name(t.factors[i]);
      if (j - i > 1) word += "^" + std::to_string(j - i);
      i = j;
    }

    const auto atoms = t.coeff.atoms();
    bool negative = false;
    std::string body;
    if (atoms.size() == 1) {
      negative = atoms[0].negative;
      if (atoms[0].body == "1" && !word.empty()) {
        body = word;
      } else if (atoms[0].body == "1") {
        body = "1";
      } else {
        body = "(" + atoms[0].body + ")";
        if (!word.empty()) body += "*" + word;
      }
    } else {
      body = "(" + t.coeff.to_text() + ")";
      if (!word.empty()) body += "*" + word;
    }
    if (k == 0) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    out += body;
  }
  return out;
}

// --- parser ---------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  OperatorExpr parse() {
    OperatorExpr e = parse_sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("parse error at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  OperatorExpr parse_sum() {
    OperatorExpr total;
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    OperatorExpr term = parse_product();
    total += negative ? -term : term;
    while (true) {
      if (accept('+')) {
        total += parse_product();
      } else if (accept('-')) {
        total -= parse_product();
      } else {
        break;
      }
    }
    return total;
  }

  OperatorExpr parse_product() {
    OperatorExpr e = parse_power();
    while (accept('*')) e *= parse_power();
    return e;
  }

  OperatorExpr parse_power() {
    skip_space();
    const std::size_t start = pos_;
    bool param_atom = false;
    OperatorExpr base = parse_primary(param_atom);
    if (!accept('^')) return base;
    bool negative = accept('-');
    long long n = parse_integer();
    if (negative) {
      if (!param_atom) {
        pos_ = start;
        fail("negative power is only allowed on a parameter");
      }
      return OperatorExpr(base.terms().front().coeff.pow(-static_cast<int>(n)));
    }
    OperatorExpr out(Coefficient(1));
    for (long long k = 0; k < n; ++k) out *= base;
    return out;
  }

  long long parse_integer() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return std::stoll(std::string(text_.substr(start, pos_ - start)));
  }

  OperatorExpr parse_primary(bool& param_atom) {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      OperatorExpr inner = parse_sum();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(parse_integer());
      if (accept('/')) value /= Rational(parse_integer());
      return OperatorExpr(Coefficient(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "i") return OperatorExpr(Coefficient::imag_unit());
      if (name == "Lx") return angular_momentum(1);
      if (name == "Ly") return angular_momentum(2);
      if (name == "Lz") return angular_momentum(3);
      for (Symbol s : kAllSymbols) {
        if (symbol_name(s) == name) return OperatorExpr(s);
      }
      if (auto p = param_from_name(name)) {
        param_atom = true;
        return OperatorExpr(Coefficient::param(*p));
      }
      pos_ = start;
      fail("unknown name '" + std::string(name) + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

OperatorExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

OperatorExpr angular_momentum(int axis) {
  if (axis < 1 || axis > 3) throw std::out_of_range("axis must be 1, 2 or 3");
  const int j = axis % 3 + 1;
  const int k = j % 3 + 1;
  // L_i = r_j p_k - r_k p_j with (i, j, k) cyclic
  return OperatorExpr(make_symbol(SymbolKind::position, j)) * OperatorExpr(make_symbol(SymbolKind::momentum, k)) -
         OperatorExpr(make_symbol(SymbolKind::position, k)) * OperatorExpr(make_symbol(SymbolKind::momentum, j));
}

// --- tensors and Bopp shift -----------------------------------------------

AntisymTensor AntisymTensor::plane() {
  return AntisymTensor(2, {{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}});
}

AntisymTensor AntisymTensor::space() {
  return AntisymTensor(3, {{{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}});
}

int AntisymTensor::operator()(int i, int j) const {
  if (i < 1 || i > 3 || j < 1 || j > 3) throw std::out_of_range("tensor axis must be 1, 2 or 3");
  if (i > dim_ || j > dim_) return 0;
  return entries_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
}

bool AntisymTensor::is_antisymmetric() const {
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      if ((*this)(i, j) != -(*this)(j, i)) return false;
    }
  }
  return true;
}

int lambda_contract(const AntisymTensor& t, int i, int j, Contraction convention) {
  if (i < 1 || i > t.dim() || j < 1 || j > t.dim()) {
    throw std::out_of_range("contraction axis outside tensor dimension");
  }
  int sum = 0;
  for (int mu = 1; mu <= t.dim(); ++mu) {
    sum += convention == Contraction::first_first ? t(i, mu) * t(j, mu) : t(i, mu) * t(mu, j);
  }
  return sum;
}

OperatorExpr bopp_shift(Symbol s, const AntisymTensor& t) {
  const int i = axis_of(s);
  const bool position = kind_of(s) == SymbolKind::position;
  OperatorExpr out = Coefficient::param(Param::alpha) * OperatorExpr(s);
  // (theta|eta) / (2 alpha hbar)
  const Coefficient scale = Coefficient::rational(position ? -1 : 1, 2) *
                            Coefficient::param(position ? Param::theta : Param::eta) *
                            Coefficient::param(Param::alpha, -1) * Coefficient::param(Param::hbar, -1);
  for (int j = 1; j <= 3; ++j) {
    const int lambda = t(i, j);
    if (lambda == 0) continue;
    const Symbol partner = make_symbol(position ? SymbolKind::momentum : SymbolKind::position, j);
    out += (Coefficient(lambda) * scale) * OperatorExpr(partner);
  }
  return normalize(out);
}

std::array<OperatorExpr, 6> bopp_images(const AntisymTensor& t) {
  std::array<OperatorExpr, 6> images;
  for (Symbol s : kAllSymbols) images[static_cast<std::size_t>(s)] = bopp_shift(s, t);
  return images;
}

OperatorExpr commutative_hamiltonian() {
  const OperatorExpr x(Symbol::x), y(Symbol::y), z(Symbol::z);
  const OperatorExpr px(Symbol::px), py(Symbol::py), pz(Symbol::pz);
  const Coefficient half = Coefficient::rational(1, 2);
  const Coefficient m = Coefficient::param(Param::mass);
  OperatorExpr h = (half * Coefficient::param(Param::mass, -1)) * (px * px + py * py + pz * pz);
  h -= (half * Coefficient::param(Param::omega_c)) * angular_momentum(3);
  h += (half * m * Coefficient::param(Param::omega_t, 2)) * (x * x + y * y);
  h += (half * m * Coefficient::param(Param::omega, 2)) * (z * z);
  return normalize(h);
}

std::string bucket_label(BucketKey key) {
  const auto [a, b] = key;
  if (a == 0 && b == 0) return "H_0";
  std::string label = "H";
  if (b > 0) label += "_eta" + (b > 1 ? std::to_string(b) : std::string());
  if (a > 0) label += "_theta" + (a > 1 ? std::to_string(a) : std::string());
  return label;
}

std::map<BucketKey, OperatorExpr> collect_by_noncommutativity(const OperatorExpr& e) {
  constexpr auto kTheta = static_cast<std::size_t>(Param::theta);
  constexpr auto kEta = static_cast<std::size_t>(Param::eta);
  constexpr auto kHbar = static_cast<std::size_t>(Param::hbar);
  std::map<BucketKey, std::map<Word, Coefficient>> sorted;
  const OperatorExpr normal = normalize(e);
  for (const auto& t : normal.terms()) {
    for (const auto& [powers, c] : t.coeff.terms()) {
      ParamPowers stripped = powers;
      const BucketKey key{powers[kTheta], powers[kEta]};
      stripped[kTheta] = 0;
      stripped[kEta] = 0;
      stripped[kHbar] += key.first + key.second;
      sorted[key][t.factors] += Coefficient::term(stripped, c);
    }
  }
  std::map<BucketKey, OperatorExpr> out;
  for (const auto& [key, words] : sorted) out.emplace(key, OperatorExpr(from_map(words)));
  return out;
}

std::map<BucketKey, OperatorExpr> expand_nc_hamiltonian(Space space) {
  const OperatorExpr h = substitute(commutative_hamiltonian(), bopp_images(AntisymTensor::for_space(space)));
  auto buckets = collect_by_noncommutativity(h);
  for (BucketKey key : kBucketKeys) buckets.try_emplace(key);
  return buckets;
}

const std::map<BucketKey, OperatorExpr>& nc_hamiltonian_buckets(Space space) {
  static std::once_flag once;
  static std::map<BucketKey, OperatorExpr> plane_buckets;
  static std::map<BucketKey, OperatorExpr> space_buckets;
  std::call_once(once, [] {
    plane_buckets = expand_nc_hamiltonian(Space::plane);
    space_buckets = expand_nc_hamiltonian(Space::space);
  });
  return space == Space::plane ? plane_buckets : space_buckets;
}

}  // namespace ncosc
