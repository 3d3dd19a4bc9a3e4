#include "tracelab/arith.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fft.hpp"

namespace tracelab {

i64 mod_inverse(i64 x, i64 c) {
  if (c <= 0) throw std::invalid_argument("mod_inverse: modulus must be positive");
  if (c == 1) return 0;
  i64 a = pos_mod(x, c), m = c;
  i64 u = 1, v = 0;
  while (m != 0) {
    i64 q = a / m;
    a -= q * m;
    std::swap(a, m);
    u -= q * v;
    std::swap(u, v);
  }
  if (a != 1) {
    throw std::domain_error("mod_inverse: " + std::to_string(x) + " is not invertible mod " +
                            std::to_string(c));
  }
  return pos_mod(u, c);
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n <= 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int moebius(i64 n) {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

i64 euler_phi(i64 n) {
  i64 phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

int divisor_count(i64 n) {
  int d = 1;
  for (auto [p, e] : factorize(n)) d *= e + 1;
  return d;
}

LevelSplit level_split(i64 ell, i64 D) {
  if (ell <= 0 || D <= 0) throw std::invalid_argument("level_split: arguments must be positive");
  LevelSplit s;
  s.ell = ell;
  s.ell_prime = ell;
  for (i64 g = std::gcd(s.ell_prime, D); g > 1; g = std::gcd(s.ell_prime, D)) {
    s.ell_prime /= g;
    s.ell0 *= g;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Characters

namespace {

struct Component {
  i64 p = 2;
  int e = 1;
  i64 q = 2;
  i64 order = 1;  // number of characters of (Z/q)^*
  // Discrete-log coordinates of each residue: for odd p a single exponent
  // of a primitive root; for 2^e with e >= 3 the pair (a, b) in (-1)^a 5^b.
  std::vector<i64> log_a, log_b;
  i64 size_b = 1;
};

i64 pow_mod(i64 b, i64 e, i64 m) {
  i64 r = 1 % m;
  b = pos_mod(b, m);
  while (e > 0) {
    if (e & 1) r = static_cast<i64>((__int128)r * b % m);
    b = static_cast<i64>((__int128)b * b % m);
    e >>= 1;
  }
  return r;
}

Component make_component(i64 p, int e) {
  Component c;
  c.p = p;
  c.e = e;
  c.q = 1;
  for (int i = 0; i < e; ++i) c.q *= p;
  c.log_a.assign(c.q, -1);
  c.log_b.assign(c.q, 0);
  i64 phi = c.q / p * (p - 1);
  if (p != 2) {
    i64 g = 2;
    for (;; ++g) {
      if (std::gcd(g, c.q) != 1) continue;
      bool prim = true;
      for (auto [r, _] : factorize(phi)) {
        if (pow_mod(g, phi / r, c.q) == 1) {
          prim = false;
          break;
        }
      }
      if (prim) break;
    }
    i64 x = 1;
    for (i64 k = 0; k < phi; ++k) {
      c.log_a[x] = k;
      x = x * g % c.q;
    }
    c.order = phi;
  } else if (e == 1) {
    c.log_a[1] = 0;
    c.order = 1;
  } else if (e == 2) {
    c.log_a[1] = 0;
    c.log_a[3] = 1;
    c.order = 2;
  } else {
    c.size_b = c.q / 4;
    i64 x = 1;
    for (i64 b = 0; b < c.size_b; ++b) {
      c.log_a[x] = 0;
      c.log_b[x] = b;
      c.log_a[c.q - x] = 1;
      c.log_b[c.q - x] = b;
      x = x * 5 % c.q;
    }
    c.order = 2 * c.size_b;
  }
  return c;
}

// Phase of component character j at residue x, as numerator over c.order.
i64 component_phase(const Component& c, i64 j, i64 x) {
  i64 r = pos_mod(x, c.q);
  if (c.p == 2 && c.e >= 3) {
    i64 j1 = j / c.size_b, j2 = j % c.size_b;
    // j1 a / 2 + j2 b / size_b, over 2 size_b
    return pos_mod(j1 * c.log_a[r] * c.size_b + j2 * c.log_b[r] * 2, c.order);
  }
  return pos_mod(j * c.log_a[r], c.order);
}

std::vector<Component> components_of(i64 D) {
  std::vector<Component> comps;
  for (auto [p, e] : factorize(D)) comps.push_back(make_component(p, e));
  return comps;
}

std::vector<cplx> character_values(i64 D, const std::vector<Component>& comps,
                                   const std::vector<i64>& js) {
  i64 den = 1;
  for (const auto& c : comps) den = std::lcm(den, c.order);
  std::vector<cplx> v(D, cplx{0.0, 0.0});
  for (i64 x = 0; x < D; ++x) {
    if (std::gcd(x, D) != 1) continue;
    i64 num = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      num += component_phase(comps[i], js[i], x) * (den / comps[i].order);
    }
    v[x] = e_frac(num, den);
  }
  if (D == 1) v[0] = 1.0;
  return v;
}

}  // namespace

DirichletCharacter::DirichletCharacter(i64 modulus, int index, std::vector<cplx> values)
    : modulus_(modulus), index_(index), values_(std::move(values)) {
  if (modulus_ <= 0 || static_cast<i64>(values_.size()) != modulus_) {
    throw std::invalid_argument("DirichletCharacter: value table does not match modulus");
  }
  parity_ = std::real((*this)(-1)) > 0 ? 1 : -1;
  conductor_ = modulus_;
  for (i64 d = 1; d < modulus_; ++d) {
    if (modulus_ % d) continue;
    bool induced = true;
    for (i64 x = 1; x < modulus_ && induced; x += d) {
      if (std::gcd(x, modulus_) == 1 && std::abs(values_[x] - 1.0) > 1e-9) induced = false;
    }
    if (induced) {
      conductor_ = d;
      break;
    }
  }
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(values_[i]);
  int idx = index_;
  // Locate the conjugate's index in the enumeration.
  auto all = build_characters(modulus_);
  for (const auto& c : all) {
    bool same = true;
    for (std::size_t i = 0; i < v.size() && same; ++i) same = std::abs(c.values_[i] - v[i]) < 1e-9;
    if (same) {
      idx = c.index_;
      break;
    }
  }
  return DirichletCharacter(modulus_, idx, std::move(v));
}

bool DirichletCharacter::is_trivial() const {
  for (i64 x = 0; x < modulus_; ++x) {
    if (std::gcd(x, modulus_) == 1 && std::abs(values_[x] - 1.0) > 1e-9) return false;
  }
  return true;
}

bool DirichletCharacter::is_real() const {
  for (const auto& v : values_) {
    if (std::abs(v.imag()) > 1e-9) return false;
  }
  return true;
}

std::string DirichletCharacter::describe() const {
  std::ostringstream os;
  os << "chi mod " << modulus_ << " #" << index_ << " (conductor " << conductor_ << ", "
     << (parity_ > 0 ? "even" : "odd") << ")";
  return os.str();
}

std::vector<DirichletCharacter> build_characters(i64 D) {
  if (D <= 0) throw std::invalid_argument("build_characters: modulus must be positive");
  auto comps = components_of(D);
  i64 total = 1;
  for (const auto& c : comps) total *= c.order;
  std::vector<DirichletCharacter> out;
  out.reserve(total);
  std::vector<i64> js(comps.size(), 0);
  for (i64 idx = 0; idx < total; ++idx) {
    i64 r = idx;
    for (std::size_t i = comps.size(); i-- > 0;) {
      js[i] = r % comps[i].order;
      r /= comps[i].order;
    }
    out.emplace_back(D, static_cast<int>(idx), character_values(D, comps, js));
  }
  return out;
}

DirichletCharacter character(i64 D, int index) {
  if (D <= 0) throw std::invalid_argument("character: modulus must be positive");
  auto comps = components_of(D);
  i64 total = 1;
  for (const auto& c : comps) total *= c.order;
  if (index < 0 || index >= total) {
    throw std::out_of_range("character: index " + std::to_string(index) + " out of range for modulus " +
                            std::to_string(D) + " (" + std::to_string(total) + " characters)");
  }
  std::vector<i64> js(comps.size(), 0);
  i64 r = index;
  for (std::size_t i = comps.size(); i-- > 0;) {
    js[i] = r % comps[i].order;
    r /= comps[i].order;
  }
  return DirichletCharacter(D, index, character_values(D, comps, js));
}

DirichletCharacter trivial_character(i64 D) { return character(D, 0); }

int first_primitive_index(i64 D, int parity) {
  for (const auto& c : build_characters(D)) {
    if (c.is_primitive() && c.parity() == parity) return c.index();
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Exponential sums

double kloosterman(i64 m, i64 n, i64 c) {
  if (c <= 0) throw std::invalid_argument("kloosterman: c must be positive");
  double s = 0.0;
  for (i64 x = 0; x < c; ++x) {
    if (std::gcd(x, c) != 1) continue;
    i64 xb = mod_inverse(x, c);
    i64 num = static_cast<i64>(((__int128)pos_mod(m, c) * xb + (__int128)pos_mod(n, c) * x) % c);
    s += std::cos(two_pi * static_cast<double>(num) / static_cast<double>(c));
  }
  return s;
}

cplx twisted_kloosterman(const DirichletCharacter& chi, i64 m, i64 n, i64 c) {
  if (c <= 0) throw std::invalid_argument("twisted_kloosterman: c must be positive");
  if (c % chi.modulus() != 0) {
    throw std::invalid_argument("twisted_kloosterman: character modulus " + std::to_string(chi.modulus()) +
                                " does not divide c = " + std::to_string(c));
  }
  cplx s{};
  for (i64 x = 0; x < c; ++x) {
    if (std::gcd(x, c) != 1) continue;
    i64 xb = mod_inverse(x, c);
    i64 num = static_cast<i64>(((__int128)pos_mod(m, c) * xb + (__int128)pos_mod(n, c) * x) % c);
    s += std::conj(chi(x)) * e_frac(num, c);
  }
  return s;
}

cplx gauss_sum(const DirichletCharacter& chi) {
  i64 D = chi.modulus();
  cplx s{};
  for (i64 a = 0; a < D; ++a) s += chi(a) * e_frac(a, D);
  return s / std::sqrt(static_cast<double>(D));
}

i64 ramanujan_sum(i64 D) {
  if (D <= 0) throw std::invalid_argument("ramanujan_sum: D must be positive");
  double s = 0.0;
  for (i64 a = 0; a < D; ++a) {
    if (std::gcd(a, D) == 1) s += std::cos(two_pi * static_cast<double>(a) / static_cast<double>(D));
  }
  return std::llround(s);
}

std::pair<cplx, cplx> check_twisted_multiplicativity(const DirichletCharacter& chi, i64 ell, i64 n,
                                                     i64 c) {
  i64 D = chi.modulus();
  if (std::gcd(c, D) != 1) {
    throw std::invalid_argument("check_twisted_multiplicativity: gcd(c, D) must be 1");
  }
  if (!chi.is_primitive()) {
    throw std::invalid_argument("check_twisted_multiplicativity: character must be primitive");
  }
  LevelSplit ls = level_split(ell, D);
  cplx lhs = twisted_kloosterman(chi, ls.ell0 * D * n, ls.ell_prime, c * D);
  double s = c == 1 ? 1.0 : kloosterman(n, pos_mod(ell, c) * mod_inverse(D, c), c);
  cplx rhs = s * std::conj(chi(c)) * chi(ls.ell_prime) * gauss_sum(chi.conj()) *
             std::sqrt(static_cast<double>(D));
  return {lhs, rhs};
}

bool vanishing_hypothesis(i64 m, i64 n, i64 c) {
  for (auto [p, e] : factorize(c)) {
    if (e >= 2 && pos_mod(m, p) == 0 && pos_mod(n, p) != 0) return true;
  }
  return false;
}

bool vanishing_applies(const DirichletCharacter& chi, i64 m, i64 n, i64 c) {
  i64 f = chi.conductor();
  for (auto [p, e] : factorize(c)) {
    if (e < 2 || pos_mod(m, p) != 0 || pos_mod(n, p) == 0) continue;
    int fe = 0;
    for (i64 r = f; r % p == 0; r /= p) ++fe;
    if (fe <= e - 1) return true;
  }
  return false;
}

bool check_vanishing(const DirichletCharacter& chi, i64 m, i64 n, i64 c) {
  bool hyp = vanishing_hypothesis(m, n, c);
  if (hyp) {
    double mag = std::abs(twisted_kloosterman(chi, m, n, c));
    if (mag > 1e-9 * static_cast<double>(c)) {
      throw std::logic_error("check_vanishing: |S_chi| = " + std::to_string(mag) +
                             " should vanish");
    }
  }
  return hyp;
}

double kloosterman_bound(i64 m, i64 n, i64 c, i64 char_modulus) {
  i64 g = std::gcd(std::gcd(std::abs(m), std::abs(n)), c);
  if (g == 0) g = c;
  double weil = divisor_count(c) * std::sqrt(static_cast<double>(g) * static_cast<double>(c) *
                                             static_cast<double>(char_modulus));
  return std::min(static_cast<double>(euler_phi(c)), weil);
}

std::vector<i64> smallest_prime_factors(i64 n) {
  std::vector<i64> spf(std::max<i64>(n + 1, 2), 0);
  for (i64 i = 2; i <= n; ++i) {
    if (spf[i]) continue;
    for (i64 j = i; j <= n; j += i) {
      if (!spf[j]) spf[j] = i;
    }
  }
  return spf;
}

std::vector<double> kloosterman_range(i64 m, i64 n, i64 cmax, i64 D) {
  if (cmax < 0 || D <= 0) throw std::invalid_argument("kloosterman_range: bad range");
  std::vector<double> out(cmax + 1, 0.0);
  auto spf = smallest_prime_factors(cmax);
  struct Task {
    i64 q, a, c;
  };
  std::vector<Task> tasks;
  for (i64 c = D; c <= cmax; c += D) {
    out[c] = 1.0;
    i64 rest = c;
    while (rest > 1) {
      i64 p = spf[rest], q = 1;
      while (rest % p == 0) {
        rest /= p;
        q *= p;
      }
      i64 r = c / q;
      i64 rb = mod_inverse(r, q);
      i64 a = static_cast<i64>((__int128)pos_mod(m, q) * rb % q * rb % q);
      tasks.push_back({q, a, c});
    }
  }
  std::stable_sort(tasks.begin(), tasks.end(), [](const Task& x, const Task& y) { return x.q < y.q; });
  std::size_t i = 0;
  std::vector<i64> inv;
  std::vector<double> cs;
  while (i < tasks.size()) {
    i64 q = tasks[i].q;
    std::size_t j = i;
    while (j < tasks.size() && tasks[j].q == q) ++j;
    inv.assign(q, 0);
    cs.resize(q);
    i64 p = spf[q];
    if (p == q) {
      if (q > 1) inv[1] = 1;
      for (i64 x = 2; x < q; ++x) inv[x] = q - (q / x) * inv[q % x] % q;
    } else {
      for (i64 x = 1; x < q; ++x)
        if (x % p != 0) inv[x] = mod_inverse(x, q);
    }
    for (i64 x = 0; x < q; ++x) cs[x] = std::cos(two_pi * static_cast<double>(x) / static_cast<double>(q));
    i64 nq = pos_mod(n, q);
    for (std::size_t t = i; t < j; ++t) {
      double s = 0.0;
      i64 a = tasks[t].a;
      if (a % p != 0 || nq % p != 0) {
        // S(a, n; q) = S(1, a n; q) once one entry is a unit.
        i64 b = static_cast<i64>((__int128)a * nq % q), bz = 0;
        for (i64 z = 1; z < q; ++z) {
          bz += b;
          if (bz >= q) bz -= q;
          if (inv[z] == 0) continue;
          i64 idx = inv[z] + bz;
          if (idx >= q) idx -= q;
          s += cs[idx];
        }
      } else {
        for (i64 x = 1; x < q; ++x) {
          if (inv[x] == 0) continue;
          s += cs[(a * inv[x] + nq * x) % q];
        }
      }
      out[tasks[t].c] *= s;
    }
    i = j;
  }
  return out;
}

std::vector<cplx> kloosterman_row(const DirichletCharacter& chi, i64 n, i64 q, i64 stride) {
  if (q % chi.modulus() != 0) throw std::invalid_argument("kloosterman_row: modulus must divide q");
  if (stride < 1 || q % stride != 0) throw std::invalid_argument("kloosterman_row: stride must divide q");
  if (q == 1) return {std::conj(chi(0))};
  // A_j = sum over x with xbar = j of conj(chi(x)) e(n x / q); S(r) = sum_j A_j e(r j / q).
  std::vector<char> unit(q, 1);
  for (const auto& pe : factorize(q)) {
    for (i64 x = 0; x < q; x += pe.first) unit[x] = 0;
  }
  std::vector<i64> xs, pre;
  xs.reserve(q);
  for (i64 x = 1; x < q; ++x)
    if (unit[x]) xs.push_back(x);
  // Batch inversion through prefix products.
  pre.resize(xs.size());
  i64 acc = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    acc = static_cast<i64>((__int128)acc * xs[i] % q);
    pre[i] = acc;
  }
  std::vector<i64> inv(xs.size());
  i64 back = mod_inverse(acc, q);
  for (std::size_t i = xs.size(); i-- > 0;) {
    inv[i] = i == 0 ? back : static_cast<i64>((__int128)back * pre[i - 1] % q);
    back = static_cast<i64>((__int128)back * xs[i] % q);
  }
  // e(t / q) = coarse[t / B] * fine[t % B]
  const i64 B = static_cast<i64>(std::ceil(std::sqrt(static_cast<double>(q))));
  std::vector<cplx> coarse(q / B + 1), fine(B);
  for (i64 t = 0; t < B; ++t) fine[t] = e_frac(t, q);
  for (i64 t = 0; t * B < q; ++t) coarse[t] = e_frac(t * B, q);
  const i64 nq = pos_mod(n, q);
  // Only frequencies stride * r are wanted, so A folds mod q / stride.
  const i64 len = q / stride;
  std::vector<cplx> a(len, cplx{});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    i64 t = static_cast<i64>((__int128)nq * xs[i] % q);
    a[inv[i] % len] += std::conj(chi(xs[i])) * (coarse[t / B] * fine[t % B]);
  }
  std::vector<cplx> out;
  detail::dft(a, out, +1);
  return out;
}

}  // namespace tracelab
