#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tracelab/common.hpp"

namespace tracelab {

// x^{-1} mod c; throws std::domain_error when gcd(x, c) != 1.
i64 mod_inverse(i64 x, i64 c);

int moebius(i64 n);
i64 euler_phi(i64 n);
int divisor_count(i64 n);
std::vector<std::pair<i64, int>> factorize(i64 n);

// l = l0 * l' with l0 | D^infinity and gcd(l', D) = 1.
struct LevelSplit {
  i64 ell = 1;
  i64 ell0 = 1;
  i64 ell_prime = 1;
};
LevelSplit level_split(i64 ell, i64 D);

class DirichletCharacter {
 public:
  DirichletCharacter(i64 modulus, int index, std::vector<cplx> values);

  i64 modulus() const { return modulus_; }
  int index() const { return index_; }
  cplx operator()(i64 x) const { return values_[pos_mod(x, modulus_)]; }
  std::span<const cplx> values() const { return values_; }

  DirichletCharacter conj() const;
  bool is_trivial() const;
  bool is_real() const;
  bool is_primitive() const { return conductor_ == modulus_; }
  i64 conductor() const { return conductor_; }
  // +1 for even, -1 for odd.
  int parity() const { return parity_; }
  std::string describe() const;

 private:
  i64 modulus_;
  int index_;
  std::vector<cplx> values_;
  i64 conductor_ = 1;
  int parity_ = 1;
};

// All characters mod D, ordered lexicographically by their components on the
// prime-power factors (smallest prime first). Index 0 is the principal one.
std::vector<DirichletCharacter> build_characters(i64 D);
DirichletCharacter character(i64 D, int index);
DirichletCharacter trivial_character(i64 D);
// First primitive character mod D with the given parity, if any.
int first_primitive_index(i64 D, int parity);

// Classical Kloosterman sum S(m, n; c), real.
double kloosterman(i64 m, i64 n, i64 c);

// S_chi(m, n; c) = sum_{x mod c}^* conj(chi(x)) e((m xbar + n x)/c).
// Requires chi.modulus() | c.
cplx twisted_kloosterman(const DirichletCharacter& chi, i64 m, i64 n, i64 c);

// Normalised Gauss sum D^{-1/2} sum_a chi(a) e(a/D), chi primitive mod D.
cplx gauss_sum(const DirichletCharacter& chi);

// sum_{a mod D}^* e(a/D)
i64 ramanujan_sum(i64 D);

// Both sides of the twisted-multiplicativity identity for
// S_chi(l0 D n, l'; cD), gcd(c, D) = 1, chi primitive mod D.
std::pair<cplx, cplx> check_twisted_multiplicativity(
    const DirichletCharacter& chi, i64 ell, i64 n, i64 c);

// Some prime p has p | m, p !| n, p^2 | c.
bool vanishing_hypothesis(i64 m, i64 n, i64 c);
// Same, with the extra condition that the p-part of the conductor of chi
// divides c / p; under it S_chi(m, n; c) = 0. Without it the sum can be
// nonzero, e.g. S_{chi_{-4}}(2, 1; 4) = -2i.
bool vanishing_applies(const DirichletCharacter& chi, i64 m, i64 n, i64 c);

// Returns vanishing_hypothesis(m, n, c). When it holds, the twisted sum is
// expected to vanish; a nonzero sum throws std::logic_error.
bool check_vanishing(const DirichletCharacter& chi, i64 m, i64 n, i64 c);

// Upper bound for |S_chi(m, n; c)| used by the truncation estimates.
double kloosterman_bound(i64 m, i64 n, i64 c, i64 char_modulus);

// S(m, n; c) for every c <= cmax divisible by D (entry c; other entries 0),
// assembled from prime-power factors.
std::vector<double> kloosterman_range(i64 m, i64 n, i64 cmax, i64 D);

// Smallest prime factor of every integer up to n (entry 0 and 1 unused).
std::vector<i64> smallest_prime_factors(i64 n);

// S_chi(stride * r, n; q) for r = 0 .. q/stride - 1 at once (chi mod D, D | q,
// stride | q).
std::vector<cplx> kloosterman_row(const DirichletCharacter& chi, i64 n, i64 q, i64 stride = 1);

}  // namespace tracelab
