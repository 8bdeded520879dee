#pragma once

// Exact arithmetic in the cable space group
//   A = < x_1,...,x_n, t | t x_i t^-1 = x_sigma(i) >,  sigma(i) = i + m mod n,
// via the unique normal form w * t^z with w free over {x_1,...,x_n}.
// Builds the distinguished elements (meridians, boundary longitude, killers
// g_l = x_1^l x_2^-(l-1)), emits and verifies the conjugate-product
// certificates showing the companion meridian lies in the normal closure of
// g_l, and computes the constrained automorphism images used by the
// inequivalence analysis.

#include <cstdint>
#include <string>
#include <string_view>

#include "kgt/words.hpp"

namespace kgt::cable {

struct CableParams {
  std::int64_t m = 0;
  int n = 0;
  int sigma_shift = 0;  // m mod n, in {1,...,n-1}
  int s = 0;            // modular inverse of m mod n, in {1,...,n-1}: sigma^s(1) = 2
  words::AlphabetRef x_alphabet;   // x1..xn
  words::AlphabetRef xt_alphabet;  // x1..xn, t (x indices shared, t last)
  int t_index = 0;

  bool same(const CableParams& o) const { return m == o.m && n == o.n; }
};

// requires n >= 2 and gcd(m, n) = 1
CableParams make_params(std::int64_t m, int n);

// sigma^z(i) = ((i-1 + z*m) mod n) + 1 with nonnegative mod; i is 1-based
int shift(int i, std::int64_t z, const CableParams& p);

struct CableElement {
  words::Word w;       // over x_alphabet, freely reduced
  std::int64_t z = 0;  // t-exponent
  friend bool operator==(const CableElement&, const CableElement&) = default;
  bool is_identity() const { return w.is_identity() && z == 0; }
};

CableElement identity(const CableParams& p);
CableElement mul(const CableElement& a, const CableElement& b, const CableParams& p);
CableElement inv(const CableElement& a, const CableParams& p);
CableElement power(const CableElement& a, std::int64_t k, const CableParams& p);

// evaluate a word over {x1..xn, t} into normal form
CableElement from_word(const words::Word& xt_word, const CableParams& p);
words::Word to_word(const CableElement& a, const CableParams& p);  // over xt_alphabet

CableElement killer_element(std::int64_t l, const CableParams& p);  // x1^l x2^-(l-1), l >= 1
CableElement companion_meridian(const CableParams& p);              // x1 x2 ... xn
CableElement cable_meridian(const CableParams& p);                  // x1
// (x1...x_mbar) * t with mbar = sigma_shift; commutes with the companion
// meridian and satisfies lambda^n = m1^mbar t^n
CableElement boundary_longitude(const CableParams& p);

// total x-exponent and t-exponent; a homomorphism onto Z^2 (the relations
// identify all x_i in homology)
struct AbImage {
  std::int64_t x_degree = 0;
  std::int64_t t_degree = 0;
  friend bool operator==(const AbImage&, const AbImage&) = default;
};
AbImage ab_image(const CableElement& a);

struct KillerCertificate {
  CableParams params;
  std::int64_t l = 0;
  std::vector<CableElement> conjugators;  // u_0,...,u_{n-1}
  CableElement target;                    // the companion meridian
};

// conjugators u_i = x1^-(l-1) * t^(i*s); the product of u_i g_l u_i^-1
// telescopes to x1 x2 ... xn
KillerCertificate killer_certificate(std::int64_t l, const CableParams& p);

struct CertificateCheck {
  bool ok = false;
  CableElement residual;  // product * target^-1; identity iff ok
};
CertificateCheck verify_certificate(const KillerCertificate& c);

// Image data of g_l under an automorphism constrained to t |-> a t^eta a^-1,
// x1 |-> b x1^eps b^-1 with b = v t^z2: indices i = sigma^z2(1),
// j = sigma^(z2 + eta*s)(1) and the core word x_i^(eps*l) x_j^(-eps*(l-1)).
struct ConstrainedImage {
  int i = 0;
  int j = 0;
  bool j_vacuous = false;  // l = 1: the j-letter vanishes
  words::Word core;
};
ConstrainedImage constrained_image(std::int64_t l, std::int64_t z2, int eta, int eps,
                                   const CableParams& p);

// textual form `<word> ; t^<z>`, e.g. `x1^2 x2^-1 ; t^3`
std::string format_element(const CableElement& a, const CableParams& p);
// accepts the normal form above or any word over {x1..xn, t}
CableElement parse_element(std::string_view text, const CableParams& p);

// certificate file format (line-oriented):
//   cable <m> <n>
//   killer <l>
//   target <word>
//   conj <word of u_0>
//   ...
//   conj <word of u_{n-1}>
std::string format_certificate(const KillerCertificate& c);
KillerCertificate parse_certificate(std::string_view text);

}  // namespace kgt::cable
