#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>

namespace epc {

/*
 * GaussianRational: exact complex scalars a + b·i with a, b ∈ Q.
 *
 * This is the coefficient field for every symbolic computation in the
 * library.  Both components are GMP rationals, kept canonical (reduced,
 * positive denominator) at all times: gmpxx arithmetic preserves canonical
 * form, and the raw numerator/denominator constructor canonicalizes
 * explicitly since mpq_class does not do that on its own.
 */
struct GaussianRational {
  mpq_class re;
  mpq_class im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(long r) : re(r), im(0) {}
  GaussianRational(long r, long i) : re(r), im(i) {}
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  // num/den constructor for each component; canonicalizes.
  static GaussianRational from_fractions(long re_num, long re_den, long im_num, long im_den) {
    if (re_den == 0 || im_den == 0) throw std::domain_error("zero denominator");
    mpq_class r(re_num, re_den), i(im_num, im_den);
    r.canonicalize();
    i.canonicalize();
    return GaussianRational(std::move(r), std::move(i));
  }

  static GaussianRational zero() { return GaussianRational(); }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational i_unit() { return GaussianRational(0, 1); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussianRational conj() const { return GaussianRational(re, -im); }

  // |z|^2 = re^2 + im^2, an exact nonnegative rational.
  mpq_class norm2() const { return re * re + im * im; }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  GaussianRational operator-() const { return GaussianRational(-re, -im); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    mpq_class n2 = o.norm2();
    if (n2 == 0) throw std::domain_error("division by zero GaussianRational");
    mpq_class r = (re * o.re + im * o.im) / n2;
    mpq_class i = (im * o.re - re * o.im) / n2;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  GaussianRational inverse() const {
    GaussianRational r = one();
    r /= *this;
    return r;
  }
};

inline std::string rational_str(const mpq_class& q) { return q.get_str(); }

}  // namespace epc
