#include "perturb/gaussian_rational.hpp"

#include "perturb/error.hpp"

namespace perturb {

GaussianRational::GaussianRational(mpq_class re, mpq_class im)
    : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::fraction(long num, long den) {
  if (den == 0) throw DomainError("zero denominator in rational literal");
  mpq_class q(num, den);
  q.canonicalize();
  return GaussianRational(std::move(q));
}

bool GaussianRational::is_integer() const {
  return re_.get_den() == 1 && im_.get_den() == 1;
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw NonUnit("division by zero");
  mpq_class n = norm();
  return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (sgn(o.im_) == 0) {
    if (sgn(o.re_) == 0) throw NonUnit("division by zero");
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

std::string GaussianRational::to_string(bool parenthesize) const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im_part;
  if (im_ == 1) {
    im_part = "i";
  } else if (im_ == -1) {
    im_part = "-i";
  } else if (im_.get_den() == 1) {
    im_part = im_.get_str() + "i";
  } else {
    im_part = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) return im_part;
  std::string s = re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_part;
  return parenthesize ? "(" + s + ")" : s;
}

std::size_t GaussianRational::hash() const {
  std::hash<std::string> h;
  return h(re_.get_str()) ^ (h(im_.get_str()) << 1);
}

GaussianRational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return GaussianRational(mpq_class(f));
}

}  // namespace perturb
