#include "jetdbar/gauss_rational.hpp"

#include <stdexcept>

namespace jetdbar {

GaussRational GaussRational::inverse() const {
  mpq_class norm = re_ * re_ + im_ * im_;
  if (sgn(norm) == 0) {
    throw std::domain_error("division by zero in Q(i)");
  }
  return {re_ / norm, -im_ / norm};
}

std::string GaussRational::to_string() const {
  if (sgn(im_) == 0) {
    return re_.get_str();
  }
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "*i";
  }
  if (sgn(re_) == 0) {
    return imag;
  }
  std::string out = "(" + re_.get_str();
  if (imag[0] != '-') {
    out += "+";
  }
  return out + imag + ")";
}

}  // namespace jetdbar
